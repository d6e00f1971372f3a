#include "holokernel/jetlab.hpp"

#include <stdexcept>

namespace holo {

namespace {

std::vector<int> digits(std::size_t flat, int n, int rank) {
    std::vector<int> d(static_cast<std::size_t>(rank));
    for (int s = rank - 1; s >= 0; --s) {
        d[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
    return d;
}

std::size_t flatten(const std::vector<int>& d, int n) {
    std::size_t f = 0;
    for (int v : d) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    return f;
}

Q det_q(std::vector<std::vector<Q>> m) {
    const std::size_t n = m.size();
    Q d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Q(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Q f = m[r][c] / m[c][c];
            if (f == 0) continue;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

JetTensor rank2(const JetMatrix& m, const std::string& tag) {
    JetTensor t(m.n, 2, m.cap());
    t.c = m.a;
    t.symmetry = tag;
    return t;
}

}  // namespace

JetMetric JetMetric::from_matrix(JetMatrix g) {
    const int n = g.n;
    if (n < 1) throw std::invalid_argument("metric dimension must be positive");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g(i, j).agrees(g(j, i))) throw std::invalid_argument("metric jets not symmetric");
    auto g0 = mat_at_origin(g);
    for (std::size_t k = 1; k <= g0.size(); ++k) {
        std::vector<std::vector<Q>> minor(k, std::vector<Q>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = g0[i][j];
        if (det_q(minor) <= 0) throw std::domain_error("metric not positive definite at the origin");
    }
    JetMetric m;
    m.n = n;
    m.g = std::move(g);
    return m;
}

JetMetric JetMetric::flat(int n, int cap) { return from_matrix(JetMatrix::identity(n, cap)); }

JetMetric JetMetric::conformal(const Jet& phi) {
    const int n = phi.n();
    Jet e = (Q(2) * phi).exp();
    JetMatrix g(n, phi.cap());
    for (int i = 0; i < n; ++i) g(i, i) = e;
    return from_matrix(g);
}

JetMetric JetMetric::constant_curvature(int n, int cap, const Q& c) {
    Jet s = Jet::constant(n, cap, Q(1));
    for (int i = 0; i < n; ++i) s += c * (Jet::x(n, cap, i) * Jet::x(n, cap, i));
    Jet f = s.inverse();
    f = f * f;
    JetMatrix g(n, cap);
    for (int i = 0; i < n; ++i) g(i, i) = f;
    return from_matrix(g);
}

bool JetMetric::first_derivatives_vanish() const {
    for (auto& e : g.a)
        for (int k = 0; k < n; ++k)
            if (e.dx(k).at_origin() != 0) return false;
    return true;
}

bool JetMetric::identity_at_origin() const {
    auto g0 = mat_at_origin(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != (i == j ? 1 : 0)) return false;
    return true;
}

JetTensor christoffel(const JetMatrix& g, const JetMatrix& ginv) {
    const int n = g.n;
    std::vector<JetMatrix> dg;
    for (int l = 0; l < n; ++l) {
        JetMatrix d(n, g.cap() - 1);
        for (std::size_t e = 0; e < g.a.size(); ++e) d.a[e] = g.a[e].dx(l);
        dg.push_back(d);
    }
    JetTensor gamma(n, 3, g.cap() - 1);
    gamma.symmetry = "christoffel";
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<Jet> first;
            for (int l = 0; l < n; ++l)
                first.push_back(Q(1, 2) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                           dg[static_cast<std::size_t>(l)](i, j)));
            for (int k = 0; k < n; ++k) {
                Jet s(n, g.cap() - 1);
                for (int l = 0; l < n; ++l) s += ginv(k, l) * first[static_cast<std::size_t>(l)];
                gamma({k, i, j}) = s;
                gamma({k, j, i}) = s;
            }
        }
    return gamma;
}

JetTensor matrix_tensor(const JetMatrix& m) { return rank2(m, "matrix"); }

JetTensor kulkarni_nomizu(const JetTensor& a, const JetTensor& b) {
    const int n = a.n;
    JetTensor r(n, 4, std::min(a.cap(), b.cap()));
    r.symmetry = "riemann";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    r({i, j, k, l}) = a({i, k}) * b({j, l}) - a({j, k}) * b({i, l}) + a({j, l}) * b({i, k}) -
                                      a({i, l}) * b({j, k});
    return r;
}

QTensor kulkarni_nomizu(const std::vector<std::vector<Q>>& a, const std::vector<std::vector<Q>>& b) {
    const int n = static_cast<int>(a.size());
    QTensor r(n, 4);
    auto A = [&](int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    auto B = [&](int i, int j) { return b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    r({i, j, k, l}) = A(i, k) * B(j, l) - A(j, k) * B(i, l) + A(j, l) * B(i, k) - A(i, l) * B(j, k);
    return r;
}

JetTensor covariant_derivative(const JetTensor& t, const JetTensor& gamma) {
    const int n = t.n, r = t.rank;
    JetTensor out(n, r + 1, std::min(t.cap() - 1, gamma.cap()));
    out.symmetry = "derivative";
    for (std::size_t f = 0; f < out.c.size(); ++f) {
        auto d = digits(f, n, r + 1);
        const int m = d[0];
        std::vector<int> idx(d.begin() + 1, d.end());
        Jet s = t.c[flatten(idx, n)].dx(m);
        for (int slot = 0; slot < r; ++slot) {
            std::vector<int> moved = idx;
            const int is = idx[static_cast<std::size_t>(slot)];
            for (int p = 0; p < n; ++p) {
                const Jet& gm = gamma({p, m, is});
                if (gm.is_zero()) continue;
                moved[static_cast<std::size_t>(slot)] = p;
                const Jet& tp = t.c[flatten(moved, n)];
                if (!tp.is_zero()) s -= gm * tp;
            }
        }
        out.c[f] = s;
    }
    return out;
}

Jet laplacian(const Jet& f, const JetMatrix& ginv, const JetTensor& gamma) {
    const int n = ginv.n;
    std::vector<Jet> df;
    for (int k = 0; k < n; ++k) df.push_back(f.dx(k));
    Jet s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet h = df[static_cast<std::size_t>(j)].dx(i);
            for (int k = 0; k < n; ++k) h -= gamma({k, i, j}) * df[static_cast<std::size_t>(k)];
            s += ginv(i, j) * h;
        }
    return s;
}

std::vector<Jet> divergence(const JetMatrix& h, const JetMatrix& ginv, const JetTensor& gamma) {
    const int n = h.n;
    JetTensor dh = covariant_derivative(matrix_tensor(h), gamma);
    std::vector<Jet> out;
    for (int k = 0; k < n; ++k) {
        Jet s;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += ginv(i, j) * dh({i, j, k});
        out.push_back(s);
    }
    return out;
}

Jet divergence(const std::vector<Jet>& w, const JetMatrix& ginv, const JetTensor& gamma) {
    const int n = ginv.n;
    Jet s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet d = w[static_cast<std::size_t>(j)].dx(i);
            for (int p = 0; p < n; ++p) d -= gamma({p, i, j}) * w[static_cast<std::size_t>(p)];
            s += ginv(i, j) * d;
        }
    return s;
}

CurvaturePackage curvature_package(const JetMetric& metric) {
    const int n = metric.n;
    const JetMatrix& g = metric.g;
    if (g.cap() < 2) throw std::invalid_argument("curvature needs metric jets of degree >= 2");
    CurvaturePackage pk;
    pk.n = n;
    pk.ginv = mat_inverse(g);
    pk.Gamma = christoffel(g, pk.ginv);
    const JetTensor& G = pk.Gamma;
    const int rc = g.cap() - 2;

    // Rm(i,j,k,l) = R_ijk^l.
    JetTensor rm(n, 4, rc);
    std::vector<JetTensor> dG;
    for (int m = 0; m < n; ++m) {
        JetTensor d(n, 3, rc);
        for (std::size_t e = 0; e < G.c.size(); ++e) d.c[e] = G.c[e].dx(m);
        dG.push_back(d);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Jet s = dG[static_cast<std::size_t>(i)]({l, j, k}) - dG[static_cast<std::size_t>(j)]({l, i, k});
                    for (int m = 0; m < n; ++m)
                        s += G({m, j, k}) * G({l, i, m}) - G({m, i, k}) * G({l, j, m});
                    rm({i, j, k, l}) = s;
                    rm({j, i, k, l}) = -s;
                }
    pk.R = JetTensor(n, 4, rc);
    pk.R.symmetry = "riemann";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Jet s(n, rc);
                    if (i != j)
                        for (int m = 0; m < n; ++m) s += rm({i, j, k, m}) * g(m, l);
                    pk.R({i, j, k, l}) = s;
                }
    JetMatrix ric(n, rc);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Jet s(n, rc);
            for (int i = 0; i < n; ++i) s += rm({i, j, k, i});
            ric(j, k) = s;
        }
    pk.Ric = rank2(ric, "symmetric");
    pk.scal = Jet(n, rc);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) pk.scal += pk.ginv(j, k) * ric(j, k);
    if (n < 3) return pk;

    pk.J = Q(1, 2 * (n - 1)) * pk.scal;
    JetMatrix p(n, rc);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) p(j, k) = Q(1, n - 2) * (ric(j, k) - pk.J * g(j, k));
    pk.P = rank2(p, "symmetric");
    pk.W = pk.R;
    JetTensor kn = kulkarni_nomizu(pk.P, matrix_tensor(g));
    for (std::size_t e = 0; e < pk.W.c.size(); ++e) pk.W.c[e] += kn.c[e];
    pk.W.symmetry = "weyl";
    JetTensor dp = covariant_derivative(pk.P, G);
    pk.C = JetTensor(n, 3, dp.cap());
    pk.C.symmetry = "cotton";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) pk.C({i, j, k}) = dp({k, i, j}) - dp({j, i, k});
    return pk;
}

JetTensor riemann_koszul(const JetMetric& metric) {
    const int n = metric.n;
    const JetMatrix& g = metric.g;
    if (g.cap() < 2) throw std::invalid_argument("curvature needs metric jets of degree >= 2");
    JetMatrix ginv = mat_inverse(g);
    const int c1 = g.cap() - 1;
    // First kind: F(j,k,l) = Gamma_{jk,l}.
    JetTensor F(n, 3, c1);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) F({j, k, l}) = Q(1, 2) * (g(k, l).dx(j) + g(j, l).dx(k) - g(j, k).dx(l));
    JetTensor S(n, 3, c1);  // Gamma^p_jk at (p, j, k)
    for (int p = 0; p < n; ++p)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet s(n, c1);
                for (int l = 0; l < n; ++l) s += ginv(p, l) * F({j, k, l});
                S({p, j, k}) = s;
            }
    JetTensor R(n, 4, g.cap() - 2);
    R.symmetry = "riemann";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Jet s = F({j, k, l}).dx(i) - F({i, k, l}).dx(j);
                    for (int p = 0; p < n; ++p) s += S({p, i, k}) * F({j, l, p}) - S({p, j, k}) * F({i, l, p});
                    R({i, j, k, l}) = s;
                }
    return R;
}

bool riemann_symmetries(const QTensor& r) {
    const int n = r.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const Q& v = r({i, j, k, l});
                    if (v != -r({j, i, k, l}) || v != -r({i, j, l, k}) || v != r({k, l, i, j})) return false;
                    if (v + r({j, k, i, l}) + r({k, i, j, l}) != 0) return false;
                }
    return true;
}

bool weyl_trace_free(const QTensor& w, const std::vector<std::vector<Q>>& ginv) {
    // With the Riemann symmetries every trace is +- the (0,3) trace.
    if (!riemann_symmetries(w)) return false;
    const int n = w.n;
    QTensor up = raise(w, 0, ginv);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Q s(0);
            for (int i = 0; i < n; ++i) s += up({i, j, k, i});
            if (s != 0) return false;
        }
    return true;
}

bool cotton_symmetries(const QTensor& c) {
    const int n = c.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (c({i, j, k}) != -c({i, k, j})) return false;
                if (c({i, j, k}) + c({j, k, i}) + c({k, i, j}) != 0) return false;
            }
    return true;
}

JetMetric normal_jets_from_curvature(const QTensor& r0, int cap) {
    if (r0.rank != 4) throw std::invalid_argument("curvature tensor must have rank 4");
    if (!riemann_symmetries(r0)) throw std::invalid_argument("tensor lacks curvature symmetries");
    if (cap < 2) throw std::invalid_argument("normal jets need degree >= 2");
    const int n = r0.n;
    JetMatrix g = JetMatrix::identity(n, cap);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    Q c = r0({r, i, s, j}) / 3;
                    if (c != 0) g(i, j) += c * (Jet::x(n, cap, r) * Jet::x(n, cap, s));
                }
    return JetMetric::from_matrix(g);
}

bool normal_der_check(const JetMetric& g) {
    if (!g.first_derivatives_vanish()) throw std::invalid_argument("first derivatives do not vanish at the origin");
    const int n = g.n;
    QTensor R = tensor_at_origin(curvature_package(g).R);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Q lhs = g.g(i, j).dx(a).dx(b).at_origin();
                    if (lhs != (R({a, i, b, j}) + R({a, j, b, i})) / 3) return false;
                }
    return true;
}

}  // namespace holo
