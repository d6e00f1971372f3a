#include "holokernel/jetlab.hpp"

#include <stdexcept>

namespace holo {

namespace {

Q second_derivative_at_origin(const Jet& f, int a, int b) { return f.dx(a).dx(b).at_origin(); }

void require_normal_form(const JetMetric& g) {
    if (!g.identity_at_origin() || !g.first_derivatives_vanish())
        throw std::invalid_argument("metric jets not in normal form at the origin");
}

Jet trace_with(const JetMatrix& ginv, const JetMatrix& h) {
    Jet s;
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) s += ginv(i, j) * h(i, j);
    return s;
}

// Delta tr h + 2 delta delta h at the origin.
Q laplace_trace_plus_double_div(const JetMetric& g, const JetMatrix& h, const CurvaturePackage& pk) {
    Q lap = laplacian(trace_with(pk.ginv, h), pk.ginv, pk.Gamma).at_origin();
    Q dd = divergence(divergence(h, pk.ginv, pk.Gamma), pk.ginv, pk.Gamma).at_origin();
    (void)g;
    return lap + 2 * dd;
}

// Ricci contraction sum_{a,b,c} h_ab(0) R_cabc(0).
Q ricci_pairing(const JetMatrix& h, const QTensor& R) {
    const int n = h.n;
    Q s(0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Q hab = h(a, b).at_origin();
            if (hab == 0) continue;
            for (int c = 0; c < n; ++c) s += hab * R({c, a, b, c});
        }
    return s;
}

bool all_zero(const JetTensor& t) {
    for (auto& c : t.c)
        if (!c.is_zero()) return false;
    return true;
}

JetMatrix matrix_of(const JetTensor& t) {
    JetMatrix m;
    m.n = t.n;
    m.a = t.c;
    return m;
}

JetMatrix derivative_matrix(const JetMatrix& m, int which) {
    JetMatrix d = m;
    for (auto& e : d.a) e = which < 0 ? e.drho() : e.dx(which);
    return d;
}

// Ricci tensor of a jet matrix that may carry rho.
JetMatrix ricci_of(const JetMatrix& h) {
    const int n = h.n;
    JetMatrix hinv = mat_inverse(h);
    JetTensor G = christoffel(h, hinv);
    JetMatrix ric(n, h.cap() - 2);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            Jet s(n, h.cap() - 2);
            for (int i = 0; i < n; ++i) {
                s += G({i, j, k}).dx(i) - G({i, i, k}).dx(j);
                for (int m = 0; m < n; ++m) s += G({m, j, k}) * G({i, i, m}) - G({m, i, k}) * G({i, j, m});
            }
            ric(j, k) = s;
            ric(k, j) = s;
        }
    return ric;
}

// Left side of the Ricci equation for the rho-family h.
JetMatrix ricci_equation(const JetMatrix& h, int n) {
    JetMatrix hinv = mat_inverse(h);
    JetMatrix h1 = derivative_matrix(h, -1), h2 = derivative_matrix(h1, -1);
    Jet t = mat_trace(hinv * h1);
    JetMatrix bracket = Q(2) * h2 - Q(2) * (h1 * hinv * h1);
    JetMatrix out = ricci_of(h);
    for (std::size_t e = 0; e < out.a.size(); ++e) {
        Jet inner = bracket.a[e] + t * h1.a[e];
        out.a[e] += -inner.times_rho() + Q(n - 2) * h1.a[e] + t * h.a[e];
    }
    return out;
}

JetMatrix rho_coeff(const JetMatrix& m, int k) {
    JetMatrix r = m;
    for (auto& e : r.a) e = e.rho_coeff(k);
    return r;
}

JetMatrix times_rho_power(const JetMatrix& m, int k) {
    JetMatrix r = m;
    for (auto& e : r.a)
        for (int i = 0; i < k; ++i) e = e.times_rho();
    return r;
}

bool matrix_zero(const JetMatrix& m) {
    for (auto& e : m.a)
        if (!e.is_zero()) return false;
    return true;
}

void require_conformally_flat(const CurvaturePackage& pk) {
    if (!all_zero(pk.W) || !all_zero(pk.C)) throw std::invalid_argument("input jets are not conformally flat");
}

JetMatrix einstein_family(const JetMetric& g, const CurvaturePackage& pk) {
    const int n = g.n;
    Q J0 = pk.J.at_origin();
    for (std::size_t e = 0; e < pk.P.c.size(); ++e)
        if (!pk.P.c[e].agrees(Q(J0 / n) * g.g.a[e]))
            throw std::invalid_argument("input jets are not of constant curvature");
    Q c = J0 / (2 * n);
    const int cap = g.cap();
    Jet f = Jet::constant(n, cap, Q(1)) - c * Jet::rho(n, cap);
    f = f * f;
    JetMatrix h = g.g;
    for (auto& e : h.a) e = f * e;
    return h;
}

JetMatrix closed_form_family(const JetMetric& g, FgFamily family) {
    CurvaturePackage pk = curvature_package(g);
    if (family == FgFamily::Einstein) return einstein_family(g, pk);
    require_conformally_flat(pk);
    return conformally_flat_family(g);
}

std::vector<Q> rho_coefficients_at_origin(const Jet& f, int upto) {
    std::vector<Q> out;
    Jet x0 = f.at_x0();
    for (int k = 0; k <= upto; ++k) out.push_back(x0.coeff(Jet::with_exponent(0, Jet::kRhoSlot, k)));
    return out;
}

// Truncated products of symbol polynomials.
struct Weights {
    std::vector<int> w;
    explicit Weights(const SymbolVars& v) {
        int mx = v.rho;
        for (int id : v.x) mx = std::max(mx, id);
        for (int id : v.xi) mx = std::max(mx, id);
        w.assign(static_cast<std::size_t>(mx) + 1, 0);
        for (int id : v.x) w[static_cast<std::size_t>(id)] = 1;
        w[static_cast<std::size_t>(v.rho)] = 2;
    }
    int of(const Mono& m) const {
        int s = 0;
        for (auto& [id, e] : m)
            if (static_cast<std::size_t>(id) < w.size()) s += w[static_cast<std::size_t>(id)] * e;
        return s;
    }
};

Poly truncate(const Poly& p, const Weights& W, int cap) {
    Poly r;
    for (auto& [m, c] : p.terms())
        if (W.of(m) <= cap) r.add_term(m, c);
    return r;
}

Poly tmul(const Poly& a, const Poly& b, const Weights& W, int cap) {
    std::vector<std::pair<const Mono*, int>> bw;
    for (auto& [m, c] : b.terms()) bw.emplace_back(&m, W.of(m));
    Poly r;
    std::size_t i = 0;
    std::vector<const Q*> bc;
    for (auto& [m, c] : b.terms()) bc.push_back(&c);
    for (auto& [ma, ca] : a.terms()) {
        int wa = W.of(ma);
        if (wa > cap) continue;
        i = 0;
        for (auto& [mb, wb] : bw) {
            if (wa + wb <= cap) r.add_term(mono_mul(ma, *mb), ca * *bc[i]);
            ++i;
        }
    }
    return r;
}

using PolyMatrix = std::vector<Poly>;

PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b, int n, const Weights& W, int cap) {
    PolyMatrix r(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly s;
            for (int k = 0; k < n; ++k)
                s += tmul(a[static_cast<std::size_t>(i * n + k)], b[static_cast<std::size_t>(k * n + j)], W, cap);
            r[static_cast<std::size_t>(i * n + j)] = s;
        }
    return r;
}

// Truncated inverse through the Neumann series about the constant part.
PolyMatrix pm_inverse(const PolyMatrix& m, int n, const Weights& W, int cap) {
    std::vector<std::vector<Q>> m0(static_cast<std::size_t>(n), std::vector<Q>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(i * n + j)].constant_value();
    auto a0 = q_inverse(m0);
    PolyMatrix a0p(static_cast<std::size_t>(n * n)), step(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a0p[static_cast<std::size_t>(i * n + j)] = Poly(a0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Poly s;
            for (int k = 0; k < n; ++k) {
                Poly e = m[static_cast<std::size_t>(k * n + j)] - Poly(m[static_cast<std::size_t>(k * n + j)].constant_value());
                Poly f = e;
                f *= -a0[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                s += f;
            }
            step[static_cast<std::size_t>(i * n + j)] = truncate(s, W, cap);
        }
    PolyMatrix term = a0p, sum = a0p;
    while (true) {
        term = pm_mul(step, term, n, W, cap);
        bool zero = true;
        for (auto& p : term) zero = zero && p.is_zero();
        if (zero) break;
        for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += term[e];
    }
    return sum;
}

Poly quadratic_form(const PolyMatrix& a, const SymbolVars& v) {
    Poly s;
    for (int i = 0; i < v.n; ++i)
        for (int j = 0; j < v.n; ++j)
            s += a[static_cast<std::size_t>(i * v.n + j)] * (Poly::var(v.xi[static_cast<std::size_t>(i)]) * Poly::var(v.xi[static_cast<std::size_t>(j)]));
    return s;
}

// Wick expectation with polynomial covariance entries.
Poly wick_poly(std::vector<int> idx, const PolyMatrix& sigma, int n, const Weights& W, int cap) {
    if (idx.empty()) return Poly(1);
    if (idx.size() % 2) return Poly();
    int first = idx.front();
    Poly total;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Poly& s = sigma[static_cast<std::size_t>(first * n + idx[k])];
        if (s.is_zero()) continue;
        std::vector<int> rest;
        for (std::size_t r = 1; r < idx.size(); ++r)
            if (r != k) rest.push_back(idx[r]);
        total += tmul(s, wick_poly(rest, sigma, n, W, cap), W, cap);
    }
    return total;
}

// Symbol N * R^k with R = (p2 - lambda)^{-1}; numerators use xi slots for zeta.
using ResolventSymbol = std::map<int, Jet>;

void accumulate(ResolventSymbol& s, int k, const Jet& j) {
    if (j.is_zero()) return;
    auto it = s.find(k);
    if (it == s.end()) s.emplace(k, j);
    else it->second += j;
}

ResolventSymbol d_symbol(const ResolventSymbol& s, const Jet& dp2, bool fiber, int i) {
    ResolventSymbol r;
    for (auto& [k, N] : s) {
        accumulate(r, k, fiber ? N.dxi(i) : N.dx(i));
        accumulate(r, k + 1, Q(-k) * (N * dp2));
    }
    return r;
}

ResolventSymbol times(const ResolventSymbol& s, const Jet& p) {
    ResolventSymbol r;
    for (auto& [k, N] : s) accumulate(r, k, N * p);
    return r;
}

void add_into(ResolventSymbol& acc, const ResolventSymbol& s) {
    for (auto& [k, N] : s) accumulate(acc, k, N);
}

// -R * s.
ResolventSymbol minus_resolvent(const ResolventSymbol& s) {
    ResolventSymbol r;
    for (auto& [k, N] : s) accumulate(r, k + 1, -N);
    return r;
}

}  // namespace

FundResult lemma_fund_check(const JetMetric& g, const JetMatrix& h) {
    require_normal_form(g);
    if (h.cap() < 2) throw std::invalid_argument("h needs jets of degree >= 2");
    for (int i = 0; i < h.n; ++i)
        for (int j = i + 1; j < h.n; ++j)
            if (!h(i, j).agrees(h(j, i))) throw std::invalid_argument("h not symmetric");
    const int n = g.n;
    CurvaturePackage pk = curvature_package(g);
    QTensor R = tensor_at_origin(pk.R);
    Q lhs1(0), lhs2(0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            lhs1 += second_derivative_at_origin(h(b, b), a, a);
            lhs2 += second_derivative_at_origin(h(a, b), a, b);
        }
    Q lap = laplacian(trace_with(pk.ginv, h), pk.ginv, pk.Gamma).at_origin();
    Q dd = divergence(divergence(h, pk.ginv, pk.Gamma), pk.ginv, pk.Gamma).at_origin();
    Q hr = ricci_pairing(h, R);
    FundResult r;
    r.gen_id_1 = lhs1 == lap - Q(2, 3) * hr;
    r.gen_id_2 = lhs2 == dd + Q(1, 3) * hr;
    r.sum_1 = lhs1 + 2 * lhs2 == lap + 2 * dd;
    return r;
}

bool sum2_check(const JetMetric& g, const JetMatrix& gdot) {
    require_normal_form(g);
    const int n = g.n;
    CurvaturePackage pk = curvature_package(g);
    JetMatrix inv_dot = Q(-1) * (pk.ginv * gdot * pk.ginv);
    Q lhs(0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            lhs += second_derivative_at_origin(inv_dot(b, b), a, a) + 2 * second_derivative_at_origin(inv_dot(a, b), a, b);
    return lhs == -laplace_trace_plus_double_div(g, gdot, pk);
}

ExactScalar gaussian_moment(const std::vector<int>& alpha) {
    Q m(1);
    for (int a : alpha) {
        if (a < 0) throw std::invalid_argument("negative exponent");
        if (a % 2) return ExactScalar(Q(0));
        // (a-1)!! / 2^{a/2}
        for (int k = a - 1; k > 0; k -= 2) m *= k;
        m /= qpow(Q(2), a / 2);
    }
    return ExactScalar(m);
}

Q wick_expectation(const std::vector<int>& idx, const std::vector<std::vector<Q>>& sigma) {
    if (idx.empty()) return Q(1);
    if (idx.size() % 2) return Q(0);
    Q total(0);
    const int first = idx.front();
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Q& s = sigma[static_cast<std::size_t>(first)][static_cast<std::size_t>(idx[k])];
        if (s == 0) continue;
        std::vector<int> rest;
        for (std::size_t r = 1; r < idx.size(); ++r)
            if (r != k) rest.push_back(idx[r]);
        total += s * wick_expectation(rest, sigma);
    }
    return total;
}

SymbolVars::SymbolVars(int dim) : n(dim) {
    if (dim < 1 || dim > Jet::kMaxDim) throw std::invalid_argument("symbol dimension out of range");
    for (int i = 1; i <= dim; ++i) {
        x.push_back(symbol("x" + std::to_string(i)));
        xi.push_back(symbol("xi" + std::to_string(i)));
    }
    rho = symbol("rho");
}

Poly poisson_bracket(const Poly& f, const Poly& g, const SymbolVars& v) {
    Poly s;
    for (int i = 0; i < v.n; ++i) {
        int x = v.x[static_cast<std::size_t>(i)], xi = v.xi[static_cast<std::size_t>(i)];
        s += f.derivative(x) * g.derivative(xi) - f.derivative(xi) * g.derivative(x);
    }
    return s;
}

SymbolExpr symbol_bracket(const SymbolExpr& a, const SymbolExpr& b, const Poly& G, const SymbolVars& v) {
    if (G.is_zero()) throw std::domain_error("structurally zero denominator");
    // d(N / G^p) = (dN G - p N dG) / G^{p+1}.
    auto d = [&](const SymbolExpr& e, int var) {
        Poly r = e.num.derivative(var) * G;
        Poly t = e.num * G.derivative(var);
        t *= Q(e.power);
        return r - t;
    };
    Poly s;
    for (int i = 0; i < v.n; ++i) {
        int x = v.x[static_cast<std::size_t>(i)], xi = v.xi[static_cast<std::size_t>(i)];
        s += d(a, x) * d(b, xi) - d(a, xi) * d(b, x);
    }
    return {s, a.power + b.power + 2};
}

bool dpb_check(const Poly& G, const Poly& H, const SymbolVars& v) {
    if (G.is_zero()) throw std::domain_error("structurally zero denominator");
    SymbolExpr inv{Poly(1), 1}, h{H, 0};
    SymbolExpr lhs = symbol_bracket(inv, symbol_bracket(inv, h, G, v), G, v);
    Poly rhs = poisson_bracket(G, poisson_bracket(G, H, v), v);
    // lhs.num / G^p == rhs / G^4.
    return lhs.num * G.pow(4) == rhs * G.pow(static_cast<unsigned>(lhs.power));
}

std::vector<Poly> to_polys(const JetMatrix& m, const SymbolVars& v) {
    std::vector<Poly> out;
    for (auto& e : m.a) {
        Poly p;
        for (auto& [k, c] : e.terms()) {
            Mono mono;
            for (int i = 0; i < v.n; ++i)
                if (Jet::exponent(k, Jet::xi_slot(i))) throw std::invalid_argument("metric entries may not contain xi");
            std::vector<std::pair<int, int>> parts;
            for (int i = 0; i < v.n; ++i)
                if (int ex = Jet::exponent(k, i)) parts.emplace_back(v.x[static_cast<std::size_t>(i)], ex);
            if (int ex = Jet::exponent(k, Jet::kRhoSlot)) parts.emplace_back(v.rho, ex);
            Poly t(c);
            for (auto& [id, ex] : parts) t = t * Poly::var(id, ex);
            p += t;
        }
        out.push_back(p);
    }
    return out;
}

Poly double_bracket_average(const std::vector<Poly>& m, const std::vector<Poly>& mdot, const SymbolVars& v, int cap) {
    const int n = v.n;
    Weights W(v);
    PolyMatrix M(m.size()), Md(mdot.size());
    for (std::size_t e = 0; e < m.size(); ++e) {
        M[e] = truncate(m[e], W, cap);
        Md[e] = truncate(mdot[e], W, cap);
    }
    PolyMatrix inv = pm_inverse(M, n, W, cap);
    PolyMatrix hd = pm_mul(pm_mul(inv, Md, n, W, cap), inv, n, W, cap);
    for (auto& p : hd) p = -p;
    Poly H = quadratic_form(inv, v), Hd = quadratic_form(hd, v);
    Poly inner = truncate(poisson_bracket(H, Hd, v), W, cap - 1);
    Poly outer = truncate(poisson_bracket(H, inner, v), W, cap - 2);
    // Covariance of exp(-H(0, xi)) is m(0)/2.
    PolyMatrix sigma(M.size());
    auto at_x0 = [&](const Poly& p) {
        Poly r = p;
        for (int id : v.x) r = r.subs(id, Poly());
        return r;
    };
    for (std::size_t e = 0; e < M.size(); ++e) {
        sigma[e] = at_x0(M[e]);
        sigma[e] *= Q(1, 2);
    }
    Poly total, outer0 = at_x0(outer);
    for (auto& [mono, c] : outer0.terms()) {
        std::vector<int> idx;
        Poly rest(c);
        for (auto& [id, ex] : mono) {
            int slot = -1;
            for (int i = 0; i < n; ++i)
                if (v.xi[static_cast<std::size_t>(i)] == id) slot = i;
            if (slot >= 0)
                for (int t = 0; t < ex; ++t) idx.push_back(slot);
            else
                rest = rest * Poly::var(id, ex);
        }
        total += tmul(rest, wick_poly(idx, sigma, n, W, cap - 2), W, cap - 2);
    }
    return total;
}

bool pre_d_div_check(const JetMetric& g, const JetMatrix& gdot) {
    const int n = g.n;
    if (g.cap() < 2 || gdot.cap() < 2) throw std::invalid_argument("pre-d-div needs jets of degree >= 2");
    CurvaturePackage pk = curvature_package(g);
    SymbolVars v(n);
    const int cap = std::min(g.cap(), gdot.cap());
    Poly avg = double_bracket_average(to_polys(g.g, v), to_polys(gdot, v), v, cap);
    return avg.constant_value() == -laplace_trace_plus_double_div(g, gdot, pk);
}

JetMatrix conformally_flat_family(const JetMetric& g) {
    CurvaturePackage pk = curvature_package(g);
    JetMatrix P = matrix_of(pk.P);
    JetMatrix quad = Q(1, 4) * (P * pk.ginv * P);
    JetMatrix h = g.g - times_rho_power(P, 1) + times_rho_power(quad, 2);
    return h;
}

bool fg_matches_family(const FgResult& fg, const JetMatrix& family) {
    for (int k = 0; k <= fg.achieved; ++k)
        if (!mat_agrees(fg.h[static_cast<std::size_t>(k)], rho_coeff(family, k))) return false;
    return true;
}

FgResult fg_expand(const JetMetric& g, int K, FgFamily family) {
    if (K < 0) throw std::invalid_argument("negative order");
    const int n = g.n, W = g.cap();
    if (n < 3) throw std::invalid_argument("Fefferman-Graham expansion needs n >= 3");
    FgResult r;
    r.requested = K;
    CurvaturePackage pk = curvature_package(g);
    JetMatrix closed;
    if (family != FgFamily::General) closed = closed_form_family(g, family);
    int reach = std::min(K, W / 2);
    if (reach < K) r.note = "jet degree " + std::to_string(W) + " supports order " + std::to_string(reach);
    r.h.push_back(g.g);
    JetMatrix family_sum = g.g;  // sum_{j<k} h_j rho^j
    JetMatrix ginv = pk.ginv;
    for (int k = 1; k <= reach; ++k) {
        JetMatrix rest = rho_coeff(ricci_equation(family_sum, n), k - 1);
        Jet tr = trace_with(ginv, rest);
        JetMatrix hk;
        if (n != 2 * k) {
            Jet t;
            if (k != n) {
                t = (Q(-1) / Q(k * (2 * n - 2 * k))) * tr;
            } else {
                // The trace drops out of the tangential equation; take it from
                // the normal component tr(h^{-1} h'') = tr(h^{-1} h' h^{-1} h')/2.
                if (!tr.is_zero()) throw std::logic_error("tangential equation inconsistent at order n");
                JetMatrix hinv = mat_inverse(family_sum);
                JetMatrix h1 = derivative_matrix(family_sum, -1), h2 = derivative_matrix(h1, -1);
                JetMatrix a = hinv * h1;
                Jet normal = mat_trace(hinv * h2) - Q(1, 2) * mat_trace(a * a);
                t = (Q(-1) / Q(k * (k - 1))) * normal.rho_coeff(k - 2);
            }
            hk = rest;
            for (std::size_t e = 0; e < hk.a.size(); ++e)
                hk.a[e] = (Q(-1) / Q(k * (n - 2 * k))) * (rest.a[e] + Q(k) * (t * g.g.a[e]));
        } else {
            JetMatrix tf = rest;
            for (std::size_t e = 0; e < tf.a.size(); ++e) tf.a[e] = rest.a[e] - Q(1, n) * (tr * g.g.a[e]);
            if (family == FgFamily::General || !matrix_zero(tf)) {
                r.obstructed = true;
                r.note = "obstruction at order " + std::to_string(k);
                break;
            }
            hk = rho_coeff(closed, k);
            Jet t = Q(-1, k * n) * tr;
            if (!trace_with(ginv, hk).agrees(t)) throw std::logic_error("closed form trace disagrees with the recursion");
            r.closed_form_orders.push_back(k);
        }
        if (k == 1 && !mat_agrees(hk, Q(-1) * matrix_of(pk.P))) throw std::logic_error("h_1 differs from -P");
        r.h.push_back(hk);
        family_sum = family_sum + times_rho_power(hk, k);
        r.achieved = k;
    }
    JetMatrix res = ricci_equation(family_sum, n);
    r.residual_zero = true;
    for (int j = 0; j < r.achieved; ++j) r.residual_zero = r.residual_zero && matrix_zero(rho_coeff(res, j));
    return r;
}

DDivResult d_div_check(const JetMetric& g, int K) {
    CurvaturePackage pk = curvature_package(g);
    require_conformally_flat(pk);
    const int n = g.n;
    DDivResult r;
    r.achieved = std::min(K, (g.cap() - 4) / 2);
    if (r.achieved < 0) throw std::invalid_argument("d-div needs jets of degree >= 4");
    JetMatrix h = conformally_flat_family(g);
    JetMatrix hinv = mat_inverse(h);
    JetTensor G = christoffel(h, hinv);
    JetMatrix h1 = derivative_matrix(h, -1), h2 = derivative_matrix(h1, -1);
    std::vector<Jet> div = divergence(h1, hinv, G);
    Jet tr = mat_trace(hinv * h1);
    r.d_div = true;
    for (int k = 0; k < n; ++k)
        r.d_div = r.d_div && rho_coefficients_at_origin(div[static_cast<std::size_t>(k)], r.achieved) ==
                                 rho_coefficients_at_origin(tr.dx(k), r.achieved);
    JetMatrix a = hinv * h1;
    Jet lhs = mat_trace(hinv * h2), rhs = Q(1, 2) * mat_trace(a * a);
    r.eval_normal = rho_coefficients_at_origin(lhs, r.achieved) == rho_coefficients_at_origin(rhs, r.achieved);
    return r;
}

TheoremBResult theorem_b_check(const JetMetric& g, int K) {
    CurvaturePackage pk = curvature_package(g);
    require_conformally_flat(pk);
    const int n = g.n;
    TheoremBResult r;
    r.achieved = std::min(K, (g.cap() - 4) / 2);
    if (r.achieved < 0) throw std::invalid_argument("the double-bracket check needs jets of degree >= 4");
    JetMatrix h = conformally_flat_family(g);

    // Symbol side: exact polynomials, Poisson brackets and Wick pairings.
    SymbolVars v(n);
    std::vector<Poly> m = to_polys(h, v), md;
    for (auto& p : m) md.push_back(p.derivative(v.rho));
    Poly avg = double_bracket_average(m, md, v, g.cap() - 2);
    for (int k = 0; k <= r.achieved; ++k) {
        Q c(0);
        for (auto& [mono, coef] : avg.terms())
            if (mono_exponent(mono, v.rho) == k) c += coef;
        r.lhs.push_back(c / 3);
    }

    // Geometric side: jet Laplacian of tr(h^{-1} h').
    JetMatrix hinv = mat_inverse(h);
    JetTensor G = christoffel(h, hinv);
    Jet f = mat_trace(hinv * derivative_matrix(h, -1));
    for (auto& c : rho_coefficients_at_origin(laplacian(f, hinv, G), r.achieved)) r.rhs.push_back(-c);
    return r;
}

ParametrixResult parametrix_a2(const JetMetric& g, const Jet& eta, const Jet& b) {
    require_normal_form(g);
    const int n = g.n;
    if (g.cap() < 2 || eta.cap() < 2 || b.cap() < 0) throw std::invalid_argument("parametrix needs degree-2 jets");
    const int cap = 2;
    CurvaturePackage pk = curvature_package(g);
    JetMatrix ginv = pk.ginv;
    for (auto& e : ginv.a) e = e.truncate(cap);
    Jet e2 = eta.truncate(cap), b0 = b.truncate(cap);
    std::vector<Jet> z;
    for (int i = 0; i < n; ++i) z.push_back(Jet::xi(n, cap, i));

    // L = -g^{ij} d_i d_j + (g^{ij} Gamma^k_ij - g^{kj} d_j eta) d_k - b, symbols in zeta = i xi.
    Jet p2(n, cap), p1(n, cap - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p2 -= ginv(i, j) * (z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(j)]);
    for (int k = 0; k < n; ++k) {
        Jet coef(n, cap - 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) coef += ginv(i, j) * pk.Gamma({k, i, j});
        for (int j = 0; j < n; ++j) coef -= ginv(k, j) * e2.dx(j);
        p1 += coef * z[static_cast<std::size_t>(k)];
    }
    Jet p0 = Q(-1) * b0;
    std::vector<Jet> p2x, p2z;
    for (int i = 0; i < n; ++i) {
        p2x.push_back(p2.dx(i));
        p2z.push_back(p2.dxi(i));
    }

    ResolventSymbol r2{{1, Jet::constant(n, cap, Q(1))}};
    std::vector<ResolventSymbol> r2x;
    for (int i = 0; i < n; ++i) r2x.push_back(d_symbol(r2, p2x[static_cast<std::size_t>(i)], false, i));

    ResolventSymbol s3 = times(r2, p1);
    for (int i = 0; i < n; ++i) add_into(s3, times(r2x[static_cast<std::size_t>(i)], p2z[static_cast<std::size_t>(i)]));
    ResolventSymbol r3 = minus_resolvent(s3);

    ResolventSymbol s4 = times(r2, p0);
    for (int i = 0; i < n; ++i) {
        add_into(s4, times(r2x[static_cast<std::size_t>(i)], p1.dxi(i)));
        add_into(s4, times(d_symbol(r3, p2x[static_cast<std::size_t>(i)], false, i), p2z[static_cast<std::size_t>(i)]));
        for (int j = 0; j < n; ++j) {
            Jet dzz = Q(1, 2) * p2z[static_cast<std::size_t>(i)].dxi(j);
            if (dzz.is_zero()) continue;
            add_into(s4, times(d_symbol(r2x[static_cast<std::size_t>(i)], p2x[static_cast<std::size_t>(j)].truncate(cap - 1), false, j), dzz));
        }
    }
    add_into(s4, times(r3, p1));
    ResolventSymbol r4 = minus_resolvent(s4);

    // (1/2 pi i) int e^{-lambda} (p - lambda)^{-k} = e^{-p}/(k-1)!, then zeta^alpha -> i^|alpha| xi^alpha.
    ParametrixResult out;
    for (auto& [k, N] : r4) {
        Q fact(factorial(k - 1));
        for (auto& [key, c] : N.terms()) {
            bool at_origin = true;
            for (int i = 0; i < n; ++i) at_origin = at_origin && Jet::exponent(key, i) == 0;
            if (!at_origin) continue;
            std::vector<int> alpha;
            int deg = 0;
            for (int i = 0; i < n; ++i) {
                alpha.push_back(Jet::exponent(key, Jet::xi_slot(i)));
                deg += alpha.back();
            }
            if (deg % 2) continue;
            Q sign = (deg / 2) % 2 ? Q(-1) : Q(1);
            out.parametrix += sign * c * gaussian_moment(alpha).value / fact;
        }
    }
    Q grad2(0);
    for (int i = 0; i < n; ++i) {
        Q di = eta.dx(i).at_origin();
        grad2 += di * di;
    }
    out.geometric = pk.scal.at_origin() / 6 - laplacian(eta, pk.ginv, pk.Gamma).at_origin() / 2 - grad2 / 4 + b.at_origin();
    return out;
}

WeylResult weyl_identity_check(const JetMetric& g) {
    const int n = g.n;
    if (g.cap() < 4) throw std::invalid_argument("Weyl identity needs jets of degree >= 4");
    if (n < 4) throw std::invalid_argument("Weyl identity needs n >= 4");
    CurvaturePackage pk = curvature_package(g);
    auto gi = mat_at_origin(pk.ginv);
    JetTensor dW = covariant_derivative(pk.W, pk.Gamma);
    JetTensor ddW = covariant_derivative(dW, pk.Gamma);
    JetTensor dC = covariant_derivative(pk.C, pk.Gamma);
    QTensor W = tensor_at_origin(pk.W), C = tensor_at_origin(pk.C), P = tensor_at_origin(pk.P);
    QTensor dW0 = tensor_at_origin(dW), ddW0 = tensor_at_origin(ddW), dC0 = tensor_at_origin(dC);
    Q J = pk.J.at_origin();
    QTensor Wup = raise(raise(raise(raise(W, 0, gi), 1, gi), 2, gi), 3, gi);

    QTensor lapW(n, 4);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Q s(0);
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            if (gi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0)
                                s += gi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                                     ddW0.c[static_cast<std::size_t>(((((a * n + b) * n + i) * n + j) * n + k) * n + l)];
                    lapW({i, j, k, l}) = s;
                }
    Q WlapW = contract(Wup, lapW);
    // W^{ijkl} nabla_i C_jkl.
    Q WdC = contract(Wup, dC0);
    Q lhs = -WlapW / 2 + Q(n - 2) * WdC;

    QTensor A = raise(raise(W, 0, gi), 1, gi);  // W^{ij}_{kl}
    const std::size_t N2 = static_cast<std::size_t>(n * n);
    Q I1(0);
    for (std::size_t p = 0; p < N2; ++p)
        for (std::size_t q = 0; q < N2; ++q) {
            const Q& apq = A.c[p * N2 + q];
            if (apq == 0) continue;
            for (std::size_t s = 0; s < N2; ++s) I1 += apq * A.c[q * N2 + s] * A.c[s * N2 + p];
        }
    QTensor T = raise(raise(W, 0, gi), 2, gi);  // W^j_m^l_n
    Q I2(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const Q& w = W({i, j, k, l});
                    if (w == 0) continue;
                    for (int m = 0; m < n; ++m)
                        for (int q = 0; q < n; ++q) I2 += w * T({j, m, l, q}) * Wup({i, m, k, q});
                }
    QTensor Pm = raise(P, 0, gi);  // P^m_i
    Q PWW(0);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i) {
            const Q& p = Pm({m, i});
            if (p == 0) continue;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) PWW += p * Wup({i, j, k, l}) * W({m, j, k, l});
        }
    Q W2 = contract(Wup, W);
    WeylResult r;
    r.lhs = lhs;
    r.rhs = -I1 / 2 - 2 * I2 - Q(n - 2) * PWW - J * W2;

    r.div_w = true;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                Q s(0);
                for (int m = 0; m < n; ++m)
                    for (int a = 0; a < n; ++a) s += gi[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)] * dW0({a, m, j, k, l});
                r.div_w = r.div_w && s == Q(n - 3) * C({j, k, l});
            }
    r.symmetries = weyl_trace_free(W, gi) && cotton_symmetries(C);
    return r;
}

PrIden2Result pr_iden2_check(const JetMetric& g) {
    const int n = g.n;
    if (g.cap() < 3) throw std::invalid_argument("PR identity needs jets of degree >= 3");
    CurvaturePackage pk = curvature_package(g);
    if (!all_zero(pk.C)) throw std::invalid_argument("Cotton tensor does not vanish");
    JetTensor B = pk.P;
    for (std::size_t e = 0; e < B.c.size(); ++e) B.c[e] = Q(n - 2) * (pk.P.c[e] - Q(1, n) * (pk.J * g.g.a[e]));
    auto gi = mat_at_origin(pk.ginv);
    QTensor dB = tensor_at_origin(covariant_derivative(B, pk.Gamma));
    QTensor up = raise(raise(raise(dB, 0, gi), 1, gi), 2, gi);
    PrIden2Result r;
    r.b3 = contract(dB, up);
    // nabla_i B_jk nabla^k B^ij.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) r.b4 += dB({i, j, k}) * up({k, i, j});
    Q grad(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grad += gi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * pk.scal.dx(i).at_origin() * pk.scal.dx(j).at_origin();
    r.rhs = Q((n - 2) * (n - 2)) / Q(4 * n * n * (n - 1)) * grad;
    return r;
}

}  // namespace holo
