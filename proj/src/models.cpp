#include "holokernel/models.hpp"

#include <map>
#include <stdexcept>

namespace holo {

namespace {

RingElement R(long a, long b = 1) { return RingElement(Q(a, b)); }

bool is_integer_below(const RingElement& x, long bound) {
    if (!x.is_constant()) return false;
    Q v = x.constant_value();
    return v.get_den() == 1 && v < bound;
}

}  // namespace

ModelGeometry ModelGeometry::einstein(RingElement n, RingElement c, RingElement weyl_norm2) {
    if (is_integer_below(n, 3)) throw std::invalid_argument("Einstein model needs n >= 3");
    ModelGeometry m;
    m.kind_ = Kind::Einstein;
    m.n_ = std::move(n);
    m.c_ = std::move(c);
    m.w2_ = std::move(weyl_norm2);
    return m;
}

ModelGeometry ModelGeometry::sphere(int n) {
    if (n < 2) throw std::invalid_argument("sphere needs n >= 2");
    ModelGeometry m;
    m.kind_ = Kind::Sphere;
    m.n_ = RingElement(n);
    m.c_ = R(1, 4);
    return m;
}

ModelGeometry ModelGeometry::hyperbolic(int n) {
    if (n < 2) throw std::invalid_argument("hyperbolic space needs n >= 2");
    ModelGeometry m = sphere(n);
    m.kind_ = Kind::Hyperbolic;
    m.c_ = R(-1, 4);
    return m;
}

ModelGeometry ModelGeometry::product(RingElement p, RingElement q, RingElement lambda) {
    if (is_integer_below(p, 3) || is_integer_below(q, 3)) throw std::invalid_argument("product model needs p, q >= 3");
    ModelGeometry m;
    m.kind_ = Kind::Product;
    m.n_ = p + q;
    m.p_ = std::move(p);
    m.q_ = std::move(q);
    m.lambda_ = std::move(lambda);
    return m;
}

ModelGeometry ModelGeometry::conf_flat(std::vector<Q> eig) {
    if (eig.size() < 3) throw std::invalid_argument("conformally flat diagonal model needs n >= 3");
    ModelGeometry m;
    m.kind_ = Kind::ConfFlatDiagonal;
    m.n_ = RingElement(static_cast<long>(eig.size()));
    m.eig_ = std::move(eig);
    return m;
}

std::vector<SchoutenBlock> ModelGeometry::blocks() const {
    switch (kind_) {
        case Kind::Einstein:
        case Kind::Sphere:
        case Kind::Hyperbolic:
            return {{R(2) * c_, n_}};
        case Kind::Product:
            return {{R(2) * lambda_, p_}, {R(-2) * lambda_, q_}};
        case Kind::ConfFlatDiagonal: {
            std::map<Q, long> counts;
            for (auto& e : eig_) counts[e] += 1;
            std::vector<SchoutenBlock> out;
            for (auto& [e, k] : counts) out.push_back({RingElement(e), RingElement(k)});
            return out;
        }
    }
    return {};
}

std::string ModelGeometry::name() const {
    switch (kind_) {
        case Kind::Sphere:
            return "sphere:" + n_.str();
        case Kind::Hyperbolic:
            return "hyperbolic:" + n_.str();
        case Kind::Einstein:
            return "einstein:n=" + n_.str() + ",c=" + c_.str();
        case Kind::Product:
            return "product:p=" + p_.str() + ",q=" + q_.str() + ",lambda=" + lambda_.str();
        case Kind::ConfFlatDiagonal: {
            std::string s = "confflat:n=" + n_.str() + ",p=[";
            for (std::size_t i = 0; i < eig_.size(); ++i) s += (i ? "," : "") + to_string(eig_[i]);
            return s + "]";
        }
    }
    return "";
}

VolumeSeries volume_series(const ModelGeometry& m, int order) {
    EvenSeries v = EvenSeries::constant(R(1), order);
    for (auto& b : m.blocks()) v = v * binomial_power_series(b.eigenvalue / R(2), b.multiplicity, order);
    return {v, series_sqrt(v)};
}

VolumeInvariants volume_invariants(const ModelGeometry& m) {
    VolumeInvariants inv;
    for (auto& b : m.blocks()) {
        inv.J += b.multiplicity * b.eigenvalue;
        inv.P_norm2 += b.multiplicity * b.eigenvalue.pow(2);
        inv.P_tr3 += b.multiplicity * b.eigenvalue.pow(3);
    }
    inv.scal = R(2) * (m.n() - R(1)) * inv.J;
    inv.v2 = -inv.J / R(2);
    inv.v4 = (inv.J.pow(2) - inv.P_norm2) / R(8);
    inv.v6 = -(inv.J.pow(3) - R(3) * inv.J * inv.P_norm2 + R(2) * inv.P_tr3) / R(48);
    EvenSeries v = volume_series(m, 3).v;
    inv.v2_series = v[1];
    inv.v4_series = v[2];
    inv.v6_series = v[3];
    return inv;
}

std::vector<DiagonalEntry> inverse_metric_series(const ModelGeometry& m, int order) {
    std::vector<DiagonalEntry> out;
    for (auto& b : m.blocks()) out.push_back({binomial_power_series(b.eigenvalue / R(2), R(-2), order), b.multiplicity});
    return out;
}

std::vector<DiagonalEntry> metric_series(const ModelGeometry& m, int order) {
    std::vector<DiagonalEntry> out;
    for (auto& b : m.blocks()) out.push_back({binomial_power_series(b.eigenvalue / R(2), R(2), order), b.multiplicity});
    return out;
}

std::vector<DiagonalEntry> L_series(const ModelGeometry& m, int order) {
    EvenSeries v = volume_series(m, order).v;
    std::vector<DiagonalEntry> out;
    for (auto& d : inverse_metric_series(m, order)) {
        // int_0^r s rho^k ds = rho^{k+1} / (2(k+1))
        EvenSeries integral(order);
        for (int k = 0; k <= order; ++k) integral[k] = d.value[k] / R(2 * (k + 1));
        out.push_back({v * integral, d.multiplicity});
    }
    return out;
}

EvenSeries E_series(const ModelGeometry& m, int order) {
    EvenSeries w = volume_series(m, order + 1).w;
    return -(radial_second_derivative(w, m.n() - R(1)) / w.truncate(order));
}

EvenSeries scal_gr_series(const ModelGeometry& m, int order) {
    EvenSeries v = volume_series(m, order + 1).v;
    return radial_second_derivative(v, R(2) * m.n() - R(1)) / v.truncate(order);
}

bool trace_identity_check(const ModelGeometry& m, int order) {
    auto ginv = inverse_metric_series(m, order);
    auto g = metric_series(m, order + 2);
    EvenSeries lhs(order), first(order), quad(order);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EvenSeries h1 = g[i].value.derivative().truncate(order);
        EvenSeries h2 = g[i].value.derivative().derivative().truncate(order);
        const EvenSeries& gi = ginv[i].value;
        const RingElement& mult = g[i].multiplicity;
        // g' = r (2 h1), g'' = 2 h1 + 4 rho h2 in terms of r-derivatives
        EvenSeries gdd = R(2) * h1 + R(4) * h2.shift().truncate(order);
        lhs = lhs + mult * (gi * gdd);
        first = first + mult * (gi * (R(2) * h1));
        // (g^{-1} g')^2 = rho * 4 (g^{-1} h1)^2
        EvenSeries t = gi * h1;
        quad = quad + mult * (R(4) * (t * t).shift().truncate(order));
    }
    return series_equal(lhs, first + R(1, 2) * quad);
}

bool hol_ein_check(const ModelGeometry& m, int order) {
    if (!m.is_einstein_family()) throw std::invalid_argument("hol_ein_check needs an Einstein model");
    RingElement scal0 = scal_gr_series(m, 0)[0];
    RingElement n = m.n();
    RingElement lam = scal0 / (n * (n - R(1)));
    RingElement J = scal0 / (R(2) * (n - R(1)));
    EvenSeries rhs = (-(n / R(2) - R(1)) * J) * binomial_power_series(lam / R(4), R(-2), order);
    return lam == R(4) * m.c() && series_equal(E_series(m, order), rhs);
}

}  // namespace holo
