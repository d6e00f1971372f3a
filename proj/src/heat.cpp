#include "holokernel/heat.hpp"

#include "holokernel/gjms.hpp"
#include "holokernel/sphere.hpp"

#include <sstream>
#include <stdexcept>

namespace holo {

namespace {

RingElement R(long a, long b = 1) { return RingElement(Q(a, b)); }

// Coefficient of rho^k, zero beyond the order.
RingElement at(const EvenSeries& s, int k) { return k <= s.order() ? s[k] : RingElement(0); }

RingElement binom_sym(const RingElement& top, int k) {
    RingElement acc(1);
    for (int i = 0; i < k; ++i) acc = acc * (top - R(i));
    return acc / RingElement(Q(factorial(k)));
}

// Homogeneous models built from space forms: one block (Einstein) or
// S^p x H^q with opposite curvatures.
struct SpaceFormData {
    bool single = true;
    RingElement n, c, w2;
    RingElement p, q, lambda;
};

std::optional<SpaceFormData> space_form_data(const ModelGeometry& m) {
    SpaceFormData d;
    d.n = m.n();
    if (m.is_einstein_family()) {
        d.c = m.c();
        d.w2 = m.weyl_norm2();
        return d;
    }
    if (m.kind() == ModelGeometry::Kind::Product) {
        d.single = false;
        d.p = m.p();
        d.q = m.q();
        d.lambda = m.lambda();
        return d;
    }
    auto blocks = m.blocks();
    if (blocks.size() == 1) {
        d.c = blocks[0].eigenvalue / R(2);
        return d;
    }
    if (blocks.size() == 2 && blocks[0].eigenvalue == -blocks[1].eigenvalue) {
        // blocks are sorted by eigenvalue, so the second one is positive
        d.single = false;
        d.p = blocks[1].multiplicity;
        d.q = blocks[0].multiplicity;
        d.lambda = blocks[1].eigenvalue / R(2);
        return d;
    }
    return std::nullopt;
}

// a_{2N}(r) on S^p x H^q from the factor coefficients:
// sum over i+j=N of (1-lambda rho)^{p-2i}(1+lambda rho)^{q-2j} (4 lambda)^N A_i(p) (-1)^j A_j(q).
EvenSeries product_functoriality(const SpaceFormData& d, int N, int order) {
    EvenSeries acc = EvenSeries::constant(RingElement(0), order);
    RingElement scale = (R(4) * d.lambda).pow(N);
    for (int i = 0; i <= N; ++i) {
        int j = N - i;
        RingElement coeff = scale * conformal_closed_form(i, d.p) * conformal_closed_form(j, d.q);
        if (j % 2) coeff = -coeff;
        EvenSeries term = binomial_power_series(d.lambda, d.p - R(2 * i), order) *
                          binomial_power_series(-d.lambda, d.q - R(2 * j), order);
        acc = acc + coeff * term;
    }
    return acc;
}

// 360 a_4(r) from |R|^2, |Ric|^2, scal of g(r) scaled per block.
EvenSeries gilkey_blocks(const std::vector<SchoutenBlock>& blocks, const RingElement& w2, const EvenSeries& E,
                         const EvenSeries& v, int order) {
    EvenSeries riem = EvenSeries::constant(RingElement(0), order);
    EvenSeries ric = riem, scal = riem;
    for (auto& b : blocks) {
        RingElement K = R(2) * b.eigenvalue;
        const RingElement& m = b.multiplicity;
        EvenSeries inv_s = binomial_power_series(b.eigenvalue / R(2), R(-2), order);
        EvenSeries inv_s2 = inv_s * inv_s;
        riem = riem + (R(2) * K * K * m * (m - R(1))) * inv_s2;
        ric = ric + (K * K * (m - R(1)) * (m - R(1)) * m) * inv_s2;
        scal = scal + (K * m * (m - R(1))) * inv_s;
        if (!w2.is_zero()) riem = riem + w2 * inv_s2;
    }
    EvenSeries E_ = E.truncate(order);
    EvenSeries inner = R(2) * riem - R(2) * ric + R(5) * (scal * scal) + R(60) * (scal * E_) + R(180) * (E_ * E_);
    return (inner * v.truncate(order)).truncate(order);
}

RingElement omega_table(int k, const EvenSeries& v) {
    RingElement v2 = at(v, 1), v4 = at(v, 2), v6 = at(v, 3), v8 = at(v, 4);
    switch (k) {
        case 0:
            return R(0);
        case 1:
            return v2 * v2;
        case 2:
            return R(4) * v2 * v4 - v2.pow(3);
        case 3:
            return R(6) * v2 * v6 + R(4) * v4 * v4 - R(5) * v4 * v2 * v2 + v2.pow(4);
        case 4:
            return R(8) * v2 * v8 + R(12) * v4 * v6 - R(8) * v2 * v4 * v4 - R(7) * v6 * v2 * v2 +
                   R(6) * v4 * v2.pow(3) - v2.pow(5);
        default:
            throw std::out_of_range("omega table covers k <= 4");
    }
}

std::string series_lines(const EvenSeries& s) {
    std::ostringstream os;
    for (int k = 0; k <= s.order(); ++k) os << "    rho^" << k << ": " << s[k].str() << "\n";
    return os.str();
}

}  // namespace

const EvenSeries& CoeffReport::route(const std::string& label) const {
    for (auto& r : routes)
        if (r.label == label) return r.value;
    throw std::out_of_range("no route " + label + " in " + quantity);
}

const EvenSeries& CoeffReport::extra(const std::string& label) const {
    for (auto& r : extras)
        if (r.label == label) return r.value;
    throw std::out_of_range("no extra " + label + " in " + quantity);
}

std::string CoeffReport::str() const {
    std::ostringstream os;
    os << quantity << ": " << (agree ? "agree" : "DISAGREE");
    if (discrepancy) os << " (first difference at rho^" << *discrepancy << " in route " << discrepancy_route << ")";
    os << "\n";
    for (auto& r : routes) os << "  route " << r.label << "\n" << series_lines(r.value);
    for (auto& d : dropped_divergence) os << "  dropped divergence: " << d << "\n";
    for (auto& d : notes) os << "  note: " << d << "\n";
    return os.str();
}

CoeffReport make_report(std::string quantity, std::vector<Route> routes) {
    CoeffReport rep;
    rep.quantity = std::move(quantity);
    rep.routes = std::move(routes);
    for (std::size_t i = 1; i < rep.routes.size(); ++i) {
        auto diff = first_difference(rep.routes[0].value, rep.routes[i].value);
        if (diff && (!rep.discrepancy || *diff < *rep.discrepancy)) {
            rep.agree = false;
            rep.discrepancy = diff;
            rep.discrepancy_route = rep.routes[i].label;
        }
    }
    return rep;
}

Route scalar_route(std::string label, const RingElement& value) {
    return {std::move(label), EvenSeries::constant(value, 0)};
}

CoeffReport a0_series(const ModelGeometry& m, int order) {
    EvenSeries v = volume_series(m, order).v;
    // sqrt(det g(r))/sqrt(det g) = prod over blocks of (g(r)^{-1} entry)^{-mult/2}
    EvenSeries gauss = EvenSeries::constant(RingElement(1), order);
    for (auto& e : inverse_metric_series(m, order))
        gauss = gauss * series_pow(e.value, -e.multiplicity / R(2));
    return make_report("a0(r) " + m.name(), {{"lemma-top", v}, {"gaussian", gauss}});
}

CoeffReport a2_series(const ModelGeometry& m, int order) {
    VolumeSeries vs = volume_series(m, order + 1);
    RingElement n = m.n();
    EvenSeries rad = radial_second_derivative(vs.v, n / R(2) - R(1));
    EvenSeries wp = vs.w.derivative();
    EvenSeries wdot2 = (R(4) * (wp * wp).shift()).truncate(order);
    EvenSeries diff = (R(-1, 3) * rad.truncate(order) + wdot2).truncate(order);

    EvenSeries scal = scal_gr_series(m, order);
    EvenSeries E = E_series(m, order);
    EvenSeries viaE = ((R(1, 6) * scal.truncate(order) + E.truncate(order)) * vs.v.truncate(order)).truncate(order);

    std::vector<Route> routes{{"a2-diff", diff}, {"a2-E", viaE}};
    if (auto d = space_form_data(m)) {
        if (d->single) {
            RingElement J = R(2) * d->n * d->c;
            routes.push_back({"hc-einstein", (R(-1, 6) * (d->n - R(4)) * J) *
                                                 binomial_power_series(d->c, d->n - R(2), order)});
        } else {
            const RingElement &p = d->p, &q = d->q, &l = d->lambda;
            EvenSeries t1 = ((q - R(4)) / R(6) * R(2) * l * q) *
                            (binomial_power_series(l, p, order) * binomial_power_series(-l, q - R(2), order));
            EvenSeries t2 = ((p - R(4)) / R(6) * R(2) * l * p) *
                            (binomial_power_series(l, p - R(2), order) * binomial_power_series(-l, q, order));
            routes.push_back({"a-pq", t1 - t2});
        }
    }
    CoeffReport rep = make_report("a2(r) " + m.name(), std::move(routes));
    rep.extras.push_back({"wdot2", wdot2});
    rep.extras.push_back({"Lambda", viaE - wdot2});
    return rep;
}

LambdaOmegaReport lambda_omega_coeffs(const ModelGeometry& m, int kmax) {
    if (kmax < 1) throw std::invalid_argument("kmax must be positive");
    int order = std::max(kmax - 1, 4);
    CoeffReport a2 = a2_series(m, order);
    EvenSeries v = volume_series(m, order + 1).v;
    const EvenSeries& lam = a2.extra("Lambda");
    RingElement n = m.n();

    EvenSeries lam_k(kmax - 1), lv(kmax - 1);
    for (int k = 1; k <= kmax; ++k) {
        lam_k[k - 1] = lam[k - 1];
        lv[k - 1] = R(1, 3) * R(k) * (n - R(4 * k)) * v[k];
    }
    LambdaOmegaReport out;
    out.lambda = make_report("Lambda " + m.name(), {{"a2-E minus wdot2", lam_k}, {"L-v", lv}});

    const EvenSeries& wd = a2.extra("wdot2");
    EvenSeries om(4), table(4);
    for (int k = 0; k <= 4; ++k) {
        om[k] = wd[k];
        table[k] = omega_table(k, v);
    }
    out.omega = make_report("omega " + m.name(), {{"wdot2", om}, {"corr-v table", table}});
    return out;
}

EvenSeries a4_sectional(const ModelGeometry& m, int order) {
    if (!m.conformally_flat()) throw std::invalid_argument("sectional route needs a conformally flat model");
    auto blocks = m.blocks();
    std::size_t B = blocks.size();
    std::vector<EvenSeries> h, hd;
    for (auto& b : blocks) {
        RingElement half = b.eigenvalue / R(2);
        h.push_back(binomial_power_series(half, R(2), order));
        hd.push_back((-b.eigenvalue) * binomial_power_series(half, R(1), order));
    }
    EvenSeries zero = EvenSeries::constant(RingElement(0), order);
    // sigma_ab = R(r)_abab / (h_a h_b) with R(r) = h KN h' - (rho/2) h' KN h'
    std::vector<std::vector<EvenSeries>> sigma(B, std::vector<EvenSeries>(B));
    for (std::size_t a = 0; a < B; ++a)
        for (std::size_t b = 0; b < B; ++b) {
            EvenSeries Rab = h[a] * hd[b] + h[b] * hd[a] - (hd[a] * hd[b]).shift().truncate(order);
            sigma[a][b] = Rab / (h[a] * h[b]);
        }
    EvenSeries riem = zero, ricn = zero, scal = zero;
    for (std::size_t a = 0; a < B; ++a) {
        EvenSeries ric_a = zero;
        for (std::size_t b = 0; b < B; ++b) {
            RingElement mult = blocks[b].multiplicity - (a == b ? R(1) : R(0));
            ric_a = ric_a - mult * sigma[a][b];
            riem = riem + (R(2) * blocks[a].multiplicity * mult) * (sigma[a][b] * sigma[a][b]);
        }
        ricn = ricn + blocks[a].multiplicity * (ric_a * ric_a);
        scal = scal + blocks[a].multiplicity * ric_a;
    }
    EvenSeries E = E_series(m, order).truncate(order);
    EvenSeries v = volume_series(m, order).v;
    EvenSeries inner = R(2) * riem - R(2) * ricn + R(5) * (scal * scal) + R(60) * (scal * E) + R(180) * (E * E);
    return (R(1, 360) * (inner * v)).truncate(order);
}

CoeffReport a4_series_model(const ModelGeometry& m, int order) {
    auto d = space_form_data(m);
    if (!d) throw std::invalid_argument("a4_series_model needs an Einstein or S^p x H^q model");
    EvenSeries E = E_series(m, order);
    EvenSeries v = volume_series(m, order).v;
    std::vector<SchoutenBlock> blocks;
    if (d->single)
        blocks = {{R(2) * d->c, d->n}};
    else
        blocks = {{R(2) * d->lambda, d->p}, {R(-2) * d->lambda, d->q}};
    EvenSeries gilkey = R(1, 360) * gilkey_blocks(blocks, d->single ? d->w2 : RingElement(0), E, v, order);

    std::vector<Route> routes{{"gilkey", gilkey}};
    if (d->single) {
        RingElement n = d->n, c = d->c;
        ClLow cl = cl_low_coeffs(n, R(2) * n * c, R(4) * n * c * c, R(8) * n * c.pow(3), d->w2);
        routes.push_back({"hc-einstein", cl.a4 * binomial_power_series(c, n - R(4), order)});
    } else {
        routes.push_back({"functoriality", product_functoriality(*d, 2, order)});
    }
    if (m.conformally_flat()) routes.push_back({"sectional", a4_sectional(m, order)});
    CoeffReport rep = make_report("a4(r) " + m.name(), std::move(routes));
    rep.dropped_divergence.push_back("12 Delta_{g(r)}(scal(r) + 5 E(r))");
    return rep;
}

A22Result a22_check() {
    A22Result out;
    RingElement n = RingElement::sym("n"), p = RingElement::sym("p"), l = RingElement::sym("lambda");
    RingElement a = (n - R(5)) / R(12), b = -(n - R(8)) / R(12);

    // rho-coefficient of the a-pq closed form on S^p x H^q
    ModelGeometry prod = ModelGeometry::product(p, n - p, l);
    CoeffReport a2 = a2_series(prod, 1);
    RingElement J = R(2) * l * (R(2) * p - n), P2 = R(4) * l * l * n;
    RingElement display = R(1, 3) * l * l *
                          ((n.pow(3) - R(6) * n.pow(2) + R(8) * n) - p * (R(4) * n - R(20)) * n +
                           p * p * (R(4) * n - R(20)));
    RingElement a22 = a * J * J + b * P2;
    out.product_identity = a2.agree && a2.route("a-pq")[1] == display && display == a22;

    // p = n (q = 0 formally): compare with the rho-coefficient of -(1/6)(n-4)J(1-c rho)^{n-2}
    RingElement c = l;
    RingElement Je = R(2) * n * c, P2e = R(4) * n * c * c;
    RingElement hc = R(-1, 6) * (n - R(4)) * Je * (-(n - R(2)) * c);
    out.einstein_specialization = (a * Je * Je + b * P2e) == hc;

    auto rel_inv = [&](const RingElement& x, const RingElement& y, const RingElement& z) {
        return (R(2) * (x + y) + (n - R(4)) * z).is_zero();
    };
    // Lambda_2 = a_(2,2) - J^2/4, with no Delta J term
    out.rel_inv_lambda2 = rel_inv(a - R(1, 4), b, R(0));
    out.rel_inv_v4 = rel_inv(R(1), R(-1), R(0));
    out.rel_inv_q4 = rel_inv(n / R(2), R(-2), R(-1));
    return out;
}

CoeffReport a42_confflat(const ModelGeometry& m, bool full) {
    if (!m.conformally_flat()) throw std::invalid_argument("a42_confflat needs a conformally flat model");
    VolumeInvariants inv = volume_invariants(m);
    RingElement n = m.n();
    RingElement v2 = inv.v2, v4 = inv.v4, v6 = inv.v6;
    RingElement closed = (R(48) * (n - R(4)) * (n - R(6)) * v6 + R(48) * (n - R(4)) * (n - R(12)) * v2 * v4 -
                          R(12) * (n - R(4)) * (n - R(16)) * v2.pow(3)) /
                         R(360);
    std::vector<Route> routes{scalar_route("a42-closed", closed)};
    if (full) {
        routes.push_back(scalar_route("sectional", a4_sectional(m, 1)[1]));
        if (auto d = space_form_data(m)) {
            if (d->single) {
                RingElement c = d->c, nn = d->n;
                ClLow cl = cl_low_coeffs(nn, R(2) * nn * c, R(4) * nn * c * c, R(8) * nn * c.pow(3), RingElement(0));
                routes.push_back(scalar_route("einstein-relation", -c * (nn - R(4)) * cl.a4));
            } else {
                routes.push_back(scalar_route("functoriality", product_functoriality(*d, 2, 1)[1]));
            }
        }
    }
    CoeffReport rep = make_report("a_(4,2) " + m.name(), std::move(routes));
    rep.dropped_divergence = {"|dv_2|^2", "Delta(v_4)", "Delta(v_2^2)", "delta(P dv_2)", "Delta^2(v_2)"};
    return rep;
}

ClLow cl_low_coeffs(const RingElement& n, const RingElement& J, const RingElement& P2, const RingElement&,
                    const RingElement& W2) {
    ClLow out;
    out.a2 = -(n - R(4)) * J / R(6);
    out.a4 = (-(n - R(6)) * (R(2) * (n - R(2)) * P2 - (R(5) * n - R(16)) * J * J) + R(2) * W2) / R(360);
    RingElement v2 = -J / R(2), v4 = (J * J - P2) / R(8);
    out.a2_v = (n - R(4)) * v2 / R(3);
    out.a4_v = ((n - R(6)) * (R(8) * (n - R(2)) * v4 + R(6) * (n - R(4)) * v2 * v2) + W2) / R(180);
    return out;
}

CoeffReport a6_multiroute(const ModelGeometry& m) {
    if (!m.conformally_flat()) throw std::invalid_argument("a6_multiroute needs a conformally flat model");
    VolumeInvariants inv = volume_invariants(m);
    RingElement n = m.n(), J = inv.J, P2 = inv.P_norm2, P3 = inv.P_tr3;
    RingElement f7 = R(5040);

    RingElement branson = (n - R(8)) *
                          (R(-1, 9) * (R(35) * n * n - R(266) * n + R(456)) * J.pow(3) +
                           R(2, 3) * (n - R(1)) * (R(7) * n - R(30)) * J * P2 -
                           R(2, 9) * (R(5) * n * n - R(2) * n - R(48)) * P3) /
                          f7;

    RingElement v2 = inv.v2_series, v4 = inv.v4_series, v6 = inv.v6_series;
    RingElement av6 = (n - R(8)) * R(8, 3) *
                      ((R(10) * n * n - R(4) * n - R(96)) * v6 +
                       (n - R(6)) * (R(18) * (n - R(2)) * v2 * v4 + (n - R(10)) * v2.pow(3))) /
                      f7;

    // B = (n-2)(P - J g/n)
    RingElement scal = R(2) * (n - R(1)) * J;
    RingElement B2 = (n - R(2)).pow(2) * (P2 - J * J / n);
    RingElement B3 = (n - R(2)).pow(3) * (P3 - R(3) * J * P2 / n + R(2) * J.pow(3) / (n * n));
    RingElement b10 = -(n - R(8)) *
                      (R(35) * n.pow(4) - R(308) * n.pow(3) + R(688) * n * n - R(184) * n - R(96)) /
                      (R(72) * n * n * (n - R(1)).pow(3));
    RingElement b11 = (n - R(8)) * (R(7) * n.pow(3) - R(17) * n * n - R(2) * n + R(24)) /
                      (R(3) * n * (n - R(1)).pow(2) * (n - R(2)));
    RingElement b13 = R(4) * (n - R(8)) * (R(11) * n.pow(3) - R(28) * n * n + R(32) * n - R(24)) /
                      (R(9) * (n - R(1)) * (n - R(2)).pow(3));
    RingElement table = (b10 * scal.pow(3) + b11 * scal * B2 + b13 * B3) / f7;

    std::vector<Route> routes{scalar_route("branson", branson), scalar_route("av-6", av6)};
    // The table is pointwise. Without derivative terms it describes a conformally
    // flat metric only if P can be parallel, which forces J|P|^2 = n tr P^3.
    bool parallel = (J * P2 - n * P3).is_zero();
    if (parallel) routes.push_back(scalar_route("table-heat-6", table));
    if (auto d = space_form_data(m)) {
        if (d->single)
            routes.push_back(scalar_route("sphere-closed", (R(4) * d->c).pow(3) * conformal_closed_form(3, d->n)));
        else
            routes.push_back(scalar_route("func-6", product_functoriality(*d, 3, 0)[0]));
    }
    CoeffReport rep = make_report("a6 " + m.name(), std::move(routes));
    rep.dropped_divergence = {"|dJ|^2", "divergence terms of the Branson formula"};
    if (!parallel) rep.notes.push_back("table-heat-6 skipped: J|P|^2 != n tr P^3, no parallel Schouten tensor");
    return rep;
}

RingElement q_einstein(const RingElement& n, const RingElement& c, int N) {
    if (N < 1) throw std::invalid_argument("q_einstein needs N >= 1");
    std::vector<RingElement> Qc(static_cast<std::size_t>(N) + 1);
    RingElement half = n / R(2);
    for (int M = 1; M <= N; ++M) {
        RingElement sum(0);
        for (int a = 1; a < M; ++a) {
            for (auto& I : compositions(M - a)) {
                std::vector<int> parts = I.parts;
                parts.push_back(a);
                RingElement term = RingElement(m_coeff(Composition(parts)));
                if (a % 2) term = -term;
                term = term * Qc[static_cast<std::size_t>(a)];
                for (int j : I.parts) {
                    RingElement pj = (half - R(j)) * Qc[static_cast<std::size_t>(j)];
                    term = term * (j % 2 ? -pj : pj);
                }
                sum = sum + term;
            }
        }
        RingElement wM = binom_sym(half, M) * (-c).pow(M);
        RingElement signed_q = -sum + RingElement(Q(factorial(M) * factorial(M - 1))) * R(4).pow(M) * wM;
        Qc[static_cast<std::size_t>(M)] = M % 2 ? -signed_q : signed_q;
    }
    return Qc[static_cast<std::size_t>(N)];
}

bool holographic_q_check(const RingElement& n, const RingElement& c, int N) {
    if (N < 2 || N > 3) throw std::invalid_argument("holographic_q_check covers N = 2, 3");
    RingElement J = R(2) * n * c, P2 = R(4) * n * c * c;
    auto v = [&](int k) { return binom_sym(n, k) * (-c).pow(k); };
    RingElement lam = n / R(2) - R(N);
    RingElement d2 = n - R(2) - R(2) * lam, d4 = n - R(4) - R(2) * lam;
    auto T = [&](int j) -> RingElement {
        if (j == 1) {
            if (d2.is_zero()) throw std::domain_error("T_2 has a pole at this parameter");
            return -lam * J / (R(2) * d2);
        }
        if (d2.is_zero() || d4.is_zero()) throw std::domain_error("T_4 has a pole at this parameter");
        return (lam * (lam + R(2)) * J * J - lam * d2 * P2) / (R(8) * d2 * d4);
    };
    Q cN = qpow(Q(-1), N) / (qpow(Q(2), 2 * N - 1) * Q(factorial(N) * factorial(N - 1)));
    RingElement lhs = R(2 * N) * RingElement(cN) * q_einstein(n, c, N);
    RingElement rhs = R(2 * N) * v(N);
    for (int j = 1; j < N; ++j) rhs = rhs + R(2 * N - 2 * j) * T(j) * v(N - j);
    return lhs == rhs;
}

bool q_a4_check(const ModelGeometry& m) {
    if (!m.conformally_flat()) throw std::invalid_argument("q_a4_check needs a conformally flat model");
    VolumeInvariants inv = volume_invariants(m);
    RingElement n = m.n();
    CoeffReport a2 = a2_series(m, 1);
    RingElement a2_0 = a2.route("a2-E")[0];
    RingElement lambda2 = a2.extra("Lambda")[1];
    RingElement a4_0 = a4_sectional(m, 0)[0];
    RingElement Q2 = inv.J, Q4 = n / R(2) * inv.J * inv.J - R(2) * inv.P_norm2;

    bool ok = a2.agree && (n - R(4)) * Q2 == R(-6) * a2_0 && (n - R(6)) * (Q4 + R(4) * lambda2) == R(60) * a4_0;
    if (!(n - R(4)).is_zero()) ok = ok && Q2 == R(-6) * a2_0 / (n - R(4));
    if (!(n - R(6)).is_zero()) ok = ok && Q4 == R(60) * a4_0 / (n - R(6)) - R(4) * lambda2;
    return ok;
}

bool scaling_weight_check(int j, int k) {
    if (j < 0 || k < 0 || 2 * j + 2 * k > 8) throw std::invalid_argument("scaling check covers 2j + 2k <= 8");
    RingElement n = RingElement::sym("n"), c = RingElement::sym("c"), s = RingElement::sym("s");
    ModelGeometry m = ModelGeometry::einstein(n, c);
    RingElement coeff;
    switch (j) {
        case 0:
            coeff = volume_series(m, k).v[k];
            break;
        case 1:
            coeff = a2_series(m, k).route("a2-E")[k];
            break;
        case 2:
            coeff = a4_series_model(m, k).route("gilkey")[k];
            break;
        case 3:
            coeff = a6_multiroute(m).route("branson")[0] * binomial_power_series(c, n - R(6), k)[k];
            break;
        default:
            coeff = conformal_closed_form(j, n) * (R(4) * c).pow(j);
    }
    return coeff.subs("c", s * s * c) == s.pow(2 * j + 2 * k) * coeff;
}

PvKind parse_pv_kind(const std::string& s) {
    if (s == "PV2") return PvKind::PV2;
    if (s == "PV4") return PvKind::PV4;
    if (s == "PV6") return PvKind::PV6;
    if (s == "FDV4") return PvKind::FDV4;
    if (s == "FDV6") return PvKind::FDV6;
    throw std::invalid_argument("unknown rescaling check " + s);
}

std::string pv_kind_name(PvKind k) {
    switch (k) {
        case PvKind::PV2: return "PV2";
        case PvKind::PV4: return "PV4";
        case PvKind::PV6: return "PV6";
        case PvKind::FDV4: return "FDV4";
        case PvKind::FDV6: return "FDV6";
    }
    return "?";
}

PvResult pv_rescaling(PvKind kind, const RingElement& phi) {
    int n = kind == PvKind::PV2 ? 2 : (kind == PvKind::PV4 || kind == PvKind::FDV4) ? 4 : 6;
    // e^phi for the constant conformal factor is carried by a symbol.
    const std::string Ename = "exp_phi";
    RingElement E = RingElement::sym(Ename);
    RingElement one(1);

    VolumeInvariants inv = volume_invariants(ModelGeometry::sphere(n));
    RingElement J = inv.J;
    std::vector<RingElement> v{one, inv.v2_series, inv.v4_series, inv.v6_series};
    RingElement Qn = q_einstein(R(n), R(1, 4), n / 2);
    RingElement vol(sphere_volume(n));

    // Quantities for e^{2 phi} g at factor x (x = 1 is g itself).
    auto vh = [&](int k, const RingElement& x) { return v[static_cast<std::size_t>(k)] / x.pow(2 * k); };
    auto volh = [&](const RingElement& x) { return vol * x.pow(n); };
    auto Qh = [&](const RingElement& x) { return Qn / x.pow(n); };
    auto Jh = [&](const RingElement& x) { return J / x.pow(2); };
    // Conformal variation of a functional F(x) at x = 1.
    auto vary = [&](const RingElement& F) { return phi * F.derivative(symbol(Ename)).subs(Ename, one); };

    PvResult out;
    if (kind == PvKind::PV2 || kind == PvKind::PV4 || kind == PvKind::PV6) {
        // V_n(e^{2 phi} g) - V_n(g) = int_0^1 int phi v_n dvol at e^{2 t phi} g dt
        RingElement integrand = phi * vh(n / 2, E) * volh(E);
        if (integrand.has_var(symbol(Ename))) {
            out.lhs = integrand;
            out.ok = false;
            return out;
        }
        out.lhs = integrand;
        RingElement qterm = phi * (Qh(E) * volh(E) + Qh(one) * volh(one));
        if (kind == PvKind::PV2) {
            out.rhs = R(-1, 4) * qterm;
        } else if (kind == PvKind::PV4) {
            out.rhs = R(1, 32) * qterm - R(1, 8) * (vh(1, E).pow(2) * volh(E) - vh(1, one).pow(2) * volh(one));
        } else {
            // P_2 on constants is multiplication by -(n/2 - 1) J
            auto local = [&](const RingElement& x) {
                RingElement P2v2 = -R(n / 2 - 1) * Jh(x) * vh(1, x);
                return (vh(1, x) * P2v2 - R(32) * vh(1, x) * vh(2, x)) * volh(x);
            };
            out.rhs = R(-1, 768) * qterm + R(1, 192) * (local(E) - local(one));
        }
    } else {
        Q an = conformal_sphere_coeffs(n, n / 2).coeffs.back();
        out.lhs = R(-2) * phi * RingElement(an) * vol;
        if (kind == PvKind::FDV4) {
            out.rhs = R(16, 45) * phi * v[2] * vol + R(2, 15) * vary(vh(1, E).pow(2) * volh(E));
        } else {
            RingElement F = (R(144) * vh(1, E) * vh(2, E) - R(8) * vh(1, E).pow(3)) * volh(E);
            out.rhs = R(32, 63) * phi * v[3] * vol + R(16, 3 * 5040) * vary(F);
        }
    }
    out.ok = out.lhs == out.rhs;
    return out;
}

bool pv_rescaling_check(PvKind kind, const RingElement& phi) { return pv_rescaling(kind, phi).ok; }

}  // namespace holo
