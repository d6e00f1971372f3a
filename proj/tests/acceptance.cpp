// Acceptance criteria: exact equality only, one PASS/FAIL line per criterion.

#include "catalog.hpp"
#include "holokernel/cli.hpp"
#include "holokernel/gjms.hpp"
#include "holokernel/heat.hpp"
#include "holokernel/jetgen.hpp"
#include "holokernel/sphere.hpp"
#include "holokernel/variational.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace holo;

namespace {

using RE = RingElement;
RE S(const char* s) { return RE::sym(s); }
RE R(long a, long b = 1) { return RE(Q(a) / Q(b)); }

// First failure message, empty when everything held.
struct Ledger {
    std::string first;
    void require(bool ok, const std::string& what) {
        if (!ok && first.empty()) first = what;
    }
};

// ---------------------------------------------------------------- 1

void gjms_combinatorics(Ledger& l) {
    for (int N = 1; N <= 8; ++N) l.require(verify_inversion(N), "inversion N=" + std::to_string(N));
    for (int N = 1; N <= 7; ++N)
        for (auto& I : compositions(N)) l.require(bracket_identity_check(I), "bracket identity " + I.str());
    for (int N = 1; N <= 8; ++N)
        for (auto& I : compositions(N)) l.require(m_coeff(I.reversed()) == m_coeff(I), "m reversal " + I.str());
    for (int N = 1; N <= 6; ++N) l.require(sphere_factorization(N), "sphere factorization N=" + std::to_string(N));
}

// ---------------------------------------------------------------- 2

void sphere_tables(Ledger& l) {
    for (int n = 2; n <= 12; ++n) {
        auto t = laplace_sphere_beta(n);
        for (int k = 0; k < static_cast<int>(t.coeffs.size()) && k <= 3; ++k)
            l.require(t.coeffs[static_cast<std::size_t>(k)] == laplace_closed_form(k, R(n)).constant_value(),
                      "beta route n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    // a_2 = n(n-1)/6 for the Laplacian, symbolically in n.
    RE n = S("n");
    l.require(laplace_closed_form(1, n) == n * (n - R(1)) / R(6), "closed a_2");
    l.require(conformal_sphere_coeffs(2, 1).coeffs[1] == Q(1) / 3, "conformal n=2");
    l.require(conformal_sphere_coeffs(4, 2).coeffs[2] == Q(-1) / 15, "conformal n=4");
    l.require(conformal_sphere_coeffs(6, 3).coeffs[3] == Q(5) / 63, "conformal n=6");
    const Q euler[] = {Q(1) / 6, Q(-1) / 180, Q(1) / 1512};
    const Q av[] = {Q(-2) / 3, Q(-8) / 45, Q(-16) / 63};
    for (int m = 1; m <= 3; ++m) {
        int d = 2 * m;
        l.require(euler_check(d), "euler_check n=" + std::to_string(d));
        l.require(euler_integral(d) == ExactScalar(Q(euler[m - 1] * 2)), "euler integral n=" + std::to_string(d));
        Q v = volume_series(ModelGeometry::sphere(d), m).v[m].constant_value();
        l.require(conformal_sphere_coeffs(d, m).coeffs[static_cast<std::size_t>(m)] == av[m - 1] * v,
                  "a-v relation n=" + std::to_string(d));
    }
}

// ---------------------------------------------------------------- 3

void ladder_on(Ledger& l, const ModelGeometry& m) {
    const int kmax = 6;
    auto lo = lambda_omega_coeffs(m, kmax);
    l.require(lo.lambda.agree, "Lambda report " + m.name());
    l.require(lo.omega.agree, "omega report " + m.name());
    // Independent route: Lambda = a_2 - (dw/dr)^2 with (dw/dr)^2 = 4 rho (w_rho)^2, w = sqrt(v).
    auto v = volume_series(m, kmax + 1).v;
    EvenSeries w = series_sqrt(v);
    EvenSeries wr = w.derivative();
    EvenSeries wdot2 = (R(4) * (wr * wr)).shift().truncate(kmax);
    EvenSeries lambda = a2_series(m, kmax).route("a2-diff").truncate(kmax) - wdot2;
    const RE& n = m.n();
    for (int k = 1; k <= kmax; ++k)
        l.require(lambda[k - 1] == R(k) * (n - R(4 * k)) * v[k] / R(3),
                  "Lambda_" + std::to_string(2 * k - 2) + " on " + m.name());
    // omega polynomials in v for k <= 4.
    l.require(wdot2[1] == v[1] * v[1], "omega_2 on " + m.name());
    l.require(wdot2[2] == R(4) * v[1] * v[2] - v[1].pow(3), "omega_4 on " + m.name());
    for (int k = 1; k <= 4; ++k) l.require(lo.omega.route("wdot2")[k] == wdot2[k], "omega series " + m.name());
}

void lambda_omega_ladder(Ledger& l) {
    ladder_on(l, ModelGeometry::einstein(S("n"), S("c")));
    ladder_on(l, ModelGeometry::product(S("p"), S("q"), S("lambda")));
    Rng g(2718);
    for (int i = 0; i < 10; ++i) ladder_on(l, random_conf_flat(g, 3, 8));
}

// ---------------------------------------------------------------- 4

void a2_agreement(Ledger& l) {
    for (auto& m : testgen::catalog()) {
        auto rep = a2_series(m, 6);
        l.require(rep.agree, "a2 routes " + m.name());
        EvenSeries direct = (R(1, 6) * scal_gr_series(m, 6) + E_series(m, 6)) * volume_series(m, 6).v;
        for (auto& r : rep.routes)
            l.require(series_equal(direct, r.value) && r.value.order() >= 6, "route " + r.label + " on " + m.name());
    }
}

// ---------------------------------------------------------------- 5

void a4_block(Ledger& l) {
    RE n = S("n"), c = S("c");
    auto ein = a4_series_model(ModelGeometry::einstein(n, c), 4);
    l.require(ein.agree, "a4 Einstein routes");
    const EvenSeries& gil = ein.route("gilkey");
    l.require(series_equal(gil, gil[0] * binomial_power_series(c, n - R(4), 4)), "(1 - c rho)^(n-4) a_4(0)");
    auto s4 = a4_series_model(ModelGeometry::sphere(4), 3);
    l.require(s4.agree, "a4 sphere:4 routes");
    l.require(s4.route("gilkey")[0] == R(-1, 15), "a_4(S^4) = -1/15");
    l.require(R(360) * s4.route("gilkey")[0] == R(-24), "360 a_4(S^4) = -24");
    auto a22 = a22_check();
    l.require(a22.product_identity, "a22 product display");
    l.require(a22.einstein_specialization && a22.rel_inv_lambda2 && a22.rel_inv_v4 && a22.rel_inv_q4,
              "a22 polynomial identities");
    auto a42 = a42_confflat(ModelGeometry::einstein(n, c));
    l.require(a42.agree, "a42 Einstein routes");
    l.require(R(360) * a42.route("a42-closed")[0] ==
                  R(-4) * c.pow(3) * n * (n - R(4)) * (n - R(6)) * (R(5) * n * n - R(18) * n + R(4)),
              "a42 Einstein relation");
}

// ---------------------------------------------------------------- 6

void a6_routes(Ledger& l) {
    for (int p = 3; p <= 9; ++p)
        for (int q = 3; p + q <= 12; ++q) {
            auto rep = a6_multiroute(ModelGeometry::product(R(p), R(q), R(1, 4)));
            l.require(rep.agree && rep.routes.size() >= 4, "a6 product p=" + std::to_string(p) + " q=" + std::to_string(q));
        }
    for (int n = 3; n <= 12; ++n) {
        l.require(a6_multiroute(ModelGeometry::sphere(n)).agree, "a6 sphere n=" + std::to_string(n));
        l.require(a6_multiroute(ModelGeometry::hyperbolic(n)).agree, "a6 hyperbolic n=" + std::to_string(n));
    }
}

// ---------------------------------------------------------------- 7

void q_curvature(Ledger& l) {
    RE n = S("n"), c = S("c");
    l.require(q_einstein(n, c, 1) == R(2) * n * c, "Q_2");
    l.require(q_einstein(n, c, 2) == R(2) * n * c * c * (n - R(2)) * (n + R(2)), "Q_4");
    for (int d : {4, 6, 8, 10}) {
        Q fact(1);
        for (int i = 2; i < d; ++i) fact *= i;
        l.require(q_einstein(R(d), c, d / 2) == RE(fact) * (R(4) * c).pow(d / 2), "critical Q_" + std::to_string(d));
    }
    l.require(holographic_q_check(n, c, 2), "holographic N=2");
    for (int d : {8, 10, 12}) l.require(holographic_q_check(R(d), c, 3), "holographic N=3 n=" + std::to_string(d));
    for (auto& m : {ModelGeometry::einstein(n, c), ModelGeometry::product(S("p"), S("q"), S("lambda")),
                    ModelGeometry::sphere(4), ModelGeometry::sphere(6)})
        l.require(q_a4_check(m), "Q-a-4 on " + m.name());
}

// ---------------------------------------------------------------- 8

std::vector<RE> sphere_tail(int n) {
    auto s = sphere_spectrum(n, S("c"), 6);
    s.erase(s.begin());
    return s;
}

std::vector<RE> negative_samples(int n) {
    std::vector<RE> s;
    for (int j = 1; j <= 6; ++j) s.push_back(-S("c") * R(j * (j + n - 1)));
    return s;
}

bool strict(const HessianForm& f, int n, int sign, Extremum want) {
    RE c = S("c");
    if (classify_extremum_interval(f, sign > 0 ? R(4 * n) * c : R(0), sign).kind != want) return false;
    if (sign < 0) return classify_extremum(f, negative_samples(n), -1).kind == want;
    Classification s = classify_extremum(f, sphere_tail(n), 1);
    if (s.kind != Extremum::DegenerateAlongConformalKilling || s.semidefinite != want) return false;
    auto beyond = sphere_tail(n);
    beyond.erase(beyond.begin());
    return classify_extremum(f, beyond, 1).kind == want;
}

void variational(Ledger& l) {
    RE c = S("c");
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; 2 * k < n; ++k) {
            auto f = hessian_form(HessianKind::F2k, R(n), k);
            std::string id = " n=" + std::to_string(n) + " k=" + std::to_string(k);
            l.require(strict(f.scaled(R(k % 2 ? -1 : 1)), n, 1, Extremum::LocalMin), "extremal v_2k c>0" + id);
            l.require(strict(f, n, -1, Extremum::LocalMax), "extremal v_2k c<0" + id);
        }
    for (int n = 4; n <= 12; n += 2) {
        auto rv = hessian_form(HessianKind::RV, R(n));
        l.require(strict(rv.scaled(R((n / 2) % 2 ? -1 : 1)), n, 1, Extremum::LocalMin), "RV c>0");
        l.require(strict(rv, n, -1, Extremum::LocalMax), "RV c<0");
        auto wc = hessian_form(HessianKind::Wcrit, R(n));
        auto pos = wc.scaled(R((n / 2 - 1) % 2 ? -1 : 1));
        l.require(classify_extremum_interval(pos, R(4 * n) * c, 1).kind == Extremum::LocalMax, "Wcrit c>0");
        Classification s = classify_extremum(pos, sphere_spectrum(n, c, 6), 1);
        l.require(s.kind == Extremum::DegenerateAlongConformalKilling && s.semidefinite == Extremum::LocalMax,
                  "Wcrit sphere");
        l.require(classify_extremum_interval(wc, R(0), -1).kind == Extremum::LocalMin, "Wcrit c<0");
    }
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; k <= n - 2; ++k) {
            auto f = hessian_form(HessianKind::Wsub, R(n), k);
            auto sgn = R(k % 2 ? -1 : 1);
            std::string id = " n=" + std::to_string(n) + " k=" + std::to_string(k);
            if (2 * k < n - 2) l.require(strict(f.scaled(sgn), n, 1, Extremum::LocalMax), "w_2k subcritical" + id);
            if (2 * k == n - 2)
                l.require(classify_extremum_interval(f.scaled(sgn), R(4 * n) * c, 1).kind == Extremum::LocalMax,
                          "w_2k critical" + id);
            if (2 * k > n - 2) l.require(strict(f, n, -1, Extremum::LocalMin), "w_2k c<0" + id);
        }
    auto det2 = hessian_form(HessianKind::DET2, R(2));
    l.require(strict(det2, 2, 1, Extremum::LocalMax) && strict(det2, 2, -1, Extremum::LocalMax), "det2");
    auto det4 = hessian_form(HessianKind::DET4, R(4));
    l.require(strict(det4, 4, 1, Extremum::LocalMin), "det4 c>0");
    l.require(classify_extremum_interval(det4, R(0), -1).kind == Extremum::Indefinite, "det4 c<0");
    auto det6 = hessian_form(HessianKind::DET6, R(6));
    l.require(strict(det6, 6, 1, Extremum::LocalMax) && strict(det6, 6, -1, Extremum::LocalMax), "det6");
    auto a42 = hessian_form(HessianKind::A42, R(6));
    l.require(classify_extremum_interval(a42, R(24) * c, 1).kind == Extremum::LocalMax, "a42 c>0");
    l.require(classify_extremum_interval(a42, R(0), -1).kind == Extremum::LocalMax, "a42 c<0");
    l.require(classify_extremum(a42, sphere_spectrum(6, c, 6), 1).str() == "DegenerateAlongConformalKilling(LocalMax)",
              "a42 sphere");

    auto sym = rvc_model_variation(ModelGeometry::einstein(S("n"), c), S("mu"), 6);
    l.require(sym.second_gf, "second generating function");
    l.require(sym.log_v_var, "log-v variation");
    l.require(sym.ok(), "Einstein variation report");
    for (int n = 3; n <= 8; ++n) {
        auto s = rvc_model_variation(ModelGeometry::sphere(n), S("mu"), 6);
        l.require(s.kappa0 && s.ok(), "sphere kappa_0 n=" + std::to_string(n));
    }
}

// ---------------------------------------------------------------- 9

void jet_suite(Ledger& l) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        for (int n : {3, 4}) {
            SuiteOptions opt;
            opt.seed = seed;
            opt.n = n;
            opt.order = 1;
            for (auto& c : run_suite("jets", opt).checks)
                l.require(c.status == CheckStatus::Pass,
                          c.id + " seed=" + std::to_string(seed) + " n=" + std::to_string(n) + ": " + c.first_discrepancy);
        }
}

// ---------------------------------------------------------------- 10

void pv_block(Ledger& l) {
    for (auto k : {PvKind::PV2, PvKind::PV4, PvKind::PV6, PvKind::FDV4, PvKind::FDV6})
        l.require(pv_rescaling_check(k, S("phi")), pv_kind_name(k));
}

struct Criterion {
    int index;
    std::string title;
    double budget_s;  // 0: no runtime bound
    std::function<void(Ledger&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "GJMS combinatorics", 5, gjms_combinatorics},
        {2, "sphere tables", 1, sphere_tables},
        {3, "Lambda/omega ladder", 5, lambda_omega_ladder},
        {4, "a_2 route agreement", 0, a2_agreement},
        {5, "a_4 identities", 0, a4_block},
        {6, "a_6 four-route agreement", 10, a6_routes},
        {7, "Q-curvature", 0, q_curvature},
        {8, "variational forms", 0, variational},
        {9, "jet suite", 300, jet_suite},
        {10, "PV/FD rescaling", 0, pv_block},
    };
    int failures = 0;
    for (auto& c : criteria) {
        Ledger l;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(l);
        } catch (const std::exception& e) {
            l.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs > c.budget_s) l.require(false, "runtime " + std::to_string(secs) + " s over budget");
        bool ok = l.first.empty();
        failures += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.index << ": " << c.title;
        if (!ok) std::cout << " (" << l.first << ")";
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
