#include "holokernel/cli.hpp"

#include "holokernel/gjms.hpp"
#include "holokernel/heat.hpp"
#include "holokernel/jetgen.hpp"
#include "holokernel/sphere.hpp"
#include "holokernel/variational.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <regex>
#include <sstream>

namespace holo {

namespace {

using RE = RingElement;
using Json = nlohmann::ordered_json;

const std::regex kIdent("[A-Za-z_][A-Za-z0-9_]*");
const std::regex kInt("[0-9]+");

RE parse_value(const std::string& s, bool integer_only, const std::string& key) {
    if (std::regex_match(s, kIdent)) return RE::sym(s);
    if (integer_only && !std::regex_match(s, kInt)) throw UsageError(key + " must be an integer or a symbol: " + s);
    try {
        return RE(parse_rational(s));
    } catch (const std::exception&) {
        throw UsageError("bad rational for " + key + ": " + s);
    }
}

int parse_int(const std::string& s, const std::string& key) {
    if (!std::regex_match(s, kInt) || s.size() > 6) throw UsageError(key + " must be a positive integer: " + s);
    return std::stoi(s);
}

std::vector<std::string> coeff_strings(const EvenSeries& s, int order) {
    std::vector<std::string> out;
    for (int k = 0; k <= order && k <= s.order(); ++k) out.push_back(s[k].str());
    return out;
}

std::string series_lines(const EvenSeries& s, int order) {
    std::ostringstream os;
    for (int k = 0; k <= order && k <= s.order(); ++k) os << k << ": " << s[k].str() << "\n";
    return os.str();
}

std::string status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "fail";
}

// Collects checks; each body returns an empty string on success and the first
// discrepancy otherwise.
class SuiteBuilder {
public:
    using Body = std::function<std::string()>;

    void run(const std::string& id, const std::string& ref, const Body& body) {
        CheckResult r{id, ref, CheckStatus::Pass, {}};
        try {
            std::string d = body();
            if (!d.empty()) {
                r.status = CheckStatus::Fail;
                r.first_discrepancy = d;
            }
        } catch (const std::exception& e) {
            r.status = CheckStatus::Fail;
            r.first_discrepancy = std::string("exception: ") + e.what();
        }
        checks_.push_back(std::move(r));
    }

    void skip(const std::string& id, const std::string& ref) {
        checks_.push_back(CheckResult{id, ref, CheckStatus::Skipped, {}});
    }

    std::vector<CheckResult> take() {
        std::sort(checks_.begin(), checks_.end(),
                  [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
        return std::move(checks_);
    }

private:
    std::vector<CheckResult> checks_;
};

std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

std::string report_discrepancy(const CoeffReport& rep) {
    if (rep.agree) return {};
    std::ostringstream os;
    os << rep.quantity << ": route " << rep.discrepancy_route;
    if (rep.discrepancy) os << " differs at rho^" << *rep.discrepancy;
    return os.str();
}

std::string series_discrepancy(const EvenSeries& got, const EvenSeries& want, const std::string& what) {
    if (auto d = first_difference(got, want))
        return what + " differs at rho^" + std::to_string(*d) + ": " + got[*d].str() + " vs " + want[*d].str();
    return {};
}

RE S(const char* s) { return RE::sym(s); }
RE R(long a, long b = 1) { return RE(Q(a) / Q(b)); }

// ---------------------------------------------------------------- gjms

void gjms_suite(SuiteBuilder& b) {
    for (int N = 1; N <= 8; ++N)
        b.run("inversion N=" + std::to_string(N), "M/P inversion formulas",
              [N] { return expect(verify_inversion(N), "substitution does not return the generator"); });
    for (int N = 1; N <= 7; ++N)
        b.run("bracket identity size " + std::to_string(N), "bracket-sum identity for m_I and n_I", [N] {
            for (auto& I : compositions(N))
                if (!bracket_identity_check(I)) return "fails at " + I.str();
            return std::string();
        });
    for (int N = 1; N <= 8; ++N)
        b.run("m coefficient reversal size " + std::to_string(N), "m_I is invariant under reversal", [N] {
            for (auto& I : compositions(N))
                if (m_coeff(I.reversed()) != m_coeff(I)) return "fails at " + I.str();
            return std::string();
        });
    for (int N = 1; N <= 6; ++N)
        b.run("sphere factorization N=" + std::to_string(N), "GJMS factorization on the round sphere",
              [N] { return expect(sphere_factorization(N), "sphere image does not factor"); });
}

// ---------------------------------------------------------------- models

std::vector<ModelGeometry> suite_catalog(std::uint64_t seed, int count, int nmax) {
    std::vector<ModelGeometry> out = {
        ModelGeometry::einstein(S("n"), S("c")),
        ModelGeometry::sphere(4),
        ModelGeometry::sphere(7),
        ModelGeometry::hyperbolic(6),
        ModelGeometry::product(S("p"), S("q"), S("lambda")),
        ModelGeometry::product(R(3), R(5), R(1, 4)),
        ModelGeometry::conf_flat({Q(2), Q(0), Q(0)}),
    };
    Rng g(seed);
    for (int i = 0; i < count; ++i) out.push_back(random_conf_flat(g, 3, nmax));
    return out;
}

void models_suite(SuiteBuilder& b, std::uint64_t seed) {
    for (auto& m : suite_catalog(seed, 5, 8)) {
        const std::string name = m.name();
        b.run("volume invariants " + name, "v_2, v_4, v_6 in terms of J, |P|^2, tr P^3", [m] {
            auto inv = volume_invariants(m);
            return expect(inv.agree(), "closed formulas differ from the volume series");
        });
        b.run("trace identity " + name, "trace of the normal equation", [m] {
            return expect(trace_identity_check(m, 6), "trace identity fails");
        });
        b.run("scalar curvature at r=0 " + name, "scal = 2(n-1)J", [m] {
            RE got = scal_gr_series(m, 0)[0];
            RE want = R(2) * (m.n() - R(1)) * volume_invariants(m).J;
            return expect(got == want, got.str() + " vs " + want.str());
        });
        if (m.is_einstein_family())
            b.run("holographic E " + name, "E(r) for Einstein metrics",
                  [m] { return expect(hol_ein_check(m, 6), "E(r) differs from the Einstein closed form"); });
    }
    b.run("v einstein n=4 c=1/4", "v(r) = (1 - c rho)^n for Einstein metrics", [] {
        auto v = volume_series(ModelGeometry::einstein(R(4), R(1, 4)), 4).v;
        return series_discrepancy(v, binomial_power_series(R(1, 4), R(4), 4), "v");
    });
    b.run("v product p=3 q=3 lambda=1/4", "v(r) on S^p x H^q", [] {
        auto v = volume_series(ModelGeometry::product(R(3), R(3), R(1, 4)), 6).v;
        auto want = binomial_power_series(R(1, 4), R(3), 6) * binomial_power_series(R(-1, 4), R(3), 6);
        return series_discrepancy(v, want, "v");
    });
}

// ---------------------------------------------------------------- heat

void heat_suite(SuiteBuilder& b, std::uint64_t seed) {
    auto cat = suite_catalog(seed, 5, 7);
    for (auto& m : cat) {
        const std::string name = m.name();
        b.run("a0 routes " + name, "a_0(r) from the volume density",
              [m] { return report_discrepancy(a0_series(m, 5)); });
        b.run("a2 routes " + name, "a_2(r) = (scal/6 + E) v", [m] { return report_discrepancy(a2_series(m, 6)); });
        b.run("lambda-omega ladder " + name, "Lambda_{2k-2} = k(n-4k)v_{2k}/3 and the omega polynomials", [m] {
            auto lo = lambda_omega_coeffs(m, 6);
            std::string d = report_discrepancy(lo.lambda);
            return d.empty() ? report_discrepancy(lo.omega) : d;
        });
        if (m.conformally_flat() && m.kind() != ModelGeometry::Kind::ConfFlatDiagonal)
            b.run("q from heat coefficients " + name, "Q_2 and Q_4 from a_2, a_4 and Lambda_2",
                  [m] { return expect(q_a4_check(m), "Q relation fails"); });
    }
    for (auto& m : {ModelGeometry::einstein(S("n"), S("c")), ModelGeometry::sphere(7), ModelGeometry::hyperbolic(6),
                    ModelGeometry::product(R(3), R(5), R(1, 4))})
        b.run("a4 routes " + m.name(), "Gilkey a_4 along g(r)", [m] { return report_discrepancy(a4_series_model(m, 4)); });
    b.run("a4 routes einstein with Weyl term", "Gilkey a_4 with a Weyl term",
          [] { return report_discrepancy(a4_series_model(ModelGeometry::einstein(S("n"), S("c"), S("W2")), 3)); });
    b.run("a4 sphere:4 critical value", "360 a_4(S^4) = -24", [] {
        auto s4 = a4_series_model(ModelGeometry::sphere(4), 3);
        RE v = s4.route("gilkey")[0];
        return expect(s4.agree && R(360) * v == R(-24), "360 a_4 = " + (R(360) * v).str());
    });
    b.run("a22 identities", "a_(2,2) on products and the rel-inv relations", [] {
        auto r = a22_check();
        if (!r.product_identity) return std::string("product display");
        if (!r.einstein_specialization) return std::string("Einstein specialization");
        if (!r.rel_inv_lambda2) return std::string("rel-inv Lambda_2");
        if (!r.rel_inv_v4) return std::string("rel-inv v_4");
        return expect(r.rel_inv_q4, "rel-inv Q_4");
    });
    for (auto& m : {ModelGeometry::einstein(S("n"), S("c")), ModelGeometry::product(S("p"), S("q"), S("lambda")),
                    ModelGeometry::product(R(4), R(4), S("lambda"))})
        b.run("a42 " + m.name(), "a_(4,2) on conformally flat models",
              [m] { return report_discrepancy(a42_confflat(m)); });
    for (std::size_t i = 7; i < cat.size(); ++i) {
        auto m = cat[i];
        b.run("a42 " + m.name(), "a_(4,2) on conformally flat models",
              [m] { return report_discrepancy(a42_confflat(m)); });
    }
    for (int n = 3; n <= 12; ++n) {
        b.run("a6 routes sphere:" + std::to_string(n), "four routes to a_6",
              [n] { return report_discrepancy(a6_multiroute(ModelGeometry::sphere(n))); });
        b.run("a6 routes hyperbolic:" + std::to_string(n), "four routes to a_6",
              [n] { return report_discrepancy(a6_multiroute(ModelGeometry::hyperbolic(n))); });
    }
    for (int p = 3; p <= 9; ++p)
        for (int q = 3; p + q <= 12; ++q) {
            auto m = ModelGeometry::product(R(p), R(q), R(1, 4));
            b.run("a6 routes " + m.name(), "four routes to a_6", [m] { return report_discrepancy(a6_multiroute(m)); });
        }
    b.run("q einstein low orders", "Q_2 = 2nc and Q_4 = 2nc^2(n-2)(n+2)", [] {
        RE n = S("n"), c = S("c");
        if (q_einstein(n, c, 1) != R(2) * n * c) return std::string("Q_2");
        return expect(q_einstein(n, c, 2) == R(2) * n * c * c * (n - R(2)) * (n + R(2)), "Q_4");
    });
    for (int n : {4, 6, 8, 10})
        b.run("q critical n=" + std::to_string(n), "Q_n = (n-1)! (4c)^(n/2)", [n] {
            Q fact(1);
            for (int i = 2; i < n; ++i) fact *= i;
            RE c = S("c");
            RE got = q_einstein(R(n), c, n / 2);
            RE want = RE(fact) * (R(4) * c).pow(n / 2);
            return expect(got == want, got.str() + " vs " + want.str());
        });
    b.run("holographic q N=2", "holographic formula for Q_4",
          [] { return expect(holographic_q_check(S("n"), S("c"), 2), "symbolic N=2"); });
    for (int n : {8, 10, 12})
        b.run("holographic q N=3 n=" + std::to_string(n), "holographic formula for Q_6",
              [n] { return expect(holographic_q_check(R(n), S("c"), 3), "N=3"); });
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; 2 * j + 2 * k <= 8; ++k)
            b.run("scaling weight j=" + std::to_string(j) + " k=" + std::to_string(k), "a_(2j,2k) has weight 2j+2k",
                  [j, k] { return expect(scaling_weight_check(j, k), "wrong weight"); });
    for (auto kind : {PvKind::PV2, PvKind::PV4, PvKind::PV6, PvKind::FDV4, PvKind::FDV6})
        b.run("pv rescaling " + pv_kind_name(kind), "Polyakov-type rescaling identity", [kind] {
            auto r = pv_rescaling(kind, S("phi"));
            return expect(r.ok, r.lhs.str() + " vs " + r.rhs.str());
        });
}

// ---------------------------------------------------------------- sphere

void sphere_suite(SuiteBuilder& b) {
    for (int n = 2; n <= 12; ++n)
        b.run("laplace beta n=" + std::to_string(n), "beta route against the closed Laplacian coefficients", [n] {
            auto t = laplace_sphere_beta(n);
            for (int k = 0; k < static_cast<int>(t.coeffs.size()) && k <= 3; ++k) {
                Q closed = laplace_closed_form(k, R(n)).constant_value();
                if (t.coeffs[static_cast<std::size_t>(k)] != closed)
                    return "a_" + std::to_string(2 * k) + ": " + t.coeffs[static_cast<std::size_t>(k)].get_str() +
                           " vs " + closed.get_str();
            }
            return std::string();
        });
    const std::pair<int, Q> critical[] = {{2, Q(1) / 3}, {4, Q(-1) / 15}, {6, Q(5) / 63}};
    for (auto& [n, want] : critical)
        b.run("conformal critical n=" + std::to_string(n), "critical conformal Laplacian coefficient", [n = n, want = want] {
            Q got = conformal_sphere_coeffs(n, n / 2).coeffs[static_cast<std::size_t>(n / 2)];
            return expect(got == want, got.get_str() + " vs " + want.get_str());
        });
    for (int n = 2; n <= 12; ++n)
        b.run("conformal shift n=" + std::to_string(n), "conformal coefficients by shift, sphere and hyperbolic", [n] {
            auto s = conformal_sphere_coeffs(n, 3), h = conformal_sphere_coeffs(n, 3, SpaceForm::Hyperbolic);
            for (int k = 0; k <= 3; ++k) {
                Q closed = conformal_closed_form(k, R(n)).constant_value();
                Q sign = k % 2 ? Q(-1) : Q(1);
                if (s.coeffs[static_cast<std::size_t>(k)] != closed) return "sphere a_" + std::to_string(2 * k);
                if (h.coeffs[static_cast<std::size_t>(k)] != sign * closed) return "hyperbolic a_" + std::to_string(2 * k);
            }
            return std::string();
        });
    const Q euler[] = {Q(1) / 6, Q(-1) / 180, Q(1) / 1512};
    const Q av[] = {Q(-2) / 3, Q(-8) / 45, Q(-16) / 63};
    for (int m = 1; m <= 3; ++m) {
        int n = 2 * m;
        b.run("euler n=" + std::to_string(n), "integrated critical coefficient is a multiple of chi = 2", [n, m, &euler] {
            if (!euler_check(n)) return std::string("euler_check");
            ExactScalar got = euler_integral(n);
            return expect(got == ExactScalar(euler[m - 1] * 2), got.str());
        });
        b.run("a-v relation n=" + std::to_string(n), "critical a_n against v_n on the sphere", [n, m, &av] {
            Q v = volume_series(ModelGeometry::sphere(n), m).v[m].constant_value();
            Q a = conformal_sphere_coeffs(n, m).coeffs[static_cast<std::size_t>(m)];
            return expect(a == av[m - 1] * v, a.get_str() + " vs " + Q(av[m - 1] * v).get_str());
        });
    }
    b.run("s2 bernoulli", "S^2 coefficients from Bernoulli numbers", [] {
        auto s = s2_bernoulli_coeffs(3);
        for (int k = 0; k <= 3; ++k)
            if (s[static_cast<std::size_t>(k)] != conformal_closed_form(k, R(2)).constant_value())
                return "a_" + std::to_string(2 * k);
        return std::string();
    });
}

// ---------------------------------------------------------------- hessians

std::vector<RE> sphere_tail(int n, const RE& c) {
    auto s = sphere_spectrum(n, c, 6);
    s.erase(s.begin());
    return s;
}

std::vector<RE> negative_samples(int n, const RE& c) {
    std::vector<RE> s;
    for (int j = 1; j <= 6; ++j) s.push_back(-c * R(j * (j + n - 1)));
    return s;
}

std::string mismatch(const std::string& where, Extremum got, Extremum want) {
    return where + ": " + extremum_name(got) + " instead of " + extremum_name(want);
}

// Strict extremum for all mu beyond the first eigenvalue; on the sphere the
// conformal Killing directions are the only degeneracy.
std::string expect_strict(const HessianForm& f, int n, int sign, Extremum want) {
    const RE c = S("c");
    RE lower = sign > 0 ? R(4 * n) * c : R(0);
    auto k = classify_extremum_interval(f, lower, sign).kind;
    if (k != want) return mismatch("interval", k, want);
    if (sign > 0) {
        Classification s = classify_extremum(f, sphere_tail(n, c), 1);
        if (s.kind != Extremum::DegenerateAlongConformalKilling || s.semidefinite != want)
            return "sphere spectrum: " + s.str();
        auto beyond = sphere_tail(n, c);
        beyond.erase(beyond.begin());
        k = classify_extremum(f, beyond, 1).kind;
        if (k != want) return mismatch("mu_2..mu_6", k, want);
    } else {
        k = classify_extremum(f, negative_samples(n, c), -1).kind;
        if (k != want) return mismatch("negative samples", k, want);
    }
    return {};
}

std::string both_regimes(const HessianForm& f, int n, const RE& pos_scale, Extremum pos, Extremum neg) {
    std::string d = expect_strict(f.scaled(pos_scale), n, 1, pos);
    if (!d.empty()) return "c > 0, " + d;
    d = expect_strict(f, n, -1, neg);
    return d.empty() ? d : "c < 0, " + d;
}

void hessians_suite(SuiteBuilder& b) {
    const RE c = S("c");
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; 2 * k < n; ++k)
            b.run("extremal volume coefficient n=" + std::to_string(n) + " k=" + std::to_string(k),
                  "v_2k extremal at Einstein metrics", [n, k] {
                      auto f = hessian_form(HessianKind::F2k, R(n), k);
                      return both_regimes(f, n, R(k % 2 ? -1 : 1), Extremum::LocalMin, Extremum::LocalMax);
                  });
    for (int n = 4; n <= 12; n += 2)
        b.run("renormalized volume n=" + std::to_string(n), "renormalized volume extremal at Einstein metrics", [n] {
            auto f = hessian_form(HessianKind::RV, R(n));
            return both_regimes(f, n, R((n / 2) % 2 ? -1 : 1), Extremum::LocalMin, Extremum::LocalMax);
        });
    for (int n = 4; n <= 12; n += 2)
        b.run("critical heat coefficient n=" + std::to_string(n), "critical w coefficient extremal", [n, c] {
            auto f = hessian_form(HessianKind::Wcrit, R(n));
            auto pos = f.scaled(R((n / 2 - 1) % 2 ? -1 : 1));
            auto k = classify_extremum_interval(pos, R(4 * n) * c, 1).kind;
            if (k != Extremum::LocalMax) return mismatch("c > 0 interval", k, Extremum::LocalMax);
            Classification s = classify_extremum(pos, sphere_spectrum(n, c, 6), 1);
            if (s.kind != Extremum::DegenerateAlongConformalKilling || s.semidefinite != Extremum::LocalMax)
                return "sphere spectrum: " + s.str();
            k = classify_extremum_interval(f, R(0), -1).kind;
            return k == Extremum::LocalMin ? std::string() : mismatch("c < 0 interval", k, Extremum::LocalMin);
        });
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; k <= n - 2; ++k)
            b.run("renormalized volume coefficient n=" + std::to_string(n) + " k=" + std::to_string(k),
                  "w_2k extremal below the critical order", [n, k, c] {
                      auto f = hessian_form(HessianKind::Wsub, R(n), k);
                      RE sgn = R(k % 2 ? -1 : 1);
                      if (2 * k < n - 2) return expect_strict(f.scaled(sgn), n, 1, Extremum::LocalMax);
                      if (2 * k == n - 2) {
                          auto kind = classify_extremum_interval(f.scaled(sgn), R(4 * n) * c, 1).kind;
                          return kind == Extremum::LocalMax ? std::string()
                                                            : mismatch("interval", kind, Extremum::LocalMax);
                      }
                      return expect_strict(f, n, -1, Extremum::LocalMin);
                  });
    b.run("det2 sign pattern matches local maximum", "determinant in dimension 2", [] {
        auto f = hessian_form(HessianKind::DET2, R(2));
        std::string d = expect_strict(f, 2, 1, Extremum::LocalMax);
        return d.empty() ? expect_strict(f, 2, -1, Extremum::LocalMax) : d;
    });
    b.run("det4 sign pattern matches local minimum", "determinant in dimension 4, positive curvature",
          [] { return expect_strict(hessian_form(HessianKind::DET4, R(4)), 4, 1, Extremum::LocalMin); });
    b.run("det4 indefinite at negative curvature", "determinant in dimension 4, negative curvature", [c] {
        auto f = hessian_form(HessianKind::DET4, R(4));
        auto k = classify_extremum_interval(f, R(0), -1).kind;
        if (k != Extremum::Indefinite) return mismatch("interval", k, Extremum::Indefinite);
        k = classify_extremum(f, negative_samples(4, c), -1).kind;
        return k == Extremum::Indefinite ? std::string() : mismatch("samples", k, Extremum::Indefinite);
    });
    b.run("det6 sign pattern matches local maximum", "determinant in dimension 6", [] {
        auto f = hessian_form(HessianKind::DET6, R(6));
        std::string d = expect_strict(f, 6, 1, Extremum::LocalMax);
        return d.empty() ? expect_strict(f, 6, -1, Extremum::LocalMax) : d;
    });
    b.run("a42 sign pattern matches local maximum", "a_(4,2) in dimension 6", [c] {
        auto f = hessian_form(HessianKind::A42, R(6));
        auto k = classify_extremum_interval(f, R(24) * c, 1).kind;
        if (k != Extremum::LocalMax) return mismatch("c > 0 interval", k, Extremum::LocalMax);
        k = classify_extremum_interval(f, R(0), -1).kind;
        if (k != Extremum::LocalMax) return mismatch("c < 0 interval", k, Extremum::LocalMax);
        Classification s = classify_extremum(f, sphere_spectrum(6, c, 6), 1);
        return expect(s.str() == "DegenerateAlongConformalKilling(LocalMax)", "sphere spectrum: " + s.str());
    });
    b.run("volume variation einstein symbolic", "second variation of v(r) and its generating function", [] {
        auto r = rvc_model_variation(ModelGeometry::einstein(S("n"), S("c")), S("mu"), 6);
        if (!r.scaling) return std::string("rescaling");
        if (!r.log_v_var) return std::string("log v variation");
        if (!r.second_gf) return std::string("second generating function");
        return expect(r.tilde_f, "tilde F");
    });
    for (int n = 3; n <= 8; ++n)
        b.run("volume variation sphere n=" + std::to_string(n), "sphere kappa_0 series", [n] {
            auto r = rvc_model_variation(ModelGeometry::sphere(n), S("mu"), 6);
            return expect(r.kappa0 && r.ok(), "variation identities fail");
        });
}

// ---------------------------------------------------------------- jets

void jets_suite(SuiteBuilder& b, const SuiteOptions& opt) {
    const int n = opt.n, K = opt.order;
    const std::uint64_t seed = opt.seed;
    // Each check draws from its own stream so the ids are independent.
    auto rng = [seed](std::uint64_t salt) { return Rng(seed * 1000003ULL + salt); };

    b.run("normal-der", "first normal derivatives of g in normal coordinates", [&, n] {
        Rng g = rng(1);
        for (int t = 0; t < 5; ++t) {
            QTensor r0 = random_curvature(g, n);
            JetMetric m = normal_jets_from_curvature(r0);
            if (tensor_at_origin(curvature_package(m).R).c != r0.c) return std::string("curvature round trip");
            if (!normal_der_check(m)) return "trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("lemma fund", "two variational identities and their sum", [&, n] {
        Rng g = rng(2);
        for (int t = 0; t < 3; ++t) {
            JetMetric m = normal_jets_from_curvature(random_curvature(g, n), 2);
            auto r = lemma_fund_check(m, random_symmetric_jets(g, n, 2, 0, 2, 3));
            if (!r.gen_id_1) return "first identity, trial " + std::to_string(t);
            if (!r.gen_id_2) return "second identity, trial " + std::to_string(t);
            if (!r.sum_1) return "sum, trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("lemma sum-2", "second sum identity for arbitrary gdot", [&, n] {
        Rng g = rng(3);
        for (int t = 0; t < 3; ++t) {
            JetMetric m = normal_jets_from_curvature(random_curvature(g, n), 2);
            if (!sum2_check(m, random_symmetric_jets(g, n, 2, 0, 2, 3))) return "trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("pre-d-div", "Laplacian of tr gdot plus double divergence against the Gaussian average", [&, n] {
        Rng g = rng(4);
        for (int t = 0; t < 3; ++t) {
            JetMatrix gdot = random_symmetric_jets(g, n, 2, 0, 2, 3);
            if (!pre_d_div_check(normal_jets_from_curvature(random_curvature(g, n), 2), gdot))
                return "normal coordinates, trial " + std::to_string(t);
            if (!pre_d_div_check(perturbed_metric(g, n, 2, 1, 2), gdot))
                return "general coordinates, trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("gaussian moments", "quartic Gaussian moments and Wick pairings", [&] {
        if (!(gaussian_moment({2, 2}) == ExactScalar(Q(1) / 4))) return std::string("<xi_1^2 xi_2^2>");
        if (!(gaussian_moment({4}) == ExactScalar(Q(3) / 4))) return std::string("<xi_1^4>");
        Rng g = rng(5);
        std::vector<std::vector<Q>> half(3, std::vector<Q>(3));
        for (std::size_t i = 0; i < 3; ++i) half[i][i] = Q(1) / 2;
        for (int t = 0; t < 20; ++t) {
            std::vector<int> a, idx;
            for (int i = 0; i < 3; ++i) a.push_back(static_cast<int>(g.integer(0, 4)));
            for (int s = 0; s < 3; ++s)
                for (int e = 0; e < a[static_cast<std::size_t>(s)]; ++e) idx.push_back(s);
            if (wick_expectation(idx, half) != gaussian_moment(a).value) return "moment trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("dpb", "double Poisson bracket of reciprocal symbols", [&, n] {
        Rng g = rng(6);
        SymbolVars v(n);
        auto xi = [&](int i) { return Poly::var(v.xi[static_cast<std::size_t>(i)]); };
        auto x = [&](int i) { return Poly::var(v.x[static_cast<std::size_t>(i)]); };
        for (int t = 0; t < 3; ++t) {
            Poly G;
            for (int i = 0; i < n; ++i) G += xi(i) * xi(i);
            G += Poly(g.nonzero_rational()) * x(0) * x(1) * xi(0) * xi(1);
            Poly H;
            for (int s = 0; s < 3; ++s) {
                Poly m(g.rational());
                for (int d = 0; d < 3; ++d) {
                    int k = static_cast<int>(g.integer(0, n - 1));
                    m = m * (g.integer(0, 1) ? x(k) : xi(k));
                }
                H += m;
            }
            if (!dpb_check(G, H, v)) return "trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("fg conf-flat", "Poincare metric of a conformally flat metric to rho^3", [&, n] {
        Rng g = rng(7);
        for (int t = 0; t < 2; ++t) {
            JetMetric m = JetMetric::conformal(random_phi(g, n, 7, 1, 3));
            auto r = fg_expand(m, 3, FgFamily::ConformallyFlat);
            if (r.achieved != 3) return "achieved rho^" + std::to_string(r.achieved) + ": " + r.note;
            if (!r.residual_zero) return std::string("residual");
            if (!fg_matches_family(r, conformally_flat_family(m))) return std::string("closed form");
        }
        return std::string();
    });
    b.run("fg einstein", "Poincare metric of an Einstein metric is (1 - c rho)^2 g", [&, n] {
        Rng g = rng(8);
        Q c = g.nonzero_rational();
        JetMetric m = JetMetric::constant_curvature(n, 8, c);
        auto r = fg_expand(m, 3, FgFamily::Einstein);
        if (r.achieved != 3) return "achieved rho^" + std::to_string(r.achieved) + ": " + r.note;
        if (!r.residual_zero) return std::string("residual");
        if (!mat_agrees(r.h[1], Q(-2) * c * m.g)) return std::string("h_1");
        if (!mat_agrees(r.h[2], c * c * m.g)) return std::string("h_2");
        for (auto& e : r.h[3].a)
            if (!e.is_zero()) return std::string("h_3");
        return std::string();
    });
    b.run("fg general h1", "first Poincare coefficient is minus the Schouten tensor", [&, n] {
        Rng g = rng(9);
        JetMetric m = perturbed_metric(g, n, 4, 1, 2);
        auto r = fg_expand(m, 2);
        auto pk = curvature_package(m);
        JetMatrix P;
        P.n = n;
        P.a = pk.P.c;
        if (!mat_agrees(r.h[1], Q(-1) * P)) return std::string("h_1 != -P");
        if (!r.residual_zero) return std::string("residual");
        if (n == 4 && !r.obstructed) return std::string("obstruction at rho^2 not reported");
        return std::string();
    });
    b.run("d-div", "rho-derivative of the volume density as a double divergence", [&, n, K] {
        Rng g = rng(10);
        int order = K + 1;
        auto r = d_div_check(JetMetric::conformal(random_phi(g, n, 2 * order + 4, 1, 3)), order);
        if (r.achieved != order) return "achieved rho^" + std::to_string(r.achieved);
        if (!r.d_div) return std::string("double divergence");
        return expect(r.eval_normal, "evaluation in normal form");
    });
    b.run("theorem-b conf-flat", "averaged double bracket against the Laplacian of tr(h^-1 h_rho)", [&, n, K] {
        Rng g = rng(11);
        for (int t = 0; t < 2; ++t) {
            auto r = theorem_b_check(JetMetric::conformal(random_phi(g, n, 2 * K + 4, 2, 2)), K);
            if (r.achieved != K) return "achieved rho^" + std::to_string(r.achieved);
            for (std::size_t k = 0; k < r.lhs.size() && k < r.rhs.size(); ++k)
                if (r.lhs[k] != r.rhs[k])
                    return "rho^" + std::to_string(k) + ": " + r.lhs[k].get_str() + " vs " + r.rhs[k].get_str();
            if (!r.ok()) return std::string("length mismatch");
        }
        return std::string();
    });
    b.run("parametrix a2", "a_2 of a Laplace-type operator from the parametrix", [&, n] {
        Rng g = rng(12);
        for (int t = 0; t < 10; ++t) {
            JetMetric m = normal_jets_from_curvature(random_curvature(g, n));
            Jet eta = random_poly(g, n, 2, 0, 2, 4), bb = random_poly(g, n, 2, 0, 2, 3);
            auto r = parametrix_a2(m, eta, bb);
            if (!r.ok()) return "trial " + std::to_string(t) + ": " + r.parametrix.get_str() + " vs " + r.geometric.get_str();
        }
        return std::string();
    });
    b.run("pr-iden2", "divergence identity for the Schouten tensor", [&, n] {
        Rng g = rng(13);
        for (int t = 0; t < 3; ++t) {
            auto r = pr_iden2_check(JetMetric::conformal(random_phi(g, n, 3, 1, 3)));
            if (!r.ok()) return "trial " + std::to_string(t);
        }
        return std::string();
    });
    b.run("weyl identity n=5", "norm identity for the divergence of the Weyl tensor", [&] {
        Rng g = rng(14);
        for (int t = 0; t < 3; ++t) {
            JetMatrix gm = JetMatrix::identity(5, 4);
            for (int s = 0; s < 3; ++s) {
                int i = static_cast<int>(g.integer(0, 4)), j = static_cast<int>(g.integer(0, 4));
                Jet e = random_poly(g, 5, 4, 2, 4, 2);
                gm(i, j) += e;
                if (i != j) gm(j, i) += e;
            }
            auto r = weyl_identity_check(JetMetric::from_matrix(gm));
            if (!r.ok()) return "trial " + std::to_string(t) + ": " + r.lhs.get_str() + " vs " + r.rhs.get_str();
        }
        return std::string();
    });
}

}  // namespace

ModelGeometry parse_model_spec(const std::string& spec) {
    static const std::regex single("(sphere|hyperbolic):([0-9]+)");
    static const std::regex einstein("einstein:n=([^,]+),c=([^,]+)");
    static const std::regex product("product:p=([^,]+),q=([^,]+),lambda=([^,]+)");
    static const std::regex confflat("confflat:n=([0-9]+),p=\\[([^\\]]*)\\]");
    std::smatch m;
    try {
        if (std::regex_match(spec, m, single)) {
            int n = parse_int(m[2], "n");
            if (n < 2) throw UsageError("dimension must be at least 2");
            return m[1] == "sphere" ? ModelGeometry::sphere(n) : ModelGeometry::hyperbolic(n);
        }
        if (std::regex_match(spec, m, einstein))
            return ModelGeometry::einstein(parse_value(m[1], true, "n"), parse_value(m[2], false, "c"));
        if (std::regex_match(spec, m, product))
            return ModelGeometry::product(parse_value(m[1], true, "p"), parse_value(m[2], true, "q"),
                                          parse_value(m[3], false, "lambda"));
        if (std::regex_match(spec, m, confflat)) {
            int n = parse_int(m[1], "n");
            std::vector<Q> eig;
            std::stringstream ss(m[2].str());
            std::string item;
            while (std::getline(ss, item, ',')) {
                item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
                try {
                    eig.push_back(parse_rational(item));
                } catch (const std::exception&) {
                    throw UsageError("bad rational in p: " + item);
                }
            }
            if (static_cast<int>(eig.size()) != n)
                throw UsageError("confflat needs exactly n Schouten eigenvalues");
            return ModelGeometry::conf_flat(eig);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("invalid model '" + spec + "': " + e.what());
    }
    throw UsageError("cannot parse model spec '" + spec + "'");
}

Tables compute_tables(const std::string& model_spec, int order, std::uint64_t seed) {
    if (order < 0) throw UsageError("order must be nonnegative");
    ModelGeometry m = parse_model_spec(model_spec);
    Tables t;
    t.model = model_spec;
    t.order = order;
    t.seed = seed;
    auto vs = volume_series(m, order);
    auto a2 = a2_series(m, order);
    t.tables.emplace_back("v", coeff_strings(vs.v, order));
    t.tables.emplace_back("w", coeff_strings(vs.w, order));
    t.tables.emplace_back("omega", coeff_strings(a2.extra("wdot2"), order));
    t.tables.emplace_back("Lambda", coeff_strings(a2.extra("Lambda"), order));
    t.tables.emplace_back("a_(0,2k)", coeff_strings(a0_series(m, order).route("lemma-top"), order));
    t.tables.emplace_back("a_(2,2k)", coeff_strings(a2.route("a2-diff"), order));
    if (m.kind() == ModelGeometry::Kind::Sphere) {
        int n = static_cast<int>(m.n().constant_value().get_num().get_si());
        auto conf = conformal_sphere_coeffs(n, 3).coeffs;
        for (std::size_t k = 0; k < conf.size(); ++k)
            t.tables.emplace_back("a_" + std::to_string(2 * k), std::vector<std::string>{conf[k].get_str()});
    }
    return t;
}

std::string tables_json(const Tables& t) {
    Json j;
    j["model"] = t.model;
    j["order"] = t.order;
    Json tabs = Json::object();
    for (auto& [name, vals] : t.tables) tabs[name] = vals;
    j["tables"] = tabs;
    j["meta"] = {{"version", kHolokernelVersion}, {"seed", t.seed}};
    return j.dump(2) + "\n";
}

std::string tables_csv(const Tables& t) {
    std::ostringstream os;
    os << "table,k,value\n";
    for (auto& [name, vals] : t.tables)
        for (std::size_t k = 0; k < vals.size(); ++k) {
            std::string v = vals[k];
            bool quote = v.find_first_of(",\"") != std::string::npos;
            if (quote) {
                std::string q = "\"";
                for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                v = q + "\"";
            }
            std::string label = name.find(',') != std::string::npos ? "\"" + name + "\"" : name;
            os << label << "," << k << "," << v << "\n";
        }
    return os.str();
}

const std::vector<std::string>& series_expressions() {
    static const std::vector<std::string> e = {"v", "w", "E", "scal_gr", "a0", "a2", "L", "vdot_over_v"};
    return e;
}

std::string series_text(const std::string& expr, const std::string& model_spec, int order) {
    const auto& ex = series_expressions();
    if (std::find(ex.begin(), ex.end(), expr) == ex.end()) throw UsageError("unknown expression '" + expr + "'");
    if (order < 0) throw UsageError("order must be nonnegative");
    ModelGeometry m = parse_model_spec(model_spec);
    EvenSeries s;
    if (expr == "v") s = volume_series(m, order).v;
    else if (expr == "w") s = volume_series(m, order).w;
    else if (expr == "E") s = E_series(m, order);
    else if (expr == "scal_gr") s = scal_gr_series(m, order);
    else if (expr == "a0") s = a0_series(m, order).route("lemma-top");
    else if (expr == "a2") s = a2_series(m, order).route("a2-diff");
    else if (expr == "L") {
        // Trace of L(r)/rho over the Schouten eigenspaces.
        s = EvenSeries(order);
        for (auto& d : L_series(m, order)) s = s + d.multiplicity * d.value;
    } else {
        // (dv/dr)/(r v) = 2 v_rho / v.
        auto v = volume_series(m, order + 1).v;
        s = (RE(2) * v.derivative()) / v.truncate(order);
    }
    return series_lines(s, order);
}

bool SuiteReport::passed() const {
    for (auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> s = {"gjms", "models", "heat", "sphere", "hessians", "jets"};
    return s;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown suite '" + name + "'");
    if (opt.n < 3 || opt.n > 6) throw UsageError("--n must lie in 3..6");
    if (opt.order < 1 || opt.order > 3) throw UsageError("--order must lie in 1..3");
    auto start = std::chrono::steady_clock::now();
    SuiteBuilder b;
    if (name == "gjms") gjms_suite(b);
    else if (name == "models") models_suite(b, opt.seed);
    else if (name == "heat") heat_suite(b, opt.seed);
    else if (name == "sphere") sphere_suite(b);
    else if (name == "hessians") hessians_suite(b);
    else jets_suite(b, opt);
    SuiteReport r;
    r.suite = name;
    r.checks = b.take();
    r.seed = opt.seed;
    if (opt.timing)
        r.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                             .count();
    return r;
}

std::string report_json(const std::vector<SuiteReport>& reports) {
    auto one = [](const SuiteReport& r) {
        Json checks = Json::array();
        for (auto& c : r.checks) {
            Json j;
            j["id"] = c.id;
            j["paper_ref"] = c.paper_ref;
            j["status"] = status_name(c.status);
            if (c.status == CheckStatus::Fail) j["first_discrepancy"] = c.first_discrepancy;
            checks.push_back(j);
        }
        Json j;
        j["suite"] = r.suite;
        j["status"] = r.passed() ? "pass" : "fail";
        j["checks"] = checks;
        j["wall_time_ms"] = r.wall_time_ms;
        j["seed"] = r.seed;
        return j;
    };
    if (reports.size() == 1) return one(reports[0]).dump(2) + "\n";
    Json all = Json::array();
    for (auto& r : reports) all.push_back(one(r));
    return all.dump(2) + "\n";
}

}  // namespace holo
