#include "doctest.h"
#include "catalog.hpp"
#include "holokernel/heat.hpp"
#include "holokernel/sphere.hpp"

using namespace holo;
using testgen::catalog;

namespace {
RingElement S(const char* s) { return RingElement::sym(s); }
RingElement R(long a, long b = 1) { return RingElement(Q(a, b)); }

void require_agree(const CoeffReport& rep) {
    INFO(rep.str());
    CHECK(rep.agree);
}
}  // namespace

TEST_CASE("a0 examples and route agreement") {
    auto s5 = a0_series(ModelGeometry::sphere(5), 4);
    require_agree(s5);
    CHECK(series_equal(s5.route("gaussian"), binomial_power_series(R(1, 4), R(5), 4)));

    RingElement p = S("p"), q = S("q"), l = S("lambda");
    auto pr = a0_series(ModelGeometry::product(p, q, l), 4);
    require_agree(pr);
    CHECK(series_equal(pr.route("lemma-top"), binomial_power_series(l, p, 4) * binomial_power_series(-l, q, 4)));

    auto cf = a0_series(ModelGeometry::conf_flat({Q(2), Q(0), Q(0)}), 3);
    require_agree(cf);
    CHECK(series_equal(cf.route("gaussian"), EvenSeries(std::vector<RingElement>{R(1), R(-1), R(0), R(0)})));

    for (auto& m : catalog()) require_agree(a0_series(m, 5));
}

TEST_CASE("a2 examples") {
    RingElement n = S("n"), c = S("c");
    auto ein = a2_series(ModelGeometry::einstein(n, c), 6);
    require_agree(ein);
    EvenSeries expected = (R(-1, 6) * (n - R(4)) * R(2) * n * c) * binomial_power_series(c, n - R(2), 6);
    CHECK(series_equal(ein.route("a2-E"), expected));

    auto s7 = a2_series(ModelGeometry::sphere(7), 5);
    require_agree(s7);
    CHECK(series_equal(s7.route("a2-diff"), R(-7 * 3, 12) * binomial_power_series(R(1, 4), R(5), 5)));

    // generic first coefficients in terms of v_2, v_4, v_6
    for (auto& m : catalog()) {
        CAPTURE(m.name());
        auto rep = a2_series(m, 2);
        auto v = volume_series(m, 3).v;
        RingElement nn = m.n();
        const EvenSeries& a2 = rep.route("a2-diff");
        CHECK(a2[0] == (nn - R(4)) / R(3) * v[1]);
        CHECK(a2[1] == R(2) * (nn - R(8)) / R(3) * v[2] + v[1] * v[1]);
        CHECK(a2[2] == (nn - R(12)) * v[3] + R(4) * v[1] * v[2] - v[1].pow(3));
    }
}

TEST_CASE("a2 route agreement on the catalog to order 6") {
    for (auto& m : catalog()) require_agree(a2_series(m, 6));
}

TEST_CASE("Lambda and omega ladder") {
    RingElement n = S("n"), c = S("c");
    auto ein = lambda_omega_coeffs(ModelGeometry::einstein(n, c), 6);
    require_agree(ein.lambda);
    require_agree(ein.omega);
    CHECK(ein.omega.route("wdot2")[2] == n * n * c.pow(3) * (R(2) - n));
    CHECK(ein.lambda.route("L-v")[0] == (n - R(4)) / R(3) * (-n * c));

    for (auto& m : catalog()) {
        auto lo = lambda_omega_coeffs(m, 6);
        require_agree(lo.lambda);
        require_agree(lo.omega);
        auto v = volume_series(m, 1).v;
        CHECK(lo.omega.route("wdot2")[1] == v[1] * v[1]);
    }
}

TEST_CASE("a4 examples") {
    auto s4 = a4_series_model(ModelGeometry::sphere(4), 3);
    require_agree(s4);
    CHECK(s4.route("gilkey")[0] == R(-1, 15));
    CHECK(R(360) * s4.route("gilkey")[0] == R(-24));

    RingElement n = S("n"), c = S("c");
    require_agree(a4_series_model(ModelGeometry::einstein(n, c), 4));
    // Weyl term carried by the Gilkey and closed Einstein routes
    auto w = a4_series_model(ModelGeometry::einstein(n, c, S("W2")), 3);
    require_agree(w);
    CHECK(w.routes.size() == 2);

    RingElement p = S("p"), l = S("lambda");
    auto pr = a4_series_model(ModelGeometry::product(p, n - p, l), 2);
    require_agree(pr);

    for (auto& m : {ModelGeometry::sphere(7), ModelGeometry::hyperbolic(6),
                    ModelGeometry::product(R(3), R(5), R(1, 4)),
                    ModelGeometry::conf_flat({Q(1, 2), Q(1, 2), Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)})})
        require_agree(a4_series_model(m, 4));

    CHECK_THROWS(a4_series_model(ModelGeometry::conf_flat({Q(2), Q(0), Q(0)}), 2));
}

TEST_CASE("a22 identity, Einstein specialization and rel-inv") {
    auto r = a22_check();
    CHECK(r.product_identity);
    CHECK(r.einstein_specialization);
    CHECK(r.rel_inv_lambda2);
    CHECK(r.rel_inv_v4);
    CHECK(r.rel_inv_q4);
}

TEST_CASE("a42 on conformally flat models") {
    RingElement n = S("n"), c = S("c");
    auto ein = a42_confflat(ModelGeometry::einstein(n, c));
    require_agree(ein);
    CHECK(R(360) * ein.route("a42-closed")[0] ==
          R(-4) * c.pow(3) * n * (n - R(4)) * (n - R(6)) * (R(5) * n * n - R(18) * n + R(4)));

    RingElement l = S("lambda");
    require_agree(a42_confflat(ModelGeometry::product(S("p"), S("q"), l)));
    require_agree(a42_confflat(ModelGeometry::product(R(4), R(4), l)));

    testgen::Gen g(4242);
    for (int i = 0; i < 6; ++i) {
        auto m = testgen::random_conf_flat(g, 3, 7);
        require_agree(a42_confflat(m));
        if (m.n() == R(4)) CHECK(a42_confflat(m).route("a42-closed")[0] == R(0));
    }
    auto four = a42_confflat(ModelGeometry::conf_flat({Q(1), Q(-2), Q(3, 4), Q(0)}));
    CHECK(four.route("a42-closed")[0] == R(0));
    require_agree(four);
}

TEST_CASE("CL low coefficients on spheres and hyperbolic spaces") {
    RingElement n = S("n");
    auto s = cl_low_coeffs(n, n / R(2), n / R(4), n / R(8), R(0));
    CHECK(s.agree());
    CHECK(s.a2 == conformal_closed_form(1, n));
    CHECK(s.a4 == conformal_closed_form(2, n));
    auto h = cl_low_coeffs(n, -n / R(2), n / R(4), -n / R(8), R(0));
    CHECK(h.agree());
    CHECK(h.a2 == n * (n - R(4)) / R(12));
    CHECK(h.a4 == s.a4);
    CHECK(cl_low_coeffs(n, S("J"), S("P2"), S("P3"), S("W2")).agree());
}

TEST_CASE("a6 four routes") {
    auto s6 = a6_multiroute(ModelGeometry::sphere(6));
    require_agree(s6);
    CHECK(s6.route("branson")[0] == R(5, 63));

    RingElement n = S("n");
    auto e = a6_multiroute(ModelGeometry::einstein(n, R(1, 4)));
    require_agree(e);
    CHECK(e.route("av-6")[0] == conformal_closed_form(3, n));

    auto p33 = a6_multiroute(ModelGeometry::product(R(3), R(3), S("lambda")));
    require_agree(p33);
    CHECK(p33.routes.size() == 4);

    for (int p = 3; p <= 9; ++p)
        for (int q = 3; p + q <= 12; ++q) require_agree(a6_multiroute(ModelGeometry::product(R(p), R(q), R(1, 4))));
    for (int k = 3; k <= 12; ++k) {
        require_agree(a6_multiroute(ModelGeometry::sphere(k)));
        require_agree(a6_multiroute(ModelGeometry::hyperbolic(k)));
    }
    testgen::Gen g(606);
    for (int i = 0; i < 5; ++i) require_agree(a6_multiroute(testgen::random_conf_flat(g)));
    CHECK_THROWS(a6_multiroute(ModelGeometry::einstein(n, S("c"), S("W2"))));
}

TEST_CASE("Q-curvature recursion at Einstein metrics") {
    RingElement n = S("n"), c = S("c");
    CHECK(q_einstein(n, c, 1) == R(2) * n * c);
    CHECK(q_einstein(n, c, 2) == R(2) * n * c * c * (n - R(2)) * (n + R(2)));
    CHECK(q_einstein(R(4), c, 2) == R(96) * c * c);
    for (int k = 4; k <= 10; k += 2) {
        Q fact(factorial(k - 1));
        CHECK(q_einstein(R(k), c, k / 2) == RingElement(fact) * (R(4) * c).pow(k / 2));
    }
    CHECK(q_einstein(R(6), R(1, 4), 3) == R(120));
}

TEST_CASE("holographic formula for Q") {
    RingElement n = S("n"), c = S("c");
    CHECK(holographic_q_check(n, c, 2));
    CHECK(holographic_q_check(R(4), c, 2));
    for (int k : {8, 10, 12}) CHECK(holographic_q_check(R(k), c, 3));
    CHECK(holographic_q_check(n, c, 3));
}

TEST_CASE("Q from heat coefficients") {
    CHECK(q_a4_check(ModelGeometry::einstein(S("n"), S("c"))));
    CHECK(q_a4_check(ModelGeometry::product(S("p"), S("q"), S("lambda"))));
    CHECK(q_a4_check(ModelGeometry::sphere(4)));
    CHECK(q_a4_check(ModelGeometry::sphere(6)));
    testgen::Gen g(77);
    for (int i = 0; i < 5; ++i) CHECK(q_a4_check(testgen::random_conf_flat(g)));
}

TEST_CASE("scaling weights of a_(2j,2k)") {
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; 2 * j + 2 * k <= 8; ++k) {
            CAPTURE(j);
            CAPTURE(k);
            CHECK(scaling_weight_check(j, k));
        }
}

TEST_CASE("Polyakov-type rescaling identities") {
    RingElement phi = S("phi");
    auto pi = RingElement::pi();
    auto pv2 = pv_rescaling(PvKind::PV2, phi);
    CHECK(pv2.ok);
    CHECK(pv2.lhs == R(-2) * pi * phi);
    auto pv4 = pv_rescaling(PvKind::PV4, phi);
    CHECK(pv4.ok);
    CHECK(pv4.lhs == pi * pi * phi);
    auto fd4 = pv_rescaling(PvKind::FDV4, phi);
    CHECK(fd4.ok);
    CHECK(fd4.lhs == R(16, 45) * pi * pi * phi);
    auto fd6 = pv_rescaling(PvKind::FDV6, phi);
    CHECK(fd6.ok);
    CHECK(fd6.lhs == R(-32, 189) * pi.pow(3) * phi);
    CHECK(pv_rescaling_check(PvKind::PV6, phi));
    CHECK(pv_rescaling_check(PvKind::PV6, R(3, 7)));
    CHECK(parse_pv_kind("FDV6") == PvKind::FDV6);
    CHECK_THROWS(parse_pv_kind("PV8"));
}
