#include "doctest.h"
#include "gen.hpp"
#include "holokernel/models.hpp"
#include "holokernel/sphere.hpp"

using namespace holo;

namespace {
Q q(long a, long b = 1) {
    Q x(a, b);
    x.canonicalize();
    return x;
}
}  // namespace

TEST_CASE("beta numbers from the product expansion") {
    auto b3 = beta_b(3);
    REQUIRE(b3.betas.size() == 1);
    CHECK(b3.betas[0] == 1);

    auto b4 = beta_b(4);
    REQUIRE(b4.betas.size() == 2);
    CHECK(b4.betas[0] == q(1, 4));
    CHECK(b4.betas[1] == -1);

    // (1/4 - t^2)(9/4 - t^2) = 9/16 - (10/4) t^2 + t^4
    auto b6 = beta_b(6);
    REQUIRE(b6.betas.size() == 3);
    CHECK(b6.betas[0] == q(9, 16));
    CHECK(b6.betas[1] == q(-5, 2));
    CHECK(b6.betas[2] == 1);
}

TEST_CASE("Laplacian coefficients: beta route against closed forms") {
    CHECK(laplace_sphere_coeffs(5, 0).coeffs[0] == 1);
    CHECK(laplace_sphere_coeffs(6, 1).coeffs[1] == 5);
    CHECK(laplace_sphere_beta(4).coeffs.at(1) == 2);
    CHECK(laplace_sphere_beta(5).coeffs.at(1) == q(10, 3));

    auto t7 = laplace_sphere_beta(7);
    REQUIRE(t7.coeffs.size() == 3);
    CHECK(t7.coeffs[2] == q(7 * 6 * 202, 360));

    for (int n = 2; n <= 12; ++n) {
        auto t = laplace_sphere_beta(n);
        CHECK(t.source == CoeffSource::BetaCombinatorics);
        for (int k = 0; k < static_cast<int>(t.coeffs.size()) && k <= 3; ++k) {
            INFO("n=" << n << " k=" << k);
            CHECK(t.coeffs[static_cast<std::size_t>(k)] == laplace_closed_form(k, RingElement(n)).constant_value());
        }
    }
    auto outside = laplace_sphere_coeffs(4, 3);
    CHECK(outside.source == CoeffSource::ClosedForm);
    CHECK(outside.coeffs.size() == 4);
}

TEST_CASE("conformal Laplacian by shift and duality") {
    CHECK(conformal_sphere_coeffs(4, 1).coeffs[1] == 0);
    CHECK(conformal_sphere_coeffs(2, 1).coeffs[1] == q(1, 3));
    CHECK(conformal_sphere_coeffs(4, 2).coeffs[2] == q(-1, 15));
    CHECK(conformal_sphere_coeffs(6, 3).coeffs[3] == q(5, 63));

    for (int n = 2; n <= 12; ++n)
        for (int k = 0; k <= 3; ++k) {
            INFO("n=" << n << " k=" << k);
            Q closed = conformal_closed_form(k, RingElement(n)).constant_value();
            CHECK(conformal_sphere_coeffs(n, 3).coeffs[static_cast<std::size_t>(k)] == closed);
            Q sign = k % 2 ? Q(-1) : Q(1);
            CHECK(conformal_sphere_coeffs(n, 3, SpaceForm::Hyperbolic).coeffs[static_cast<std::size_t>(k)] ==
                  sign * closed);
        }

    // Symbolic: shift the closed Laplacian forms and compare polynomials in n.
    RingElement n = RingElement::sym("n");
    RingElement s = -(n / RingElement(2)) * (n / RingElement(2) - RingElement(1));
    for (int k = 0; k <= 3; ++k) {
        RingElement acc(0);
        for (int j = 0; j <= k; ++j)
            acc = acc + laplace_closed_form(j, n) * s.pow(k - j) / RingElement(Q(factorial(k - j)));
        CHECK(acc == conformal_closed_form(k, n));
    }
}

TEST_CASE("a-v relations in critical dimensions") {
    const Q factors[] = {q(-2, 3), q(-8, 45), q(-16, 63)};
    for (int m = 1; m <= 3; ++m) {
        int n = 2 * m;
        auto vol = volume_series(ModelGeometry::sphere(n), 2 * m);
        Q v = vol.v[m].constant_value();
        CHECK(conformal_sphere_coeffs(n, m).coeffs[static_cast<std::size_t>(m)] == factors[m - 1] * v);
    }
}

TEST_CASE("Euler characteristic integrals") {
    CHECK(sphere_volume(2) == ExactScalar(Q(4), 1));
    CHECK(sphere_volume(4) == ExactScalar(q(8, 3), 2));
    CHECK(sphere_volume(6) == ExactScalar(q(16, 15), 3));
    CHECK(euler_integral(2) == ExactScalar(q(1, 3)));
    for (int n : {2, 4, 6}) CHECK(euler_check(n));
}

TEST_CASE("S^2 Bernoulli route matches the closed forms") {
    auto B = bernoulli_numbers(6);
    CHECK(B[2] == q(1, 6));
    CHECK(B[4] == q(-1, 30));
    CHECK(B[6] == q(1, 42));
    auto a = s2_bernoulli_coeffs(3);
    for (int k = 0; k <= 3; ++k)
        CHECK(a[static_cast<std::size_t>(k)] == laplace_closed_form(k, RingElement(2)).constant_value());
}

TEST_CASE("property: shift round trip and double duality") {
    testgen::Gen g(20261015);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Q> a;
        for (int k = 0; k <= 6; ++k) a.push_back(g.rational());
        Q s = g.rational();
        CHECK(shift_heat_series(shift_heat_series(a, s), -s) == a);
        CHECK(duality(duality(a)) == a);
    }
}

TEST_CASE("a_2k(r) on spheres scale by (1 - rho/4)^(n-2k)") {
    // Zeroth and first rho-coefficients of (1-rho/4)^(n-2k) a_2k(S^n)
    for (int n = 3; n <= 10; ++n) {
        auto vol = volume_series(ModelGeometry::sphere(n), 2);
        auto a = conformal_sphere_coeffs(n, 1).coeffs;
        CHECK(vol.v[0].constant_value() == a[0]);
        CHECK(vol.v[1].constant_value() == q(-n, 4));
        // a_2(0) = (n-4)/3 v_2
        CHECK(a[1] == q(n - 4, 3) * vol.v[1].constant_value());
    }
}
