#pragma once

#include "holokernel/ring.hpp"

#include <vector>

namespace holo {

enum class SphereOperator { Laplacian, ConformalLaplacian };
enum class CoeffSource { BetaCombinatorics, ClosedForm };
enum class SpaceForm { Sphere, Hyperbolic };

struct SphereCoeffTable {
    int n = 0;
    SphereOperator op = SphereOperator::Laplacian;
    std::vector<Q> coeffs;  // a_0, a_2, ...
    CoeffSource source = CoeffSource::ClosedForm;
};

struct BetaB {
    std::vector<Q> betas;  // beta_{k,n}, k = 0..deg/2
    std::vector<Q> bs;     // b_k on the stated range
};

BetaB beta_b(int n);
// Largest k with 2k in the range where the beta route is stated.
int beta_kmax(int n);

// Laplacian coefficients a_0..a_6 of the unit sphere, symbolic in n.
RingElement laplace_closed_form(int k, const RingElement& n);
// Conformal Laplacian coefficients a_0..a_6 of the unit sphere.
RingElement conformal_closed_form(int k, const RingElement& n);

SphereCoeffTable laplace_sphere_beta(int n);
SphereCoeffTable laplace_sphere_coeffs(int n, int kmax);
// Multiply the heat series by exp(t s) coefficientwise.
std::vector<Q> shift_heat_series(const std::vector<Q>& a, const Q& s);
SphereCoeffTable conformal_sphere_coeffs(int n, int kmax, SpaceForm space = SpaceForm::Sphere);
std::vector<Q> duality(const std::vector<Q>& a);

// Volume of the unit sphere for even n as a pi-typed scalar.
ExactScalar sphere_volume(int n);
// (4 pi)^{-n/2} int_{S^n} a_n dvol for the conformal Laplacian, n in {2,4,6}.
ExactScalar euler_integral(int n);
bool euler_check(int n);

// Bernoulli numbers B_0..B_m (B_1 = -1/2).
std::vector<Q> bernoulli_numbers(int m);
// S^2 coefficients via b_k = (-1)^k (1/k!)(2^{1-2k} - 1) B_{2k}.
std::vector<Q> s2_bernoulli_coeffs(int kmax);

}  // namespace holo
