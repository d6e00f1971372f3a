#pragma once

// Seeded generators for the verification suites. Coefficients are small
// rationals (numerators in [-5,5], denominators in [1,4]).

#include "holokernel/jetlab.hpp"
#include "holokernel/models.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace holo {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    long integer(long lo, long hi);
    Q rational();
    Q nonzero_rational();

private:
    std::mt19937_64 eng_;
};

// Sum of `terms` monomials with degrees in [min_deg, max_deg].
Jet random_poly(Rng& g, int n, int cap, int min_deg, int max_deg, int terms);
// Nonzero, vanishing at the origin when min_deg >= 1.
Jet random_phi(Rng& g, int n, int cap, int min_deg, int max_deg);
std::vector<std::vector<Q>> random_symmetric(Rng& g, int n);
// Sum of two Kulkarni-Nomizu products: an algebraic curvature tensor.
QTensor random_curvature(Rng& g, int n);
JetMatrix random_symmetric_jets(Rng& g, int n, int cap, int min_deg, int max_deg, int terms);
// delta plus random terms of degree >= min_deg.
JetMetric perturbed_metric(Rng& g, int n, int cap, int min_deg, int terms);
ModelGeometry random_conf_flat(Rng& g, int nmin, int nmax);

}  // namespace holo
