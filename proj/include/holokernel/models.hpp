#pragma once

#include "holokernel/series.hpp"

#include <string>
#include <vector>

namespace holo {

// Schouten eigenvalue with its multiplicity. Every catalog model has
// g(r) = (1 - rho*eig/2)^2 g on the corresponding eigenspace.
struct SchoutenBlock {
    RingElement eigenvalue;
    RingElement multiplicity;
};

class ModelGeometry {
public:
    enum class Kind { Einstein, Sphere, Hyperbolic, Product, ConfFlatDiagonal };

    static ModelGeometry einstein(RingElement n, RingElement c, RingElement weyl_norm2 = RingElement(0));
    static ModelGeometry sphere(int n);
    static ModelGeometry hyperbolic(int n);
    static ModelGeometry product(RingElement p, RingElement q, RingElement lambda);
    static ModelGeometry conf_flat(std::vector<Q> schouten_eigenvalues);

    Kind kind() const { return kind_; }
    const RingElement& n() const { return n_; }
    // Einstein constant c = scal/(4n(n-1)); meaningful for the Einstein family.
    const RingElement& c() const { return c_; }
    const RingElement& p() const { return p_; }
    const RingElement& q() const { return q_; }
    const RingElement& lambda() const { return lambda_; }
    const std::vector<Q>& eigenvalues() const { return eig_; }
    // |W|^2 (zero for everything but a general Einstein entry).
    const RingElement& weyl_norm2() const { return w2_; }
    bool is_einstein_family() const {
        return kind_ == Kind::Einstein || kind_ == Kind::Sphere || kind_ == Kind::Hyperbolic;
    }
    bool conformally_flat() const { return w2_.is_zero(); }

    std::vector<SchoutenBlock> blocks() const;
    std::string name() const;

private:
    Kind kind_ = Kind::Einstein;
    RingElement n_, c_, p_, q_, lambda_, w2_;
    std::vector<Q> eig_;
};

struct VolumeInvariants {
    RingElement J, P_norm2, P_tr3, scal;
    // From the closed formulas in J, |P|^2, tr P^3.
    RingElement v2, v4, v6;
    // Read off volume_series.
    RingElement v2_series, v4_series, v6_series;
    bool agree() const { return v2 == v2_series && v4 == v4_series && v6 == v6_series; }
};

struct VolumeSeries {
    EvenSeries v, w;
};

VolumeSeries volume_series(const ModelGeometry& m, int order);
VolumeInvariants volume_invariants(const ModelGeometry& m);

struct DiagonalEntry {
    EvenSeries value;
    RingElement multiplicity;
};
// Diagonal of g(r)^{-1} in a g-orthonormal Schouten eigenbasis.
std::vector<DiagonalEntry> inverse_metric_series(const ModelGeometry& m, int order);
// Diagonal of g(r) itself.
std::vector<DiagonalEntry> metric_series(const ModelGeometry& m, int order);

// L(r) = v(r) int_0^r s g(s)^{-1} ds per eigendirection, returned as l with L = rho * l.
std::vector<DiagonalEntry> L_series(const ModelGeometry& m, int order);

EvenSeries E_series(const ModelGeometry& m, int order);
EvenSeries scal_gr_series(const ModelGeometry& m, int order);

// tr(g(r)^{-1} g'') = r^{-1} tr(g(r)^{-1} g') + (1/2) tr((g(r)^{-1} g')^2), r-derivatives.
bool trace_identity_check(const ModelGeometry& m, int order);

// Einstein: E(r) against (1 - lambda r^2/4)^{-2} times the potential of P_2
// with lambda = scal/(n(n-1)) = 4c.
bool hol_ein_check(const ModelGeometry& m, int order);

}  // namespace holo
