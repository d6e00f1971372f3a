#pragma once

#include "holokernel/models.hpp"

#include <string>
#include <vector>

namespace holo {

enum class HessianKind { F2k, RV, Wcrit, Wsub, DET2, DET4, DET6, A42 };

// Second conformal variation at an Einstein metric, diagonal in the
// eigenbasis of -Delta: value(mu) = prefactor * eigen_poly(mu).
struct HessianForm {
    HessianKind kind = HessianKind::F2k;
    RingElement prefactor;           // in n, c, pi
    RingElement eigen_poly;          // polynomial in the symbol "mu" (and c, n)
    std::vector<RingElement> kernel_roots;
    bool excludes_constants = true;  // unit-volume class; false for the full class
    std::string original;            // the form as quoted with Delta = delta d

    RingElement value(const RingElement& mu) const;
    HessianForm scaled(const RingElement& s) const;
    std::string str() const;
};

std::string hessian_kind_name(HessianKind k);
HessianKind parse_hessian_kind(const std::string& s);

// n may be symbolic for F2k; k is used by F2k and Wsub.
HessianForm hessian_form(HessianKind kind, const RingElement& n, int k = 0);

// mu_j = 4c j(j + n - 1), j = 0..jmax.
std::vector<RingElement> sphere_spectrum(int n, const RingElement& c, int jmax);

enum class Extremum { LocalMax, LocalMin, Indefinite, DegenerateAlongConformalKilling };
std::string extremum_name(Extremum e);

struct Classification {
    Extremum kind = Extremum::Indefinite;
    // For DegenerateAlongConformalKilling: the semidefinite direction (LocalMax or LocalMin).
    Extremum semidefinite = Extremum::Indefinite;
    std::string str() const;
};

// Explicit spectrum (values in c). Constants are skipped when the form
// excludes them; zero values at mu = 0 are skipped when 0 is a kernel root
// (rescaling).
Classification classify_extremum(const HessianForm& form, const std::vector<RingElement>& spectrum, int sign_of_c);
// All mu > lower (lower given in c): the Obata regime uses lower = 4nc,
// negative curvature uses lower = 0.
Classification classify_extremum_interval(const HessianForm& form, const RingElement& lower, int sign_of_c);

struct RvcVariationReport {
    bool scaling = false;      // mu = 0 reproduces the rescaling of v(r)
    bool log_v_var = false;
    bool second_gf = false;    // rho-coefficients of second-GF vs second-F2k, k <= min(5, order)
    bool kappa0 = true;        // sphere only
    bool tilde_f = false;      // k <= 4
    bool ok() const { return scaling && log_v_var && second_gf && kappa0 && tilde_f; }
};
RvcVariationReport rvc_model_variation(const ModelGeometry& m, const RingElement& mu, int order);

}  // namespace holo
