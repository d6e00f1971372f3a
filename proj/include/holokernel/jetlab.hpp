#pragma once

#include "holokernel/jet.hpp"
#include "holokernel/poly.hpp"

#include <string>
#include <vector>

namespace holo {

// Metric jets g_ij(x) at the origin.
struct JetMetric {
    int n = 0;
    JetMatrix g;

    // Validates symmetry and positive definiteness of g(0) (leading minors).
    static JetMetric from_matrix(JetMatrix g);
    static JetMetric flat(int n, int cap);
    // e^{2 phi} delta with phi(0) = 0.
    static JetMetric conformal(const Jet& phi);
    // (1 + c|x|^2)^{-2} delta: constant curvature 4c, Schouten tensor 2c g.
    static JetMetric constant_curvature(int n, int cap, const Q& c);
    int cap() const { return g.cap(); }
    bool first_derivatives_vanish() const;
    bool identity_at_origin() const;
};

struct CurvaturePackage {
    int n = 0;
    JetMatrix ginv;
    JetTensor Gamma;  // Gamma^k_ij stored at (k, i, j)
    JetTensor R;      // R_ijkl = R_ijk^m g_ml, R(d_i, d_j) d_k = R_ijk^l d_l
    JetTensor Ric, P, W, C;  // P, W, C need n >= 3
    Jet scal, J;
};

JetTensor christoffel(const JetMatrix& g, const JetMatrix& ginv);
CurvaturePackage curvature_package(const JetMetric& g);
// Independent route through Christoffel symbols of the first kind.
JetTensor riemann_koszul(const JetMetric& g);
// (a KN b)_ijkl = a_ik b_jl - a_jk b_il + a_jl b_ik - a_il b_jk.
JetTensor kulkarni_nomizu(const JetTensor& a, const JetTensor& b);
QTensor kulkarni_nomizu(const std::vector<std::vector<Q>>& a, const std::vector<std::vector<Q>>& b);
// (nabla T)_{m i_1 .. i_r} = nabla_m T_{i_1 .. i_r}.
JetTensor covariant_derivative(const JetTensor& t, const JetTensor& Gamma);
JetTensor matrix_tensor(const JetMatrix& m);
// Laplacian g^{ij}(d_i d_j f - Gamma^k_ij d_k f).
Jet laplacian(const Jet& f, const JetMatrix& ginv, const JetTensor& Gamma);
// Divergence g^{ij} nabla_i h_jk of a symmetric form, and of a one-form.
std::vector<Jet> divergence(const JetMatrix& h, const JetMatrix& ginv, const JetTensor& Gamma);
Jet divergence(const std::vector<Jet>& w, const JetMatrix& ginv, const JetTensor& Gamma);

bool riemann_symmetries(const QTensor& r);
bool weyl_trace_free(const QTensor& w, const std::vector<std::vector<Q>>& ginv);
bool cotton_symmetries(const QTensor& c);

JetMetric normal_jets_from_curvature(const QTensor& r0, int cap = 2);
// Requires vanishing first derivatives at the origin.
bool normal_der_check(const JetMetric& g);

struct FundResult {
    bool gen_id_1 = false, gen_id_2 = false, sum_1 = false;
    bool ok() const { return gen_id_1 && gen_id_2 && sum_1; }
};
FundResult lemma_fund_check(const JetMetric& g, const JetMatrix& h);
// Second sum identity in normal coordinates for an arbitrary symmetric gdot.
bool sum2_check(const JetMetric& g, const JetMatrix& gdot);

// Normalized moment of xi^alpha for the weight exp(-|xi|^2).
ExactScalar gaussian_moment(const std::vector<int>& alpha);
// Wick expectation of prod xi_{idx} with covariance sigma.
Q wick_expectation(const std::vector<int>& idx, const std::vector<std::vector<Q>>& sigma);

// Symbols on T*R^n as exact polynomials in x1..xn, xi1..xin, rho.
struct SymbolVars {
    int n = 0;
    std::vector<int> x, xi;
    int rho = -1;
    explicit SymbolVars(int n);
};
Poly poisson_bracket(const Poly& f, const Poly& g, const SymbolVars& v);
// N / G^power with a fixed denominator G.
struct SymbolExpr {
    Poly num;
    int power = 0;
};
SymbolExpr symbol_bracket(const SymbolExpr& a, const SymbolExpr& b, const Poly& G, const SymbolVars& v);
// {1/G, {1/G, H}} = G^{-4} {G, {G, H}}.
bool dpb_check(const Poly& G, const Poly& H, const SymbolVars& v);

// <{H, {H, Hdot}}> at x = 0 as a rho-polynomial, H = sum (m^{-1})_ij xi_i xi_j,
// Hdot = -(m^{-1} mdot m^{-1})_ij xi_i xi_j; entries of m, mdot in x and rho.
Poly double_bracket_average(const std::vector<Poly>& m, const std::vector<Poly>& mdot, const SymbolVars& v, int cap);
std::vector<Poly> to_polys(const JetMatrix& m, const SymbolVars& v);

// -(Delta tr gdot + 2 delta delta gdot) against the Gaussian average, any coordinates.
bool pre_d_div_check(const JetMetric& g, const JetMatrix& gdot);

enum class FgFamily { General, ConformallyFlat, Einstein };
struct FgResult {
    std::vector<JetMatrix> h;       // h_(0) .. h_(achieved)
    int requested = 0;
    int achieved = 0;
    bool obstructed = false;        // stopped at an obstruction order
    std::vector<int> closed_form_orders;  // free trace-free part taken from the family
    bool residual_zero = false;     // back-substitution into the equation
    std::string note;
};
FgResult fg_expand(const JetMetric& g, int K, FgFamily family = FgFamily::General);
// g - rho P + rho^2/4 P g^{-1} P as one jet matrix in (x, rho).
JetMatrix conformally_flat_family(const JetMetric& g);
bool fg_matches_family(const FgResult& fg, const JetMatrix& family);

struct DDivResult {
    bool d_div = false, eval_normal = false;
    int achieved = 0;
    bool ok() const { return d_div && eval_normal; }
};
DDivResult d_div_check(const JetMetric& g, int K);

struct TheoremBResult {
    std::vector<Q> lhs, rhs;  // rho-coefficients at the origin, divided by r
    int achieved = 0;
    bool ok() const { return lhs == rhs && static_cast<int>(lhs.size()) == achieved + 1; }
};
TheoremBResult theorem_b_check(const JetMetric& g, int K);

struct ParametrixResult {
    Q parametrix, geometric;
    bool ok() const { return parametrix == geometric; }
};
// L = -(Delta + g(d eta, d) + b); g in normal form.
ParametrixResult parametrix_a2(const JetMetric& g, const Jet& eta, const Jet& b);

struct WeylResult {
    Q lhs, rhs;
    bool div_w = false;
    bool symmetries = false;
    bool ok() const { return lhs == rhs && div_w && symmetries; }
};
WeylResult weyl_identity_check(const JetMetric& g);

struct PrIden2Result {
    Q b3, b4, rhs;
    bool ok() const { return b3 - b4 == rhs; }
};
PrIden2Result pr_iden2_check(const JetMetric& g);

}  // namespace holo
