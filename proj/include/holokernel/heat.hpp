#pragma once

#include "holokernel/models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holo {

struct Route {
    std::string label;
    EvenSeries value;  // scalar quantities are order-0 series
};

struct CoeffReport {
    std::string quantity;
    std::vector<Route> routes;
    bool agree = true;
    std::optional<int> discrepancy;  // first differing rho-power
    std::string discrepancy_route;
    // Series derived alongside the routes; not part of the agreement test.
    std::vector<Route> extras;
    // Divergence terms present in the source formula that vanish on
    // homogeneous data and were dropped.
    std::vector<std::string> dropped_divergence;
    std::vector<std::string> notes;

    const EvenSeries& route(const std::string& label) const;
    const EvenSeries& extra(const std::string& label) const;
    std::string str() const;
};

CoeffReport make_report(std::string quantity, std::vector<Route> routes);
Route scalar_route(std::string label, const RingElement& value);

CoeffReport a0_series(const ModelGeometry& m, int order);
// Routes a2-diff, a2-E, and a closed form for Einstein and Product models.
// Extras: "Lambda" = a_2 - (dw/dr)^2 and "wdot2" = (dw/dr)^2.
CoeffReport a2_series(const ModelGeometry& m, int order);

struct LambdaOmegaReport {
    CoeffReport lambda;  // Lambda_{2k-2} against (1/3) k (n - 4k) v_{2k}
    CoeffReport omega;   // omega_{2k} against the polynomial table, k <= 4
    bool agree() const { return lambda.agree && omega.agree; }
};
LambdaOmegaReport lambda_omega_coeffs(const ModelGeometry& m, int kmax);

// 360 a_4(r) in the Gilkey form from sectional data of g(r); any
// conformally flat catalog model.
EvenSeries a4_sectional(const ModelGeometry& m, int order);
// Einstein-family and S^p x H^q models.
CoeffReport a4_series_model(const ModelGeometry& m, int order);

struct A22Result {
    bool product_identity = false;   // closed display vs rho-coefficient of a_2(r) on products
    bool einstein_specialization = false;
    bool rel_inv_lambda2 = false;
    bool rel_inv_v4 = false;
    bool rel_inv_q4 = false;
    bool ok() const {
        return product_identity && einstein_specialization && rel_inv_lambda2 && rel_inv_v4 && rel_inv_q4;
    }
};
A22Result a22_check();

CoeffReport a42_confflat(const ModelGeometry& m, bool full = true);

struct ClLow {
    RingElement a2, a4;  // from the J, P form
    RingElement a2_v, a4_v;  // from the v form
    bool agree() const { return a2 == a2_v && a4 == a4_v; }
};
ClLow cl_low_coeffs(const RingElement& n, const RingElement& J, const RingElement& P2, const RingElement& trP3,
                    const RingElement& W2);

// Routes branson, av-6, table-heat-6 and (space forms, products) closed.
CoeffReport a6_multiroute(const ModelGeometry& m);

RingElement q_einstein(const RingElement& n, const RingElement& c, int N);
bool holographic_q_check(const RingElement& n, const RingElement& c, int N);

// Q_2 = -6 a_2/(n-4) and Q_4 = 60 a_4/(n-6) - 4 Lambda_2 on homogeneous conformally flat data.
bool q_a4_check(const ModelGeometry& m);

// c -> s^2 c multiplies a_(2j,2k) by s^(2j+2k) (Einstein, symbolic n and c).
bool scaling_weight_check(int j, int k);

enum class PvKind { PV2, PV4, PV6, FDV4, FDV6 };
struct PvResult {
    RingElement lhs, rhs;
    bool ok = false;
};
PvResult pv_rescaling(PvKind kind, const RingElement& phi);
bool pv_rescaling_check(PvKind kind, const RingElement& phi);
PvKind parse_pv_kind(const std::string& s);
std::string pv_kind_name(PvKind k);

}  // namespace holo
