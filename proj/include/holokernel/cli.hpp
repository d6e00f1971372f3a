#pragma once

// Batch front end: model-spec parsing, coefficient tables, series output and
// verification suites with machine-readable reports.

#include "holokernel/models.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace holo {

inline constexpr const char* kHolokernelVersion = "0.1.0";

// Bad flags or model specs; the CLI maps it to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sphere:<n>, hyperbolic:<n>, einstein:n=<int|sym>,c=<rational|sym>,
// product:p=<int>,q=<int>,lambda=<rational|sym>, confflat:n=<int>,p=[<rationals>].
ModelGeometry parse_model_spec(const std::string& spec);

struct Tables {
    std::string model;
    int order = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::vector<std::string>>> tables;
};
Tables compute_tables(const std::string& model_spec, int order, std::uint64_t seed);
std::string tables_json(const Tables& t);
std::string tables_csv(const Tables& t);

const std::vector<std::string>& series_expressions();
// One "k: value" line per rho-power.
std::string series_text(const std::string& expr, const std::string& model_spec, int order);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string id;
    std::string paper_ref;  // descriptive label of the identity checked
    CheckStatus status = CheckStatus::Pass;
    std::string first_discrepancy;  // present iff status is Fail
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;  // sorted by id
    long long wall_time_ms = 0;
    std::uint64_t seed = 0;
    bool passed() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int n = 3;       // jet dimension
    int order = 1;   // rho-order for the jet identities
    bool timing = false;  // wall_time_ms stays 0 unless set
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);
std::string report_json(const std::vector<SuiteReport>& reports);

}  // namespace holo
