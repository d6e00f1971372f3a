// Command line front end: tables, verify, series.

#include "holokernel/cli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

std::uint64_t default_seed() {
    if (const char* s = std::getenv("HOLOKERNEL_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw holo::UsageError(std::string("HOLOKERNEL_SEED is not an unsigned integer: ") + s);
        }
    }
    return 1;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw holo::UsageError("cannot open " + out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact heat and volume coefficients of Poincare-Einstein models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", holo::kHolokernelVersion);

    std::string model, format = "json", out, suite, expr;
    int order = -1, n = 3;
    std::uint64_t seed = 0;
    bool timing = false;

    auto* tables = app.add_subcommand("tables", "Emit coefficient tables for a model");
    tables->add_option("--model", model, "Model spec, e.g. sphere:6 or einstein:n=4,c=1/4")->required();
    tables->add_option("--order", order, "Highest rho-power (default 6)");
    tables->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    tables->add_option("--out", out, "Write to a file instead of stdout");
    tables->add_option("--seed", seed, "Recorded in meta (default HOLOKERNEL_SEED or 1)");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", suite, "gjms, models, heat, sphere, hessians, jets or all")->required();
    verify->add_option("--seed", seed, "Seed (default HOLOKERNEL_SEED or 1)");
    verify->add_option("--n", n, "Dimension of the jet checks (3..6)");
    verify->add_option("--order", order, "rho-order of the jet identities (1..3, default 1)");
    verify->add_option("--out", out, "Write the report to a file instead of stdout");
    verify->add_flag("--timing", timing, "Record wall_time_ms (otherwise 0, for reproducible reports)");

    auto* series = app.add_subcommand("series", "Print a rho-series, one coefficient per line");
    series->add_option("--expr", expr, "v, w, E, scal_gr, a0, a2, L or vdot_over_v")->required();
    series->add_option("--model", model, "Model spec")->required();
    series->add_option("--order", order, "Highest rho-power (default 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        bool seed_given = (tables->parsed() && tables->count("--seed")) || (verify->parsed() && verify->count("--seed"));
        if (!seed_given) seed = default_seed();

        if (tables->parsed()) {
            auto t = holo::compute_tables(model, order < 0 ? 6 : order, seed);
            emit(format == "csv" ? holo::tables_csv(t) : holo::tables_json(t), out);
            return 0;
        }
        if (series->parsed()) {
            std::cout << holo::series_text(expr, model, order < 0 ? 4 : order);
            return 0;
        }
        holo::SuiteOptions opt;
        opt.seed = seed;
        opt.n = n;
        opt.order = order < 0 ? 1 : order;
        opt.timing = timing;
        std::vector<holo::SuiteReport> reports;
        if (suite == "all") {
            for (auto& s : holo::suite_names()) reports.push_back(holo::run_suite(s, opt));
        } else {
            reports.push_back(holo::run_suite(suite, opt));
        }
        emit(holo::report_json(reports), out);
        for (auto& r : reports)
            if (!r.passed()) return 1;
        return 0;
    } catch (const holo::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
