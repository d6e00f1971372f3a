#include "doctest.h"
#include "holokernel/cli.hpp"

#include "json.hpp"

#include <algorithm>

using namespace holo;

namespace {

std::vector<std::string> table(const Tables& t, const std::string& name) {
    for (auto& [k, v] : t.tables)
        if (k == name) return v;
    FAIL("missing table " << name);
    return {};
}

const CheckResult* find(const SuiteReport& r, const std::string& id) {
    for (auto& c : r.checks)
        if (c.id == id) return &c;
    return nullptr;
}

// Coefficients of (1 - a rho)^e (1 + a rho)^f by direct convolution of binomials.
std::vector<Q> binomial_product(const Q& a, int e, int f, int order) {
    auto binom = [](int n, int k) {
        Q r(1);
        for (int i = 0; i < k; ++i) r = r * Q(n - i) / Q(i + 1);
        return r;
    };
    std::vector<Q> out(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= e; ++i)
        for (int j = 0; j <= f; ++j)
            if (i + j <= order) {
                Q term = binom(e, i) * binom(f, j);
                for (int s = 0; s < i + j; ++s) term *= a;
                if (i % 2) term = -term;
                out[static_cast<std::size_t>(i + j)] += term;
            }
    return out;
}

}  // namespace

TEST_CASE("model spec grammar") {
    CHECK(parse_model_spec("sphere:6").kind() == ModelGeometry::Kind::Sphere);
    CHECK(parse_model_spec("hyperbolic:5").n() == RingElement(5));
    auto e = parse_model_spec("einstein:n=n,c=1/4");
    CHECK(e.n() == RingElement::sym("n"));
    CHECK(e.c() == RingElement(Q(1, 4)));
    auto p = parse_model_spec("product:p=3,q=4,lambda=lam");
    CHECK(p.lambda() == RingElement::sym("lam"));
    auto cf = parse_model_spec("confflat:n=3,p=[2, -1/2,0]");
    CHECK(cf.eigenvalues() == std::vector<Q>{Q(2), Q(-1, 2), Q(0)});
    for (const char* bad : {"sphere", "sphere:x", "torus:3", "einstein:n=4", "einstein:n=1/2,c=1",
                            "product:p=3,q=3", "confflat:n=3,p=[1,2]", "confflat:n=2,p=[1,a]", "sphere:1"})
        CHECK_THROWS_AS(parse_model_spec(bad), UsageError);
}

TEST_CASE("tables examples") {
    auto s6 = compute_tables("sphere:6", 6, 1);
    // Critical conformal Laplacian values of the even spheres.
    CHECK(table(s6, "a_4") == std::vector<std::string>{"0"});
    CHECK(table(s6, "a_6") == std::vector<std::string>{"5/63"});
    CHECK(table(compute_tables("sphere:4", 2, 1), "a_4") == std::vector<std::string>{"-1/15"});
    CHECK(table(compute_tables("sphere:2", 2, 1), "a_2") == std::vector<std::string>{"1/3"});

    auto e = compute_tables("einstein:n=4,c=1/4", 4, 1);
    CHECK(table(e, "v") == std::vector<std::string>{"1", "-1", "3/8", "-1/16", "1/256"});

    auto pr = compute_tables("product:p=3,q=3,lambda=1/4", 4, 1);
    std::vector<std::string> want;
    for (auto& q : binomial_product(Q(1, 4), 3, 3, 4)) want.push_back(q.get_str());
    CHECK(table(pr, "v") == want);

    auto j = nlohmann::json::parse(tables_json(e));
    CHECK(j["model"] == "einstein:n=4,c=1/4");
    CHECK(j["order"] == 4);
    CHECK(j["meta"]["seed"] == 1);
    CHECK(j["meta"]["version"] == kHolokernelVersion);
    for (const char* name : {"v", "w", "omega", "Lambda", "a_(0,2k)", "a_(2,2k)"}) {
        REQUIRE(j["tables"].contains(name));
        CHECK(j["tables"][name].size() == 5);
    }
    // omega_2 = v_2^2 and Lambda_0 = (n-4)/3 v_2.
    CHECK(j["tables"]["omega"][1] == "1");
    CHECK(j["tables"]["Lambda"][0] == "0");

    std::string csv = tables_csv(e);
    CHECK(csv.rfind("table,k,value\nv,0,1\nv,1,-1\n", 0) == 0);
    CHECK(csv.find("\"a_(0,2k)\",0,1\n") != std::string::npos);
    CHECK_THROWS_AS(compute_tables("sphere:6", -1, 1), UsageError);
}

TEST_CASE("series examples") {
    CHECK(series_text("a2", "sphere:4", 3) == "0: 0\n1: 0\n2: 0\n3: 0\n");
    CHECK(series_text("E", "einstein:n=6,c=1", 4) == "0: -24\n1: -48\n2: -72\n3: -96\n4: -120\n");
    CHECK(series_text("v", "confflat:n=3,p=[2,0,0]", 2) == "0: 1\n1: -1\n2: 0\n");
    // v = (1 - c rho)^n gives 2 v_rho / v = -2nc (1 - c rho)^{-1}.
    RingElement n = RingElement::sym("n"), c = RingElement::sym("c");
    std::string want;
    for (int k = 0; k <= 2; ++k) want += std::to_string(k) + ": " + (RingElement(-2) * n * c.pow(k + 1)).str() + "\n";
    CHECK(series_text("vdot_over_v", "einstein:n=n,c=c", 2) == want);
    // L = (rho/2) (1 - rho/4)^{n-1} per direction on S^n.
    CHECK(series_text("L", "sphere:4", 2) == "0: 2\n1: -3/2\n2: 3/8\n");
    CHECK(series_text("scal_gr", "sphere:7", 0) == "0: 42\n");
    CHECK_THROWS_AS(series_text("u", "sphere:4", 2), UsageError);
    CHECK_THROWS_AS(series_text("v", "sphere:", 2), UsageError);
}

TEST_CASE("verify suites") {
    SuiteOptions opt;
    auto g = run_suite("gjms", opt);
    CHECK(g.passed());
    REQUIRE(find(g, "inversion N=8"));
    CHECK(find(g, "inversion N=8")->status == CheckStatus::Pass);
    CHECK(std::is_sorted(g.checks.begin(), g.checks.end(),
                         [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; }));

    auto h = run_suite("hessians", opt);
    CHECK(h.passed());
    REQUIRE(find(h, "det6 sign pattern matches local maximum"));

    SuiteOptions jets;
    jets.seed = 7;
    auto j = run_suite("jets", jets);
    CHECK(j.passed());
    REQUIRE(find(j, "theorem-b conf-flat"));
    CHECK(find(j, "theorem-b conf-flat")->status == CheckStatus::Pass);

    CHECK_THROWS_AS(run_suite("nope", opt), UsageError);
    SuiteOptions bad;
    bad.n = 2;
    CHECK_THROWS_AS(run_suite("jets", bad), UsageError);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    SuiteOptions opt;
    opt.seed = 11;
    auto a = report_json({run_suite("jets", opt)});
    auto b = report_json({run_suite("jets", opt)});
    CHECK(a == b);
    auto j = nlohmann::json::parse(a);
    CHECK(j["seed"] == 11);
    CHECK(j["wall_time_ms"] == 0);
    CHECK(j["status"] == "pass");
    for (auto& c : j["checks"]) {
        CHECK(c.contains("paper_ref"));
        CHECK_FALSE(c.contains("first_discrepancy"));
    }

    SuiteReport fake;
    fake.suite = "x";
    fake.checks.push_back({"a", "ref", CheckStatus::Fail, "rho^2"});
    fake.checks.push_back({"b", "ref", CheckStatus::Skipped, {}});
    CHECK_FALSE(fake.passed());
    auto f = nlohmann::json::parse(report_json({fake}));
    CHECK(f["status"] == "fail");
    CHECK(f["checks"][0]["first_discrepancy"] == "rho^2");
    CHECK(f["checks"][1]["status"] == "skipped");
}
