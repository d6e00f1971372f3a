#pragma once

#include "holokernel/exact.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace holo {

// Global symbol table. Lower ids rank higher in the lex order.
int symbol(const std::string& name);
const std::string& symbol_name(int id);

// Sparse monomial: (symbol id, exponent) pairs sorted by id, exponents > 0.
using Mono = std::vector<std::pair<int, int>>;

// Lex comparison: true when a < b.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

Mono mono_mul(const Mono& a, const Mono& b);
int mono_degree(const Mono& m);
int mono_exponent(const Mono& m, int var);

class Poly {
public:
    using Terms = std::map<Mono, Q, MonoLess>;

    Poly() = default;
    Poly(long c);
    Poly(const Q& c);
    static Poly var(int id, int exp = 1);
    static Poly var(const std::string& name, int exp = 1) { return var(symbol(name), exp); }
    static Poly monomial(const Mono& m, const Q& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Q constant_value() const;  // coefficient of the empty monomial
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Lex-leading term.
    const Mono& leading_mono() const { return terms_.rbegin()->first; }
    const Q& leading_coeff() const { return terms_.rbegin()->second; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Q& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const;
    Poly derivative(int var) const;
    Poly subs(int var, const Poly& value) const;
    Q eval(const std::map<int, Q>& values) const;  // all symbols must be bound

    bool has_var(int var) const;
    int degree(int var) const;
    int total_degree() const;
    std::vector<int> variables() const;
    // Coefficients w.r.t. var: exponent -> coefficient free of var.
    std::map<int, Poly> coeffs_in(int var) const;
    Poly lc_in(int var) const;

    Poly monic() const;  // divide by lex-leading coefficient
    std::string str() const;

    void add_term(const Mono& m, const Q& c);

private:
    Terms terms_;
};

// Exact quotient; throws if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
// Monic gcd (gcd(0,0) = 0).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace holo
