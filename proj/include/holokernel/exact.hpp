#pragma once

#include <gmpxx.h>

#include <string>

namespace holo {

using Q = mpq_class;
using Z = mpz_class;

// "p/q" with the denominator omitted when it is 1.
std::string to_string(const Q& x);
Q parse_rational(const std::string& s);

Z factorial(long n);
Q qpow(const Q& base, long e);
// Generalized binomial top(top-1)...(top-k+1)/k!.
Q binom(const Q& top, long k);
Z binom(long top, long k);

// Rational tagged with an integer power of pi. Sums need matching
// pi powers unless one side is zero.
struct ExactScalar {
    Q value;
    int pi_power = 0;

    ExactScalar() = default;
    ExactScalar(Q v, int pp = 0) : value(std::move(v)), pi_power(pp) { normalize(); }
    ExactScalar(long v) : value(v) {}

    bool is_zero() const { return value == 0; }
    std::string str() const;

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
    ExactScalar operator-() const { return ExactScalar(-value, pi_power); }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.value == b.value && a.pi_power == b.pi_power;
    }

private:
    void normalize() {
        value.canonicalize();
        if (value == 0) pi_power = 0;
    }
};

}  // namespace holo
