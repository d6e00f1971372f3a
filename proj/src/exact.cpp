#include "holokernel/exact.hpp"

#include <stdexcept>

namespace holo {

std::string to_string(const Q& q) {
    Q x(q);
    x.canonicalize();
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Q r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

Z factorial(long n) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Q qpow(const Q& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to negative power");
        return qpow(Q(1) / base, -e);
    }
    Q r(1), b(base);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Q binom(const Q& top, long k) {
    if (k < 0) return 0;
    Q r(1);
    for (long i = 0; i < k; ++i) r *= (top - i);
    r /= Q(factorial(k));
    return r;
}

Z binom(long top, long k) {
    if (k < 0 || top < 0 || k > top) return 0;
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(k));
    return r;
}

std::string ExactScalar::str() const {
    std::string s = to_string(value);
    if (pi_power == 0) return s;
    s += "*pi";
    if (pi_power != 1) s += "^" + std::to_string(pi_power);
    return s;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.pi_power != b.pi_power) throw std::domain_error("adding scalars with different pi powers");
    return ExactScalar(a.value + b.value, a.pi_power);
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.value * b.value, a.pi_power + b.pi_power);
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (b.is_zero()) throw std::domain_error("division by zero scalar");
    return ExactScalar(a.value / b.value, a.pi_power - b.pi_power);
}

}  // namespace holo
