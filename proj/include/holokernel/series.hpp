#pragma once

#include "holokernel/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holo {

// Truncated power series in rho = r^2. Coefficients beyond order() are unknown.
class EvenSeries {
public:
    EvenSeries() : c_(1) {}
    explicit EvenSeries(int order) : c_(static_cast<std::size_t>(order) + 1) {}
    EvenSeries(std::vector<RingElement> coeffs);
    static EvenSeries constant(const RingElement& a, int order);
    // rho^k (zero when k exceeds the order).
    static EvenSeries monomial(int k, const RingElement& a, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const RingElement& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    RingElement& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<RingElement>& coeffs() const { return c_; }

    EvenSeries truncate(int order) const;
    EvenSeries operator-() const;
    friend EvenSeries operator+(const EvenSeries& a, const EvenSeries& b);
    friend EvenSeries operator-(const EvenSeries& a, const EvenSeries& b);
    friend EvenSeries operator*(const EvenSeries& a, const EvenSeries& b);
    friend EvenSeries operator*(const RingElement& s, const EvenSeries& a);
    friend EvenSeries operator/(const EvenSeries& a, const EvenSeries& b);

    // d/drho; the order drops by one.
    EvenSeries derivative() const;
    // Multiplication by rho; the order rises by one.
    EvenSeries shift() const;
    EvenSeries inverse() const;  // needs an invertible constant term

    bool is_zero() const;
    std::string str() const;

private:
    std::vector<RingElement> c_;
};

EvenSeries series_mul(const EvenSeries& a, const EvenSeries& b);
EvenSeries series_sqrt(const EvenSeries& a);
// a^e for symbolic e, constant term of a must be 1.
EvenSeries series_pow(const EvenSeries& a, const RingElement& e);
// (1 - b*rho)^e.
EvenSeries binomial_power_series(const RingElement& b, const RingElement& e, int order);
// f'' - a r^{-1} f' in r, written as 4 rho f_rho_rho + (2 - 2a) f_rho.
EvenSeries radial_second_derivative(const EvenSeries& f, const RingElement& a);

// Equality up to the smaller of the two orders.
bool series_equal(const EvenSeries& a, const EvenSeries& b);
// Index of the first coefficient that differs within the common order.
std::optional<int> first_difference(const EvenSeries& a, const EvenSeries& b);

}  // namespace holo
