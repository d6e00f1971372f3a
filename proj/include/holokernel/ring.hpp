#pragma once

#include "holokernel/poly.hpp"

#include <map>
#include <string>

namespace holo {

// Element of the fraction field Q(symbols). Stored reduced with a
// monic denominator, so equality is structural.
class RingElement {
public:
    RingElement() : den_(1) {}
    RingElement(long c) : num_(c), den_(1) {}
    RingElement(const Q& c) : num_(c), den_(1) {}
    RingElement(const ExactScalar& s);
    RingElement(Poly num) : num_(std::move(num)), den_(1) {}
    RingElement(Poly num, Poly den);

    static RingElement sym(const std::string& name) { return RingElement(Poly::var(name)); }
    static RingElement pi() { return sym("pi"); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == Poly(1); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Q constant_value() const;  // throws unless is_constant()
    bool has_var(int var) const { return num_.has_var(var) || den_.has_var(var); }

    RingElement operator-() const;
    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator/(const RingElement& a, const RingElement& b);
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
    RingElement& operator/=(const RingElement& o) { return *this = *this / o; }
    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    RingElement pow(int e) const;
    RingElement derivative(int var) const;
    RingElement subs(int var, const RingElement& value) const;
    RingElement subs(const std::string& name, const RingElement& value) const {
        return subs(symbol(name), value);
    }
    Q eval(const std::map<int, Q>& values) const;

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

}  // namespace holo
