#include "holokernel/ring.hpp"

#include <stdexcept>

namespace holo {

RingElement::RingElement(const ExactScalar& s) : num_(s.value), den_(1) {
    if (s.pi_power > 0)
        num_ = num_ * Poly::var("pi", s.pi_power);
    else if (s.pi_power < 0 && !s.is_zero())
        den_ = Poly::var("pi", -s.pi_power);
    normalize();
}

RingElement::RingElement(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void RingElement::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.is_constant()) {
        Q d = den_.constant_value();
        if (d != 1) num_ *= Q(1) / d;
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    Q lc = den_.leading_coeff();
    if (lc != 1) {
        Q inv = Q(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
    if (den_.is_constant()) den_ = Poly(1);
}

Q RingElement::constant_value() const {
    if (!is_constant()) throw std::domain_error("not a constant: " + str());
    return num_.constant_value() / den_.constant_value();
}

RingElement RingElement::operator-() const {
    RingElement r(*this);
    r.num_ = -r.num_;
    return r;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.is_polynomial()) return RingElement(a.num_ + b.num_);
        return RingElement(a.num_ + b.num_, a.den_);
    }
    return RingElement(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
    if (a.is_zero() || b.is_zero()) return RingElement();
    if (a.is_polynomial() && b.is_polynomial()) return RingElement(a.num_ * b.num_);
    return RingElement(a.num_ * b.num_, a.den_ * b.den_);
}

RingElement operator/(const RingElement& a, const RingElement& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return RingElement(a.num_ * b.den_, a.den_ * b.num_);
}

RingElement RingElement::pow(int e) const {
    if (e < 0) return RingElement(1) / pow(-e);
    RingElement r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

RingElement RingElement::derivative(int var) const {
    if (is_polynomial()) return RingElement(num_.derivative(var));
    return RingElement(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RingElement RingElement::subs(int var, const RingElement& value) const {
    auto subst = [&](const Poly& p) {
        RingElement r;
        for (auto& [e, c] : p.coeffs_in(var)) r += RingElement(c) * value.pow(e);
        return r;
    };
    if (!has_var(var)) return *this;
    if (value.is_polynomial()) {
        if (is_polynomial()) return RingElement(num_.subs(var, value.num_));
        return RingElement(num_.subs(var, value.num_), den_.subs(var, value.num_));
    }
    return subst(num_) / subst(den_);
}

Q RingElement::eval(const std::map<int, Q>& values) const {
    Q d = den_.eval(values);
    if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
    return num_.eval(values) / d;
}

std::string RingElement::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace holo
