#include "holokernel/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace holo {

EvenSeries::EvenSeries(std::vector<RingElement> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

EvenSeries EvenSeries::constant(const RingElement& a, int order) {
    EvenSeries s(order);
    s.c_[0] = a;
    return s;
}

EvenSeries EvenSeries::monomial(int k, const RingElement& a, int order) {
    EvenSeries s(order);
    if (k <= order) s.c_[static_cast<std::size_t>(k)] = a;
    return s;
}

EvenSeries EvenSeries::truncate(int order) const {
    if (order > this->order()) throw std::invalid_argument("cannot extend a truncated series");
    return EvenSeries(std::vector<RingElement>(c_.begin(), c_.begin() + order + 1));
}

EvenSeries EvenSeries::operator-() const {
    EvenSeries r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

EvenSeries operator+(const EvenSeries& a, const EvenSeries& b) {
    int K = std::min(a.order(), b.order());
    EvenSeries r(K);
    for (int k = 0; k <= K; ++k) r[k] = a[k] + b[k];
    return r;
}

EvenSeries operator-(const EvenSeries& a, const EvenSeries& b) { return a + (-b); }

EvenSeries operator*(const EvenSeries& a, const EvenSeries& b) {
    int K = std::min(a.order(), b.order());
    EvenSeries r(K);
    for (int i = 0; i <= K; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= K; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

EvenSeries operator*(const RingElement& s, const EvenSeries& a) {
    EvenSeries r(a);
    for (auto& x : r.c_) x = s * x;
    return r;
}

EvenSeries EvenSeries::inverse() const {
    if (c_[0].is_zero()) throw std::domain_error("series inverse needs a nonzero constant term");
    int K = order();
    EvenSeries r(K);
    RingElement inv0 = RingElement(1) / c_[0];
    r[0] = inv0;
    for (int k = 1; k <= K; ++k) {
        RingElement acc;
        for (int j = 1; j <= k; ++j)
            if (!c_[static_cast<std::size_t>(j)].is_zero()) acc += (*this)[j] * r[k - j];
        r[k] = -(acc * inv0);
    }
    return r;
}

EvenSeries operator/(const EvenSeries& a, const EvenSeries& b) {
    int K = std::min(a.order(), b.order());
    return a.truncate(K) * b.truncate(K).inverse();
}

EvenSeries EvenSeries::derivative() const {
    if (order() == 0) throw std::domain_error("derivative of an order-0 series has no known coefficients");
    EvenSeries r(order() - 1);
    for (int k = 1; k <= order(); ++k) r[k - 1] = RingElement(k) * (*this)[k];
    return r;
}

EvenSeries EvenSeries::shift() const {
    EvenSeries r(order() + 1);
    for (int k = 0; k <= order(); ++k) r[k + 1] = (*this)[k];
    return r;
}

bool EvenSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const RingElement& x) { return x.is_zero(); });
}

std::string EvenSeries::str() const {
    std::string s;
    for (int k = 0; k <= order(); ++k) {
        if (k) s += "\n";
        s += std::to_string(k) + ": " + (*this)[k].str();
    }
    return s;
}

EvenSeries series_mul(const EvenSeries& a, const EvenSeries& b) { return a * b; }

EvenSeries series_sqrt(const EvenSeries& a) {
    if (a[0] != RingElement(1)) throw std::domain_error("series_sqrt needs constant term 1");
    int K = a.order();
    EvenSeries s(K);
    s[0] = RingElement(1);
    // (s^2)_k = a_k gives 2 s_k = a_k - sum_{0<j<k} s_j s_{k-j}.
    RingElement half(Q(1, 2));
    for (int k = 1; k <= K; ++k) {
        RingElement acc = a[k];
        for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = half * acc;
    }
    return s;
}

EvenSeries series_pow(const EvenSeries& a, const RingElement& e) {
    if (a[0] != RingElement(1)) throw std::domain_error("series_pow needs constant term 1");
    // F = a^e satisfies a F' = e a' F; compare rho^{k-1} coefficients.
    int K = a.order();
    EvenSeries F(K);
    F[0] = RingElement(1);
    for (int k = 1; k <= K; ++k) {
        RingElement acc;
        for (int j = 1; j <= k; ++j) {
            if (a[j].is_zero()) continue;
            acc += (e * RingElement(j) - RingElement(k - j)) * a[j] * F[k - j];
        }
        F[k] = acc / RingElement(k);
    }
    return F;
}

EvenSeries binomial_power_series(const RingElement& b, const RingElement& e, int order) {
    EvenSeries r(order);
    RingElement term(1);
    r[0] = term;
    for (int k = 1; k <= order; ++k) {
        term = term * (e - RingElement(k - 1)) / RingElement(k) * (-b);
        r[k] = term;
    }
    return r;
}

EvenSeries radial_second_derivative(const EvenSeries& f, const RingElement& a) {
    int K = f.order() - 1;
    if (K < 0) throw std::domain_error("radial derivative needs order >= 1");
    EvenSeries r(K);
    // rho^k comes from f_{k+1}: (4 k (k+1) + (2 - 2a)(k+1)) f_{k+1}.
    for (int k = 0; k <= K; ++k) {
        RingElement fac = RingElement(4 * k * (k + 1)) + (RingElement(2) - RingElement(2) * a) * RingElement(k + 1);
        r[k] = fac * f[k + 1];
    }
    return r;
}

bool series_equal(const EvenSeries& a, const EvenSeries& b) { return !first_difference(a, b).has_value(); }

std::optional<int> first_difference(const EvenSeries& a, const EvenSeries& b) {
    int K = std::min(a.order(), b.order());
    for (int k = 0; k <= K; ++k)
        if (a[k] != b[k]) return k;
    return std::nullopt;
}

}  // namespace holo
