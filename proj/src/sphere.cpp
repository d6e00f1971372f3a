#include "holokernel/sphere.hpp"

#include <stdexcept>

namespace holo {

namespace {

RingElement R(long a, long b = 1) { return RingElement(Q(a, b)); }

// Coefficients (in t^2) of prod over j in js of (j^2 - t^2).
std::vector<Q> product_in_t2(const std::vector<Q>& js) {
    std::vector<Q> poly{Q(1)};
    for (auto& j : js) {
        std::vector<Q> next(poly.size() + 1, Q(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i] * j * j;
            next[i + 1] -= poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

}  // namespace

int beta_kmax(int n) {
    if (n < 2) throw std::invalid_argument("sphere dimension must be >= 2");
    return n % 2 == 0 ? n / 2 - 1 : (n - 3) / 2;
}

BetaB beta_b(int n) {
    if (n < 2) throw std::invalid_argument("sphere dimension must be >= 2");
    BetaB out;
    std::vector<Q> js;
    if (n % 2 == 0) {
        for (int twice = 1; twice <= n - 3; twice += 2) js.push_back(Q(twice, 2));
    } else {
        for (int j = 1; j <= (n - 3) / 2; ++j) js.push_back(Q(j));
    }
    for (auto& j : js) j.canonicalize();
    out.betas = product_in_t2(js);
    int top = static_cast<int>(out.betas.size()) - 1;  // n/2-1 (even) or (n-3)/2 (odd)
    Q half_n(n, 2);
    half_n.canonicalize();
    int K = beta_kmax(n);
    for (int k = 0; k <= K; ++k) {
        Q b = qpow(Q(-1), top);
        for (int i = 1; i <= k; ++i) b /= (half_n - i);
        b *= out.betas[static_cast<std::size_t>(top - k)];
        out.bs.push_back(b);
    }
    return out;
}

RingElement laplace_closed_form(int k, const RingElement& n) {
    switch (k) {
        case 0:
            return R(1);
        case 1:
            return n * (n - R(1)) / R(6);
        case 2:
            return n * (n - R(1)) * (R(5) * n.pow(2) - R(7) * n + R(6)) / R(360);
        case 3:
            return n * (n - R(1)) *
                   (R(35) * n.pow(4) - R(112) * n.pow(3) + R(187) * n.pow(2) - R(110) * n + R(96)) /
                   R(9 * 5040);
        default:
            throw std::out_of_range("closed forms are known for a_0..a_6 only");
    }
}

RingElement conformal_closed_form(int k, const RingElement& n) {
    switch (k) {
        case 0:
            return R(1);
        case 1:
            return -n * (n - R(4)) / R(12);
        case 2:
            return n * (n - R(6)) * (R(5) * n.pow(2) - R(18) * n + R(4)) / R(1440);
        case 3:
            return -n * (n - R(8)) *
                   (R(35) * n.pow(4) - R(308) * n.pow(3) + R(688) * n.pow(2) - R(184) * n - R(96)) / R(362880);
        default:
            throw std::out_of_range("closed forms are known for a_0..a_6 only");
    }
}

SphereCoeffTable laplace_sphere_beta(int n) {
    BetaB bb = beta_b(n);
    SphereCoeffTable t;
    t.n = n;
    t.op = SphereOperator::Laplacian;
    t.source = CoeffSource::BetaCombinatorics;
    Q s = Q(n - 1, 2) * Q(n - 1, 2);
    for (int k = 0; k <= beta_kmax(n); ++k) {
        Q a(0);
        for (int j = 0; j <= k; ++j) a += qpow(s, j) / Q(factorial(j)) * bb.bs[static_cast<std::size_t>(k - j)];
        t.coeffs.push_back(a);
    }
    return t;
}

SphereCoeffTable laplace_sphere_coeffs(int n, int kmax) {
    if (kmax <= beta_kmax(n)) {
        SphereCoeffTable t = laplace_sphere_beta(n);
        t.coeffs.resize(static_cast<std::size_t>(kmax) + 1);
        return t;
    }
    SphereCoeffTable t;
    t.n = n;
    t.op = SphereOperator::Laplacian;
    t.source = CoeffSource::ClosedForm;
    for (int k = 0; k <= kmax; ++k) t.coeffs.push_back(laplace_closed_form(k, RingElement(n)).constant_value());
    return t;
}

std::vector<Q> shift_heat_series(const std::vector<Q>& a, const Q& s) {
    std::vector<Q> out(a.size(), Q(0));
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t j = 0; j <= k; ++j)
            out[k] += a[j] * qpow(s, static_cast<long>(k - j)) / Q(factorial(static_cast<long>(k - j)));
    return out;
}

std::vector<Q> duality(const std::vector<Q>& a) {
    std::vector<Q> out(a);
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    return out;
}

SphereCoeffTable conformal_sphere_coeffs(int n, int kmax, SpaceForm space) {
    SphereCoeffTable lap = laplace_sphere_coeffs(n, kmax);
    Q half(n, 2);
    half.canonicalize();
    SphereCoeffTable t;
    t.n = n;
    t.op = SphereOperator::ConformalLaplacian;
    t.source = lap.source;
    t.coeffs = shift_heat_series(lap.coeffs, -half * (half - 1));
    if (space == SpaceForm::Hyperbolic) t.coeffs = duality(t.coeffs);
    return t;
}

ExactScalar sphere_volume(int n) {
    if (n % 2) throw std::invalid_argument("sphere_volume is implemented for even n");
    int m = n / 2;
    // 2 * 4^m m! pi^m / (2m)!
    Q v = Q(2) * qpow(Q(4), m) * Q(factorial(m)) / Q(factorial(2 * m));
    return ExactScalar(v, m);
}

ExactScalar euler_integral(int n) {
    if (n != 2 && n != 4 && n != 6) throw std::invalid_argument("euler_check covers n = 2, 4, 6");
    Q a = conformal_sphere_coeffs(n, n / 2).coeffs.back();
    ExactScalar four_pi_inv(Q(1) / qpow(Q(4), n / 2), -n / 2);
    return four_pi_inv * ExactScalar(a) * sphere_volume(n);
}

bool euler_check(int n) {
    Q multiple = n == 2 ? Q(1, 6) : n == 4 ? Q(-1, 180) : Q(1, 1512);
    multiple.canonicalize();
    return euler_integral(n) == ExactScalar(multiple * 2);
}

std::vector<Q> bernoulli_numbers(int m) {
    std::vector<Q> B(static_cast<std::size_t>(m) + 1, Q(0));
    B[0] = 1;
    for (int k = 1; k <= m; ++k) {
        Q acc(0);
        for (int j = 0; j < k; ++j) acc += Q(binom(k + 1, j)) * B[static_cast<std::size_t>(j)];
        B[static_cast<std::size_t>(k)] = -acc / Q(k + 1);
    }
    return B;
}

std::vector<Q> s2_bernoulli_coeffs(int kmax) {
    auto B = bernoulli_numbers(2 * kmax);
    std::vector<Q> b, a;
    for (int k = 0; k <= kmax; ++k) {
        Q bk = qpow(Q(-1), k) / Q(factorial(k)) * (qpow(Q(2), 1 - 2 * k) - 1) * B[static_cast<std::size_t>(2 * k)];
        b.push_back(bk);
    }
    for (int k = 0; k <= kmax; ++k) {
        Q s(0);
        for (int j = 0; j <= k; ++j) s += qpow(Q(1, 4), j) / Q(factorial(j)) * b[static_cast<std::size_t>(k - j)];
        a.push_back(s);
    }
    return a;
}

}  // namespace holo
