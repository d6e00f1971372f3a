#include "holokernel/jet.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace holo {

namespace {

constexpr Jet::Key kNibbleLow = 0x1111111111111111ULL;

// Adds packed exponents; throws if a slot exceeds 15.
Jet::Key key_add(Jet::Key a, Jet::Key b) {
    Jet::Key s = a + b;
    if (s < a || (((a ^ b ^ s) & (kNibbleLow << 4)) != 0)) throw std::overflow_error("jet exponent overflow");
    return s;
}

}  // namespace

Jet::Jet(int n, int cap) : n_(n), cap_(cap) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("jet dimension out of range");
    if (cap >= 0) b_.resize(static_cast<std::size_t>(cap) + 1);
}

Jet Jet::constant(int n, int cap, const Q& c) {
    Jet j(n, cap);
    j.add_term(0, c);
    return j;
}

Jet Jet::x(int n, int cap, int i) {
    Jet j(n, cap);
    j.add_term(with_exponent(0, i, 1), Q(1));
    return j;
}

Jet Jet::xi(int n, int cap, int i) {
    Jet j(n, cap);
    j.add_term(with_exponent(0, xi_slot(i), 1), Q(1));
    return j;
}

Jet Jet::rho(int n, int cap) {
    Jet j(n, cap);
    j.add_term(with_exponent(0, kRhoSlot, 1), Q(1));
    return j;
}

Jet::Key Jet::with_exponent(Key k, int slot, int e) {
    if (e < 0 || e > 15) throw std::overflow_error("jet exponent out of range");
    Key mask = Key(0xF) << (4 * slot);
    return (k & ~mask) | (Key(e) << (4 * slot));
}

int Jet::x_degree(Key k) const {
    int d = 0;
    for (int i = 0; i < n_; ++i) d += exponent(k, i);
    return d;
}

bool Jet::is_zero() const {
    return std::all_of(b_.begin(), b_.end(), [](const auto& m) { return m.empty(); });
}

Q Jet::coeff(Key k) const {
    int w = weight(k);
    if (w > cap_) throw std::out_of_range("jet coefficient beyond cap");
    auto& m = b_[static_cast<std::size_t>(w)];
    auto it = m.find(k);
    return it == m.end() ? Q(0) : it->second;
}

void Jet::add_term(Key k, const Q& c) {
    if (c == 0) return;
    int w = weight(k);
    if (w > cap_) return;
    auto& m = b_[static_cast<std::size_t>(w)];
    auto [it, inserted] = m.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

std::vector<std::pair<Jet::Key, Q>> Jet::terms() const {
    std::vector<std::pair<Key, Q>> out;
    for (auto& m : b_)
        for (auto& t : m) out.push_back(t);
    return out;
}

void Jet::check_like(const Jet& o) const {
    if (n_ != o.n_) throw std::invalid_argument("jet dimension mismatch");
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& m : r.b_)
        for (auto& t : m) t.second = -t.second;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    if (cap_ < 0 && n_ == 0 && b_.empty()) return *this = o;
    check_like(o);
    if (o.cap_ < cap_) {
        cap_ = o.cap_;
        b_.resize(static_cast<std::size_t>(std::max(cap_ + 1, 0)));
    }
    for (int w = 0; w <= cap_; ++w)
        for (auto& [k, c] : o.b_[static_cast<std::size_t>(w)]) add_term(k, c);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet operator*(const Jet& a, const Jet& b) {
    a.check_like(b);
    Jet r(a.n_, std::min(a.cap_, b.cap_));
    if (a.is_zero() || b.is_zero()) return r;
    for (int wa = 0; wa <= r.cap_; ++wa) {
        auto& ma = a.b_[static_cast<std::size_t>(wa)];
        if (ma.empty()) continue;
        for (int wb = 0; wa + wb <= r.cap_; ++wb) {
            auto& mb = b.b_[static_cast<std::size_t>(wb)];
            if (mb.empty()) continue;
            auto& out = r.b_[static_cast<std::size_t>(wa + wb)];
            for (auto& [ka, ca] : ma)
                for (auto& [kb, cb] : mb) {
                    Q p = ca * cb;
                    auto [it, inserted] = out.emplace(key_add(ka, kb), p);
                    if (!inserted) it->second += p;
                }
        }
    }
    for (auto& m : r.b_)
        for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    return r;
}

Jet operator*(const Q& s, const Jet& a) {
    if (s == 0) return Jet(a.n_, a.cap_);
    Jet r = a;
    for (auto& m : r.b_)
        for (auto& t : m) t.second *= s;
    return r;
}

Jet Jet::dx(int i) const {
    Jet r(n_, cap_ - 1);
    for (auto& m : b_)
        for (auto& [k, c] : m) {
            int e = exponent(k, i);
            if (e > 0) r.add_term(with_exponent(k, i, e - 1), c * e);
        }
    return r;
}

Jet Jet::dxi(int i) const {
    Jet r(n_, cap_);
    int s = xi_slot(i);
    for (auto& m : b_)
        for (auto& [k, c] : m) {
            int e = exponent(k, s);
            if (e > 0) r.add_term(with_exponent(k, s, e - 1), c * e);
        }
    return r;
}

Jet Jet::drho() const {
    Jet r(n_, cap_ - 2);
    for (auto& m : b_)
        for (auto& [k, c] : m) {
            int e = exponent(k, kRhoSlot);
            if (e > 0) r.add_term(with_exponent(k, kRhoSlot, e - 1), c * e);
        }
    return r;
}

Jet Jet::times_rho() const {
    Jet r(n_, cap_ + 2);
    for (auto& m : b_)
        for (auto& [k, c] : m) r.add_term(with_exponent(k, kRhoSlot, exponent(k, kRhoSlot) + 1), c);
    return r;
}

Jet Jet::truncate(int cap) const {
    Jet r(n_, std::min(cap, cap_));
    for (int w = 0; w <= r.cap_; ++w) r.b_[static_cast<std::size_t>(w)] = b_[static_cast<std::size_t>(w)];
    return r;
}

Jet Jet::at_x0() const {
    Jet r(n_, cap_);
    for (auto& m : b_)
        for (auto& [k, c] : m)
            if (x_degree(k) == 0) r.add_term(k, c);
    return r;
}

Jet Jet::rho_coeff(int k) const {
    Jet r(n_, cap_ - 2 * k);
    for (auto& m : b_)
        for (auto& [key, c] : m)
            if (exponent(key, kRhoSlot) == k) r.add_term(with_exponent(key, kRhoSlot, 0), c);
    return r;
}

Jet Jet::inverse() const {
    for (auto& m : b_)
        for (auto& [k, c] : m)
            for (int i = 0; i < n_; ++i)
                if (exponent(k, xi_slot(i))) throw std::invalid_argument("jet inverse of a fiber polynomial");
    Q c0 = coeff(0);
    if (c0 == 0) throw std::domain_error("jet inverse needs a nonzero constant term");
    Jet e = *this - constant(n_, cap_, c0);
    Jet step = (Q(-1) / c0) * e;
    Jet term = constant(n_, cap_, Q(1) / c0);
    Jet sum = term;
    while (!(term = term * step).is_zero()) sum += term;
    return sum;
}

Jet Jet::exp() const {
    if (coeff(0) != 0) throw std::domain_error("jet exp needs a vanishing constant term");
    Jet term = constant(n_, cap_, Q(1));
    Jet sum = term;
    for (long k = 1; !(term = Q(1, k) * (term * *this)).is_zero(); ++k) sum += term;
    return sum;
}

bool Jet::agrees(const Jet& o) const { return (*this - o).is_zero(); }

std::string Jet::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms()) {
        os << (first ? "" : " + ") << to_string(c);
        for (int i = 0; i < n_; ++i) {
            if (int e = exponent(k, i)) os << "*x" << (i + 1) << (e > 1 ? "^" + std::to_string(e) : "");
            if (int e = exponent(k, xi_slot(i))) os << "*xi" << (i + 1) << (e > 1 ? "^" + std::to_string(e) : "");
        }
        if (int e = exponent(k, kRhoSlot)) os << "*rho" << (e > 1 ? "^" + std::to_string(e) : "");
        first = false;
    }
    if (first) os << "0";
    os << " + O(" << cap_ + 1 << ")";
    return os.str();
}

JetMatrix::JetMatrix(int dim, int cap) : n(dim), a(static_cast<std::size_t>(dim * dim), Jet(dim, cap)) {}

JetMatrix JetMatrix::identity(int dim, int cap) {
    JetMatrix m(dim, cap);
    for (int i = 0; i < dim; ++i) m(i, i) = Jet::constant(dim, cap, Q(1));
    return m;
}

int JetMatrix::cap() const {
    int c = a.empty() ? -1 : a.front().cap();
    for (auto& j : a) c = std::min(c, j.cap());
    return c;
}

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix r = a;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += b.a[i];
    return r;
}

JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix r = a;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= b.a[i];
    return r;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix r(a.n, std::min(a.cap(), b.cap()));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            Jet s(a.n, r.cap());
            for (int k = 0; k < a.n; ++k)
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

JetMatrix operator*(const Q& s, const JetMatrix& a) {
    JetMatrix r = a;
    for (auto& j : r.a) j = s * j;
    return r;
}

std::vector<std::vector<Q>> mat_at_origin(const JetMatrix& m) {
    std::vector<std::vector<Q>> r(static_cast<std::size_t>(m.n), std::vector<Q>(static_cast<std::size_t>(m.n)));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r[i][j] = m(i, j).at_origin();
    return r;
}

std::vector<std::vector<Q>> q_inverse(const std::vector<std::vector<Q>>& m) {
    std::size_t n = m.size();
    std::vector<std::vector<Q>> a = m, inv(n, std::vector<Q>(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Q p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Q f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

JetMatrix mat_inverse(const JetMatrix& m) {
    const int n = m.n, cap = m.cap();
    auto a0 = q_inverse(mat_at_origin(m));
    JetMatrix e = m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e(i, j) = m(i, j) - Jet::constant(n, cap, m(i, j).at_origin());
    // Neumann series: sum_k (-A0 E)^k A0.
    JetMatrix step(n, cap), term(n, cap);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet s(n, cap);
            for (int k = 0; k < n; ++k)
                if (a0[i][k] != 0) s += (-a0[i][k]) * e(k, j);
            step(i, j) = s;
            term(i, j) = Jet::constant(n, cap, a0[i][j]);
        }
    JetMatrix sum = term;
    while (true) {
        term = step * term;
        if (std::all_of(term.a.begin(), term.a.end(), [](const Jet& j) { return j.is_zero(); })) break;
        sum = sum + term;
    }
    return sum;
}

Jet mat_trace(const JetMatrix& m) {
    Jet s(m.n, m.cap());
    for (int i = 0; i < m.n; ++i) s += m(i, i);
    return s;
}

bool mat_agrees(const JetMatrix& a, const JetMatrix& b) {
    for (std::size_t i = 0; i < a.a.size(); ++i)
        if (!a.a[i].agrees(b.a[i])) return false;
    return true;
}

JetTensor::JetTensor(int dim, int r, int cap)
    : n(dim), rank(r), c(QTensor::ipow(dim, r), Jet(dim, cap)) {}

std::size_t JetTensor::index(std::initializer_list<int> idx) const {
    std::size_t k = 0;
    for (int i : idx) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    return k;
}

int JetTensor::cap() const {
    int m = c.empty() ? -1 : c.front().cap();
    for (auto& j : c) m = std::min(m, j.cap());
    return m;
}

std::size_t QTensor::index(std::initializer_list<int> idx) const {
    std::size_t k = 0;
    for (int i : idx) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    return k;
}

QTensor tensor_at_origin(const JetTensor& t) {
    QTensor q(t.n, t.rank);
    for (std::size_t i = 0; i < t.c.size(); ++i) q.c[i] = t.c[i].at_origin();
    return q;
}

QTensor raise(const QTensor& t, int slot, const std::vector<std::vector<Q>>& ginv) {
    QTensor r(t.n, t.rank);
    std::size_t stride = QTensor::ipow(t.n, t.rank - 1 - slot);
    for (std::size_t i = 0; i < t.c.size(); ++i) {
        std::size_t a = (i / stride) % static_cast<std::size_t>(t.n);
        std::size_t base = i - a * stride;
        Q s(0);
        for (int b = 0; b < t.n; ++b) {
            const Q& g = ginv[a][static_cast<std::size_t>(b)];
            if (g != 0) s += g * t.c[base + static_cast<std::size_t>(b) * stride];
        }
        r.c[i] = s;
    }
    return r;
}

Q contract(const QTensor& a, const QTensor& b) {
    Q s(0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != 0 && b.c[i] != 0) s += a.c[i] * b.c[i];
    return s;
}

}  // namespace holo
