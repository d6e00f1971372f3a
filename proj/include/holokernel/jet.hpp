#pragma once

#include "holokernel/exact.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace holo {

// Truncated polynomial at the origin in x_1..x_n (weight 1), fiber
// variables xi_1..xi_n (weight 0) and rho (weight 2). Terms of weighted
// degree above cap() are unknown; arithmetic tracks the smallest cap.
class Jet {
public:
    using Key = std::uint64_t;
    static constexpr int kMaxDim = 7;
    static constexpr int kRhoSlot = 15;

    Jet() = default;
    Jet(int n, int cap);
    static Jet constant(int n, int cap, const Q& c);
    static Jet x(int n, int cap, int i);
    static Jet xi(int n, int cap, int i);
    static Jet rho(int n, int cap);

    int n() const { return n_; }
    int cap() const { return cap_; }

    static int exponent(Key k, int slot) { return static_cast<int>((k >> (4 * slot)) & 0xF); }
    static Key with_exponent(Key k, int slot, int e);
    int x_degree(Key k) const;
    int weight(Key k) const { return x_degree(k) + 2 * exponent(k, kRhoSlot); }
    static int xi_slot(int i) { return kMaxDim + i; }

    bool is_zero() const;
    Q coeff(Key k) const;
    Q at_origin() const { return coeff(0); }
    void add_term(Key k, const Q& c);
    // All terms, ordered by weight then key.
    std::vector<std::pair<Key, Q>> terms() const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(const Q& s, const Jet& a);

    Jet dx(int i) const;    // cap - 1
    Jet dxi(int i) const;   // cap unchanged
    Jet drho() const;       // cap - 2
    Jet times_rho() const;  // cap + 2
    Jet truncate(int cap) const;
    Jet at_x0() const;             // x = 0
    Jet rho_coeff(int k) const;    // coefficient of rho^k, cap - 2k
    // 1/f; f may not contain xi and needs a nonzero constant term.
    Jet inverse() const;
    // exp(f) for f without constant term.
    Jet exp() const;

    // Equality of all coefficients known to both sides.
    bool agrees(const Jet& o) const;
    std::string str() const;

private:
    void check_like(const Jet& o) const;
    std::vector<std::map<Key, Q>> b_;  // bucket by weight
    int n_ = 0;
    int cap_ = -1;
};

// n x n matrix of jets, row-major.
struct JetMatrix {
    int n = 0;
    std::vector<Jet> a;
    JetMatrix() = default;
    JetMatrix(int dim, int cap);
    static JetMatrix identity(int dim, int cap);
    Jet& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    const Jet& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
    int cap() const;
};

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator-(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
JetMatrix operator*(const Q& s, const JetMatrix& a);
JetMatrix mat_inverse(const JetMatrix& m);
Jet mat_trace(const JetMatrix& m);
bool mat_agrees(const JetMatrix& a, const JetMatrix& b);
std::vector<std::vector<Q>> mat_at_origin(const JetMatrix& m);
std::vector<std::vector<Q>> q_inverse(const std::vector<std::vector<Q>>& m);  // throws if singular

// Covariant tensor with jet components; index (i1..ir) flattened base n.
struct JetTensor {
    int n = 0;
    int rank = 0;
    std::vector<Jet> c;
    std::string symmetry;  // tag, e.g. "riemann", "symmetric", "cotton"
    JetTensor() = default;
    JetTensor(int dim, int r, int cap);
    std::size_t index(std::initializer_list<int> idx) const;
    Jet& operator()(std::initializer_list<int> idx) { return c[index(idx)]; }
    const Jet& operator()(std::initializer_list<int> idx) const { return c[index(idx)]; }
    int cap() const;
};

// Values at the origin of a tensor, flattened like JetTensor.
struct QTensor {
    int n = 0;
    int rank = 0;
    std::vector<Q> c;
    QTensor() = default;
    QTensor(int dim, int r) : n(dim), rank(r), c(ipow(dim, r), Q(0)) {}
    static std::size_t ipow(int b, int e) {
        std::size_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
        return r;
    }
    std::size_t index(std::initializer_list<int> idx) const;
    Q& operator()(std::initializer_list<int> idx) { return c[index(idx)]; }
    const Q& operator()(std::initializer_list<int> idx) const { return c[index(idx)]; }
};

QTensor tensor_at_origin(const JetTensor& t);
// Raise index slot s with the inverse metric at the origin.
QTensor raise(const QTensor& t, int slot, const std::vector<std::vector<Q>>& ginv);
// Full contraction sum_I a_I b_I.
Q contract(const QTensor& a, const QTensor& b);

}  // namespace holo
