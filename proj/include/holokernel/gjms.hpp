#pragma once

#include "holokernel/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace holo {

struct Composition {
    std::vector<int> parts;

    Composition() = default;
    Composition(std::vector<int> p);
    Composition(std::initializer_list<int> p) : Composition(std::vector<int>(p)) {}

    int size() const;
    int length() const { return static_cast<int>(parts.size()); }
    Composition reversed() const;
    std::string str() const;
    friend bool operator<(const Composition& a, const Composition& b) { return a.parts < b.parts; }
    friend bool operator==(const Composition& a, const Composition& b) { return a.parts == b.parts; }
};

// All 2^{N-1} compositions of N in lexicographic order.
std::vector<Composition> compositions(int N);

struct CoeffPair {
    Q m, n;
};
CoeffPair coeff_pair(const Composition& I);
Q m_coeff(const Composition& I);
Q n_coeff(const Composition& I);

// Words over an abstract alphabet; the word (a,b,...) is X_{2a} X_{2b} ...
class FreeAlgebraElement {
public:
    using Word = std::vector<int>;

    FreeAlgebraElement() = default;
    static FreeAlgebraElement word(Word w, const Q& c = Q(1));

    void add(const Word& w, const Q& c);
    const std::map<Word, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend FreeAlgebraElement operator+(const FreeAlgebraElement& a, const FreeAlgebraElement& b);
    friend FreeAlgebraElement operator*(const FreeAlgebraElement& a, const FreeAlgebraElement& b);
    friend bool operator==(const FreeAlgebraElement& a, const FreeAlgebraElement& b) {
        return a.terms_ == b.terms_;
    }
    std::string str(const std::string& letter) const;

private:
    std::map<Word, Q> terms_;
};

// M_{2N} as a combination of P-words, and P_{2N} as a combination of M-words.
FreeAlgebraElement expand_M_in_P(int N);
FreeAlgebraElement expand_P_in_M(int N);
// Replace every letter k by images[k] (1-based) and expand.
FreeAlgebraElement substitute(const FreeAlgebraElement& e, const std::vector<FreeAlgebraElement>& images);

bool verify_inversion(int N);
// Sum I_1(I_1+I_2) + ... + (I_1+...+I_{r-1})(I_{r-1}+I_r).
Q bracket_sum(const Composition& I);
bool bracket_identity_check(const Composition& I);

// Sphere image of P_{2N}: substitute M_{2k} -> k (k-1)!^2 x in expand_P_in_M(N).
Poly sphere_image_of_P(int N);
bool sphere_factorization(int N);

// Generating-function weights: coefficient of M_{2N} in H (at (r^2)^{N-1})
// and in K (at (r^2)^N).
Q h_weight(int N);
Q k_weight(int N);

}  // namespace holo
