#include "holokernel/gjms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace holo {

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw std::invalid_argument("composition must be nonempty");
    for (int x : parts)
        if (x < 1) throw std::invalid_argument("composition parts must be positive");
}

int Composition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Composition Composition::reversed() const { return Composition(std::vector<int>(parts.rbegin(), parts.rend())); }

std::string Composition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

std::vector<Composition> compositions(int N) {
    if (N < 1) throw std::invalid_argument("compositions need N >= 1");
    std::vector<Composition> out;
    // bit i of mask set: cut after position i+1
    for (unsigned mask = 0; mask < (1u << (N - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < N - 1; ++i) {
            if (mask & (1u << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.emplace_back(std::move(parts));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Q m_coeff(const Composition& I) {
    int N = I.size(), r = I.length();
    Q m(factorial(N) * factorial(N - 1));
    if (r % 2 == 0) m = -m;
    for (int x : I.parts) m /= Q(factorial(x) * factorial(x - 1));
    for (int j = 0; j + 1 < r; ++j) m /= I.parts[static_cast<std::size_t>(j)] + I.parts[static_cast<std::size_t>(j) + 1];
    return m;
}

Q n_coeff(const Composition& I) {
    int r = I.length();
    Z n(1);
    for (int j = 0; j < r; ++j) {
        int left = 0, right = 0;
        for (int k = 0; k <= j; ++k) left += I.parts[static_cast<std::size_t>(k)];
        for (int k = j; k < r; ++k) right += I.parts[static_cast<std::size_t>(k)];
        int a = I.parts[static_cast<std::size_t>(j)] - 1;
        n *= binom(left - 1, a) * binom(right - 1, a);
    }
    return Q(n);
}

CoeffPair coeff_pair(const Composition& I) { return {m_coeff(I), n_coeff(I)}; }

FreeAlgebraElement FreeAlgebraElement::word(Word w, const Q& c) {
    FreeAlgebraElement e;
    e.add(w, c);
    return e;
}

void FreeAlgebraElement::add(const Word& w, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

FreeAlgebraElement operator+(const FreeAlgebraElement& a, const FreeAlgebraElement& b) {
    FreeAlgebraElement r(a);
    for (auto& [w, c] : b.terms_) r.add(w, c);
    return r;
}

FreeAlgebraElement operator*(const FreeAlgebraElement& a, const FreeAlgebraElement& b) {
    FreeAlgebraElement r;
    for (auto& [wa, ca] : a.terms_)
        for (auto& [wb, cb] : b.terms_) {
            FreeAlgebraElement::Word w(wa);
            w.insert(w.end(), wb.begin(), wb.end());
            r.add(w, ca * cb);
        }
    return r;
}

std::string FreeAlgebraElement::str(const std::string& letter) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [w, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += "(" + to_string(c) + ")*";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += "*";
            s += letter + std::to_string(2 * w[i]);
        }
    }
    return s;
}

FreeAlgebraElement expand_M_in_P(int N) {
    FreeAlgebraElement e;
    for (auto& I : compositions(N)) e.add(I.parts, m_coeff(I));
    return e;
}

FreeAlgebraElement expand_P_in_M(int N) {
    FreeAlgebraElement e;
    for (auto& I : compositions(N)) e.add(I.parts, n_coeff(I));
    return e;
}

FreeAlgebraElement substitute(const FreeAlgebraElement& e, const std::vector<FreeAlgebraElement>& images) {
    FreeAlgebraElement out;
    for (auto& [w, c] : e.terms()) {
        FreeAlgebraElement prod = FreeAlgebraElement::word({}, c);
        for (int letter : w) prod = prod * images.at(static_cast<std::size_t>(letter));
        out = out + prod;
    }
    return out;
}

bool verify_inversion(int N) {
    if (N < 1) throw std::invalid_argument("verify_inversion needs N >= 1");
    std::vector<FreeAlgebraElement> m_images(static_cast<std::size_t>(N) + 1), p_images(static_cast<std::size_t>(N) + 1);
    for (int k = 1; k <= N; ++k) {
        m_images[static_cast<std::size_t>(k)] = expand_M_in_P(k);
        p_images[static_cast<std::size_t>(k)] = expand_P_in_M(k);
    }
    FreeAlgebraElement target = FreeAlgebraElement::word({N});
    return substitute(expand_P_in_M(N), m_images) == target && substitute(expand_M_in_P(N), p_images) == target;
}

Q bracket_sum(const Composition& I) {
    Q s(0);
    int r = I.length();
    int prefix = 0;
    for (int j = 0; j + 1 < r; ++j) {
        prefix += I.parts[static_cast<std::size_t>(j)];
        s += prefix * (I.parts[static_cast<std::size_t>(j)] + I.parts[static_cast<std::size_t>(j) + 1]);
    }
    return s;
}

bool bracket_identity_check(const Composition& I) {
    int r = I.length();
    if (r < 2) return true;
    int N = I.size();
    int last = I.parts.back();
    if (bracket_sum(I) != Q(N * (N - last))) return false;

    // -(N - I_r) m_I = sum_a binom(N-1, I_1+..+I_a-1)^2 (N - I_1-..-I_a) m_(I_1..I_a) m_(I_{a+1}..I_r)
    Q rhs(0);
    int prefix = 0;
    for (int a = 1; a < r; ++a) {
        prefix += I.parts[static_cast<std::size_t>(a) - 1];
        Composition head(std::vector<int>(I.parts.begin(), I.parts.begin() + a));
        Composition tail(std::vector<int>(I.parts.begin() + a, I.parts.end()));
        Z b = binom(N - 1, prefix - 1);
        rhs += Q(b * b) * (N - prefix) * m_coeff(head) * m_coeff(tail);
    }
    return rhs == -Q(N - last) * m_coeff(I);
}

Poly sphere_image_of_P(int N) {
    int x = symbol("x");
    Poly out;
    FreeAlgebraElement p = expand_P_in_M(N);
    for (auto& [w, c] : p.terms()) {
        Poly t(c);
        for (int k : w) {
            Z f = factorial(k - 1);
            t = t * Poly(Q(f * f * k)) * Poly::var(x);
        }
        out += t;
    }
    return out;
}

bool sphere_factorization(int N) {
    Poly x = Poly::var("x");
    Poly target(1);
    for (int k = 0; k < N; ++k) target = target * (x + Poly(static_cast<long>(k) * (k + 1)));
    return sphere_image_of_P(N) == target;
}

Q h_weight(int N) {
    Z f = factorial(N - 1);
    return Q(1) / Q(f * f * (Z(1) << (2 * (N - 1))));
}

Q k_weight(int N) { return Q(1) / Q(factorial(N) * factorial(N - 1) * (Z(1) << (2 * N))); }

}  // namespace holo
