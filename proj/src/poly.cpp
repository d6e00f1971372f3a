#include "holokernel/poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace holo {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::deque<std::string> names;
    std::unordered_map<std::string, int> ids;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

int symbol(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    int id = static_cast<int>(t.names.size());
    t.names.push_back(name);
    t.ids.emplace(name, id);
    return id;
}

const std::string& symbol_name(int id) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.names.at(static_cast<std::size_t>(id));
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    std::size_t i = 0, j = 0;
    while (true) {
        if (i == a.size()) return j != b.size();
        if (j == b.size()) return false;
        if (a[i].first < b[j].first) return false;
        if (b[j].first < a[i].first) return true;
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i;
        ++j;
    }
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

int mono_degree(const Mono& m) {
    int d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

int mono_exponent(const Mono& m, int var) {
    for (auto& [v, e] : m)
        if (v == var) return e;
    return 0;
}

Poly::Poly(long c) {
    if (c != 0) terms_.emplace(Mono{}, Q(c));
}

Poly::Poly(const Q& c) {
    if (c != 0) {
        Q v(c);
        v.canonicalize();
        terms_.emplace(Mono{}, v);
    }
}

Poly Poly::var(int id, int exp) {
    Poly p;
    if (exp == 0) return Poly(1);
    p.terms_.emplace(Mono{{id, exp}}, Q(1));
    return p;
}

Poly Poly::monomial(const Mono& m, const Q& c) {
    Poly p;
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Mono& m, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Q Poly::constant_value() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? Q(0) : it->second;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Q& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    Q tmp;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) {
            tmp = ca * cb;
            r.add_term(mono_mul(ma, mb), tmp);
        }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(1), b(*this);
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Poly Poly::derivative(int var) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        Mono nm;
        int e = 0;
        for (auto& [v, x] : m) {
            if (v == var) {
                e = x;
                if (x > 1) nm.emplace_back(v, x - 1);
            } else {
                nm.emplace_back(v, x);
            }
        }
        if (e) r.add_term(nm, c * e);
    }
    return r;
}

Poly Poly::subs(int var, const Poly& value) const {
    // Group by exponent of var, then Horner-free accumulation with cached powers.
    auto cs = coeffs_in(var);
    Poly r;
    std::map<int, Poly> powers;
    for (auto& [e, c] : cs) {
        if (e == 0) {
            r += c;
            continue;
        }
        auto it = powers.find(e);
        if (it == powers.end()) it = powers.emplace(e, value.pow(static_cast<unsigned>(e))).first;
        r += c * it->second;
    }
    return r;
}

Q Poly::eval(const std::map<int, Q>& values) const {
    Q r(0);
    for (auto& [m, c] : terms_) {
        Q t(c);
        for (auto& [v, e] : m) {
            auto it = values.find(v);
            if (it == values.end()) throw std::invalid_argument("unbound symbol " + symbol_name(v));
            t *= qpow(it->second, e);
        }
        r += t;
    }
    return r;
}

bool Poly::has_var(int var) const {
    for (auto& [m, c] : terms_)
        if (mono_exponent(m, var)) return true;
    return false;
}

int Poly::degree(int var) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, mono_exponent(m, var));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

std::vector<int> Poly::variables() const {
    std::vector<int> vs;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::map<int, Poly> Poly::coeffs_in(int var) const {
    std::map<int, Poly> out;
    for (auto& [m, c] : terms_) {
        Mono rest;
        int e = 0;
        for (auto& p : m) {
            if (p.first == var)
                e = p.second;
            else
                rest.push_back(p);
        }
        out[e].add_term(rest, c);
    }
    return out;
}

Poly Poly::lc_in(int var) const {
    auto cs = coeffs_in(var);
    return cs.empty() ? Poly() : cs.rbegin()->second;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r(*this);
    Q inv = Q(1) / leading_coeff();
    return r *= inv;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono& m = it->first;
        Q c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        std::string ms;
        for (auto& [v, e] : m) {
            if (!ms.empty()) ms += "*";
            ms += symbol_name(v);
            if (e != 1) ms += "^" + std::to_string(e);
        }
        if (ms.empty())
            s += to_string(c);
        else if (c == 1)
            s += ms;
        else
            s += to_string(c) + "*" + ms;
    }
    return s;
}

namespace {

bool mono_divides(const Mono& d, const Mono& m, Mono& quot) {
    quot.clear();
    std::size_t j = 0;
    for (auto& [v, e] : m) {
        if (j < d.size() && d[j].first < v) return false;
        int de = 0;
        if (j < d.size() && d[j].first == v) de = d[j++].second;
        if (de > e) return false;
        if (e - de) quot.emplace_back(v, e - de);
    }
    return j == d.size();
}

Poly content_in(const Poly& a, int var) {
    Poly g;
    for (auto& [e, c] : a.coeffs_in(var)) {
        g = gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Poly primpart_in(const Poly& a, int var) {
    if (a.is_zero()) return a;
    return exact_div(a, content_in(a, var));
}

Poly prem(Poly a, const Poly& b, int var) {
    int db = b.degree(var);
    Poly lb = b.lc_in(var);
    while (!a.is_zero() && a.degree(var) >= db) {
        int d = a.degree(var) - db;
        Poly la = a.lc_in(var);
        a = lb * a - la * Poly::var(var, d) * b;
    }
    return a;
}

}  // namespace

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (b.is_constant()) return Poly(a) *= Q(Q(1) / b.constant_value());
    Poly q, r(a);
    const Mono& lm = b.leading_mono();
    const Q& lc = b.leading_coeff();
    Mono qm;
    while (!r.is_zero()) {
        if (!mono_divides(lm, r.leading_mono(), qm)) throw std::domain_error("inexact polynomial division");
        Q qc = r.leading_coeff() / lc;
        Poly t = Poly::monomial(qm, qc);
        q += t;
        r -= t * b;
    }
    return q;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return a.monic();
    auto va = a.variables(), vb = b.variables();
    int x = std::min(va.front(), vb.front());
    bool ha = a.has_var(x), hb = b.has_var(x);
    if (!ha) return gcd(a, content_in(b, x));
    if (!hb) return gcd(content_in(a, x), b);
    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly g = gcd(ca, cb);
    Poly pa = exact_div(a, ca), pb = exact_div(b, cb);
    if (pa.degree(x) < pb.degree(x)) std::swap(pa, pb);
    while (true) {
        Poly r = prem(pa, pb, x);
        pa = pb;
        if (r.is_zero()) break;
        if (!r.has_var(x)) {
            pa = Poly(1);
            break;
        }
        pb = primpart_in(r, x);
    }
    return (primpart_in(pa, x) * g).monic();
}

}  // namespace holo
