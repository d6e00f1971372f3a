#include "holokernel/variational.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace holo {

namespace {

using R = RingElement;

R binom_sym(const R& top, long k) {
    if (k < 0) return R(0);
    R r(1);
    for (long i = 0; i < k; ++i) r *= (top - R(i));
    return r / R(Q(factorial(k)));
}

long require_int(const R& n, const char* what) {
    if (!n.is_constant()) throw std::invalid_argument(std::string(what) + ": n must be numeric");
    Q v = n.constant_value();
    if (v.get_den() != 1) throw std::invalid_argument(std::string(what) + ": n must be an integer");
    return v.get_num().get_si();
}

R mu_sym() { return R::sym("mu"); }
R c_sym() { return R::sym("c"); }

// ---- univariate polynomials over Q, index = degree ----
using UP = std::vector<Q>;

void trim(UP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
int deg(const UP& p) { return static_cast<int>(p.size()) - 1; }

Q eval(const UP& p, const Q& x) {
    Q r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

UP deriv(const UP& p) {
    UP d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Q(static_cast<long>(i)));
    trim(d);
    return d;
}

UP sub(const UP& a, const UP& b) {
    UP r(std::max(a.size(), b.size()), Q(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

UP mul(const UP& a, const UP& b) {
    if (a.empty() || b.empty()) return {};
    UP r(a.size() + b.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Quotient and remainder.
std::pair<UP, UP> divmod(UP a, const UP& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    trim(a);
    UP q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Q(0));
    while (!a.empty() && deg(a) >= deg(b)) {
        int s = deg(a) - deg(b);
        Q f = a.back() / b.back();
        q[static_cast<std::size_t>(s)] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + static_cast<std::size_t>(s)] -= f * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

UP monic(UP p) {
    trim(p);
    if (p.empty()) return p;
    Q lc = p.back();
    for (auto& x : p) x /= lc;
    return p;
}

UP gcd(UP a, UP b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UP r = divmod(a, b).second;
        a = b;
        b = r;
    }
    return monic(a);
}

UP quo(const UP& a, const UP& b) { return divmod(a, b).first; }

// Yun: f = prod a_i^i with a_i square-free and pairwise coprime.
std::vector<UP> square_free(const UP& f) {
    std::vector<UP> out;
    UP d = deriv(f);
    UP a0 = gcd(f, d);
    UP b = quo(f, a0);
    UP c = quo(d, a0);
    UP dd = sub(c, deriv(b));
    while (deg(b) > 0) {
        UP a = gcd(b, dd);
        out.push_back(a);
        b = quo(b, a);
        c = quo(dd, a);
        dd = sub(c, deriv(b));
    }
    return out;
}

int sgn(const Q& x) { return ::sgn(x); }

int sign_changes(const std::vector<int>& s) {
    int count = 0, last = 0;
    for (int v : s) {
        if (v == 0) continue;
        if (last != 0 && v != last) ++count;
        last = v;
    }
    return count;
}

// Distinct real roots of a square-free p in (a, +inf), assuming p(a) != 0.
int roots_above(const UP& p, const Q& a) {
    if (deg(p) <= 0) return 0;
    std::vector<UP> seq{p, deriv(p)};
    while (true) {
        UP r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        seq.push_back(r);
    }
    std::vector<int> at_a, at_inf;
    for (auto& s : seq) {
        at_a.push_back(sgn(eval(s, a)));
        at_inf.push_back(sgn(s.back()));
    }
    return sign_changes(at_a) - sign_changes(at_inf);
}

// Divide out every factor (m - a).
UP strip_root(UP p, const Q& a) {
    while (deg(p) > 0 && eval(p, a) == 0) p = quo(p, UP{-a, Q(1)});
    return p;
}

// Sign of x after c -> sign * t, pi -> positive; x must be a monomial form in t.
int homogeneous_sign(const R& x, int sign_of_c) {
    R t = R::sym("t_hom");
    R y = x.subs("c", R(sign_of_c) * t);
    if (y.is_zero()) return 0;
    auto single = [](const Poly& p) { return p.size() == 1; };
    if (!single(y.num()) || !single(y.den()))
        throw std::invalid_argument("classification needs a homogeneous value in c: " + x.str());
    for (auto& [v, e] : y.num().terms().begin()->first)
        if (symbol_name(v) != "t_hom" && symbol_name(v) != "pi")
            throw std::invalid_argument("unbound symbol in classification: " + symbol_name(v));
    for (auto& [v, e] : y.den().terms().begin()->first)
        if (symbol_name(v) != "t_hom" && symbol_name(v) != "pi")
            throw std::invalid_argument("unbound symbol in classification: " + symbol_name(v));
    return sgn(y.num().leading_coeff()) * sgn(y.den().leading_coeff());
}

bool in_kernel(const HessianForm& f, const R& mu) {
    return std::any_of(f.kernel_roots.begin(), f.kernel_roots.end(), [&](const R& k) { return k == mu; });
}

Classification from_signs(bool pos, bool neg, bool degenerate, bool other_zero) {
    Classification c;
    if (other_zero || (pos && neg)) return c;
    Extremum dir = pos ? Extremum::LocalMin : neg ? Extremum::LocalMax : Extremum::Indefinite;
    if (degenerate) {
        c.kind = Extremum::DegenerateAlongConformalKilling;
        c.semidefinite = dir;
    } else {
        c.kind = dir;
    }
    return c;
}

}  // namespace

R HessianForm::value(const R& mu) const { return prefactor * eigen_poly.subs("mu", mu); }

HessianForm HessianForm::scaled(const R& s) const {
    HessianForm f = *this;
    f.prefactor = prefactor * s;
    return f;
}

std::string HessianForm::str() const {
    std::ostringstream os;
    os << hessian_kind_name(kind) << ": (" << prefactor.str() << ") * (" << eigen_poly.str() << ")";
    os << " kernel {";
    for (std::size_t i = 0; i < kernel_roots.size(); ++i) os << (i ? ", " : "") << kernel_roots[i].str();
    os << "}" << (excludes_constants ? " unit-volume" : " full class");
    return os.str();
}

std::string hessian_kind_name(HessianKind k) {
    switch (k) {
        case HessianKind::F2k: return "F2k";
        case HessianKind::RV: return "RV";
        case HessianKind::Wcrit: return "Wcrit";
        case HessianKind::Wsub: return "Wsub";
        case HessianKind::DET2: return "DET2";
        case HessianKind::DET4: return "DET4";
        case HessianKind::DET6: return "DET6";
        case HessianKind::A42: return "A42";
    }
    return "?";
}

HessianKind parse_hessian_kind(const std::string& s) {
    for (HessianKind k : {HessianKind::F2k, HessianKind::RV, HessianKind::Wcrit, HessianKind::Wsub,
                          HessianKind::DET2, HessianKind::DET4, HessianKind::DET6, HessianKind::A42})
        if (hessian_kind_name(k) == s) return k;
    throw std::invalid_argument("unknown hessian kind: " + s);
}

HessianForm hessian_form(HessianKind kind, const R& n, int k) {
    const R c = c_sym(), mu = mu_sym();
    const R lap = -mu;  // Delta acts by -mu
    const R top = R(4) * n * c;
    HessianForm f;
    f.kind = kind;
    switch (kind) {
        case HessianKind::F2k: {
            if (k < 1) throw std::invalid_argument("F2k needs k >= 1");
            f.prefactor = (n - R(2 * k)) * R(Q(1, 2)) * binom_sym(n - R(1), k - 1) * (-c).pow(k - 1);
            f.eigen_poly = top - mu;
            f.kernel_roots = {top};
            f.original = "(n-2k)(1/2)binom(n-1,k-1)(-c)^(k-1) int phi (4nc + Delta) phi";
            break;
        }
        case HessianKind::RV: {
            long nn = require_int(n, "RV");
            if (nn < 2 || nn % 2) throw std::invalid_argument("RV needs even n");
            long h = nn / 2;
            f.prefactor = (-c).pow(static_cast<int>(h - 1)) * R(Q(1, 2)) * R(Q(binom(nn - 1, h - 1)));
            f.eigen_poly = top - mu;
            f.kernel_roots = {top};
            f.original = "(-c)^(n/2-1)(1/2)binom(n-1,n/2-1) int phi (4nc + Delta) phi";
            break;
        }
        case HessianKind::Wcrit: {
            long nn = require_int(n, "Wcrit");
            if (nn < 4 || nn % 2) throw std::invalid_argument("Wcrit needs even n >= 4");
            long h = nn / 2;
            f.prefactor = R(Q(1, 2)) * R(Q(binom(nn - 4, h - 2))) * (-c).pow(static_cast<int>(h - 2));
            f.eigen_poly = lap * (top - mu);
            f.kernel_roots = {R(0), top};
            f.excludes_constants = false;
            f.original = "(1/2)binom(n-4,n/2-2)(-c)^(n/2-2) int phi Delta (4cn + Delta) phi";
            break;
        }
        case HessianKind::Wsub: {
            long nn = require_int(n, "Wsub");
            if (k < 1) throw std::invalid_argument("Wsub needs k >= 1");
            if (2 * k == nn - 2) return hessian_form(HessianKind::Wcrit, n, 0);
            // Generalized binomials: n = 3 needs binom(-1, k - 1).
            R A = R(nn - 2 - 2 * k) * (-c).pow(k) * R(Q(nn, 2)) *
                  (R(2) * R(binom(Q(nn - 3), k - 1)) + R(nn) * R(binom(Q(nn - 3), k - 2)));
            R B = R(Q(1, 2)) * R(binom(Q(nn - 4), k - 1)) * (-c).pow(k - 1);
            f.prefactor = R(1);
            f.eigen_poly = (top - mu) * (A + B * lap);
            f.kernel_roots = {top};
            f.original = "int phi (4cn + Delta)(A + B Delta) phi";
            break;
        }
        case HessianKind::DET2: {
            if (require_int(n, "DET2") != 2) throw std::invalid_argument("DET2 needs n = 2");
            f.prefactor = R(Q(2, 3)) / (R(4) * R::pi());
            f.eigen_poly = R(8) * c - mu;
            f.kernel_roots = {R(8) * c};
            f.original = "(2/3)/(4 pi) int phi (Delta + 8c) phi";
            break;
        }
        case HessianKind::DET4: {
            if (require_int(n, "DET4") != 4) throw std::invalid_argument("DET4 needs n = 4");
            f.prefactor = R(Q(1, 15)) / (R(4) * R::pi()).pow(2);
            f.eigen_poly = (mu + R(8) * c) * (mu - R(16) * c);
            f.kernel_roots = {R(16) * c};
            f.original = "(1/15)/(4 pi)^2 int phi (Delta - 8c)(Delta + 16c) phi";
            break;
        }
        case HessianKind::DET6: {
            if (require_int(n, "DET6") != 6) throw std::invalid_argument("DET6 needs n = 6");
            f.prefactor = R(Q(1, 630)) / (R(4) * R::pi()).pow(3);
            f.eigen_poly = (R(24) * c - mu) * (R(3) * mu * mu + R(120) * c * mu + R(1600) * c * c);
            f.kernel_roots = {R(24) * c};
            f.original = "(1/630)/(4 pi)^3 int phi (Delta + 24c)(3 Delta^2 - 120c Delta + 1600c^2) phi";
            break;
        }
        case HessianKind::A42: {
            if (require_int(n, "A42") != 6) throw std::invalid_argument("A42 needs n = 6");
            f.prefactor = R(1);
            f.eigen_poly = R(-2) * lap * (R(24) * c - mu);
            f.kernel_roots = {R(0), R(24) * c};
            f.excludes_constants = false;
            f.original = "-2 int phi Delta (Delta + 24c) phi";
            break;
        }
    }
    return f;
}

std::vector<R> sphere_spectrum(int n, const R& c, int jmax) {
    std::vector<R> out;
    for (int j = 0; j <= jmax; ++j) out.push_back(R(4) * c * R(j) * R(j + n - 1));
    return out;
}

std::string extremum_name(Extremum e) {
    switch (e) {
        case Extremum::LocalMax: return "LocalMax";
        case Extremum::LocalMin: return "LocalMin";
        case Extremum::Indefinite: return "Indefinite";
        case Extremum::DegenerateAlongConformalKilling: return "DegenerateAlongConformalKilling";
    }
    return "?";
}

std::string Classification::str() const {
    if (kind == Extremum::DegenerateAlongConformalKilling)
        return extremum_name(kind) + "(" + extremum_name(semidefinite) + ")";
    return extremum_name(kind);
}

Classification classify_extremum(const HessianForm& form, const std::vector<R>& spectrum, int sign_of_c) {
    bool pos = false, neg = false, degenerate = false, other_zero = false;
    for (const R& mu : spectrum) {
        if (form.excludes_constants && mu.is_zero()) continue;
        int s = homogeneous_sign(form.value(mu), sign_of_c);
        if (s > 0) pos = true;
        else if (s < 0) neg = true;
        else if (mu.is_zero() && in_kernel(form, mu)) continue;
        else if (in_kernel(form, mu)) degenerate = true;
        else other_zero = true;
    }
    return from_signs(pos, neg, degenerate, other_zero);
}

Classification classify_extremum_interval(const HessianForm& form, const R& lower, int sign_of_c) {
    // Homogeneity: c = sign, mu = m, pi = 1 gives the sign up to positive factors.
    R val = form.value(R::sym("m_int")).subs("c", R(sign_of_c)).subs("pi", R(1));
    if (!val.den().is_constant()) throw std::invalid_argument("classification needs polynomial values");
    const int var = symbol("m_int");
    Q dsign = val.den().constant_value();
    UP f;
    for (auto& [e, coeff] : val.num().coeffs_in(var)) {
        if (!coeff.is_constant()) throw std::invalid_argument("unbound symbol in classification: " + val.str());
        if (static_cast<int>(f.size()) <= e) f.resize(static_cast<std::size_t>(e) + 1, Q(0));
        f[static_cast<std::size_t>(e)] = coeff.constant_value() / dsign;
    }
    trim(f);
    if (f.empty()) return {};
    R lo = lower.subs("c", R(sign_of_c));
    if (!lo.is_constant()) throw std::invalid_argument("interval bound must be numeric in c");
    Q a = lo.constant_value();

    auto parts = square_free(f);
    UP odd{Q(1)}, even{Q(1)};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if ((i + 1) % 2) odd = mul(odd, parts[i]);
        else even = mul(even, parts[i]);
    }
    if (roots_above(strip_root(odd, a), a) > 0) return {};
    if (roots_above(strip_root(even, a), a) > 0) return {};
    // No zero in (a, inf): the sign at a point beyond every root decides.
    Q bound(1);
    for (auto& x : f) bound += abs(x / f.back());
    Q probe = (a > 0 ? a : Q(0)) + bound + 1;
    int s = sgn(eval(f, probe));
    Classification c;
    c.kind = s > 0 ? Extremum::LocalMin : Extremum::LocalMax;
    return c;
}

RvcVariationReport rvc_model_variation(const ModelGeometry& m, const R& mu, int order) {
    if (!m.is_einstein_family()) throw std::invalid_argument("rvc_model_variation needs an Einstein model");
    RvcVariationReport rep;
    const R n = m.n(), c = m.c();
    const int inner = std::max(order, 5) + 2;
    EvenSeries v = volume_series(m, inner).v;
    EvenSeries ell = L_series(m, inner).front().value;
    EvenSeries vr = v.derivative();
    EvenSeries vrr = vr.derivative();

    // Constant phi: -2 rho v_rho against -2 c d/dc v on the symbolic family.
    {
        const R cs = R::sym("c_scale");
        EvenSeries vs = volume_series(ModelGeometry::einstein(n, cs), order + 1).v;
        EvenSeries lhs = R(-2) * vs.derivative().shift();
        EvenSeries rhs(order);
        for (int k = 0; k <= order; ++k) rhs[k] = R(-2) * cs * vs[k].derivative(symbol("c_scale"));
        rep.scaling = series_equal(lhs.truncate(order), rhs);
    }

    // (v'/v)^bullet divided by r phi.
    {
        EvenSeries vinv = v.inverse();
        EvenSeries rho_vr = vr.shift();
        EvenSeries s = R(4) * (rho_vr * vr * vinv * vinv) - (R(2) * vr + R(4) * vrr.shift()) * vinv -
                       R(2) * vr * vinv - R(2) * mu * ((ell + ell.derivative().shift()) * vinv) +
                       R(2) * mu * (rho_vr * ell * vinv * vinv);
        EvenSeries target = R(R(4) * c * n - mu) * binomial_power_series(c, R(-2), order);
        rep.log_v_var = series_equal(s.truncate(order), target);
    }

    // Generating function G = -(2 rho v_rho + mu rho l); (n - 2 rho d_rho) G.
    {
        EvenSeries g = -(R(2) * vr.shift() + mu * ell.shift());
        bool ok = true;
        for (int k = 1; k <= std::min(5, order); ++k) {
            R lhs = (n - R(2 * k)) * g[k];
            ok = ok && lhs == hessian_form(HessianKind::F2k, n, k).value(mu).subs("c", c);
        }
        rep.second_gf = ok;
    }

    if (m.kind() == ModelGeometry::Kind::Sphere) {
        long nn = require_int(n, "kappa0");
        EvenSeries lhs = mu * ell.shift();
        EvenSeries rhs = R(Q(1, 2)) * mu * binomial_power_series(R(Q(1, 4)), R(nn - 1), order).shift();
        rep.kappa0 = series_equal(lhs.truncate(order), rhs.truncate(order));
    }

    {
        bool ok = true;
        for (int k = 1; k <= 4; ++k) {
            R lhs = -(n - R(2 * k)) * (R(2 * k) * v[k] + mu * ell[k - 1]);
            R rhs = (n - R(2 * k)) * binom_sym(n - R(1), k - 1) * R(Q(1, 2)) * (-c).pow(k - 1) *
                    (R(4) * n * c - mu);
            ok = ok && lhs == rhs;
        }
        rep.tilde_f = ok;
    }
    return rep;
}

}  // namespace holo
