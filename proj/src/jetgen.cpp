#include "holokernel/jetgen.hpp"

namespace holo {

long Rng::integer(long lo, long hi) {
    // Modular draw keeps the stream identical across standard libraries.
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
}

Q Rng::rational() {
    long num = integer(-5, 5);
    long den = integer(1, 4);
    return Q(num) / Q(den);
}

Q Rng::nonzero_rational() {
    Q r;
    do r = rational();
    while (r == 0);
    return r;
}

Jet random_poly(Rng& g, int n, int cap, int min_deg, int max_deg, int terms) {
    Jet p(n, cap);
    for (int t = 0; t < terms; ++t) {
        Jet m = Jet::constant(n, cap, g.rational());
        int deg = static_cast<int>(g.integer(min_deg, max_deg));
        for (int d = 0; d < deg; ++d) m = m * Jet::x(n, cap, static_cast<int>(g.integer(0, n - 1)));
        p += m;
    }
    return p;
}

Jet random_phi(Rng& g, int n, int cap, int min_deg, int max_deg) {
    Jet p;
    do p = random_poly(g, n, cap, min_deg, max_deg, 3);
    while (p.is_zero());
    return p;
}

std::vector<std::vector<Q>> random_symmetric(Rng& g, int n) {
    std::vector<std::vector<Q>> m(static_cast<std::size_t>(n), std::vector<Q>(static_cast<std::size_t>(n)));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i; j < m.size(); ++j) m[i][j] = m[j][i] = g.rational();
    return m;
}

QTensor random_curvature(Rng& g, int n) {
    QTensor r(n, 4);
    for (int t = 0; t < 2; ++t) {
        QTensor kn = kulkarni_nomizu(random_symmetric(g, n), random_symmetric(g, n));
        for (std::size_t e = 0; e < r.c.size(); ++e) r.c[e] += kn.c[e];
    }
    return r;
}

JetMatrix random_symmetric_jets(Rng& g, int n, int cap, int min_deg, int max_deg, int terms) {
    JetMatrix h(n, cap);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet e = random_poly(g, n, cap, min_deg, max_deg, terms);
            h(i, j) = e;
            h(j, i) = e;
        }
    return h;
}

JetMetric perturbed_metric(Rng& g, int n, int cap, int min_deg, int terms) {
    return JetMetric::from_matrix(JetMatrix::identity(n, cap) + random_symmetric_jets(g, n, cap, min_deg, cap, terms));
}

ModelGeometry random_conf_flat(Rng& g, int nmin, int nmax) {
    int n = static_cast<int>(g.integer(nmin, nmax));
    std::vector<Q> e;
    for (int i = 0; i < n; ++i) e.push_back(g.rational());
    return ModelGeometry::conf_flat(e);
}

}  // namespace holo
