#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "polybif/poly.hpp"
#include "polybif/rational.hpp"

namespace polybif {

/// Dense univariate polynomial over Q; index = degree, no trailing zeros,
/// empty vector = zero polynomial.
using UniPoly = std::vector<Rat>;

inline void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int uni_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UniPoly uni_derivative(const UniPoly& p) {
    UniPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rat(static_cast<long>(i)) * p[i]);
    uni_trim(d);
    return d;
}

inline Rat uni_eval_exact(const UniPoly& p, const Rat& x) {
    Rat acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline std::complex<double> uni_eval(const UniPoly& p, std::complex<double> x) {
    std::complex<double> acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + rat_to_complex(*it);
    return acc;
}

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    uni_trim(r);
    return r;
}

inline UniPoly uni_sub(UniPoly a, const UniPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    uni_trim(a);
    return a;
}

// remainder of a by b over Q
inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        uni_trim(a);
        if (a.size() >= b.size() && !a.empty() && a.back() == 0) uni_trim(a);
    }
    return a;
}

// divide exactly by (x - r), synthetic division
inline UniPoly uni_deflate(const UniPoly& p, const Rat& r) {
    std::size_t n = p.size() - 1;
    UniPoly q(n, 0);
    q[n - 1] = p[n];
    for (std::size_t i = n - 1; i >= 1; --i) q[i - 1] = p[i] + r * q[i];
    return q;
}

// primitive integer form, positive leading coefficient
inline UniPoly uni_primitive(UniPoly p) {
    uni_trim(p);
    if (p.empty()) return p;
    Rat g = 0;
    for (auto& c : p) g = rat_gcd(g, c);
    for (auto& c : p) c /= g;
    if (p.back() < 0)
        for (auto& c : p) c = -c;
    return p;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    uni_trim(a);
    uni_trim(b);
    if (a.empty()) return uni_primitive(b);
    if (b.empty()) return uni_primitive(a);
    a = uni_primitive(a);
    b = uni_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = uni_primitive(r);
    }
    return uni_primitive(a);
}

inline UniPoly uni_squarefree_part(const UniPoly& p) {
    if (p.size() <= 1) return uni_primitive(p);
    UniPoly g = uni_gcd(p, uni_derivative(p));
    if (uni_degree(g) <= 0) return uni_primitive(p);
    // exact division p / g
    UniPoly q;
    UniPoly rem = p;
    q.assign(p.size() - g.size() + 1, 0);
    while (rem.size() >= g.size() && !rem.empty()) {
        Rat f = rem.back() / g.back();
        std::size_t off = rem.size() - g.size();
        q[off] = f;
        for (std::size_t i = 0; i < g.size(); ++i) rem[off + i] -= f * g[i];
        uni_trim(rem);
    }
    return uni_primitive(q);
}

/// Dense view of a polynomial supported in a single coordinate.
inline UniPoly to_unipoly(const SparseLaurentPoly& p, int var) {
    UniPoly u;
    for (auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != var && e[i] != 0)
                throw std::invalid_argument("to_unipoly: polynomial involves another variable");
        std::size_t k = static_cast<std::size_t>(e[var]);
        if (u.size() <= k) u.resize(k + 1, 0);
        u[k] = c;
    }
    uni_trim(u);
    return u;
}

inline SparseLaurentPoly from_unipoly(const UniPoly& u, int n, int var) {
    SparseLaurentPoly p(n);
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0) continue;
        ExponentVector e(n, 0);
        e[var] = static_cast<std::int64_t>(k);
        p.add_term(e, u[k]);
    }
    return p;
}

struct UniRoot {
    std::complex<double> value;
    std::optional<Rat> exact; // set when the root was certified rational
};

namespace rootdetail {

inline std::vector<Int> small_divisors(Int v) {
    if (v < 0) v = -v;
    std::vector<Int> out;
    if (v == 0 || v > 1000000) return out;
    long n = v.convert_to<long>();
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    return out;
}

} // namespace rootdetail

/// Rational roots by the p/q sieve on the primitive integer form. Returns
/// the roots (with multiplicity collapsed) and deflates them out of p.
inline std::vector<Rat> extract_rational_roots(UniPoly& p) {
    std::vector<Rat> roots;
    uni_trim(p);
    if (p.size() <= 1) return roots;
    // roots at zero
    while (!p.empty() && p.front() == 0) {
        if (std::find(roots.begin(), roots.end(), Rat(0)) == roots.end()) roots.push_back(0);
        p.erase(p.begin());
    }
    if (p.size() <= 1) return roots;
    UniPoly pi = uni_primitive(p);
    auto nums = rootdetail::small_divisors(numerator(pi.front()));
    auto dens = rootdetail::small_divisors(numerator(pi.back()));
    if (nums.empty() || dens.empty()) return roots;
    std::vector<Rat> candidates;
    for (auto& a : nums)
        for (auto& b : dens) {
            candidates.push_back(Rat(a, b));
            candidates.push_back(Rat(-a, b));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto& c : candidates) {
        while (p.size() > 1 && uni_eval_exact(p, c) == 0) {
            if (roots.empty() || std::find(roots.begin(), roots.end(), c) == roots.end())
                roots.push_back(c);
            p = uni_deflate(p, c);
        }
    }
    return roots;
}

/// All complex roots: rational sieve first, then companion-matrix
/// eigenvalues with Newton polishing on the deflated polynomial.
inline std::vector<UniRoot> complex_roots(UniPoly p) {
    std::vector<UniRoot> out;
    uni_trim(p);
    if (p.size() <= 1) return out;
    UniPoly work = uni_squarefree_part(p);
    std::vector<Rat> rational = extract_rational_roots(work);
    for (auto& r : rational)
        out.push_back({{rat_to_double(r), 0.0}, r});
    int d = uni_degree(work);
    if (d >= 1) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
        double lead = rat_to_double(work.back());
        for (int i = 0; i < d; ++i) {
            companion(i, d - 1) = -rat_to_double(work[i]) / lead;
            if (i + 1 < d) companion(i + 1, i) = 1.0;
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
        UniPoly dwork = uni_derivative(work);
        for (int i = 0; i < d; ++i) {
            std::complex<double> z = es.eigenvalues()(i);
            for (int it = 0; it < 40; ++it) {
                std::complex<double> f = uni_eval(work, z);
                std::complex<double> df = uni_eval(dwork, z);
                if (std::abs(df) < 1e-300) break;
                std::complex<double> step = f / df;
                z -= step;
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
            }
            out.push_back({z, std::nullopt});
        }
    }
    return out;
}

/// Single-linkage clustering of complex values at the given tolerance;
/// returns one representative per cluster (exact-rational values win),
/// sorted by (re, im) for determinism.
struct ClusteredValue {
    std::complex<double> value;
    std::optional<Rat> exact;
};

inline std::vector<ClusteredValue> cluster_values(std::vector<ClusteredValue> vals, double tol) {
    std::size_t m = vals.size();
    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(vals[i].value - vals[j].value) <= tol) parent[find(i)] = find(j);
    std::map<std::size_t, ClusteredValue> reps;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t r = find(i);
        auto it = reps.find(r);
        if (it == reps.end()) {
            reps[r] = vals[i];
        } else if (!it->second.exact && vals[i].exact) {
            it->second = vals[i];
        }
    }
    std::vector<ClusteredValue> out;
    for (auto& [k, v] : reps) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const ClusteredValue& a, const ClusteredValue& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

} // namespace polybif
