#pragma once

#include <random>

#include "polybif/rational_function.hpp"
#include "polybif/roots.hpp"
#include "polybif/subresultant.hpp"

namespace polybif {

/// Restriction of p to the rational line z_i = a_i t + b_i, as a dense
/// polynomial in t.
inline UniPoly restrict_to_line(const SparseLaurentPoly& p, const std::vector<Rat>& a,
                                const std::vector<Rat>& b) {
    UniPoly acc; // zero
    for (auto& [e, c] : p.terms()) {
        UniPoly term{c};
        for (std::size_t i = 0; i < e.size(); ++i) {
            UniPoly lin{b[i], a[i]};
            uni_trim(lin);
            for (std::int64_t k = 0; k < e[i]; ++k) term = uni_mul(term, lin);
        }
        if (acc.size() < term.size()) acc.resize(term.size(), 0);
        for (std::size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
        uni_trim(acc);
    }
    return acc;
}

/// Coprimality of P and Q. Exact for n = 2 (subresultant gcd in both
/// variable orders, cross-checked); probabilistic for n >= 3 (gcds of
/// restrictions to random rational lines), where the verdict is never
/// better than "assumed".
inline CoprimalityVerdict coprimality_check(const SparseLaurentPoly& P,
                                            const SparseLaurentPoly& Q,
                                            std::uint64_t seed = 0) {
    int n = P.dimension();
    CoprimalityVerdict v;
    if (P.is_zero() || Q.is_zero())
        throw std::invalid_argument("coprimality_check: inputs must be nonzero");
    if (P.is_constant() || Q.is_constant()) {
        v.status = CoprimalityStatus::Verified;
        v.detail = "a constant has no nonconstant factor";
        return v;
    }
    if (n == 2) {
        SparseLaurentPoly g0 = gcd_bivariate_in(P, Q, 0);
        SparseLaurentPoly g1 = gcd_bivariate_in(P, Q, 1);
        bool nc0 = !g0.is_constant(), nc1 = !g1.is_constant();
        if (nc0 != nc1) throw InternalError("gcd verdicts differ between variable orders");
        if (nc0) {
            v.status = CoprimalityStatus::Refuted;
            v.detail = "nonconstant common factor";
            v.witness = g0;
        } else {
            v.status = CoprimalityStatus::Verified;
            v.detail = "subresultant gcd is constant in both variable orders";
        }
        return v;
    }
    // n >= 3: restrict to random rational lines and gcd each restriction
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int lines = 8;
    int coprime_lines = 0;
    for (int l = 0; l < lines; ++l) {
        UniPoly pr, qr;
        // resample lines that drop total degree; a degenerate restriction
        // carries no factor evidence
        for (int attempt = 0; attempt < 16; ++attempt) {
            std::vector<Rat> a(n), b(n);
            bool nonzero_dir = false;
            for (int i = 0; i < n; ++i) {
                a[i] = Rat(static_cast<long>(rng() % 21) - 10);
                b[i] = Rat(static_cast<long>(rng() % 21) - 10);
                if (a[i] != 0) nonzero_dir = true;
            }
            if (!nonzero_dir) a[0] = 1;
            pr = restrict_to_line(P, a, b);
            qr = restrict_to_line(Q, a, b);
            if (uni_degree(pr) == P.max_total_degree() &&
                uni_degree(qr) == Q.max_total_degree())
                break;
        }
        if (uni_degree(pr) <= 0 || uni_degree(qr) <= 0) {
            ++coprime_lines;
            continue;
        }
        UniPoly g = uni_gcd(pr, qr);
        if (uni_degree(g) <= 0) ++coprime_lines;
    }
    v.status = CoprimalityStatus::Assumed;
    if (coprime_lines == 0) {
        v.detail = "warning: all " + std::to_string(lines) +
                   " random line restrictions share a nonconstant factor; a common factor is likely";
    } else {
        v.detail = "probabilistic pass (" + std::to_string(coprime_lines) + "/" +
                   std::to_string(lines) + " random line restrictions coprime)";
    }
    return v;
}

inline RationalFunction with_coprimality(RationalFunction f, std::uint64_t seed = 0) {
    f.coprimality = coprimality_check(f.P, f.Q, seed);
    return f;
}

} // namespace polybif
