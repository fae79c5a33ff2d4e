#pragma once

#include <cstdint>
#include <set>
#include <random>
#include <string>
#include <vector>

#include "polybif/poly.hpp"
#include "polybif/rational_function.hpp"

namespace testutil {

using polybif::ExponentVector;
using polybif::Rat;
using polybif::SparseLaurentPoly;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        // inclusive bounds, rejection-free modulo is fine for test data
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    double real01() { return (eng_() >> 11) * (1.0 / 9007199254740992.0); }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

inline SparseLaurentPoly random_poly(Rng& rng, int n, int max_degree, int max_terms,
                                     int coeff_bound = 5, bool allow_zero = false) {
    SparseLaurentPoly p(n);
    int terms = static_cast<int>(rng.uniform(allow_zero ? 0 : 1, max_terms));
    for (int t = 0; t < terms; ++t) {
        ExponentVector e(n, 0);
        int budget = max_degree;
        for (int i = 0; i < n; ++i) {
            e[i] = rng.uniform(0, budget);
            budget -= static_cast<int>(e[i]);
        }
        std::int64_t c = rng.uniform(-coeff_bound, coeff_bound);
        if (c == 0) c = 1;
        p.add_term(e, Rat(c));
    }
    if (!allow_zero && p.is_zero()) p.add_term(ExponentVector(n, 0), 1);
    return p;
}

inline std::vector<std::string> var_names(int n) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(names[i]);
    return v;
}

inline polybif::RationalFunction make_f(const std::string& text,
                                        const std::vector<std::string>& vars = {"x", "y"}) {
    return polybif::parse_rational_function(text, vars);
}

// ---------------------------------------------------------------------------
// Independent bad-face oracle for polynomials (denominator 1), used to check
// the classifier against the polynomial specialization. Works directly on
// the support by brute-force search over integer covectors: a face is "bad"
// when some u outside the nonnegative orthant supports it and the affine
// span of the face contains the origin. Faces are keyed by the set of
// support points lying on them.
// ---------------------------------------------------------------------------
inline bool oracle_aff_contains_zero(const std::vector<ExponentVector>& pts) {
    // rank([p_i - p_0]) == rank([p_i - p_0; p_0]) via fraction-free Gauss
    auto rank_of = [](std::vector<std::vector<double>> m) {
        std::size_t rank = 0;
        std::size_t rows = m.size();
        if (rows == 0) return rank;
        std::size_t cols = m[0].size();
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t piv = rank;
            double best = 0;
            for (std::size_t i = rank; i < rows; ++i)
                if (std::abs(m[i][c]) > best) {
                    best = std::abs(m[i][c]);
                    piv = i;
                }
            if (best < 1e-9) continue;
            std::swap(m[rank], m[piv]);
            for (std::size_t i = rank + 1; i < rows; ++i) {
                double f = m[i][c] / m[rank][c];
                for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
            }
            ++rank;
        }
        return rank;
    };
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<double> d;
        for (std::size_t j = 0; j < pts[i].size(); ++j)
            d.push_back(static_cast<double>(pts[i][j] - pts[0][j]));
        dirs.push_back(d);
    }
    std::size_t r1 = rank_of(dirs);
    std::vector<double> p0;
    for (auto v : pts[0]) p0.push_back(static_cast<double>(v));
    dirs.push_back(p0);
    return rank_of(dirs) == r1;
}

inline std::set<std::vector<ExponentVector>> nz_bad_faces(const SparseLaurentPoly& P, int radius) {
    std::set<std::vector<ExponentVector>> bad;
    auto supp = P.support();
    for (int u1 = -radius; u1 <= radius; ++u1) {
        for (int u2 = -radius; u2 <= radius; ++u2) {
            if (u1 == 0 && u2 == 0) continue;
            if (u1 >= 0 && u2 >= 0) continue; // inside the orthant
            std::int64_t best = 0;
            bool first = true;
            for (auto& e : supp) {
                std::int64_t v = u1 * e[0] + u2 * e[1];
                if (first || v < best) {
                    best = v;
                    first = false;
                }
            }
            std::vector<ExponentVector> face;
            for (auto& e : supp)
                if (u1 * e[0] + u2 * e[1] == best) face.push_back(e);
            std::sort(face.begin(), face.end());
            if (oracle_aff_contains_zero(face)) bad.insert(face);
        }
    }
    return bad;
}

} // namespace testutil
