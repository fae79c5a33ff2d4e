#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace polybif {

// Laurent exponent vector, length = ambient dimension n.
using ExponentVector = std::vector<std::int64_t>;

inline std::int64_t total_degree(const ExponentVector& a) {
    return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

// graded-lexicographic order: compare total degree first, then lex
struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        std::int64_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

inline ExponentVector exp_add(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline ExponentVector exp_sub(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool exp_is_zero(const ExponentVector& a) {
    for (auto e : a)
        if (e != 0) return false;
    return true;
}

} // namespace polybif
