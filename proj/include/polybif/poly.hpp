#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "polybif/exponent.hpp"
#include "polybif/rational.hpp"

namespace polybif {

/// Sparse Laurent polynomial with exact rational coefficients.
/// Terms map exponent vectors to nonzero coefficients; the zero polynomial
/// is the empty map. The term map is kept in graded-lex order so printing
/// and hashing are deterministic.
class SparseLaurentPoly {
public:
    using TermMap = std::map<ExponentVector, Rat, GradedLexLess>;

    SparseLaurentPoly() : n_(0) {}
    explicit SparseLaurentPoly(int n) : n_(n) {}

    static SparseLaurentPoly constant(int n, const Rat& c) {
        SparseLaurentPoly p(n);
        if (c != 0) p.terms_[ExponentVector(n, 0)] = c;
        return p;
    }

    static SparseLaurentPoly monomial(int n, const ExponentVector& e, const Rat& c) {
        SparseLaurentPoly p(n);
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    static SparseLaurentPoly variable(int n, int i) {
        ExponentVector e(n, 0);
        e[i] = 1;
        return monomial(n, e, 1);
    }

    int dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && exp_is_zero(terms_.begin()->first));
    }

    Rat constant_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second;
    }

    bool is_monomial() const { return terms_.size() == 1; }

    Rat coefficient(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const ExponentVector& e, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::vector<ExponentVector> support() const {
        std::vector<ExponentVector> s;
        s.reserve(terms_.size());
        for (auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    bool has_negative_exponent() const {
        for (auto& [e, c] : terms_)
            for (auto v : e)
                if (v < 0) return true;
        return false;
    }

    std::int64_t max_total_degree() const {
        return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
    }

    // degree in one coordinate (max exponent); -1 stands in for the zero poly
    std::int64_t degree_in(int i) const {
        if (terms_.empty()) return -1;
        std::int64_t d = terms_.begin()->first[i];
        for (auto& [e, c] : terms_) d = std::max(d, e[i]);
        return d;
    }

    std::int64_t min_exponent_in(int i) const {
        if (terms_.empty()) return 0;
        std::int64_t d = terms_.begin()->first[i];
        for (auto& [e, c] : terms_) d = std::min(d, e[i]);
        return d;
    }

    friend SparseLaurentPoly operator+(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
        check_same_dim(a, b);
        SparseLaurentPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend SparseLaurentPoly operator-(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
        check_same_dim(a, b);
        SparseLaurentPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    friend SparseLaurentPoly operator-(const SparseLaurentPoly& a) {
        SparseLaurentPoly r(a.n_);
        for (auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }

    friend SparseLaurentPoly operator*(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
        check_same_dim(a, b);
        SparseLaurentPoly r(a.n_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term(exp_add(ea, eb), ca * cb);
        return r;
    }

    friend SparseLaurentPoly operator*(const Rat& c, const SparseLaurentPoly& a) {
        SparseLaurentPoly r(a.n_);
        if (c == 0) return r;
        for (auto& [e, k] : a.terms_) r.terms_[e] = c * k;
        return r;
    }

    friend bool operator==(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    SparseLaurentPoly shifted(const ExponentVector& e) const {
        SparseLaurentPoly r(n_);
        for (auto& [a, c] : terms_) r.terms_[exp_add(a, e)] = c;
        return r;
    }

    /// Restriction to a subset of exponents (face truncation g_gamma).
    SparseLaurentPoly truncate_to(const std::vector<ExponentVector>& keep) const {
        SparseLaurentPoly r(n_);
        for (auto& e : keep) {
            auto it = terms_.find(e);
            if (it != terms_.end()) r.terms_[e] = it->second;
        }
        return r;
    }

    /// Holomorphic partial derivative in coordinate i; terms with zero
    /// exponent there vanish.
    SparseLaurentPoly partial_derivative(int i) const {
        SparseLaurentPoly r(n_);
        ExponentVector step(n_, 0);
        for (auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            ExponentVector d = e;
            d[i] -= 1;
            r.terms_[d] = c * Rat(e[i]);
        }
        return r;
    }

    // rational content: gcd of all coefficients, >= 0
    Rat content() const {
        Rat g = 0;
        for (auto& [e, c] : terms_) g = rat_gcd(g, c);
        return g;
    }

    // leading coefficient in graded-lex order
    Rat leading_coefficient() const {
        if (terms_.empty()) return 0;
        return terms_.rbegin()->second;
    }

    /// Evaluate at a complex point; summation is done by balanced pairwise
    /// reduction so the result is deterministic for a fixed term order.
    std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const {
        if (static_cast<int>(z.size()) != n_)
            throw std::invalid_argument("evaluate: point dimension mismatch");
        std::vector<std::complex<double>> vals;
        vals.reserve(terms_.size());
        for (auto& [e, c] : terms_) {
            std::complex<double> t = rat_to_complex(c);
            for (int i = 0; i < n_; ++i) t *= cpow(z[i], e[i]);
            vals.push_back(t);
        }
        return balanced_sum(vals, 0, vals.size());
    }

    std::string to_string(const std::vector<std::string>& vars) const;

private:
    static void check_same_dim(const SparseLaurentPoly& a, const SparseLaurentPoly& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    static std::complex<double> cpow(const std::complex<double>& z, std::int64_t e) {
        if (e == 0) return {1.0, 0.0};
        bool neg = e < 0;
        std::uint64_t k = neg ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
        std::complex<double> base = z, acc = {1.0, 0.0};
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        if (neg) {
            if (acc == std::complex<double>(0.0, 0.0))
                throw std::domain_error("evaluate: negative exponent at zero coordinate");
            return std::complex<double>(1.0, 0.0) / acc;
        }
        return acc;
    }

    static std::complex<double> balanced_sum(const std::vector<std::complex<double>>& v,
                                             std::size_t lo, std::size_t hi) {
        if (lo == hi) return {0.0, 0.0};
        if (hi - lo == 1) return v[lo];
        std::size_t mid = lo + (hi - lo) / 2;
        return balanced_sum(v, lo, mid) + balanced_sum(v, mid, hi);
    }

    int n_;
    TermMap terms_;
};

inline std::string SparseLaurentPoly::to_string(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::string out;
    // largest graded-lex term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string mono;
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += rat_to_string(a);
        } else {
            if (a != 1) out += rat_to_string(a) + "*";
            out += mono;
        }
    }
    return out;
}

} // namespace polybif
