#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polybif/parse.hpp"
#include "polybif/poly.hpp"

namespace polybif {

enum class CoprimalityStatus { Verified, Assumed, Refuted };

struct CoprimalityVerdict {
    CoprimalityStatus status = CoprimalityStatus::Assumed;
    std::string detail = "not checked";
    std::optional<SparseLaurentPoly> witness; // common factor, when refuted
};

/// f = P/Q with exact rational coefficients. P and Q are stored in a joint
/// canonical form: integer coefficients with joint content 1 and the
/// graded-lex leading coefficient of Q positive. Scaling both by the same
/// factor leaves the function unchanged.
struct RationalFunction {
    SparseLaurentPoly P;
    SparseLaurentPoly Q;
    std::vector<std::string> vars;
    CoprimalityVerdict coprimality;

    int dimension() const { return P.dimension(); }
    bool is_polynomial() const { return Q.is_constant() && Q.constant_value() == 1; }

    std::string to_string() const {
        if (is_polynomial()) return P.to_string(vars);
        return "(" + P.to_string(vars) + ")/(" + Q.to_string(vars) + ")";
    }

    std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const {
        return P.evaluate(z) / Q.evaluate(z);
    }
};

inline void canonicalize_pair(SparseLaurentPoly& P, SparseLaurentPoly& Q) {
    Rat c = rat_gcd(P.content(), Q.content());
    if (c != 0 && c != 1) {
        P = Rat(1) / c * P;
        Q = Rat(1) / c * Q;
    }
    if (Q.leading_coefficient() < 0) {
        P = -P;
        Q = -Q;
    }
}

inline RationalFunction make_rational_function(SparseLaurentPoly P, SparseLaurentPoly Q,
                                               std::vector<std::string> vars) {
    if (P.dimension() < 2) throw std::invalid_argument("at least two variables are required");
    if (Q.is_zero()) throw std::invalid_argument("denominator is the zero polynomial");
    if (P.has_negative_exponent() || Q.has_negative_exponent())
        throw std::invalid_argument("input polynomials must have nonnegative exponents");
    canonicalize_pair(P, Q);
    return RationalFunction{std::move(P), std::move(Q), std::move(vars), {}};
}

inline RationalFunction parse_rational_function(const std::string& text,
                                                const std::vector<std::string>& vars) {
    auto [p, q] = parse_fraction(text, vars);
    return make_rational_function(std::move(p), std::move(q), vars);
}

inline RationalFunction parse_rational_function(const std::string& num, const std::string& den,
                                                const std::vector<std::string>& vars) {
    SparseLaurentPoly p = parse_polynomial(num, vars);
    SparseLaurentPoly q = parse_polynomial(den, vars);
    if (q.is_zero()) throw ParseError(den.size(), "denominator is the zero polynomial");
    return make_rational_function(std::move(p), std::move(q), vars);
}

} // namespace polybif
