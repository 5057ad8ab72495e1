#pragma once

#include "polyfold/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace polyfold {

// Exponent tuple; entries beyond the poly's arity stay zero.
using Exps = std::array<uint32_t, 3>;

inline uint32_t exps_total(const Exps& e) { return e[0] + e[1] + e[2]; }

// Graded lexicographic order (total degree first, then x > y > z).
struct GrlexLess {
    bool operator()(const Exps& a, const Exps& b) const {
        uint32_t ta = exps_total(a), tb = exps_total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    }
};

// Sparse polynomial with exact rational coefficients in 1..3 variables.
// Terms are kept in ascending grlex order with no explicit zeros.
class SparsePoly {
public:
    using TermMap = std::map<Exps, Rational, GrlexLess>;

    explicit SparsePoly(int arity = 2);
    static SparsePoly constant(int arity, const Rational& c);
    static SparsePoly variable(int arity, int var);
    static SparsePoly monomial(int arity, const Exps& e, const Rational& c);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    uint32_t total_degree() const; // 0 for the zero poly
    uint32_t degree_in(int var) const;
    const TermMap& terms() const { return terms_; }

    Rational coeff(const Exps& e) const;
    void set_coeff(const Exps& e, const Rational& c);

    SparsePoly operator-() const;
    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const Rational& c, const SparsePoly& p);
    friend bool operator==(const SparsePoly& a, const SparsePoly& b);
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    SparsePoly pow(unsigned e) const;

    // Substitutes args[i] for variable i; args.size() must equal arity(),
    // all args must share one arity, which becomes the result's arity.
    SparsePoly compose(const std::vector<SparsePoly>& args) const;

    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;

    // Readable form, e.g. "x^2*y - 1/2*y + 3". Variables are t (arity 1),
    // x,y (arity 2), x,y,t (arity 3).
    std::string str() const;

private:
    int arity_;
    TermMap terms_;

    void add_term(const Exps& e, const Rational& c);
};

// Substitutes x = r in a two-variable poly; the result is univariate in the
// remaining variable.
SparsePoly slice_at_x(const SparsePoly& p, const Rational& r);

// Ascending dense coefficients of a univariate poly (empty for zero poly).
std::vector<Rational> dense_coeffs(const SparsePoly& p);

const char* const* poly_var_names(int arity);

} // namespace polyfold
