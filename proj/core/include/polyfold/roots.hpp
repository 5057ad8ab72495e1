#pragma once

#include "polyfold/rational.hpp"

#include <vector>

namespace polyfold {

// Dense univariate polynomials, ascending coefficients. Used for the exact
// root queries behind the fold construction; all arithmetic is rational.
using DensePoly = std::vector<Rational>;

DensePoly dense_trim(DensePoly p);
int dense_degree(const DensePoly& p); // -1 for the zero poly
Rational dense_eval(const DensePoly& p, const Rational& x);
DensePoly dense_derivative(const DensePoly& p);

// Remainder of a by b (b nonzero).
DensePoly dense_rem(const DensePoly& a, const DensePoly& b);

// Monic gcd; zero poly if both inputs are zero.
DensePoly dense_gcd(DensePoly a, DensePoly b);

// Divides p by (x - r); requires p(r) == 0.
DensePoly dense_deflate(const DensePoly& p, const Rational& r);

// Sign of p at an extended point (limit signs at the infinities).
int dense_sign_at(const DensePoly& p, const ExtRational& x);

// True when p has a real root strictly inside ]c,d[ (extended endpoints).
// The zero polynomial is rejected.
bool has_root_in_open(DensePoly p, const ExtRational& c, const ExtRational& d);

} // namespace polyfold
