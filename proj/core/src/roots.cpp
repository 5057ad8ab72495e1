#include "polyfold/roots.hpp"
#include "polyfold/error.hpp"

namespace polyfold {

DensePoly dense_trim(DensePoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int dense_degree(const DensePoly& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<int>(i);
    return -1;
}

Rational dense_eval(const DensePoly& p, const Rational& x) {
    Rational acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

DensePoly dense_derivative(const DensePoly& p) {
    DensePoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long long>(i)) * p[i]);
    return dense_trim(d);
}

DensePoly dense_rem(const DensePoly& a0, const DensePoly& b0) {
    DensePoly a = dense_trim(a0), b = dense_trim(b0);
    require(!b.empty(), "bad_poly", "remainder by zero polynomial");
    while (!a.empty() && a.size() >= b.size()) {
        Rational q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a = dense_trim(std::move(a));
    }
    return a;
}

static DensePoly monic(DensePoly p) {
    p = dense_trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

DensePoly dense_gcd(DensePoly a, DensePoly b) {
    a = dense_trim(std::move(a));
    b = dense_trim(std::move(b));
    while (!b.empty()) {
        DensePoly r = dense_rem(a, b);
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

DensePoly dense_deflate(const DensePoly& p0, const Rational& r) {
    DensePoly p = dense_trim(p0);
    require(!p.empty(), "bad_poly", "cannot deflate the zero polynomial");
    require(dense_eval(p, r).is_zero(), "bad_poly", "deflation point is not a root");
    size_t n = p.size() - 1; // degree
    if (n == 0) return {};
    // p = (x - r) q: b_{n-1} = a_n, then b_{i-1} = a_i + r*b_i downward.
    DensePoly q(n, Rational(0));
    q[n - 1] = p[n];
    for (size_t i = n - 1; i >= 1; --i) q[i - 1] = p[i] + r * q[i];
    return dense_trim(q);
}

int dense_sign_at(const DensePoly& p0, const ExtRational& x) {
    DensePoly p = dense_trim(p0);
    if (p.empty()) return 0;
    if (x.is_finite()) return dense_eval(p, x.value()).sign();
    int lead = p.back().sign();
    if (x.is_pos_inf()) return lead;
    size_t deg = p.size() - 1;
    return (deg % 2 == 0) ? lead : -lead;
}

static int sign_variations(const std::vector<DensePoly>& chain, const ExtRational& x) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        int s = dense_sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

bool has_root_in_open(DensePoly p, const ExtRational& c, const ExtRational& d) {
    p = dense_trim(std::move(p));
    require(!p.empty(), "bad_poly", "root query on the zero polynomial");
    require(c < d, "bad_interval", "empty interval");

    // Endpoint roots do not count; strip them so Sturm counts the interior.
    if (c.is_finite())
        while (dense_degree(p) >= 1 && dense_eval(p, c.value()).is_zero()) p = dense_deflate(p, c.value());
    if (d.is_finite())
        while (dense_degree(p) >= 1 && dense_eval(p, d.value()).is_zero()) p = dense_deflate(p, d.value());
    if (dense_degree(p) < 1) return false;

    std::vector<DensePoly> chain;
    chain.push_back(p);
    chain.push_back(dense_derivative(p));
    while (dense_degree(chain.back()) >= 0) {
        DensePoly r = dense_rem(chain[chain.size() - 2], chain.back());
        r = dense_trim(std::move(r));
        if (r.empty()) break;
        for (auto& coeff : r) coeff = -coeff;
        chain.push_back(std::move(r));
    }
    return sign_variations(chain, c) - sign_variations(chain, d) > 0;
}

} // namespace polyfold
