#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace polyfold {

// Exact rational scalar. Always stored in lowest terms with positive
// denominator (mpq_class canonicalization).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long long n);
    Rational(int num, int den);
    Rational(long num, long den);
    Rational(long long num, long long den);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Parses "n", "n/d", or a plain decimal like "-2.75". Throws Error
    // (code "bad_rational") on anything else, including d == 0.
    static Rational parse(const std::string& text);

    // Exact value of a finite double (binary fraction).
    static Rational from_double(double x);

    std::string str() const;   // "n" or "n/d", canonical
    double to_double() const { return v_.get_d(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational numerator() const { return Rational(mpq_class(v_.get_num())); }
    Rational denominator() const { return Rational(mpq_class(v_.get_den())); }

    // Largest integer <= value, as a Rational.
    Rational floor() const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    // For small-value checks; throws if out of range of long.
    long to_long() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational gcd(const Rational& a, const Rational& b); // integers expected
Rational pow(const Rational& base, unsigned exp);

// Rational extended with the two infinities; used for fold intervals.
class ExtRational {
public:
    enum class Kind { neg_inf, finite, pos_inf };

    ExtRational() : kind_(Kind::finite), v_(0) {}
    ExtRational(Rational v) : kind_(Kind::finite), v_(std::move(v)) {}
    static ExtRational neg_inf() { ExtRational e; e.kind_ = Kind::neg_inf; return e; }
    static ExtRational pos_inf() { ExtRational e; e.kind_ = Kind::pos_inf; return e; }

    // "-inf", "inf", "+inf", or anything Rational::parse accepts.
    static ExtRational parse(const std::string& text);

    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
    bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    const Rational& value() const; // throws unless finite

    std::string str() const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend bool operator<(const ExtRational& a, const ExtRational& b);
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return a == b || a < b; }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }

private:
    Kind kind_;
    Rational v_;
};

// True when lo < x < hi with extended endpoints.
bool strictly_between(const ExtRational& lo, const Rational& x, const ExtRational& hi);

} // namespace polyfold
