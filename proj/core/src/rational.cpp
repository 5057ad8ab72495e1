#include "polyfold/rational.hpp"
#include "polyfold/error.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace polyfold {

Rational::Rational(long long n) {
    bool neg = n < 0;
    unsigned long long u = neg ? (~static_cast<unsigned long long>(n) + 1ULL)
                               : static_cast<unsigned long long>(n);
    mpz_class m;
    mpz_import(m.get_mpz_t(), 1, -1, sizeof(u), 0, 0, &u);
    if (neg) m = -m;
    v_ = mpq_class(m);
}

Rational::Rational(int num, int den) : Rational(static_cast<long long>(num), static_cast<long long>(den)) {}

Rational::Rational(long num, long den) : Rational(static_cast<long long>(num), static_cast<long long>(den)) {}

Rational::Rational(long long num, long long den) {
    require(den != 0, "bad_rational", "zero denominator");
    Rational n(num), d(den);
    v_ = n.v_ / d.v_;
    v_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
    require(!b.is_zero(), "bad_rational", "division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& o) {
    require(!o.is_zero(), "bad_rational", "division by zero");
    v_ /= o.v_;
    return *this;
}

static bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

static bool integer_token(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    return all_digits(s.substr(i));
}

Rational Rational::parse(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
        require(integer_token(ns) && all_digits(ds), "bad_rational", "cannot parse rational: " + text);
        mpz_class n(ns), d(ds);
        require(d != 0, "bad_rational", "zero denominator: " + text);
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(q);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
        require((all_digits(ip) || ip.empty()) && all_digits(fp), "bad_rational",
                "cannot parse rational: " + text);
        mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class(ip);
        mpz_class frac(fp);
        mpz_class den(1);
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        mpq_class q(whole * den + frac, den);
        q.canonicalize();
        if (neg) q = -q;
        return Rational(q);
    }
    require(integer_token(text), "bad_rational", "cannot parse rational: " + text);
    return Rational(mpq_class(mpz_class(text)));
}

Rational Rational::from_double(double x) {
    require(std::isfinite(x), "bad_rational", "non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rational(q);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return Rational(mpq_class(q));
}

long Rational::to_long() const {
    require(is_integer() && v_.get_num().fits_slong_p(), "bad_rational", "value does not fit a long");
    return v_.get_num().get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational gcd(const Rational& a, const Rational& b) {
    require(a.is_integer() && b.is_integer(), "bad_rational", "gcd needs integers");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.raw().get_num().get_mpz_t(), b.raw().get_num().get_mpz_t());
    return Rational(mpq_class(g));
}

Rational pow(const Rational& base, unsigned exp) {
    Rational acc(1), b = base;
    while (exp) {
        if (exp & 1u) acc *= b;
        exp >>= 1u;
        if (exp) b *= b;
    }
    return acc;
}

ExtRational ExtRational::parse(const std::string& text) {
    if (text == "-inf") return neg_inf();
    if (text == "inf" || text == "+inf") return pos_inf();
    return ExtRational(Rational::parse(text));
}

const Rational& ExtRational::value() const {
    require(kind_ == Kind::finite, "bad_rational", "infinite endpoint has no value");
    return v_;
}

std::string ExtRational::str() const {
    switch (kind_) {
        case Kind::neg_inf: return "-inf";
        case Kind::pos_inf: return "+inf";
        default: return v_.str();
    }
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != ExtRational::Kind::finite || a.v_ == b.v_;
}

bool operator<(const ExtRational& a, const ExtRational& b) {
    using K = ExtRational::Kind;
    if (a.kind_ == K::neg_inf) return b.kind_ != K::neg_inf;
    if (a.kind_ == K::pos_inf) return false;
    if (b.kind_ == K::pos_inf) return true;
    if (b.kind_ == K::neg_inf) return false;
    return a.v_ < b.v_;
}

bool strictly_between(const ExtRational& lo, const Rational& x, const ExtRational& hi) {
    ExtRational e(x);
    return lo < e && e < hi;
}

} // namespace polyfold
