#include "polyfold/poly.hpp"
#include "polyfold/error.hpp"

#include <algorithm>
#include <sstream>

namespace polyfold {

SparsePoly::SparsePoly(int arity) : arity_(arity) {
    require(arity >= 1 && arity <= 3, "bad_arity", "poly arity must be 1..3");
}

SparsePoly SparsePoly::constant(int arity, const Rational& c) {
    SparsePoly p(arity);
    p.add_term({0, 0, 0}, c);
    return p;
}

SparsePoly SparsePoly::variable(int arity, int var) {
    require(var >= 0 && var < arity, "bad_arity", "variable index out of range");
    SparsePoly p(arity);
    Exps e{0, 0, 0};
    e[static_cast<size_t>(var)] = 1;
    p.add_term(e, Rational(1));
    return p;
}

SparsePoly SparsePoly::monomial(int arity, const Exps& e, const Rational& c) {
    SparsePoly p(arity);
    for (int v = arity; v < 3; ++v)
        require(e[static_cast<size_t>(v)] == 0, "bad_arity", "exponent beyond arity");
    p.add_term(e, c);
    return p;
}

uint32_t SparsePoly::total_degree() const {
    if (terms_.empty()) return 0;
    return exps_total(terms_.rbegin()->first);
}

uint32_t SparsePoly::degree_in(int var) const {
    uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
}

Rational SparsePoly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::set_coeff(const Exps& e, const Rational& c) {
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

void SparsePoly::add_term(const Exps& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    require(a.arity_ == b.arity_, "bad_arity", "arity mismatch in +");
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    require(a.arity_ == b.arity_, "bad_arity", "arity mismatch in -");
    SparsePoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    require(a.arity_ == b.arity_, "bad_arity", "arity mismatch in *");
    SparsePoly r(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
}

SparsePoly operator*(const Rational& c, const SparsePoly& p) {
    SparsePoly r(p.arity_);
    if (c.is_zero()) return r;
    for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
    return r;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

SparsePoly SparsePoly::pow(unsigned e) const {
    SparsePoly acc = constant(arity_, Rational(1));
    SparsePoly base = *this;
    while (e) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return acc;
}

SparsePoly SparsePoly::compose(const std::vector<SparsePoly>& args) const {
    require(static_cast<int>(args.size()) == arity_, "bad_arity", "compose needs one arg per variable");
    int out_arity = args.empty() ? arity_ : args[0].arity();
    for (const auto& a : args)
        require(a.arity() == out_arity, "bad_arity", "compose args must share arity");

    // pows[v][k] = args[v]^k, filled lazily.
    std::vector<std::vector<SparsePoly>> pows(args.size());
    for (size_t v = 0; v < args.size(); ++v)
        pows[v].push_back(SparsePoly::constant(out_arity, Rational(1)));
    auto power = [&](size_t v, uint32_t k) -> const SparsePoly& {
        while (pows[v].size() <= k) pows[v].push_back(pows[v].back() * args[v]);
        return pows[v][k];
    };

    SparsePoly r(out_arity);
    for (const auto& [e, c] : terms_) {
        SparsePoly term = SparsePoly::constant(out_arity, c);
        for (size_t v = 0; v < args.size(); ++v)
            if (e[v] > 0) term = term * power(v, e[v]);
        r = r + term;
    }
    return r;
}

Rational SparsePoly::eval(const std::vector<Rational>& point) const {
    require(static_cast<int>(point.size()) == arity_, "bad_arity", "eval needs one value per variable");
    std::vector<std::vector<Rational>> pows(point.size(), {Rational(1)});
    auto power = [&](size_t v, uint32_t k) -> const Rational& {
        while (pows[v].size() <= k) pows[v].push_back(pows[v].back() * point[v]);
        return pows[v][k];
    };
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t v = 0; v < point.size(); ++v)
            if (e[v] > 0) t *= power(v, e[v]);
        acc += t;
    }
    return acc;
}

double SparsePoly::eval_double(const std::vector<double>& point) const {
    require(static_cast<int>(point.size()) == arity_, "bad_arity", "eval needs one value per variable");
    std::vector<std::vector<double>> pows(point.size(), {1.0});
    auto power = [&](size_t v, uint32_t k) -> double {
        while (pows[v].size() <= k) pows[v].push_back(pows[v].back() * point[v]);
        return pows[v][k];
    };
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.to_double();
        for (size_t v = 0; v < point.size(); ++v)
            if (e[v] > 0) t *= power(v, e[v]);
        acc += t;
    }
    return acc;
}

const char* const* poly_var_names(int arity) {
    static const char* n1[] = {"t", "", ""};
    static const char* n2[] = {"x", "y", ""};
    static const char* n3[] = {"x", "y", "t"};
    switch (arity) {
        case 1: return n1;
        case 2: return n2;
        default: return n3;
    }
}

std::string SparsePoly::str() const {
    if (terms_.empty()) return "0";
    const char* const* names = poly_var_names(arity_);
    std::ostringstream os;
    bool first = true;
    // Descending grlex reads naturally (leading term first).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_var = e[0] + e[1] + e[2] > 0;
        if (a != Rational(1) || !has_var) {
            os << a.str();
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << names[v];
            if (e[v] > 1) os << "^" << e[v];
        }
    }
    return os.str();
}

SparsePoly slice_at_x(const SparsePoly& p, const Rational& r) {
    require(p.arity() == 2, "bad_arity", "slice_at_x needs a two-variable poly");
    std::vector<Rational> rpow{Rational(1)};
    auto power = [&](uint32_t k) -> const Rational& {
        while (rpow.size() <= k) rpow.push_back(rpow.back() * r);
        return rpow[k];
    };
    SparsePoly out(1);
    for (const auto& [e, c] : p.terms()) {
        Exps key{e[1], 0, 0};
        out.set_coeff(key, out.coeff(key) + c * power(e[0]));
    }
    return out;
}

std::vector<Rational> dense_coeffs(const SparsePoly& p) {
    require(p.arity() == 1, "bad_arity", "dense_coeffs needs a univariate poly");
    if (p.is_zero()) return {};
    std::vector<Rational> out(p.total_degree() + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) out[e[0]] = c;
    return out;
}

} // namespace polyfold
