#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace filtra {

// Multivariate polynomial with rational coefficients over a fixed number of
// variables. Terms are kept in graded-lexicographic order, leading term
// first, and never carry a zero coefficient, so structural equality decides
// semantic equality.
class BasePolynomial {
public:
    using Monomial = std::vector<int>;

    struct GrlexDesc {
        bool operator()(const Monomial& a, const Monomial& b) const {
            int ta = std::accumulate(a.begin(), a.end(), 0);
            int tb = std::accumulate(b.begin(), b.end(), 0);
            if (ta != tb)
                return ta > tb;
            return a > b;
        }
    };

    using Terms = std::map<Monomial, Rational, GrlexDesc>;

    explicit BasePolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static BasePolynomial constant(std::size_t nvars, const Rational& c) {
        BasePolynomial p(nvars);
        if (c != 0)
            p.terms_[Monomial(nvars, 0)] = c;
        return p;
    }

    static BasePolynomial variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars)
            throw UnknownCoordinate("variable index out of range");
        BasePolynomial p(nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        p.terms_[m] = 1;
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty())
            return 0;
        if (!is_constant())
            throw InternalInvariantBroken("constant_value on non-constant polynomial");
        return terms_.begin()->second;
    }

    // Degree of the zero polynomial is reported as -1.
    int total_degree() const {
        if (terms_.empty())
            return -1;
        return monomial_degree(terms_.begin()->first);
    }

    int degree_in(std::size_t v) const {
        int d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m[v]);
        return d;
    }

    bool depends_on(std::size_t v) const {
        for (const auto& [m, c] : terms_)
            if (m[v] > 0)
                return true;
        return false;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty())
            throw InternalInvariantBroken("leading_monomial of zero");
        return terms_.begin()->first;
    }

    Rational leading_coefficient() const {
        if (terms_.empty())
            return 0;
        return terms_.begin()->second;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.size() != nvars_)
            throw InternalInvariantBroken("monomial arity mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0)
                terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    BasePolynomial operator-() const {
        BasePolynomial r(nvars_);
        for (const auto& [m, c] : terms_)
            r.terms_[m] = -c;
        return r;
    }

    BasePolynomial& operator+=(const BasePolynomial& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    BasePolynomial& operator-=(const BasePolynomial& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    friend BasePolynomial operator+(BasePolynomial a, const BasePolynomial& b) {
        a += b;
        return a;
    }

    friend BasePolynomial operator-(BasePolynomial a, const BasePolynomial& b) {
        a -= b;
        return a;
    }

    friend BasePolynomial operator*(const BasePolynomial& a, const BasePolynomial& b) {
        a.check_arity(b);
        BasePolynomial r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i)
                    m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    BasePolynomial& operator*=(const BasePolynomial& o) { return *this = *this * o; }

    BasePolynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coe] : terms_)
            coe *= c;
        return *this;
    }

    friend BasePolynomial operator*(BasePolynomial a, const Rational& c) {
        a *= c;
        return a;
    }

    friend BasePolynomial operator*(const Rational& c, BasePolynomial a) {
        a *= c;
        return a;
    }

    BasePolynomial pow(int e) const {
        if (e < 0)
            throw UnsupportedInput("negative polynomial power");
        BasePolynomial r = constant(nvars_, 1);
        BasePolynomial base = *this;
        while (e > 0) {
            if (e & 1)
                r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    BasePolynomial derivative(std::size_t v) const {
        if (v >= nvars_)
            throw UnknownCoordinate("derivative index out of range");
        BasePolynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[v] == 0)
                continue;
            Monomial n = m;
            n[v] -= 1;
            r.add_term(n, c * m[v]);
        }
        return r;
    }

    // Evaluate at polynomial arguments; the result lives over the arguments'
    // variable space.
    BasePolynomial substitute(const std::vector<BasePolynomial>& vals) const {
        if (vals.size() != nvars_)
            throw FrameMismatch("substitution must cover every variable");
        std::size_t out_vars = vals.empty() ? 0 : vals.front().nvars();
        for (const auto& v : vals)
            if (v.nvars() != out_vars)
                throw FrameMismatch("substitution values over different variable spaces");
        std::vector<std::vector<BasePolynomial>> pows(nvars_);
        auto power = [&](std::size_t v, int e) -> const BasePolynomial& {
            auto& cache = pows[v];
            if (cache.empty())
                cache.push_back(constant(out_vars, 1));
            while (static_cast<int>(cache.size()) <= e)
                cache.push_back(cache.back() * vals[v]);
            return cache[e];
        };
        BasePolynomial r(out_vars);
        for (const auto& [m, c] : terms_) {
            BasePolynomial t = constant(out_vars, c);
            for (std::size_t v = 0; v < nvars_; ++v)
                if (m[v] > 0)
                    t *= power(v, m[v]);
            r += t;
        }
        return r;
    }

    bool operator==(const BasePolynomial& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    bool operator!=(const BasePolynomial& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0)
                    a = -a;
            }
            out += term_string(m, a, names);
            first = false;
        }
        return out;
    }

private:
    static int monomial_degree(const Monomial& m) {
        return std::accumulate(m.begin(), m.end(), 0);
    }

    void check_arity(const BasePolynomial& o) const {
        if (nvars_ != o.nvars_)
            throw FrameMismatch("polynomials over different variable spaces");
    }

    std::string term_string(const Monomial& m, const Rational& a,
                            const std::vector<std::string>& names) const {
        std::string vars;
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (m[v] == 0)
                continue;
            if (!vars.empty())
                vars += "*";
            vars += names.at(v);
            if (m[v] > 1)
                vars += "^" + std::to_string(m[v]);
        }
        if (vars.empty())
            return filtra::to_string(a);
        if (a == 1)
            return vars;
        return filtra::to_string(a) + "*" + vars;
    }

    std::size_t nvars_;
    Terms terms_;
};

inline BasePolynomial monic(const BasePolynomial& p) {
    if (p.is_zero())
        return p;
    Rational lc = p.leading_coefficient();
    BasePolynomial r = p;
    r *= Rational(1) / lc;
    return r;
}

// Exact quotient; throws if the division leaves a remainder.
inline BasePolynomial divide_exact(const BasePolynomial& f, const BasePolynomial& g) {
    if (g.is_zero())
        throw DivisionByZero("exact division by zero polynomial");
    if (f.nvars() != g.nvars())
        throw FrameMismatch("exact division over different variable spaces");
    BasePolynomial q(f.nvars());
    BasePolynomial r = f;
    const auto& glm = g.leading_monomial();
    Rational glc = g.leading_coefficient();
    while (!r.is_zero()) {
        const auto& rlm = r.leading_monomial();
        BasePolynomial::Monomial m(f.nvars());
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            m[i] = rlm[i] - glm[i];
            if (m[i] < 0)
                throw InternalInvariantBroken("inexact polynomial division");
        }
        Rational c = r.leading_coefficient() / glc;
        BasePolynomial t(f.nvars());
        t.add_term(m, c);
        q += t;
        r -= t * g;
    }
    return q;
}

namespace detail {

// View of p as a univariate polynomial in variable v; coefficients stay in
// the full variable space with the v-exponent zeroed.
inline std::map<int, BasePolynomial> univariate_view(const BasePolynomial& p, std::size_t v) {
    std::map<int, BasePolynomial> coeffs;
    for (const auto& [m, c] : p.terms()) {
        auto key = m;
        int e = key[v];
        key[v] = 0;
        auto [it, inserted] = coeffs.try_emplace(e, p.nvars());
        it->second.add_term(key, c);
    }
    return coeffs;
}

inline BasePolynomial leading_coeff_in(const BasePolynomial& p, std::size_t v) {
    auto view = univariate_view(p, v);
    return view.rbegin()->second;
}

inline BasePolynomial times_var_power(const BasePolynomial& p, std::size_t v, int e) {
    BasePolynomial r(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        auto key = m;
        key[v] += e;
        r.add_term(key, c);
    }
    return r;
}

inline BasePolynomial pseudo_remainder(BasePolynomial a, const BasePolynomial& b, std::size_t v) {
    int db = b.degree_in(v);
    BasePolynomial lcb = leading_coeff_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        int da = a.degree_in(v);
        BasePolynomial lca = leading_coeff_in(a, v);
        a = lcb * a - times_var_power(lca * b, v, da - db);
    }
    return a;
}

} // namespace detail

BasePolynomial gcd(const BasePolynomial& a, const BasePolynomial& b);

namespace detail {

inline BasePolynomial content_in(const BasePolynomial& p, std::size_t v) {
    BasePolynomial c(p.nvars());
    for (const auto& [e, coeff] : univariate_view(p, v))
        c = gcd(c, coeff);
    return c;
}

} // namespace detail

// Monic gcd over the rationals (primitive polynomial remainder sequence).
inline BasePolynomial gcd(const BasePolynomial& a, const BasePolynomial& b) {
    if (a.nvars() != b.nvars())
        throw FrameMismatch("gcd over different variable spaces");
    if (a.is_zero())
        return monic(b);
    if (b.is_zero())
        return monic(a);
    if (a.is_constant() || b.is_constant())
        return BasePolynomial::constant(a.nvars(), 1);
    std::size_t v = 0;
    while (!a.depends_on(v) && !b.depends_on(v))
        ++v;
    if (!b.depends_on(v))
        return gcd(detail::content_in(a, v), b);
    if (!a.depends_on(v))
        return gcd(a, detail::content_in(b, v));
    BasePolynomial ca = detail::content_in(a, v);
    BasePolynomial cb = detail::content_in(b, v);
    BasePolynomial c = gcd(ca, cb);
    BasePolynomial f = divide_exact(a, ca);
    BasePolynomial g = divide_exact(b, cb);
    if (f.degree_in(v) < g.degree_in(v))
        std::swap(f, g);
    while (!g.is_zero()) {
        BasePolynomial r = detail::pseudo_remainder(f, g, v);
        f = g;
        if (r.is_zero())
            g = BasePolynomial(a.nvars());
        else
            g = divide_exact(r, detail::content_in(r, v));
    }
    return monic(c * f);
}

} // namespace filtra
