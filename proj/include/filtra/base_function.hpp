#pragma once

#include <string>
#include <vector>

#include "base_poly.hpp"

namespace filtra {

// Rational function in the base coordinates, kept in canonical form:
// numerator and denominator coprime, denominator monic under the term
// order. Structural equality therefore decides semantic equality.
class BaseFunction {
public:
    explicit BaseFunction(std::size_t nvars = 0)
        : num_(nvars), den_(BasePolynomial::constant(nvars, 1)) {}

    BaseFunction(BasePolynomial num, BasePolynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (num_.nvars() != den_.nvars())
            throw FrameMismatch("numerator and denominator over different variable spaces");
        if (den_.is_zero())
            throw DivisionByZero("rational function with zero denominator");
        reduce();
    }

    static BaseFunction from_poly(BasePolynomial p) {
        BaseFunction f(p.nvars());
        f.num_ = std::move(p);
        return f;
    }

    static BaseFunction constant(std::size_t nvars, const Rational& c) {
        return from_poly(BasePolynomial::constant(nvars, c));
    }

    static BaseFunction variable(std::size_t nvars, std::size_t i) {
        return from_poly(BasePolynomial::variable(nvars, i));
    }

    const BasePolynomial& num() const { return num_; }
    const BasePolynomial& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }

    bool is_one() const { return is_constant() && !is_zero() && constant_value() == 1; }

    BaseFunction operator-() const {
        BaseFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend BaseFunction operator+(const BaseFunction& a, const BaseFunction& b) {
        a.check_arity(b);
        if (a.den_ == b.den_)
            return BaseFunction(a.num_ + b.num_, a.den_);
        return BaseFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend BaseFunction operator-(const BaseFunction& a, const BaseFunction& b) {
        return a + (-b);
    }

    friend BaseFunction operator*(const BaseFunction& a, const BaseFunction& b) {
        a.check_arity(b);
        if (a.num_.is_zero() || b.num_.is_zero())
            return BaseFunction(a.nvars());
        return BaseFunction(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend BaseFunction operator/(const BaseFunction& a, const BaseFunction& b) {
        a.check_arity(b);
        if (b.num_.is_zero())
            throw DivisionByZero("division by the zero function");
        return BaseFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    BaseFunction& operator+=(const BaseFunction& o) { return *this = *this + o; }
    BaseFunction& operator-=(const BaseFunction& o) { return *this = *this - o; }
    BaseFunction& operator*=(const BaseFunction& o) { return *this = *this * o; }
    BaseFunction& operator/=(const BaseFunction& o) { return *this = *this / o; }

    BaseFunction pow(int e) const {
        if (e < 0)
            return constant(nvars(), 1) / pow(-e);
        BaseFunction r = constant(nvars(), 1);
        BaseFunction base = *this;
        while (e > 0) {
            if (e & 1)
                r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    BaseFunction derivative(std::size_t v) const {
        if (is_polynomial())
            return BaseFunction(num_.derivative(v), den_);
        return BaseFunction(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
    }

    // Evaluate at rational-function arguments.
    BaseFunction substitute(const std::vector<BaseFunction>& vals) const {
        if (vals.size() != nvars())
            throw FrameMismatch("substitution must cover every variable");
        std::size_t out_vars = vals.empty() ? 0 : vals.front().nvars();
        BaseFunction n = eval_poly(num_, vals, out_vars);
        BaseFunction d = eval_poly(den_, vals, out_vars);
        if (d.is_zero())
            throw DenominatorVanishesIdentically("denominator vanishes under substitution");
        return n / d;
    }

    bool operator==(const BaseFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    bool operator!=(const BaseFunction& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& names) const {
        if (is_polynomial())
            return num_.to_string(names);
        std::string n = num_.to_string(names);
        std::string d = den_.to_string(names);
        return "(" + n + ")/(" + d + ")";
    }

private:
    static BaseFunction eval_poly(const BasePolynomial& p, const std::vector<BaseFunction>& vals,
                                  std::size_t out_vars) {
        for (const auto& v : vals)
            if (v.nvars() != out_vars)
                throw FrameMismatch("substitution values over different variable spaces");
        std::vector<std::vector<BaseFunction>> pows(p.nvars());
        auto power = [&](std::size_t v, int e) -> const BaseFunction& {
            auto& cache = pows[v];
            if (cache.empty())
                cache.push_back(constant(out_vars, 1));
            while (static_cast<int>(cache.size()) <= e)
                cache.push_back(cache.back() * vals[v]);
            return cache[e];
        };
        BaseFunction r(out_vars);
        for (const auto& [m, c] : p.terms()) {
            BaseFunction t = constant(out_vars, c);
            for (std::size_t v = 0; v < p.nvars(); ++v)
                if (m[v] > 0)
                    t *= power(v, m[v]);
            r += t;
        }
        return r;
    }

    void check_arity(const BaseFunction& o) const {
        if (nvars() != o.nvars())
            throw FrameMismatch("functions over different variable spaces");
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = BasePolynomial::constant(num_.nvars(), 1);
            return;
        }
        if (!den_.is_constant()) {
            BasePolynomial g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = divide_exact(num_, g);
                den_ = divide_exact(den_, g);
            }
        }
        Rational lc = den_.leading_coefficient();
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    BasePolynomial num_, den_;
};

} // namespace filtra
