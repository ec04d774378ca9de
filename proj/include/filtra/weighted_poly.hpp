#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "base_function.hpp"
#include "frame.hpp"

namespace filtra {

// Polynomial in the fibre indeterminates of a frame, with rational functions
// of the base coordinates as coefficients. The base carries weight zero, so
// the weight of a term is decided by its fibre monomial alone.
class WeightedPolynomial {
public:
    using Monomial = std::vector<int>;

    explicit WeightedPolynomial(FramePtr frame) : frame_(std::move(frame)) {
        if (!frame_)
            throw InvalidFrame("weighted polynomial without a frame");
    }

    static WeightedPolynomial from_base(FramePtr frame, const BaseFunction& f) {
        WeightedPolynomial p(std::move(frame));
        if (f.nvars() != p.frame_->n_base())
            throw FrameMismatch("coefficient over wrong base");
        if (!f.is_zero())
            p.terms_[Monomial(p.frame_->n_fibers(), 0)] = f;
        return p;
    }

    static WeightedPolynomial constant(FramePtr frame, const Rational& c) {
        std::size_t nb = frame->n_base();
        return from_base(std::move(frame), BaseFunction::constant(nb, c));
    }

    static WeightedPolynomial base_variable(FramePtr frame, std::size_t i) {
        std::size_t nb = frame->n_base();
        return from_base(std::move(frame), BaseFunction::variable(nb, i));
    }

    static WeightedPolynomial fiber_variable(FramePtr frame, std::size_t j) {
        WeightedPolynomial p(std::move(frame));
        if (j >= p.frame_->n_fibers())
            throw UnknownCoordinate("fiber index out of range");
        Monomial m(p.frame_->n_fibers(), 0);
        m[j] = 1;
        p.terms_[m] = BaseFunction::constant(p.frame_->n_base(), 1);
        return p;
    }

    const FramePtr& frame() const { return frame_; }
    const std::map<Monomial, BaseFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const BaseFunction& c) {
        if (m.size() != frame_->n_fibers())
            throw InternalInvariantBroken("fiber monomial arity mismatch");
        if (c.nvars() != frame_->n_base())
            throw FrameMismatch("coefficient over wrong base");
        if (c.is_zero())
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    BaseFunction coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? BaseFunction(frame_->n_base()) : it->second;
    }

    // Coefficient of the bare degree-one monomial in fiber j.
    BaseFunction linear_coefficient(std::size_t j) const {
        Monomial m(frame_->n_fibers(), 0);
        m.at(j) = 1;
        return coefficient(m);
    }

    Weight monomial_weight(const Monomial& m) const {
        Weight w = Weight::zero(frame_->axes());
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[j] > 0)
                w += scaled(frame_->fibers()[j].weight, m[j]);
        return w;
    }

    // Componentwise maximum of the term weights; nullopt (bottom) for zero.
    std::optional<Weight> degree() const {
        if (terms_.empty())
            return std::nullopt;
        Weight d = Weight::zero(frame_->axes());
        for (const auto& [m, c] : terms_)
            d = componentwise_max(d, monomial_weight(m));
        return d;
    }

    WeightedPolynomial homogeneous_component(const Weight& w) const {
        WeightedPolynomial r(frame_);
        for (const auto& [m, c] : terms_)
            if (monomial_weight(m) == w)
                r.terms_[m] = c;
        return r;
    }

    WeightedPolynomial operator-() const {
        WeightedPolynomial r(frame_);
        for (const auto& [m, c] : terms_)
            r.terms_[m] = -c;
        return r;
    }

    WeightedPolynomial& operator+=(const WeightedPolynomial& o) {
        require_same_frame(frame_, o.frame_, "weighted polynomials over different frames");
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    WeightedPolynomial& operator-=(const WeightedPolynomial& o) {
        require_same_frame(frame_, o.frame_, "weighted polynomials over different frames");
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    friend WeightedPolynomial operator+(WeightedPolynomial a, const WeightedPolynomial& b) {
        a += b;
        return a;
    }

    friend WeightedPolynomial operator-(WeightedPolynomial a, const WeightedPolynomial& b) {
        a -= b;
        return a;
    }

    friend WeightedPolynomial operator*(const WeightedPolynomial& a, const WeightedPolynomial& b) {
        require_same_frame(a.frame_, b.frame_, "weighted polynomials over different frames");
        WeightedPolynomial r(a.frame_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t j = 0; j < ma.size(); ++j)
                    m[j] = ma[j] + mb[j];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    WeightedPolynomial& operator*=(const WeightedPolynomial& o) { return *this = *this * o; }

    WeightedPolynomial& operator*=(const BaseFunction& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coe] : terms_)
            coe *= c;
        return *this;
    }

    friend WeightedPolynomial operator*(WeightedPolynomial a, const BaseFunction& c) {
        a *= c;
        return a;
    }

    friend WeightedPolynomial operator*(const BaseFunction& c, WeightedPolynomial a) {
        a *= c;
        return a;
    }

    WeightedPolynomial& operator*=(const Rational& c) {
        return *this *= BaseFunction::constant(frame_->n_base(), c);
    }

    friend WeightedPolynomial operator*(WeightedPolynomial a, const Rational& c) {
        a *= c;
        return a;
    }

    friend WeightedPolynomial operator*(const Rational& c, WeightedPolynomial a) {
        a *= c;
        return a;
    }

    // Division by a fibre-free function; the only division the algebra admits.
    WeightedPolynomial divided_by(const BaseFunction& c) const {
        if (c.is_zero())
            throw DivisionByZero("division by the zero function");
        WeightedPolynomial r(frame_);
        for (const auto& [m, coe] : terms_)
            r.terms_[m] = coe / c;
        return r;
    }

    WeightedPolynomial pow(int e) const {
        if (e < 0)
            throw UnsupportedInput("negative power of a fibre polynomial");
        WeightedPolynomial r = constant(frame_, 1);
        WeightedPolynomial base = *this;
        while (e > 0) {
            if (e & 1)
                r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    WeightedPolynomial fiber_partial(std::size_t j) const {
        if (j >= frame_->n_fibers())
            throw UnknownCoordinate("fiber index out of range");
        WeightedPolynomial r(frame_);
        for (const auto& [m, c] : terms_) {
            if (m[j] == 0)
                continue;
            Monomial k = m;
            k[j] -= 1;
            r.add_term(k, c * BaseFunction::constant(frame_->n_base(), m[j]));
        }
        return r;
    }

    WeightedPolynomial base_partial(std::size_t i) const {
        if (i >= frame_->n_base())
            throw UnknownCoordinate("base index out of range");
        WeightedPolynomial r(frame_);
        for (const auto& [m, c] : terms_)
            r.add_term(m, c.derivative(i));
        return r;
    }

    bool is_base() const {
        for (const auto& [m, c] : terms_)
            for (int e : m)
                if (e > 0)
                    return false;
        return true;
    }

    BaseFunction as_base() const {
        if (!is_base())
            throw UnsupportedInput("fibre-dependent expression where a base function is required");
        if (terms_.empty())
            return BaseFunction(frame_->n_base());
        return terms_.begin()->second;
    }

    bool depends_on_fiber(std::size_t j) const {
        for (const auto& [m, c] : terms_)
            if (m[j] > 0)
                return true;
        return false;
    }

    // Simultaneous substitution of base and fibre coordinates; the images
    // live over the target frame.
    WeightedPolynomial substitute(const std::vector<BaseFunction>& base_images,
                                  const std::vector<WeightedPolynomial>& fiber_images,
                                  const FramePtr& target) const {
        if (base_images.size() != frame_->n_base() || fiber_images.size() != frame_->n_fibers())
            throw FrameMismatch("substitution must cover every coordinate");
        for (const auto& f : base_images)
            if (f.nvars() != target->n_base())
                throw FrameMismatch("base image over wrong frame");
        for (const auto& p : fiber_images)
            require_same_frame(p.frame(), target, "fiber image over wrong frame");
        std::vector<std::vector<WeightedPolynomial>> pows(fiber_images.size());
        auto power = [&](std::size_t j, int e) -> const WeightedPolynomial& {
            auto& cache = pows[j];
            if (cache.empty())
                cache.push_back(constant(target, 1));
            while (static_cast<int>(cache.size()) <= e)
                cache.push_back(cache.back() * fiber_images[j]);
            return cache[e];
        };
        WeightedPolynomial r(target);
        for (const auto& [m, c] : terms_) {
            WeightedPolynomial t = from_base(target, c.substitute(base_images));
            for (std::size_t j = 0; j < m.size(); ++j)
                if (m[j] > 0)
                    t *= power(j, m[j]);
            r += t;
        }
        return r;
    }

    bool operator==(const WeightedPolynomial& o) const {
        return same_frame(frame_, o.frame_) && terms_ == o.terms_;
    }

    bool operator!=(const WeightedPolynomial& o) const { return !(*this == o); }

    std::string to_string() const {
        if (terms_.empty())
            return "0";
        // Print by descending total weight, then descending exponents.
        std::vector<const std::pair<const Monomial, BaseFunction>*> order;
        for (const auto& term : terms_)
            order.push_back(&term);
        std::stable_sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
            int wa = monomial_weight(a->first).total();
            int wb = monomial_weight(b->first).total();
            if (wa != wb)
                return wa > wb;
            return a->first > b->first;
        });
        const auto base_names = frame_->base_names();
        std::string out;
        bool first = true;
        for (const auto* term : order) {
            std::string body;
            bool negative = false;
            render_term(term->first, term->second, base_names, body, negative);
            if (first) {
                out += negative ? "-" + body : body;
            } else {
                out += negative ? " - " + body : " + " + body;
            }
            first = false;
        }
        return out;
    }

private:
    void render_term(const Monomial& m, const BaseFunction& c,
                     const std::vector<std::string>& base_names, std::string& body,
                     bool& negative) const {
        std::string mono;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += frame_->fibers()[j].name;
            if (m[j] > 1)
                mono += "^" + std::to_string(m[j]);
        }
        bool single_term_poly = c.is_polynomial() && c.num().terms().size() == 1;
        if (mono.empty()) {
            if (c.is_polynomial()) {
                body = c.to_string(base_names); // sums flatten into the surrounding sum
                if (!body.empty() && body[0] == '-') {
                    negative = true;
                    body = body.substr(1);
                }
            } else {
                body = c.to_string(base_names);
            }
            return;
        }
        if (single_term_poly) {
            BaseFunction cc = c;
            if (c.num().leading_coefficient() < 0) {
                negative = true;
                cc = -c;
            }
            body = cc.is_one() ? mono : cc.to_string(base_names) + "*" + mono;
        } else if (c.is_polynomial()) {
            body = "(" + c.to_string(base_names) + ")*" + mono;
        } else {
            body = c.to_string(base_names) + "*" + mono; // fraction already wrapped
        }
    }

    FramePtr frame_;
    std::map<Monomial, BaseFunction> terms_;
};

} // namespace filtra
