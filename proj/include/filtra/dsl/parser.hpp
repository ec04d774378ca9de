#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "document.hpp"
#include "lexer.hpp"

namespace filtra::dsl {

// Recursive-descent parser. Expressions are evaluated on the spot into the
// canonical algebra types, so a parsed document carries no syntax trees and
// two texts denoting the same object parse equal.
class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Document parse_document() {
        while (!at(Tok::End)) {
            Token head = expect(Tok::Ident, "a block keyword");
            if (head.text == "bundle")
                parse_bundle(head);
            else if (head.text == "morphism")
                parse_morphism(head);
            else if (head.text == "tower")
                parse_tower(head);
            else if (head.text == "filtration")
                parse_filtration(head);
            else
                fail(head, "'bundle', 'morphism', 'tower' or 'filtration'");
        }
        return std::move(doc_);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Document doc_;
    std::set<std::string> object_names_;

    // token plumbing

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    bool at(Tok k) const { return peek().kind == k; }

    bool at_keyword(const char* kw) const {
        return peek().kind == Tok::Ident && peek().text == kw;
    }

    Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(Tok k) {
        if (!at(k))
            return false;
        advance();
        return true;
    }

    Token expect(Tok k, const char* what) {
        if (!at(k))
            fail(peek(), what);
        return advance();
    }

    [[noreturn]] void fail(const Token& t, const std::string& expected) const {
        std::string got = t.kind == Tok::Ident || t.kind == Tok::Int
                              ? "'" + t.text + "'"
                              : token_name(t.kind);
        throw SyntaxError(at(t.line, t.col) + ": expected " + expected + ", found " + got);
    }

    static std::string at(int line, int col) { return dsl::at(line, col); }

    int small_int(const Token& t) const {
        try {
            std::size_t used = 0;
            int v = std::stoi(t.text, &used);
            if (used != t.text.size())
                throw std::out_of_range("");
            return v;
        } catch (const std::exception&) {
            throw SyntaxError(at(t.line, t.col) + ": integer '" + t.text + "' out of range");
        }
    }

    int expect_small_int(const char* what) { return small_int(expect(Tok::Int, what)); }

    std::string expect_name(const char* what) { return expect(Tok::Ident, what).text; }

    Weight parse_weight() {
        expect(Tok::LParen, "'(' opening a weight");
        std::vector<int> c;
        c.push_back(expect_small_int("a weight component"));
        while (accept(Tok::Comma))
            c.push_back(expect_small_int("a weight component"));
        expect(Tok::RParen, "')' closing the weight");
        return Weight(std::move(c));
    }

    void register_object(const Token& name_tok) {
        if (!object_names_.insert(name_tok.text).second)
            throw SyntaxError(at(name_tok.line, name_tok.col) + ": duplicate object name '" +
                              name_tok.text + "'");
    }

    // expression evaluation

    struct Ctx {
        FramePtr frame;
        const std::map<std::string, WeightedPolynomial>* symbols;
    };

    static std::map<std::string, WeightedPolynomial> frame_symbols(const FramePtr& f,
                                                                   bool base_only = false) {
        std::map<std::string, WeightedPolynomial> s;
        for (std::size_t a = 0; a < f->n_base(); ++a)
            s.emplace(f->base()[a].name, WeightedPolynomial::base_variable(f, a));
        if (!base_only)
            for (std::size_t j = 0; j < f->n_fibers(); ++j)
                s.emplace(f->fibers()[j].name, WeightedPolynomial::fiber_variable(f, j));
        return s;
    }

    WeightedPolynomial parse_expr(const Ctx& ctx) {
        bool neg = false;
        while (true) {
            if (accept(Tok::Minus))
                neg = !neg;
            else if (!accept(Tok::Plus))
                break;
        }
        WeightedPolynomial v = parse_term(ctx);
        if (neg)
            v = -v;
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = advance().kind == Tok::Minus;
            WeightedPolynomial rhs = parse_term(ctx);
            v = minus ? v - rhs : v + rhs;
        }
        return v;
    }

    WeightedPolynomial parse_term(const Ctx& ctx) {
        WeightedPolynomial v = parse_factor(ctx);
        while (at(Tok::Star) || at(Tok::Slash)) {
            Token op = advance();
            WeightedPolynomial rhs = parse_factor(ctx);
            if (op.kind == Tok::Star) {
                v = v * rhs;
                continue;
            }
            if (rhs.is_zero())
                throw SyntaxError(at(op.line, op.col) + ": division by zero");
            for (std::size_t j = 0; j < ctx.frame->n_fibers(); ++j)
                if (rhs.depends_on_fiber(j))
                    throw FiberDenominator(at(op.line, op.col) +
                                           ": denominator involves fiber coordinate '" +
                                           ctx.frame->fibers()[j].name + "'");
            BaseFunction d =
                rhs.coefficient(WeightedPolynomial::Monomial(ctx.frame->n_fibers(), 0));
            v *= BaseFunction::constant(ctx.frame->n_base(), 1) / d;
        }
        return v;
    }

    WeightedPolynomial parse_factor(const Ctx& ctx) {
        if (accept(Tok::Minus))
            return -parse_factor(ctx);
        if (accept(Tok::Plus))
            return parse_factor(ctx);
        WeightedPolynomial v = parse_atom(ctx);
        if (accept(Tok::Caret)) {
            int e = expect_small_int("a non-negative exponent");
            WeightedPolynomial r = WeightedPolynomial::constant(ctx.frame, 1);
            for (int i = 0; i < e; ++i)
                r *= v;
            return r;
        }
        return v;
    }

    WeightedPolynomial parse_atom(const Ctx& ctx) {
        if (at(Tok::Int)) {
            Token t = advance();
            return WeightedPolynomial::constant(ctx.frame, Rational(Integer(t.text)));
        }
        if (at(Tok::Ident)) {
            Token t = advance();
            auto it = ctx.symbols->find(t.text);
            if (it == ctx.symbols->end())
                throw UndeclaredSymbol(at(t.line, t.col) + ": unknown symbol '" + t.text + "'");
            return it->second;
        }
        if (accept(Tok::LParen)) {
            WeightedPolynomial v = parse_expr(ctx);
            expect(Tok::RParen, "')'");
            return v;
        }
        fail(peek(), "an expression");
    }

    // shared frame/atlas statement machinery for bundle and tower blocks

    struct FrameBuilder {
        std::string block;
        std::size_t axes = 1;
        bool axes_allowed = true;
        bool degree_allowed = true;
        std::optional<Weight> degree;
        std::vector<BaseCoord> base;
        std::vector<FiberCoord> fibers;
        bool any_weight_seen = false;
        std::set<std::string> coord_names;
        FramePtr frame; // set once frozen
    };

    void check_weight_arity(const FrameBuilder& fb, const Weight& w, const Token& where) const {
        if (w.axes() != fb.axes)
            throw SyntaxError(at(where.line, where.col) + ": weight has " +
                              std::to_string(w.axes()) + " components, bundle has " +
                              std::to_string(fb.axes) + " axes");
    }

    void add_coord_name(FrameBuilder& fb, const Token& t) const {
        if (!fb.coord_names.insert(t.text).second)
            throw SyntaxError(at(t.line, t.col) + ": duplicate coordinate '" + t.text + "'");
    }

    void freeze_frame(FrameBuilder& fb) {
        if (fb.frame)
            return;
        Weight deg = Weight::zero(fb.axes);
        for (const auto& fc : fb.fibers)
            deg = componentwise_max(deg, fc.weight);
        if (fb.degree) {
            for (const auto& fc : fb.fibers)
                if (!fc.weight.leq(*fb.degree))
                    throw SyntaxError("in " + fb.block + ": coordinate '" + fc.name +
                                      "' has weight " + fc.weight.to_string() +
                                      " above the declared degree " + fb.degree->to_string());
            deg = *fb.degree;
        }
        fb.frame = make_frame(fb.axes, fb.base, fb.fibers, deg);
    }

    // Returns false when the statement keyword is not a frame/atlas statement.
    bool parse_shape_statement(FrameBuilder& fb, Atlas& atlas) {
        if (!at(Tok::Ident))
            return false;
        const std::string kw = peek().text;
        if (kw == "axes") {
            Token t = advance();
            if (!fb.axes_allowed)
                fail(t, "no 'axes' here (towers are single-axis)");
            if (fb.any_weight_seen || fb.frame)
                throw SyntaxError(at(t.line, t.col) + ": 'axes' must precede every weight");
            int n = expect_small_int("the number of weight axes");
            if (n < 1)
                throw SyntaxError(at(t.line, t.col) + ": at least one axis required");
            fb.axes = std::size_t(n);
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "degree") {
            Token t = advance();
            if (!fb.degree_allowed)
                fail(t, "no 'degree' here (tower levels fix the weights)");
            if (fb.frame)
                throw SyntaxError(at(t.line, t.col) + ": frame is already fixed");
            Token wtok = peek();
            Weight w = parse_weight();
            fb.any_weight_seen = true;
            check_weight_arity(fb, w, wtok);
            fb.degree = w;
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "base" || kw == "vertical") {
            Token t = advance();
            if (fb.frame)
                throw SyntaxError(at(t.line, t.col) + ": frame is already fixed");
            do {
                Token n = expect(Tok::Ident, "a coordinate name");
                add_coord_name(fb, n);
                fb.base.push_back({n.text, kw == "vertical"});
            } while (at(Tok::Ident));
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "coord") {
            Token t = advance();
            if (fb.frame)
                throw SyntaxError(at(t.line, t.col) + ": frame is already fixed");
            Token n = expect(Tok::Ident, "a coordinate name");
            add_coord_name(fb, n);
            Token kwtok = expect(Tok::Ident, "'weight'");
            if (kwtok.text != "weight")
                fail(kwtok, "'weight'");
            Token wtok = peek();
            Weight w = parse_weight();
            fb.any_weight_seen = true;
            check_weight_arity(fb, w, wtok);
            bool nonneg = true;
            for (std::size_t i = 0; i < w.axes(); ++i)
                if (w[i] < 0)
                    nonneg = false;
            if (!nonneg || w.total() < 1)
                throw SyntaxError(at(wtok.line, wtok.col) +
                                  ": fiber weights must be non-negative and non-zero");
            fb.fibers.push_back({n.text, w});
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "charts") {
            advance();
            do {
                Token n = expect(Tok::Ident, "a chart name");
                if (atlas.has_chart(n.text))
                    throw SyntaxError(at(n.line, n.col) + ": duplicate chart '" + n.text + "'");
                atlas.charts.push_back(n.text);
            } while (at(Tok::Ident));
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "overlap") {
            advance();
            std::string a = require_chart(atlas), b = require_chart(atlas);
            atlas.overlaps.emplace_back(a, b);
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "triple") {
            advance();
            std::string a = require_chart(atlas), b = require_chart(atlas),
                        c = require_chart(atlas);
            atlas.triples.push_back({a, b, c});
            expect(Tok::Semi, "';'");
            return true;
        }
        if (kw == "transition") {
            advance();
            std::string src = require_chart(atlas);
            expect(Tok::Arrow, "'->'");
            std::string dst = require_chart(atlas);
            freeze_frame(fb);
            atlas.transitions.push_back({src, dst, parse_rule_block(fb.frame, fb.frame)});
            return true;
        }
        return false;
    }

    std::string require_chart(const Atlas& atlas) {
        Token n = expect(Tok::Ident, "a chart name");
        if (!atlas.has_chart(n.text))
            throw UndeclaredSymbol(at(n.line, n.col) + ": unknown chart '" + n.text + "'");
        return n.text;
    }

    // "{ x' = expr; Y' = expr; ... }" with one rule per target coordinate.
    ChartMap parse_rule_block(const FramePtr& src, const FramePtr& dst) {
        Token open = expect(Tok::LBrace, "'{'");
        auto symbols = frame_symbols(src);
        Ctx ctx{src, &symbols};
        std::map<std::string, std::pair<Token, WeightedPolynomial>> rules;
        while (!accept(Tok::RBrace)) {
            Token lhs = expect(Tok::Ident, "a primed coordinate rule or '}'");
            expect(Tok::Prime, "''' after the target coordinate name");
            if (!dst->has_base(lhs.text) && !dst->has_fiber(lhs.text))
                throw UndeclaredSymbol(at(lhs.line, lhs.col) + ": unknown coordinate '" +
                                       lhs.text + "'");
            if (rules.count(lhs.text))
                throw SyntaxError(at(lhs.line, lhs.col) + ": duplicate rule for '" + lhs.text +
                                  "'");
            expect(Tok::Equal, "'='");
            WeightedPolynomial rhs = parse_expr(ctx);
            expect(Tok::Semi, "';'");
            rules.emplace(lhs.text, std::make_pair(lhs, std::move(rhs)));
        }
        std::vector<BaseFunction> base_rules;
        for (std::size_t a = 0; a < dst->n_base(); ++a) {
            const std::string& nm = dst->base()[a].name;
            auto it = rules.find(nm);
            if (it == rules.end())
                throw SyntaxError(at(open.line, open.col) + ": missing rule for '" + nm + "'");
            const auto& [tok, wp] = it->second;
            for (std::size_t j = 0; j < src->n_fibers(); ++j)
                if (wp.depends_on_fiber(j))
                    throw SyntaxError(at(tok.line, tok.col) + ": rule for base coordinate '" +
                                      nm + "' must not involve fiber coordinates");
            base_rules.push_back(
                wp.coefficient(WeightedPolynomial::Monomial(src->n_fibers(), 0)));
            rules.erase(it);
        }
        std::vector<WeightedPolynomial> fiber_rules;
        for (std::size_t j = 0; j < dst->n_fibers(); ++j) {
            const std::string& nm = dst->fibers()[j].name;
            auto it = rules.find(nm);
            if (it == rules.end())
                throw SyntaxError(at(open.line, open.col) + ": missing rule for '" + nm + "'");
            fiber_rules.push_back(std::move(it->second.second));
            rules.erase(it);
        }
        return make_chart_map(src, dst, std::move(base_rules), std::move(fiber_rules));
    }

    // blocks

    void parse_bundle(const Token&) {
        Token name = expect(Tok::Ident, "a bundle name");
        register_object(name);
        expect(Tok::LBrace, "'{'");
        FrameBuilder fb;
        fb.block = "bundle " + name.text;
        FilteredBundleSpec spec;
        spec.name = name.text;
        while (!accept(Tok::RBrace)) {
            if (!parse_shape_statement(fb, spec.atlas))
                fail(peek(), "a bundle statement or '}'");
        }
        freeze_frame(fb);
        spec.frame = fb.frame;
        doc_.order.emplace_back(BlockKind::Bundle, doc_.bundles.size());
        doc_.bundles.push_back(std::move(spec));
    }

    void parse_tower(const Token&) {
        Token name = expect(Tok::Ident, "a tower name");
        register_object(name);
        expect(Tok::LBrace, "'{'");
        FrameBuilder fb;
        fb.block = "tower " + name.text;
        fb.axes_allowed = false;
        fb.degree_allowed = false;
        AffineTowerSpec spec;
        spec.name = name.text;
        while (!accept(Tok::RBrace)) {
            if (!parse_shape_statement(fb, spec.atlas))
                fail(peek(), "a tower statement or '}'");
        }
        freeze_frame(fb);
        spec.frame = fb.frame;
        doc_.order.emplace_back(BlockKind::Tower, doc_.towers.size());
        doc_.towers.push_back(std::move(spec));
    }

    void parse_morphism(const Token&) {
        Token name = expect(Tok::Ident, "a morphism name");
        register_object(name);
        expect(Tok::Colon, "':'");
        Token src_tok = expect(Tok::Ident, "the source bundle name");
        const FilteredBundleSpec* src = doc_.find_bundle(src_tok.text);
        if (!src)
            throw UndeclaredSymbol(at(src_tok.line, src_tok.col) + ": unknown bundle '" +
                                   src_tok.text + "'");
        expect(Tok::Arrow, "'->'");
        Token dst_tok = expect(Tok::Ident, "the target bundle name");
        const FilteredBundleSpec* dst = doc_.find_bundle(dst_tok.text);
        if (!dst)
            throw UndeclaredSymbol(at(dst_tok.line, dst_tok.col) + ": unknown bundle '" +
                                   dst_tok.text + "'");
        Token open = expect(Tok::LBrace, "'{'");

        FilteredMorphism mor;
        mor.name = name.text;
        mor.source_bundle = *src;
        mor.target_bundle = *dst;
        bool have_chart = false, have_map = false;
        std::optional<ChartMap> map;
        while (!accept(Tok::RBrace)) {
            Token kw = expect(Tok::Ident, "'chart', 'map', 'inverse' or '}'");
            if (kw.text == "chart") {
                if (have_chart)
                    throw SyntaxError(at(kw.line, kw.col) + ": duplicate 'chart' statement");
                Token u = expect(Tok::Ident, "a source chart name");
                if (!src->atlas.has_chart(u.text))
                    throw UndeclaredSymbol(at(u.line, u.col) + ": unknown chart '" + u.text +
                                           "' in bundle '" + src->name + "'");
                expect(Tok::Arrow, "'->'");
                Token v = expect(Tok::Ident, "a target chart name");
                if (!dst->atlas.has_chart(v.text))
                    throw UndeclaredSymbol(at(v.line, v.col) + ": unknown chart '" + v.text +
                                           "' in bundle '" + dst->name + "'");
                mor.source_chart = u.text;
                mor.target_chart = v.text;
                have_chart = true;
                expect(Tok::Semi, "';'");
            } else if (kw.text == "map") {
                if (have_map)
                    throw SyntaxError(at(kw.line, kw.col) + ": duplicate 'map' block");
                map = parse_rule_block(src->frame, dst->frame);
                have_map = true;
            } else if (kw.text == "inverse") {
                if (mor.base_inverse)
                    throw SyntaxError(at(kw.line, kw.col) + ": duplicate 'inverse' block");
                mor.base_inverse = parse_inverse_block(src->frame, dst->frame);
            } else {
                fail(kw, "'chart', 'map', 'inverse' or '}'");
            }
        }
        if (!have_chart)
            throw SyntaxError(at(open.line, open.col) + ": morphism needs a 'chart' statement");
        if (!have_map)
            throw SyntaxError(at(open.line, open.col) + ": morphism needs a 'map' block");
        mor.map = std::move(*map);
        doc_.order.emplace_back(BlockKind::Morphism, doc_.morphisms.size());
        doc_.morphisms.push_back(std::move(mor));
    }

    // "{ x = expr; ... }": source base coordinates in terms of target base
    // coordinates, one rule each, fibers out of scope.
    std::vector<BaseFunction> parse_inverse_block(const FramePtr& src, const FramePtr& dst) {
        Token open = expect(Tok::LBrace, "'{'");
        auto symbols = frame_symbols(dst, /*base_only=*/true);
        Ctx ctx{dst, &symbols};
        std::map<std::string, WeightedPolynomial> rules;
        while (!accept(Tok::RBrace)) {
            Token lhs = expect(Tok::Ident, "a source base coordinate or '}'");
            bool known = false;
            for (std::size_t a = 0; a < src->n_base() && !known; ++a)
                known = src->base()[a].name == lhs.text;
            if (!known)
                throw UndeclaredSymbol(at(lhs.line, lhs.col) + ": unknown base coordinate '" +
                                       lhs.text + "'");
            if (rules.count(lhs.text))
                throw SyntaxError(at(lhs.line, lhs.col) + ": duplicate rule for '" + lhs.text +
                                  "'");
            expect(Tok::Equal, "'='");
            rules.emplace(lhs.text, parse_expr(ctx));
            expect(Tok::Semi, "';'");
        }
        std::vector<BaseFunction> inv;
        for (std::size_t a = 0; a < src->n_base(); ++a) {
            auto it = rules.find(src->base()[a].name);
            if (it == rules.end())
                throw SyntaxError(at(open.line, open.col) + ": missing rule for '" +
                                  src->base()[a].name + "'");
            inv.push_back(
                it->second.coefficient(WeightedPolynomial::Monomial(dst->n_fibers(), 0)));
        }
        return inv;
    }

    void parse_filtration(const Token&) {
        Token name = expect(Tok::Ident, "a filtration name");
        register_object(name);
        expect(Tok::LBrace, "'{'");
        FiltrationDecl decl;
        decl.name = name.text;
        FramePtr ambient;
        bool have_bound = false;
        int last_level = -1;
        while (!accept(Tok::RBrace)) {
            Token kw = expect(Tok::Ident, "'ambient', 'bound', 'level' or '}'");
            if (kw.text == "ambient") {
                if (ambient)
                    throw SyntaxError(at(kw.line, kw.col) + ": duplicate 'ambient' statement");
                std::vector<BaseCoord> vars;
                std::set<std::string> seen;
                do {
                    Token n = expect(Tok::Ident, "a variable name");
                    if (!seen.insert(n.text).second)
                        throw SyntaxError(at(n.line, n.col) + ": duplicate variable '" +
                                          n.text + "'");
                    decl.vars.push_back(n.text);
                    vars.push_back({n.text, false});
                } while (at(Tok::Ident));
                expect(Tok::Semi, "';'");
                ambient = make_frame(1, std::move(vars), {}, Weight({0}));
                decl.presentation.n_vars = decl.vars.size();
            } else if (kw.text == "bound") {
                if (have_bound)
                    throw SyntaxError(at(kw.line, kw.col) + ": duplicate 'bound' statement");
                decl.presentation.bound = expect_small_int("a degree bound");
                have_bound = true;
                expect(Tok::Semi, "';'");
            } else if (kw.text == "level") {
                if (!ambient || !have_bound)
                    throw SyntaxError(at(kw.line, kw.col) +
                                      ": 'ambient' and 'bound' must precede levels");
                Token idx_tok = expect(Tok::Int, "a level index");
                int idx = small_int(idx_tok);
                if (idx <= last_level)
                    throw SyntaxError(at(idx_tok.line, idx_tok.col) +
                                      ": level indices must increase");
                last_level = idx;
                expect(Tok::Colon, "':'");
                decl.presentation.levels.resize(std::size_t(idx) + 1);
                auto symbols = frame_symbols(ambient);
                Ctx ctx{ambient, &symbols};
                if (!at(Tok::Semi)) {
                    do {
                        Token where = peek();
                        WeightedPolynomial v = parse_expr(ctx);
                        BaseFunction f = v.coefficient(WeightedPolynomial::Monomial(0, 0));
                        if (!f.is_polynomial())
                            throw SyntaxError(at(where.line, where.col) +
                                              ": level generators must be polynomial");
                        decl.presentation.levels[std::size_t(idx)].push_back(f.num());
                    } while (accept(Tok::Comma));
                }
                expect(Tok::Semi, "';'");
            } else {
                fail(kw, "'ambient', 'bound', 'level' or '}'");
            }
        }
        if (!ambient)
            throw SyntaxError("filtration '" + decl.name + "' needs an 'ambient' statement");
        doc_.order.emplace_back(BlockKind::Filtration, doc_.filtrations.size());
        doc_.filtrations.push_back(std::move(decl));
    }
};

inline Document parse(const std::string& text) { return Parser(text).parse_document(); }

} // namespace filtra::dsl
