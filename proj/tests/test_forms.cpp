#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "jv/forms.hpp"
#include "jv/parser.hpp"

using namespace jv;
using jvtest::Rng;

namespace {

JetContext ctx1() { return JetContext::make(1, 1, 3); }
JetContext ctx2() { return JetContext::make(2, 1, 2, {"x1", "x2"}, {"y"}); }

Expr P(const std::string& s, const JetContext& ctx) { return parse_expr(s, ctx); }

Form theta(int i, MultiIndex a) { return Form::term(Expr(1), {Factor::theta(i, std::move(a))}); }
Form dbase(int l) { return Form::term(Expr(1), {Factor::dbase(l)}); }

Form random_mixed_form(Rng& rng, const JetContext& ctx, int max_terms)
{
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> nfac(0, 2);
    std::uniform_int_distribution<int> kind(0, 1);
    std::uniform_int_distribution<int> lam(0, ctx.base_dim - 1);
    std::uniform_int_distribution<int> fib(0, ctx.fiber_dim - 1);
    auto idx = multi_indices_up_to(ctx.base_dim, 1);
    std::uniform_int_distribution<size_t> which(0, idx.size() - 1);
    Form w;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        FactorList fs;
        int fac = nfac(rng);
        for (int f = 0; f < fac; ++f) {
            if (kind(rng) == 0)
                fs.push_back(Factor::dbase(lam(rng)));
            else
                fs.push_back(Factor::theta(fib(rng), idx[which(rng)]));
        }
        w.add(jvtest::random_poly_expr(rng, ctx, 3, 2, 1), fs);
    }
    return w;
}

// pullback of a naive-basis form along a closed-form section: substitute the
// coefficients and replace each differential by its section image
Form section_pullback_form(const Form& w, const std::vector<Expr>& sigma, const JetContext& ctx)
{
    int order = 0;
    for (const auto& [fs, c] : w.terms()) {
        order = std::max(order, max_jet_order(c));
        for (const Factor& f : fs)
            if (f.kind != Factor::Kind::dbase)
                order = std::max(order, f.alpha.order() + 1);
    }
    SubstMap pull;
    for (int i = 0; i < ctx.fiber_dim; ++i)
        for (const MultiIndex& alpha : multi_indices_up_to(ctx.base_dim, order + 1)) {
            Expr d = sigma[static_cast<size_t>(i)];
            for (int l = 0; l < ctx.base_dim; ++l)
                for (int c = 0; c < alpha[l]; ++c)
                    d = partial(d, Atom::base(l));
            pull[Atom::jet(i, alpha)] = d;
        }
    Form out;
    for (const auto& [fs, c] : w.terms()) {
        std::vector<std::pair<Expr, FactorList>> parts = {{subst(c, pull), {}}};
        for (const Factor& f : fs) {
            std::vector<std::pair<Expr, FactorList>> next;
            if (f.kind == Factor::Kind::dbase) {
                for (auto& [pc, pf] : parts) {
                    FactorList nf = pf;
                    nf.push_back(f);
                    next.push_back({pc, nf});
                }
            } else if (f.kind == Factor::Kind::djet) {
                for (int l = 0; l < ctx.base_dim; ++l) {
                    Expr coeff = subst(Expr::jet(f.index, f.alpha.plus(l)), pull);
                    for (auto& [pc, pf] : parts) {
                        FactorList nf = pf;
                        nf.push_back(Factor::dbase(l));
                        next.push_back({pc * coeff, nf});
                    }
                }
            } else {
                throw Error("expand contact factors before pulling back");
            }
            parts = std::move(next);
        }
        for (auto& [pc, pf] : parts)
            out.add(pc, pf);
    }
    return out;
}

} // namespace

TEST_CASE("wedge algebra")
{
    auto ctx = ctx2();
    Form th = theta(0, MultiIndex(2));
    CHECK(wedge(th, th).is_zero());
    Form dt = dbase(0);
    CHECK((wedge(dt, th) + wedge(th, dt)).is_zero()); // both degree 1
    Form a = dbase(0) * P("y", ctx);
    Form b = dbase(1) * P("x1", ctx);
    Form expect = Form::term(P("x1*y", ctx), {Factor::dbase(0), Factor::dbase(1)});
    CHECK(wedge(a, b) == expect);
    // horizontal degree beyond n collapses to zero
    CHECK(wedge(wedge(dbase(0), dbase(1)), dbase(0)).is_zero());
}

TEST_CASE("horizontal differential")
{
    auto ctx = ctx1();
    CHECK(d_H(Form::scalar(P("t^2", ctx)), 1) == dbase(0) * P("2*t", ctx));
    CHECK(d_H(Form::scalar(P("y", ctx)), 1) == dbase(0) * P("y_t", ctx));
    // d_H theta^i = -theta^i_(1) ^ d t
    Form dth = d_H(theta(0, MultiIndex(1)), 1);
    Form expect = Form::term(Expr(-1), {Factor::theta(0, MultiIndex{1}), Factor::dbase(0)});
    CHECK(dth == expect);
}

TEST_CASE("vertical differential")
{
    auto ctx = ctx1();
    Form lam = lagrangian_form(P("1/2*y_t^2", ctx), 1);
    Form expect = Form::term(P("y_t", ctx), {Factor::theta(0, MultiIndex{1}), Factor::dbase(0)});
    CHECK(d_V(lam) == expect);
    CHECK(d_V(Form::scalar(P("t^3", ctx))).is_zero());
}

TEST_CASE("d_H^2 = d_V^2 = d_H d_V + d_V d_H = 0 (randomized)")
{
    Rng rng(31);
    for (const auto& ctx : {ctx1(), ctx2()}) {
        for (int k = 0; k < 15; ++k) {
            Form w = random_mixed_form(rng, ctx, 3);
            int n = ctx.base_dim;
            CHECK(d_H(d_H(w, n), n).is_zero());
            CHECK(d_V(d_V(w)).is_zero());
            CHECK((d_H(d_V(w), n) + d_V(d_H(w, n))).is_zero());
        }
    }
}

TEST_CASE("exterior derivative splits as d_H + d_V (expand-and-compare)")
{
    Rng rng(32);
    for (const auto& ctx : {ctx1(), ctx2()}) {
        int n = ctx.base_dim;
        for (int k = 0; k < 15; ++k) {
            Form w = random_mixed_form(rng, ctx, 3);
            Form split = expand_contact(exterior_d(w, n), n);
            Form classical = classical_d(expand_contact(w, n), n);
            CHECK(split == classical);
        }
        CHECK(exterior_d(Form::scalar(Expr(Rational(5, 3))), n).is_zero());
    }
}

TEST_CASE("two-dimensional base cross-check: d(y dx1 - x1 dx2)")
{
    auto ctx = ctx2();
    Form w = dbase(0) * P("y", ctx) - dbase(1) * P("x1", ctx);
    Form viaSplit = expand_contact(exterior_d(w, 2), 2);
    Form viaClassical = classical_d(expand_contact(w, 2), 2);
    CHECK(viaSplit == viaClassical);
    CHECK((exterior_d(exterior_d(w, 2), 2)).is_zero());
}

TEST_CASE("horizontalization")
{
    auto ctx = ctx1();
    Form naive = Form::term(Expr(1), {Factor::djet(0, MultiIndex(1))});
    CHECK(horizontalize(naive, 1) == dbase(0) * P("y_t", ctx));
    CHECK(horizontalize(theta(0, MultiIndex(1)), 1).is_zero());
    CHECK_THROWS_AS(horizontalize(wedge(wedge(dbase(0), theta(0, MultiIndex(1))),
                                        theta(0, MultiIndex{1})),
                                  1),
                    Error);
    Rng rng(33);
    for (int k = 0; k < 10; ++k) {
        Form w = random_mixed_form(rng, ctx1(), 2);
        Form h1 = horizontalize(expand_contact(w, 1), 1);
        CHECK(horizontalize(h1, 1) == h1); // idempotent on horizontal forms
    }
}

TEST_CASE("h after d equals d_H after h on horizontal forms (randomized)")
{
    Rng rng(34);
    auto ctx = ctx2();
    int n = 2;
    for (int k = 0; k < 15; ++k) {
        // horizontal (0, p) input
        Form w = horizontalize(expand_contact(random_mixed_form(rng, ctx, 2), n), n);
        bool toplevel = false;
        for (const auto& [fs, c] : w.terms())
            if (static_cast<int>(fs.size()) >= n)
                toplevel = true;
        if (toplevel)
            continue; // h of an (n+1)-degree image is out of range
        Form lhs = horizontalize(expand_contact(exterior_d(w, n), n), n);
        Form rhs = d_H(w, n);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("contraction")
{
    auto ctx = ctx1();
    auto dt_field = ProjectableVectorField::make(ctx, {P("1", ctx)}, {P("0", ctx)});
    auto jdt = ProlongedField::prolong(dt_field, 2, ctx);
    CHECK(contract(jdt, dbase(0)) == Form::scalar(Expr(1)));

    auto vert = ProjectableVectorField::make(ctx, {P("0", ctx)}, {P("y", ctx)});
    auto jv_ = ProlongedField::prolong(vert, 2, ctx);
    CHECK(contract(jv_, dbase(0)).is_zero());

    // Xi_V . (eta theta ^ omega0) = eta Xi omega0
    Form src = source_form_of({P("y_tt + y", ctx)}, 1);
    CHECK(contract(jv_, src) == lagrangian_form(P("(y_tt + y)*y", ctx), 1));
}

TEST_CASE("contraction is a graded derivation over wedge (randomized)")
{
    Rng rng(35);
    auto ctx = ctx2();
    auto v = ProjectableVectorField::make(
        ctx, {P("x2", ctx), P("1", ctx)}, {P("y + x1", ctx)});
    auto jf = ProlongedField::prolong(v, 2, ctx);
    for (int k = 0; k < 15; ++k) {
        Form a = random_mixed_form(rng, ctx, 2);
        Form b = random_mixed_form(rng, ctx, 2);
        // split a into homogeneous degrees to apply the sign rule
        for (int deg = 0; deg <= 2; ++deg) {
            Form ah;
            for (const auto& [fs, c] : a.terms())
                if (static_cast<int>(fs.size()) == deg)
                    ah.add(c, fs);
            Form lhs = contract(jf, wedge(ah, b));
            Form rhs = wedge(contract(jf, ah), b) +
                       wedge(ah, contract(jf, b)) * Expr(deg % 2 == 0 ? 1 : -1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("contact forms vanish along prolonged sections (randomized)")
{
    Rng rng(36);
    auto ctx = ctx1();
    for (int k = 0; k < 10; ++k) {
        Expr sig(0);
        std::uniform_int_distribution<int> deg(0, 3);
        for (int d = deg(rng); d >= 0; --d)
            sig += Expr{jvtest::random_coeff(rng)} * pow(Expr::base(0), d);
        for (int ord = 0; ord <= 2; ++ord) {
            MultiIndex alpha(1);
            for (int j = 0; j < ord; ++j)
                alpha = alpha.plus(0);
            Form th = expand_contact(theta(0, alpha), 1);
            CHECK(section_pullback_form(th, {sig}, ctx).is_zero());
        }
    }
}
