#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "jv/jet.hpp"
#include "jv/parser.hpp"
#include "jv/section.hpp"

#include <cmath>

using namespace jv;
using jvtest::Rng;

namespace {

JetContext ctx1() { return JetContext::make(1, 1, 4); }

Expr P(const std::string& s, const JetContext& ctx) { return parse_expr(s, ctx); }

// substitution map y^i_alpha -> d^alpha sigma^i / dt^alpha for a closed-form
// section over a 1-dimensional base; independent of total_derivative
SubstMap section_pullback(const std::vector<Expr>& sigma, int order)
{
    SubstMap map;
    for (int i = 0; i < static_cast<int>(sigma.size()); ++i) {
        Expr d = sigma[static_cast<size_t>(i)];
        MultiIndex alpha(1);
        map[Atom::jet(i, alpha)] = d;
        for (int k = 1; k <= order; ++k) {
            d = partial(d, Atom::base(0));
            alpha = alpha.plus(0);
            map[Atom::jet(i, alpha)] = d;
        }
    }
    return map;
}

Expr random_base_poly(Rng& rng, int max_deg = 3)
{
    std::uniform_int_distribution<int> deg(0, max_deg);
    Expr e(0);
    int d = deg(rng);
    for (int k = 0; k <= d; ++k)
        e += Expr{jvtest::random_coeff(rng)} * pow(Expr::base(0), k);
    return e;
}

} // namespace

TEST_CASE("total derivative basics")
{
    auto ctx = ctx1();
    CHECK(total_derivative(P("y", ctx), 0) == P("y_t", ctx));
    CHECK(total_derivative(P("t*y_t", ctx), 0) == P("y_t + t*y_tt", ctx));
    CHECK(total_derivative(P("7/3", ctx), 0).is_zero());
    CHECK(total_derivative(P("sin(y)", ctx), 0) == P("cos(y)*y_t", ctx));
}

TEST_CASE("iterated total derivative")
{
    auto ctx = ctx1();
    MultiIndex two{2};
    CHECK(iterated_total_derivative(P("y", ctx), two) == P("y_tt", ctx));
    CHECK(iterated_total_derivative(P("y*y_t", ctx), MultiIndex{0}) == P("y*y_t", ctx));

    auto c2 = JetContext::make(2, 1, 3, {"x1", "x2"}, {"y"});
    CHECK(iterated_total_derivative(P("y", c2), MultiIndex{1, 1}) == P("y_x1x2", c2));
}

TEST_CASE("total derivatives commute (randomized)")
{
    Rng rng(21);
    auto ctx = JetContext::make(2, 2, 2, {"x1", "x2"}, {"y1", "y2"});
    for (int k = 0; k < 25; ++k) {
        Expr e = jvtest::random_poly_expr(rng, ctx, 4, 3, 2);
        CHECK(total_derivative(total_derivative(e, 0), 1) ==
              total_derivative(total_derivative(e, 1), 0));
    }
}

TEST_CASE("chain rule: pullback commutes with the total derivative (randomized)")
{
    Rng rng(22);
    auto ctx = ctx1();
    for (int k = 0; k < 25; ++k) {
        Expr e = jvtest::random_poly_expr(rng, ctx, 4, 3, 2);
        std::vector<Expr> sigma = {random_base_poly(rng)};
        SubstMap low = section_pullback(sigma, 2), high = section_pullback(sigma, 3);
        Expr lhs = partial(subst(e, low), Atom::base(0));
        Expr rhs = subst(total_derivative(e, 0), high);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("prolongation formula matches the first-order flow (randomized)")
{
    Rng rng(23);
    auto ctx = ctx1();
    for (int k = 0; k < 25; ++k) {
        Expr xi = random_base_poly(rng, 2);
        // Xi(t, y): affine in y to stay projectable and keep the oracle simple
        Expr Xi = random_base_poly(rng, 2) + random_base_poly(rng, 2) * P("y", ctx);
        auto v = ProjectableVectorField::make(ctx, {xi}, {Xi});
        auto jf = ProlongedField::prolong(v, 3, ctx);

        std::vector<Expr> sigma = {random_base_poly(rng, 3)};
        SubstMap pull = section_pullback(sigma, 4);
        // delta sigma = Xi(t, sigma) - xi sigma'
        Expr delta = subst(Xi, pull) - xi * partial(sigma[0], Atom::base(0));
        MultiIndex alpha(1);
        for (int ord = 0; ord <= 3; ++ord) {
            Expr lhs = subst(jf.component(0, alpha), pull);
            Expr d = delta;
            for (int j = 0; j < ord; ++j)
                d = partial(d, Atom::base(0));
            Expr next = sigma[0];
            for (int j = 0; j <= ord; ++j)
                next = partial(next, Atom::base(0));
            CHECK(lhs == d + next * xi);
            alpha = alpha.plus(0);
        }
    }
}

TEST_CASE("prolongation desk examples")
{
    auto ctx = ctx1();
    auto v1 = ProjectableVectorField::make(ctx, {P("0", ctx)}, {P("y", ctx)});
    auto j1 = ProlongedField::prolong(v1, 1, ctx);
    CHECK(j1.component(0, MultiIndex{1}) == P("y_t", ctx));

    auto v2 = ProjectableVectorField::make(ctx, {P("1", ctx)}, {P("0", ctx)});
    auto j2 = ProlongedField::prolong(v2, 1, ctx);
    CHECK(j2.vertical_component(0, MultiIndex{0}) == P("-y_t", ctx));
    CHECK(j2.component(0, MultiIndex{1}).is_zero());

    auto v0 = ProjectableVectorField::make(ctx, {P("0", ctx)}, {P("0", ctx)});
    auto j0 = ProlongedField::prolong(v0, 2, ctx);
    CHECK(j0.component(0, MultiIndex{2}).is_zero());
}

TEST_CASE("split reassembles the prolonged field (randomized)")
{
    Rng rng(24);
    auto ctx = ctx1();
    for (int k = 0; k < 10; ++k) {
        Expr xi = random_base_poly(rng, 2);
        Expr Xi = random_base_poly(rng, 2) + random_base_poly(rng, 1) * P("y", ctx);
        auto v = ProjectableVectorField::make(ctx, {xi}, {Xi});
        auto jf = ProlongedField::prolong(v, 2, ctx);
        auto split = split_prolonged(jf);
        for (const MultiIndex& alpha : multi_indices_up_to(1, 2)) {
            Expr rebuilt = split.vertical[{0, alpha}] +
                           Expr::jet(0, alpha.plus(0)) * split.horizontal_xi[0];
            CHECK(rebuilt == jf.component(0, alpha));
        }
    }
}

TEST_CASE("closed-form section prolongation")
{
    auto ctx = ctx1();
    auto s = Section::closed_form(ctx, {P("t^2", ctx)});
    EvalPoint at = s.jet_values({1.5}, 2);
    CHECK(at.values.at(Atom::jet(0, MultiIndex{0})) == doctest::Approx(2.25));
    CHECK(at.values.at(Atom::jet(0, MultiIndex{1})) == doctest::Approx(3.0));
    CHECK(at.values.at(Atom::jet(0, MultiIndex{2})) == doctest::Approx(2.0));

    auto c = Section::closed_form(ctx, {P("5", ctx)});
    EvalPoint atc = c.jet_values({0.3}, 2);
    CHECK(atc.values.at(Atom::jet(0, MultiIndex{1})) == doctest::Approx(0.0));
    CHECK(atc.values.at(Atom::jet(0, MultiIndex{2})) == doctest::Approx(0.0));
}

TEST_CASE("sampled sections: fourth-order finite differences")
{
    auto ctx = ctx1();
    double h = 1e-3;
    std::vector<std::vector<double>> vals;
    int count = 41;
    double t0 = -h * (count / 2);
    for (int k = 0; k < count; ++k)
        vals.push_back({std::sin(t0 + k * h)});
    auto s = Section::sampled(ctx, t0, h, vals);
    int mid = count / 2; // t = 0
    EvalPoint at = s.jet_values_at_sample(mid, 4);
    CHECK(std::abs(at.values.at(Atom::jet(0, MultiIndex{1})) - 1.0) < 1e-10);
    CHECK(std::abs(at.values.at(Atom::jet(0, MultiIndex{2})) - 0.0) < 1e-6);
    CHECK(std::abs(at.values.at(Atom::jet(0, MultiIndex{3})) + 1.0) < 1e-6);
    CHECK(std::abs(at.values.at(Atom::jet(0, MultiIndex{4})) - 0.0) < 1e-2);

    CHECK_THROWS_AS(s.jet_values_at_sample(0, 2), Error);  // boundary
    auto tiny = Section::sampled(ctx, 0, h, {{0}, {1}, {2}});
    CHECK_THROWS_AS(tiny.jet_values_at_sample(1, 1), Error);
}

TEST_CASE("RK4 integration against the closed-form oscillator")
{
    auto ctx = ctx1();
    Accel accel = [](double, const std::vector<double>& y, const std::vector<double>&) {
        return std::vector<double>{-y[0]};
    };
    Section s = rk4_integrate(ctx, accel, {1.0}, {0.0}, 0.0, 10.0, 1e-3);
    CHECK(s.sample_count() == 10001);
    int last = s.sample_count() - 1;
    EvalPoint at = s.jet_values_at_sample(last - 3, 0);
    double t = s.time_at(last - 3);
    CHECK(std::abs(at.values.at(Atom::jet(0, MultiIndex{0})) - std::cos(t)) < 1e-9);
}

TEST_CASE("adaptive quadrature")
{
    double v = integrate_adaptive([](double x) { return std::sin(x); }, 0, 3.14159265358979323846);
    CHECK(std::abs(v - 2.0) < 1e-9);
    double w = integrate_adaptive([](double x) { return 1.0 / (1 + x * x); }, -3, 3);
    CHECK(std::abs(w - 2 * std::atan(3.0)) < 1e-9);
}
