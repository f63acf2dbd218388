#pragma once

#include "jv/expr.hpp"
#include "jv/parser.hpp"

#include <random>

namespace jvtest {

using namespace jv;

using Rng = std::mt19937_64;

inline Rational random_coeff(Rng& rng)
{
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    int v = num(rng);
    if (v == 0)
        v = 1;
    return Rational(v, den(rng));
}

inline Atom random_coordinate(Rng& rng, const JetContext& ctx, int max_order)
{
    std::uniform_int_distribution<int> pick(0, 99);
    if (pick(rng) < 25) {
        std::uniform_int_distribution<int> lambda(0, ctx.base_dim - 1);
        return Atom::base(lambda(rng));
    }
    std::uniform_int_distribution<int> fiber(0, ctx.fiber_dim - 1);
    auto idx = multi_indices_up_to(ctx.base_dim, max_order);
    std::uniform_int_distribution<size_t> which(0, idx.size() - 1);
    return Atom::jet(fiber(rng), idx[which(rng)]);
}

/// Random polynomial expression in the chart coordinates.
inline Expr random_poly_expr(Rng& rng, const JetContext& ctx, int max_terms, int max_factors,
                             int max_order)
{
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> nfac(0, max_factors);
    std::uniform_int_distribution<int> exp(1, 2);
    Expr e(0);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        Expr term{random_coeff(rng)};
        int fac = nfac(rng);
        for (int f = 0; f < fac; ++f)
            term *= pow(Expr(random_coordinate(rng, ctx, max_order)), exp(rng));
        e += term;
    }
    return e;
}

/// Random expression that may include elementary functions of simple
/// arguments.
inline Expr random_expr_with_functions(Rng& rng, const JetContext& ctx, int max_terms,
                                       int max_order)
{
    Expr e = random_poly_expr(rng, ctx, max_terms, 2, max_order);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> which_fn(0, 2); // sin, cos, exp (log needs domains)
    int extras = pick(rng);
    for (int k = 0; k < extras; ++k) {
        Fn f = which_fn(rng) == 0 ? Fn::sin : which_fn(rng) == 1 ? Fn::cos : Fn::exp;
        Expr arg(random_coordinate(rng, ctx, std::min(1, max_order)));
        e += Expr{random_coeff(rng)} * apply_fn(f, arg);
    }
    return e;
}

inline EvalPoint random_point(Rng& rng, const Expr& e)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    EvalPoint at;
    for (const Atom& a : coordinate_atoms(e))
        at.set(a, dist(rng));
    return at;
}

} // namespace jvtest
