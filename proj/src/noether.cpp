#include "jv/noether.hpp"

#include <cmath>

namespace jv {

namespace {

Expr vertical_component_order0(const ProjectableVectorField& v, int i, const JetContext& ctx)
{
    Expr e = v.Xi[static_cast<size_t>(i)];
    for (int lambda = 0; lambda < ctx.base_dim; ++lambda)
        e -= Expr::jet(i, MultiIndex::unit(ctx.base_dim, lambda)) * v.xi[static_cast<size_t>(lambda)];
    return e;
}

ProlongedField vertical_part_of(const ProlongedField& jv_field)
{
    FieldSplit split = split_prolonged(jv_field);
    std::vector<Expr> zero_xi(static_cast<size_t>(jv_field.base_dim()), Expr(0));
    return ProlongedField::from_components(std::move(zero_xi), split.vertical, jv_field.order(),
                                           jv_field.fiber_dim());
}

} // namespace

Expr contract_source(const SourceForm& eta, const ProjectableVectorField& v, const JetContext& ctx)
{
    Expr e(0);
    for (int i = 0; i < ctx.fiber_dim; ++i)
        e += eta.comps[static_cast<size_t>(i)] * vertical_component_order0(v, i, ctx);
    return e;
}

LieLagrangian variational_lie_lagrangian(const Lagrangian& lag, const ProjectableVectorField& v,
                                         const JetContext& ctx)
{
    const int n = ctx.base_dim;
    const int r = std::max(1, lag.order());
    ProlongedField jfield = ProlongedField::prolong(v, r + 1, ctx);
    Form lam = lag.to_form(n);

    LieLagrangian out;
    out.total = cartan_lie(lam, jfield, n).component(0, n).coefficient(omega0(n));

    SourceForm eta = euler_lagrange(lag, ctx);
    out.work = contract_source(eta, v, ctx);

    Form p = momentum(lag, ctx);
    out.current = contract(vertical_part_of(jfield), p) + contract(jfield, lam);
    out.boundary = d_H(out.current, n);

    Expr diff = out.total - out.work - out.boundary.coefficient(omega0(n));
    out.identity_holds = zero_verdict(diff) != ZeroVerdict::nonzero;
    return out;
}

LieSource variational_lie_source(const SourceForm& eta, const ProjectableVectorField& v,
                                 const JetContext& ctx)
{
    const int n = ctx.base_dim;
    const int s = eta.order();
    ProlongedField jfield = ProlongedField::prolong(v, s + 1, ctx);
    Form ef = eta.to_form(n);

    LieSource out;
    Form lie = cartan_lie(ef, jfield, n).component(1, n);
    out.total = source_reduce(lie, ctx);
    out.el_term = euler_lagrange(Lagrangian{contract_source(eta, v, ctx)}, ctx);
    for (int i = 0; i < ctx.fiber_dim; ++i)
        out.defect.comps.push_back(out.total.comps[static_cast<size_t>(i)] -
                                   out.el_term.comps[static_cast<size_t>(i)]);
    return out;
}

Current noether_current(const Lagrangian& lag, const ProjectableVectorField& v,
                        const JetContext& ctx)
{
    const int n = ctx.base_dim;
    const int r = std::max(1, lag.order());
    ProlongedField jfield = ProlongedField::prolong(v, r + 1, ctx);
    Form p = momentum(lag, ctx);
    Current c;
    c.form = contract(vertical_part_of(jfield), p) + contract(jfield, lag.to_form(n));
    c.tag = Current::Tag::canonical;
    return c;
}

Current improved_current(const Lagrangian& lag, const ProjectableVectorField& v,
                         const JetContext& ctx)
{
    SourceForm eta = euler_lagrange(lag, ctx);
    LieSource ls = variational_lie_source(eta, v, ctx);
    for (const Expr& c : ls.total.comps)
        if (zero_verdict(c) == ZeroVerdict::nonzero)
            throw Error("not a generalized symmetry: the source form is not invariant");

    LieLagrangian ll = variational_lie_lagrangian(lag, v, ctx);
    Current out;
    out.tag = Current::Tag::improved;
    if (ll.total.is_zero()) {
        out.form = ll.current;
    } else {
        Form beta = horizontal_homotopy(Lagrangian{ll.total}, ctx);
        out.form = ll.current - beta;
    }
    // defining identity: d_H(improved) = -Xi_V . eta
    Expr residual = d_H(out.form, ctx.base_dim).coefficient(omega0(ctx.base_dim)) + ll.work;
    if (zero_verdict(residual) == ZeroVerdict::nonzero)
        throw Error("improved current identity failed");
    return out;
}

namespace {

int needed_order(const Current& c, const SourceForm& eta)
{
    int k = 1;
    for (const auto& [fs, e] : c.form.terms())
        k = std::max(k, max_jet_order(e));
    for (const Expr& e : eta.comps)
        k = std::max(k, max_jet_order(e));
    return k;
}

// pullback of an expression along a closed-form section: substitute all jet
// atoms by the derivatives of the section components
Expr pullback_closed(const Expr& e, const Section& sigma, const JetContext& ctx)
{
    int order = std::max(0, max_jet_order(e));
    SubstMap map;
    for (int i = 0; i < ctx.fiber_dim; ++i)
        for (const MultiIndex& alpha : multi_indices_up_to(ctx.base_dim, order)) {
            Expr d = sigma.components()[static_cast<size_t>(i)];
            for (int lambda = 0; lambda < ctx.base_dim; ++lambda)
                for (int c = 0; c < alpha[lambda]; ++c)
                    d = partial(d, Atom::base(lambda));
            map[Atom::jet(i, alpha)] = d;
        }
    return subst(e, map);
}

} // namespace

ConservationReport check_conservation(const Current& c, const Section& sigma,
                                      const SourceForm& eta, const JetContext& ctx,
                                      const GridSpec& grid, double crit_tol)
{
    ConservationReport rep;
    const int n = ctx.base_dim;
    if (n == 1) {
        Expr eps = c.scalar();
        if (!sigma.is_sampled()) {
            // symbolic pullback, exact time derivative, dense evaluation
            Expr eps_t = pullback_closed(eps, sigma, ctx);
            Expr deps = partial(eps_t, Atom::base(0));
            std::vector<Expr> res;
            for (const Expr& comp : eta.comps)
                res.push_back(pullback_closed(comp, sigma, ctx));
            bool first = true;
            double eps0 = 0, max_abs = 0;
            for (int k = 0; k < grid.count(); ++k) {
                EvalPoint at;
                at.set(Atom::base(0), grid.t0 + k * grid.h);
                for (const Expr& r : res)
                    rep.criticality_residual =
                        std::max(rep.criticality_residual, std::abs(eval(r, at)));
                double v = eval(eps_t, at);
                if (first) {
                    eps0 = v;
                    rep.charge = v;
                    first = false;
                }
                max_abs = std::max(max_abs, std::abs(v));
                rep.drift = std::max(rep.drift, std::abs(v - eps0));
                rep.conservation_residual =
                    std::max(rep.conservation_residual, std::abs(eval(deps, at)));
                ++rep.points;
            }
            rep.relative_drift = max_abs > 0 ? rep.drift / max_abs : rep.drift;
        } else {
            int order = needed_order(c, eta);
            if (order > 4)
                throw Error("sampled sections support jet order <= 4");
            int margin = order <= 2 ? 2 : 3;
            int lo = margin, hi = sigma.sample_count() - margin;
            if (hi - lo < 5)
                throw Error("not enough samples for the requested derivatives");
            std::vector<double> series;
            for (int k = lo; k < hi; ++k) {
                EvalPoint at = sigma.jet_values_at_sample(k, order);
                for (const Expr& comp : eta.comps)
                    rep.criticality_residual =
                        std::max(rep.criticality_residual, std::abs(eval(comp, at)));
                series.push_back(eval(eps, at));
                ++rep.points;
            }
            double eps0 = series.front(), max_abs = 0;
            rep.charge = eps0;
            for (double v : series) {
                max_abs = std::max(max_abs, std::abs(v));
                rep.drift = std::max(rep.drift, std::abs(v - eps0));
            }
            rep.relative_drift = max_abs > 0 ? rep.drift / max_abs : rep.drift;
            // fourth-order difference of the pulled-back current
            double h = sigma.step();
            for (size_t k = 2; k + 2 < series.size(); ++k) {
                double d = (series[k - 2] - 8 * series[k - 1] + 8 * series[k + 1] - series[k + 2]) /
                           (12 * h);
                rep.conservation_residual = std::max(rep.conservation_residual, std::abs(d));
            }
        }
    } else if (n == 2) {
        if (sigma.is_sampled())
            throw Error("two-dimensional conservation checks need closed-form sections");
        // current components relative to the bases d/dx^lambda . omega0
        Expr c1 = c.form.coefficient({Factor::dbase(1)});   // +eps^1
        Expr c2 = -c.form.coefficient({Factor::dbase(0)});  // -eps^2 stored
        Expr div = partial(pullback_closed(c1, sigma, ctx), Atom::base(0)) +
                   partial(pullback_closed(c2, sigma, ctx), Atom::base(1));
        std::vector<Expr> res;
        for (const Expr& comp : eta.comps)
            res.push_back(pullback_closed(comp, sigma, ctx));
        for (int a = 0; a < grid.count(); ++a)
            for (int b = 0; b < grid.count(); ++b) {
                EvalPoint at;
                at.set(Atom::base(0), grid.t0 + a * grid.h);
                at.set(Atom::base(1), grid.t0 + b * grid.h);
                for (const Expr& r : res)
                    rep.criticality_residual =
                        std::max(rep.criticality_residual, std::abs(eval(r, at)));
                rep.conservation_residual =
                    std::max(rep.conservation_residual, std::abs(eval(div, at)));
                ++rep.points;
            }
    } else {
        throw Error("conservation checks support base dimension 1 or 2");
    }
    rep.critical = rep.criticality_residual < crit_tol;
    return rep;
}

CurrentClassification classify_current(const Current& c, const std::vector<Section>& solutions,
                                       const SourceForm& eta, const JetContext& ctx,
                                       const GridSpec& grid, double crit_tol, double zero_tol)
{
    if (ctx.base_dim != 1)
        throw Error("current classification by conserved value requires base dimension 1");
    CurrentClassification out;
    for (const Section& sigma : solutions) {
        ConservationReport rep = check_conservation(c, sigma, eta, ctx, grid, crit_tol);
        if (!rep.critical)
            throw Error("current classification requires critical sections");
        out.charges.push_back(rep.charge);
        if (std::abs(rep.charge) > zero_tol)
            out.trivial = false;
    }
    return out;
}

Accel accel_from_source(const SourceForm& eta, const JetContext& ctx)
{
    if (ctx.base_dim != 1)
        throw Error("integration supports base dimension 1");
    if (eta.order() > 2)
        throw Error("integration requires a source form of order <= 2");
    const int m = ctx.fiber_dim;
    MultiIndex two = MultiIndex::unit(1, 0).plus(0);
    std::vector<std::vector<Expr>> M(static_cast<size_t>(m));
    std::vector<Expr> b;
    SubstMap drop_acc;
    for (int j = 0; j < m; ++j)
        drop_acc[Atom::jet(j, two)] = Expr(0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Expr mij = partial(eta.comps[static_cast<size_t>(i)], Atom::jet(j, two));
            for (int k = 0; k < m; ++k)
                if (depends_on(mij, Atom::jet(k, two)))
                    throw Error("integration requires a source form affine in accelerations");
            M[static_cast<size_t>(i)].push_back(mij);
        }
        b.push_back(subst(eta.comps[static_cast<size_t>(i)], drop_acc));
    }
    return [M, b, m](double t, const std::vector<double>& y, const std::vector<double>& v) {
        EvalPoint at;
        at.set(Atom::base(0), t);
        for (int i = 0; i < m; ++i) {
            at.set(Atom::jet(i, MultiIndex(1)), y[static_cast<size_t>(i)]);
            at.set(Atom::jet(i, MultiIndex::unit(1, 0)), v[static_cast<size_t>(i)]);
        }
        // solve M a = -b
        std::vector<std::vector<double>> A(static_cast<size_t>(m),
                                           std::vector<double>(static_cast<size_t>(m + 1)));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    eval(M[static_cast<size_t>(i)][static_cast<size_t>(j)], at);
            A[static_cast<size_t>(i)][static_cast<size_t>(m)] =
                -eval(b[static_cast<size_t>(i)], at);
        }
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int row = col + 1; row < m; ++row)
                if (std::abs(A[static_cast<size_t>(row)][static_cast<size_t>(col)]) >
                    std::abs(A[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                    piv = row;
            std::swap(A[static_cast<size_t>(col)], A[static_cast<size_t>(piv)]);
            double d = A[static_cast<size_t>(col)][static_cast<size_t>(col)];
            if (std::abs(d) < 1e-12)
                throw Error("integration: acceleration matrix is singular");
            for (int row = 0; row < m; ++row) {
                if (row == col)
                    continue;
                double f = A[static_cast<size_t>(row)][static_cast<size_t>(col)] / d;
                for (int j = col; j <= m; ++j)
                    A[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                        f * A[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
        std::vector<double> a(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            a[static_cast<size_t>(i)] = A[static_cast<size_t>(i)][static_cast<size_t>(m)] /
                                        A[static_cast<size_t>(i)][static_cast<size_t>(i)];
        return a;
    };
}

} // namespace jv
