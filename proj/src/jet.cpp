#include "jv/jet.hpp"

namespace jv {

Expr total_derivative(const Expr& e, int lambda)
{
    return derive(e, [lambda](const Atom& a) -> Expr {
        if (a.kind() == Atom::Kind::base)
            return a.index() == lambda ? Expr(1) : Expr(0);
        return Expr::jet(a.index(), a.alpha().plus(lambda));
    });
}

Expr iterated_total_derivative(const Expr& e, const MultiIndex& alpha)
{
    Expr out = e;
    for (int lambda = 0; lambda < alpha.size(); ++lambda)
        for (int k = 0; k < alpha[lambda]; ++k)
            out = total_derivative(out, lambda);
    return out;
}

ProjectableVectorField ProjectableVectorField::make(const JetContext& ctx, std::vector<Expr> xi,
                                                    std::vector<Expr> Xi)
{
    if (static_cast<int>(xi.size()) != ctx.base_dim || static_cast<int>(Xi.size()) != ctx.fiber_dim)
        throw Error("vector field component count does not match the context");
    for (const Expr& c : xi)
        if (max_jet_order(c) >= 0)
            throw Error("xi components must depend on base coordinates only");
    for (const Expr& c : Xi)
        if (max_jet_order(c) > 0)
            throw Error("Xi components must depend on base and order-0 fiber coordinates only");
    return {std::move(xi), std::move(Xi)};
}

bool ProjectableVectorField::is_vertical() const
{
    for (const Expr& c : xi)
        if (!c.is_zero())
            return false;
    return true;
}

ProlongedField ProlongedField::prolong(const ProjectableVectorField& v, int s,
                                       const JetContext& ctx)
{
    ProlongedField out;
    out.order_ = s;
    out.fiber_dim_ = ctx.fiber_dim;
    out.xi_ = v.xi;
    const int n = ctx.base_dim;
    // characteristic Q^i = Xi^i - y^i_mu xi^mu
    std::vector<Expr> q;
    for (int i = 0; i < ctx.fiber_dim; ++i) {
        Expr e = v.Xi[static_cast<size_t>(i)];
        for (int mu = 0; mu < n; ++mu)
            e -= Expr::jet(i, MultiIndex::unit(n, mu)) * v.xi[static_cast<size_t>(mu)];
        q.push_back(e);
    }
    for (const MultiIndex& alpha : multi_indices_up_to(n, s)) {
        for (int i = 0; i < ctx.fiber_dim; ++i) {
            Expr e = iterated_total_derivative(q[static_cast<size_t>(i)], alpha);
            for (int mu = 0; mu < n; ++mu)
                e += Expr::jet(i, alpha.plus(mu)) * v.xi[static_cast<size_t>(mu)];
            out.comps_[{i, alpha}] = e;
        }
    }
    return out;
}

ProlongedField ProlongedField::from_components(std::vector<Expr> xi,
                                               std::map<std::pair<int, MultiIndex>, Expr> comps,
                                               int order, int fiber_dim)
{
    ProlongedField out;
    out.order_ = order;
    out.fiber_dim_ = fiber_dim;
    out.xi_ = std::move(xi);
    out.comps_ = std::move(comps);
    return out;
}

const Expr& ProlongedField::component(int fiber, const MultiIndex& alpha) const
{
    auto it = comps_.find({fiber, alpha});
    if (it == comps_.end())
        throw Error("prolongation order " + std::to_string(order_) +
                    " too low for requested component of order " + std::to_string(alpha.order()));
    return it->second;
}

Expr ProlongedField::vertical_component(int fiber, const MultiIndex& alpha) const
{
    Expr e = component(fiber, alpha);
    for (int lambda = 0; lambda < base_dim(); ++lambda)
        e -= Expr::jet(fiber, alpha.plus(lambda)) * xi_[static_cast<size_t>(lambda)];
    return e;
}

FieldSplit split_prolonged(const ProlongedField& v)
{
    FieldSplit out;
    for (int lambda = 0; lambda < v.base_dim(); ++lambda)
        out.horizontal_xi.push_back(v.xi(lambda));
    for (const MultiIndex& alpha : multi_indices_up_to(v.base_dim(), v.order()))
        for (int i = 0; i < v.fiber_dim(); ++i)
            out.vertical[{i, alpha}] = v.vertical_component(i, alpha);
    return out;
}

SubstMap prolonged_fiber_subst(const std::vector<Expr>& image, int order, const JetContext& ctx)
{
    SubstMap map;
    for (int i = 0; i < static_cast<int>(image.size()); ++i) {
        if (max_jet_order(image[static_cast<size_t>(i)]) > 0)
            throw Error("fiber map components must have jet order 0");
        for (const MultiIndex& alpha : multi_indices_up_to(ctx.base_dim, order))
            map[Atom::jet(i, alpha)] =
                iterated_total_derivative(image[static_cast<size_t>(i)], alpha);
    }
    return map;
}

} // namespace jv
