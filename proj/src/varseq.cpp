#include "jv/varseq.hpp"

namespace jv {

int SourceForm::order() const
{
    int r = 0;
    for (const Expr& c : comps)
        r = std::max(r, max_jet_order(c));
    return std::max(r, 0);
}

bool SourceForm::is_zero() const
{
    for (const Expr& c : comps)
        if (!c.is_zero())
            return false;
    return true;
}

ZeroVerdict HelmholtzTensor::verdict() const
{
    ZeroVerdict v = ZeroVerdict::zero;
    for (const auto& [key, e] : comps) {
        ZeroVerdict z = zero_verdict(e);
        if (z == ZeroVerdict::nonzero)
            return ZeroVerdict::nonzero;
        if (z == ZeroVerdict::probably_zero)
            v = ZeroVerdict::probably_zero;
    }
    return v;
}

const std::pair<const std::tuple<int, int, MultiIndex>, Expr>* HelmholtzTensor::witness() const
{
    for (const auto& entry : comps)
        if (zero_verdict(entry.second) == ZeroVerdict::nonzero)
            return &entry;
    return nullptr;
}

SourceForm euler_lagrange(const Lagrangian& lag, const JetContext& ctx)
{
    const int r = lag.order();
    SourceForm eta;
    for (int i = 0; i < ctx.fiber_dim; ++i) {
        Expr e(0);
        for (const MultiIndex& alpha : multi_indices_up_to(ctx.base_dim, r)) {
            Expr d = partial(lag.density, Atom::jet(i, alpha));
            if (d.is_zero())
                continue;
            d = iterated_total_derivative(d, alpha);
            e += (alpha.order() % 2 == 0) ? d : -d;
        }
        eta.comps.push_back(e);
    }
    return eta;
}

SourceForm source_reduce(const Form& rho, const JetContext& ctx)
{
    const int n = ctx.base_dim;
    SourceForm eta;
    eta.comps.assign(static_cast<size_t>(ctx.fiber_dim), Expr(0));
    for (const auto& [fs, c] : rho.terms()) {
        if (static_cast<int>(fs.size()) != n + 1 || fs[0].kind != Factor::Kind::theta)
            throw Error("source reduction expects a (1, n) contact form");
        for (size_t k = 1; k < fs.size(); ++k)
            if (fs[k].kind != Factor::Kind::dbase)
                throw Error("source reduction expects a (1, n) contact form");
        const Factor& th = fs[0];
        Expr d = iterated_total_derivative(c, th.alpha);
        if (th.alpha.order() % 2 != 0)
            d = -d;
        eta.comps[static_cast<size_t>(th.index)] += d;
    }
    return eta;
}

Form momentum(const Lagrangian& lag, const JetContext& ctx)
{
    const int r = lag.order();
    if (r > 2)
        throw Error("momentum is supported for Lagrangians of order <= 2");
    const int n = ctx.base_dim;
    const Expr& L = lag.density;
    auto weight = [](int lambda, int mu) { return lambda == mu ? Rational(1) : Rational(1, 2); };
    Form p;
    for (int i = 0; i < ctx.fiber_dim; ++i)
        for (int lambda = 0; lambda < n; ++lambda) {
            MultiIndex l = MultiIndex::unit(n, lambda);
            Expr a = partial(L, Atom::jet(i, l));
            for (int mu = 0; mu < n; ++mu) {
                Expr second = partial(L, Atom::jet(i, l.plus(mu)));
                if (!second.is_zero())
                    a -= Expr(weight(lambda, mu)) * total_derivative(second, mu);
            }
            if (!a.is_zero())
                p = p + wedge(Form::term(a, {Factor::theta(i, MultiIndex(n))}),
                              omega_reduced(n, lambda));
            for (int mu = 0; mu < n; ++mu) {
                Expr b = Expr(weight(lambda, mu)) *
                         partial(L, Atom::jet(i, l.plus(mu)));
                if (!b.is_zero())
                    p = p + wedge(Form::term(b, {Factor::theta(i, MultiIndex::unit(n, mu))}),
                                  omega_reduced(n, lambda));
            }
        }
    return p;
}

HelmholtzTensor helmholtz(const SourceForm& eta, const JetContext& ctx)
{
    if (static_cast<int>(eta.comps.size()) != ctx.fiber_dim)
        throw Error("source form component count does not match the fiber dimension");
    const int s = eta.order();
    const int n = ctx.base_dim;
    HelmholtzTensor H;
    auto indices = multi_indices_up_to(n, s);
    for (int i = 0; i < ctx.fiber_dim; ++i)
        for (int j = 0; j < ctx.fiber_dim; ++j)
            for (const MultiIndex& tau : indices) {
                // dEta_i/dy^j_tau - sum_{beta >= tau} (-1)^{|beta|} C(beta,tau)
                //                    D_{beta-tau} dEta_j/dy^i_beta
                Expr h = partial(eta.comps[static_cast<size_t>(i)], Atom::jet(j, tau));
                for (const MultiIndex& beta : indices) {
                    if (!beta.contains(tau))
                        continue;
                    Expr d = partial(eta.comps[static_cast<size_t>(j)], Atom::jet(i, beta));
                    if (d.is_zero())
                        continue;
                    Rational c = MultiIndex::choose(beta, tau);
                    if (beta.order() % 2 != 0)
                        c = -c;
                    h -= Expr(c) * iterated_total_derivative(d, *beta.minus(tau));
                }
                if (!h.is_zero())
                    H.comps[{i, j, tau}] = h;
            }
    return H;
}

bool is_locally_variational(const SourceForm& eta, const JetContext& ctx)
{
    return helmholtz(eta, ctx).verdict() != ZeroVerdict::nonzero;
}

Expr scaling_integral(const Expr& e, const std::function<bool(const Atom&)>& scaled, int extra)
{
    // the denominator must scale homogeneously (or not at all)
    int den_degree = -1;
    for (const auto& [m, c] : e.den().terms()) {
        int d = 0;
        for (const auto& [a, k] : m.factors()) {
            if (a.kind() == Atom::Kind::func) {
                for (const Atom& inner : coordinate_atoms(a.arg()))
                    if (scaled(inner))
                        throw Error("scaling integral: no closed form over function atoms");
            }
            if (scaled(a))
                d += k;
        }
        if (den_degree < 0)
            den_degree = d;
        else if (den_degree != d)
            throw Error("scaling integral: denominator is not scaling-homogeneous");
    }
    if (den_degree < 0)
        den_degree = 0;
    std::vector<Poly::Term> out;
    for (const auto& [m, c] : e.num().terms()) {
        int d = 0;
        for (const auto& [a, k] : m.factors()) {
            if (a.kind() == Atom::Kind::func) {
                for (const Atom& inner : coordinate_atoms(a.arg()))
                    if (scaled(inner))
                        throw Error("scaling integral: no closed form over function atoms");
            }
            if (scaled(a))
                d += k;
        }
        int power = d + extra - den_degree;
        if (power + 1 <= 0)
            throw Error("scaling integral diverges: chart is not star-shaped for this data");
        out.emplace_back(m, c / Rational(power + 1));
    }
    return Expr(Poly::from_terms(std::move(out)), e.den());
}

Lagrangian vainberg_tonti(const SourceForm& eta, const JetContext& ctx,
                          const std::vector<Rational>& center)
{
    if (!is_locally_variational(eta, ctx))
        throw Error("not locally variational: Vainberg-Tonti Lagrangian does not exist");
    std::vector<Rational> c = center;
    c.resize(static_cast<size_t>(ctx.fiber_dim), Rational(0));
    SubstMap shift, unshift;
    for (int i = 0; i < ctx.fiber_dim; ++i) {
        if (c[static_cast<size_t>(i)] == 0)
            continue;
        Atom y = Atom::jet(i, MultiIndex(ctx.base_dim));
        shift[y] = Expr(y) + Expr(c[static_cast<size_t>(i)]);
        unshift[y] = Expr(y) - Expr(c[static_cast<size_t>(i)]);
    }
    auto is_jet = [](const Atom& a) { return a.kind() == Atom::Kind::jet; };
    Expr L(0);
    for (int i = 0; i < ctx.fiber_dim; ++i) {
        Expr shifted = subst(eta.comps[static_cast<size_t>(i)], shift);
        Expr integral = scaling_integral(shifted, is_jet, 0);
        L += Expr::jet(i, MultiIndex(ctx.base_dim)) * integral;
    }
    Lagrangian out{subst(L, unshift)};
    // postcondition: the output reproduces the input source form
    SourceForm back = euler_lagrange(out, ctx);
    for (int i = 0; i < ctx.fiber_dim; ++i)
        if (zero_verdict(back.comps[static_cast<size_t>(i)] -
                         eta.comps[static_cast<size_t>(i)]) == ZeroVerdict::nonzero)
            throw Error("Vainberg-Tonti construction failed to reproduce the source form");
    return out;
}

Expr univariate_antiderivative(const Expr& e, const Atom& var)
{
    if (depends_on(Expr(e.den(), Poly(Rational(1))), var))
        throw Error("no closed-form antiderivative: denominator depends on the variable");
    Expr out(0);
    for (const auto& [m, c] : e.num().terms()) {
        int power = 0;
        const Atom* fn_atom = nullptr;
        int fn_exp = 0;
        Poly rest(c);
        for (const auto& [a, k] : m.factors()) {
            if (a == var) {
                power = k;
            } else if (a.kind() == Atom::Kind::func && depends_on(a.arg(), var)) {
                if (fn_atom)
                    throw Error("no closed-form antiderivative: function product");
                fn_atom = &a;
                fn_exp = k;
            } else {
                rest = rest * Poly(a).pow(k);
            }
        }
        Expr restE(rest, Poly(Rational(1)));
        if (!fn_atom) {
            out += restE * pow(Expr(var), power + 1) / Expr(power + 1);
            continue;
        }
        // a single elementary-function factor with an argument linear in var
        if (fn_exp != 1 || power != 0)
            throw Error("no closed-form antiderivative");
        Expr slope = partial(fn_atom->arg(), var);
        if (slope.is_zero() || depends_on(slope, var))
            throw Error("no closed-form antiderivative: nonlinear function argument");
        Expr prim;
        switch (fn_atom->fn()) {
            case Fn::sin: prim = -apply_fn(Fn::cos, fn_atom->arg()); break;
            case Fn::cos: prim = apply_fn(Fn::sin, fn_atom->arg()); break;
            case Fn::exp: prim = apply_fn(Fn::exp, fn_atom->arg()); break;
            case Fn::log: throw Error("no closed-form antiderivative for log factors");
        }
        out += restE * prim / slope;
    }
    return Expr(out.num(), out.den() * e.den());
}

namespace {

// primitive of the layer one-form sum_i a_i dz_i from the given center,
// by the straight-line scaling integral
Expr layer_primitive(const std::vector<Expr>& a, const std::vector<Atom>& layer,
                     const std::vector<Expr>& center)
{
    SubstMap shift, unshift;
    for (size_t i = 0; i < layer.size(); ++i) {
        if (center[i].is_zero())
            continue;
        shift[layer[i]] = Expr(layer[i]) + center[i];
        unshift[layer[i]] = Expr(layer[i]) - center[i];
    }
    auto in_layer = [&layer](const Atom& at) {
        for (const Atom& l : layer)
            if (l == at)
                return true;
        return false;
    };
    Expr g(0);
    for (size_t i = 0; i < layer.size(); ++i) {
        Expr shifted = subst(a[i], shift);
        g += Expr(layer[i]) * scaling_integral(shifted, in_layer, 0);
    }
    return subst(g, unshift);
}

} // namespace

Form horizontal_homotopy(const Lagrangian& lag, const JetContext& ctx,
                         const std::vector<Rational>& center)
{
    if (ctx.base_dim != 1)
        throw Error("horizontal homotopy is implemented for base dimension 1");
    SourceForm el = euler_lagrange(lag, ctx);
    for (const Expr& c : el.comps)
        if (zero_verdict(c) == ZeroVerdict::nonzero)
            throw Error("not variationally trivial: no horizontal primitive exists");
    std::vector<Rational> c0 = center;
    c0.resize(static_cast<size_t>(ctx.fiber_dim), Rational(0));

    Expr f = lag.density;
    Expr F(0);
    while (true) {
        int r = max_jet_order(f);
        if (r <= 0) {
            // E(f) = 0 for order-0 f forces base-only dependence
            for (int i = 0; i < ctx.fiber_dim; ++i)
                if (depends_on(f, Atom::jet(i, MultiIndex(1))))
                    throw Error("not variationally trivial: residual depends on fiber values");
            if (!f.is_zero())
                F += univariate_antiderivative(f, Atom::base(0));
            break;
        }
        MultiIndex top(1);
        for (int k = 0; k < r; ++k)
            top = top.plus(0);
        MultiIndex below = *top.minus(MultiIndex::unit(1, 0));
        std::vector<Expr> a;
        std::vector<Atom> layer;
        std::vector<Expr> centers;
        for (int i = 0; i < ctx.fiber_dim; ++i) {
            a.push_back(partial(f, Atom::jet(i, top)));
            layer.push_back(Atom::jet(i, below));
            centers.push_back(below.order() == 0 ? Expr(c0[static_cast<size_t>(i)]) : Expr(0));
        }
        for (const Expr& ai : a)
            for (int j = 0; j < ctx.fiber_dim; ++j)
                if (depends_on(ai, Atom::jet(j, top)))
                    throw Error("not variationally trivial: top derivatives enter nonlinearly");
        Expr g;
        if (ctx.fiber_dim == 1) {
            try {
                g = univariate_antiderivative(a[0], layer[0]);
            } catch (const Error&) {
                g = layer_primitive(a, layer, centers);
            }
        } else {
            g = layer_primitive(a, layer, centers);
        }
        F += g;
        Expr next = f - total_derivative(g, 0);
        if (max_jet_order(next) >= r)
            throw Error("not variationally trivial: order did not decrease");
        f = next;
    }
    if (zero_verdict(lag.density - total_derivative(F, 0)) == ZeroVerdict::nonzero)
        throw Error("horizontal homotopy verification failed");
    return Form::scalar(F);
}

} // namespace jv
