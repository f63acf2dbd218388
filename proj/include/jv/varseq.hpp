#pragma once

#include "jv/forms.hpp"

#include <functional>

namespace jv {

/// Horizontal n-form L * omega0; the density is the sole datum.
struct Lagrangian {
    Expr density;

    int order() const { return std::max(0, max_jet_order(density)); }
    Form to_form(int n) const { return lagrangian_form(density, n); }
};

/// Source form eta_i theta^i ^ omega0 with order-0 contact factors.
struct SourceForm {
    std::vector<Expr> comps;

    int order() const;
    Form to_form(int n) const { return source_form_of(comps, n); }
    bool is_zero() const;
};

/// Components of the Helmholtz morphism, indexed by a fiber pair and the
/// multi-index of the differentiated coordinate; all zero iff the source
/// form is locally variational.
struct HelmholtzTensor {
    std::map<std::tuple<int, int, MultiIndex>, Expr> comps;

    ZeroVerdict verdict() const;
    /// A nonzero component, for reporting.
    const std::pair<const std::tuple<int, int, MultiIndex>, Expr>* witness() const;
};

/// eta_i = sum_alpha (-1)^{|alpha|} D_alpha(dL/dy^i_alpha).
SourceForm euler_lagrange(const Lagrangian& lag, const JetContext& ctx);

/// Representation of a contact-degree-1 class by a source form:
/// rho = rho_i^alpha theta^i_alpha ^ omega0  ->  sum (-1)^{|alpha|} D_alpha rho_i^alpha.
SourceForm source_reduce(const Form& rho, const JetContext& ctx);

/// Momentum form of the first-variation split, orders r <= 2 only:
/// d_V(lambda) = E - d_H p as forms (checked by the test suite).
Form momentum(const Lagrangian& lag, const JetContext& ctx);

HelmholtzTensor helmholtz(const SourceForm& eta, const JetContext& ctx);
bool is_locally_variational(const SourceForm& eta, const JetContext& ctx);

/// Fiber-scaling integral int_0^1 t^extra * e(scaled atoms -> t * atom) dt,
/// evaluated symbolically.  Errors when no closed form exists (function
/// atoms over scaled coordinates, or non-homogeneous denominators) or when
/// the integral diverges (negative total t-power).
Expr scaling_integral(const Expr& e, const std::function<bool(const Atom&)>& scaled, int extra);

/// Vainberg-Tonti local Lagrangian about a star-shaped chart center
/// (default the fiber origin): L = (y^i - c^i) int_0^1 eta_i(x, c + t(y-c), t y', ...) dt.
Lagrangian vainberg_tonti(const SourceForm& eta, const JetContext& ctx,
                          const std::vector<Rational>& center = {});

/// Right inverse of d_H on variationally trivial Lagrangians over a
/// star-shaped chart; base dimension 1.  Returns the (0, n-1) primitive.
Form horizontal_homotopy(const Lagrangian& lag, const JetContext& ctx,
                         const std::vector<Rational>& center = {});

/// Closed-form antiderivative in a single atom; handles powers and single
/// elementary-function factors with arguments linear in the atom.
Expr univariate_antiderivative(const Expr& e, const Atom& var);

} // namespace jv
