#pragma once

#include "jv/expr.hpp"

#include <map>
#include <vector>

namespace jv {

/// Total derivative D_lambda = d_lambda + y^j_{alpha+lambda} d/dy^j_alpha,
/// realized as the derivation with D(x^mu) = delta, D(y^j_alpha) =
/// y^j_{alpha+lambda}.  Raises the jet order by one.
Expr total_derivative(const Expr& e, int lambda);

/// D_alpha: composition of total derivatives per multi-index entry.
Expr iterated_total_derivative(const Expr& e, const MultiIndex& alpha);

/// Projectable vector field (Xi, xi): xi^lambda depend on base coordinates
/// only, Xi^i on base and order-0 fiber coordinates.
struct ProjectableVectorField {
    std::vector<Expr> xi; // n components
    std::vector<Expr> Xi; // m components

    static ProjectableVectorField make(const JetContext& ctx, std::vector<Expr> xi,
                                       std::vector<Expr> Xi);
    bool is_vertical() const;
};

/// Jet prolongation j_s(Xi, xi) with components
/// Xi^i_alpha = D_alpha(Xi^i - y^i_mu xi^mu) + y^i_{alpha+mu} xi^mu.
class ProlongedField {
public:
    static ProlongedField prolong(const ProjectableVectorField& v, int s, const JetContext& ctx);
    /// Assemble a jet field from explicit component data (used for vertical
    /// parts, which are not prolongations of projectable fields).
    static ProlongedField from_components(std::vector<Expr> xi,
                                          std::map<std::pair<int, MultiIndex>, Expr> comps,
                                          int order, int fiber_dim);

    int order() const { return order_; }
    int base_dim() const { return static_cast<int>(xi_.size()); }
    int fiber_dim() const { return fiber_dim_; }
    const Expr& xi(int lambda) const { return xi_[static_cast<size_t>(lambda)]; }
    const Expr& component(int fiber, const MultiIndex& alpha) const;
    /// theta^i_alpha(j Xi) = Xi^i_alpha - y^i_{alpha+lambda} xi^lambda.
    Expr vertical_component(int fiber, const MultiIndex& alpha) const;

private:
    int order_ = 0;
    int fiber_dim_ = 0;
    std::vector<Expr> xi_;
    std::map<std::pair<int, MultiIndex>, Expr> comps_;
};

struct FieldSplit {
    std::vector<Expr> horizontal_xi;                       // xi^lambda (coefficients of D_lambda)
    std::map<std::pair<int, MultiIndex>, Expr> vertical;   // fiber components, base part zero
};

/// Splits j_s(Xi) into xi^lambda D_lambda plus a vertical field; the parts
/// sum back to the prolonged field.
FieldSplit split_prolonged(const ProlongedField& v);

/// Substitutions for all jet atoms up to `order` induced by the fiber map
/// y^i -> image[i] (expressions in base and order-0 fiber coordinates):
/// y^i_alpha -> D_alpha(image[i]).
SubstMap prolonged_fiber_subst(const std::vector<Expr>& image, int order, const JetContext& ctx);

} // namespace jv
