#pragma once

#include "jv/expr.hpp"

#include <functional>
#include <vector>

namespace jv {

/// A section of the fibration: closed-form component expressions in the base
/// coordinates, or (for n = 1) a uniformly sampled trajectory.  Sampled
/// sections deliver jet values through centered finite differences of
/// fourth-order accuracy and refuse derivative orders above 4.
class Section {
public:
    static Section closed_form(const JetContext& ctx, std::vector<Expr> comps);
    static Section sampled(const JetContext& ctx, double t0, double h,
                           std::vector<std::vector<double>> values);

    bool is_sampled() const { return sampled_; }
    int sample_count() const { return static_cast<int>(values_.size()); }
    double step() const { return h_; }
    double start() const { return t0_; }
    double time_at(int k) const { return t0_ + k * h_; }
    /// First and last sample index with enough neighbors for the stencils.
    int interior_begin(int order) const;
    int interior_end(int order) const;

    /// Base and jet coordinate values of j_order(sigma) at a base point.
    EvalPoint jet_values(const std::vector<double>& x, int order) const;
    /// Same, at sample index k (sampled sections, n = 1).
    EvalPoint jet_values_at_sample(int k, int order) const;

    const std::vector<Expr>& components() const;

private:
    bool sampled_ = false;
    int base_dim_ = 1, fiber_dim_ = 1;
    std::vector<Expr> comps_;
    double t0_ = 0, h_ = 0;
    std::vector<std::vector<double>> values_;

    double derivative_at(int k, int i, int order) const;
};

/// Right-hand side of the second-order system y'' = accel(t, y, y').
using Accel =
    std::function<std::vector<double>(double, const std::vector<double>&, const std::vector<double>&)>;

/// Classical RK4 on the first-order reduction; returns the positions as a
/// sampled section with step h over [t0, t1].
Section rk4_integrate(const JetContext& ctx, const Accel& accel, std::vector<double> y0,
                      std::vector<double> v0, double t0, double t1, double h);

/// Adaptive Simpson quadrature.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-9);

} // namespace jv
