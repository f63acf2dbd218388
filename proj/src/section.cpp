#include "jv/section.hpp"

#include <cmath>

namespace jv {

Section Section::closed_form(const JetContext& ctx, std::vector<Expr> comps)
{
    if (static_cast<int>(comps.size()) != ctx.fiber_dim)
        throw Error("section component count does not match the fiber dimension");
    for (const Expr& c : comps)
        if (max_jet_order(c) >= 0)
            throw Error("section components must depend on base coordinates only");
    Section s;
    s.sampled_ = false;
    s.base_dim_ = ctx.base_dim;
    s.fiber_dim_ = ctx.fiber_dim;
    s.comps_ = std::move(comps);
    return s;
}

Section Section::sampled(const JetContext& ctx, double t0, double h,
                         std::vector<std::vector<double>> values)
{
    if (ctx.base_dim != 1)
        throw Error("sampled sections require a one-dimensional base");
    if (h <= 0)
        throw Error("sampled sections require a positive step");
    for (const auto& row : values)
        if (static_cast<int>(row.size()) != ctx.fiber_dim)
            throw Error("sample row width does not match the fiber dimension");
    Section s;
    s.sampled_ = true;
    s.base_dim_ = 1;
    s.fiber_dim_ = ctx.fiber_dim;
    s.t0_ = t0;
    s.h_ = h;
    s.values_ = std::move(values);
    return s;
}

const std::vector<Expr>& Section::components() const
{
    if (sampled_)
        throw Error("sampled section has no closed-form components");
    return comps_;
}

int Section::interior_begin(int order) const { return order <= 2 ? 2 : 3; }

int Section::interior_end(int order) const
{
    return sample_count() - (order <= 2 ? 2 : 3);
}

namespace {

// centered stencils of fourth-order accuracy (offsets -3..3)
const double stencil1[7] = {0, 1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12, 0};
const double stencil2[7] = {0, -1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0};
const double stencil3[7] = {1.0 / 8, -8.0 / 8, 13.0 / 8, 0, -13.0 / 8, 8.0 / 8, -1.0 / 8};
const double stencil4[7] = {-1.0 / 6, 12.0 / 6, -39.0 / 6, 56.0 / 6, -39.0 / 6, 12.0 / 6, -1.0 / 6};

} // namespace

double Section::derivative_at(int k, int i, int order) const
{
    if (order == 0)
        return values_[static_cast<size_t>(k)][static_cast<size_t>(i)];
    if (order > 4)
        throw Error("sampled sections support derivative orders up to 4");
    int reach = order <= 2 ? 2 : 3;
    if (k < reach || k + reach >= sample_count())
        throw Error("insufficient samples near the boundary for order " + std::to_string(order));
    const double* w = order == 1 ? stencil1 : order == 2 ? stencil2 : order == 3 ? stencil3 : stencil4;
    double s = 0;
    for (int off = -3; off <= 3; ++off) {
        double c = w[off + 3];
        if (c != 0)
            s += c * values_[static_cast<size_t>(k + off)][static_cast<size_t>(i)];
    }
    return s / std::pow(h_, order);
}

EvalPoint Section::jet_values(const std::vector<double>& x, int order) const
{
    if (sampled_) {
        if (x.size() != 1)
            throw Error("sampled sections live over a one-dimensional base");
        double pos = (x[0] - t0_) / h_;
        int k = static_cast<int>(std::llround(pos));
        if (std::abs(pos - k) > 1e-6)
            throw Error("requested point is not on the sample grid");
        return jet_values_at_sample(k, order);
    }
    if (static_cast<int>(x.size()) != base_dim_)
        throw Error("base point dimension mismatch");
    EvalPoint at;
    for (int lambda = 0; lambda < base_dim_; ++lambda)
        at.set(Atom::base(lambda), x[static_cast<size_t>(lambda)]);
    for (int i = 0; i < fiber_dim_; ++i)
        for (const MultiIndex& alpha : multi_indices_up_to(base_dim_, order)) {
            Expr d = comps_[static_cast<size_t>(i)];
            for (int lambda = 0; lambda < base_dim_; ++lambda)
                for (int c = 0; c < alpha[lambda]; ++c)
                    d = partial(d, Atom::base(lambda));
            at.set(Atom::jet(i, alpha), eval(d, at));
        }
    return at;
}

EvalPoint Section::jet_values_at_sample(int k, int order) const
{
    if (!sampled_)
        return jet_values({time_at(k)}, order);
    if (k < 0 || k >= sample_count())
        throw Error("sample index out of range");
    EvalPoint at;
    at.set(Atom::base(0), time_at(k));
    for (int i = 0; i < fiber_dim_; ++i)
        for (int j = 0; j <= order; ++j) {
            MultiIndex alpha(1);
            for (int c = 0; c < j; ++c)
                alpha = alpha.plus(0);
            at.set(Atom::jet(i, alpha), derivative_at(k, i, j));
        }
    return at;
}

Section rk4_integrate(const JetContext& ctx, const Accel& accel, std::vector<double> y0,
                      std::vector<double> v0, double t0, double t1, double h)
{
    if (h <= 0 || t1 <= t0)
        throw Error("integration requires h > 0 and t1 > t0");
    size_t m = y0.size();
    auto step = [&](double t, std::vector<double>& y, std::vector<double>& v) {
        auto add = [m](const std::vector<double>& a, const std::vector<double>& b, double s) {
            std::vector<double> r(m);
            for (size_t i = 0; i < m; ++i)
                r[i] = a[i] + s * b[i];
            return r;
        };
        std::vector<double> k1y = v, k1v = accel(t, y, v);
        std::vector<double> y2 = add(y, k1y, h / 2), v2 = add(v, k1v, h / 2);
        std::vector<double> k2y = v2, k2v = accel(t + h / 2, y2, v2);
        std::vector<double> y3 = add(y, k2y, h / 2), v3 = add(v, k2v, h / 2);
        std::vector<double> k3y = v3, k3v = accel(t + h / 2, y3, v3);
        std::vector<double> y4 = add(y, k3y, h), v4 = add(v, k3v, h);
        std::vector<double> k4y = v4, k4v = accel(t + h, y4, v4);
        for (size_t i = 0; i < m; ++i) {
            y[i] += h / 6 * (k1y[i] + 2 * k2y[i] + 2 * k3y[i] + k4y[i]);
            v[i] += h / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
        }
    };
    std::vector<std::vector<double>> values;
    values.push_back(y0);
    long steps = std::lround((t1 - t0) / h);
    for (long k = 0; k < steps; ++k) {
        step(t0 + k * h, y0, v0);
        values.push_back(y0);
    }
    return Section::sampled(ctx, t0, h, std::move(values));
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm)
{
    return (b - a) / 6 * (fa + 4 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double fm, double whole, double tol, int depth)
{
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive(f, a, fa, m, fm, flm, left, tol / 2, depth - 1) +
           adaptive(f, m, fm, b, fb, frm, right, tol / 2, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol)
{
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive(f, a, fa, b, fb, fm, whole, tol, 48);
}

} // namespace jv
