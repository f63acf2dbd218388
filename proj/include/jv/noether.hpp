#pragma once

#include "jv/section.hpp"
#include "jv/varseq.hpp"

namespace jv {

/// Conserved-current candidate: a (0, n-1) form with its provenance.
struct Current {
    enum class Tag { canonical, improved, generalized };
    Form form;
    Tag tag = Tag::canonical;

    /// n = 1 currents are scalars.
    Expr scalar() const { return form.coefficient({}); }
};

/// Decomposition of the variational Lie derivative of a Lagrangian:
/// total = (work term) + d_H(current).  The total is computed independently
/// through Cartan's formula and h-projection, so the identity is a check,
/// not a definition.
struct LieLagrangian {
    Expr total;          // h(Lie_{jXi} lambda), density
    Expr work;           // Xi_V . E_n(lambda), density
    Form current;        // j Xi_V . p + xi . lambda
    Form boundary;       // d_H(current)
    bool identity_holds; // total == work + boundary (exact)
};

LieLagrangian variational_lie_lagrangian(const Lagrangian& lag, const ProjectableVectorField& v,
                                         const JetContext& ctx);

/// Variational Lie derivative of a source form: the direct route (Cartan
/// plus source reduction) and the E_n(Xi_V . eta) term; their difference is
/// the Helmholtz defect, zero for locally variational sources.
struct LieSource {
    SourceForm total;
    SourceForm el_term;
    SourceForm defect;
};

LieSource variational_lie_source(const SourceForm& eta, const ProjectableVectorField& v,
                                 const JetContext& ctx);

/// Canonical Noether current j_r Xi_V . p + xi . lambda.
Current noether_current(const Lagrangian& lag, const ProjectableVectorField& v,
                        const JetContext& ctx);

/// Improved current eps - beta where Lie(lambda) = d_H beta; requires a
/// generalized symmetry with variationally trivial Lie derivative (base
/// dimension 1 for the homotopy).
Current improved_current(const Lagrangian& lag, const ProjectableVectorField& v,
                         const JetContext& ctx);

/// Xi_V . eta as a density.
Expr contract_source(const SourceForm& eta, const ProjectableVectorField& v,
                     const JetContext& ctx);

struct GridSpec {
    double t0 = 0, t1 = 1;
    double h = 1e-3;
    /// Implied count; sampled sections use their native grid.
    int count() const { return static_cast<int>((t1 - t0) / h + 0.5) + 1; }
};

struct ConservationReport {
    double criticality_residual = 0; // max |eta_i(j sigma)|
    double conservation_residual = 0; // max |d/dt of pulled-back current|
    double drift = 0;                // max |eps(t_k) - eps(t_first)|
    double relative_drift = 0;       // drift / max |eps|
    double charge = 0;               // conserved value at the first interior point
    bool critical = false;
    int points = 0;
};

ConservationReport check_conservation(const Current& c, const Section& sigma,
                                      const SourceForm& eta, const JetContext& ctx,
                                      const GridSpec& grid, double crit_tol = 1e-6);

struct CurrentClassification {
    std::vector<double> charges; // one conserved value per solution
    bool trivial = true;         // all charges below tolerance
};

CurrentClassification classify_current(const Current& c, const std::vector<Section>& solutions,
                                       const SourceForm& eta, const JetContext& ctx,
                                       const GridSpec& grid, double crit_tol = 1e-6,
                                       double zero_tol = 1e-9);

/// Acceleration map obtained by solving eta = 0 for the second derivatives;
/// requires eta affine in y_tt with an invertible coefficient matrix.
Accel accel_from_source(const SourceForm& eta, const JetContext& ctx);

} // namespace jv
