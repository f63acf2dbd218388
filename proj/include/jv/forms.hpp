#pragma once

#include "jv/jet.hpp"

#include <map>

namespace jv {

/// Basis one-form on a jet space: a contact form theta^i_alpha, a naive
/// fiber differential d^i_alpha, or a horizontal differential d^lambda.
/// Canonical factor order: contact factors first, then naive fiber
/// differentials, then horizontal ones; signs are normalized into it.
struct Factor {
    enum class Kind { theta, djet, dbase };

    static Factor theta(int fiber, MultiIndex alpha) { return {Kind::theta, fiber, std::move(alpha)}; }
    static Factor djet(int fiber, MultiIndex alpha) { return {Kind::djet, fiber, std::move(alpha)}; }
    static Factor dbase(int lambda) { return {Kind::dbase, lambda, MultiIndex()}; }

    Kind kind;
    int index; // fiber index or lambda
    MultiIndex alpha;

    std::strong_ordering operator<=>(const Factor& o) const;
    bool operator==(const Factor& o) const { return (*this <=> o) == 0; }
};

using FactorList = std::vector<Factor>;

/// Sorts factors into canonical order; returns the permutation sign, or 0
/// when a factor repeats (so the wedge vanishes).
int normalize_factors(FactorList& fs);

/// Differential form with expression coefficients over the canonical factor
/// monomials, stored sparsely.  Sums need not be bidegree-homogeneous; the
/// graded pieces are recovered with component().
class Form {
public:
    Form() = default;
    static Form scalar(Expr e);
    static Form term(Expr coeff, FactorList factors);

    bool is_zero() const { return terms_.empty(); }
    const std::map<FactorList, Expr>& terms() const { return terms_; }
    const Expr& coefficient(const FactorList& fs) const;

    void add(Expr coeff, FactorList factors);

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    Form operator*(const Expr& scale) const;
    bool operator==(const Form& o) const { return (*this - o).is_zero(); }

    /// Terms with exactly q contact factors, p horizontal factors, and no
    /// naive fiber differentials.
    Form component(int contact_degree, int horizontal_degree) const;
    int max_theta_order() const;
    bool has_djet() const;

private:
    std::map<FactorList, Expr> terms_;
};

Form wedge(const Form& a, const Form& b);

/// Horizontal differential: (q,p) -> (q,p+1); coefficients via D_lambda,
/// d_H theta^i_alpha = -theta^i_{alpha+lambda} ^ d^lambda.
Form d_H(const Form& w, int n);
/// Vertical differential: (q,p) -> (q+1,p); coefficients via d/dy^i_alpha.
Form d_V(const Form& w);
/// d_H + d_V; equals the classical exterior derivative after expanding the
/// contact basis.
Form exterior_d(const Form& w, int n);
/// Classical exterior derivative in the naive basis (for cross-checks).
Form classical_d(const Form& w, int n);

/// theta^i_alpha -> d^i_alpha - y^i_{alpha+lambda} d^lambda.
Form expand_contact(const Form& w, int n);
/// d^i_alpha -> theta^i_alpha + y^i_{alpha+lambda} d^lambda.
Form to_contact_basis(const Form& w, int n);
/// h-projection: contact factors annihilated, d^i_alpha -> y^i_{alpha+lambda} d^lambda.
Form horizontalize(const Form& w, int n);

/// Graded interior product with a prolonged field.
Form contract(const ProlongedField& v, const Form& w);

/// Lie derivative along the prolongation, via Cartan's formula with the
/// split differential.
Form cartan_lie(const Form& w, const ProlongedField& v, int n);

FactorList omega0(int n);
/// Interior product of d/dx^lambda with omega0 (keeps the sign).
Form omega_reduced(int n, int lambda);

Form lagrangian_form(const Expr& density, int n);
Form source_form_of(const std::vector<Expr>& eta, int n);

} // namespace jv
