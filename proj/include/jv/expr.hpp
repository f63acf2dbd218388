#pragma once

#include "jv/context.hpp"
#include "jv/multiindex.hpp"
#include "jv/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jv {

class Expr;

enum class Fn { sin, cos, exp, log };

const char* fn_name(Fn f);

/// A multiplicative generator of the coefficient algebra: a base coordinate
/// x^lambda, a jet coordinate y^i_alpha, the constant pi, or an elementary
/// function applied to an expression.  Atoms carry a total order (base < jet
/// < pi < func) which fixes the canonical form of every polynomial.
class Atom {
public:
    enum class Kind { base, jet, pi, func };

    static Atom base(int lambda);
    static Atom jet(int fiber, MultiIndex alpha);
    static Atom pi();
    /// Raw function atom; use apply_fn() to get the normalized expression.
    static Atom func(Fn f, Expr arg);

    Kind kind() const { return kind_; }
    int index() const { return index_; }
    const MultiIndex& alpha() const { return alpha_; }
    Fn fn() const { return fn_; }
    const Expr& arg() const;

    std::strong_ordering compare(const Atom& other) const;
    bool operator==(const Atom& other) const { return compare(other) == 0; }
    bool operator<(const Atom& other) const { return compare(other) < 0; }

private:
    Kind kind_ = Kind::base;
    int index_ = 0;
    MultiIndex alpha_;
    Fn fn_ = Fn::sin;
    std::shared_ptr<const Expr> arg_;
};

/// Product of atom powers, sorted by atom order, all exponents >= 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Atom a, int exp = 1);

    const std::vector<std::pair<Atom, int>>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    int degree() const;
    /// Total exponent carried by jet atoms (used by fiber-scaling integrals).
    int fiber_degree() const;
    int exponent(const Atom& a) const;

    Monomial times(const Monomial& other) const;
    std::optional<Monomial> divided_by(const Monomial& other) const;
    Monomial gcd(const Monomial& other) const;

    static std::strong_ordering compare(const Monomial& a, const Monomial& b);
    bool operator==(const Monomial& other) const { return compare(*this, other) == 0; }
    bool operator<(const Monomial& other) const { return compare(*this, other) < 0; }

private:
    std::vector<std::pair<Atom, int>> factors_;
    friend class Poly;
};

/// Sparse polynomial over the atoms with exact rational coefficients.
/// Terms are kept sorted descending, so equal polynomials have identical
/// representations.
class Poly {
public:
    using Term = std::pair<Monomial, Rational>;

    Poly() = default;
    Poly(const Rational& c);
    Poly(int c) : Poly(Rational(c)) {}
    explicit Poly(const Atom& a) : Poly(Monomial(a), Rational(1)) {}
    Poly(Monomial m, Rational c);
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly times(const Rational& c) const;
    Poly pow(int k) const; // k >= 0

    /// Exact division: returns a/b when the remainder is zero, else nullopt.
    static std::optional<Poly> try_divide(const Poly& a, const Poly& b);
    /// Monomial common to every term (componentwise minimum of exponents).
    Monomial monomial_content() const;
    Poly divided_by_monomial(const Monomial& m) const;

    static std::strong_ordering compare(const Poly& a, const Poly& b);
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

private:
    std::vector<Term> terms_;
};

/// Symbolic scalar on a jet chart: a quotient of canonical polynomials.
/// The denominator is monic and shares no monomial or exact polynomial
/// factor that the lightweight normalization can find; equality tests
/// cross-multiply, so they are exact regardless of residual common factors.
class Expr {
public:
    Expr() : num_(), den_(Rational(1)) {}
    Expr(const Rational& c) : num_(c), den_(Rational(1)) {}
    Expr(int c) : Expr(Rational(c)) {}
    explicit Expr(const Atom& a) : num_(a), den_(Rational(1)) {}
    Expr(Poly num, Poly den);

    static Expr base(int lambda) { return Expr(Atom::base(lambda)); }
    static Expr jet(int fiber, MultiIndex alpha) { return Expr(Atom::jet(fiber, std::move(alpha))); }
    static Expr pi_const() { return Expr(Atom::pi()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    /// Exact equality of the represented rational functions.
    bool operator==(const Expr& o) const;

    /// Structural order used for atom comparison and map keys.
    static std::strong_ordering compare(const Expr& a, const Expr& b);
    bool operator<(const Expr& o) const { return compare(*this, o) < 0; }

private:
    Poly num_, den_;
    void normalize();
};

Expr pow(const Expr& e, int k);

/// Elementary function application with normalization: exact values at 0,
/// sin/cos parity, and reduction of additive multiples of pi.
Expr apply_fn(Fn f, const Expr& arg);

/// Linear derivation determined by its action on coordinate atoms (base and
/// jet); pi maps to 0 and function atoms follow the chain rule.
using AtomDerivative = std::function<Expr(const Atom&)>;
Expr derive(const Expr& e, const AtomDerivative& d);

/// Formal partial derivative with respect to one coordinate atom.
Expr partial(const Expr& e, const Atom& coord);

using SubstMap = std::map<Atom, Expr>;
Expr subst(const Expr& e, const SubstMap& map);

struct EvalPoint {
    std::map<Atom, double> values;
    void set(const Atom& a, double v) { values[a] = v; }
};
double eval(const Expr& e, const EvalPoint& at);

/// Coordinate atoms (base and jet) occurring anywhere, including inside
/// function arguments.
std::set<Atom> coordinate_atoms(const Expr& e);
std::set<Atom> jet_atoms(const Expr& e);
/// Largest |alpha| over jet atoms, or -1 when no jet coordinate occurs.
int max_jet_order(const Expr& e);
bool depends_on(const Expr& e, const Atom& coord);
bool has_func_atoms(const Expr& e);

enum class ZeroVerdict { zero, probably_zero, nonzero };

/// Exact zero test for rational expressions; falls back to randomized
/// evaluation (8 points, tolerance 1e-9 by default) when elementary
/// functions are present and the canonical form is not literally zero.
ZeroVerdict zero_verdict(const Expr& e, int points = 8, double tol = 1e-9);
inline bool is_definitely_zero(const Expr& e) { return zero_verdict(e) == ZeroVerdict::zero; }

std::string to_string(const Expr& e, const JetContext& ctx);
std::string to_string(const Poly& p, const JetContext& ctx);

} // namespace jv
