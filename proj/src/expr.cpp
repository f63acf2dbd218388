#include "jv/expr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace jv {

const char* fn_name(Fn f)
{
    switch (f) {
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::exp: return "exp";
        case Fn::log: return "log";
    }
    return "?";
}

namespace {

std::strong_ordering cmp_rational(const Rational& a, const Rational& b)
{
    if (a < b)
        return std::strong_ordering::less;
    if (b < a)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace

// ---------------------------------------------------------------- Atom

Atom Atom::base(int lambda)
{
    Atom a;
    a.kind_ = Kind::base;
    a.index_ = lambda;
    return a;
}

Atom Atom::jet(int fiber, MultiIndex alpha)
{
    Atom a;
    a.kind_ = Kind::jet;
    a.index_ = fiber;
    a.alpha_ = std::move(alpha);
    return a;
}

Atom Atom::pi()
{
    Atom a;
    a.kind_ = Kind::pi;
    return a;
}

Atom Atom::func(Fn f, Expr arg)
{
    Atom a;
    a.kind_ = Kind::func;
    a.fn_ = f;
    a.arg_ = std::make_shared<const Expr>(std::move(arg));
    return a;
}

const Expr& Atom::arg() const
{
    if (!arg_)
        throw Error("atom has no argument");
    return *arg_;
}

std::strong_ordering Atom::compare(const Atom& other) const
{
    if (auto c = static_cast<int>(kind_) <=> static_cast<int>(other.kind_); c != 0)
        return c;
    switch (kind_) {
        case Kind::base: return index_ <=> other.index_;
        case Kind::jet:
            if (auto c = index_ <=> other.index_; c != 0)
                return c;
            return alpha_ <=> other.alpha_;
        case Kind::pi: return std::strong_ordering::equal;
        case Kind::func:
            if (auto c = static_cast<int>(fn_) <=> static_cast<int>(other.fn_); c != 0)
                return c;
            return Expr::compare(*arg_, *other.arg_);
    }
    return std::strong_ordering::equal;
}

// ------------------------------------------------------------ Monomial

Monomial::Monomial(Atom a, int exp)
{
    if (exp < 1)
        throw Error("monomial exponent must be positive");
    factors_.emplace_back(std::move(a), exp);
}

int Monomial::degree() const
{
    int d = 0;
    for (const auto& [a, k] : factors_)
        d += k;
    return d;
}

int Monomial::fiber_degree() const
{
    int d = 0;
    for (const auto& [a, k] : factors_)
        if (a.kind() == Atom::Kind::jet)
            d += k;
    return d;
}

int Monomial::exponent(const Atom& a) const
{
    for (const auto& [b, k] : factors_)
        if (b == a)
            return k;
    return 0;
}

Monomial Monomial::times(const Monomial& other) const
{
    Monomial out;
    auto i = factors_.begin();
    auto j = other.factors_.begin();
    while (i != factors_.end() || j != other.factors_.end()) {
        if (j == other.factors_.end() || (i != factors_.end() && i->first < j->first))
            out.factors_.push_back(*i++);
        else if (i == factors_.end() || j->first < i->first)
            out.factors_.push_back(*j++);
        else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& other) const
{
    Monomial out;
    auto i = factors_.begin();
    for (const auto& [b, k] : other.factors_) {
        while (i != factors_.end() && i->first < b)
            out.factors_.push_back(*i++);
        if (i == factors_.end() || !(i->first == b) || i->second < k)
            return std::nullopt;
        if (i->second > k)
            out.factors_.emplace_back(i->first, i->second - k);
        ++i;
    }
    while (i != factors_.end())
        out.factors_.push_back(*i++);
    return out;
}

Monomial Monomial::gcd(const Monomial& other) const
{
    Monomial out;
    auto i = factors_.begin();
    auto j = other.factors_.begin();
    while (i != factors_.end() && j != other.factors_.end()) {
        if (i->first < j->first)
            ++i;
        else if (j->first < i->first)
            ++j;
        else {
            out.factors_.emplace_back(i->first, std::min(i->second, j->second));
            ++i;
            ++j;
        }
    }
    return out;
}

std::strong_ordering Monomial::compare(const Monomial& a, const Monomial& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c;
    // lexicographic: first differing atom (in atom order) with the larger
    // exponent wins
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
        auto c = i->first.compare(j->first);
        if (c < 0)
            return std::strong_ordering::greater; // a has the earlier atom
        if (c > 0)
            return std::strong_ordering::less;
        if (auto e = i->second <=> j->second; e != 0)
            return e;
        ++i;
        ++j;
    }
    if (i != a.factors_.end())
        return std::strong_ordering::greater;
    if (j != b.factors_.end())
        return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c)
{
    if (c != 0)
        terms_.emplace_back(Monomial(), c);
}

Poly::Poly(Monomial m, Rational c)
{
    if (c != 0)
        terms_.emplace_back(std::move(m), std::move(c));
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    std::map<Monomial, Rational> acc;
    for (auto& [m, c] : terms)
        acc[std::move(m)] += c;
    Poly p;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0)
            p.terms_.emplace_back(it->first, it->second);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational Poly::constant_value() const
{
    if (terms_.empty())
        return Rational(0);
    if (!is_constant())
        throw Error("polynomial is not constant");
    return terms_[0].second;
}

const Poly::Term& Poly::leading() const
{
    if (terms_.empty())
        throw Error("zero polynomial has no leading term");
    return terms_[0];
}

Poly Poly::operator-() const
{
    Poly p = *this;
    for (auto& [m, c] : p.terms_)
        c = -c;
    return p;
}

Poly Poly::operator+(const Poly& o) const
{
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        if (j == o.terms_.end())
            merged.push_back(*i++);
        else if (i == terms_.end())
            merged.push_back(*j++);
        else {
            auto c = Monomial::compare(i->first, j->first);
            if (c > 0)
                merged.push_back(*i++);
            else if (c < 0)
                merged.push_back(*j++);
            else {
                Rational s = i->second + j->second;
                if (s != 0)
                    merged.emplace_back(i->first, std::move(s));
                ++i;
                ++j;
            }
        }
    }
    Poly p;
    p.terms_ = std::move(merged);
    return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    std::map<Monomial, Rational> acc;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            acc[ma.times(mb)] += ca * cb;
    Poly p;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0)
            p.terms_.emplace_back(it->first, it->second);
    return p;
}

Poly Poly::times(const Rational& c) const
{
    if (c == 0)
        return Poly();
    Poly p = *this;
    for (auto& [m, coeff] : p.terms_)
        coeff *= c;
    return p;
}

Poly Poly::pow(int k) const
{
    if (k < 0)
        throw Error("negative power of a polynomial");
    Poly r(Rational(1));
    Poly b = *this;
    while (k > 0) {
        if (k & 1)
            r = r * b;
        b = (k >>= 1) ? b * b : b;
    }
    return r;
}

std::optional<Poly> Poly::try_divide(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        return std::nullopt;
    if (b.is_constant()) {
        Poly q = a;
        for (auto& [m, c] : q.terms_)
            c /= b.constant_value();
        return q;
    }
    std::vector<Term> quotient;
    Poly rem = a;
    const auto& [lm, lc] = b.leading();
    while (!rem.is_zero()) {
        auto q = rem.leading().first.divided_by(lm);
        if (!q)
            return std::nullopt;
        Rational qc = rem.leading().second / lc;
        quotient.emplace_back(*q, qc);
        rem = rem - b * Poly(*q, qc);
    }
    return from_terms(std::move(quotient));
}

Monomial Poly::monomial_content() const
{
    if (terms_.empty())
        return Monomial();
    Monomial g = terms_[0].first;
    for (size_t k = 1; k < terms_.size() && !g.empty(); ++k)
        g = g.gcd(terms_[k].first);
    return g;
}

Poly Poly::divided_by_monomial(const Monomial& m) const
{
    Poly p;
    p.terms_.reserve(terms_.size());
    for (const auto& [mm, c] : terms_) {
        auto q = mm.divided_by(m);
        if (!q)
            throw Error("monomial does not divide polynomial");
        p.terms_.emplace_back(*q, c);
    }
    return p;
}

std::strong_ordering Poly::compare(const Poly& a, const Poly& b)
{
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t k = 0; k < n; ++k) {
        if (auto c = Monomial::compare(a.terms_[k].first, b.terms_[k].first); c != 0)
            return c;
        if (auto c = cmp_rational(a.terms_[k].second, b.terms_[k].second); c != 0)
            return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

// ---------------------------------------------------------------- Expr

Expr::Expr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
    normalize();
}

void Expr::normalize()
{
    if (den_.is_zero())
        throw Error("division by zero expression");
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        Monomial g = num_.monomial_content().gcd(den_.monomial_content());
        if (!g.empty()) {
            num_ = num_.divided_by_monomial(g);
            den_ = den_.divided_by_monomial(g);
        }
    }
    if (den_.is_constant()) {
        num_ = num_.times(Rational(1) / den_.constant_value());
        den_ = Poly(Rational(1));
        return;
    }
    if (auto q = Poly::try_divide(num_, den_)) {
        num_ = std::move(*q);
        den_ = Poly(Rational(1));
        return;
    }
    // make the denominator monic for a deterministic representation
    Rational lc = den_.leading().second;
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ = num_.times(inv);
        den_ = den_.times(inv);
    }
}

Rational Expr::constant_value() const
{
    if (!is_constant())
        throw Error("expression is not constant");
    if (num_.is_zero())
        return Rational(0);
    return num_.constant_value() / den_.constant_value();
}

Expr Expr::operator-() const
{
    Expr e = *this;
    e.num_ = -e.num_;
    return e;
}

Expr Expr::operator+(const Expr& o) const
{
    if (den_ == o.den_)
        return Expr(num_ + o.num_, den_);
    // denominators that divide each other keep the larger one
    if (auto k = Poly::try_divide(o.den_, den_))
        return Expr(num_ * *k + o.num_, o.den_);
    if (auto k = Poly::try_divide(den_, o.den_))
        return Expr(num_ + o.num_ * *k, den_);
    return Expr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const
{
    return Expr(num_ * o.num_, den_ * o.den_);
}

Expr Expr::operator/(const Expr& o) const
{
    if (o.num_.is_zero())
        throw Error("division by zero expression");
    return Expr(num_ * o.den_, den_ * o.num_);
}

bool Expr::operator==(const Expr& o) const
{
    return num_ * o.den_ == o.num_ * den_;
}

std::strong_ordering Expr::compare(const Expr& a, const Expr& b)
{
    if (auto c = Poly::compare(a.num_, b.num_); c != 0)
        return c;
    return Poly::compare(a.den_, b.den_);
}

Expr pow(const Expr& e, int k)
{
    if (k == 0)
        return Expr(1);
    if (k < 0) {
        if (e.is_zero())
            throw Error("negative power of zero");
        return Expr(e.den().pow(-k), e.num().pow(-k));
    }
    return Expr(e.num().pow(k), e.den().pow(k));
}

// ------------------------------------------------------------- apply_fn

namespace {

// coefficient of the pure-pi monomial in a polynomial
Rational pi_coefficient(const Poly& p)
{
    Monomial pim{Atom::pi()};
    for (const auto& [m, c] : p.terms())
        if (m == pim)
            return c;
    return Rational(0);
}

Rational floor_div(const Rational& q, int d)
{
    Integer n = numerator(q), den = denominator(q) * d;
    Integer f = n / den;
    if (n < 0 && f * den != n)
        f -= 1;
    return Rational(f);
}

} // namespace

Expr apply_fn(Fn f, const Expr& arg)
{
    Expr a = arg;
    Rational sign(1);
    if (f == Fn::sin || f == Fn::cos) {
        for (int pass = 0; pass < 4; ++pass) {
            Expr before = a;
            if (!a.is_zero() && a.num().leading().second < 0) {
                a = -a;
                if (f == Fn::sin)
                    sign = -sign;
            }
            if (a.is_polynomial()) {
                Rational q = pi_coefficient(a.num());
                Rational shift = floor_div(q, 2) * 2;
                if (q - shift >= 1)
                    shift += 1;
                if (shift != 0) {
                    a = a - Expr(shift) * Expr::pi_const();
                    if (denominator(shift) == 1 && numerator(shift) % 2 != 0)
                        sign = -sign;
                }
            }
            if (Expr::compare(a, before) == 0)
                break;
        }
        if (a.is_zero())
            return f == Fn::sin ? Expr(0) : Expr(Rational(sign));
    }
    if (f == Fn::exp && a.is_zero())
        return Expr(1);
    if (f == Fn::log && a.is_constant() && a.constant_value() == 1)
        return Expr(0);
    return Expr(Rational(sign)) * Expr(Atom::func(f, a));
}

// ------------------------------------------------------------ derive

namespace {

Expr derive_poly(const Poly& p, const AtomDerivative& d);

Expr derive_atom(const Atom& a, const AtomDerivative& d)
{
    switch (a.kind()) {
        case Atom::Kind::base:
        case Atom::Kind::jet: return d(a);
        case Atom::Kind::pi: return Expr(0);
        case Atom::Kind::func: {
            Expr inner = derive(a.arg(), d);
            if (inner.is_zero())
                return Expr(0);
            switch (a.fn()) {
                case Fn::sin: return apply_fn(Fn::cos, a.arg()) * inner;
                case Fn::cos: return -apply_fn(Fn::sin, a.arg()) * inner;
                case Fn::exp: return Expr(a) * inner;
                case Fn::log: return inner / a.arg();
            }
        }
    }
    return Expr(0);
}

Expr derive_poly(const Poly& p, const AtomDerivative& d)
{
    Expr out(0);
    for (const auto& [m, c] : p.terms()) {
        const auto& fs = m.factors();
        for (size_t k = 0; k < fs.size(); ++k) {
            Expr da = derive_atom(fs[k].first, d);
            if (da.is_zero())
                continue;
            // c * e_k * atom_k^{e_k-1} * (other factors) * da
            Poly rest(Rational(c * fs[k].second));
            for (size_t j = 0; j < fs.size(); ++j) {
                int e = fs[j].second - (j == k ? 1 : 0);
                if (e > 0)
                    rest = rest * Poly(fs[j].first).pow(e);
            }
            out += Expr(rest, Poly(Rational(1))) * da;
        }
    }
    return out;
}

} // namespace

Expr derive(const Expr& e, const AtomDerivative& d)
{
    Expr dn = derive_poly(e.num(), d);
    if (e.is_polynomial())
        return dn;
    Expr dd = derive_poly(e.den(), d);
    Expr den(e.den(), Poly(Rational(1)));
    return dn / den - Expr(e.num(), Poly(Rational(1))) * dd / (den * den);
}

Expr partial(const Expr& e, const Atom& coord)
{
    if (coord.kind() != Atom::Kind::base && coord.kind() != Atom::Kind::jet)
        throw Error("partial derivative requires a coordinate atom");
    return derive(e, [&coord](const Atom& a) -> Expr {
        return a == coord ? Expr(1) : Expr(0);
    });
}

// ------------------------------------------------------------- subst

namespace {

Expr subst_poly(const Poly& p, const SubstMap& map)
{
    Expr out(0);
    for (const auto& [m, c] : p.terms()) {
        Expr term{Rational(c)};
        for (const auto& [a, k] : m.factors()) {
            Expr repl;
            if (auto it = map.find(a); it != map.end())
                repl = it->second;
            else if (a.kind() == Atom::Kind::func)
                repl = apply_fn(a.fn(), subst(a.arg(), map));
            else
                repl = Expr(a);
            term *= pow(repl, k);
        }
        out += term;
    }
    return out;
}

} // namespace

Expr subst(const Expr& e, const SubstMap& map)
{
    if (map.empty())
        return e;
    Expr n = subst_poly(e.num(), map);
    if (e.is_polynomial())
        return n;
    return n / subst_poly(e.den(), map);
}

// -------------------------------------------------------------- eval

namespace {

double eval_poly(const Poly& p, const EvalPoint& at);

double eval_atom(const Atom& a, const EvalPoint& at)
{
    switch (a.kind()) {
        case Atom::Kind::pi: return 3.14159265358979323846;
        case Atom::Kind::func: {
            double v = eval(a.arg(), at);
            switch (a.fn()) {
                case Fn::sin: return std::sin(v);
                case Fn::cos: return std::cos(v);
                case Fn::exp: return std::exp(v);
                case Fn::log:
                    if (v <= 0)
                        throw Error("domain error: log of non-positive value");
                    return std::log(v);
            }
            return 0;
        }
        default: {
            auto it = at.values.find(a);
            if (it == at.values.end())
                throw Error("evaluation: coordinate has no assigned value");
            return it->second;
        }
    }
}

double eval_poly(const Poly& p, const EvalPoint& at)
{
    double s = 0;
    for (const auto& [m, c] : p.terms()) {
        double t = to_double(c);
        for (const auto& [a, k] : m.factors())
            t *= std::pow(eval_atom(a, at), k);
        s += t;
    }
    return s;
}

} // namespace

double eval(const Expr& e, const EvalPoint& at)
{
    double n = eval_poly(e.num(), at);
    if (e.is_polynomial())
        return n;
    double d = eval_poly(e.den(), at);
    if (std::abs(d) < 1e-300)
        throw Error("domain error: denominator vanishes");
    return n / d;
}

// --------------------------------------------------------- collectors

namespace {

void collect(const Poly& p, const std::function<void(const Atom&)>& visit)
{
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, k] : m.factors()) {
            visit(a);
            if (a.kind() == Atom::Kind::func) {
                collect(a.arg().num(), visit);
                collect(a.arg().den(), visit);
            }
        }
}

void collect(const Expr& e, const std::function<void(const Atom&)>& visit)
{
    collect(e.num(), visit);
    collect(e.den(), visit);
}

} // namespace

std::set<Atom> coordinate_atoms(const Expr& e)
{
    std::set<Atom> out;
    collect(e, [&out](const Atom& a) {
        if (a.kind() == Atom::Kind::base || a.kind() == Atom::Kind::jet)
            out.insert(a);
    });
    return out;
}

std::set<Atom> jet_atoms(const Expr& e)
{
    std::set<Atom> out;
    collect(e, [&out](const Atom& a) {
        if (a.kind() == Atom::Kind::jet)
            out.insert(a);
    });
    return out;
}

int max_jet_order(const Expr& e)
{
    int r = -1;
    collect(e, [&r](const Atom& a) {
        if (a.kind() == Atom::Kind::jet)
            r = std::max(r, a.alpha().order());
    });
    return r;
}

bool depends_on(const Expr& e, const Atom& coord)
{
    bool found = false;
    collect(e, [&](const Atom& a) {
        if (a == coord)
            found = true;
    });
    return found;
}

bool has_func_atoms(const Expr& e)
{
    bool found = false;
    collect(e, [&found](const Atom& a) {
        if (a.kind() == Atom::Kind::func)
            found = true;
    });
    return found;
}

// ------------------------------------------------------- zero_verdict

ZeroVerdict zero_verdict(const Expr& e, int points, double tol)
{
    if (e.num().is_zero())
        return ZeroVerdict::zero;
    if (!has_func_atoms(e))
        return ZeroVerdict::nonzero;
    auto coords = coordinate_atoms(e);
    std::mt19937_64 rng(0x6a760001u);
    std::uniform_real_distribution<double> dist(0.15, 1.35);
    int valid = 0;
    for (int tries = 0; tries < 16 * points && valid < points; ++tries) {
        EvalPoint at;
        for (const auto& a : coords)
            at.set(a, dist(rng));
        try {
            double v = eval(e, at);
            if (std::abs(v) > tol)
                return ZeroVerdict::nonzero;
            ++valid;
        } catch (const Error&) {
            continue;
        }
    }
    if (valid == 0)
        throw Error("zero test: no admissible sample points");
    return ZeroVerdict::probably_zero;
}

// ----------------------------------------------------------- printing

namespace {

std::string atom_string(const Atom& a, const JetContext& ctx)
{
    switch (a.kind()) {
        case Atom::Kind::base: return ctx.base_names[static_cast<size_t>(a.index())];
        case Atom::Kind::jet: return ctx.jet_name(a.index(), a.alpha());
        case Atom::Kind::pi: return "pi";
        case Atom::Kind::func:
            return std::string(fn_name(a.fn())) + "(" + to_string(a.arg(), ctx) + ")";
    }
    return "?";
}

std::string term_string(const Monomial& m, const Rational& c_abs, const JetContext& ctx)
{
    std::string s;
    if (m.empty())
        return to_string(c_abs);
    if (c_abs != 1)
        s = to_string(c_abs) + "*";
    bool first = true;
    for (const auto& [a, k] : m.factors()) {
        if (!first)
            s += "*";
        first = false;
        s += atom_string(a, ctx);
        if (k != 1)
            s += "^" + std::to_string(k);
    }
    return s;
}

} // namespace

std::string to_string(const Poly& p, const JetContext& ctx)
{
    if (p.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool neg = c < 0;
        Rational c_abs = neg ? Rational(-c) : c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += term_string(m, c_abs, ctx);
        first = false;
    }
    return s;
}

std::string to_string(const Expr& e, const JetContext& ctx)
{
    if (e.is_polynomial())
        return to_string(e.num(), ctx);
    return "(" + to_string(e.num(), ctx) + ")/(" + to_string(e.den(), ctx) + ")";
}

} // namespace jv
