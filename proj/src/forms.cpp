#include "jv/forms.hpp"

namespace jv {

std::strong_ordering Factor::operator<=>(const Factor& o) const
{
    if (auto c = static_cast<int>(kind) <=> static_cast<int>(o.kind); c != 0)
        return c;
    if (auto c = index <=> o.index; c != 0)
        return c;
    return alpha <=> o.alpha;
}

int normalize_factors(FactorList& fs)
{
    // insertion sort with parity tracking; all factors have odd degree
    int sign = 1;
    for (size_t k = 1; k < fs.size(); ++k) {
        Factor f = fs[k];
        size_t j = k;
        while (j > 0 && f < fs[j - 1]) {
            fs[j] = fs[j - 1];
            sign = -sign;
            --j;
        }
        fs[j] = f;
    }
    for (size_t k = 1; k < fs.size(); ++k)
        if (fs[k] == fs[k - 1])
            return 0;
    return sign;
}

Form Form::scalar(Expr e) { return term(std::move(e), {}); }

Form Form::term(Expr coeff, FactorList factors)
{
    Form w;
    w.add(std::move(coeff), std::move(factors));
    return w;
}

const Expr& Form::coefficient(const FactorList& fs) const
{
    static const Expr zero;
    auto it = terms_.find(fs);
    return it == terms_.end() ? zero : it->second;
}

void Form::add(Expr coeff, FactorList factors)
{
    if (coeff.is_zero())
        return;
    int sign = normalize_factors(factors);
    if (sign == 0)
        return;
    if (sign < 0)
        coeff = -coeff;
    auto [it, inserted] = terms_.emplace(std::move(factors), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Form Form::operator+(const Form& o) const
{
    Form w = *this;
    for (const auto& [fs, c] : o.terms_)
        w.add(c, fs);
    return w;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator-() const
{
    Form w;
    for (const auto& [fs, c] : terms_)
        w.terms_.emplace(fs, -c);
    return w;
}

Form Form::operator*(const Expr& scale) const
{
    Form w;
    for (const auto& [fs, c] : terms_)
        w.add(c * scale, fs);
    return w;
}

Form Form::component(int contact_degree, int horizontal_degree) const
{
    Form w;
    for (const auto& [fs, c] : terms_) {
        int q = 0, p = 0, naive = 0;
        for (const Factor& f : fs) {
            if (f.kind == Factor::Kind::theta)
                ++q;
            else if (f.kind == Factor::Kind::dbase)
                ++p;
            else
                ++naive;
        }
        if (naive == 0 && q == contact_degree && p == horizontal_degree)
            w.add(c, fs);
    }
    return w;
}

int Form::max_theta_order() const
{
    int r = 0;
    for (const auto& [fs, c] : terms_)
        for (const Factor& f : fs)
            if (f.kind != Factor::Kind::dbase)
                r = std::max(r, f.alpha.order());
    return r;
}

bool Form::has_djet() const
{
    for (const auto& [fs, c] : terms_)
        for (const Factor& f : fs)
            if (f.kind == Factor::Kind::djet)
                return true;
    return false;
}

Form wedge(const Form& a, const Form& b)
{
    Form w;
    for (const auto& [fa, ca] : a.terms())
        for (const auto& [fb, cb] : b.terms()) {
            FactorList fs = fa;
            fs.insert(fs.end(), fb.begin(), fb.end());
            w.add(ca * cb, std::move(fs));
        }
    return w;
}

namespace {

// contribution of the factor part of a graded Leibniz rule: for each factor
// f_k with image (a list of factor pairs with coefficients), emit
// (-1)^{k-1} coeff * prefix ^ image ^ suffix
using FactorImage = std::vector<std::pair<Expr, FactorList>>;

void leibniz_over_factors(Form& out, const Expr& coeff, const FactorList& fs,
                          const std::function<FactorImage(const Factor&)>& image)
{
    for (size_t k = 0; k < fs.size(); ++k) {
        FactorImage img = image(fs[k]);
        if (img.empty())
            continue;
        int sign = (k % 2 == 0) ? 1 : -1;
        for (auto& [c, repl] : img) {
            FactorList nf(fs.begin(), fs.begin() + static_cast<long>(k));
            nf.insert(nf.end(), repl.begin(), repl.end());
            nf.insert(nf.end(), fs.begin() + static_cast<long>(k) + 1, fs.end());
            out.add(coeff * c * Expr(sign), std::move(nf));
        }
    }
}

FactorImage d_theta(const Factor& f, int n)
{
    // d(theta^i_alpha) = -theta^i_{alpha+lambda} ^ d^lambda
    FactorImage img;
    for (int lambda = 0; lambda < n; ++lambda)
        img.push_back({Expr(-1), {Factor::theta(f.index, f.alpha.plus(lambda)), Factor::dbase(lambda)}});
    return img;
}

void require_contact_basis(const Form& w, const char* op)
{
    if (w.has_djet())
        throw Error(std::string(op) + " requires the contact/horizontal basis");
}

} // namespace

Form d_H(const Form& w, int n)
{
    require_contact_basis(w, "d_H");
    Form out;
    for (const auto& [fs, e] : w.terms()) {
        for (int lambda = 0; lambda < n; ++lambda) {
            FactorList nf;
            nf.push_back(Factor::dbase(lambda));
            nf.insert(nf.end(), fs.begin(), fs.end());
            out.add(total_derivative(e, lambda), std::move(nf));
        }
        leibniz_over_factors(out, e, fs, [n](const Factor& f) -> FactorImage {
            if (f.kind == Factor::Kind::theta)
                return d_theta(f, n);
            return {};
        });
    }
    return out;
}

Form d_V(const Form& w)
{
    require_contact_basis(w, "d_V");
    Form out;
    for (const auto& [fs, e] : w.terms())
        for (const Atom& a : jet_atoms(e)) {
            FactorList nf;
            nf.push_back(Factor::theta(a.index(), a.alpha()));
            nf.insert(nf.end(), fs.begin(), fs.end());
            out.add(partial(e, a), std::move(nf));
        }
    return out;
}

Form exterior_d(const Form& w, int n) { return d_H(w, n) + d_V(w); }

Form classical_d(const Form& w, int n)
{
    Form out;
    for (const auto& [fs, e] : w.terms()) {
        for (int lambda = 0; lambda < n; ++lambda) {
            FactorList nf;
            nf.push_back(Factor::dbase(lambda));
            nf.insert(nf.end(), fs.begin(), fs.end());
            out.add(partial(e, Atom::base(lambda)), std::move(nf));
        }
        for (const Atom& a : jet_atoms(e)) {
            FactorList nf;
            nf.push_back(Factor::djet(a.index(), a.alpha()));
            nf.insert(nf.end(), fs.begin(), fs.end());
            out.add(partial(e, a), std::move(nf));
        }
        leibniz_over_factors(out, e, fs, [n](const Factor& f) -> FactorImage {
            if (f.kind == Factor::Kind::theta)
                return d_theta(f, n);
            return {};
        });
    }
    return out;
}

namespace {

Form map_factors(const Form& w, const std::function<FactorImage(const Factor&)>& image)
{
    // rewrite every factor through `image`, distributing sums
    Form out;
    for (const auto& [fs, e] : w.terms()) {
        std::vector<std::pair<Expr, FactorList>> parts = {{e, {}}};
        for (const Factor& f : fs) {
            FactorImage img = image(f);
            std::vector<std::pair<Expr, FactorList>> next;
            for (const auto& [pc, pf] : parts)
                for (const auto& [ic, rf] : img) {
                    FactorList nf = pf;
                    nf.insert(nf.end(), rf.begin(), rf.end());
                    next.push_back({pc * ic, std::move(nf)});
                }
            parts = std::move(next);
        }
        for (auto& [c, nf] : parts)
            out.add(std::move(c), std::move(nf));
    }
    return out;
}

} // namespace

Form expand_contact(const Form& w, int n)
{
    return map_factors(w, [n](const Factor& f) -> FactorImage {
        if (f.kind != Factor::Kind::theta)
            return {{Expr(1), {f}}};
        FactorImage img;
        img.push_back({Expr(1), {Factor::djet(f.index, f.alpha)}});
        for (int lambda = 0; lambda < n; ++lambda)
            img.push_back({-Expr::jet(f.index, f.alpha.plus(lambda)), {Factor::dbase(lambda)}});
        return img;
    });
}

Form to_contact_basis(const Form& w, int n)
{
    return map_factors(w, [n](const Factor& f) -> FactorImage {
        if (f.kind != Factor::Kind::djet)
            return {{Expr(1), {f}}};
        FactorImage img;
        img.push_back({Expr(1), {Factor::theta(f.index, f.alpha)}});
        for (int lambda = 0; lambda < n; ++lambda)
            img.push_back({Expr::jet(f.index, f.alpha.plus(lambda)), {Factor::dbase(lambda)}});
        return img;
    });
}

Form horizontalize(const Form& w, int n)
{
    for (const auto& [fs, c] : w.terms())
        if (static_cast<int>(fs.size()) > n)
            throw Error("horizontalization requires form degree <= base dimension");
    return map_factors(w, [n](const Factor& f) -> FactorImage {
        switch (f.kind) {
            case Factor::Kind::theta: return {};
            case Factor::Kind::dbase: return {{Expr(1), {f}}};
            case Factor::Kind::djet: {
                FactorImage img;
                for (int lambda = 0; lambda < n; ++lambda)
                    img.push_back({Expr::jet(f.index, f.alpha.plus(lambda)), {Factor::dbase(lambda)}});
                return img;
            }
        }
        return {};
    });
}

Form contract(const ProlongedField& v, const Form& w)
{
    Form out;
    for (const auto& [fs, e] : w.terms()) {
        for (size_t k = 0; k < fs.size(); ++k) {
            const Factor& f = fs[k];
            Expr value;
            switch (f.kind) {
                case Factor::Kind::theta: value = v.vertical_component(f.index, f.alpha); break;
                case Factor::Kind::djet: value = v.component(f.index, f.alpha); break;
                case Factor::Kind::dbase: value = v.xi(f.index); break;
            }
            if (value.is_zero())
                continue;
            FactorList nf(fs.begin(), fs.begin() + static_cast<long>(k));
            nf.insert(nf.end(), fs.begin() + static_cast<long>(k) + 1, fs.end());
            int sign = (k % 2 == 0) ? 1 : -1;
            out.add(e * value * Expr(sign), std::move(nf));
        }
    }
    return out;
}

Form cartan_lie(const Form& w, const ProlongedField& v, int n)
{
    return contract(v, exterior_d(w, n)) + exterior_d(contract(v, w), n);
}

FactorList omega0(int n)
{
    FactorList fs;
    for (int lambda = 0; lambda < n; ++lambda)
        fs.push_back(Factor::dbase(lambda));
    return fs;
}

Form omega_reduced(int n, int lambda)
{
    FactorList fs;
    for (int mu = 0; mu < n; ++mu)
        if (mu != lambda)
            fs.push_back(Factor::dbase(mu));
    int sign = lambda % 2 == 0 ? 1 : -1;
    return Form::term(Expr(sign), std::move(fs));
}

Form lagrangian_form(const Expr& density, int n)
{
    return Form::term(density, omega0(n));
}

Form source_form_of(const std::vector<Expr>& eta, int n)
{
    Form w;
    for (int i = 0; i < static_cast<int>(eta.size()); ++i) {
        FactorList fs;
        fs.push_back(Factor::theta(i, MultiIndex(n)));
        FactorList o = omega0(n);
        fs.insert(fs.end(), o.begin(), o.end());
        w.add(eta[static_cast<size_t>(i)], std::move(fs));
    }
    return w;
}

} // namespace jv
