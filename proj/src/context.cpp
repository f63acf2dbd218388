#include "jv/context.hpp"

#include <set>

namespace jv {

namespace {

bool valid_identifier(const std::string& s)
{
    if (s.empty() || !isalpha(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!isalnum(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

bool is_reserved_word(const std::string& name)
{
    static const std::set<std::string> words = {"sin", "cos", "exp", "log", "pi"};
    return words.count(name) > 0;
}

JetContext JetContext::make(int n, int m, int r,
                            std::vector<std::string> base,
                            std::vector<std::string> fiber)
{
    if (n < 1 || m < 1 || r < 0)
        throw Error("jet context requires n >= 1, m >= 1, r >= 0");
    if (base.empty()) {
        if (n == 1)
            base = {"t"};
        else
            for (int k = 0; k < n; ++k)
                base.push_back("x" + std::to_string(k + 1));
    }
    if (fiber.empty()) {
        if (m == 1)
            fiber = {"y"};
        else
            for (int k = 0; k < m; ++k)
                fiber.push_back("y" + std::to_string(k + 1));
    }
    if (static_cast<int>(base.size()) != n || static_cast<int>(fiber.size()) != m)
        throw Error("coordinate name count does not match dimensions");
    std::set<std::string> seen;
    for (const auto& lists : {base, fiber})
        for (const auto& name : lists) {
            if (!valid_identifier(name))
                throw Error("invalid coordinate name '" + name + "'");
            if (is_reserved_word(name))
                throw Error("coordinate name '" + name + "' is reserved");
            if (!seen.insert(name).second)
                throw Error("duplicate coordinate name '" + name + "'");
        }
    JetContext ctx;
    ctx.base_dim = n;
    ctx.fiber_dim = m;
    ctx.order = r;
    ctx.base_names = std::move(base);
    ctx.fiber_names = std::move(fiber);
    return ctx;
}

JetContext JetContext::with_order(int r) const
{
    JetContext ctx = *this;
    if (r < 0)
        throw Error("jet order must be non-negative");
    ctx.order = r;
    return ctx;
}

int JetContext::base_index(const std::string& name) const
{
    for (int k = 0; k < base_dim; ++k)
        if (base_names[static_cast<size_t>(k)] == name)
            return k;
    return -1;
}

int JetContext::fiber_index(const std::string& name) const
{
    for (int k = 0; k < fiber_dim; ++k)
        if (fiber_names[static_cast<size_t>(k)] == name)
            return k;
    return -1;
}

std::string JetContext::jet_name(int fiber, const MultiIndex& alpha) const
{
    std::string s = fiber_names[static_cast<size_t>(fiber)];
    if (alpha.order() == 0)
        return s;
    s += "_";
    for (int lambda = 0; lambda < base_dim; ++lambda)
        for (int k = 0; k < alpha[lambda]; ++k)
            s += base_names[static_cast<size_t>(lambda)];
    return s;
}

} // namespace jv
