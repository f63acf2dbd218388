#include "jv/multiindex.hpp"

namespace jv {

MultiIndex::MultiIndex(std::initializer_list<int> e) : entries_(e)
{
    for (int v : entries_)
        if (v < 0)
            throw Error("multi-index entries must be non-negative");
}

MultiIndex MultiIndex::unit(int n, int lambda)
{
    MultiIndex a(n);
    a.entries_[static_cast<size_t>(lambda)] = 1;
    return a;
}

int MultiIndex::order() const
{
    int s = 0;
    for (int v : entries_)
        s += v;
    return s;
}

MultiIndex MultiIndex::plus(int lambda) const
{
    MultiIndex a = *this;
    a.entries_[static_cast<size_t>(lambda)] += 1;
    return a;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const
{
    MultiIndex a = *this;
    for (size_t k = 0; k < entries_.size(); ++k)
        a.entries_[k] += other.entries_[k];
    return a;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const
{
    MultiIndex a = *this;
    for (size_t k = 0; k < entries_.size(); ++k) {
        a.entries_[k] -= other.entries_[k];
        if (a.entries_[k] < 0)
            return std::nullopt;
    }
    return a;
}

bool MultiIndex::contains(const MultiIndex& other) const
{
    for (size_t k = 0; k < entries_.size(); ++k)
        if (entries_[k] < other.entries_[k])
            return false;
    return true;
}

Rational MultiIndex::choose(const MultiIndex& upper, const MultiIndex& lower)
{
    Integer num = 1;
    for (size_t k = 0; k < upper.entries_.size(); ++k) {
        int a = upper.entries_[k], b = lower.entries_[k];
        if (b < 0 || b > a)
            return Rational(0);
        Integer c = 1;
        for (int j = 0; j < b; ++j) {
            c *= a - j;
            c /= j + 1;
        }
        num *= c;
    }
    return Rational(num);
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const
{
    if (auto c = order() <=> other.order(); c != 0)
        return c;
    return entries_ <=> other.entries_;
}

namespace {

void compositions(int n, int pos, int left, std::vector<int>& e, std::vector<MultiIndex>& out)
{
    if (pos == n - 1) {
        e[static_cast<size_t>(pos)] = left;
        MultiIndex a(n);
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < e[static_cast<size_t>(j)]; ++t)
                a = a.plus(j);
        out.push_back(a);
        return;
    }
    for (int v = 0; v <= left; ++v) {
        e[static_cast<size_t>(pos)] = v;
        compositions(n, pos + 1, left - v, e, out);
    }
}

} // namespace

std::vector<MultiIndex> multi_indices_of_order(int n, int k)
{
    std::vector<MultiIndex> out;
    if (n <= 0)
        return out;
    std::vector<int> e(static_cast<size_t>(n), 0);
    compositions(n, 0, k, e, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order)
{
    std::vector<MultiIndex> out;
    for (int k = 0; k <= max_order; ++k) {
        auto level = multi_indices_of_order(n, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace jv
