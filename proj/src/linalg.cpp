#include "jv/linalg.hpp"

namespace jv {

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols))
{
}

Rational& RationalMatrix::at(int r, int c)
{
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
}

const Rational& RationalMatrix::at(int r, int c) const
{
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
}

RationalMatrix RationalMatrix::rref(int* rank_out, std::vector<int>* pivots) const
{
    RationalMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int piv = -1;
        for (int row = rank; row < rows_; ++row)
            if (m.at(row, col) != 0) {
                piv = row;
                break;
            }
        if (piv < 0)
            continue;
        for (int c = 0; c < cols_; ++c)
            std::swap(m.at(rank, c), m.at(piv, c));
        Rational d = m.at(rank, col);
        for (int c = 0; c < cols_; ++c)
            m.at(rank, c) /= d;
        for (int row = 0; row < rows_; ++row) {
            if (row == rank || m.at(row, col) == 0)
                continue;
            Rational f = m.at(row, col);
            for (int c = 0; c < cols_; ++c)
                m.at(row, c) -= f * m.at(rank, c);
        }
        if (pivots)
            pivots->push_back(col);
        ++rank;
    }
    if (rank_out)
        *rank_out = rank;
    return m;
}

int RationalMatrix::rank() const
{
    int r = 0;
    rref(&r, nullptr);
    return r;
}

std::vector<std::vector<Rational>> RationalMatrix::nullspace() const
{
    int rank = 0;
    std::vector<int> pivots;
    RationalMatrix m = rref(&rank, &pivots);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : pivots)
        is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[static_cast<size_t>(free)])
            continue;
        std::vector<Rational> v(static_cast<size_t>(cols_));
        v[static_cast<size_t>(free)] = 1;
        for (int r = 0; r < rank; ++r)
            v[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> RationalMatrix::solve(const std::vector<Rational>& b) const
{
    if (static_cast<int>(b.size()) != rows_)
        throw Error("right-hand side size mismatch");
    RationalMatrix aug(rows_, cols_ + 1);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c)
            aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = b[static_cast<size_t>(r)];
    }
    int rank = 0;
    std::vector<int> pivots;
    RationalMatrix m = aug.rref(&rank, &pivots);
    for (int r = 0; r < rank; ++r)
        if (pivots[static_cast<size_t>(r)] == cols_)
            return std::nullopt; // inconsistent
    std::vector<Rational> x(static_cast<size_t>(cols_));
    for (int r = 0; r < rank; ++r)
        x[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = m.at(r, cols_);
    return x;
}

} // namespace jv
