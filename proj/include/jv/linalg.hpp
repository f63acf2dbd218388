#pragma once

#include "jv/rational.hpp"

#include <optional>
#include <vector>

namespace jv {

/// Dense matrix over the rationals with exact elimination; sized for nerve
/// incidence structures, not for large systems.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c);
    const Rational& at(int r, int c) const;

    int rank() const;
    /// Basis of the right null space.
    std::vector<std::vector<Rational>> nullspace() const;
    /// A solution x of A x = b, if one exists.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;

    RationalMatrix rref(int* rank_out, std::vector<int>* pivots) const;
};

} // namespace jv
