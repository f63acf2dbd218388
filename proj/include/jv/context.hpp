#pragma once

#include "jv/multiindex.hpp"

#include <string>
#include <vector>

namespace jv {

/// Chart data for an r-th order jet space of a fibered manifold: base
/// dimension n, fiber dimension m, jet order r, and the coordinate names
/// used by the parser and printer.
struct JetContext {
    int base_dim = 1;
    int fiber_dim = 1;
    int order = 1;
    std::vector<std::string> base_names;
    std::vector<std::string> fiber_names;

    static JetContext make(int n, int m, int r,
                           std::vector<std::string> base = {},
                           std::vector<std::string> fiber = {});

    /// Same chart with a different declared jet order.
    JetContext with_order(int r) const;

    int base_index(const std::string& name) const;  // -1 when absent
    int fiber_index(const std::string& name) const; // -1 when absent

    /// Printable name of the jet coordinate y^i_alpha, e.g. "y_tt".
    std::string jet_name(int fiber, const MultiIndex& alpha) const;
};

bool is_reserved_word(const std::string& name);

} // namespace jv
