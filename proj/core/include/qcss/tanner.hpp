#pragma once

#include <cstdint>
#include <vector>

#include "qcss/gf2.hpp"

namespace qcss {

/// Bipartite adjacency view of a parity-check matrix: one variable node
/// per column, one check node per row.
struct TannerGraph {
    std::size_t variables = 0;
    std::size_t checks = 0;
    std::vector<std::vector<std::uint32_t>> var_checks;  // per column: incident rows
    std::vector<std::vector<std::uint32_t>> check_vars;  // per row: incident columns

    TannerGraph() = default;
    explicit TannerGraph(const BinMatrix& h);
};

/// Length-4 cycle: two checks sharing two variables. Canonical form has
/// va < vb and ca < cb.
struct FourCycle {
    std::size_t va, vb, ca, cb;
    bool operator==(const FourCycle&) const = default;
};

/// All canonical 4-cycles, ordered by (ca, cb, va, vb).
std::vector<FourCycle> enumerate_4cycles(const BinMatrix& h);

/// Number of canonical 4-cycles: sum over row pairs of C(overlap, 2).
std::size_t count_4cycles(const BinMatrix& h);

/// Row-operation heuristic that reduces the number of 4-cycles while
/// keeping the nullspace (the code) unchanged. Sweeps row pairs with
/// overlap >= 2 and replaces the heavier row by the pair sum whenever
/// that strictly reduces (cycle count, total weight) lexicographically.
/// Stops at zero cycles, a fixpoint, or max_passes sweeps.
BinMatrix remove_4cycles(const BinMatrix& h, std::size_t max_passes = 50);

struct ColumnWeightResult {
    BinMatrix mat;
    std::vector<std::size_t> achieved;  // final weight per target, same order
};

/// Row-operation heuristic that drives the weight of each target column
/// down to at most max_weight where achievable, preserving the nullspace.
/// For each target the lightest incident row (lowest index on ties) is
/// kept as pivot and added to other incident rows.
ColumnWeightResult reduce_column_weights(const BinMatrix& h,
                                         const std::vector<std::size_t>& targets,
                                         std::size_t max_weight = 2);

}  // namespace qcss
