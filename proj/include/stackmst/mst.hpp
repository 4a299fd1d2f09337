#ifndef STACKMST_MST_HPP
#define STACKMST_MST_HPP

#include "stackmst/instance.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stackmst {

/// Canonical minimum spanning tree under a price assignment.
struct MSTResult {
    std::vector<EdgeRef> tree_edges; ///< in the order Kruskal accepted them
    Rational total_weight;
    Rational revenue;                ///< sum of prices over blue_ids
    std::vector<std::size_t> blue_ids; ///< ascending
};

/// Kruskal with edges ordered by (weight ascending, blue before red, index
/// ascending). Loops and Unpriced blue edges never enter the tree. The
/// result minimizes (total weight, -#blue edges) lexicographically.
MSTResult min_spanning_tree(const StackInstance& inst, const PriceAssignment& prices);

/// Graphic-matroid rank: vertex count minus the number of connected
/// components of (V, edges).
std::size_t rank(const StackInstance& inst, std::span<const EdgeRef> edges);

/// Number of blue edges in the canonical MST when every blue edge is priced
/// at `price`.
std::size_t uniform_blue_count(const StackInstance& inst, const Rational& price);

/// Red edges whose cost is at most `bound`.
std::vector<EdgeRef> red_edges_up_to(const StackInstance& inst, const Rational& bound);

std::vector<EdgeRef> all_blue_edges(const StackInstance& inst);

} // namespace stackmst

#endif // STACKMST_MST_HPP
