#ifndef STACKMST_PRICING_HPP
#define STACKMST_PRICING_HPP

#include "stackmst/instance.hpp"
#include "stackmst/mst.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stackmst {

/// Acyclic set of blue edge ids, kept sorted and duplicate-free.
struct BlueForest {
    std::vector<std::size_t> ids;

    BlueForest() = default;
    explicit BlueForest(std::vector<std::size_t> blue_ids);

    bool contains(std::size_t id) const;
    std::size_t size() const noexcept { return ids.size(); }
    friend bool operator==(const BlueForest&, const BlueForest&) = default;
};

/// True when the blue edges are acyclic in (V, ids); a loop counts as a cycle.
bool is_acyclic(const StackInstance& inst, std::span<const std::size_t> blue_ids);

/// Largest price the blue edge `id` can carry while every MST keeps all of F:
/// the minimum, over cycles of (V, R + F) through the edge, of the largest red
/// cost on the cycle.
///
/// Computed by a threshold sweep over the red costs: F - id is merged first,
/// then red edges in cost order until the endpoints of `id` meet. An
/// all-blue connection (impossible for an acyclic F) yields 0.
///
/// Throws std::invalid_argument if `id` is not in F or F is not acyclic.
Rational minmax_price(const StackInstance& inst, const BlueForest& forest, std::size_t id);

/// Min-max prices on F and Unpriced elsewhere. The canonical MST under the
/// result uses exactly the blue edges of F.
/// Throws std::invalid_argument when F contains a loop or a cycle.
PriceAssignment price_forest(const StackInstance& inst, const BlueForest& forest);

struct Violation {
    std::string message;
};

/// Necessary optimality condition: every blue edge of the canonical MST is
/// priced at some red cost.
std::optional<Violation> check_price_support(const StackInstance& inst, const PriceAssignment& prices);

/// Necessary optimality condition on the canonical MST T: for every red e in
/// T and priced blue f outside T whose fundamental cycle passes through e,
/// some other blue f' on that cycle has c(e) < p(f') <= p(f).
std::optional<Violation> check_obstruction(const StackInstance& inst, const PriceAssignment& prices);

/// Edges on the unique path between u and v in the spanning tree.
std::vector<EdgeRef> tree_path(const StackInstance& inst, std::span<const EdgeRef> tree, std::size_t u,
                               std::size_t v);

} // namespace stackmst

#endif // STACKMST_PRICING_HPP
