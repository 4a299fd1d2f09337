#include "stackmst/pricing.hpp"

#include "stackmst/union_find.hpp"

#include <algorithm>
#include <stdexcept>

namespace stackmst {

BlueForest::BlueForest(std::vector<std::size_t> blue_ids) : ids(std::move(blue_ids))
{
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

bool BlueForest::contains(std::size_t id) const
{
    return std::binary_search(ids.begin(), ids.end(), id);
}

bool is_acyclic(const StackInstance& inst, std::span<const std::size_t> blue_ids)
{
    UnionFind uf(inst.vertex_count());
    for (const std::size_t id : blue_ids) {
        const auto& e = inst.blue(id);
        if (!uf.unite(e.u, e.v))
            return false;
    }
    return true;
}

namespace {

void require_forest(const StackInstance& inst, const BlueForest& forest)
{
    for (const std::size_t id : forest.ids)
        if (id >= inst.blue_count())
            throw std::invalid_argument("blue id " + std::to_string(id) + " out of range");
    if (!is_acyclic(inst, forest.ids))
        throw std::invalid_argument("blue edge set contains a loop or a cycle");
}

std::vector<std::size_t> red_by_cost(const StackInstance& inst)
{
    std::vector<std::size_t> order(inst.red_count());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return inst.red(a).cost < inst.red(b).cost; });
    return order;
}

Rational sweep_price(const StackInstance& inst, const BlueForest& forest, std::size_t id,
                     const std::vector<std::size_t>& red_order)
{
    const auto& target = inst.blue(id);
    UnionFind uf(inst.vertex_count());
    for (const std::size_t other : forest.ids)
        if (other != id)
            uf.unite(inst.blue(other).u, inst.blue(other).v);
    if (uf.same(target.u, target.v))
        return Rational(0);

    // Merge whole cost classes at once; the answer is the cost of the class
    // that first joins the endpoints.
    std::size_t i = 0;
    while (i < red_order.size()) {
        const Rational& level = inst.red(red_order[i]).cost;
        for (; i < red_order.size() && inst.red(red_order[i]).cost == level; ++i)
            uf.unite(inst.red(red_order[i]).u, inst.red(red_order[i]).v);
        if (uf.same(target.u, target.v))
            return level;
    }
    throw std::logic_error("blue edge endpoints not joined by red edges; instance is not valid");
}

} // namespace

Rational minmax_price(const StackInstance& inst, const BlueForest& forest, std::size_t id)
{
    if (!forest.contains(id))
        throw std::invalid_argument("blue id " + std::to_string(id) + " is not in the forest");
    require_forest(inst, forest);
    return sweep_price(inst, forest, id, red_by_cost(inst));
}

PriceAssignment price_forest(const StackInstance& inst, const BlueForest& forest)
{
    require_forest(inst, forest);
    const auto order = red_by_cost(inst);
    PriceAssignment prices(inst.blue_count());
    for (const std::size_t id : forest.ids)
        prices.set(id, sweep_price(inst, forest, id, order));
    return prices;
}

std::optional<Violation> check_price_support(const StackInstance& inst, const PriceAssignment& prices)
{
    const auto ladder = cost_ladder(inst);
    const auto tree = min_spanning_tree(inst, prices);
    for (const std::size_t id : tree.blue_ids) {
        if (!ladder.index_of(*prices[id]))
            return Violation{"blue edge " + std::to_string(id) + " is in the MST at price " + to_string(*prices[id]) +
                             ", which is not a red cost"};
    }
    return std::nullopt;
}

std::vector<EdgeRef> tree_path(const StackInstance& inst, std::span<const EdgeRef> tree, std::size_t u,
                               std::size_t v)
{
    const std::size_t n = inst.vertex_count();
    std::vector<std::vector<std::pair<std::size_t, EdgeRef>>> adj(n);
    for (const auto& e : tree) {
        const auto [a, b] = inst.endpoints(e);
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(n, none);
    std::vector<EdgeRef> via(n);
    std::vector<std::size_t> stack{u};
    parent[u] = u;
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (x == v)
            break;
        for (const auto& [y, e] : adj[x]) {
            if (parent[y] != none)
                continue;
            parent[y] = x;
            via[y] = e;
            stack.push_back(y);
        }
    }
    if (parent[v] == none)
        throw std::invalid_argument("vertices are not connected in the tree");

    std::vector<EdgeRef> path;
    for (std::size_t x = v; x != u; x = parent[x])
        path.push_back(via[x]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::optional<Violation> check_obstruction(const StackInstance& inst, const PriceAssignment& prices)
{
    const auto tree = min_spanning_tree(inst, prices);
    std::vector<bool> in_tree(inst.blue_count(), false);
    for (const std::size_t id : tree.blue_ids)
        in_tree[id] = true;

    for (std::size_t f = 0; f < inst.blue_count(); ++f) {
        const auto& edge = inst.blue(f);
        if (in_tree[f] || !prices[f] || edge.u == edge.v)
            continue;
        const Rational& pf = *prices[f];
        const auto cycle = tree_path(inst, tree.tree_edges, edge.u, edge.v);
        for (const auto& e : cycle) {
            if (e.color != Color::red)
                continue;
            const Rational& ce = inst.red(e.index).cost;
            const bool witnessed = std::any_of(cycle.begin(), cycle.end(), [&](const EdgeRef& g) {
                return g.color == Color::blue && *prices[g.index] > ce && *prices[g.index] <= pf;
            });
            if (!witnessed)
                return Violation{"red tree edge " + std::to_string(e.index) + " on the cycle of blue edge " +
                                 std::to_string(f) + " has no blue witness priced in (" + to_string(ce) + ", " +
                                 to_string(pf) + "]"};
        }
    }
    return std::nullopt;
}

} // namespace stackmst
