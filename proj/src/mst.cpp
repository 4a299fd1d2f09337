#include "stackmst/mst.hpp"

#include "stackmst/union_find.hpp"

#include <algorithm>

namespace stackmst {

namespace {

struct Candidate {
    const Rational* weight;
    EdgeRef edge;
};

} // namespace

MSTResult min_spanning_tree(const StackInstance& inst, const PriceAssignment& prices)
{
    std::vector<Candidate> candidates;
    candidates.reserve(inst.red_count() + inst.blue_count());
    for (std::size_t id = 0; id < inst.blue_count(); ++id) {
        const auto& e = inst.blue(id);
        if (e.u != e.v && prices[id])
            candidates.push_back({&*prices[id], {Color::blue, id}});
    }
    for (std::size_t i = 0; i < inst.red_count(); ++i) {
        const auto& e = inst.red(i);
        if (e.u != e.v)
            candidates.push_back({&e.cost, {Color::red, i}});
    }

    // Color::blue < Color::red, so EdgeRef ordering already puts blue first.
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        const int c = cmp(*a.weight, *b.weight);
        if (c != 0)
            return c < 0;
        return a.edge < b.edge;
    });

    MSTResult result;
    UnionFind uf(inst.vertex_count());
    for (const auto& cand : candidates) {
        const auto [u, v] = inst.endpoints(cand.edge);
        if (!uf.unite(u, v))
            continue;
        result.tree_edges.push_back(cand.edge);
        result.total_weight += *cand.weight;
        if (cand.edge.color == Color::blue) {
            result.revenue += *cand.weight;
            result.blue_ids.push_back(cand.edge.index);
        }
        if (uf.components() == 1)
            break;
    }
    std::sort(result.blue_ids.begin(), result.blue_ids.end());
    return result;
}

std::size_t rank(const StackInstance& inst, std::span<const EdgeRef> edges)
{
    UnionFind uf(inst.vertex_count());
    for (const auto& e : edges) {
        const auto [u, v] = inst.endpoints(e);
        uf.unite(u, v);
    }
    return inst.vertex_count() - uf.components();
}

std::size_t uniform_blue_count(const StackInstance& inst, const Rational& price)
{
    return min_spanning_tree(inst, PriceAssignment::uniform(inst.blue_count(), price)).blue_ids.size();
}

std::vector<EdgeRef> red_edges_up_to(const StackInstance& inst, const Rational& bound)
{
    std::vector<EdgeRef> out;
    for (std::size_t i = 0; i < inst.red_count(); ++i)
        if (inst.red(i).cost <= bound)
            out.push_back({Color::red, i});
    return out;
}

std::vector<EdgeRef> all_blue_edges(const StackInstance& inst)
{
    std::vector<EdgeRef> out;
    for (std::size_t id = 0; id < inst.blue_count(); ++id)
        out.push_back({Color::blue, id});
    return out;
}

} // namespace stackmst
