#ifndef STACKMST_GENERATORS_HPP
#define STACKMST_GENERATORS_HPP

#include "stackmst/instance.hpp"
#include "stackmst/solvers.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stackmst {

/// Universe {1..n} and m subsets of it. The reduction requires element n to
/// belong to every set.
struct SetCoverInstance {
    std::size_t universe = 0;
    std::vector<std::vector<std::size_t>> sets; ///< 1-based elements
};

/// Adds a fresh element n+1 to the universe and to every set.
SetCoverInstance normalize_setcover(SetCoverInstance sc);

/// Mapping from blue ids back to (element, set) incidences, both 1-based.
struct ReductionMeta {
    std::string family = "setcover";
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::pair<std::size_t, std::size_t>> incidence; ///< blue id -> (element i, set j)
};

struct ReducedInstance {
    StackInstance instance;
    ReductionMeta meta;
};

/// Vertices u_1..u_n are 0..n-1 and S_1..S_m are n..n+m-1. Red path
/// u_1 - ... - u_n of cost 1, red path u_n - S_1 - ... - S_m of cost 2, and a
/// blue edge u_i S_j per incidence, ordered by set and then by element.
/// Throws std::invalid_argument when u_n is missing from some set.
ReducedInstance gen_setcover(const SetCoverInstance& sc);

/// Sets incident to a price-1 blue edge of the solution's tree (1-based,
/// ascending). An element still uncovered (possible only when n = 1) adds
/// the set its tree edge leads to. Requires an all-blue tree; throws std::invalid_argument
/// ("non-canonical optimal solution") when the tree has a red edge.
std::vector<std::size_t> cover_from_solution(const ReductionMeta& meta, const Solution& sol);

struct SimpleGraph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Vertex cover on a connected graph of maximum degree 3 with |E| >= |V|,
/// posed as set cover: element i is edge i (1-based), element |E|+1 is a
/// dummy in every set, and set j lists the edges at vertex j-1.
ReducedInstance gen_vertexcover(const SimpleGraph& graph);

StackInstance gen_harmonic(std::size_t k);
StackInstance gen_geometric(std::size_t k, std::size_t a);

/// Integrality-gap family: vertices 0..a^{k-1}, blue star from 0, red cliques
/// of cost a^{i-1} on consecutive blocks of a^i vertices (i < k), and one
/// red edge 0-1 of cost a^{k-1}. Optional padding repeats blue edge 0-1
/// until there are exactly `pad_to_b` blue edges.
StackInstance gen_gap(std::size_t k, std::size_t a, std::optional<std::size_t> pad_to_b = std::nullopt);

/// Fractional point x* for gen_gap(k, a, b): y_1 = (a-1)/a and
/// y_j = 1/a^{j-1} on the star edges, 0 on padding. Laid out like LPModel.
std::vector<Rational> gap_point(std::size_t k, std::size_t a, std::size_t blue_count);

/// Random instance: a random red spanning tree (vertex v attaches to a
/// uniform earlier vertex), `red_extra` further red edges with uniform
/// endpoints, and `b` blue edges with distinct uniform endpoints (loops only
/// when n = 1). Costs are drawn uniformly from `cost_pool`.
///
/// Draws use std::mt19937_64 seeded with `seed`, reduced to a range by
/// rejection sampling (format "stackmst-random v1"), so a seed gives the same
/// instance on every platform.
StackInstance gen_random(std::size_t n, std::size_t red_extra, std::size_t b, const std::vector<Rational>& cost_pool,
                         std::uint64_t seed);

/// Random normalized set cover: each of the n-1 ordinary elements joins each
/// set with probability 1/2, and one left out everywhere is added to a
/// uniform set; element n joins every set. Every element is coverable.
SetCoverInstance random_setcover(std::size_t n, std::size_t m, std::uint64_t seed);

std::string serialize_meta(const ReductionMeta& meta);
ReductionMeta parse_meta(std::string_view text);

/// Exponent helper for the geometric and gap families.
std::size_t checked_pow(std::size_t base, std::size_t exponent);

} // namespace stackmst

#endif // STACKMST_GENERATORS_HPP
