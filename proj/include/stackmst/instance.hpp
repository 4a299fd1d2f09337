#ifndef STACKMST_INSTANCE_HPP
#define STACKMST_INSTANCE_HPP

#include "stackmst/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stackmst {

struct RedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational cost;
};

struct BlueEdge {
    std::size_t u = 0;
    std::size_t v = 0;
};

enum class Color { blue, red };

/// Reference to an edge of an instance: a color plus the index within that
/// color's list. For blue edges the index is the blue id.
struct EdgeRef {
    Color color = Color::red;
    std::size_t index = 0;

    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// Bicolored multigraph: red edges carry fixed nonnegative costs, blue edges
/// are priced by the leader. Loops and parallel edges are allowed.
///
/// The constructor only stores its arguments; call validate() (or build
/// through parse_instance) to check the structural invariants.
class StackInstance {
public:
    StackInstance() = default;
    StackInstance(std::size_t vertex_count, std::vector<RedEdge> red, std::vector<BlueEdge> blue);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    const std::vector<RedEdge>& red_edges() const noexcept { return red_; }
    const std::vector<BlueEdge>& blue_edges() const noexcept { return blue_; }
    std::size_t blue_count() const noexcept { return blue_.size(); }
    std::size_t red_count() const noexcept { return red_.size(); }

    const RedEdge& red(std::size_t index) const { return red_.at(index); }
    const BlueEdge& blue(std::size_t id) const { return blue_.at(id); }

    /// Endpoints of any edge.
    std::pair<std::size_t, std::size_t> endpoints(const EdgeRef& edge) const;

    friend bool operator==(const StackInstance&, const StackInstance&);

private:
    std::size_t vertex_count_ = 1;
    std::vector<RedEdge> red_;
    std::vector<BlueEdge> blue_;
};

/// Price of every blue edge; std::nullopt means Unpriced (price infinity,
/// the edge behaves as if deleted).
class PriceAssignment {
public:
    PriceAssignment() = default;
    explicit PriceAssignment(std::size_t blue_count) : prices_(blue_count) {}

    /// Every blue edge priced at the same value.
    static PriceAssignment uniform(std::size_t blue_count, const Rational& price);

    std::size_t size() const noexcept { return prices_.size(); }
    const std::optional<Rational>& operator[](std::size_t id) const { return prices_.at(id); }
    bool priced(std::size_t id) const { return prices_.at(id).has_value(); }

    void set(std::size_t id, Rational price) { prices_.at(id) = std::move(price); }
    void unprice(std::size_t id) { prices_.at(id).reset(); }

    friend bool operator==(const PriceAssignment&, const PriceAssignment&) = default;

private:
    std::vector<std::optional<Rational>> prices_;
};

/// Distinct red costs in increasing order.
struct CostLadder {
    std::vector<Rational> costs;

    std::size_t k() const noexcept { return costs.size(); }
    /// c_k / c_1; empty when c_1 = 0.
    std::optional<Rational> max_ratio() const;
    /// Position of a cost in the ladder, or std::nullopt if it is not a red cost.
    std::optional<std::size_t> index_of(const Rational& cost) const;
};

struct ValidationReport {
    std::vector<std::string> problems;

    bool ok() const noexcept { return problems.empty(); }
    std::string message() const;
};

ValidationReport validate(const StackInstance& inst);

/// Throws ValidationError carrying the report when validate() fails.
void require_valid(const StackInstance& inst);

/// Parses the v1 text format. Syntax problems, out-of-range vertices and
/// negative costs raise ParseError with the offending line; an instance whose
/// red edges do not span raises ValidationError.
StackInstance parse_instance(std::string_view text);
StackInstance parse_instance(std::istream& in);

/// Canonical v1 text: red edges, then blue edges, each in input order.
std::string serialize_instance(const StackInstance& inst);

/// Price file: lines "price <blue_id> <rational|inf>". Ids not listed are
/// Unpriced; listing an id twice is an error.
PriceAssignment parse_prices(std::string_view text, std::size_t blue_count);
std::string serialize_prices(const PriceAssignment& prices);

/// Merges the endpoints of every cost-0 red edge and drops those edges.
/// Surviving vertices are renumbered in order of their smallest original
/// vertex; blue ids are unchanged.
StackInstance contract_zero_red(const StackInstance& inst);

CostLadder cost_ladder(const StackInstance& inst);

} // namespace stackmst

#endif // STACKMST_INSTANCE_HPP
