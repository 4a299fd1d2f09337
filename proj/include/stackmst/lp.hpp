#ifndef STACKMST_LP_HPP
#define STACKMST_LP_HPP

#include "stackmst/instance.hpp"
#include "stackmst/simplex.hpp"
#include "stackmst/solvers.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stackmst {

enum class CutKind { partition, path, chain, bound };

std::string to_string(CutKind kind);

/// One linear inequality  sum(coef * x) <= rhs  over the x_{j,e} variables.
struct Cut {
    CutKind kind = CutKind::bound;
    std::size_t level = 0;                      ///< j, 1-based (0 for bound rows)
    std::optional<std::size_t> blue;            ///< f for path cuts, e for chain/bound rows
    std::vector<std::vector<std::size_t>> parts; ///< partition cuts: vertex sets of the chosen components
    std::vector<std::size_t> path_blue;         ///< path cuts: blue ids on the path
    SparseRow row;                              ///< sorted by variable, no zeros
    Rational rhs;

    /// Violation sum(coef * x) - rhs (positive means violated).
    Rational violation(std::span<const Rational> x) const;
};

/// Variables x_{j,e} for j = 1..k and every blue edge e, stored at index
/// (j - 1) * |B| + e. Objective coefficient of x_{j,e} is c_j - c_{j-1}.
class LPModel {
public:
    LPModel() = default;
    LPModel(std::size_t levels, std::size_t blue_count, std::vector<Rational> step);

    std::size_t levels() const noexcept { return levels_; }
    std::size_t blue_count() const noexcept { return blue_count_; }
    std::size_t variable_count() const noexcept { return levels_ * blue_count_; }
    std::size_t variable(std::size_t level, std::size_t blue) const { return (level - 1) * blue_count_ + blue; }

    const std::vector<Rational>& step() const noexcept { return step_; }
    std::vector<Rational> objective() const;
    Rational objective_value(std::span<const Rational> x) const;

    const std::vector<Cut>& cuts() const noexcept { return cuts_; }
    std::size_t count(CutKind kind) const;

    /// Adds the cut unless an identical normalized row is already present.
    bool add(Cut cut);

    std::string variable_name(std::size_t index) const;

private:
    std::size_t levels_ = 0;
    std::size_t blue_count_ = 0;
    std::vector<Rational> step_;
    std::vector<Cut> cuts_;
    std::vector<std::string> keys_; ///< sorted normalized row keys
};

/// Bounds 0 <= x <= 1 (upper bound 0 for blue loops) and the chains
/// x_{1,e} >= x_{2,e} >= ... >= x_{k,e}. Throws std::invalid_argument when a
/// red edge has cost 0.
LPModel build_base_lp(const StackInstance& inst);

struct SeparationOptions {
    std::size_t max_partition_vertices = 20;
};

/// Most violated forest-partition inequality at level j, by exhaustive
/// search over subsets of the components of (V, R_{j-1}) touched by blue
/// edges with x_{j,e} > 0. Throws std::length_error above the vertex limit.
std::optional<Cut> separate_partition(const StackInstance& inst, const LPModel& model, std::span<const Rational> x,
                                      std::size_t level, const SeparationOptions& options = {});

/// Path inequality for level j >= 2 and blue edge f = ab: shortest ab-path
/// in (B + R_{j-1}) - f with red weight 0 and blue weight 1 - x_{1,e};
/// violated when its length is below x_{j,f}.
std::optional<Cut> separate_path(const StackInstance& inst, const LPModel& model, std::span<const Rational> x,
                                 std::size_t level, std::size_t f);

/// Every cut both separators return at x, in the fixed round order: all
/// partition levels, then path cuts by level and blue id.
std::vector<Cut> separate_all(const StackInstance& inst, const LPModel& model, std::span<const Rational> x,
                              const SeparationOptions& options = {});

struct LPOptions {
    std::size_t max_rounds = 10'000;
    SeparationOptions separation;
};

struct LPResult {
    Rational value;
    std::vector<Rational> point;
    std::size_t cuts_added = 0; ///< partition and path cuts
    std::size_t rounds = 0;     ///< simplex solves
    std::uint64_t pivots = 0;
    LPModel model;
};

/// Cutting-plane loop: solve, separate, add every violated cut, repeat until
/// both separators certify the point. Throws BudgetExceeded past max_rounds.
LPResult solve_lp(const StackInstance& inst, const LPOptions& options = {});

/// 0/1 point with x_{j,e} = 1 iff e is in the solution's forest and its price
/// is at least c_j.
std::vector<Rational> embed_solution(const StackInstance& inst, const Solution& sol);

struct GapReport {
    Rational lp;
    Rational ip;
    std::optional<Rational> ratio; ///< lp / ip; 1 when both vanish
    RatioBounds bounds;
    bool within_bounds = false;    ///< 1 <= ratio <= min bound
    LPResult lp_detail;
};

GapReport gap_report(const StackInstance& inst, const SolverOptions& solver = {}, const LPOptions& options = {});

/// Human-readable listing of the model (format "stackmst-lp v1").
std::string dump_lp(const LPModel& model);

} // namespace stackmst

#endif // STACKMST_LP_HPP
