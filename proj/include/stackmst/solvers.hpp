#ifndef STACKMST_SOLVERS_HPP
#define STACKMST_SOLVERS_HPP

#include "stackmst/instance.hpp"
#include "stackmst/pricing.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stackmst {

struct Solution {
    PriceAssignment prices;
    BlueForest forest;      ///< blue edges of the canonical MST under prices
    Rational revenue;
    std::string algorithm;  ///< "exact", "oracle" or "bok"
    std::uint64_t work = 0; ///< forests visited, price vectors evaluated, or MSTs computed
};

struct SolverOptions {
    std::uint64_t forest_budget = std::uint64_t{1} << 24;
    std::uint64_t oracle_budget = 10'000'000;
    unsigned threads = 1;
};

/// Exact optimum by enumerating acyclic blue subsets and pricing each one
/// with the min-max formula. Subtrees whose revenue upper bound falls below
/// the Best-out-of-k revenue are skipped.
///
/// Among optimal forests the result has the most edges, then the
/// lexicographically smallest id list. The answer does not depend on
/// `threads`. Throws BudgetExceeded when more than `forest_budget` forests
/// would be visited.
Solution solve_exact(const StackInstance& inst, const SolverOptions& options = {});

/// Exhaustive search over {c_1, ..., c_k, Unpriced}^B, each vector evaluated
/// with min_spanning_tree. Returns the first maximizer in odometer order.
/// Throws BudgetExceeded when (k+1)^|B| exceeds `oracle_budget`.
Solution solve_oracle(const StackInstance& inst, const SolverOptions& options = {});

struct UniformPriceRow {
    Rational price;         ///< c_i
    std::size_t blue_count; ///< A_i, blue edges in the MST at uniform price c_i
    Rational revenue;       ///< A_i * c_i
};

struct BestOutOfK {
    Solution solution;
    std::vector<UniformPriceRow> table; ///< one row per red cost, ascending
};

/// Prices every blue edge at each red cost c_i in turn and keeps the best
/// MST revenue (smallest i on ties).
BestOutOfK best_out_of_k(const StackInstance& inst);

/// Upper-rounded double bounds on the Best-out-of-k ratio.
struct RatioBounds {
    std::size_t k = 0;
    std::optional<double> log_b; ///< 1 + ln b, absent when b = 0
    std::optional<double> log_w; ///< 1 + ln W, absent when c_1 = 0 or k = 0
    double min() const;
};

RatioBounds ratio_bounds(const StackInstance& inst);

/// 1 + ln(x) for x >= 1, rounded so the result is never below the true
/// value.
double one_plus_log_upper(const Rational& x);

struct RatioReport {
    Rational opt;
    Rational bok;
    std::optional<Rational> ratio; ///< opt / bok; 1 when both vanish; absent when only bok is 0
    RatioBounds bounds;
    bool within_bound = false;     ///< ratio <= bounds.min(), compared exactly
};

RatioReport ratio_report(const StackInstance& inst, const SolverOptions& options = {});

} // namespace stackmst

#endif // STACKMST_SOLVERS_HPP
