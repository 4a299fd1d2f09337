#ifndef STACKMST_SIMPLEX_HPP
#define STACKMST_SIMPLEX_HPP

#include "stackmst/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stackmst {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

enum class SimplexStatus { optimal, unbounded };

/// Dense-tableau exact simplex for
///
///     maximize c.x  subject to  A x <= b,  x >= 0,  b >= 0.
///
/// The origin is always feasible, so no phase 1 is needed. Rows may be
/// appended after a solve; the next solve restarts from the previous basis
/// with the dual simplex. Both phases use Bland-style smallest-index rules,
/// which rules out cycling.
class RationalSimplex {
public:
    explicit RationalSimplex(std::vector<Rational> objective);

    /// Appends sum(coef * x) <= rhs. Requires rhs >= 0.
    void add_row(const SparseRow& coefficients, const Rational& rhs);

    SimplexStatus solve();

    std::size_t variable_count() const noexcept { return structural_; }
    std::size_t row_count() const noexcept { return rows_.size(); }

    /// Valid after solve() returned optimal.
    const Rational& value() const noexcept { return value_; }
    std::vector<Rational> primal() const;

    std::uint64_t pivots() const noexcept { return pivots_; }

private:
    void pivot(std::size_t row, std::size_t col);
    bool primal_phase();
    void dual_phase();

    std::size_t structural_;
    std::vector<Rational> cost_;              ///< original objective, structural part
    std::vector<std::vector<Rational>> rows_; ///< tableau rows over all columns
    std::vector<Rational> rhs_;
    std::vector<Rational> reduced_;           ///< c_j - c_B B^-1 A_j for every column
    std::vector<std::size_t> basis_;          ///< basic column of each row
    Rational value_;
    std::uint64_t pivots_ = 0;
    bool solved_ = false;
    bool dual_feasible_ = true;
};

} // namespace stackmst

#endif // STACKMST_SIMPLEX_HPP
