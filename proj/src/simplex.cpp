#include "stackmst/simplex.hpp"

#include <optional>
#include <stdexcept>

namespace stackmst {

RationalSimplex::RationalSimplex(std::vector<Rational> objective)
    : structural_(objective.size()), cost_(std::move(objective)), reduced_(cost_)
{
}

void RationalSimplex::add_row(const SparseRow& coefficients, const Rational& rhs)
{
    if (rhs < 0)
        throw std::invalid_argument("simplex rows need a nonnegative right-hand side");
    if (solved_ && !dual_feasible_)
        throw std::logic_error("cannot append rows after an unbounded solve");

    const std::size_t slack = structural_ + rows_.size();
    for (auto& row : rows_)
        row.emplace_back(0);
    reduced_.emplace_back(0);

    std::vector<Rational> row(slack + 1);
    for (const auto& [col, coef] : coefficients) {
        if (col >= structural_)
            throw std::out_of_range("simplex row references an unknown variable");
        row[col] += coef;
    }
    row[slack] = 1;
    Rational b = rhs;

    // Express the row in terms of the current nonbasic columns.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t col = basis_[i];
        if (sgn(row[col]) == 0)
            continue;
        const Rational factor = row[col];
        const auto& source = rows_[i];
        for (std::size_t j = 0; j < source.size(); ++j)
            if (sgn(source[j]) != 0)
                row[j] -= factor * source[j];
        b -= factor * rhs_[i];
    }

    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(b));
    basis_.push_back(slack);
}

void RationalSimplex::pivot(std::size_t r, std::size_t c)
{
    auto& prow = rows_[r];
    const Rational inv = 1 / prow[c];
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < prow.size(); ++j) {
        if (sgn(prow[j]) == 0)
            continue;
        prow[j] *= inv;
        support.push_back(j);
    }
    rhs_[r] *= inv;

    auto eliminate = [&](std::vector<Rational>& target, Rational& target_rhs) {
        if (sgn(target[c]) == 0)
            return;
        const Rational factor = target[c];
        for (const std::size_t j : support)
            target[j] -= factor * prow[j];
        target_rhs -= factor * rhs_[r];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (i != r)
            eliminate(rows_[i], rhs_[i]);

    // z = value + sum r_j x_j, so the objective row moves the other way.
    if (sgn(reduced_[c]) != 0) {
        const Rational factor = reduced_[c];
        for (const std::size_t j : support)
            reduced_[j] -= factor * prow[j];
        value_ += factor * rhs_[r];
    }

    basis_[r] = c;
    ++pivots_;
}

bool RationalSimplex::primal_phase()
{
    for (;;) {
        std::optional<std::size_t> entering;
        for (std::size_t j = 0; j < reduced_.size(); ++j) {
            if (sgn(reduced_[j]) > 0) {
                entering = j;
                break;
            }
        }
        if (!entering)
            return true;

        std::optional<std::size_t> leaving;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& a = rows_[i][*entering];
            if (sgn(a) <= 0)
                continue;
            Rational ratio = rhs_[i] / a;
            if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                leaving = i;
                best_ratio = std::move(ratio);
            }
        }
        if (!leaving)
            return false;
        pivot(*leaving, *entering);
    }
}

void RationalSimplex::dual_phase()
{
    for (;;) {
        std::optional<std::size_t> leaving;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (sgn(rhs_[i]) < 0 && (!leaving || basis_[i] < basis_[*leaving]))
                leaving = i;
        if (!leaving)
            return;

        const auto& row = rows_[*leaving];
        std::optional<std::size_t> entering;
        Rational best_ratio;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (sgn(row[j]) >= 0)
                continue;
            Rational ratio = reduced_[j] / row[j];
            if (!entering || ratio < best_ratio) {
                entering = j;
                best_ratio = std::move(ratio);
            }
        }
        if (!entering)
            throw std::logic_error("dual simplex found the primal infeasible; the origin should be feasible");
        pivot(*leaving, *entering);
    }
}

SimplexStatus RationalSimplex::solve()
{
    if (solved_)
        dual_phase();
    solved_ = true;
    dual_feasible_ = primal_phase();
    return dual_feasible_ ? SimplexStatus::optimal : SimplexStatus::unbounded;
}

std::vector<Rational> RationalSimplex::primal() const
{
    std::vector<Rational> x(structural_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (basis_[i] < structural_)
            x[basis_[i]] = rhs_[i];
    return x;
}

} // namespace stackmst
