#include "stackmst/solvers.hpp"

#include "stackmst/errors.hpp"
#include "stackmst/mst.hpp"
#include "stackmst/union_find.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace stackmst {

namespace {

/// (revenue desc, size desc, ids lexicographically asc)
bool better_forest(const Rational& rev_a, const std::vector<std::size_t>& a, const Rational& rev_b,
                   const std::vector<std::size_t>& b)
{
    if (rev_a != rev_b)
        return rev_a > rev_b;
    if (a.size() != b.size())
        return a.size() > b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Per-level data shared by every search worker. Level i (0-based) holds the
/// components of (V, R_{i-1}) where R_{-1} = {} and R_j are the red edges of
/// cost at most c_{j+1}; a forest edge contributes c_{i+1} - c_i to the
/// revenue for each level at which it is a bridge of the contracted forest.
struct LevelData {
    std::vector<Rational> step;                  ///< c_i - c_{i-1}
    std::vector<std::vector<std::size_t>> label; ///< component label per vertex
    std::vector<std::size_t> label_count;
};

LevelData build_levels(const StackInstance& inst, const CostLadder& ladder)
{
    LevelData data;
    const std::size_t n = inst.vertex_count();
    UnionFind uf(n);
    Rational previous(0);
    for (std::size_t i = 0; i < ladder.k(); ++i) {
        if (i > 0)
            for (const auto& e : inst.red_edges())
                if (e.cost == ladder.costs[i - 1])
                    uf.unite(e.u, e.v);
        data.step.push_back(ladder.costs[i] - previous);
        previous = ladder.costs[i];

        constexpr std::size_t unset = static_cast<std::size_t>(-1);
        std::vector<std::size_t> root_label(n, unset);
        std::vector<std::size_t> label(n);
        std::size_t next = 0;
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t r = uf.find(v);
            if (root_label[r] == unset)
                root_label[r] = next++;
            label[v] = root_label[r];
        }
        data.label.push_back(std::move(label));
        data.label_count.push_back(next);
    }
    return data;
}

class ForestSearch {
public:
    ForestSearch(const StackInstance& inst, const LevelData& levels, const Rational& floor,
                 std::atomic<std::uint64_t>& visited, std::uint64_t budget)
        : inst_(inst), levels_(levels), floor_(floor), visited_(visited), budget_(budget),
          uf_(inst.vertex_count())
    {
    }

    /// Searches every forest whose smallest id is `first`.
    void run_subtree(std::size_t first)
    {
        const auto& e = inst_.blue(first);
        if (!uf_.unite(e.u, e.v))
            return;
        current_.push_back(first);
        visit(first);
        current_.pop_back();
        uf_.rollback();
    }

    /// The empty forest.
    void run_root() { evaluate(); count(); }

    bool found() const noexcept { return found_; }
    const Rational& best_revenue() const noexcept { return best_revenue_; }
    const std::vector<std::size_t>& best_ids() const noexcept { return best_ids_; }

private:
    void count()
    {
        if (visited_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_)
            throw BudgetExceeded("forest enumeration budget of " + std::to_string(budget_) + " exceeded");
    }

    void visit(std::size_t last)
    {
        count();
        evaluate();
        if (upper_bound(last) < incumbent())
            return;
        for (std::size_t id = last + 1; id < inst_.blue_count(); ++id) {
            const auto& e = inst_.blue(id);
            if (!uf_.unite(e.u, e.v))
                continue;
            current_.push_back(id);
            visit(id);
            current_.pop_back();
            uf_.rollback();
        }
    }

    const Rational& incumbent() const { return found_ && best_revenue_ > floor_ ? best_revenue_ : floor_; }

    void evaluate()
    {
        const Rational revenue = forest_revenue();
        if (!found_ || better_forest(revenue, current_, best_revenue_, best_ids_)) {
            found_ = true;
            best_revenue_ = revenue;
            best_ids_ = current_;
        }
    }

    Rational forest_revenue() const
    {
        Rational total(0);
        for (std::size_t level = 0; level < levels_.step.size(); ++level) {
            const std::size_t bridges = level == 0 ? current_.size() : count_bridges(level);
            total += levels_.step[level] * static_cast<unsigned long>(bridges);
        }
        return total;
    }

    std::size_t count_bridges(std::size_t level) const
    {
        const auto& label = levels_.label[level];
        std::size_t bridges = 0;
        for (std::size_t skip = 0; skip < current_.size(); ++skip) {
            const auto& target = inst_.blue(current_[skip]);
            if (label[target.u] == label[target.v])
                continue;
            UnionFind uf(levels_.label_count[level]);
            for (std::size_t j = 0; j < current_.size(); ++j)
                if (j != skip)
                    uf.unite(label[inst_.blue(current_[j]).u], label[inst_.blue(current_[j]).v]);
            if (!uf.same(label[target.u], label[target.v]))
                ++bridges;
        }
        return bridges;
    }

    /// Revenue bound for any extension by ids greater than `last`: at each
    /// level the bridge count is at most the contracted rank of the
    /// current forest plus all remaining candidates.
    Rational upper_bound(std::size_t last) const
    {
        Rational total(0);
        for (std::size_t level = 0; level < levels_.step.size(); ++level) {
            const auto& label = levels_.label[level];
            UnionFind uf(levels_.label_count[level]);
            std::size_t rank = 0;
            auto add = [&](std::size_t id) {
                const auto& e = inst_.blue(id);
                if (uf.unite(label[e.u], label[e.v]))
                    ++rank;
            };
            for (const std::size_t id : current_)
                add(id);
            for (std::size_t id = last + 1; id < inst_.blue_count(); ++id)
                add(id);
            total += levels_.step[level] * static_cast<unsigned long>(rank);
        }
        return total;
    }

    const StackInstance& inst_;
    const LevelData& levels_;
    const Rational& floor_;
    std::atomic<std::uint64_t>& visited_;
    std::uint64_t budget_;
    RollbackUnionFind uf_;
    std::vector<std::size_t> current_;

    bool found_ = false;
    Rational best_revenue_;
    std::vector<std::size_t> best_ids_;
};

Solution make_solution(const StackInstance& inst, PriceAssignment prices, std::string algorithm, std::uint64_t work)
{
    const auto tree = min_spanning_tree(inst, prices);
    Solution sol;
    sol.prices = std::move(prices);
    sol.forest = BlueForest(tree.blue_ids);
    sol.revenue = tree.revenue;
    sol.algorithm = std::move(algorithm);
    sol.work = work;
    return sol;
}

} // namespace

Solution solve_exact(const StackInstance& inst, const SolverOptions& options)
{
    const auto ladder = cost_ladder(inst);
    const auto levels = build_levels(inst, ladder);
    const Rational floor = best_out_of_k(inst).solution.revenue;

    std::atomic<std::uint64_t> visited{0};
    const std::size_t b = inst.blue_count();
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(b, 1))));

    // Subtree s holds the forests whose smallest id is s; worker w takes
    // subtrees w, w + threads, ... Each subtree is searched with its own
    // incumbent, so visit counts do not depend on the worker count.
    struct Best {
        bool found = false;
        Rational revenue;
        std::vector<std::size_t> ids;
    };
    std::vector<Best> results(b);
    std::vector<std::exception_ptr> errors(threads);

    auto worker = [&](unsigned w) {
        try {
            for (std::size_t s = w; s < b; s += threads) {
                ForestSearch search(inst, levels, floor, visited, options.forest_budget);
                search.run_subtree(s);
                if (search.found())
                    results[s] = {true, search.best_revenue(), search.best_ids()};
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(worker, w);
        for (auto& t : pool)
            t.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    ForestSearch root(inst, levels, floor, visited, options.forest_budget);
    root.run_root();
    Best best{true, root.best_revenue(), root.best_ids()};
    for (auto& r : results)
        if (r.found && better_forest(r.revenue, r.ids, best.revenue, best.ids))
            best = std::move(r);

    const BlueForest forest(best.ids);
    auto sol = make_solution(inst, price_forest(inst, forest), "exact", visited.load());
    if (sol.revenue != best.revenue || sol.forest != forest)
        throw std::logic_error("exact solver: priced forest does not reproduce its revenue");
    return sol;
}

Solution solve_oracle(const StackInstance& inst, const SolverOptions& options)
{
    const auto ladder = cost_ladder(inst);
    const std::size_t k = ladder.k();
    const std::size_t b = inst.blue_count();

    // (k+1)^b with overflow guard
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < b; ++i) {
        if (total > options.oracle_budget / (k + 1) + 1) {
            total = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        total *= k + 1;
    }
    if (total > options.oracle_budget)
        throw BudgetExceeded("oracle search space (k+1)^b exceeds the budget of " +
                             std::to_string(options.oracle_budget));

    // digit d < k means price c_{d+1}; d == k means Unpriced
    std::vector<std::size_t> digits(b, 0);
    auto assignment = [&] {
        PriceAssignment p(b);
        for (std::size_t id = 0; id < b; ++id)
            if (digits[id] < k)
                p.set(id, ladder.costs[digits[id]]);
        return p;
    };

    PriceAssignment best_prices = assignment();
    Rational best_revenue = min_spanning_tree(inst, best_prices).revenue;
    std::uint64_t evaluated = 1;
    for (;;) {
        std::size_t pos = 0;
        while (pos < b && digits[pos] == k)
            digits[pos++] = 0;
        if (pos == b)
            break;
        ++digits[pos];

        auto prices = assignment();
        const Rational revenue = min_spanning_tree(inst, prices).revenue;
        ++evaluated;
        if (revenue > best_revenue) {
            best_revenue = revenue;
            best_prices = std::move(prices);
        }
    }
    return make_solution(inst, std::move(best_prices), "oracle", evaluated);
}

BestOutOfK best_out_of_k(const StackInstance& inst)
{
    const auto ladder = cost_ladder(inst);
    BestOutOfK out;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < ladder.k(); ++i) {
        const std::size_t count = uniform_blue_count(inst, ladder.costs[i]);
        UniformPriceRow row{ladder.costs[i], count, ladder.costs[i] * static_cast<unsigned long>(count)};
        if (!best || row.revenue > out.table[*best].revenue)
            best = i;
        out.table.push_back(std::move(row));
    }

    PriceAssignment prices(inst.blue_count());
    if (best)
        prices = PriceAssignment::uniform(inst.blue_count(), ladder.costs[*best]);
    out.solution = make_solution(inst, std::move(prices), "bok", ladder.k());
    return out;
}

double one_plus_log_upper(const Rational& x)
{
    // get_d truncates toward zero; step up so the argument is never below x.
    const double arg = std::nextafter(x.get_d(), std::numeric_limits<double>::infinity());
    const double log_up = std::nextafter(std::log(arg), std::numeric_limits<double>::infinity());
    return std::nextafter(1.0 + log_up, std::numeric_limits<double>::infinity());
}

double RatioBounds::min() const
{
    if (k == 0)
        return 1.0;
    double m = static_cast<double>(k);
    if (log_b)
        m = std::min(m, *log_b);
    if (log_w)
        m = std::min(m, *log_w);
    return m;
}

RatioBounds ratio_bounds(const StackInstance& inst)
{
    const auto ladder = cost_ladder(inst);
    RatioBounds bounds;
    bounds.k = ladder.k();
    if (inst.blue_count() > 0)
        bounds.log_b = one_plus_log_upper(Rational(static_cast<unsigned long>(inst.blue_count())));
    if (const auto w = ladder.max_ratio())
        bounds.log_w = one_plus_log_upper(*w);
    return bounds;
}

RatioReport ratio_report(const StackInstance& inst, const SolverOptions& options)
{
    RatioReport report;
    report.opt = solve_exact(inst, options).revenue;
    report.bok = best_out_of_k(inst).solution.revenue;
    report.bounds = ratio_bounds(inst);
    if (report.bok != 0)
        report.ratio = Rational(report.opt / report.bok);
    else if (report.opt == 0)
        report.ratio = Rational(1);
    report.within_bound = report.ratio && *report.ratio <= from_double(report.bounds.min());
    return report;
}

} // namespace stackmst
