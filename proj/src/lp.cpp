#include "stackmst/lp.hpp"

#include "stackmst/errors.hpp"
#include "stackmst/union_find.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stackmst {

std::string to_string(CutKind kind)
{
    switch (kind) {
    case CutKind::partition: return "partition";
    case CutKind::path: return "path";
    case CutKind::chain: return "chain";
    case CutKind::bound: return "bound";
    }
    return "unknown";
}

Rational Cut::violation(std::span<const Rational> x) const
{
    Rational lhs(0);
    for (const auto& [col, coef] : row)
        lhs += coef * x[col];
    return lhs - rhs;
}

LPModel::LPModel(std::size_t levels, std::size_t blue_count, std::vector<Rational> step)
    : levels_(levels), blue_count_(blue_count), step_(std::move(step))
{
}

std::vector<Rational> LPModel::objective() const
{
    std::vector<Rational> c(variable_count());
    for (std::size_t j = 1; j <= levels_; ++j)
        for (std::size_t e = 0; e < blue_count_; ++e)
            c[variable(j, e)] = step_[j - 1];
    return c;
}

Rational LPModel::objective_value(std::span<const Rational> x) const
{
    Rational total(0);
    for (std::size_t j = 1; j <= levels_; ++j)
        for (std::size_t e = 0; e < blue_count_; ++e)
            total += step_[j - 1] * x[variable(j, e)];
    return total;
}

std::size_t LPModel::count(CutKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(cuts_.begin(), cuts_.end(), [kind](const Cut& c) { return c.kind == kind; }));
}

namespace {

std::string row_key(const Cut& cut)
{
    std::string key;
    for (const auto& [col, coef] : cut.row)
        key += std::to_string(col) + ":" + stackmst::to_string(coef) + ",";
    return key + "<=" + stackmst::to_string(cut.rhs);
}

void normalize_row(SparseRow& row)
{
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow merged;
    for (auto& [col, coef] : row) {
        if (!merged.empty() && merged.back().first == col)
            merged.back().second += coef;
        else
            merged.emplace_back(col, std::move(coef));
    }
    std::erase_if(merged, [](const auto& entry) { return sgn(entry.second) == 0; });
    row = std::move(merged);
}

} // namespace

bool LPModel::add(Cut cut)
{
    normalize_row(cut.row);
    std::string key = row_key(cut);
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it != keys_.end() && *it == key)
        return false;
    keys_.insert(it, std::move(key));
    cuts_.push_back(std::move(cut));
    return true;
}

std::string LPModel::variable_name(std::size_t index) const
{
    return "x_" + std::to_string(index / blue_count_ + 1) + "_" + std::to_string(index % blue_count_);
}

LPModel build_base_lp(const StackInstance& inst)
{
    const auto ladder = cost_ladder(inst);
    if (ladder.k() > 0 && ladder.costs.front() == 0)
        throw std::invalid_argument("LP model needs positive red costs; contract zero-cost red edges first");

    std::vector<Rational> step;
    Rational previous(0);
    for (const auto& c : ladder.costs) {
        step.push_back(c - previous);
        previous = c;
    }

    const std::size_t k = ladder.k();
    const std::size_t b = inst.blue_count();
    LPModel model(k, b, std::move(step));

    for (std::size_t e = 0; e < b; ++e) {
        // A blue loop is in no spanning tree; pin all its variables to 0.
        const bool loop = inst.blue(e).u == inst.blue(e).v;
        for (std::size_t j = 1; j <= k; ++j) {
            Cut lower;
            lower.kind = CutKind::bound;
            lower.blue = e;
            lower.level = j;
            lower.row = {{model.variable(j, e), Rational(-1)}};
            lower.rhs = 0;
            model.add(std::move(lower));

            Cut upper;
            upper.kind = CutKind::bound;
            upper.blue = e;
            upper.level = j;
            upper.row = {{model.variable(j, e), Rational(1)}};
            upper.rhs = loop ? 0 : 1;
            model.add(std::move(upper));
        }
        for (std::size_t j = 2; j <= k; ++j) {
            Cut chain;
            chain.kind = CutKind::chain;
            chain.blue = e;
            chain.level = j;
            chain.row = {{model.variable(j, e), Rational(1)}, {model.variable(j - 1, e), Rational(-1)}};
            chain.rhs = 0;
            model.add(std::move(chain));
        }
    }
    return model;
}

namespace {

struct Components {
    std::vector<std::size_t> label;
    std::size_t count = 0;
};

/// Components of (V, R_{j-1}), labelled in order of their smallest vertex.
Components level_components(const StackInstance& inst, std::size_t level)
{
    const auto ladder = cost_ladder(inst);
    UnionFind uf(inst.vertex_count());
    if (level >= 2)
        for (const auto& e : inst.red_edges())
            if (e.cost <= ladder.costs.at(level - 2))
                uf.unite(e.u, e.v);

    Components comps;
    comps.label.resize(inst.vertex_count());
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> root_label(inst.vertex_count(), unset);
    for (std::size_t v = 0; v < inst.vertex_count(); ++v) {
        const std::size_t r = uf.find(v);
        if (root_label[r] == unset)
            root_label[r] = comps.count++;
        comps.label[v] = root_label[r];
    }
    return comps;
}

void check_level(const LPModel& model, std::size_t level, std::size_t min_level)
{
    if (level < min_level || level > model.levels())
        throw std::out_of_range("separation level " + std::to_string(level) + " out of range");
}

} // namespace

std::optional<Cut> separate_partition(const StackInstance& inst, const LPModel& model, std::span<const Rational> x,
                                      std::size_t level, const SeparationOptions& options)
{
    check_level(model, level, 1);
    const auto comps = level_components(inst, level);

    // Only components touched by a positively weighted crossing edge can
    // raise x(E[S]) - (|S| - 1) above 0.
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> compact(comps.count, unset);
    std::vector<std::size_t> members;
    for (std::size_t e = 0; e < inst.blue_count(); ++e) {
        const std::size_t a = comps.label[inst.blue(e).u];
        const std::size_t b = comps.label[inst.blue(e).v];
        if (a == b || sgn(x[model.variable(level, e)]) <= 0)
            continue;
        for (const std::size_t c : {a, b})
            if (compact[c] == unset) {
                compact[c] = 0;
                members.push_back(c);
            }
    }
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
        compact[members[i]] = i;

    const std::size_t n = members.size();
    if (n > options.max_partition_vertices)
        throw std::length_error("contracted graph has " + std::to_string(n) +
                                " vertices, above the exhaustive partition separation limit of " +
                                std::to_string(options.max_partition_vertices));
    if (n < 2)
        return std::nullopt;

    std::vector<std::vector<Rational>> weight(n, std::vector<Rational>(n));
    for (std::size_t e = 0; e < inst.blue_count(); ++e) {
        const std::size_t a = comps.label[inst.blue(e).u];
        const std::size_t b = comps.label[inst.blue(e).v];
        if (a == b || sgn(x[model.variable(level, e)]) <= 0)
            continue;
        weight[compact[a]][compact[b]] += x[model.variable(level, e)];
        weight[compact[b]][compact[a]] += x[model.variable(level, e)];
    }

    // inside[S] = x(E[S]) built by peeling off the lowest member of S.
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<Rational> inside(subsets);
    std::size_t best_mask = 0;
    Rational best_excess(0);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
        const std::size_t rest = mask & (mask - 1);
        inside[mask] = inside[rest];
        for (std::size_t r = rest; r != 0; r &= r - 1)
            inside[mask] += weight[low][static_cast<std::size_t>(std::countr_zero(r))];
        if (rest == 0)
            continue;
        Rational excess = inside[mask] - static_cast<unsigned long>(std::popcount(mask) - 1);
        if (excess > best_excess) {
            best_excess = std::move(excess);
            best_mask = mask;
        }
    }
    if (best_mask == 0)
        return std::nullopt;

    std::vector<bool> chosen(comps.count, false);
    for (std::size_t i = 0; i < n; ++i)
        if (best_mask >> i & 1)
            chosen[members[i]] = true;

    Cut cut;
    cut.kind = CutKind::partition;
    cut.level = level;
    cut.parts.resize(comps.count);
    for (std::size_t v = 0; v < inst.vertex_count(); ++v)
        if (chosen[comps.label[v]])
            cut.parts[comps.label[v]].push_back(v);
    std::erase_if(cut.parts, [](const auto& part) { return part.empty(); });
    for (std::size_t e = 0; e < inst.blue_count(); ++e) {
        const std::size_t a = comps.label[inst.blue(e).u];
        const std::size_t b = comps.label[inst.blue(e).v];
        if (a != b && chosen[a] && chosen[b])
            cut.row.emplace_back(model.variable(level, e), Rational(1));
    }
    cut.rhs = static_cast<unsigned long>(std::popcount(best_mask) - 1);
    return cut;
}

std::optional<Cut> separate_path(const StackInstance& inst, const LPModel& model, std::span<const Rational> x,
                                 std::size_t level, std::size_t f)
{
    check_level(model, level, 2);
    if (f >= inst.blue_count())
        throw std::out_of_range("blue id out of range");

    const auto comps = level_components(inst, level);
    const std::size_t source = comps.label[inst.blue(f).u];
    const std::size_t target = comps.label[inst.blue(f).v];
    const Rational& xf = x[model.variable(level, f)];

    // Red edges of R_{j-1} have weight 0, so work on the contracted graph;
    // a simple path there lifts to a simple path in G.
    const std::size_t n = comps.count;
    std::vector<std::optional<Rational>> dist(n);
    std::vector<std::size_t> via(n);
    std::vector<bool> done(n, false);
    dist[source] = Rational(0);
    for (;;) {
        std::optional<std::size_t> u;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && dist[v] && (!u || *dist[v] < *dist[*u]))
                u = v;
        if (!u || *u == target)
            break;
        done[*u] = true;
        for (std::size_t e = 0; e < inst.blue_count(); ++e) {
            if (e == f)
                continue;
            std::size_t a = comps.label[inst.blue(e).u];
            std::size_t b = comps.label[inst.blue(e).v];
            if (a == b)
                continue;
            if (b == *u)
                std::swap(a, b);
            if (a != *u || done[b])
                continue;
            Rational candidate = *dist[*u] + (1 - x[model.variable(1, e)]);
            if (!dist[b] || candidate < *dist[b]) {
                dist[b] = std::move(candidate);
                via[b] = e;
            }
        }
    }
    if (!dist[target] || !(*dist[target] < xf))
        return std::nullopt;

    Cut cut;
    cut.kind = CutKind::path;
    cut.level = level;
    cut.blue = f;
    for (std::size_t v = target; v != source;) {
        const std::size_t e = via[v];
        cut.path_blue.push_back(e);
        const std::size_t a = comps.label[inst.blue(e).u];
        v = a == v ? comps.label[inst.blue(e).v] : a;
    }
    std::reverse(cut.path_blue.begin(), cut.path_blue.end());
    for (const std::size_t e : cut.path_blue)
        cut.row.emplace_back(model.variable(1, e), Rational(1));
    cut.row.emplace_back(model.variable(level, f), Rational(1));
    cut.rhs = static_cast<unsigned long>(cut.path_blue.size());
    return cut;
}

std::vector<Cut> separate_all(const StackInstance& inst, const LPModel& model, std::span<const Rational> x,
                              const SeparationOptions& options)
{
    std::vector<Cut> cuts;
    for (std::size_t j = 1; j <= model.levels(); ++j)
        if (auto cut = separate_partition(inst, model, x, j, options))
            cuts.push_back(std::move(*cut));
    for (std::size_t j = 2; j <= model.levels(); ++j)
        for (std::size_t f = 0; f < inst.blue_count(); ++f)
            if (auto cut = separate_path(inst, model, x, j, f))
                cuts.push_back(std::move(*cut));
    return cuts;
}

namespace {

/// x >= 0 is implicit in the simplex.
bool implied_by_sign(const Cut& cut)
{
    return cut.kind == CutKind::bound && cut.rhs == 0 && cut.row.size() == 1 && sgn(cut.row.front().second) < 0;
}

} // namespace

LPResult solve_lp(const StackInstance& inst, const LPOptions& options)
{
    LPResult result;
    result.model = build_base_lp(inst);
    LPModel& model = result.model;

    RationalSimplex simplex(model.objective());
    for (const auto& cut : model.cuts())
        if (!implied_by_sign(cut))
            simplex.add_row(cut.row, cut.rhs);

    for (;;) {
        if (result.rounds >= options.max_rounds)
            throw BudgetExceeded("cutting-plane loop exceeded " + std::to_string(options.max_rounds) + " rounds");
        ++result.rounds;
        if (simplex.solve() != SimplexStatus::optimal)
            throw std::logic_error("LP relaxation reported unbounded despite x <= 1 bounds");

        auto x = simplex.primal();
        auto cuts = separate_all(inst, model, x, options.separation);
        if (cuts.empty()) {
            result.value = simplex.value();
            result.point = std::move(x);
            break;
        }

        std::size_t added = 0;
        for (auto& cut : cuts) {
            if (model.add(std::move(cut))) {
                simplex.add_row(model.cuts().back().row, model.cuts().back().rhs);
                ++added;
            }
        }
        if (added == 0)
            throw std::logic_error("separators returned only cuts already in the model");
        result.cuts_added += added;
    }
    result.pivots = simplex.pivots();
    return result;
}

std::vector<Rational> embed_solution(const StackInstance& inst, const Solution& sol)
{
    const auto ladder = cost_ladder(inst);
    const std::size_t b = inst.blue_count();
    std::vector<Rational> x(ladder.k() * b);
    for (const std::size_t e : sol.forest.ids) {
        const Rational& price = *sol.prices[e];
        for (std::size_t j = 1; j <= ladder.k(); ++j)
            if (price >= ladder.costs[j - 1])
                x[(j - 1) * b + e] = 1;
    }
    return x;
}

GapReport gap_report(const StackInstance& inst, const SolverOptions& solver, const LPOptions& options)
{
    GapReport report;
    report.lp_detail = solve_lp(inst, options);
    report.lp = report.lp_detail.value;
    report.ip = solve_exact(inst, solver).revenue;
    report.bounds = ratio_bounds(inst);
    if (report.ip != 0)
        report.ratio = Rational(report.lp / report.ip);
    else if (report.lp == 0)
        report.ratio = Rational(1);
    report.within_bounds = report.ratio && *report.ratio >= 1 && *report.ratio <= from_double(report.bounds.min());
    return report;
}

std::string dump_lp(const LPModel& model)
{
    std::string out = "stackmst-lp v1\n";
    out += "levels " + std::to_string(model.levels()) + " blue " + std::to_string(model.blue_count()) +
           " variables " + std::to_string(model.variable_count()) + "\n";
    out += "maximize\n ";
    const auto c = model.objective();
    for (std::size_t i = 0; i < c.size(); ++i)
        out += " + " + stackmst::to_string(c[i]) + " " + model.variable_name(i);
    out += "\nsubject to\n";
    std::size_t index = 0;
    for (const auto& cut : model.cuts()) {
        out += " r" + std::to_string(index++) + " [" + to_string(cut.kind);
        if (cut.level)
            out += " j=" + std::to_string(cut.level);
        if (cut.blue)
            out += " e=" + std::to_string(*cut.blue);
        out += "]:";
        for (const auto& [col, coef] : cut.row) {
            const bool negative = sgn(coef) < 0;
            const Rational magnitude = abs(coef);
            out += negative ? " - " : " + ";
            if (magnitude != 1)
                out += stackmst::to_string(magnitude) + " ";
            out += model.variable_name(col);
        }
        out += " <= " + stackmst::to_string(cut.rhs) + "\n";
    }
    out += "end\n";
    return out;
}

} // namespace stackmst
