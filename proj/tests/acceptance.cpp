// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Time limits are part of each criterion.
#include "cli.hpp"
#include "stackmst/generators.hpp"
#include "stackmst/lp.hpp"
#include "stackmst/pricing.hpp"
#include "stackmst/solvers.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace stackmst;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Verdict()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit_seconds) {
        v.ok = false;
        v.detail += (v.detail.empty() ? "" : "; ") + std::string("over the time limit");
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (v.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << secs << " s, limit " << limit_seconds
         << " s)";
    if (!v.detail.empty())
        line << ": " << v.detail;
    std::cout << line.str() << std::endl;
    if (!v.ok)
        ++failures;
}

/// Records the first failure message and keeps counting.
struct Tally {
    std::size_t checked = 0;
    std::size_t bad = 0;
    std::string first;

    void expect(bool condition, const std::string& what)
    {
        ++checked;
        if (!condition && bad++ == 0)
            first = what;
    }
    Verdict verdict(const std::string& summary) const
    {
        if (bad == 0)
            return {true, summary};
        return {false, std::to_string(bad) + " of " + std::to_string(checked) + " checks failed; first: " + first};
    }
};

std::string field(const std::string& text, const std::string& key)
{
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);)
        if (line.rfind(key + " ", 0) == 0)
            return line.substr(key.size() + 1);
    return "";
}

std::string run_cli(const std::vector<std::string>& args, const std::string& input, int& code)
{
    std::istringstream in(input);
    std::ostringstream out, err;
    code = cli::run(args, in, out, err);
    return out.str() + err.str();
}

Rational reduction_revenue(std::size_t n, std::size_t m, std::size_t t)
{
    return Rational(static_cast<long>(n + 2 * m) - static_cast<long>(t) - 1);
}

Rational pow_rational(std::size_t a, std::size_t e)
{
    return Rational(checked_pow(a, e));
}

bool forest_acyclic(const StackInstance& inst, const std::vector<std::size_t>& ids)
{
    // forest iff no edge closes a cycle; check by DFS reachability before insertion
    std::vector<std::vector<std::size_t>> adj(inst.vertex_count());
    for (const std::size_t id : ids) {
        const auto [u, v] = std::pair{inst.blue(id).u, inst.blue(id).v};
        std::vector<bool> seen(inst.vertex_count(), false);
        std::vector<std::size_t> stack{u};
        seen[u] = true;
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            for (const auto y : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
        }
        if (seen[v])
            return false;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return true;
}

} // namespace

int main()
{
    const auto corpus = testing::random_corpus(200);

    criterion(1, "sample set cover: revenue 9 and a cover of size 2", 1.0, [] {
        int code = 0;
        const auto text = run_cli({"gen", "setcover", "--sample"}, "", code);
        if (code != 0)
            return Verdict{false, "gen failed: " + text};
        const auto report = run_cli({"solve", "--algo", "exact", "--input", "-"}, text, code);
        const auto revenue = field(report, "revenue");
        const auto red = gen_setcover(testing::sample_setcover());
        const auto cover = cover_from_solution(red.meta, solve_exact(red.instance));
        const bool ok = code == 0 && revenue == "9" && cover.size() == 2;
        return Verdict{ok, "revenue " + revenue + ", cover size " + std::to_string(cover.size())};
    });

    criterion(2, "set cover equivalence on 120 random normalized instances, n = 2..6, m = 1..4", 30.0, [] {
        Tally t;
        for (std::uint64_t seed = 0; seed < 120; ++seed) {
            const std::size_t n = 2 + seed % 5;
            const std::size_t m = 1 + (seed / 6) % 4;
            const auto sc = random_setcover(n, m, 100 + seed);
            const auto red = gen_setcover(sc);
            const std::size_t best = oracle::min_set_cover(sc);
            const auto sol = solve_exact(red.instance);
            t.expect(sol.revenue == reduction_revenue(n, m, best), "seed " + std::to_string(100 + seed));
            t.expect(cover_from_solution(red.meta, sol).size() == best, "cover size, seed " + std::to_string(seed));
        }
        return t.verdict("120 instances, all match n + 2m - t - 1");
    });

    criterion(3, "vertex cover arithmetic on K3, C4 and K4 minus an edge", 10.0, [] {
        Tally t;
        std::string detail;
        const std::vector<std::pair<std::string, SimpleGraph>> graphs = {
            {"K3", {3, {{0, 1}, {1, 2}, {0, 2}}}},
            {"C4", {4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}},
            {"K4-e", {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}}},
        };
        for (const auto& [name, g] : graphs) {
            const auto red = gen_vertexcover(g);
            const std::size_t vc = oracle::min_vertex_cover(g);
            const auto opt = solve_exact(red.instance).revenue;
            t.expect(opt == reduction_revenue(red.meta.n, red.meta.m, vc), name);
            detail += (detail.empty() ? "" : ", ") + name + " opt " + to_string(opt);
        }
        return t.verdict(detail);
    });

    criterion(4, "harmonic family: best-out-of-k 1 and optimum H_k for k = 1..6", 5.0, [] {
        Tally t;
        Rational h(0);
        for (std::size_t k = 1; k <= 6; ++k) {
            h += Rational(1, static_cast<unsigned long>(k));
            const auto inst = gen_harmonic(k);
            t.expect(best_out_of_k(inst).solution.revenue == 1, "bok, k=" + std::to_string(k));
            t.expect(solve_exact(inst).revenue == h, "opt, k=" + std::to_string(k));
        }
        return t.verdict("H_6 = " + to_string(h));
    });

    criterion(5, "geometric family: optimum k a^(k-1) and closed-form uniform revenues", 60.0, [] {
        Tally t;
        for (const auto& [k, a] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
            const auto inst = gen_geometric(k, a);
            const std::string tag = "k=" + std::to_string(k) + " a=" + std::to_string(a);
            t.expect(solve_exact(inst).revenue == pow_rational(a, k - 1) * static_cast<unsigned long>(k), tag);
            const auto table = best_out_of_k(inst).table;
            t.expect(table.size() == k, tag + " table size");
            for (std::size_t i = 1; i <= k && i <= table.size(); ++i)
                t.expect(table[i - 1].revenue == pow_rational(a, i - 1) * make_rational(static_cast<long>(checked_pow(a, k - i + 1) - 1), static_cast<long>(a - 1)),
                         tag + " row " + std::to_string(i));
        }
        return t.verdict("(2,2), (2,3), (3,2) and also (3,3) exact within the default forest budget");
    });

    criterion(6, "approximation guarantee on the 200-instance corpus", 120.0, [&corpus] {
        Tally t;
        for (const auto& entry : corpus) {
            const auto opt = solve_exact(entry.instance).revenue;
            const auto bok = best_out_of_k(entry.instance).solution.revenue;
            const double bound = ratio_bounds(entry.instance).min();
            t.expect(bok * from_double(bound) >= opt, "seed " + std::to_string(entry.seed));
        }
        return t.verdict("zero violations");
    });

    criterion(7, "exact solver equals exhaustive oracle on the corpus", 300.0, [&corpus] {
        Tally t;
        for (const auto& entry : corpus)
            t.expect(solve_exact(entry.instance).revenue == solve_oracle(entry.instance).revenue,
                     "seed " + std::to_string(entry.seed));
        return t.verdict("zero mismatches");
    });

    criterion(8, "min-max pricing on 500 instance and forest pairs", 120.0, [&corpus] {
        Tally t;
        std::mt19937_64 rng(8);
        for (std::size_t trial = 0; trial < 500; ++trial) {
            const auto& inst = corpus[trial % corpus.size()].instance;
            std::vector<std::size_t> order(inst.blue_count());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<std::size_t> ids;
            for (const auto e : order) {
                if (rng() % 4 == 0)
                    continue;
                ids.push_back(e);
                if (!forest_acyclic(inst, ids))
                    ids.pop_back();
            }
            std::sort(ids.begin(), ids.end());
            const std::string tag = "trial " + std::to_string(trial);
            const auto prices = price_forest(inst, BlueForest(ids));
            t.expect(min_spanning_tree(inst, prices).blue_ids == ids, tag + " realization");
            const auto ladder = cost_ladder(inst).costs;
            for (const auto e : ids) {
                const auto next = std::upper_bound(ladder.begin(), ladder.end(), *prices[e]);
                if (next == ladder.end())
                    continue;
                auto raised = prices;
                raised.set(e, *next);
                const auto after = min_spanning_tree(inst, raised).blue_ids;
                t.expect(!std::binary_search(after.begin(), after.end(), e), tag + " maximality");
            }
        }
        return t.verdict("500 forests realized, every raise drops its edge");
    });

    criterion(9, "LP sandwich on a 50-instance sub-corpus", 600.0, [&corpus] {
        Tally t;
        for (std::size_t i = 0; i < 50; ++i) {
            const auto& entry = corpus[i];
            const std::string tag = "seed " + std::to_string(entry.seed);
            const auto g = gap_report(entry.instance);
            const Rational bound = from_double(g.bounds.min());
            t.expect(g.ip <= g.lp, tag + " ip <= lp");
            t.expect(g.lp <= bound * g.ip, tag + " lp <= bound * ip");
            t.expect(separate_all(entry.instance, g.lp_detail.model, g.lp_detail.point).empty(), tag + " certified");
        }
        return t.verdict("50 instances sandwiched and certified");
    });

    criterion(10, "integrality gap family", 300.0, [] {
        Tally t;
        for (const auto& [k, a] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 4}, {3, 2}}) {
            const std::string tag = "k=" + std::to_string(k) + " a=" + std::to_string(a);
            const auto inst = gen_gap(k, a);
            const auto model = build_base_lp(inst);
            const auto x = gap_point(k, a, inst.blue_count());
            const Rational top = pow_rational(a, k - 1);
            const Rational target = top * static_cast<unsigned long>(k) - top * static_cast<unsigned long>(k) / a;
            t.expect(solve_exact(inst).revenue == top, tag + " ip");
            t.expect(separate_all(inst, model, x).empty(), tag + " x* passes separators");
            t.expect(model.objective_value(x) == target, tag + " objective of x*");
            t.expect(solve_lp(inst).value >= target, tag + " lp value");
        }
        const auto padded = gap_report(gen_gap(3, 2, 7));
        // ratio > log2(7)/2 compared against an upward-rounded double
        const Rational half_log = from_double(std::nextafter(std::log2(7.0) / 2, 2.0));
        t.expect(padded.ratio && *padded.ratio > half_log, "padded ratio");
        return t.verdict("padded k=3 a=2 b=7 lp/ip = " + (padded.ratio ? to_string(*padded.ratio) : "?"));
    });

    criterion(11, "revenue invariance over every canonically minimal tree", 120.0, [&corpus] {
        Tally t;
        std::mt19937_64 rng(11);
        for (std::size_t i = 0; i < 100; ++i) {
            const auto& inst = corpus[i].instance;
            auto choices = cost_ladder(inst).costs;
            PriceAssignment p(inst.blue_count());
            for (std::size_t e = 0; e < inst.blue_count(); ++e) {
                const std::size_t pick = rng() % (choices.size() + 1);
                if (pick < choices.size())
                    p.set(e, choices[pick]);
            }
            const auto tree = min_spanning_tree(inst, p);
            for (const auto& s : oracle::enumerate_spanning_trees(inst, p))
                if (s.weight == tree.total_weight && s.blue_count == tree.blue_ids.size())
                    t.expect(s.revenue == tree.revenue, "seed " + std::to_string(corpus[i].seed));
        }
        return t.verdict(std::to_string(t.checked) + " minimal trees compared");
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
