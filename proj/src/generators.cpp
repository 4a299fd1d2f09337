#include "stackmst/generators.hpp"

#include "stackmst/errors.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stackmst {

std::size_t checked_pow(std::size_t base, std::size_t exponent)
{
    std::size_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base)
            throw std::overflow_error("family size overflows");
        result *= base;
    }
    return result;
}

SetCoverInstance normalize_setcover(SetCoverInstance sc)
{
    ++sc.universe;
    for (auto& s : sc.sets)
        s.push_back(sc.universe);
    return sc;
}

ReducedInstance gen_setcover(const SetCoverInstance& sc)
{
    const std::size_t n = sc.universe;
    const std::size_t m = sc.sets.size();
    if (n == 0 || m == 0)
        throw std::invalid_argument("set cover instance needs a nonempty universe and at least one set");

    std::vector<std::vector<std::size_t>> sets = sc.sets;
    for (std::size_t j = 0; j < m; ++j) {
        auto& s = sets[j];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (!s.empty() && (s.front() == 0 || s.back() > n))
            throw std::invalid_argument("set " + std::to_string(j + 1) + " has an element outside 1.." +
                                        std::to_string(n));
        if (s.empty() || s.back() != n)
            throw std::invalid_argument("element u_n must belong to every set (set " + std::to_string(j + 1) +
                                        " misses it); normalize first");
    }

    std::vector<RedEdge> red;
    for (std::size_t i = 0; i + 1 < n; ++i)
        red.push_back({i, i + 1, Rational(1)});
    red.push_back({n - 1, n, Rational(2)});
    for (std::size_t j = 0; j + 1 < m; ++j)
        red.push_back({n + j, n + j + 1, Rational(2)});

    ReducedInstance out;
    out.meta.n = n;
    out.meta.m = m;
    std::vector<BlueEdge> blue;
    for (std::size_t j = 0; j < m; ++j)
        for (const std::size_t i : sets[j]) {
            blue.push_back({i - 1, n + j});
            out.meta.incidence.emplace_back(i, j + 1);
        }
    out.instance = StackInstance(n + m, std::move(red), std::move(blue));
    return out;
}

std::vector<std::size_t> cover_from_solution(const ReductionMeta& meta, const Solution& sol)
{
    if (sol.forest.size() + 1 != meta.n + meta.m)
        throw std::invalid_argument("non-canonical optimal solution: the tree contains a red edge");

    std::vector<bool> chosen(meta.m + 1, false);
    for (const std::size_t id : sol.forest.ids) {
        const auto& price = sol.prices[id];
        if (price && *price == 1)
            chosen[meta.incidence.at(id).second] = true;
    }

    std::vector<bool> covered(meta.n + 1, false);
    for (std::size_t id = 0; id < meta.incidence.size(); ++id) {
        const auto [element, set] = meta.incidence[id];
        if (chosen[set])
            covered[element] = true;
    }
    // Only reachable when n = 1: the lone element hangs off a set through a
    // price-2 edge, and that set covers it.
    for (const std::size_t id : sol.forest.ids) {
        const auto [element, set] = meta.incidence.at(id);
        if (!covered[element]) {
            chosen[set] = true;
            for (const auto& [i, j] : meta.incidence)
                if (j == set)
                    covered[i] = true;
        }
    }
    for (std::size_t i = 1; i <= meta.n; ++i)
        if (!covered[i])
            throw std::logic_error("extracted sets do not cover element " + std::to_string(i));

    std::vector<std::size_t> cover;
    for (std::size_t j = 1; j <= meta.m; ++j)
        if (chosen[j])
            cover.push_back(j);
    return cover;
}

ReducedInstance gen_vertexcover(const SimpleGraph& graph)
{
    const std::size_t nv = graph.vertices;
    std::vector<std::size_t> degree(nv, 0);
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [u, v] : graph.edges) {
        if (u >= nv || v >= nv)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("graph must be simple (loop found)");
        seen.emplace_back(std::min(u, v), std::max(u, v));
        ++degree[u];
        ++degree[v];
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("graph must be simple (parallel edge found)");
    if (std::any_of(degree.begin(), degree.end(), [](std::size_t d) { return d > 3; }))
        throw std::invalid_argument("maximum degree exceeds 3");
    if (graph.edges.size() < nv)
        throw std::invalid_argument("graph needs at least as many edges as vertices");

    std::vector<RedEdge> as_red;
    for (const auto& [u, v] : graph.edges)
        as_red.push_back({u, v, Rational(1)});
    if (nv == 0 || !validate(StackInstance(nv, std::move(as_red), {})).ok())
        throw std::invalid_argument("graph must be connected");

    SetCoverInstance sc;
    sc.universe = graph.edges.size() + 1;
    sc.sets.resize(nv);
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        sc.sets[graph.edges[i].first].push_back(i + 1);
        sc.sets[graph.edges[i].second].push_back(i + 1);
    }
    for (auto& s : sc.sets)
        s.push_back(sc.universe);

    auto out = gen_setcover(sc);
    out.meta.family = "vertexcover";
    return out;
}

StackInstance gen_harmonic(std::size_t k)
{
    if (k == 0)
        throw std::invalid_argument("harmonic family needs k >= 1");
    std::vector<RedEdge> red;
    std::vector<BlueEdge> blue;
    for (std::size_t i = 1; i <= k; ++i) {
        red.push_back({i - 1, i, Rational(1, static_cast<unsigned long>(i))});
        blue.push_back({i - 1, i});
    }
    return StackInstance(k + 1, std::move(red), std::move(blue));
}

StackInstance gen_geometric(std::size_t k, std::size_t a)
{
    if (k == 0 || a < 2)
        throw std::invalid_argument("geometric family needs k >= 1 and a >= 2");
    std::vector<RedEdge> red;
    std::vector<BlueEdge> blue;
    std::size_t v = 0;
    for (std::size_t i = 1; i <= k; ++i) {
        const Rational cost(static_cast<unsigned long>(checked_pow(a, i - 1)));
        for (std::size_t count = checked_pow(a, k - i); count > 0; --count, ++v) {
            red.push_back({v, v + 1, cost});
            blue.push_back({v, v + 1});
        }
    }
    return StackInstance(v + 1, std::move(red), std::move(blue));
}

StackInstance gen_gap(std::size_t k, std::size_t a, std::optional<std::size_t> pad_to_b)
{
    if (k == 0 || a < 2)
        throw std::invalid_argument("gap family needs k >= 1 and a >= 2");
    const std::size_t top = checked_pow(a, k - 1);
    if (pad_to_b && *pad_to_b < top)
        throw std::invalid_argument("padding target " + std::to_string(*pad_to_b) + " is below the " +
                                    std::to_string(top) + " star edges");

    std::vector<RedEdge> red;
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t block = checked_pow(a, i);
        const Rational cost(static_cast<unsigned long>(checked_pow(a, i - 1)));
        for (std::size_t start = 1; start <= top; start += block)
            for (std::size_t u = start; u < start + block; ++u)
                for (std::size_t v = u + 1; v < start + block; ++v)
                    red.push_back({u, v, cost});
    }
    red.push_back({0, 1, Rational(static_cast<unsigned long>(top))});

    std::vector<BlueEdge> blue;
    for (std::size_t v = 1; v <= top; ++v)
        blue.push_back({0, v});
    if (pad_to_b)
        while (blue.size() < *pad_to_b)
            blue.push_back({0, 1});
    return StackInstance(top + 1, std::move(red), std::move(blue));
}

std::vector<Rational> gap_point(std::size_t k, std::size_t a, std::size_t blue_count)
{
    const std::size_t top = checked_pow(a, k - 1);
    std::vector<Rational> x(k * blue_count);
    for (std::size_t j = 1; j <= k; ++j) {
        const Rational y = j == 1 ? Rational(static_cast<unsigned long>(a - 1), static_cast<unsigned long>(a))
                                  : Rational(1, static_cast<unsigned long>(checked_pow(a, j - 1)));
        for (std::size_t e = 0; e < top && e < blue_count; ++e)
            x[(j - 1) * blue_count + e] = y;
    }
    return x;
}

namespace {

class PortableRandom {
public:
    explicit PortableRandom(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        // 2^64 mod bound values at the top of the range would bias the modulo.
        const std::uint64_t reject = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t draw = engine_();
            if (draw >= reject)
                return draw % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

StackInstance gen_random(std::size_t n, std::size_t red_extra, std::size_t b, const std::vector<Rational>& cost_pool,
                         std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("random instance needs n >= 1");
    if (cost_pool.empty())
        throw std::invalid_argument("cost pool must not be empty");
    if (std::any_of(cost_pool.begin(), cost_pool.end(), [](const Rational& c) { return c <= 0; }))
        throw std::invalid_argument("cost pool entries must be positive");

    PortableRandom rng(seed);
    auto cost = [&] { return cost_pool[rng.below(cost_pool.size())]; };

    std::vector<RedEdge> red;
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t parent = rng.below(v);
        red.push_back({parent, v, cost()});
    }
    for (std::size_t i = 0; i < red_extra; ++i) {
        const std::size_t u = rng.below(n);
        const std::size_t v = rng.below(n);
        red.push_back({u, v, cost()});
    }
    std::vector<BlueEdge> blue;
    for (std::size_t i = 0; i < b; ++i) {
        const std::size_t u = rng.below(n);
        std::size_t v = u;
        if (n >= 2) {
            v = rng.below(n - 1);
            if (v >= u)
                ++v;
        }
        blue.push_back({u, v});
    }
    return StackInstance(n, std::move(red), std::move(blue));
}

SetCoverInstance random_setcover(std::size_t n, std::size_t m, std::uint64_t seed)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("random set cover needs n >= 1 and m >= 1");
    PortableRandom rng(seed);
    SetCoverInstance sc;
    sc.universe = n;
    sc.sets.resize(m);
    for (auto& s : sc.sets) {
        for (std::size_t i = 1; i < n; ++i)
            if (rng.below(2) == 1)
                s.push_back(i);
        s.push_back(n);
    }
    // An element no set picked goes into one uniform set, so a cover exists.
    for (std::size_t i = 1; i < n; ++i) {
        const bool covered = std::any_of(sc.sets.begin(), sc.sets.end(), [i](const auto& s) {
            return std::find(s.begin(), s.end(), i) != s.end();
        });
        if (!covered) {
            auto& s = sc.sets[rng.below(m)];
            s.insert(std::lower_bound(s.begin(), s.end(), i), i);
        }
    }
    return sc;
}

std::string serialize_meta(const ReductionMeta& meta)
{
    std::string out = "stackmst-meta v1\n";
    out += "family " + meta.family + "\n";
    out += "n " + std::to_string(meta.n) + "\n";
    out += "m " + std::to_string(meta.m) + "\n";
    for (std::size_t id = 0; id < meta.incidence.size(); ++id)
        out += "blue " + std::to_string(id) + " element " + std::to_string(meta.incidence[id].first) + " set " +
               std::to_string(meta.incidence[id].second) + "\n";
    return out;
}

ReductionMeta parse_meta(std::string_view text)
{
    ReductionMeta meta;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key.front() == '#')
            continue;
        if (!header) {
            std::string version;
            if (key != "stackmst-meta" || !(ls >> version) || version != "v1")
                throw ParseError(lineno, "expected header 'stackmst-meta v1'");
            header = true;
            continue;
        }
        if (key == "family") {
            ls >> meta.family;
        } else if (key == "n") {
            ls >> meta.n;
        } else if (key == "m") {
            ls >> meta.m;
        } else if (key == "blue") {
            std::size_t id = 0, element = 0, set = 0;
            std::string e_kw, s_kw;
            if (!(ls >> id >> e_kw >> element >> s_kw >> set) || e_kw != "element" || s_kw != "set")
                throw ParseError(lineno, "expected 'blue <id> element <i> set <j>'");
            if (id != meta.incidence.size())
                throw ParseError(lineno, "blue ids must be listed in order");
            meta.incidence.emplace_back(element, set);
            continue;
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
        if (!ls)
            throw ParseError(lineno, "malformed value for '" + key + "'");
    }
    if (!header)
        throw ParseError(1, "expected header 'stackmst-meta v1'");
    return meta;
}

} // namespace stackmst
