#include "stackmst/instance.hpp"

#include "stackmst/errors.hpp"
#include "stackmst/union_find.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

namespace stackmst {

StackInstance::StackInstance(std::size_t vertex_count, std::vector<RedEdge> red, std::vector<BlueEdge> blue)
    : vertex_count_(vertex_count), red_(std::move(red)), blue_(std::move(blue))
{
}

std::pair<std::size_t, std::size_t> StackInstance::endpoints(const EdgeRef& edge) const
{
    if (edge.color == Color::red) {
        const auto& e = red_.at(edge.index);
        return {e.u, e.v};
    }
    const auto& e = blue_.at(edge.index);
    return {e.u, e.v};
}

bool operator==(const StackInstance& a, const StackInstance& b)
{
    if (a.vertex_count_ != b.vertex_count_ || a.red_.size() != b.red_.size() || a.blue_.size() != b.blue_.size())
        return false;
    for (std::size_t i = 0; i < a.red_.size(); ++i) {
        const auto& x = a.red_[i];
        const auto& y = b.red_[i];
        if (x.u != y.u || x.v != y.v || x.cost != y.cost)
            return false;
    }
    for (std::size_t i = 0; i < a.blue_.size(); ++i)
        if (a.blue_[i].u != b.blue_[i].u || a.blue_[i].v != b.blue_[i].v)
            return false;
    return true;
}

PriceAssignment PriceAssignment::uniform(std::size_t blue_count, const Rational& price)
{
    PriceAssignment p(blue_count);
    for (std::size_t id = 0; id < blue_count; ++id)
        p.set(id, price);
    return p;
}

std::optional<Rational> CostLadder::max_ratio() const
{
    if (costs.empty() || costs.front() == 0)
        return std::nullopt;
    return Rational(costs.back() / costs.front());
}

std::optional<std::size_t> CostLadder::index_of(const Rational& cost) const
{
    const auto it = std::lower_bound(costs.begin(), costs.end(), cost);
    if (it == costs.end() || *it != cost)
        return std::nullopt;
    return static_cast<std::size_t>(it - costs.begin());
}

std::string ValidationReport::message() const
{
    std::string out;
    for (const auto& p : problems) {
        if (!out.empty())
            out += "; ";
        out += p;
    }
    return out;
}

ValidationReport validate(const StackInstance& inst)
{
    ValidationReport report;
    const std::size_t n = inst.vertex_count();
    if (n == 0) {
        report.problems.push_back("vertex count must be positive");
        return report;
    }

    bool indices_ok = true;
    for (std::size_t i = 0; i < inst.red_count(); ++i) {
        const auto& e = inst.red(i);
        if (e.u >= n || e.v >= n) {
            report.problems.push_back("red edge " + std::to_string(i) + ": vertex index out of range");
            indices_ok = false;
        }
        if (e.cost < 0)
            report.problems.push_back("red edge " + std::to_string(i) + ": negative cost");
    }
    for (std::size_t i = 0; i < inst.blue_count(); ++i) {
        const auto& e = inst.blue(i);
        if (e.u >= n || e.v >= n) {
            report.problems.push_back("blue edge " + std::to_string(i) + ": vertex index out of range");
            indices_ok = false;
        }
    }

    if (indices_ok) {
        UnionFind uf(n);
        for (const auto& e : inst.red_edges())
            uf.unite(e.u, e.v);
        if (uf.components() != 1)
            report.problems.push_back("red subgraph not spanning");
    }
    return report;
}

void require_valid(const StackInstance& inst)
{
    const auto report = validate(inst);
    if (!report.ok())
        throw ValidationError(report.message());
}

namespace {

std::vector<std::string> tokenize(std::string_view line)
{
    std::vector<std::string> tokens;
    std::istringstream ss{std::string(line)};
    std::string tok;
    while (ss >> tok)
        tokens.push_back(tok);
    return tokens;
}

std::size_t parse_index(const std::string& tok, std::size_t line, const char* what)
{
    std::size_t value = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line, std::string("expected a nonnegative integer for ") + what + ", got '" + tok + "'");
    return value;
}

/// Splits text into (line number, content) pairs with comments and blank
/// lines removed.
std::vector<std::pair<std::size_t, std::string_view>> significant_lines(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        out.emplace_back(lineno, line.substr(first, last - first + 1));
    }
    return out;
}

} // namespace

StackInstance parse_instance(std::string_view text)
{
    const auto lines = significant_lines(text);
    if (lines.empty())
        throw ParseError(1, "empty input, expected 'stackmst v1'");

    auto it = lines.begin();
    if (tokenize(it->second) != std::vector<std::string>{"stackmst", "v1"})
        throw ParseError(it->first, "expected header 'stackmst v1'");
    ++it;

    std::optional<std::size_t> vertices;
    std::vector<RedEdge> red;
    std::vector<BlueEdge> blue;

    for (; it != lines.end(); ++it) {
        const std::size_t lineno = it->first;
        const auto tokens = tokenize(it->second);
        const std::string& kind = tokens.front();

        if (kind == "vertices") {
            if (tokens.size() != 2)
                throw ParseError(lineno, "expected 'vertices <n>'");
            if (vertices)
                throw ParseError(lineno, "duplicate 'vertices' line");
            vertices = parse_index(tokens[1], lineno, "vertex count");
            if (*vertices == 0)
                throw ParseError(lineno, "vertex count must be positive");
            continue;
        }

        if (kind != "red" && kind != "blue")
            throw ParseError(lineno, "unknown directive '" + kind + "'");
        if (!vertices)
            throw ParseError(lineno, "'vertices' must precede edges");

        const std::size_t arity = kind == "red" ? 4 : 3;
        if (tokens.size() != arity)
            throw ParseError(lineno, kind == "red" ? "expected 'red <u> <v> <cost>'" : "expected 'blue <u> <v>'");

        const std::size_t u = parse_index(tokens[1], lineno, "vertex");
        const std::size_t v = parse_index(tokens[2], lineno, "vertex");
        if (u >= *vertices || v >= *vertices)
            throw ParseError(lineno, "vertex index out of range");

        if (kind == "blue") {
            blue.push_back({u, v});
            continue;
        }

        Rational cost;
        try {
            cost = parse_rational(tokens[3]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
        if (cost < 0)
            throw ParseError(lineno, "negative cost");
        red.push_back({u, v, std::move(cost)});
    }

    if (!vertices)
        throw ParseError(lines.back().first, "missing 'vertices' line");

    StackInstance inst(*vertices, std::move(red), std::move(blue));
    require_valid(inst);
    return inst;
}

StackInstance parse_instance(std::istream& in)
{
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_instance(std::string_view{text});
}

std::string serialize_instance(const StackInstance& inst)
{
    std::string out = "stackmst v1\nvertices " + std::to_string(inst.vertex_count()) + "\n";
    for (const auto& e : inst.red_edges())
        out += "red " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + to_string(e.cost) + "\n";
    for (const auto& e : inst.blue_edges())
        out += "blue " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

PriceAssignment parse_prices(std::string_view text, std::size_t blue_count)
{
    PriceAssignment prices(blue_count);
    std::vector<bool> seen(blue_count, false);
    for (const auto& [lineno, line] : significant_lines(text)) {
        const auto tokens = tokenize(line);
        if (tokens.size() != 3 || tokens[0] != "price")
            throw ParseError(lineno, "expected 'price <blue_id> <rational|inf>'");
        const std::size_t id = parse_index(tokens[1], lineno, "blue id");
        if (id >= blue_count)
            throw ParseError(lineno, "blue id out of range");
        if (seen[id])
            throw ParseError(lineno, "duplicate price for blue id " + std::to_string(id));
        seen[id] = true;
        if (tokens[2] == "inf")
            continue;
        try {
            prices.set(id, parse_rational(tokens[2]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return prices;
}

std::string serialize_prices(const PriceAssignment& prices)
{
    std::string out;
    for (std::size_t id = 0; id < prices.size(); ++id)
        out += "price " + std::to_string(id) + " " + (prices[id] ? to_string(*prices[id]) : std::string("inf")) + "\n";
    return out;
}

StackInstance contract_zero_red(const StackInstance& inst)
{
    const bool has_zero = std::any_of(inst.red_edges().begin(), inst.red_edges().end(),
                                      [](const RedEdge& e) { return e.cost == 0; });
    if (!has_zero)
        return inst;

    UnionFind uf(inst.vertex_count());
    for (const auto& e : inst.red_edges())
        if (e.cost == 0)
            uf.unite(e.u, e.v);

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> root_label(inst.vertex_count(), unset);
    std::vector<std::size_t> label(inst.vertex_count());
    std::size_t next = 0;
    for (std::size_t v = 0; v < inst.vertex_count(); ++v) {
        const std::size_t r = uf.find(v);
        if (root_label[r] == unset)
            root_label[r] = next++;
        label[v] = root_label[r];
    }

    std::vector<RedEdge> red;
    for (const auto& e : inst.red_edges())
        if (e.cost != 0)
            red.push_back({label[e.u], label[e.v], e.cost});
    std::vector<BlueEdge> blue;
    blue.reserve(inst.blue_count());
    for (const auto& e : inst.blue_edges())
        blue.push_back({label[e.u], label[e.v]});
    return StackInstance(next, std::move(red), std::move(blue));
}

CostLadder cost_ladder(const StackInstance& inst)
{
    CostLadder ladder;
    for (const auto& e : inst.red_edges())
        ladder.costs.push_back(e.cost);
    std::sort(ladder.costs.begin(), ladder.costs.end());
    ladder.costs.erase(std::unique(ladder.costs.begin(), ladder.costs.end()), ladder.costs.end());
    return ladder;
}

} // namespace stackmst
