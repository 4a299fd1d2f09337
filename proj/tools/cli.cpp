#include "cli.hpp"

#include "stackmst/errors.hpp"
#include "stackmst/generators.hpp"
#include "stackmst/lp.hpp"
#include "stackmst/mst.hpp"
#include "stackmst/pricing.hpp"
#include "stackmst/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

namespace stackmst::cli {

using nlohmann::json;

std::string instance_digest(const std::string& canonical_text)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : canonical_text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string csv_field(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

namespace {

std::string read_source(const std::string& path, std::istream& in)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot write '" + path + "'");
    file << text;
}

std::string approx(const Rational& value)
{
    std::ostringstream ss;
    ss << std::setprecision(6) << to_double(value);
    return ss.str();
}

std::string approx(double value)
{
    std::ostringstream ss;
    ss << std::setprecision(6) << value;
    return ss.str();
}

std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoul(item));
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_rational(item));
    return out;
}

/// Wall time is reported only on request; everything else is a function
/// of the flags and input bytes.
class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SetCoverInstance sample_setcover()
{
    return {6, {{1, 2, 3, 4, 6}, {3, 4, 6}, {5, 6}}};
}

SimpleGraph named_graph(const std::string& name)
{
    if (name == "K3")
        return {3, {{0, 1}, {1, 2}, {0, 2}}};
    if (name == "C4")
        return {4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
    if (name == "K4-e")
        return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}};
    if (name == "K4")
        return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    throw std::invalid_argument("unknown graph '" + name + "' (known: K3, C4, K4-e, K4)");
}

json solution_json(const Solution& sol)
{
    json prices = json::array();
    for (std::size_t id = 0; id < sol.prices.size(); ++id)
        prices.push_back(sol.prices[id] ? to_string(*sol.prices[id]) : std::string("inf"));
    return {{"algorithm", sol.algorithm}, {"revenue", to_string(sol.revenue)}, {"forest", sol.forest.ids},
            {"prices", prices}, {"work", sol.work}};
}

void print_solution_text(std::ostream& out, const Solution& sol, bool with_float)
{
    out << "algorithm " << sol.algorithm << "\n";
    out << "revenue " << to_string(sol.revenue) << "\n";
    if (with_float)
        out << "revenue_float " << approx(sol.revenue) << "\n";
    out << "forest";
    for (const std::size_t id : sol.forest.ids)
        out << " " << id;
    out << "\n" << serialize_prices(sol.prices);
    out << "work " << sol.work << "\n";
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    std::string algo = "exact";
    std::string input;
    std::string output = "text";
    std::optional<std::uint64_t> budget;
    unsigned threads = 1;
    std::string meta;
    bool with_float = false;
    bool timing = false;
};

int cmd_solve(const SolveArgs& args, std::istream& in, std::ostream& out)
{
    const Stopwatch clock;
    const std::string text = read_source(args.input, in);
    const auto inst = parse_instance(text);

    SolverOptions options;
    options.threads = args.threads;
    if (args.budget) {
        options.forest_budget = *args.budget;
        options.oracle_budget = *args.budget;
    }

    Solution sol;
    std::vector<UniformPriceRow> table;
    if (args.algo == "exact") {
        sol = solve_exact(inst, options);
    } else if (args.algo == "oracle") {
        sol = solve_oracle(inst, options);
    } else {
        auto bok = best_out_of_k(inst);
        sol = std::move(bok.solution);
        table = std::move(bok.table);
    }

    std::optional<std::vector<std::size_t>> cover;
    if (!args.meta.empty())
        cover = cover_from_solution(parse_meta(read_source(args.meta, in)), sol);

    const std::string digest = instance_digest(serialize_instance(inst));
    if (args.output == "json") {
        json j = solution_json(sol);
        j["command"] = "solve";
        j["digest"] = digest;
        if (args.algo == "exact")
            j["budget"] = options.forest_budget;
        else if (args.algo == "oracle")
            j["budget"] = options.oracle_budget;
        if (!table.empty()) {
            j["table"] = json::array();
            for (const auto& row : table)
                j["table"].push_back(
                    {{"price", to_string(row.price)}, {"blue_count", row.blue_count}, {"revenue", to_string(row.revenue)}});
        }
        if (cover)
            j["cover"] = *cover;
        if (args.with_float)
            j["revenue_float"] = to_double(sol.revenue);
        if (args.timing)
            j["wall_ms"] = clock.elapsed_ms();
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    out << "digest " << digest << "\n";
    print_solution_text(out, sol, args.with_float);
    for (const auto& row : table)
        out << "uniform " << to_string(row.price) << " " << row.blue_count << " " << to_string(row.revenue) << "\n";
    if (cover) {
        out << "cover";
        for (const std::size_t j : *cover)
            out << " " << j;
        out << "\ncover_size " << cover->size() << "\n";
    }
    if (args.timing)
        out << "wall_ms " << clock.elapsed_ms() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// lp

struct LpArgs {
    std::string input;
    std::string report = "gap";
    std::string output = "text";
    std::optional<std::uint64_t> budget;
    std::size_t max_rounds = 10'000;
    std::string dump;
    bool with_float = false;
    bool timing = false;
};

int cmd_lp(const LpArgs& args, std::istream& in, std::ostream& out)
{
    const Stopwatch clock;
    const auto original = parse_instance(read_source(args.input, in));
    const auto inst = contract_zero_red(original);
    const bool contracted = !(inst == original);

    LPOptions lp_options;
    lp_options.max_rounds = args.max_rounds;
    SolverOptions solver;
    if (args.budget)
        solver.forest_budget = *args.budget;

    json j;
    j["command"] = "lp";
    j["digest"] = instance_digest(serialize_instance(original));
    if (contracted)
        j["contracted_zero_red"] = true;

    LPResult lp;
    if (args.report == "gap") {
        auto gap = gap_report(inst, solver, lp_options);
        lp = std::move(gap.lp_detail);
        j["ip"] = to_string(gap.ip);
        j["ratio"] = gap.ratio ? to_string(*gap.ratio) : std::string("undefined");
        j["bound_k"] = gap.bounds.k;
        if (gap.bounds.log_b)
            j["bound_log_b"] = *gap.bounds.log_b;
        if (gap.bounds.log_w)
            j["bound_log_w"] = *gap.bounds.log_w;
        j["within_bounds"] = gap.within_bounds;
        if (args.with_float && gap.ratio)
            j["ratio_float"] = to_double(*gap.ratio);
    } else {
        lp = solve_lp(inst, lp_options);
    }
    j["lp"] = to_string(lp.value);
    j["cuts"] = lp.cuts_added;
    j["partition_cuts"] = lp.model.count(CutKind::partition);
    j["path_cuts"] = lp.model.count(CutKind::path);
    j["rounds"] = lp.rounds;
    j["pivots"] = lp.pivots;
    if (args.with_float)
        j["lp_float"] = to_double(lp.value);
    if (args.report == "point") {
        j["point"] = json::object();
        for (std::size_t i = 0; i < lp.point.size(); ++i)
            j["point"][lp.model.variable_name(i)] = to_string(lp.point[i]);
    }
    if (!args.dump.empty())
        write_file(args.dump, dump_lp(lp.model));
    if (args.timing)
        j["wall_ms"] = clock.elapsed_ms();

    if (args.output == "json") {
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    // Fixed key order for the text report.
    const char* order[] = {"digest", "contracted_zero_red", "lp", "lp_float", "ip", "ratio", "ratio_float",
                           "bound_k", "bound_log_b", "bound_log_w", "within_bounds", "cuts", "partition_cuts",
                           "path_cuts", "rounds", "pivots", "wall_ms"};
    for (const char* key : order) {
        if (!j.contains(key))
            continue;
        const auto& v = j[key];
        out << key << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    if (args.report == "point")
        for (std::size_t i = 0; i < lp.point.size(); ++i)
            out << lp.model.variable_name(i) << " " << to_string(lp.point[i]) << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::string family;
    std::size_t k = 0;
    std::size_t a = 2;
    std::optional<std::size_t> pad_to_b;
    std::size_t n = 0;
    std::vector<std::string> sets;
    bool normalize = false;
    bool sample = false;
    std::string graph;
    std::size_t graph_vertices = 0;
    std::vector<std::string> graph_edges;
    std::size_t red_extra = 0;
    std::size_t b = 0;
    std::string costs = "1,2,3";
    std::uint64_t seed = 0;
    std::string meta;
};

int cmd_gen(const GenArgs& args, std::ostream& out)
{
    StackInstance inst;
    std::optional<ReductionMeta> meta;

    if (args.family == "setcover") {
        SetCoverInstance sc;
        if (args.sample) {
            sc = sample_setcover();
        } else {
            sc.universe = args.n;
            for (const auto& s : args.sets)
                sc.sets.push_back(parse_list(s));
        }
        if (args.normalize)
            sc = normalize_setcover(std::move(sc));
        auto reduced = gen_setcover(sc);
        inst = std::move(reduced.instance);
        meta = std::move(reduced.meta);
    } else if (args.family == "vertexcover") {
        SimpleGraph graph;
        if (!args.graph.empty()) {
            graph = named_graph(args.graph);
        } else {
            graph.vertices = args.graph_vertices;
            for (const auto& e : args.graph_edges) {
                const auto dash = e.find('-');
                if (dash == std::string::npos)
                    throw std::invalid_argument("edge '" + e + "' must look like u-v");
                graph.edges.emplace_back(std::stoul(e.substr(0, dash)), std::stoul(e.substr(dash + 1)));
            }
        }
        auto reduced = gen_vertexcover(graph);
        inst = std::move(reduced.instance);
        meta = std::move(reduced.meta);
    } else if (args.family == "harmonic") {
        inst = gen_harmonic(args.k);
    } else if (args.family == "geometric") {
        inst = gen_geometric(args.k, args.a);
    } else if (args.family == "gap") {
        inst = gen_gap(args.k, args.a, args.pad_to_b);
    } else {
        inst = gen_random(args.n, args.red_extra, args.b, parse_rational_list(args.costs), args.seed);
    }

    require_valid(inst);
    out << serialize_instance(inst);
    if (!args.meta.empty()) {
        if (!meta)
            throw std::invalid_argument("family '" + args.family + "' has no reduction metadata");
        write_file(args.meta, serialize_meta(*meta));
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::string suite;
    std::size_t max_k = 6;
    std::size_t max_a = 5;
    std::optional<std::uint64_t> budget;
};

struct BenchCase {
    std::string family;
    std::string params;
    StackInstance inst;
};

std::vector<BenchCase> bench_cases(const BenchArgs& args)
{
    std::vector<BenchCase> cases;
    auto params = [](std::size_t k, std::size_t a) { return "k=" + std::to_string(k) + ";a=" + std::to_string(a); };
    if (args.suite == "ratios") {
        for (std::size_t k = 1; k <= args.max_k; ++k)
            cases.push_back({"harmonic", "k=" + std::to_string(k), gen_harmonic(k)});
        for (const auto& [k, a] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}})
            if (k <= args.max_k && a <= args.max_a)
                cases.push_back({"geometric", params(k, a), gen_geometric(k, a)});
    } else if (args.suite == "gaps") {
        for (std::size_t a = 2; a <= args.max_a; ++a)
            cases.push_back({"gap", params(2, a), gen_gap(2, a)});
        if (args.max_k >= 3) {
            cases.push_back({"gap", params(3, 2), gen_gap(3, 2)});
            cases.push_back({"gap", params(3, 2) + ";b=7", gen_gap(3, 2, 7)});
        }
    } else {
        cases.push_back({"setcover", "sample", gen_setcover(sample_setcover()).instance});
        for (const char* g : {"K3", "C4", "K4-e"})
            cases.push_back({"vertexcover", std::string("H=") + g, gen_vertexcover(named_graph(g)).instance});
        cases.push_back({"harmonic", "k=3", gen_harmonic(3)});
        cases.push_back({"geometric", params(2, 2), gen_geometric(2, 2)});
        cases.push_back({"gap", params(2, 2), gen_gap(2, 2)});
    }
    return cases;
}

int cmd_bench(const BenchArgs& args, std::ostream& out)
{
    SolverOptions solver;
    if (args.budget)
        solver.forest_budget = *args.budget;

    out << "family,params,opt,bok,ratio,bound_k,bound_log_b,bound_log_w,lp,ip,gap,ratio_float,gap_float\n";
    for (const auto& c : bench_cases(args)) {
        const auto ratio = ratio_report(c.inst, solver);
        const auto lp = solve_lp(c.inst);
        const Rational& ip = ratio.opt;
        std::optional<Rational> gap;
        if (ip != 0)
            gap = Rational(lp.value / ip);
        else if (lp.value == 0)
            gap = Rational(1);

        const std::vector<std::string> fields = {
            c.family,
            c.params,
            to_string(ratio.opt),
            to_string(ratio.bok),
            ratio.ratio ? to_string(*ratio.ratio) : "",
            std::to_string(ratio.bounds.k),
            ratio.bounds.log_b ? approx(*ratio.bounds.log_b) : "",
            ratio.bounds.log_w ? approx(*ratio.bounds.log_w) : "",
            to_string(lp.value),
            to_string(ip),
            gap ? to_string(*gap) : "",
            ratio.ratio ? approx(*ratio.ratio) : "",
            gap ? approx(*gap) : "",
        };
        for (std::size_t i = 0; i < fields.size(); ++i)
            out << (i ? "," : "") << csv_field(fields[i]);
        out << "\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::string input;
    std::string prices;
};

int cmd_eval(const EvalArgs& args, std::istream& in, std::ostream& out)
{
    const auto inst = parse_instance(read_source(args.input, in));
    const auto prices = parse_prices(read_source(args.prices, in), inst.blue_count());
    const auto tree = min_spanning_tree(inst, prices);
    out << "revenue " << to_string(tree.revenue) << "\n";
    out << "weight " << to_string(tree.total_weight) << "\n";
    out << "forest";
    for (const std::size_t id : tree.blue_ids)
        out << " " << id;
    out << "\n";
    const auto support = check_price_support(inst, prices);
    const auto obstruction = check_obstruction(inst, prices);
    out << "price_support " << (support ? "violation: " + support->message : std::string("ok")) << "\n";
    out << "obstruction " << (obstruction ? "violation: " + obstruction->message : std::string("ok")) << "\n";
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stackelberg minimum spanning tree toolkit", "stackmst"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve an instance");
    solve->add_option("--algo", solve_args.algo, "exact | bok | oracle")
        ->check(CLI::IsMember({"exact", "bok", "oracle"}));
    solve->add_option("--input", solve_args.input, "Instance file or - for stdin")->required();
    solve->add_option("--output", solve_args.output, "text | json")->check(CLI::IsMember({"text", "json"}));
    solve->add_option("--budget", solve_args.budget, "Forest (exact) or price-vector (oracle) budget");
    solve->add_option("--threads", solve_args.threads, "Workers for the exact solver")->check(CLI::Range(1u, 256u));
    solve->add_option("--meta", solve_args.meta, "Reduction sidecar; prints the extracted set cover");
    solve->add_flag("--float", solve_args.with_float, "Add approximate decimal values");
    solve->add_flag("--timing", solve_args.timing, "Report wall time");

    LpArgs lp_args;
    auto* lp = app.add_subcommand("lp", "Solve the LP relaxation by cutting planes");
    lp->add_option("--input", lp_args.input, "Instance file or - for stdin")->required();
    lp->add_option("--report", lp_args.report, "gap | value | point")
        ->check(CLI::IsMember({"gap", "value", "point"}));
    lp->add_option("--output", lp_args.output, "text | json")->check(CLI::IsMember({"text", "json"}));
    lp->add_option("--budget", lp_args.budget, "Forest budget for the integer optimum");
    lp->add_option("--max-rounds", lp_args.max_rounds, "Cutting-plane round cap");
    lp->add_option("--dump", lp_args.dump, "Write the final model listing to this file");
    lp->add_flag("--float", lp_args.with_float, "Add approximate decimal values");
    lp->add_flag("--timing", lp_args.timing, "Report wall time");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate an instance in v1 format");
    gen->require_subcommand(1);
    gen->add_option("--meta", gen_args.meta, "Write the reduction sidecar to this path");
    auto* gen_sc = gen->add_subcommand("setcover", "Set cover reduction");
    gen_sc->add_option("--n", gen_args.n, "Universe size");
    gen_sc->add_option("--set", gen_args.sets, "Comma-separated 1-based elements; repeat per set");
    gen_sc->add_flag("--normalize", gen_args.normalize, "Add a fresh element shared by every set");
    gen_sc->add_flag("--sample", gen_args.sample, "Six elements, sets {1,2,3,4,6} {3,4,6} {5,6}");
    gen_sc->add_option("--meta", gen_args.meta, "Write the reduction sidecar to this path");
    auto* gen_vc = gen->add_subcommand("vertexcover", "Vertex cover reduction");
    gen_vc->add_option("--graph", gen_args.graph, "K3 | C4 | K4-e | K4");
    gen_vc->add_option("--vertices", gen_args.graph_vertices, "Vertex count for --edge");
    gen_vc->add_option("--edge", gen_args.graph_edges, "Edge u-v (0-based); repeat");
    gen_vc->add_option("--meta", gen_args.meta, "Write the reduction sidecar to this path");
    auto* gen_h = gen->add_subcommand("harmonic", "Red path with costs 1/i, doubled by blue");
    gen_h->add_option("--k", gen_args.k)->required();
    auto* gen_g = gen->add_subcommand("geometric", "Path with a^{k-i} edges of cost a^{i-1}, doubled by blue");
    gen_g->add_option("--k", gen_args.k)->required();
    gen_g->add_option("--a", gen_args.a)->required();
    auto* gen_gap_cmd = gen->add_subcommand("gap", "Integrality-gap family");
    gen_gap_cmd->add_option("--k", gen_args.k)->required();
    gen_gap_cmd->add_option("--a", gen_args.a)->required();
    gen_gap_cmd->add_option("--pad-to-b", gen_args.pad_to_b, "Pad with parallel blue edges to this count");
    auto* gen_r = gen->add_subcommand("random", "Seeded random instance");
    gen_r->add_option("--n", gen_args.n, "Vertices")->required();
    gen_r->add_option("--red-extra", gen_args.red_extra, "Red edges beyond the spanning tree");
    gen_r->add_option("--b", gen_args.b, "Blue edges");
    gen_r->add_option("--costs", gen_args.costs, "Comma-separated cost pool");
    gen_r->add_option("--seed", gen_args.seed, "PRNG seed");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Benchmark table as CSV");
    bench->add_option("--suite", bench_args.suite, "ratios | gaps | families");
    bench->add_option("--max-k", bench_args.max_k, "Largest k");
    bench->add_option("--max-a", bench_args.max_a, "Largest a");
    bench->add_option("--budget", bench_args.budget, "Forest budget for the exact solver");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate a price file and check optimality conditions");
    eval->add_option("--input", eval_args.input, "Instance file or - for stdin")->required();
    eval->add_option("--prices", eval_args.prices, "Price file")->required();

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("stackmst");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (solve->parsed())
            return cmd_solve(solve_args, in, out);
        if (lp->parsed())
            return cmd_lp(lp_args, in, out);
        if (gen->parsed()) {
            for (auto* sub : {gen_sc, gen_vc, gen_h, gen_g, gen_gap_cmd, gen_r})
                if (sub->parsed())
                    gen_args.family = sub->get_name();
            return cmd_gen(gen_args, out);
        }
        if (bench->parsed()) {
            if (bench_args.suite != "ratios" && bench_args.suite != "gaps" && bench_args.suite != "families") {
                err << (bench_args.suite.empty() ? std::string("no suite selected")
                                                 : "unknown suite '" + bench_args.suite + "'")
                    << "\n"
                    << bench->help();
                return exit_invalid;
            }
            return cmd_bench(bench_args, out);
        }
        if (eval->parsed())
            return cmd_eval(eval_args, in, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const ParseError& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    } catch (const ValidationError& e) {
        err << "invalid instance: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    return exit_invalid;
}

} // namespace stackmst::cli
