#include "stackmst/errors.hpp"
#include "stackmst/instance.hpp"
#include "stackmst/solvers.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <sstream>

using namespace stackmst;

TEST_CASE("rational parsing and rendering")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(to_string(make_rational(4, 2)) == "2");
    CHECK(to_string(Rational(-1, 3)) == "-1/3");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(from_double(0.5) == Rational(1, 2));
}

TEST_CASE("smallest valid instance")
{
    const auto inst = parse_instance("stackmst v1\nvertices 2\nred 0 1 5\nblue 0 1\n");
    CHECK(inst.vertex_count() == 2);
    REQUIRE(inst.red_count() == 1);
    CHECK(inst.red(0).cost == 5);
    CHECK(inst.blue_count() == 1);
}

TEST_CASE("comments, blank lines and stream input")
{
    std::istringstream in("# leading comment\nstackmst v1\n\nvertices 3 # trailing\nred 0 1 1/2\nred 1 2 2\n");
    const auto inst = parse_instance(in);
    CHECK(inst.vertex_count() == 3);
    CHECK(inst.red(0).cost == Rational(1, 2));
    CHECK(inst.blue_count() == 0);
}

TEST_CASE("parse errors carry the line")
{
    auto line_of = [](const char* text) {
        try {
            parse_instance(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("") == 1);
    CHECK(line_of("stackmst v2\nvertices 1\n") == 1);
    CHECK(line_of("stackmst v1\nred 0 1 1\nvertices 2\n") == 2);
    CHECK(line_of("stackmst v1\nvertices 2\nred 0 2 1\n") == 3);
    CHECK(line_of("stackmst v1\nvertices 2\nred 0 1 -1\n") == 3);
    CHECK(line_of("stackmst v1\nvertices 2\nred 0 1 x\n") == 3);
    CHECK(line_of("stackmst v1\nvertices 2\ngreen 0 1\n") == 3);
    CHECK(line_of("stackmst v1\nvertices 2\nvertices 2\n") == 3);
    CHECK(line_of("stackmst v1\nvertices 0\n") == 2);
    CHECK(line_of("stackmst v1\nvertices 2\nblue 0\n") == 3);
}

TEST_CASE("blue-only cut is rejected")
{
    CHECK_THROWS_WITH_AS(parse_instance("stackmst v1\nvertices 2\nblue 0 1\n"),
                         doctest::Contains("red subgraph not spanning"), ValidationError);
    CHECK_FALSE(validate(StackInstance(2, {}, {{0, 1}})).ok());
}

TEST_CASE("validate examples")
{
    CHECK(validate(StackInstance(1, {}, {})).ok());
    CHECK(validate(testing::sample_instance()).ok());
    CHECK_FALSE(validate(StackInstance(2, {{0, 1, Rational(-1)}}, {})).ok());
    CHECK_FALSE(validate(StackInstance(2, {{0, 2, Rational(1)}}, {})).ok());
    CHECK_FALSE(validate(StackInstance(2, {{0, 1, Rational(1)}}, {{0, 5}})).ok());
    CHECK_THROWS_AS(require_valid(StackInstance(3, {{0, 1, Rational(1)}}, {})), ValidationError);
}

TEST_CASE("sample instance file parses")
{
    const auto text = serialize_instance(testing::sample_instance());
    const auto inst = parse_instance(text);
    CHECK(inst.vertex_count() == 9);
    CHECK(inst.red_count() == 8);
    CHECK(inst.blue_count() == 10);
}

TEST_CASE("serialize then parse is the identity on the corpus")
{
    for (const auto& entry : testing::random_corpus(60)) {
        const auto text = serialize_instance(entry.instance);
        const auto back = parse_instance(text);
        CHECK_MESSAGE(back == entry.instance, testing::describe(entry));
        CHECK(serialize_instance(back) == text);
    }
}

TEST_CASE("price files")
{
    auto p = parse_prices("price 0 3/2\nprice 2 inf\n# note\n", 3);
    CHECK(p[0] == Rational(3, 2));
    CHECK_FALSE(p.priced(1));
    CHECK_FALSE(p.priced(2));
    CHECK(parse_prices(serialize_prices(p), 3) == p);
    CHECK_THROWS_AS(parse_prices("price 3 1\n", 3), ParseError);
    CHECK_THROWS_AS(parse_prices("price 0 1\nprice 0 2\n", 3), ParseError);
    CHECK_THROWS_AS(parse_prices("price 0 -\n", 3), ParseError);
}

TEST_CASE("cost ladder examples")
{
    const StackInstance inst(3, {{0, 1, Rational(2)}, {1, 2, Rational(1)}, {0, 2, Rational(2)}}, {});
    const auto ladder = cost_ladder(inst);
    CHECK(ladder.costs == std::vector<Rational>{1, 2});
    CHECK(ladder.k() == 2);
    CHECK(ladder.max_ratio() == Rational(2));
    CHECK(ladder.index_of(Rational(2)) == 1u);
    CHECK_FALSE(ladder.index_of(Rational(3)).has_value());

    CHECK(cost_ladder(testing::sample_instance()).costs == std::vector<Rational>{1, 2});

    const auto h = cost_ladder(gen_harmonic(4));
    CHECK(h.costs == std::vector<Rational>{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(1)});
    CHECK(h.max_ratio() == 4);

    CHECK_FALSE(cost_ladder(StackInstance(2, {{0, 1, Rational(0)}, {0, 1, Rational(3)}}, {})).max_ratio());
}

TEST_CASE("contract_zero_red without zero costs is a no-op")
{
    for (const auto& entry : testing::random_corpus(30))
        CHECK(contract_zero_red(entry.instance) == entry.instance);
}

TEST_CASE("contract_zero_red on a path keeps the optimum")
{
    // a-b cost 0, b-c cost 3, blue a-c
    const StackInstance inst(3, {{0, 1, Rational(0)}, {1, 2, Rational(3)}}, {{0, 2}});
    const auto merged = contract_zero_red(inst);
    CHECK(merged.vertex_count() == 2);
    REQUIRE(merged.red_count() == 1);
    CHECK(merged.red(0).cost == 3);
    REQUIRE(merged.blue_count() == 1);
    CHECK(merged.blue(0).u != merged.blue(0).v);
    CHECK(solve_exact(inst).revenue == 3);
    CHECK(solve_exact(merged).revenue == 3);
}

TEST_CASE("contract_zero_red on a zero triangle makes a loop")
{
    const StackInstance inst(3, {{0, 1, Rational(0)}, {1, 2, Rational(0)}, {0, 2, Rational(0)}}, {{0, 2}});
    const auto merged = contract_zero_red(inst);
    CHECK(merged.vertex_count() == 1);
    CHECK(merged.red_count() == 0);
    REQUIRE(merged.blue_count() == 1);
    CHECK(merged.blue(0).u == merged.blue(0).v);
    CHECK(solve_exact(merged).revenue == 0);
    CHECK(solve_exact(inst).revenue == 0);
}

TEST_CASE("contract_zero_red preserves the exact optimum")
{
    std::size_t zeroed = 0;
    for (const auto& entry : testing::random_corpus(120, 7, 8, 3000)) {
        auto red = entry.instance.red_edges();
        for (std::size_t i = 0; i < red.size(); i += 2)
            red[i].cost = 0;
        const StackInstance inst(entry.instance.vertex_count(), red, entry.instance.blue_edges());
        const auto merged = contract_zero_red(inst);
        const auto ladder = cost_ladder(merged).costs;
        CHECK((ladder.empty() || ladder.front() > 0));
        CHECK_MESSAGE(solve_exact(inst).revenue == solve_exact(merged).revenue, testing::describe(entry));
        zeroed += merged.vertex_count() < inst.vertex_count();
    }
    CHECK(zeroed > 50);
}
