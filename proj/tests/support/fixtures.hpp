// Small hand-built instances used across suites.
#ifndef STACKMST_TESTS_FIXTURES_HPP
#define STACKMST_TESTS_FIXTURES_HPP

#include "stackmst/generators.hpp"
#include "stackmst/instance.hpp"

namespace stackmst::testing {

/// Six elements; S_1 = {1,2,3,4,6}, S_2 = {3,4,6}, S_3 = {5,6}.
inline SetCoverInstance sample_setcover()
{
    return {6, {{1, 2, 3, 4, 6}, {3, 4, 6}, {5, 6}}};
}

inline StackInstance sample_instance()
{
    return gen_setcover(sample_setcover()).instance;
}

/// One red edge of cost 5 with a parallel blue edge.
inline StackInstance single_parallel(const Rational& cost = Rational(5))
{
    return StackInstance(2, {{0, 1, cost}}, {{0, 1}});
}

} // namespace stackmst::testing

#endif // STACKMST_TESTS_FIXTURES_HPP
