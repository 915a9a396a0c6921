#include <doctest.h>

#include "bfds/system.hpp"
#include "oracles.hpp"

using namespace bfds;

namespace {

const SelectionKind kSelections[] = {SelectionKind::Fixed, SelectionKind::Coordinated, SelectionKind::Individual,
                                     SelectionKind::SemiCoordinated};
const ScheduleKind kSchedules[] = {ScheduleKind::Parallel, ScheduleKind::FixedPermutation, ScheduleKind::PermutationList,
                                   ScheduleKind::ArbitraryPermutation, ScheduleKind::Asynchronous};

}  // namespace

TEST_CASE("config string and index use node 1 as the leading bit") {
    const auto c = Config::from_string("100");
    CHECK(c.node(1));
    CHECK_FALSE(c.node(3));
    CHECK(c.index() == 4);
    CHECK(Config::from_index(3, 4) == c);
    CHECK(c.str() == "100");
    CHECK(Config::from_string("011") < Config::from_string("100"));
    CHECK_THROWS_AS(Config::from_string("01x"), InputError);
}

TEST_CASE("configs wider than one word keep ascending order") {
    std::string a(70, '0');
    std::string b(70, '0');
    a[69] = '1';
    b[0] = '1';
    CHECK(Config::from_string(a) < Config::from_string(b));
    CHECK(Config::from_string(a).concat(Config::from_string("1")).str() == a + "1");
    CHECK(Config::from_string(b).slice(0, 2).str() == "10");
}

TEST_CASE("function evaluation") {
    const auto c = Config::from_string("101");
    CHECK(eval_function(NodeFunction::pos(1), c));
    CHECK_FALSE(eval_function(NodeFunction::neg(3), c));
    CHECK(eval_function(NodeFunction::any_of({2, 3}), c));
    CHECK_FALSE(eval_function(NodeFunction::all_of({1, 2}), c));
    CHECK(eval_function(NodeFunction::constant(true), c));
    // Table: first source is the high bit of the row index. Rows 00,01,10,11 -> 0,1,1,0 (xor).
    const auto x = NodeFunction::make_table({1, 2}, {0, 1, 1, 0});
    CHECK(eval_function(x, c));
    CHECK_FALSE(eval_function(x, Config::from_string("111")));
}

TEST_CASE("parallel and sequential steps differ on a swap") {
    System sys(2, 1);
    sys.fn(1, 1) = NodeFunction::pos(2);
    sys.fn(2, 1) = NodeFunction::pos(1);
    const auto c = Config::from_string("01");
    CHECK(step_parallel(sys, c, {1, 1}).str() == "10");
    CHECK(step_sequential(sys, c, {1, 1}, {1, 2}).str() == "11");
    CHECK(step_sequential(sys, c, {1, 1}, {2, 1}).str() == "00");
    CHECK(step_async(sys, c, {1, 1}, AsyncPlan{{{1, 2}}}).str() == "10");
}

TEST_CASE("validation rejects malformed systems") {
    CHECK_THROWS_AS(System(0, 1), InputError);
    System sys(2, 1);
    sys.fn(1, 1) = NodeFunction::pos(3);
    CHECK_THROWS_AS(sys.validate(), InputError);
    sys.fn(1, 1) = NodeFunction::make_table({1, 2}, {0, 1});
    CHECK_THROWS_AS(sys.validate(), InputError);
    sys.fn(1, 1) = NodeFunction::pos(1);
    sys.schedule.kind = ScheduleKind::FixedPermutation;
    sys.schedule.perms = {{1, 1}};
    CHECK_THROWS_AS(sys.validate(), InputError);
    sys.schedule.perms = {{2, 1}};
    CHECK_NOTHROW(sys.validate());
    sys.selection.kind = SelectionKind::SemiCoordinated;
    sys.selection.blocks = {{1}};
    CHECK_THROWS_AS(sys.validate(), InputError);
}

TEST_CASE("action counts match enumeration and async plan recurrence") {
    std::mt19937_64 rng(7);
    for (auto sel : kSelections)
        for (auto sch : kSchedules) {
            const auto sys = oracle::random_system(rng, 3, 2, sel, sch);
            CHECK(count_actions(sys) == enumerate_actions(sys).size());
        }
    // Ordered partitions of every node subset: twice the Fubini numbers 1, 3, 13, 75.
    const std::uint64_t plans[] = {2, 6, 26, 150};
    for (int n = 1; n <= 4; ++n) {
        System sys(n, 1);
        sys.schedule.kind = ScheduleKind::Asynchronous;
        CHECK(count_actions(sys) == plans[n - 1]);
        CHECK(oracle::all_plans(n).size() == plans[n - 1]);
    }
    System big(30, 2);
    big.selection.kind = SelectionKind::Individual;
    CHECK_THROWS_AS(enumerate_actions(big, 1000), ResourceError);
}

TEST_CASE("successors agree with direct enumeration for every model") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 3; ++rep)
        for (auto sel : kSelections)
            for (auto sch : kSchedules) {
                const int n = 2 + static_cast<int>(rng() % 3);
                const auto sys = oracle::random_system(rng, n, 2, sel, sch);
                const auto c = oracle::random_config(rng, n);
                const auto expect = oracle::images(sys, c);
                const auto got = successors(sys, c);
                std::set<Config> keys;
                for (const auto& [d, info] : got) {
                    keys.insert(d);
                    CHECK(apply_action(sys, c, info.witness) == d);
                    CHECK(info.labels >= 1);
                }
                CHECK(keys == expect);
                const auto fast = successor_set(sys, c);
                CHECK(std::set<Config>(fast.begin(), fast.end()) == expect);
            }
}

TEST_CASE("async singleton plans are sequential sweeps and the full group is parallel") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto sys = oracle::random_system(rng, n, 2, SelectionKind::Individual, ScheduleKind::Asynchronous);
        const auto c = oracle::random_config(rng, n);
        std::vector<int> J(static_cast<std::size_t>(n));
        for (auto& j : J) j = 1 + static_cast<int>(rng() % 2);
        const auto p = oracle::random_perm(rng, n);
        AsyncPlan singles;
        for (int v : p) singles.groups.push_back({v});
        CHECK(step_async(sys, c, J, singles) == step_sequential(sys, c, J, p));
        CHECK(step_async(sys, c, J, AsyncPlan{{p}}) == step_parallel(sys, c, J));
    }
}
