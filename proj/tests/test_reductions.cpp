#include <doctest.h>

#include "bfds/analysis.hpp"
#include "bfds/config_graph.hpp"
#include "bfds/reductions.hpp"
#include "oracles.hpp"

using namespace bfds;

namespace {

CnfFormula cnf(int n, std::vector<std::vector<int>> clauses) { return CnfFormula{n, std::move(clauses)}; }

// Gadget answer by layered breadth-first search, independent of the constraint solver.
bool gadget_oracle(const ReductionInstance& inst) {
    REQUIRE(inst.system.n <= 14);
    if (inst.exact_horizon) return oracle::layer(inst.system, inst.start, *inst.horizon).contains(inst.target);
    for (int t = 1; t <= *inst.horizon; ++t)
        if (oracle::layer(inst.system, inst.start, t).contains(inst.target)) return true;
    return false;
}

}  // namespace

TEST_CASE("dimacs parse and emit") {
    const auto f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1\n2 0\n");
    CHECK(f.n == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1] == std::vector<int>{-1, 2});
    CHECK(to_dimacs(f) == "p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), InputError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), InputError);
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), InputError);
}

TEST_CASE("sat and count helpers match the oracle") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 50; ++rep) {
        const auto f = oracle::random_cnf(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 8), 3);
        CHECK(satisfiable(f) == oracle::sat_oracle(f));
        CHECK(model_count(f) == oracle::count_oracle(f));
    }
}

TEST_CASE("three-step unary gadget") {
    const auto sat = reduce_3sat_unary_t3(cnf(1, {{1, 1, 1}}));
    CHECK(sat.system.n == 2 + 6 * 1 + 3 * 1);
    CHECK(decide_instance(sat));
    const auto unsat = reduce_3sat_unary_t3(cnf(1, {{1, 1, 1}, {-1, -1, -1}}));
    CHECK_FALSE(decide_instance(unsat));
    // C_1 = x4 | ~x5 | ~x9: alpha_1 reads b_{4,1} and b_{5,0}.
    const auto wide = reduce_3sat_unary_t3(cnf(9, {{4, -5, -9}}));
    const int alpha1 = 3 + 4 * 9;
    auto b = [](int i, int x) { return 3 + 2 * (i - 1) + x; };
    CHECK(wide.system.fn(alpha1, 1).srcs == std::vector<int>{b(4, 1)});
    CHECK(wide.system.fn(alpha1, 2).srcs == std::vector<int>{b(5, 0)});
    CHECK(wide.system.fn(alpha1 + 1, 2).srcs == std::vector<int>{b(9, 0)});
    CHECK_THROWS_AS(reduce_3sat_unary_t3(cnf(2, {{1, 2}})), InputError);
}

TEST_CASE("gadgets agree with satisfiability on random small formulas") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 4);
        const auto f3 = oracle::random_cnf(rng, n, m, 3);
        const auto f2 = oracle::random_cnf(rng, n, m, 2);
        const bool s3 = oracle::sat_oracle(f3);
        const auto t3 = reduce_3sat_unary_t3(f3);
        CHECK(decide_instance(t3) == s3);
        const auto k3 = reduce_3sat_k3_t2(f3);
        CHECK(decide_instance(k3) == s3);
        const auto t2 = reduce_2sat_t2(f2);
        CHECK(decide_instance(t2) == oracle::sat_oracle(f2));
        CHECK(verify_reduction(reduce_3sat_permlist(f3), s3).agree());
    }
}

TEST_CASE("gadget answers match layered enumeration on the smallest formulas") {
    for (const auto& f : {cnf(1, {{1, 1, 1}}), cnf(1, {{1, -1, 1}}), cnf(1, {{1, 1, 1}, {-1, -1, -1}})}) {
        CHECK(gadget_oracle(reduce_3sat_unary_t3(f)) == oracle::sat_oracle(f));
        CHECK(gadget_oracle(reduce_3sat_k3_t2(f)) == oracle::sat_oracle(f));
    }
}

TEST_CASE("2-choice gadgets never reach the target early") {
    const auto inst = reduce_3sat_unary_t3(cnf(2, {{1, 2, -1}}));
    CHECK_FALSE(reach_exactly(inst.system, inst.start, inst.target, 1).has_value());
    CHECK_FALSE(reach_exactly(inst.system, inst.start, inst.target, 2).has_value());
    CHECK(reach_exactly(inst.system, inst.start, inst.target, 3).has_value());
}

TEST_CASE("parsimonious gadget counts models") {
    CHECK(count_simple_paths(reduce_parsimonious_count(cnf(3, {{1, 2, 3}})).system,
                             reduce_parsimonious_count(cnf(3, {{1, 2, 3}})).start,
                             reduce_parsimonious_count(cnf(3, {{1, 2, 3}})).target) == 7);
    const auto unsat = reduce_parsimonious_count(cnf(1, {{1, 1, 1}, {-1, -1, -1}}));
    CHECK(count_simple_paths(unsat.system, unsat.start, unsat.target) == 0);
    const int gamma1 = 3 + 4 * 3;
    CHECK(unsat.system.k == 4);
    const auto g = reduce_parsimonious_count(cnf(3, {{1, -2, 3}}));
    std::set<int> srcs;
    for (int j = 1; j <= 4; ++j) srcs.insert(g.system.fn(gamma1, j).srcs[0]);
    CHECK(srcs.size() == 4);
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 6; ++rep) {
        const auto f = oracle::random_cnf(rng, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3), 3);
        const auto inst = reduce_parsimonious_count(f);
        CHECK(count_simple_paths(inst.system, inst.start, inst.target) == oracle::count_oracle(f));
    }
}

TEST_CASE("coordinated gadget hits the target exactly at 2n+3") {
    const auto inst = reduce_3sat_coordinated(cnf(1, {{1, 1, 1}}));
    CHECK(inst.system.n == 2 * 2 + 3 + 9 + 3 + 7);
    const auto layers = bfs_layers(inst.system, inst.start, 6);
    for (int depth = 0; depth <= 6; ++depth) {
        const auto& l = layers[static_cast<std::size_t>(depth)];
        CHECK((std::find(l.begin(), l.end(), inst.target) != l.end()) == (depth == 5));
    }
    const auto unsat = reduce_3sat_coordinated(cnf(1, {{1, 1, 1}, {-1, -1, -1}}));
    for (const auto& l : bfs_layers(unsat.system, unsat.start, 6))
        CHECK(std::find(l.begin(), l.end(), unsat.target) == l.end());
    // Every group moves the step-counting token forward.
    const int t0 = inst.system.n - (2 * 1 + 4);
    for (int j = 1; j <= 4; ++j) CHECK(inst.system.fn(t0 + 1, j).srcs == std::vector<int>{t0});
}

TEST_CASE("permutation-list gadget") {
    const auto inst = reduce_3sat_permlist(cnf(1, {{1, -1, 1}}));
    REQUIRE(inst.system.schedule.perms.size() == 2);
    const auto& pi = inst.system.schedule.perms[0];
    CHECK(pi[0] == 1);
    CHECK(pi[1] == 2);
    CHECK(is_permutation(inst.system.schedule.perms[1], inst.system.n));
    // pi then sigma reaches the target.
    const auto after = oracle::layer(inst.system, inst.start, 2);
    CHECK(after.contains(inst.target));
    CHECK_FALSE(decide_instance(reduce_3sat_permlist(cnf(1, {{1, 1, 1}, {-1, -1, -1}}))));
}

TEST_CASE("graph isomorphism gadget") {
    SimpleGraph e12{3, {{1, 2}}};
    SimpleGraph e13{3, {{1, 3}}};
    CHECK(decide_instance(reduce_graph_iso(e12, e12)));
    CHECK(decide_instance(reduce_graph_iso(e12, e13)));
    SimpleGraph path{4, {{1, 2}, {2, 3}, {3, 4}}};
    SimpleGraph star{4, {{1, 2}, {1, 3}, {1, 4}}};
    CHECK_FALSE(decide_instance(reduce_graph_iso(path, star)));
    CHECK_FALSE(isomorphic(path, star));
    CHECK_THROWS_AS(reduce_graph_iso(e12, path), InputError);
    const auto text = to_edge_list(path);
    const auto back = parse_edge_list(text);
    CHECK(back.n == 4);
    CHECK(back.edges == path.edges);
    CHECK_THROWS_AS(parse_edge_list("n 3\n1 1\n"), InputError);
}

TEST_CASE("extract_2cnf follows the clause rules") {
    System sys(3, 2);
    sys.selection.kind = SelectionKind::Individual;
    sys.fn(1, 1) = NodeFunction::pos(2);
    sys.fn(1, 2) = NodeFunction::pos(3);
    sys.fn(2, 1) = sys.fn(2, 2) = NodeFunction::pos(1);
    sys.fn(3, 1) = sys.fn(3, 2) = NodeFunction::pos(3);
    const auto f = extract_2cnf(sys, Config::from_string("100"), Config::from_string("100"));
    CHECK(std::find(f.clauses.begin(), f.clauses.end(), std::vector<int>{2, 3}) != f.clauses.end());
    CHECK(std::find(f.clauses.begin(), f.clauses.end(), std::vector<int>{2}) != f.clauses.end());

    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto s = oracle::random_system(rng, n, 2, SelectionKind::Individual, ScheduleKind::Parallel, oracle::FnMix::Unary);
        for (const auto& c : oracle::all_configs(n)) {
            const auto two = oracle::layer(s, c, 2);
            for (const auto& d : oracle::all_configs(n)) CHECK(oracle::sat_oracle(extract_2cnf(s, c, d)) == two.contains(d));
        }
    }
    System bad(2, 2);
    bad.selection.kind = SelectionKind::Coordinated;
    CHECK_THROWS_AS(extract_2cnf(bad, Config(2), Config(2)), InputError);
}

TEST_CASE("structural generators") {
    const auto near = build_near_connected(4);
    CHECK(near.fn(2, 1).srcs == std::vector<int>{4});
    CHECK(near.fn(2, 2).srcs == std::vector<int>{1});
    const auto zero = Config(4);
    const auto r0 = reachable_set(near, zero, 100);
    CHECK(r0.size() == 1);
    for (const auto& c : oracle::all_configs(4)) {
        const auto r = reachable_set(near, c, 100);
        const bool mixed = c != Config(4) && c != Config::from_string("1111");
        CHECK(r.size() == (mixed ? 16U : 1U));
    }
    const auto cyc = build_cyclic_connected(3);
    CHECK(cyc.fn(1, 2).kind == FnKind::Neg);
    CHECK(cyc.fn(2, 2).srcs == std::vector<int>{2});
    for (const auto& c : oracle::all_configs(3)) CHECK(reachable_set(cyc, c, 100).size() == 8);
    CHECK_THROWS_AS(build_near_connected(3), InputError);
    CHECK_THROWS_AS(build_cyclic_connected(1), InputError);
}
