#include <doctest.h>

#include <sstream>

#include "bfds/analysis.hpp"
#include "bfds/config_graph.hpp"
#include "oracles.hpp"

using namespace bfds;

namespace {

System swap_system() {
    System sys(2, 1);
    sys.fn(1, 1) = NodeFunction::pos(2);
    sys.fn(2, 1) = NodeFunction::pos(1);
    return sys;
}

// Counts node-simple paths (or simple cycles when c == d) by plain DFS.
std::uint64_t simple_paths_oracle(const System& sys, const Config& c, const Config& d) {
    std::set<Config> on_path{c};
    std::function<std::uint64_t(const Config&)> rec = [&](const Config& x) -> std::uint64_t {
        std::uint64_t total = 0;
        for (const auto& y : oracle::images(sys, x)) {
            if (y == d) {
                ++total;
                continue;
            }
            if (on_path.contains(y)) continue;
            on_path.insert(y);
            total += rec(y);
            on_path.erase(y);
        }
        return total;
    };
    return rec(c);
}

}  // namespace

TEST_CASE("swap system graph dump and reachability") {
    const auto sys = swap_system();
    std::ostringstream os;
    dump_graph(build_graph(sys), os);
    CHECK(os.str() == "00 00 1\n01 10 1\n10 01 1\n11 11 1\n");
    const auto r = reachability(sys, Config::from_string("01"), Config::from_string("10"), ReachMode::Any);
    CHECK(r.yes);
    CHECK(r.render() == "yes\npath: 01 10");
    CHECK(reachability(sys, Config::from_string("01"), Config::from_string("01"), ReachMode::MinLen).length == 2);
    CHECK_FALSE(reachability(sys, Config::from_string("01"), Config::from_string("11"), ReachMode::Any).yes);
}

TEST_CASE("deterministic solvers match the functional-graph oracle") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 15; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto sys = oracle::random_system(rng, n, 1, SelectionKind::Fixed, ScheduleKind::Parallel);
        const oracle::Rho rho(sys);
        CHECK(global_counts(sys, GlobalWhat::FixedPoints) == rho.fixed_points());
        CHECK(global_counts(sys, GlobalWhat::CompleteFixedPoints) == rho.fixed_points());
        CHECK(global_counts(sys, GlobalWhat::Gardens) == rho.gardens());
        CHECK(global_counts(sys, GlobalWhat::Cycles) == rho.cycles());
        for (int s = 0; s < 4; ++s) {
            const auto c = oracle::random_config(rng, n);
            const auto [tail, len] = rho.tail_and_cycle(c.index());
            CHECK(tail_length(sys, c) == tail);
            const auto cyc = cycles(sys, c, CycleMode::MinLen);
            if (tail == 0) CHECK(cyc.length == len);
            else CHECK_FALSE(cyc.length.has_value());
            CHECK(predecessors(sys, c, PredMode::Count).count == rho.preimages(c.index()));
            CHECK(count_subsequent(sys, c) == 1);
        }
    }
}

TEST_CASE("reachability modes agree with breadth-first oracles on nondeterministic systems") {
    std::mt19937_64 rng(5);
    const SelectionKind sels[] = {SelectionKind::Coordinated, SelectionKind::Individual};
    const ScheduleKind schs[] = {ScheduleKind::Parallel, ScheduleKind::PermutationList, ScheduleKind::Asynchronous};
    for (int rep = 0; rep < 4; ++rep)
        for (auto sel : sels)
            for (auto sch : schs) {
                const int n = 2 + static_cast<int>(rng() % 3);
                const auto sys = oracle::random_system(rng, n, 2, sel, sch);
                for (int s = 0; s < 4; ++s) {
                    const auto c = oracle::random_config(rng, n);
                    const auto d = oracle::random_config(rng, n);
                    const auto dist = oracle::bfs_distance(sys, c, d);
                    const auto any = reachability(sys, c, d, ReachMode::Any);
                    CHECK(any.yes == dist.has_value());
                    CHECK(reachability(sys, c, d, ReachMode::MinLen).length == dist);
                    for (int t = 1; t <= 3; ++t) {
                        const auto within = reachability(sys, c, d, ReachMode::Within, t);
                        CHECK(within.yes == (dist && *dist <= t));
                        if (within.yes) {
                            CHECK(within.path.front() == c);
                            CHECK(within.path.back() == d);
                        }
                    }
                    if (n <= 3) CHECK(count_simple_paths(sys, c, d) == simple_paths_oracle(sys, c, d));
                }
            }
}

TEST_CASE("exact-length search matches layered enumeration on individual-selection systems") {
    std::mt19937_64 rng(99);
    const ScheduleKind schs[] = {ScheduleKind::Parallel, ScheduleKind::FixedPermutation, ScheduleKind::PermutationList};
    for (int rep = 0; rep < 10; ++rep)
        for (auto sch : schs) {
            const int n = 2 + static_cast<int>(rng() % 4);
            const int k = 1 + static_cast<int>(rng() % 3);
            const auto sys = oracle::random_system(rng, n, k, SelectionKind::Individual, sch);
            const auto c = oracle::random_config(rng, n);
            for (int t = 0; t <= 4; ++t) {
                const auto layer = oracle::layer(sys, c, t);
                for (const auto& d : oracle::all_configs(n)) {
                    const auto p = reach_exactly(sys, c, d, t);
                    CHECK(p.has_value() == layer.contains(d));
                    if (p) {
                        REQUIRE(p->size() == static_cast<std::size_t>(t) + 1);
                        for (int s = 0; s < t; ++s)
                            CHECK(oracle::images(sys, (*p)[static_cast<std::size_t>(s)]).contains((*p)[static_cast<std::size_t>(s) + 1]));
                    }
                }
            }
        }
}

TEST_CASE("path intersection, fixed points, and garden-of-Eden predicates") {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const auto sys = oracle::random_system(rng, n, 2, SelectionKind::Individual, ScheduleKind::Parallel, oracle::FnMix::Unary);
        const auto configs = oracle::all_configs(n);
        std::map<Config, std::set<Config>> reach;
        for (const auto& c : configs) {
            std::set<Config> seen{c};
            std::vector<Config> stack{c};
            while (!stack.empty()) {
                auto x = stack.back();
                stack.pop_back();
                for (const auto& y : oracle::images(sys, x))
                    if (seen.insert(y).second) stack.push_back(y);
            }
            reach[c] = seen;
        }
        std::uint64_t fps = 0, complete = 0, gardens = 0;
        for (const auto& c : configs) {
            const auto img = oracle::images(sys, c);
            fps += img.contains(c) ? 1 : 0;
            complete += (img.size() == 1 && img.contains(c)) ? 1 : 0;
            bool has_pred = false;
            for (const auto& x : configs) has_pred = has_pred || oracle::images(sys, x).contains(c);
            gardens += has_pred ? 0 : 1;
            CHECK(fixed_points(sys, FpMode::IsFp, c).yes == img.contains(c));
            CHECK(fixed_points(sys, FpMode::IsCompleteFp, c).yes == (img.size() == 1 && img.contains(c)));
            CHECK(predecessors(sys, c, PredMode::IsGoe).yes == !has_pred);
        }
        CHECK(global_counts(sys, GlobalWhat::FixedPoints) == fps);
        CHECK(global_counts(sys, GlobalWhat::CompleteFixedPoints) == complete);
        CHECK(global_counts(sys, GlobalWhat::Gardens) == gardens);
        CHECK(fixed_points(sys, FpMode::Exists).yes == (fps > 0));
        CHECK(fixed_points(sys, FpMode::CompleteExists).yes == (complete > 0));
        for (int s = 0; s < 5; ++s) {
            const auto c = oracle::random_config(rng, n);
            const auto d = oracle::random_config(rng, n);
            bool meet = false;
            for (const auto& x : reach[c]) meet = meet || reach[d].contains(x);
            CHECK(path_intersection(sys, c, d) == meet);
        }
    }
}

TEST_CASE("caps raise resource errors") {
    System sys(12, 2);
    sys.selection.kind = SelectionKind::Individual;
    Caps caps;
    caps.state_cap = 100;
    CHECK_THROWS_AS(global_counts(sys, GlobalWhat::FixedPoints, caps), ResourceError);
}
