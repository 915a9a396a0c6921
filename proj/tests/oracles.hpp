#pragma once

// Brute-force reference implementations shared by the unit tests and the acceptance runner.
// They only use the stepping primitives (step_parallel, step_sequential, step_async) and
// plain enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "bfds/reductions.hpp"
#include "bfds/system.hpp"

namespace oracle {

using bfds::Config;
using bfds::NodeFunction;
using bfds::System;

enum class FnMix { Any, Unary, Literal, PosUnary, UnaryOrAnd };

inline NodeFunction random_function(std::mt19937_64& rng, int n, FnMix mix) {
    auto node = [&] { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)) + 1; };
    auto srcs = [&](int max) {
        std::vector<int> s;
        const int cnt = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(max, n)));
        while (static_cast<int>(s.size()) < cnt) {
            const int v = node();
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        return s;
    };
    switch (mix) {
    case FnMix::PosUnary:
        return NodeFunction::pos(node());
    case FnMix::Literal:
        return rng() % 2 == 0 ? NodeFunction::neg(node()) : NodeFunction::pos(node());
    case FnMix::Unary:
        switch (rng() % 5) {
        case 0: return NodeFunction::constant(rng() % 2 == 1);
        case 1:
        case 2: return NodeFunction::neg(node());
        default: return NodeFunction::pos(node());
        }
    case FnMix::UnaryOrAnd:
        switch (rng() % 6) {
        case 0: return NodeFunction::pos(node());
        case 1: return NodeFunction::neg(node());
        case 2: return NodeFunction::any_of(srcs(n));
        case 3: return NodeFunction::all_of(srcs(n));
        case 4: return NodeFunction::constant(rng() % 2 == 1);
        default: {
            auto s = srcs(2);
            std::vector<std::uint8_t> t(std::size_t{1} << s.size());
            for (auto& b : t) b = static_cast<std::uint8_t>(rng() % 2);
            return NodeFunction::make_table(std::move(s), std::move(t));
        }
        }
    case FnMix::Any:
        break;
    }
    switch (rng() % 6) {
    case 0: return NodeFunction::pos(node());
    case 1: return NodeFunction::neg(node());
    case 2: return NodeFunction::any_of(srcs(3));
    case 3: return NodeFunction::all_of(srcs(3));
    case 4: return NodeFunction::constant(rng() % 2 == 1);
    default: {
        auto s = srcs(3);
        std::vector<std::uint8_t> t(std::size_t{1} << s.size());
        for (auto& b : t) b = static_cast<std::uint8_t>(rng() % 2);
        return NodeFunction::make_table(std::move(s), std::move(t));
    }
    }
}

inline std::vector<int> random_perm(std::mt19937_64& rng, int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline System random_system(std::mt19937_64& rng, int n, int k, bfds::SelectionKind sel, bfds::ScheduleKind sch,
                            FnMix mix = FnMix::Any, int list_len = 2) {
    System sys(n, k);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= k; ++j) sys.fn(i, j) = random_function(rng, n, mix);
    sys.selection.kind = sel;
    if (sel == bfds::SelectionKind::SemiCoordinated) {
        auto p = random_perm(rng, n);
        std::size_t at = 0;
        while (at < p.size()) {
            const std::size_t len = 1 + rng() % (p.size() - at);
            sys.selection.blocks.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(at),
                                              p.begin() + static_cast<std::ptrdiff_t>(at + len));
            at += len;
        }
    }
    sys.schedule.kind = sch;
    if (sch == bfds::ScheduleKind::FixedPermutation) sys.schedule.perms = {random_perm(rng, n)};
    if (sch == bfds::ScheduleKind::PermutationList)
        for (int l = 0; l < list_len; ++l) sys.schedule.perms.push_back(random_perm(rng, n));
    return sys;
}

inline Config random_config(std::mt19937_64& rng, int n) {
    return Config::from_index(n, rng() % (std::uint64_t{1} << n));
}

inline std::vector<Config> all_configs(int n) {
    std::vector<Config> out;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) out.push_back(Config::from_index(n, u));
    return out;
}

/// Selection vectors written out from the definition of each scheme.
inline std::vector<std::vector<int>> selections(const System& sys) {
    const int n = sys.n;
    std::vector<std::vector<int>> out;
    switch (sys.selection.kind) {
    case bfds::SelectionKind::Fixed:
        out.emplace_back(static_cast<std::size_t>(n), 1);
        break;
    case bfds::SelectionKind::Coordinated:
        for (int j = 1; j <= sys.k; ++j) out.emplace_back(static_cast<std::size_t>(n), j);
        break;
    case bfds::SelectionKind::Individual: {
        std::uint64_t total = 1;
        for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(sys.k);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<int> v(static_cast<std::size_t>(n));
            std::uint64_t x = code;
            for (int i = 0; i < n; ++i) {
                v[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::uint64_t>(sys.k)) + 1;
                x /= static_cast<std::uint64_t>(sys.k);
            }
            out.push_back(v);
        }
        break;
    }
    case bfds::SelectionKind::SemiCoordinated: {
        const auto& blocks = sys.selection.blocks;
        std::uint64_t total = 1;
        for (std::size_t b = 0; b < blocks.size(); ++b) total *= static_cast<std::uint64_t>(sys.k);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<int> v(static_cast<std::size_t>(n));
            std::uint64_t x = code;
            for (const auto& b : blocks) {
                const int j = static_cast<int>(x % static_cast<std::uint64_t>(sys.k)) + 1;
                x /= static_cast<std::uint64_t>(sys.k);
                for (int node : b) v[static_cast<std::size_t>(node - 1)] = j;
            }
            out.push_back(v);
        }
        break;
    }
    }
    return out;
}

inline std::vector<std::vector<int>> all_perms(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Ordered partitions of every subset of the nodes into nonempty groups. Nodes outside the plan keep their state.
inline std::vector<bfds::AsyncPlan> all_plans(int n) {
    std::vector<bfds::AsyncPlan> out;
    std::function<void(std::vector<int>, bfds::AsyncPlan)> rec = [&](std::vector<int> left, bfds::AsyncPlan plan) {
        if (left.empty()) {
            out.push_back(plan);
            return;
        }
        const std::size_t m = left.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
            std::vector<int> group, rest;
            for (std::size_t b = 0; b < m; ++b) ((mask >> b) & 1U ? group : rest).push_back(left[b]);
            auto next = plan;
            next.groups.push_back(group);
            rec(rest, next);
        }
    };
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> subset;
        for (int v = 1; v <= n; ++v)
            if ((mask >> (v - 1)) & 1U) subset.push_back(v);
        rec(subset, {});
    }
    return out;
}

/// Distinct one-step images by direct enumeration of selections and realizations.
inline std::set<Config> images(const System& sys, const Config& c) {
    std::set<Config> out;
    for (const auto& J : selections(sys)) {
        switch (sys.schedule.kind) {
        case bfds::ScheduleKind::Parallel:
            out.insert(bfds::step_parallel(sys, c, J));
            break;
        case bfds::ScheduleKind::FixedPermutation:
        case bfds::ScheduleKind::PermutationList:
            for (const auto& p : sys.schedule.perms) out.insert(bfds::step_sequential(sys, c, J, p));
            break;
        case bfds::ScheduleKind::ArbitraryPermutation:
            for (const auto& p : all_perms(sys.n)) out.insert(bfds::step_sequential(sys, c, J, p));
            break;
        case bfds::ScheduleKind::Asynchronous:
            for (const auto& plan : all_plans(sys.n)) out.insert(bfds::step_async(sys, c, J, plan));
            break;
        }
    }
    return out;
}

/// Depth of d in a BFS from c over nontrivial paths, or empty.
inline std::optional<int> bfs_distance(const System& sys, const Config& c, const Config& d, int max_depth = 1 << 30) {
    std::map<Config, int> dist;
    std::vector<Config> frontier{c};
    for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        std::vector<Config> next;
        for (const auto& x : frontier)
            for (const auto& y : images(sys, x)) {
                if (y == d) return depth;
                if (dist.emplace(y, depth).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

/// Configurations at exactly `depth` steps from c.
inline std::set<Config> layer(const System& sys, const Config& c, int depth) {
    std::set<Config> cur{c};
    for (int s = 0; s < depth; ++s) {
        std::set<Config> next;
        for (const auto& x : cur)
            for (const auto& y : images(sys, x)) next.insert(y);
        cur = std::move(next);
    }
    return cur;
}

/// Deterministic dynamics x -> F(x) over all 2^n configurations, by index.
struct Rho {
    std::vector<std::uint64_t> next;
    explicit Rho(const System& sys) {
        const std::vector<int> J(static_cast<std::size_t>(sys.n), 1);
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << sys.n); ++u)
            next.push_back(bfds::step_parallel(sys, Config::from_index(sys.n, u), J).index());
    }
    // Steps before the orbit of u first enters its cycle, and the cycle length.
    [[nodiscard]] std::pair<int, int> tail_and_cycle(std::uint64_t u) const {
        std::map<std::uint64_t, int> seen;
        int step = 0;
        while (!seen.contains(u)) {
            seen[u] = step++;
            u = next[u];
        }
        return {seen[u], step - seen[u]};
    }
    [[nodiscard]] std::uint64_t preimages(std::uint64_t u) const {
        return static_cast<std::uint64_t>(std::count(next.begin(), next.end(), u));
    }
    [[nodiscard]] std::uint64_t fixed_points() const {
        std::uint64_t c = 0;
        for (std::uint64_t u = 0; u < next.size(); ++u) c += next[u] == u ? 1 : 0;
        return c;
    }
    [[nodiscard]] std::uint64_t gardens() const {
        std::uint64_t c = 0;
        for (std::uint64_t u = 0; u < next.size(); ++u) c += preimages(u) == 0 ? 1 : 0;
        return c;
    }
    [[nodiscard]] std::uint64_t cycles() const {
        std::set<std::uint64_t> mins;
        for (std::uint64_t u = 0; u < next.size(); ++u) {
            auto [tail, len] = tail_and_cycle(u);
            std::uint64_t x = u;
            for (int s = 0; s < tail; ++s) x = next[x];
            std::uint64_t m = x;
            for (int s = 0; s < len; ++s) {
                x = next[x];
                m = std::min(m, x);
            }
            mins.insert(m);
        }
        return mins.size();
    }
};

inline bool sat_oracle(const bfds::CnfFormula& f) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) {
        bool all = true;
        for (const auto& cl : f.clauses) {
            bool any = false;
            for (int l : cl) any = any || (((a >> (std::abs(l) - 1)) & 1U) == (l > 0 ? 1U : 0U));
            all = all && any;
        }
        if (all) return true;
    }
    return false;
}

inline std::uint64_t count_oracle(const bfds::CnfFormula& f) {
    std::uint64_t c = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) {
        bool all = true;
        for (const auto& cl : f.clauses) {
            bool any = false;
            for (int l : cl) any = any || (((a >> (std::abs(l) - 1)) & 1U) == (l > 0 ? 1U : 0U));
            all = all && any;
        }
        c += all ? 1 : 0;
    }
    return c;
}

inline bfds::CnfFormula random_cnf(std::mt19937_64& rng, int n, int m, int width) {
    bfds::CnfFormula f;
    f.n = n;
    for (int j = 0; j < m; ++j) {
        std::vector<int> cl;
        for (int w = 0; w < width; ++w) {
            const int v = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            cl.push_back(rng() % 2 ? v : -v);
        }
        f.clauses.push_back(cl);
    }
    return f;
}

/// Any sweep order and selection that takes c to d.
inline bool perm_oracle(const System& sys, const Config& c, const Config& d) {
    for (const auto& p : all_perms(sys.n))
        for (const auto& J : selections(sys))
            if (bfds::step_sequential(sys, c, J, p) == d) return true;
    return false;
}

/// All 2^(n(n-1)/2) simple graphs on n nodes.
inline std::vector<bfds::SimpleGraph> all_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
    std::vector<bfds::SimpleGraph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        bfds::SimpleGraph g;
        g.n = n;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if ((mask >> b) & 1U) g.edges.push_back(slots[b]);
        out.push_back(g);
    }
    return out;
}

inline bool iso_oracle(const bfds::SimpleGraph& g, const bfds::SimpleGraph& h) {
    if (g.n != h.n || g.edges.size() != h.edges.size()) return false;
    std::set<std::pair<int, int>> eh;
    for (auto [u, v] : h.edges) eh.insert({std::min(u, v), std::max(u, v)});
    for (const auto& p : all_perms(g.n)) {
        bool ok = true;
        for (auto [u, v] : g.edges) {
            const int a = p[static_cast<std::size_t>(u - 1)];
            const int b = p[static_cast<std::size_t>(v - 1)];
            if (!eh.contains({std::min(a, b), std::max(a, b)})) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace oracle
