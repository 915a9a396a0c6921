#include "bfds/analysis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace bfds {

ProblemAnswer ProblemAnswer::boolean(bool b, std::vector<Config> path) {
    ProblemAnswer a;
    a.kind = Kind::Bool;
    a.yes = b;
    a.path = std::move(path);
    return a;
}

ProblemAnswer ProblemAnswer::counted(std::uint64_t c) {
    ProblemAnswer a;
    a.kind = Kind::Count;
    a.count = c;
    return a;
}

ProblemAnswer ProblemAnswer::len(std::optional<int> l, std::vector<Config> path) {
    ProblemAnswer a;
    a.kind = Kind::Length;
    a.length = l;
    a.yes = l.has_value();
    a.path = std::move(path);
    return a;
}

std::string ProblemAnswer::render() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Bool:
        os << (yes ? "yes" : "no");
        break;
    case Kind::Count:
        os << count;
        break;
    case Kind::Length:
        if (length) os << *length;
        else os << "missing";
        break;
    }
    if (!path.empty()) {
        os << "\npath:";
        for (const auto& c : path) os << ' ' << c.str();
    }
    return os.str();
}

namespace {

// Shortest path of length >= 1 (at most bound steps when bound >= 0).
std::optional<std::vector<Config>> nontrivial_bfs(const System& sys, const Config& c, const Config& d, int bound,
                                                  const Caps& caps) {
    std::unordered_map<Config, Config, ConfigHash> parent;
    parent.emplace(c, c);
    auto rebuild = [&](const Config& last_parent) {
        std::vector<Config> path{d};
        Config x = last_parent;
        while (!(x == c)) {
            path.push_back(x);
            x = parent.at(x);
        }
        path.push_back(c);
        std::reverse(path.begin(), path.end());
        return path;
    };
    std::vector<Config> frontier{c};
    for (int t = 1; bound < 0 || t <= bound; ++t) {
        std::vector<Config> next;
        for (const auto& x : frontier) {
            for (const auto& e : successor_set(sys, x, caps.action_cap)) {
                if (e == d) return rebuild(x);
                if (parent.emplace(e, x).second) {
                    if (parent.size() > caps.state_cap) throw ResourceError("search exceeds state cap");
                    next.push_back(e);
                }
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return std::nullopt;
}

// DFS over node-simple paths from c; calls on_hit(depth) whenever an arc enters d.
// The search is restricted to configurations that can still reach d.
void simple_path_dfs(const System& sys, const Config& c, const Config& d, const Caps& caps,
                     const std::function<void(int)>& on_hit) {
    std::unordered_map<Config, std::uint32_t, ConfigHash> id;
    std::vector<Config> nodes;
    std::vector<std::vector<std::uint32_t>> adj;
    auto intern = [&](const Config& x) {
        auto [it, fresh] = id.emplace(x, static_cast<std::uint32_t>(nodes.size()));
        if (fresh) {
            if (nodes.size() >= caps.state_cap) throw ResourceError("path search exceeds state cap");
            nodes.push_back(x);
            adj.emplace_back();
        }
        return it->second;
    };
    intern(c);
    for (std::size_t h = 0; h < nodes.size(); ++h) {
        const auto succ = successor_set(sys, nodes[h], caps.action_cap);
        std::vector<std::uint32_t> out;
        out.reserve(succ.size());
        for (const auto& y : succ) out.push_back(intern(y));
        adj[h] = std::move(out);
    }
    const auto dit = id.find(d);
    if (dit == id.end()) return;
    const std::uint32_t target = dit->second;
    std::vector<std::vector<std::uint32_t>> rev(nodes.size());
    for (std::uint32_t u = 0; u < nodes.size(); ++u)
        for (auto v : adj[u]) rev[v].push_back(u);
    std::vector<char> useful(nodes.size(), 0);
    std::vector<std::uint32_t> queue{target};
    useful[target] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (auto u : rev[queue[h]])
            if (!useful[u]) {
                useful[u] = 1;
                queue.push_back(u);
            }
    std::vector<char> on_path(nodes.size(), 0);
    on_path[0] = 1;
    std::uint64_t expansions = 0;
    std::function<void(std::uint32_t, int)> rec = [&](std::uint32_t x, int depth) {
        if (++expansions > caps.dfs_budget) throw ResourceError("DFS budget of " + std::to_string(caps.dfs_budget) + " expansions exceeded");
        for (auto e : adj[x]) {
            if (e == target) {
                on_hit(depth + 1);
                continue;
            }
            if (on_path[e] || !useful[e]) continue;
            on_path[e] = 1;
            rec(e, depth + 1);
            on_path[e] = 0;
        }
    };
    rec(0, 0);
}

std::optional<int> longest_simple(const System& sys, const Config& c, const Config& d, const Caps& caps) {
    std::optional<int> best;
    simple_path_dfs(sys, c, d, caps, [&](int len) {
        if (!best || len > *best) best = len;
    });
    return best;
}

}  // namespace

ProblemAnswer reachability(const System& sys, const Config& c, const Config& d, ReachMode mode, int t,
                           const Caps& caps) {
    switch (mode) {
    case ReachMode::Any: {
        auto p = nontrivial_bfs(sys, c, d, -1, caps);
        return p ? ProblemAnswer::boolean(true, *p) : ProblemAnswer::boolean(false);
    }
    case ReachMode::Within: {
        auto p = reach_within(sys, c, d, t, caps);
        return p ? ProblemAnswer::boolean(true, *p) : ProblemAnswer::boolean(false);
    }
    case ReachMode::MinLen: {
        auto p = nontrivial_bfs(sys, c, d, -1, caps);
        if (!p) return ProblemAnswer::len(std::nullopt);
        const int l = static_cast<int>(p->size()) - 1;
        return ProblemAnswer::len(l, *p);
    }
    case ReachMode::MaxSimpleLen:
        return ProblemAnswer::len(longest_simple(sys, c, d, caps));
    }
    return {};
}

bool path_intersection(const System& sys, const Config& c, const Config& d, const Caps& caps) {
    const int bound = sys.n >= 30 ? (1 << 30) : (1 << sys.n);
    auto rc = reachable_set(sys, c, bound, caps.state_cap, caps.action_cap);
    if (rc.contains(d)) return true;
    auto rd = reachable_set(sys, d, bound, caps.state_cap, caps.action_cap);
    for (const auto& [x, _] : rd)
        if (rc.contains(x)) return true;
    return false;
}

std::vector<bool> cycle_points(const ConfigGraph& g) {
    // Iterative Tarjan.
    const std::uint64_t N = g.vertex_count();
    std::vector<std::int64_t> index(N, -1), low(N, 0);
    std::vector<char> on_stack(N, 0);
    std::vector<std::uint64_t> stack;
    std::vector<bool> result(N, false);
    std::int64_t counter = 0;
    struct Frame {
        std::uint64_t v;
        std::size_t next;
    };
    for (std::uint64_t s = 0; s < N; ++s) {
        if (index[s] >= 0) continue;
        std::vector<Frame> call{{s, 0}};
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& arcs = g.out[f.v];
            if (f.next < arcs.size()) {
                const std::uint64_t w = arcs[f.next++].dst;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::uint64_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::uint64_t> comp;
                std::uint64_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                const bool cyclic = comp.size() > 1 || g.find_arc(v, v) != nullptr;
                if (cyclic)
                    for (auto x : comp) result[x] = true;
            }
        }
    }
    return result;
}

int tail_length(const System& sys, const Config& c, const Caps& caps) {
    const ConfigGraph g = build_graph(sys, caps.state_cap, caps.action_cap);
    const auto on_cycle = cycle_points(g);
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<std::uint64_t> queue{c.index()};
    dist[c.index()] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        const auto u = queue[h];
        if (on_cycle[u]) return dist[u];
        for (const auto& a : g.out[u])
            if (dist[a.dst] < 0) {
                dist[a.dst] = dist[u] + 1;
                queue.push_back(a.dst);
            }
    }
    throw ResourceError("no cycle reachable");  // unreachable for finite graphs with out-degree >= 1
}

ProblemAnswer predecessors(const System& sys, const Config& c, PredMode mode, int t, const Caps& caps) {
    const ConfigGraph g = build_graph(sys, caps.state_cap, caps.action_cap);
    const auto rev = g.reverse();
    const auto ci = c.index();
    switch (mode) {
    case PredMode::IsGoe:
        return ProblemAnswer::boolean(rev[ci].empty());
    case PredMode::Count:
        return ProblemAnswer::counted(rev[ci].size());
    case PredMode::TGoe: {
        const std::uint64_t N = g.vertex_count();
        std::vector<char> cur(N, 0);
        for (std::uint64_t u = 0; u < N; ++u) cur[u] = rev[u].empty();
        for (int s = 0; s < t; ++s) {
            std::vector<char> next(N, 0);
            for (std::uint64_t u = 0; u < N; ++u)
                if (cur[u])
                    for (const auto& a : g.out[u]) next[a.dst] = 1;
            cur = std::move(next);
        }
        return ProblemAnswer::boolean(cur[ci] != 0);
    }
    }
    return {};
}

ProblemAnswer cycles(const System& sys, const Config& c, CycleMode mode, const Caps& caps) {
    switch (mode) {
    case CycleMode::Point: {
        auto r = reachability(sys, c, c, ReachMode::Any, 0, caps);
        return r;
    }
    case CycleMode::MinLen:
        return reachability(sys, c, c, ReachMode::MinLen, 0, caps);
    case CycleMode::MaxSimpleLen:
        return ProblemAnswer::len(longest_simple(sys, c, c, caps));
    case CycleMode::CountSimpleThrough:
        return ProblemAnswer::counted(count_simple_paths(sys, c, c, caps));
    }
    return {};
}

std::uint64_t global_counts(const System& sys, GlobalWhat what, const Caps& caps) {
    const ConfigGraph g = build_graph(sys, caps.state_cap, caps.action_cap);
    const std::uint64_t N = g.vertex_count();
    std::uint64_t total = 0;
    switch (what) {
    case GlobalWhat::Gardens: {
        std::vector<char> has_pred(N, 0);
        for (std::uint64_t u = 0; u < N; ++u)
            for (const auto& a : g.out[u]) has_pred[a.dst] = 1;
        for (auto h : has_pred) total += h ? 0 : 1;
        return total;
    }
    case GlobalWhat::FixedPoints:
        for (std::uint64_t u = 0; u < N; ++u) total += g.find_arc(u, u) ? 1 : 0;
        return total;
    case GlobalWhat::CompleteFixedPoints:
        for (std::uint64_t u = 0; u < N; ++u) total += (g.out[u].size() == 1 && g.out[u][0].dst == u) ? 1 : 0;
        return total;
    case GlobalWhat::Cycles: {
        // Count each simple cycle once, from its minimum vertex.
        std::uint64_t expansions = 0;
        std::vector<char> on_path(N, 0);
        std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t root, std::uint64_t v) {
            if (++expansions > caps.dfs_budget) throw ResourceError("DFS budget exceeded while counting cycles");
            for (const auto& a : g.out[v]) {
                if (a.dst == root) {
                    ++total;
                } else if (a.dst > root && !on_path[a.dst]) {
                    on_path[a.dst] = 1;
                    rec(root, a.dst);
                    on_path[a.dst] = 0;
                }
            }
        };
        for (std::uint64_t r = 0; r < N; ++r) {
            on_path[r] = 1;
            rec(r, r);
            on_path[r] = 0;
        }
        return total;
    }
    }
    return 0;
}

namespace {

bool complete_fp(const System& sys, const Config& c, const Caps& caps) {
    bool all = true;
    for_each_action(sys, [&](const Action& a) {
        if (all && !(apply_action(sys, c, a) == c)) all = false;
    }, caps.action_cap);
    return all;
}

}  // namespace

ProblemAnswer fixed_points(const System& sys, FpMode mode, const Config& c, const Caps& caps) {
    switch (mode) {
    case FpMode::IsFp:
        return ProblemAnswer::boolean(edge_exists(sys, c, c, caps.action_cap).has_value());
    case FpMode::IsCompleteFp:
        return ProblemAnswer::boolean(complete_fp(sys, c, caps));
    case FpMode::Exists:
    case FpMode::CompleteExists: {
        if (sys.n >= 63 || (std::uint64_t{1} << sys.n) > caps.state_cap) throw ResourceError("configuration space exceeds state cap");
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << sys.n); ++u) {
            const Config x = Config::from_index(sys.n, u);
            const bool hit = mode == FpMode::Exists ? edge_exists(sys, x, x, caps.action_cap).has_value()
                                                    : complete_fp(sys, x, caps);
            if (hit) return ProblemAnswer::boolean(true, {x});
        }
        return ProblemAnswer::boolean(false);
    }
    }
    return {};
}

std::uint64_t count_subsequent(const System& sys, const Config& c, const Caps& caps) {
    return successor_set(sys, c, caps.action_cap).size();
}

std::uint64_t count_simple_paths(const System& sys, const Config& c, const Config& d, const Caps& caps) {
    std::uint64_t count = 0;
    simple_path_dfs(sys, c, d, caps, [&](int) { ++count; });
    return count;
}

}  // namespace bfds
