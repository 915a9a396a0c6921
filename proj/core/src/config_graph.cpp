#include "bfds/config_graph.hpp"

#include <algorithm>
#include <ostream>

namespace bfds {

std::uint64_t ConfigGraph::arc_count() const {
    std::uint64_t m = 0;
    for (const auto& a : out) m += a.size();
    return m;
}

const Arc* ConfigGraph::find_arc(std::uint64_t u, std::uint64_t v) const {
    const auto& arcs = out[u];
    auto it = std::lower_bound(arcs.begin(), arcs.end(), v, [](const Arc& a, std::uint64_t x) { return a.dst < x; });
    if (it == arcs.end() || it->dst != v) return nullptr;
    return &*it;
}

std::vector<std::vector<std::uint64_t>> ConfigGraph::reverse() const {
    std::vector<std::vector<std::uint64_t>> rev(out.size());
    for (std::uint64_t u = 0; u < out.size(); ++u)
        for (const auto& a : out[u]) rev[a.dst].push_back(u);
    return rev;
}

ConfigGraph build_graph(const System& sys, std::uint64_t state_cap, std::uint64_t action_cap) {
    if (sys.n >= 63 || (std::uint64_t{1} << sys.n) > state_cap)
        throw ResourceError("graph with 2^" + std::to_string(sys.n) + " states exceeds state cap " + std::to_string(state_cap));
    ConfigGraph g;
    g.n = sys.n;
    const std::uint64_t N = std::uint64_t{1} << sys.n;
    g.out.resize(N);
    for (std::uint64_t u = 0; u < N; ++u) {
        for (auto& [d, info] : successors(sys, Config::from_index(sys.n, u), action_cap))
            g.out[u].push_back(Arc{d.index(), info.labels, info.witness});
    }
    return g;
}

void dump_graph(const ConfigGraph& g, std::ostream& os) {
    for (std::uint64_t u = 0; u < g.out.size(); ++u) {
        const std::string su = Config::from_index(g.n, u).str();
        for (const auto& a : g.out[u]) os << su << ' ' << Config::from_index(g.n, a.dst).str() << ' ' << a.labels << '\n';
    }
}

std::vector<std::vector<Config>> bfs_layers(const System& sys, const Config& start, int depth,
                                            std::uint64_t state_cap, std::uint64_t action_cap) {
    std::vector<std::vector<Config>> layers;
    layers.push_back({start});
    std::uint64_t total = 1;
    for (int t = 1; t <= depth; ++t) {
        std::unordered_set<Config, ConfigHash> next;
        for (const auto& c : layers.back())
            for (auto& d : successor_set(sys, c, action_cap)) next.insert(std::move(d));
        total += next.size();
        if (total > state_cap) throw ResourceError("layered search exceeds state cap");
        std::vector<Config> layer(next.begin(), next.end());
        std::sort(layer.begin(), layer.end());
        layers.push_back(std::move(layer));
    }
    return layers;
}

std::unordered_map<Config, int, ConfigHash> reachable_set(const System& sys, const Config& start, int step_bound,
                                                          std::uint64_t state_cap, std::uint64_t action_cap) {
    std::unordered_map<Config, int, ConfigHash> dist;
    dist.emplace(start, 0);
    std::vector<Config> frontier{start};
    for (int t = 1; t <= step_bound && !frontier.empty(); ++t) {
        std::vector<Config> next;
        for (const auto& c : frontier)
            for (auto& d : successor_set(sys, c, action_cap))
                if (dist.emplace(d, t).second) {
                    if (dist.size() > state_cap) throw ResourceError("reachable set exceeds state cap");
                    next.push_back(std::move(d));
                }
        frontier = std::move(next);
    }
    return dist;
}

std::optional<int> shortest_nontrivial(const System& sys, const Config& c, const Config& d, int step_bound,
                                       std::uint64_t state_cap, std::uint64_t action_cap) {
    if (step_bound < 1) return std::nullopt;
    // Start the search from the successors of c so that c = d needs a real cycle.
    std::unordered_map<Config, int, ConfigHash> dist;
    std::vector<Config> frontier;
    for (auto& e : successor_set(sys, c, action_cap)) {
        if (e == d) return 1;
        dist.emplace(e, 1);
        frontier.push_back(std::move(e));
    }
    for (int t = 2; t <= step_bound && !frontier.empty(); ++t) {
        std::vector<Config> next;
        for (const auto& x : frontier)
            for (auto& e : successor_set(sys, x, action_cap)) {
                if (e == d) return t;
                if (dist.emplace(e, t).second) {
                    if (dist.size() > state_cap) throw ResourceError("search exceeds state cap");
                    next.push_back(std::move(e));
                }
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

std::optional<Action> edge_exists(const System& sys, const Config& c, const Config& d, std::uint64_t action_cap) {
    std::optional<Action> found;
    for_each_action(sys, [&](const Action& a) {
        if (!found && apply_action(sys, c, a) == d) found = a;
    }, action_cap);
    return found;
}

}  // namespace bfds
