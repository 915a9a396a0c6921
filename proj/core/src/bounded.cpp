#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "bfds/analysis.hpp"

namespace bfds {

namespace {

struct Sweep {
    bool parallel = true;
    std::vector<int> order;  // node update order (1..n for parallel)
    std::vector<int> pos;    // pos[i]; all equal for parallel
    [[nodiscard]] bool before(int s, int i) const { return !parallel && pos[static_cast<std::size_t>(s)] < pos[static_cast<std::size_t>(i)]; }
};

bool csp_eligible(const System& sys) {
    const bool sel = sys.selection.kind == SelectionKind::Individual || sys.selection.kind == SelectionKind::Fixed;
    const bool sch = sys.schedule.kind == ScheduleKind::Parallel || sys.schedule.kind == ScheduleKind::FixedPermutation ||
                     sys.schedule.kind == ScheduleKind::PermutationList;
    return sel && sch;
}

std::vector<Sweep> sweeps(const System& sys) {
    std::vector<Sweep> out;
    auto make = [&](bool par, const std::vector<int>& order) {
        Sweep s;
        s.parallel = par;
        s.order = order;
        s.pos.assign(static_cast<std::size_t>(sys.n) + 1, 0);
        for (std::size_t p = 0; p < order.size(); ++p) s.pos[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
        out.push_back(std::move(s));
    };
    if (sys.schedule.kind == ScheduleKind::Parallel) {
        std::vector<int> o(static_cast<std::size_t>(sys.n));
        for (int i = 0; i < sys.n; ++i) o[static_cast<std::size_t>(i)] = i + 1;
        make(true, o);
    } else {
        for (const auto& p : sys.schedule.perms) make(false, p);
    }
    return out;
}

int choice_count(const System& sys) { return sys.selection.kind == SelectionKind::Fixed ? 1 : sys.k; }

// Per-layer value domains: bit v set when node i may hold v at that layer.
using Domains = std::vector<std::vector<std::uint8_t>>;

bool allows(std::uint8_t dom, bool v) { return (dom >> (v ? 1 : 0)) & 1U; }

// Can f produce a value inside `target` when each source ranges over its domain?
// `fixed` pins one source to a value (0 means none).
bool can_produce(const NodeFunction& f, std::uint8_t target, const std::function<std::uint8_t(int)>& dom, int fixed,
                 bool fixed_val) {
    auto d = [&](int s) -> std::uint8_t { return s == fixed ? static_cast<std::uint8_t>(fixed_val ? 2 : 1) : dom(s); };
    switch (f.kind) {
    case FnKind::Const:
        return allows(target, f.value);
    case FnKind::Or:
    case FnKind::And: {
        const bool absorbing = f.kind == FnKind::Or;  // value that decides the gate
        bool some = false, all = true;
        for (int s : f.srcs) {
            some = some || allows(d(s), absorbing);
            all = all && allows(d(s), !absorbing);
        }
        return (allows(target, absorbing) && some) || (allows(target, !absorbing) && all);
    }
    default:
        break;
    }
    std::vector<int> srcs(f.srcs.begin(), f.srcs.end());
    std::sort(srcs.begin(), srcs.end());
    srcs.erase(std::unique(srcs.begin(), srcs.end()), srcs.end());
    if (srcs.size() > 12) return true;
    Config probe(std::max<int>(srcs.empty() ? 1 : srcs.back(), 1));
    for (std::uint32_t mask = 0; mask < (1U << srcs.size()); ++mask) {
        bool ok = true;
        for (std::size_t b = 0; b < srcs.size() && ok; ++b) {
            const bool v = (mask >> b) & 1U;
            ok = allows(d(srcs[b]), v);
            probe.set(srcs[b] - 1, v);
        }
        if (ok && allows(target, eval_function(f, probe))) return true;
    }
    return false;
}

Domains initial_domains(int n, const Config& c, const Config& d, int t) {
    Domains dom(static_cast<std::size_t>(t) + 1, std::vector<std::uint8_t>(static_cast<std::size_t>(n) + 1, 3));
    for (int i = 1; i <= n; ++i) {
        dom[0][static_cast<std::size_t>(i)] = c.node(i) ? 2 : 1;
        dom[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = d.node(i) ? 2 : 1;
    }
    return dom;
}

// Arc consistency over the unrolled layers; the first and last layers stay pinned.
// Returns false when some domain empties.
bool propagate(const System& sys, const std::vector<Sweep>& rs, Domains& dom) {
    const int n = sys.n;
    const int t = static_cast<int>(dom.size()) - 1;
    auto at = [&](int layer, int i) -> std::uint8_t& { return dom[static_cast<std::size_t>(layer)][static_cast<std::size_t>(i)]; };
    // Does some sweep and choice give node i at layer s a value in `target`?
    auto supported = [&](int s, int i, std::uint8_t target, int fixed, bool fixed_val, int fixed_layer) {
        for (const auto& r : rs) {
            auto read = [&](int u) { return r.before(u, i) ? s : s - 1; };
            if (fixed && read(fixed) != fixed_layer) continue;
            const std::function<std::uint8_t(int)> domf = [&](int u) { return at(read(u), u); };
            for (int j = 1; j <= choice_count(sys); ++j)
                if (can_produce(sys.fn(i, j), target, domf, fixed, fixed_val)) return true;
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 1; s <= t; ++s)
            for (int i = 1; i <= n; ++i) {
                for (int v = 0; v < 2; ++v) {
                    if (!allows(at(s, i), v != 0)) continue;
                    if (!supported(s, i, static_cast<std::uint8_t>(v ? 2 : 1), 0, false, 0)) {
                        at(s, i) &= static_cast<std::uint8_t>(v ? 1 : 2);
                        changed = true;
                    }
                }
                if (at(s, i) == 0) return false;
                // Source values with no support under any sweep reading them from the same layer.
                std::set<int> srcs;
                for (int j = 1; j <= choice_count(sys); ++j)
                    for (int u : sys.fn(i, j).srcs) srcs.insert(u);
                for (int u : srcs)
                    for (int layer : {s - 1, s}) {
                        if (layer == 0 || layer == t) continue;
                        bool every_sweep_reads = true;
                        for (const auto& r : rs) every_sweep_reads = every_sweep_reads && ((r.before(u, i) ? s : s - 1) == layer);
                        if (!every_sweep_reads) continue;
                        for (int w = 0; w < 2; ++w) {
                            if (!allows(at(layer, u), w != 0)) continue;
                            if (!supported(s, i, at(s, i), u, w != 0, layer)) {
                                at(layer, u) &= static_cast<std::uint8_t>(w ? 1 : 2);
                                changed = true;
                            }
                        }
                        if (at(layer, u) == 0) return false;
                    }
            }
    }
    return true;
}

// Can node i produce d_i when the sweep reads d for earlier nodes and x otherwise?
bool node_ok(const System& sys, const Sweep& r, int i, const Config& x, const Config& d, Config& scratch) {
    const bool want = d.node(i);
    for (int j = 1; j <= choice_count(sys); ++j) {
        const auto& f = sys.fn(i, j);
        for (int s : f.srcs) scratch.set(s - 1, r.before(s, i) ? d.node(s) : x.node(s));
        if (eval_function(f, scratch) == want) return true;
    }
    return false;
}

bool one_step(const System& sys, const Sweep& r, const Config& c, const Config& d) {
    Config scratch(sys.n);
    for (int i = 1; i <= sys.n; ++i)
        if (!node_ok(sys, r, i, c, d, scratch)) return false;
    return true;
}

Config layer_config(const Domains& dom, int layer, int n) {
    Config x(n);
    for (int i = 1; i <= n; ++i) x.set(i - 1, dom[static_cast<std::size_t>(layer)][static_cast<std::size_t>(i)] == 2);
    return x;
}

// Depth-first search over the intermediate layers, keeping arc consistency after every
// assignment. Fully assigned layers are checked step by step, since consistency is per node
// and a step must use one sweep for every node.
std::optional<std::vector<Config>> csp_reach(const System& sys, const std::vector<Sweep>& rs, const Config& c,
                                             const Config& d, int t, std::uint64_t& budget) {
    if (t == 0) return c == d ? std::optional<std::vector<Config>>(std::vector<Config>{c}) : std::nullopt;
    const int n = sys.n;
    auto step_ok = [&](const Config& x, const Config& y) {
        return std::any_of(rs.begin(), rs.end(), [&](const Sweep& r) { return one_step(sys, r, x, y); });
    };
    if (t == 1) return step_ok(c, d) ? std::optional<std::vector<Config>>(std::vector<Config>{c, d}) : std::nullopt;
    std::optional<std::vector<Config>> found;
    std::function<bool(Domains)> rec = [&](Domains dom) -> bool {
        if (budget == 0) throw ResourceError("bounded reachability search exceeded its budget");
        --budget;
        if (!propagate(sys, rs, dom)) return false;
        for (int s = 1; s < t; ++s)
            for (int i = 1; i <= n; ++i) {
                if (dom[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] != 3) continue;
                for (std::uint8_t v : {std::uint8_t{1}, std::uint8_t{2}}) {
                    auto next = dom;
                    next[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] = v;
                    if (rec(std::move(next))) return true;
                }
                return false;
            }
        std::vector<Config> path;
        for (int s = 0; s <= t; ++s) path.push_back(layer_config(dom, s, n));
        for (int s = 0; s < t; ++s)
            if (!step_ok(path[static_cast<std::size_t>(s)], path[static_cast<std::size_t>(s) + 1])) return false;
        found = std::move(path);
        return true;
    };
    rec(initial_domains(n, c, d, t));
    return found;
}

std::optional<std::vector<Config>> layered_reach(const System& sys, const Config& c, const Config& d, int t,
                                                 const Caps& caps) {
    std::vector<std::unordered_map<Config, Config, ConfigHash>> parent(static_cast<std::size_t>(t) + 1);
    parent[0].emplace(c, c);
    std::uint64_t total = 1;
    for (int s = 1; s <= t; ++s) {
        for (const auto& [x, _] : parent[static_cast<std::size_t>(s - 1)])
            for (auto& y : successor_set(sys, x, caps.action_cap)) parent[static_cast<std::size_t>(s)].emplace(y, x);
        total += parent[static_cast<std::size_t>(s)].size();
        if (total > caps.state_cap) throw ResourceError("layered search exceeds state cap");
    }
    if (!parent[static_cast<std::size_t>(t)].contains(d)) return std::nullopt;
    std::vector<Config> path{d};
    Config x = d;
    for (int s = t; s > 0; --s) {
        x = parent[static_cast<std::size_t>(s)].at(x);
        path.push_back(x);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::optional<std::vector<Config>> reach_exactly(const System& sys, const Config& c, const Config& d, int t,
                                                 const Caps& caps) {
    if (t < 0) return std::nullopt;
    if (!csp_eligible(sys)) return layered_reach(sys, c, d, t, caps);
    std::uint64_t budget = caps.state_cap * 16;
    return csp_reach(sys, sweeps(sys), c, d, t, budget);
}

std::optional<std::vector<Config>> reach_within(const System& sys, const Config& c, const Config& d, int t,
                                                const Caps& caps) {
    for (int s = 1; s <= t; ++s)
        if (auto p = reach_exactly(sys, c, d, s, caps)) return p;
    return std::nullopt;
}

}  // namespace bfds
