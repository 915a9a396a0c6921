#include "bfds/permsolve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "bfds/transforms.hpp"

namespace bfds {

namespace {

std::vector<int> distinct_sources(const NodeFunction& f) {
    std::vector<int> s = f.srcs;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

void check_pair(const System& sys, const Config& c, const Config& d) {
    if (c.size() != sys.n || d.size() != sys.n) throw InputError("configuration length does not match system");
}

std::vector<std::vector<int>> sweeps_of(const System& sys) {
    if (sys.schedule.kind == ScheduleKind::FixedPermutation || sys.schedule.kind == ScheduleKind::PermutationList)
        return sys.schedule.perms;
    if (sys.schedule.kind != ScheduleKind::ArbitraryPermutation)
        throw ModelError("robustness needs a sequential schedule (fixed, list, or arbitrary permutation)");
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(sys.n));
    std::iota(p.begin(), p.end(), 1);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Kahn's algorithm, smallest ready node first. Empty result on a cycle.
std::vector<int> topo_order(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n) + 1);
    std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
    for (auto [a, b] : arcs) {
        out[static_cast<std::size_t>(a)].push_back(b);
        ++indeg[static_cast<std::size_t>(b)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 1; i <= n; ++i)
        if (indeg[static_cast<std::size_t>(i)] == 0) ready.push(i);
    std::vector<int> order;
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int w : out[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
    if (static_cast<int>(order.size()) != n) return {};
    return order;
}

// Sweep order by levels: level 0 has no incoming arcs, each later level only depends on earlier ones.
std::vector<int> level_order(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<int> level(static_cast<std::size_t>(n) + 1, 0);
    const auto topo = topo_order(n, arcs);
    if (topo.empty()) return {};
    std::vector<std::vector<int>> in(static_cast<std::size_t>(n) + 1);
    for (auto [a, b] : arcs) in[static_cast<std::size_t>(b)].push_back(a);
    for (int v : topo)
        for (int u : in[static_cast<std::size_t>(v)])
            level[static_cast<std::size_t>(v)] = std::max(level[static_cast<std::size_t>(v)], level[static_cast<std::size_t>(u)] + 1);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return level[static_cast<std::size_t>(a)] < level[static_cast<std::size_t>(b)]; });
    return order;
}

std::optional<std::vector<int>> column_perm(const System& sys, int j, const Config& c, const Config& d) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 1; i <= sys.n; ++i) {
        const auto oc = unary_constraint(sys.fn(i, j), i, c, d);
        if (oc.kind == OrderConstraint::Kind::ForcedFalse) return std::nullopt;
        if (oc.kind == OrderConstraint::Kind::Before) arcs.emplace_back(oc.i, oc.j);
    }
    auto order = topo_order(sys.n, arcs);
    if (order.empty()) return std::nullopt;
    return order;
}

void require_arbitrary(const System& sys, const char* who) {
    if (sys.schedule.kind != ScheduleKind::ArbitraryPermutation)
        throw ModelError(std::string(who) + " needs the arbitrary-permutation schedule");
}

}  // namespace

OrderConstraint unary_constraint(const NodeFunction& f, int i, const Config& c, const Config& d) {
    using K = OrderConstraint::Kind;
    const bool want = d.node(i);
    const auto srcs = distinct_sources(f);
    if (srcs.size() > 1) throw ModelError("node " + std::to_string(i) + " has a function of fan-in above one");
    if (srcs.empty()) return {eval_function(f, c) == want ? K::ForcedTrue : K::ForcedFalse, i, 0};
    const int s = srcs[0];
    Config probe(c.size());
    auto val = [&](bool x) {
        probe.set(s - 1, x);
        return eval_function(f, probe);
    };
    if (s == i) return {val(c.node(i)) == want ? K::ForcedTrue : K::ForcedFalse, i, 0};
    const bool from_c = val(c.node(s)) == want;
    const bool from_d = val(d.node(s)) == want;
    if (from_c && from_d) return {K::ForcedTrue, i, 0};
    if (!from_c && !from_d) return {K::ForcedFalse, i, 0};
    if (from_d) return {K::Before, s, i};
    return {K::Before, i, s};
}

bool robust_reach_bruteforce(const System& sys, const Config& c, const Config& d, int t, std::uint64_t budget) {
    check_pair(sys, c, d);
    if (t < 0) return false;
    const auto sweeps = sweeps_of(sys);
    std::map<std::pair<Config, int>, bool> memo;
    std::function<bool(const Config&, int)> rec = [&](const Config& x, int left) -> bool {
        if (left == 0) return x == d;
        auto key = std::make_pair(x, left);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool all = true;
        for (const auto& p : sweeps) {
            std::set<Config> next;
            for_each_choice(sys, [&](const std::vector<int>& choice) {
                if (budget == 0) throw ResourceError("robustness enumeration exceeded its budget");
                --budget;
                next.insert(step_sequential(sys, x, choice, p));
            });
            bool some = false;
            for (const auto& y : next)
                if (rec(y, left - 1)) {
                    some = true;
                    break;
                }
            if (!some) {
                all = false;
                break;
            }
        }
        memo.emplace(std::move(key), all);
        return all;
    };
    return rec(c, t);
}

RobustReport robust_one_step_fast(const System& sys, const Config& c, const Config& d, int q, std::uint64_t cap) {
    check_pair(sys, c, d);
    require_arbitrary(sys, "robust_one_step_fast");
    if (sys.selection.kind != SelectionKind::Individual && sys.selection.kind != SelectionKind::Fixed)
        throw ModelError("robust_one_step_fast needs individual selection");
    const int choices = sys.selection.kind == SelectionKind::Fixed ? 1 : sys.k;
    for (int i = 1; i <= sys.n; ++i)
        for (int j = 1; j <= choices; ++j) {
            const auto& f = sys.fn(i, j);
            if (f.kind == FnKind::Table && static_cast<int>(f.srcs.size()) > q)
                throw ModelError("node " + std::to_string(i) + " choice " + std::to_string(j) + " has fan-in above " +
                                 std::to_string(q));
        }

    RobustReport rep;
    rep.w.resize(static_cast<std::size_t>(sys.n));
    for (int z = 1; z <= sys.n; ++z) {
        const bool beta = d.node(z);
        bool safe = false;  // some choice always yields beta
        std::vector<std::vector<WPair>> families;
        for (int j = 1; j <= choices && !safe; ++j) {
            const auto& f = sys.fn(z, j);
            std::vector<int> down;  // 1 -> 0
            std::vector<int> up;    // 0 -> 1
            for (int s : distinct_sources(f)) {
                if (s == z || c.node(s) == d.node(s)) continue;
                (c.node(s) ? down : up).push_back(s);
            }
            std::vector<WPair> wf;
            bool drop = false;
            if (f.kind == FnKind::Or || f.kind == FnKind::And) {
                const bool is_or = f.kind == FnKind::Or;
                // The absorbing value (1 for OR, 0 for AND) on an input that does not move.
                bool absorbed = false;
                for (int s : f.srcs)
                    if ((s == z || c.node(s) == d.node(s)) && c.node(s) == is_or) absorbed = true;
                const bool absorbing_target = beta == is_or;
                if (absorbed) {
                    if (absorbing_target) safe = true;
                    else drop = true;
                } else if (absorbing_target) {
                    // Fails iff no input reads the absorbing value.
                    if (down.empty() && up.empty()) drop = true;
                    else if (is_or) wf.push_back({down, up});
                    else wf.push_back({up, down});
                } else {
                    // Fails iff some input reads the absorbing value.
                    if (down.empty() && up.empty()) safe = true;
                    for (int s : down) wf.push_back(is_or ? WPair{{}, {s}} : WPair{{s}, {}});
                    for (int s : up) wf.push_back(is_or ? WPair{{s}, {}} : WPair{{}, {s}});
                }
            } else {
                std::vector<int> u = down;
                u.insert(u.end(), up.begin(), up.end());
                std::sort(u.begin(), u.end());
                Config probe = c;
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u.size()); ++mask) {
                    WPair p;
                    for (std::size_t b = 0; b < u.size(); ++b) {
                        const int s = u[b];
                        const bool before = (mask >> b) & 1U;
                        probe.set(s - 1, before ? d.node(s) : c.node(s));
                        (before ? p.before : p.after).push_back(s);
                    }
                    if (eval_function(f, probe) != beta) wf.push_back(std::move(p));
                }
                if (wf.empty()) safe = true;
                else if (wf.size() == (std::size_t{1} << u.size())) drop = true;
            }
            if (!safe && !drop) families.push_back(std::move(wf));
        }
        auto& wz = rep.w[static_cast<std::size_t>(z - 1)];
        if (safe) continue;
        std::set<WPair> acc{WPair{}};
        for (const auto& fam : families) {
            std::set<WPair> next;
            for (const auto& a : acc)
                for (const auto& b : fam) {
                    WPair m;
                    std::set_union(a.before.begin(), a.before.end(), b.before.begin(), b.before.end(),
                                   std::back_inserter(m.before));
                    std::set_union(a.after.begin(), a.after.end(), b.after.begin(), b.after.end(),
                                   std::back_inserter(m.after));
                    std::vector<int> both;
                    std::set_intersection(m.before.begin(), m.before.end(), m.after.begin(), m.after.end(),
                                          std::back_inserter(both));
                    if (!both.empty()) continue;
                    next.insert(std::move(m));
                    if (next.size() > cap) throw ResourceError("witness family exceeds cap");
                }
            acc = std::move(next);
            if (acc.empty()) break;
        }
        wz.assign(acc.begin(), acc.end());
        if (!wz.empty() && !rep.failing_node) {
            rep.robust = false;
            rep.failing_node = z;
            const auto& p = wz.front();
            std::vector<char> placed(static_cast<std::size_t>(sys.n) + 1, 0);
            for (int s : p.before) placed[static_cast<std::size_t>(s)] = 1;
            for (int s : p.after) placed[static_cast<std::size_t>(s)] = 1;
            placed[static_cast<std::size_t>(z)] = 1;
            rep.counter_perm = p.before;
            rep.counter_perm.push_back(z);
            for (int i = 1; i <= sys.n; ++i)
                if (!placed[static_cast<std::size_t>(i)]) rep.counter_perm.push_back(i);
            rep.counter_perm.insert(rep.counter_perm.end(), p.after.begin(), p.after.end());
        }
    }
    return rep;
}

bool robust_reach(const System& sys, const Config& c, const Config& d, int t) {
    if (t == 1 && sys.schedule.kind == ScheduleKind::ArbitraryPermutation) {
        try {
            return robust_one_step_fast(sys, c, d).robust;
        } catch (const ModelError&) {
        }
    }
    return robust_reach_bruteforce(sys, c, d, t);
}

std::optional<PermWitness> perm_exists_1choice_unary(const System& sys, const Config& c, const Config& d) {
    check_pair(sys, c, d);
    require_arbitrary(sys, "perm_exists_1choice_unary");
    if (sys.k != 1 && sys.selection.kind != SelectionKind::Fixed)
        throw ModelError("perm_exists_1choice_unary needs a 1-choice system");
    auto p = column_perm(sys, 1, c, d);
    if (!p) return std::nullopt;
    return PermWitness{*p, std::vector<int>(static_cast<std::size_t>(sys.n), 1)};
}

std::optional<PermWitness> perm_exists_coordinated(const System& sys, const Config& c, const Config& d) {
    check_pair(sys, c, d);
    require_arbitrary(sys, "perm_exists_coordinated");
    if (sys.selection.kind != SelectionKind::Coordinated && sys.k != 1)
        throw ModelError("perm_exists_coordinated needs coordinated selection");
    for (int j = 1; j <= sys.k; ++j)
        if (auto p = column_perm(sys, j, c, d)) return PermWitness{*p, std::vector<int>(static_cast<std::size_t>(sys.n), j)};
    return std::nullopt;
}

std::optional<PermWitness> perm_exists_individual_search(const System& sys, const Config& c, const Config& d,
                                                         std::uint64_t budget) {
    check_pair(sys, c, d);
    require_arbitrary(sys, "perm_exists_individual_search");
    if (sys.selection.kind != SelectionKind::Individual && sys.selection.kind != SelectionKind::Fixed)
        throw ModelError("perm_exists_individual_search needs individual selection");
    const int n = sys.n;
    const int choices = sys.selection.kind == SelectionKind::Fixed ? 1 : sys.k;
    std::vector<int> choice(static_cast<std::size_t>(n), 1);
    struct Option {
        int j;
        int from;
        int to;
    };
    // Labelled arcs: node i keeps the arcs of its choices that depend on the order.
    std::vector<std::pair<int, std::vector<Option>>> labels;
    for (int i = 1; i <= n; ++i) {
        std::vector<Option> opts;
        bool free = false;
        for (int j = 1; j <= choices && !free; ++j) {
            const auto oc = unary_constraint(sys.fn(i, j), i, c, d);
            if (oc.kind == OrderConstraint::Kind::ForcedTrue) {
                free = true;
                choice[static_cast<std::size_t>(i - 1)] = j;
            } else if (oc.kind == OrderConstraint::Kind::Before) {
                const bool dup = std::any_of(opts.begin(), opts.end(), [&](const Option& o) { return o.from == oc.i && o.to == oc.j; });
                if (!dup) opts.push_back({j, oc.i, oc.j});
            }
        }
        if (free) continue;
        if (opts.empty()) return std::nullopt;
        labels.emplace_back(i, std::move(opts));
    }
    // Fewest options first keeps the search tree narrow.
    std::stable_sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    std::vector<std::pair<int, int>> chosen;
    auto reaches = [&](int from, int to) {
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> stack{from};
        seen[static_cast<std::size_t>(from)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            if (v == to) return true;
            for (int w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
        return false;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t p) -> bool {
        if (budget == 0) throw ResourceError("permutation search exceeded its budget");
        --budget;
        if (p == labels.size()) return true;
        const int i = labels[p].first;
        for (const auto& o : labels[p].second) {
            if (reaches(o.to, o.from)) continue;  // would close a cycle
            adj[static_cast<std::size_t>(o.from)].push_back(o.to);
            chosen.emplace_back(o.from, o.to);
            choice[static_cast<std::size_t>(i - 1)] = o.j;
            if (rec(p + 1)) return true;
            adj[static_cast<std::size_t>(o.from)].pop_back();
            chosen.pop_back();
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return PermWitness{level_order(n, chosen), choice};
}

std::optional<PermWitness> perm_exists_bruteforce(const System& sys, const Config& c, const Config& d,
                                                  std::uint64_t budget) {
    check_pair(sys, c, d);
    std::vector<int> p(static_cast<std::size_t>(sys.n));
    std::iota(p.begin(), p.end(), 1);
    std::optional<PermWitness> found;
    do {
        for_each_choice(sys, [&](const std::vector<int>& choice) {
            if (found) return;
            if (budget == 0) throw ResourceError("permutation enumeration exceeded its budget");
            --budget;
            if (step_sequential(sys, c, choice, p) == d) found = PermWitness{p, choice};
        });
        if (found) return found;
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}

bool replay(const System& sys, const Config& c, const Config& d, const PermWitness& w) {
    if (!is_permutation(w.perm, sys.n) || static_cast<int>(w.choice.size()) != sys.n) return false;
    for (int j : w.choice)
        if (j < 1 || j > sys.k) return false;
    return step_sequential(sys, c, w.choice, w.perm) == d;
}

}  // namespace bfds
