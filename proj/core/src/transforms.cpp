#include "bfds/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bfds/config_graph.hpp"

namespace bfds {

namespace {

MapTerm zero() { return {MapTerm::Kind::Zero, 0}; }
MapTerm one() { return {MapTerm::Kind::One, 0}; }
MapTerm src(int i) { return {MapTerm::Kind::Src, i}; }
MapTerm nsrc(int i) { return {MapTerm::Kind::NegSrc, i}; }

// A single-choice fixed system behaves exactly like a coordinated one.
bool coordinated_like(const System& sys) {
    return sys.selection.kind == SelectionKind::Coordinated || (sys.selection.kind == SelectionKind::Fixed && sys.k == 1);
}

Config apply_terms(const std::vector<MapTerm>& terms, const Config& c) {
    Config out(static_cast<int>(terms.size()));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& m = terms[t];
        bool v = false;
        switch (m.kind) {
        case MapTerm::Kind::Zero: v = false; break;
        case MapTerm::Kind::One: v = true; break;
        case MapTerm::Kind::Src: v = c.node(m.src); break;
        case MapTerm::Kind::NegSrc: v = !c.node(m.src); break;
        }
        out.set(static_cast<int>(t), v);
    }
    return out;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw ModelError(msg);
}

bool is_identity_on(const NodeFunction& f, int i) { return f.kind == FnKind::Pos && f.srcs[0] == i; }

}  // namespace

Config Embedding::map_source(const Config& c) const { return apply_terms(src, c); }

Config Embedding::map_target(const Config& c) const { return apply_terms(tgt ? *tgt : src, c); }

Embedding identity_embedding(int n) {
    Embedding e;
    e.rule = "identity";
    e.source_n = n;
    for (int i = 1; i <= n; ++i) e.src.push_back(src(i));
    return e;
}

NodeFunction remap_sources(const NodeFunction& f, const std::vector<int>& map) {
    NodeFunction g = f;
    for (int& s : g.srcs) s = map[static_cast<std::size_t>(s)];
    return g;
}

TransformResult async_to_parallel(const System& sys) {
    require(sys.schedule.kind == ScheduleKind::Asynchronous && sys.selection.kind == SelectionKind::Individual,
            "async_to_parallel needs an asynchronous system with individual selection");
    TransformResult r;
    System g(sys.n, sys.k + 1);
    for (int i = 1; i <= sys.n; ++i) {
        for (int j = 1; j <= sys.k; ++j) g.fn(i, j) = sys.fn(i, j);
        g.fn(i, sys.k + 1) = identity_function(i);
    }
    g.selection.kind = SelectionKind::Individual;
    g.schedule.kind = ScheduleKind::Parallel;
    r.system = std::move(g);
    r.embedding = identity_embedding(sys.n);
    r.claimed_rate = {sys.n, 1};
    r.notes.push_back("choice " + std::to_string(sys.k + 1) + " is the identity on every node");
    return r;
}

TransformResult parallel_to_async(const System& sys) {
    require(sys.schedule.kind == ScheduleKind::Parallel && sys.selection.kind == SelectionKind::Individual,
            "parallel_to_async needs a parallel system with individual selection");
    const int k_out = sys.k > 1 ? sys.k - 1 : 1;
    System g(sys.n, k_out);
    for (int i = 1; i <= sys.n; ++i) {
        int drop = 0;
        for (int j = 1; j <= sys.k && !drop; ++j)
            if (is_identity_on(sys.fn(i, j), i)) drop = j;
        if (!drop) throw ModelError("node " + std::to_string(i) + " has no identity choice");
        if (sys.k == 1) continue;  // identity-only input keeps its single identity column
        int col = 1;
        for (int j = 1; j <= sys.k; ++j)
            if (j != drop) g.fn(i, col++) = sys.fn(i, j);
    }
    g.selection.kind = SelectionKind::Individual;
    g.schedule.kind = ScheduleKind::Asynchronous;
    TransformResult r;
    r.system = std::move(g);
    r.embedding = identity_embedding(sys.n);
    r.claimed_rate = {1, 1};
    if (sys.k == 1) r.notes.push_back("single identity column kept so the output has k >= 1");
    return r;
}

namespace {

Selection doubled_selection(const Selection& s, int n, bool pair_nodes) {
    Selection out = s;
    if (s.kind == SelectionKind::SemiCoordinated) {
        for (auto& b : out.blocks) {
            const auto base = b;
            for (int v : base) b.push_back(v + n);
        }
    } else if (s.kind == SelectionKind::Individual && pair_nodes) {
        out.kind = SelectionKind::SemiCoordinated;
        out.blocks.clear();
        for (int i = 1; i <= n; ++i) out.blocks.push_back({i, i + n});
    }
    return out;
}

}  // namespace

TransformResult parallel_to_sequential(const System& sys) {
    require(sys.schedule.kind == ScheduleKind::Parallel, "parallel_to_sequential needs a parallel schedule");
    const int n = sys.n;
    System g(2 * n, sys.k);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= sys.k; ++j) {
            g.fn(i + n, j) = sys.fn(i, j);
            g.fn(i, j) = NodeFunction::pos(i + n);
        }
    g.selection = doubled_selection(sys.selection, n, false);
    if (sys.selection.kind == SelectionKind::Individual) g.selection.kind = SelectionKind::Individual;
    std::vector<int> perm;
    for (int i = n + 1; i <= 2 * n; ++i) perm.push_back(i);
    for (int i = 1; i <= n; ++i) perm.push_back(i);
    g.schedule.kind = ScheduleKind::FixedPermutation;
    g.schedule.perms = {perm};
    TransformResult r;
    r.system = std::move(g);
    r.embedding.rule = "duplicate";
    r.embedding.source_n = n;
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 1; i <= n; ++i) r.embedding.src.push_back(src(i));
    r.claimed_rate = {1, 1};
    return r;
}

namespace {

// Shared layout for the pipeline simulation of sequential coordinated systems.
TransformResult pipeline_to_parallel(const System& sys, const std::vector<std::vector<int>>& perms, bool pad) {
    const int n = sys.n, k = sys.k;
    const int L = static_cast<int>(perms.size());
    const int counters = k * L;
    auto v = [&](int l, int i) { return (l - 1) * n + i; };
    auto a = [&](int c, int l) { return n * (n + 1) + (c - 1) * (n + 1) + l; };
    const int z = n * (n + 1) + counters * (n + 1) + 1;
    const int core = z;
    const int total = pad ? k * (n + 1) * (n + 1) + 1 : core;
    System g(total, 2 * counters);
    g.selection.kind = SelectionKind::Coordinated;
    g.schedule.kind = ScheduleKind::Parallel;
    for (int p = 1; p <= L; ++p) {
        const auto& pi = perms[static_cast<std::size_t>(p - 1)];
        for (int j = 1; j <= k; ++j) {
            const int cnt = (p - 1) * k + j;  // counter row and G column
            const int gcol = cnt;
            const int hcol = counters + cnt;
            // G: pipeline row l -> row l+1, updating node pi(l) with f_{pi(l), j}.
            for (int l = 1; l <= n; ++l) {
                std::vector<int> map(static_cast<std::size_t>(n) + 1);
                for (int s = 1; s <= n; ++s) map[static_cast<std::size_t>(s)] = v(l, s);
                for (int i = 1; i <= n; ++i) {
                    if (i == pi[static_cast<std::size_t>(l - 1)])
                        g.fn(v(l + 1, i), gcol) = remap_sources(sys.fn(i, j), map);
                    else
                        g.fn(v(l + 1, i), gcol) = NodeFunction::pos(v(l, i));
                }
            }
            g.fn(a(cnt, 1), gcol) = NodeFunction::pos(z);
            for (int l = 1; l <= n; ++l) g.fn(a(cnt, l + 1), gcol) = NodeFunction::pos(a(cnt, l));
            // H: copy the last row back and rotate this counter home; other counters
            // keep column 1 and drop everything else.
            for (int l = 1; l <= n; ++l)
                for (int i = 1; i <= n; ++i) g.fn(v(l, i), hcol) = NodeFunction::pos(v(n + 1, i));
            for (int c = 1; c <= counters; ++c) {
                g.fn(a(c, 1), hcol) = c == cnt ? NodeFunction::pos(a(c, n + 1)) : identity_function(a(c, 1));
                for (int l = 2; l <= n + 1; ++l) g.fn(a(c, l), hcol) = NodeFunction::pos(z);
            }
        }
    }
    TransformResult r;
    r.system = std::move(g);
    r.embedding.rule = "pipeline";
    r.embedding.source_n = n;
    for (int l = 1; l <= n + 1; ++l)
        for (int i = 1; i <= n; ++i) r.embedding.src.push_back(src(i));
    for (int c = 1; c <= counters; ++c)
        for (int l = 1; l <= n + 1; ++l) r.embedding.src.push_back(l == 1 ? one() : zero());
    for (int t = core; t <= total; ++t) r.embedding.src.push_back(zero());
    r.claimed_rate = {n + 1, 1};
    for (int c = 1; c <= counters; ++c) {
        std::vector<int> row;
        for (int l = 1; l <= n + 1; ++l) row.push_back(a(c, l));
        r.prune.counter_rows.push_back(std::move(row));
    }
    r.notes.push_back("G columns keep pipeline row 1 and every other counter row unchanged");
    r.notes.push_back("H columns keep column 1 of counters other than their own and clear the rest");
    r.notes.push_back("node " + std::to_string(z) + " holds 0 and keeps its state under every column");
    if (pad && total > core)
        r.notes.push_back("nodes " + std::to_string(core + 1) + ".." + std::to_string(total) + " are inert padding");
    return r;
}

}  // namespace

TransformResult sequential_to_parallel(const System& sys) {
    require(sys.schedule.kind == ScheduleKind::FixedPermutation && coordinated_like(sys),
            "sequential_to_parallel needs a fixed permutation with coordinated selection");
    return pipeline_to_parallel(sys, sys.schedule.perms, true);
}

TransformResult permlist_to_parallel(const System& sys) {
    require((sys.schedule.kind == ScheduleKind::PermutationList || sys.schedule.kind == ScheduleKind::FixedPermutation) &&
                coordinated_like(sys),
            "permlist_to_parallel needs a permutation list with coordinated selection");
    return pipeline_to_parallel(sys, sys.schedule.perms, false);
}

TransformResult kchoice_to_3choice(const System& sys) {
    require(coordinated_like(sys), "kchoice_to_3choice needs coordinated selection");
    const bool seq = sys.schedule.kind == ScheduleKind::FixedPermutation ||
                     sys.schedule.kind == ScheduleKind::PermutationList;
    require(seq || sys.schedule.kind == ScheduleKind::Parallel,
            "kchoice_to_3choice needs a parallel, fixed-permutation or permutation-list schedule");
    const int n = sys.n, k = sys.k;
    // Sequential sweeps cannot rotate copies in place, so those schedules get one
    // spare copy; slot k+1 repeats choice 1.
    const int slots = seq ? k + 1 : k;
    auto v = [&](int i, int s) { return (s - 1) * n + i; };
    const int y1 = slots * n + 1, y2 = y1 + 1, y3 = y1 + 2;
    auto slot_choice = [&](int s) { return s <= k ? s : 1; };
    System g(slots * n + 3, 3);
    g.selection.kind = SelectionKind::Coordinated;
    for (int s = 1; s <= slots; ++s) {
        std::vector<int> map(static_cast<std::size_t>(n) + 1);
        for (int x = 1; x <= n; ++x) map[static_cast<std::size_t>(x)] = v(x, s);
        for (int i = 1; i <= n; ++i) {
            g.fn(v(i, s), 1) = remap_sources(sys.fn(i, slot_choice(s)), map);
            if (!seq) {
                const int from = s == 1 ? k : s - 1;
                g.fn(v(i, s), 2) = NodeFunction::pos(v(i, from));
            } else {
                const int from = s == slots ? 1 : s + 1;
                g.fn(v(i, s), 2) = NodeFunction::pos(v(i, from));
            }
            g.fn(v(i, s), 3) = s == 1 ? identity_function(v(i, s)) : NodeFunction::pos(y1);
        }
    }
    if (!seq) {
        for (int col = 1; col <= 2; ++col) {
            g.fn(y1, col) = identity_function(y1);
            g.fn(y2, col) = identity_function(y2);
            g.fn(y3, col) = NodeFunction::pos(y2);
        }
        g.fn(y1, 3) = identity_function(y1);
        g.fn(y2, 3) = NodeFunction::pos(y1);
        g.fn(y3, 3) = NodeFunction::pos(y2);
        g.schedule.kind = ScheduleKind::Parallel;
    } else {
        for (int col = 1; col <= 2; ++col) {
            g.fn(y1, col) = NodeFunction::pos(y3);
            g.fn(y2, col) = identity_function(y2);
            g.fn(y3, col) = identity_function(y3);
        }
        g.fn(y1, 3) = NodeFunction::pos(y2);
        g.fn(y2, 3) = NodeFunction::pos(y3);
        g.fn(y3, 3) = identity_function(y3);
        g.schedule.kind = sys.schedule.kind;
        for (const auto& p : sys.schedule.perms) {
            std::vector<int> q;
            for (int s = 1; s <= slots; ++s)
                for (int i : p) q.push_back(v(i, s));
            q.push_back(y1);
            q.push_back(y2);
            q.push_back(y3);
            g.schedule.perms.push_back(std::move(q));
        }
    }
    TransformResult r;
    r.system = std::move(g);
    r.embedding.rule = "copies";
    r.embedding.source_n = n;
    std::vector<MapTerm> tgt;
    for (int s = 1; s <= slots; ++s)
        for (int i = 1; i <= n; ++i) {
            r.embedding.src.push_back(src(i));
            tgt.push_back(s == 1 ? src(i) : zero());
        }
    if (!seq) {
        r.embedding.src.insert(r.embedding.src.end(), {zero(), one(), one()});
        tgt.insert(tgt.end(), {zero(), zero(), one()});
    } else {
        r.embedding.src.insert(r.embedding.src.end(), {zero(), one(), zero()});
        tgt.insert(tgt.end(), {one(), zero(), zero()});
    }
    r.embedding.tgt = std::move(tgt);
    r.claimed_rate = {k + 1, 1};
    if (seq) r.notes.push_back("permutation schedules use k+1 copies; copy k+1 repeats choice 1");
    return r;
}

TransformResult eliminate_negation(const System& sys) {
    require(sys.schedule.kind == ScheduleKind::Parallel || sys.schedule.kind == ScheduleKind::FixedPermutation ||
                sys.schedule.kind == ScheduleKind::PermutationList,
            "eliminate_negation needs a parallel or permutation schedule");
    const int n = sys.n;
    System g(2 * n, sys.k);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= sys.k; ++j) {
            const auto& f = sys.fn(i, j);
            if (!f.is_unary()) throw ModelError("eliminate_negation needs unary functions only");
            const int l = f.srcs[0];
            if (f.kind == FnKind::Pos) {
                g.fn(i, j) = NodeFunction::pos(l);
                g.fn(i + n, j) = NodeFunction::pos(l + n);
            } else {
                g.fn(i, j) = NodeFunction::pos(l + n);
                g.fn(i + n, j) = NodeFunction::pos(l);
            }
        }
    g.selection = doubled_selection(sys.selection, n, true);
    g.schedule.kind = sys.schedule.kind;
    for (const auto& p : sys.schedule.perms) {
        std::vector<int> q;
        for (int i : p) {
            q.push_back(i);
            q.push_back(i + n);
        }
        g.schedule.perms.push_back(std::move(q));
    }
    TransformResult r;
    r.system = std::move(g);
    r.embedding.rule = "duplicate-flip";
    r.embedding.source_n = n;
    for (int i = 1; i <= n; ++i) r.embedding.src.push_back(src(i));
    for (int i = 1; i <= n; ++i) r.embedding.src.push_back(nsrc(i));
    r.claimed_rate = {1, 1};
    if (sys.selection.kind == SelectionKind::Individual)
        r.notes.push_back("node i and its shadow i+n share one selection block");
    return r;
}

const std::vector<std::string>& transform_names() {
    static const std::vector<std::string> names{"async-to-parallel", "parallel-to-async", "parallel-to-seq",
                                                "seq-to-parallel",   "permlist-to-parallel", "k-to-3",
                                                "eliminate-negation"};
    return names;
}

TransformResult apply_transform(const std::string& name, const System& sys) {
    if (name == "async-to-parallel") return async_to_parallel(sys);
    if (name == "parallel-to-async") return parallel_to_async(sys);
    if (name == "parallel-to-seq") return parallel_to_sequential(sys);
    if (name == "seq-to-parallel") return sequential_to_parallel(sys);
    if (name == "permlist-to-parallel") return permlist_to_parallel(sys);
    if (name == "k-to-3") return kchoice_to_3choice(sys);
    if (name == "eliminate-negation") return eliminate_negation(sys);
    throw InputError("unknown transform '" + name + "'");
}

namespace {

std::int64_t cmp_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    // sign of a/b - c/d for positive denominators
    return a * d - c * b;
}

// Shortest nontrivial distances from s to every vertex of an explicit graph.
std::vector<int> nontrivial_dist(const ConfigGraph& g, std::uint64_t s) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<std::uint64_t> q;
    for (const auto& a : g.out[s])
        if (dist[a.dst] < 0) {
            dist[a.dst] = 1;
            q.push_back(a.dst);
        }
    for (std::size_t h = 0; h < q.size(); ++h)
        for (const auto& a : g.out[q[h]])
            if (dist[a.dst] < 0) {
                dist[a.dst] = dist[q[h]] + 1;
                q.push_back(a.dst);
            }
    return dist;
}

}  // namespace

bool PruneRule::dead(const Config& c) const {
    int away = 0;
    for (const auto& row : counter_rows) {
        int ones = 0;
        for (int v : row) ones += c.node(v) ? 1 : 0;
        if (ones == 0) return true;
        if (ones > 1 || !c.node(row.front())) ++away;
    }
    return away >= 2;
}

namespace {

// The rule only reads counter rows. On the read-closed support of those rows the target
// evolves on its own, so closure is checked on that smaller system from the projected images.
void check_prune_rule(const System& G, const PruneRule& prune,
                      const std::unordered_map<Config, std::uint64_t, ConfigHash>& image, std::uint64_t state_cap) {
    if (G.schedule.kind != ScheduleKind::Parallel) throw InputError("prune rule needs a parallel target system");
    std::vector<int> local(static_cast<std::size_t>(G.n) + 1, 0);
    std::vector<int> support;
    auto add = [&](int v) {
        if (v < 1 || v > G.n) throw InputError("prune rule names a node outside the target system");
        if (local[static_cast<std::size_t>(v)] == 0) {
            support.push_back(v);
            local[static_cast<std::size_t>(v)] = static_cast<int>(support.size());
        }
    };
    for (const auto& row : prune.counter_rows) {
        if (row.empty()) throw InputError("prune rule has an empty counter row");
        for (int v : row) add(v);
    }
    for (std::size_t h = 0; h < support.size(); ++h)
        for (int j = 1; j <= G.k; ++j)
            for (int s : G.fn(support[h], j).srcs) add(s);

    System P(static_cast<int>(support.size()), G.k);
    P.selection.kind = G.selection.kind == SelectionKind::SemiCoordinated ? SelectionKind::Individual : G.selection.kind;
    for (std::size_t h = 0; h < support.size(); ++h)
        for (int j = 1; j <= G.k; ++j) P.fn(static_cast<int>(h) + 1, j) = remap_sources(G.fn(support[h], j), local);
    PruneRule pr;
    for (const auto& row : prune.counter_rows) {
        pr.counter_rows.emplace_back();
        for (int v : row) pr.counter_rows.back().push_back(local[static_cast<std::size_t>(v)]);
    }
    auto project = [&](const Config& c) {
        Config p(P.n);
        for (std::size_t h = 0; h < support.size(); ++h) p.set(static_cast<int>(h), c.node(support[h]));
        return p;
    };

    std::unordered_set<Config, ConfigHash> seen;
    std::vector<Config> stack;
    for (const auto& [img, b] : image) {
        if (prune.dead(img)) throw InputError("prune rule marks an embedding image dead");
        auto p = project(img);
        if (seen.insert(p).second) stack.push_back(std::move(p));
    }
    while (!stack.empty()) {
        const Config x = std::move(stack.back());
        stack.pop_back();
        const bool x_dead = pr.dead(x);
        for (auto& y : successor_set(P, x)) {
            if (x_dead && !pr.dead(y)) throw InputError("prune rule is not closed under successors");
            if (seen.insert(y).second) {
                if (seen.size() > state_cap) throw ResourceError("prune rule check exceeds state cap");
                stack.push_back(std::move(y));
            }
        }
    }
}

}  // namespace

EmbeddingReport verify_embedding(const System& F, const System& G, const Embedding& nu, int length_bound,
                                 std::uint64_t state_cap, const PruneRule& prune) {
    EmbeddingReport rep;
    const ConfigGraph fg = build_graph(F, state_cap);
    const std::uint64_t N = fg.vertex_count();
    std::unordered_map<Config, std::uint64_t, ConfigHash> image;
    for (std::uint64_t b = 0; b < N; ++b) {
        const Config img = nu.map_target(Config::from_index(F.n, b));
        if (img.size() != G.n) throw InputError("embedding image length does not match target system");
        if (!image.emplace(img, b).second) throw InputError("embedding is not injective");
    }
    if (!prune.empty()) check_prune_rule(G, prune, image, state_cap);
    const bool split = nu.split();
    for (std::uint64_t a = 0; a < N; ++a) {
        const auto df = nontrivial_dist(fg, a);
        std::vector<int> dg(N, -1);
        std::size_t found = 0;
        const Config start = nu.map_source(Config::from_index(F.n, a));
        std::unordered_map<Config, int, ConfigHash> seen;
        std::vector<Config> frontier{start};
        int depth = 0;
        while (!frontier.empty() && found < N) {
            if (depth == length_bound) {
                rep.bounded = true;
                break;
            }
            ++depth;
            std::vector<Config> next;
            for (const auto& x : frontier)
                for (auto& y : successor_set(G, x)) {
                    if (seen.contains(y)) continue;
                    seen.emplace(y, depth);
                    if (seen.size() > state_cap) throw ResourceError("embedding check exceeds state cap");
                    if (!prune.empty() && prune.dead(y)) continue;
                    if (auto it = image.find(y); it != image.end() && dg[it->second] < 0) {
                        dg[it->second] = depth;
                        ++found;
                    }
                    next.push_back(std::move(y));
                }
            frontier = std::move(next);
        }
        for (std::uint64_t b = 0; b < N; ++b) {
            const bool f_reach = df[b] >= 0 || (split && a == b);
            const bool g_reach = dg[b] >= 0;
            if (f_reach != g_reach) {
                rep.is_embedding = false;
                rep.counterexample = {Config::from_index(F.n, a), Config::from_index(F.n, b)};
                rep.detail = std::string(f_reach ? "source path has no image" : "target path has no preimage");
                return rep;
            }
            if (!f_reach || (split && a == b) || df[b] < 0) continue;
            if (cmp_ratio(dg[b], df[b], rep.expansion.num, rep.expansion.den) > 0) rep.expansion = {dg[b], df[b]};
        }
    }
    const auto gcd = std::gcd(rep.expansion.num, rep.expansion.den);
    if (gcd > 0) rep.expansion = {rep.expansion.num / gcd, rep.expansion.den / gcd};
    return rep;
}

std::string embedding_to_text(const Embedding& e) {
    std::ostringstream os;
    auto dump = [&](const std::vector<MapTerm>& terms) {
        for (const auto& t : terms) {
            switch (t.kind) {
            case MapTerm::Kind::Zero: os << "0\n"; break;
            case MapTerm::Kind::One: os << "1\n"; break;
            case MapTerm::Kind::Src: os << 'x' << t.src << '\n'; break;
            case MapTerm::Kind::NegSrc: os << "~x" << t.src << '\n'; break;
            }
        }
    };
    os << "rule=" << e.rule << "\nsource_n=" << e.source_n << "\nsrc\n";
    dump(e.src);
    if (e.tgt) {
        os << "tgt\n";
        dump(*e.tgt);
    }
    return os.str();
}

Embedding embedding_from_text(const std::string& text) {
    Embedding e;
    std::istringstream is(text);
    std::string line;
    std::vector<MapTerm>* cur = nullptr;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("embedding line " + std::to_string(lineno) + ": " + what);
    };
    auto number = [&](std::string_view digits) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("bad number '" + std::string(digits) + "'");
        return v;
    };
    auto term_src = [&](std::string_view digits) {
        const int v = number(digits);
        if (v < 1 || v > e.source_n) fail("source node " + std::to_string(v) + " out of range");
        return v;
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.rfind("rule=", 0) == 0) {
            e.rule = line.substr(5);
        } else if (line.rfind("source_n=", 0) == 0) {
            e.source_n = number(std::string_view(line).substr(9));
            if (e.source_n < 1) fail("source_n must be positive");
        } else if (line == "src") {
            cur = &e.src;
        } else if (line == "tgt") {
            e.tgt.emplace();
            cur = &*e.tgt;
        } else {
            if (!cur) fail("term outside a section");
            const std::string_view v(line);
            if (line == "0") cur->push_back(zero());
            else if (line == "1") cur->push_back(one());
            else if (v.starts_with("~x")) cur->push_back(nsrc(term_src(v.substr(2))));
            else if (v.starts_with("x")) cur->push_back(src(term_src(v.substr(1))));
            else fail("bad term '" + line + "'");
        }
    }
    if (e.source_n < 1) throw InputError("embedding needs source_n");
    if (e.tgt && e.tgt->size() != e.src.size()) throw InputError("embedding src and tgt sections differ in length");
    return e;
}

}  // namespace bfds
