#include "bfds/system.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace bfds {

Config::Config(int n) : n_(n), w_(static_cast<std::size_t>((n + 63) / 64), 0) {
    if (n < 0) throw InputError("negative configuration length");
}

Config Config::from_string(std::string_view bits) {
    Config c(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') c.set(static_cast<int>(i), true);
        else if (bits[i] != '0') throw InputError("configuration must be a 0/1 string: '" + std::string(bits) + "'");
    }
    return c;
}

Config Config::from_index(int n, std::uint64_t idx) {
    if (n > 64) throw InputError("index form limited to 64 nodes");
    Config c(n);
    for (int i = 0; i < n; ++i) c.set(i, (idx >> (n - 1 - i)) & 1u);
    return c;
}

std::string Config::str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
        if (get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::uint64_t Config::index() const {
    if (n_ > 64) throw InputError("index form limited to 64 nodes");
    if (n_ == 0) return 0;
    return w_[0] >> (64 - n_);
}

std::size_t Config::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(n_);
    for (auto w : w_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

int Config::popcount() const {
    int p = 0;
    for (auto w : w_) p += std::popcount(w);
    return p;
}

Config Config::concat(const Config& other) const {
    Config r(n_ + other.n_);
    for (int i = 0; i < n_; ++i) r.set(i, get(i));
    for (int i = 0; i < other.n_; ++i) r.set(n_ + i, other.get(i));
    return r;
}

Config Config::slice(int from, int len) const {
    Config r(len);
    for (int i = 0; i < len; ++i) r.set(i, get(from + i));
    return r;
}

NodeFunction NodeFunction::constant(bool b) {
    NodeFunction f;
    f.kind = FnKind::Const;
    f.value = b;
    return f;
}

NodeFunction NodeFunction::pos(int src) {
    NodeFunction f;
    f.kind = FnKind::Pos;
    f.srcs = {src};
    return f;
}

NodeFunction NodeFunction::neg(int src) {
    NodeFunction f;
    f.kind = FnKind::Neg;
    f.srcs = {src};
    return f;
}

NodeFunction NodeFunction::any_of(std::vector<int> srcs) {
    NodeFunction f;
    f.kind = FnKind::Or;
    f.srcs = std::move(srcs);
    return f;
}

NodeFunction NodeFunction::all_of(std::vector<int> srcs) {
    NodeFunction f;
    f.kind = FnKind::And;
    f.srcs = std::move(srcs);
    return f;
}

NodeFunction NodeFunction::make_table(std::vector<int> srcs, std::vector<std::uint8_t> bits) {
    NodeFunction f;
    f.kind = FnKind::Table;
    f.srcs = std::move(srcs);
    f.table = std::move(bits);
    return f;
}

NodeFunction identity_function(int i) { return NodeFunction::pos(i); }

bool eval_function(const NodeFunction& f, const Config& c) {
    switch (f.kind) {
    case FnKind::Const:
        return f.value;
    case FnKind::Pos:
        return c.node(f.srcs[0]);
    case FnKind::Neg:
        return !c.node(f.srcs[0]);
    case FnKind::Or:
        for (int s : f.srcs)
            if (c.node(s)) return true;
        return false;
    case FnKind::And:
        for (int s : f.srcs)
            if (!c.node(s)) return false;
        return true;
    case FnKind::Table: {
        std::size_t row = 0;
        for (int s : f.srcs) row = (row << 1) | (c.node(s) ? 1u : 0u);
        return f.table[row] != 0;
    }
    }
    return false;
}

System::System(int n_, int k_) : n(n_), k(k_) {
    if (n_ < 1 || k_ < 1) throw InputError("system needs n >= 1 and k >= 1");
    functions.assign(static_cast<std::size_t>(n_), std::vector<NodeFunction>(static_cast<std::size_t>(k_)));
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= k_; ++j) fn(i, j) = identity_function(i);
}

bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : p) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

namespace {

std::string where(int i, int j) {
    return "f " + std::to_string(i) + " " + std::to_string(j);
}

}  // namespace

void System::validate(int max_fan_in) const {
    if (n < 1 || k < 1) throw InputError("system needs n >= 1 and k >= 1");
    if (static_cast<int>(functions.size()) != n) throw InputError("function grid has wrong row count");
    for (int i = 1; i <= n; ++i) {
        if (static_cast<int>(functions[i - 1].size()) != k) throw InputError("function grid row " + std::to_string(i) + " has wrong length");
        for (int j = 1; j <= k; ++j) {
            const auto& f = fn(i, j);
            for (int s : f.srcs)
                if (s < 1 || s > n) throw InputError(where(i, j) + ": source " + std::to_string(s) + " out of range");
            switch (f.kind) {
            case FnKind::Const:
                if (!f.srcs.empty()) throw InputError(where(i, j) + ": constant takes no sources");
                break;
            case FnKind::Pos:
            case FnKind::Neg:
                if (f.srcs.size() != 1) throw InputError(where(i, j) + ": unary function needs one source");
                break;
            case FnKind::Or:
            case FnKind::And:
                if (f.srcs.empty()) throw InputError(where(i, j) + ": empty source list");
                break;
            case FnKind::Table:
                if (static_cast<int>(f.srcs.size()) > max_fan_in) throw InputError(where(i, j) + ": fan-in exceeds limit");
                if (f.table.size() != (std::size_t{1} << f.srcs.size())) throw InputError(where(i, j) + ": table length must be 2^fan-in");
                break;
            }
        }
    }
    if (selection.kind == SelectionKind::SemiCoordinated) {
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        int covered = 0;
        for (const auto& b : selection.blocks) {
            if (b.empty()) throw InputError("empty selection block");
            for (int v : b) {
                if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) throw InputError("selection blocks must partition the nodes");
                seen[static_cast<std::size_t>(v)] = 1;
                ++covered;
            }
        }
        if (covered != n) throw InputError("selection blocks must cover every node");
    }
    switch (schedule.kind) {
    case ScheduleKind::FixedPermutation:
        if (schedule.perms.size() != 1) throw InputError("fixed permutation schedule needs exactly one permutation");
        [[fallthrough]];
    case ScheduleKind::PermutationList:
        if (schedule.perms.empty()) throw InputError("permutation list is empty");
        for (const auto& p : schedule.perms)
            if (!is_permutation(p, n)) throw InputError("schedule entry is not a permutation of 1..n");
        break;
    default:
        break;
    }
}

std::string describe(const Action& a) {
    std::ostringstream os;
    os << "J=[";
    for (std::size_t i = 0; i < a.choice.size(); ++i) os << (i ? "," : "") << a.choice[i];
    os << "]";
    switch (a.realization) {
    case RealizationKind::Parallel:
        os << " parallel";
        break;
    case RealizationKind::Sequential:
        os << " perm=[";
        for (std::size_t i = 0; i < a.perm.size(); ++i) os << (i ? "," : "") << a.perm[i];
        os << "]";
        break;
    case RealizationKind::Async:
        os << " async=";
        for (const auto& g : a.plan.groups) {
            os << "{";
            for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
            os << "}";
        }
        if (a.plan.groups.empty()) os << "{}";
        break;
    }
    return os.str();
}

Config step_parallel(const System& sys, const Config& c, const std::vector<int>& choice) {
    Config out(sys.n);
    for (int i = 1; i <= sys.n; ++i) out.set(i - 1, eval_function(sys.fn(i, choice[i - 1]), c));
    return out;
}

Config step_sequential(const System& sys, const Config& c, const std::vector<int>& choice,
                       const std::vector<int>& perm) {
    Config cur = c;
    for (int i : perm) cur.set(i - 1, eval_function(sys.fn(i, choice[i - 1]), cur));
    return cur;
}

Config step_async(const System& sys, const Config& c, const std::vector<int>& choice,
                  const AsyncPlan& plan) {
    Config cur = c;
    for (const auto& g : plan.groups) {
        const Config entry = cur;
        for (int i : g) cur.set(i - 1, eval_function(sys.fn(i, choice[i - 1]), entry));
    }
    return cur;
}

Config apply_action(const System& sys, const Config& c, const Action& a) {
    switch (a.realization) {
    case RealizationKind::Parallel:
        return step_parallel(sys, c, a.choice);
    case RealizationKind::Sequential:
        return step_sequential(sys, c, a.choice, a.perm);
    case RealizationKind::Async:
        return step_async(sys, c, a.choice, a.plan);
    }
    return c;
}

namespace {

constexpr std::uint64_t kSat = ~std::uint64_t{0};

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSat - b ? kSat : a + b;
}

std::uint64_t sat_pow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = sat_mul(r, b);
    return r;
}

std::uint64_t binom(int n, int r) {
    std::uint64_t v = 1;
    for (int i = 1; i <= r; ++i) v = v * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    return v;
}

// Ordered sequences of disjoint nonempty groups drawn from r nodes.
std::uint64_t async_plan_count(int r) {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(r) + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= r; ++m) {
        std::uint64_t v = 1;
        for (int s = 1; s <= m; ++s)
            v = sat_add(v, sat_mul(m > 60 ? kSat : binom(m, s), a[static_cast<std::size_t>(m - s)]));
        a[static_cast<std::size_t>(m)] = v;
    }
    return a[static_cast<std::size_t>(r)];
}

std::uint64_t selection_count(const System& sys) {
    switch (sys.selection.kind) {
    case SelectionKind::Fixed:
        return 1;
    case SelectionKind::Coordinated:
        return static_cast<std::uint64_t>(sys.k);
    case SelectionKind::Individual:
        return sat_pow(static_cast<std::uint64_t>(sys.k), sys.n);
    case SelectionKind::SemiCoordinated:
        return sat_pow(static_cast<std::uint64_t>(sys.k), static_cast<int>(sys.selection.blocks.size()));
    }
    return 0;
}

std::uint64_t realization_count(const System& sys) {
    switch (sys.schedule.kind) {
    case ScheduleKind::Parallel:
    case ScheduleKind::FixedPermutation:
        return 1;
    case ScheduleKind::PermutationList:
        return sys.schedule.perms.size();
    case ScheduleKind::ArbitraryPermutation: {
        std::uint64_t f = 1;
        for (int i = 2; i <= sys.n; ++i) f = sat_mul(f, static_cast<std::uint64_t>(i));
        return f;
    }
    case ScheduleKind::Asynchronous:
        return async_plan_count(sys.n);
    }
    return 0;
}

void for_each_selection(const System& sys, const std::function<void(const std::vector<int>&)>& fn) {
    const int n = sys.n;
    std::vector<int> choice(static_cast<std::size_t>(n), 1);
    switch (sys.selection.kind) {
    case SelectionKind::Fixed:
        fn(choice);
        return;
    case SelectionKind::Coordinated:
        for (int j = 1; j <= sys.k; ++j) {
            std::fill(choice.begin(), choice.end(), j);
            fn(choice);
        }
        return;
    case SelectionKind::Individual:
    case SelectionKind::SemiCoordinated: {
        std::vector<std::vector<int>> blocks;
        if (sys.selection.kind == SelectionKind::Individual) {
            for (int i = 1; i <= n; ++i) blocks.push_back({i});
        } else {
            blocks = sys.selection.blocks;
        }
        std::vector<int> digit(blocks.size(), 1);
        while (true) {
            for (std::size_t b = 0; b < blocks.size(); ++b)
                for (int v : blocks[b]) choice[static_cast<std::size_t>(v - 1)] = digit[b];
            fn(choice);
            std::size_t p = blocks.size();
            while (p > 0) {
                --p;
                if (digit[p] < sys.k) {
                    ++digit[p];
                    break;
                }
                digit[p] = 1;
                if (p == 0) return;
            }
            if (blocks.empty()) return;
        }
    }
    }
}

void for_each_async_plan(int n, std::vector<std::vector<int>>& groups, std::vector<char>& used,
                         const std::function<void(const AsyncPlan&)>& fn) {
    fn(AsyncPlan{groups});
    std::vector<int> rest;
    for (int i = 1; i <= n; ++i)
        if (!used[static_cast<std::size_t>(i)]) rest.push_back(i);
    const std::size_t r = rest.size();
    if (r == 0) return;
    if (r >= 63) throw ResourceError("asynchronous plan space too large");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
        std::vector<int> g;
        for (std::size_t b = 0; b < r; ++b)
            if (mask >> b & 1u) g.push_back(rest[b]);
        for (int v : g) used[static_cast<std::size_t>(v)] = 1;
        groups.push_back(std::move(g));
        for_each_async_plan(n, groups, used, fn);
        for (int v : groups.back()) used[static_cast<std::size_t>(v)] = 0;
        groups.pop_back();
    }
}

}  // namespace

void for_each_choice(const System& sys, const std::function<void(const std::vector<int>&)>& fn) {
    for_each_selection(sys, fn);
}

std::uint64_t count_actions(const System& sys) {
    return sat_mul(selection_count(sys), realization_count(sys));
}

void for_each_action(const System& sys, const std::function<void(const Action&)>& fn, std::uint64_t cap) {
    const std::uint64_t total = count_actions(sys);
    if (total > cap)
        throw ResourceError("action space of " + (total == kSat ? std::string("overflowing size") : std::to_string(total)) +
                            " exceeds cap " + std::to_string(cap));
    Action a;
    for_each_selection(sys, [&](const std::vector<int>& choice) {
        a.choice = choice;
        switch (sys.schedule.kind) {
        case ScheduleKind::Parallel:
            a.realization = RealizationKind::Parallel;
            fn(a);
            break;
        case ScheduleKind::FixedPermutation:
        case ScheduleKind::PermutationList:
            a.realization = RealizationKind::Sequential;
            for (const auto& p : sys.schedule.perms) {
                a.perm = p;
                fn(a);
            }
            break;
        case ScheduleKind::ArbitraryPermutation: {
            a.realization = RealizationKind::Sequential;
            std::vector<int> p(static_cast<std::size_t>(sys.n));
            std::iota(p.begin(), p.end(), 1);
            do {
                a.perm = p;
                fn(a);
            } while (std::next_permutation(p.begin(), p.end()));
            break;
        }
        case ScheduleKind::Asynchronous: {
            a.realization = RealizationKind::Async;
            std::vector<std::vector<int>> groups;
            std::vector<char> used(static_cast<std::size_t>(sys.n) + 1, 0);
            for_each_async_plan(sys.n, groups, used, [&](const AsyncPlan& plan) {
                a.plan = plan;
                fn(a);
            });
            break;
        }
        }
    });
}

std::vector<Action> enumerate_actions(const System& sys, std::uint64_t cap) {
    std::vector<Action> out;
    for_each_action(sys, [&](const Action& a) { out.push_back(a); }, cap);
    return out;
}

SuccessorMap successors(const System& sys, const Config& c, std::uint64_t cap) {
    SuccessorMap out;
    for_each_action(sys, [&](const Action& a) {
        Config d = apply_action(sys, c, a);
        auto [it, inserted] = out.try_emplace(std::move(d));
        if (inserted) it->second.witness = a;
        ++it->second.labels;
    }, cap);
    return out;
}

std::vector<Config> successor_set(const System& sys, const Config& c, std::uint64_t cap) {
    if (sys.schedule.kind == ScheduleKind::Parallel && sys.selection.kind == SelectionKind::Individual) {
        // Each node picks its value independently.
        std::vector<std::vector<bool>> vals(static_cast<std::size_t>(sys.n));
        std::uint64_t total = 1;
        for (int i = 1; i <= sys.n; ++i) {
            bool seen0 = false, seen1 = false;
            for (int j = 1; j <= sys.k; ++j) (eval_function(sys.fn(i, j), c) ? seen1 : seen0) = true;
            if (seen0) vals[static_cast<std::size_t>(i - 1)].push_back(false);
            if (seen1) vals[static_cast<std::size_t>(i - 1)].push_back(true);
            total = sat_mul(total, vals[static_cast<std::size_t>(i - 1)].size());
        }
        if (total > cap) throw ResourceError("successor set exceeds cap");
        std::vector<Config> out;
        Config cur(sys.n);
        std::function<void(int)> rec = [&](int i) {
            if (i == sys.n) {
                out.push_back(cur);
                return;
            }
            for (bool v : vals[static_cast<std::size_t>(i)]) {
                cur.set(i, v);
                rec(i + 1);
            }
        };
        rec(0);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::set<Config> s;
    for_each_action(sys, [&](const Action& a) { s.insert(apply_action(sys, c, a)); }, cap);
    return {s.begin(), s.end()};
}

}  // namespace bfds
