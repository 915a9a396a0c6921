#include "bfds/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "bfds/transforms.hpp"

namespace bfds {

namespace {

constexpr int kMaxEnumVars = 24;

void check_width(const CnfFormula& phi, std::size_t width, const char* who) {
    if (phi.n < 1) throw InputError(std::string(who) + ": formula needs at least one variable");
    for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
        const auto& cl = phi.clauses[j];
        if (cl.size() != width)
            throw InputError(std::string(who) + ": clause " + std::to_string(j + 1) + " has width " +
                             std::to_string(cl.size()) + ", expected " + std::to_string(width));
        for (int lit : cl)
            if (lit == 0 || std::abs(lit) > phi.n)
                throw InputError(std::string(who) + ": clause " + std::to_string(j + 1) + " has literal out of range");
    }
}

// Node layout shared by the layered gadgets: a0, a1, b pairs, c pairs, then per-gadget tails.
struct Layered {
    int n;
    [[nodiscard]] int a(int x) const { return 1 + x; }
    [[nodiscard]] int b(int i, int x) const { return 3 + 2 * (i - 1) + x; }
    [[nodiscard]] int c(int i, int x) const { return 3 + 2 * n + 2 * (i - 1) + x; }
    [[nodiscard]] int after_c() const { return 3 + 4 * n; }
    // Literal x_p is represented by b_{p,1}; its negation by b_{p,0}.
    [[nodiscard]] int lit(int l) const { return l > 0 ? b(l, 1) : b(-l, 0); }
};

void fill(System& sys, int i, const std::vector<NodeFunction>& choices) {
    for (int j = 1; j <= sys.k; ++j)
        sys.fn(i, j) = choices[static_cast<std::size_t>(std::min(j, static_cast<int>(choices.size())) - 1)];
}

std::vector<NodeFunction> pos_each(std::initializer_list<int> srcs) {
    std::vector<NodeFunction> out;
    for (int s : srcs) out.push_back(NodeFunction::pos(s));
    return out;
}

// Shared by the 2- and 3-choice layered gadgets: a, b, c levels.
void wire_abc(System& sys, const Layered& L) {
    fill(sys, L.a(0), pos_each({L.a(0)}));
    fill(sys, L.a(1), pos_each({L.a(1)}));
    for (int i = 1; i <= L.n; ++i)
        for (int x = 0; x < 2; ++x) {
            fill(sys, L.b(i, x), pos_each({L.a(0), L.a(1)}));
            fill(sys, L.c(i, x), pos_each({L.b(i, 0), L.b(i, 1)}));
        }
}

Config start_a1(int total) {
    Config c(total);
    c.set(1, true);  // a1
    return c;
}

std::string join_perm(const std::vector<int>& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    return os.str();
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula f;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int declared_m = -1;
    bool header = false;
    std::vector<int> cur;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            if (header || !(ls >> fmt >> f.n >> declared_m) || fmt != "cnf" || f.n < 0 || declared_m < 0)
                throw InputError("line " + std::to_string(line_no) + ": bad cnf header");
            header = true;
            continue;
        }
        if (!header) throw InputError("line " + std::to_string(line_no) + ": clause before header");
        do {
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw InputError("line " + std::to_string(line_no) + ": bad literal '" + tok + "'");
            if (v == 0) {
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                if (std::labs(v) > f.n) throw InputError("line " + std::to_string(line_no) + ": literal out of range");
                cur.push_back(static_cast<int>(v));
            }
        } while (ls >> tok);
    }
    if (!header) throw InputError("missing cnf header");
    if (!cur.empty()) throw InputError("last clause is not terminated by 0");
    if (static_cast<int>(f.clauses.size()) != declared_m)
        throw InputError("header declares " + std::to_string(declared_m) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    os << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses) {
        for (int l : cl) os << l << ' ';
        os << "0\n";
    }
    return os.str();
}

bool evaluate(const CnfFormula& f, std::uint64_t assignment) {
    for (const auto& cl : f.clauses) {
        bool sat = false;
        for (int l : cl) {
            const bool v = (assignment >> (std::abs(l) - 1)) & 1U;
            if (v == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::uint64_t model_count(const CnfFormula& f) {
    if (f.n > kMaxEnumVars) throw ResourceError("model enumeration limited to " + std::to_string(kMaxEnumVars) + " variables");
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) count += evaluate(f, a) ? 1 : 0;
    return count;
}

bool satisfiable(const CnfFormula& f) {
    if (f.n > kMaxEnumVars) throw ResourceError("model enumeration limited to " + std::to_string(kMaxEnumVars) + " variables");
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a)
        if (evaluate(f, a)) return true;
    return false;
}

SimpleGraph parse_edge_list(const std::string& text) {
    SimpleGraph g;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!header) {
            if (tok != "n" || !(ls >> g.n) || g.n < 1)
                throw InputError("line " + std::to_string(line_no) + ": expected 'n <count>' header");
            header = true;
            continue;
        }
        int u = 0;
        int v = 0;
        try {
            u = std::stoi(tok);
        } catch (const std::exception&) {
            throw InputError("line " + std::to_string(line_no) + ": bad edge");
        }
        if (!(ls >> v) || (ls >> tok)) throw InputError("line " + std::to_string(line_no) + ": edge needs two endpoints");
        if (u < 1 || v < 1 || u > g.n || v > g.n || u == v)
            throw InputError("line " + std::to_string(line_no) + ": edge endpoint out of range or self-loop");
        g.edges.emplace_back(u, v);
    }
    if (!header) throw InputError("missing 'n <count>' header");
    return g;
}

std::string to_edge_list(const SimpleGraph& g) {
    std::ostringstream os;
    os << "n " << g.n << '\n';
    for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
    return os.str();
}

namespace {

std::vector<std::vector<char>> adjacency(const SimpleGraph& g) {
    std::vector<std::vector<char>> m(static_cast<std::size_t>(g.n), std::vector<char>(static_cast<std::size_t>(g.n), 0));
    for (auto [u, v] : g.edges) {
        m[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)] = 1;
        m[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(u - 1)] = 1;
    }
    return m;
}

}  // namespace

bool isomorphic(const SimpleGraph& g, const SimpleGraph& h) {
    if (g.n != h.n) return false;
    if (g.n > 10) throw ResourceError("isomorphism enumeration limited to 10 nodes");
    const auto a = adjacency(g);
    const auto b = adjacency(h);
    std::vector<int> p(static_cast<std::size_t>(g.n));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < p.size() && ok; ++i)
            for (std::size_t j = 0; j < p.size() && ok; ++j)
                ok = a[i][j] == b[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(p[j])];
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

ReductionInstance reduce_3sat_unary_t3(const CnfFormula& phi) {
    check_width(phi, 3, "reduce_3sat_unary_t3");
    const int n = phi.n;
    const int m = static_cast<int>(phi.clauses.size());
    const Layered L{n};
    auto alpha = [&](int j) { return L.after_c() + 2 * (j - 1); };
    auto beta = [&](int j) { return alpha(j) + 1; };
    auto d = [&](int i, int x) { return 3 + 4 * n + 2 * m + 2 * (i - 1) + x; };
    auto gamma = [&](int j) { return 3 + 6 * n + 2 * m + (j - 1); };
    const int total = 2 + 6 * n + 3 * m;

    System sys(total, 2);
    sys.selection.kind = SelectionKind::Individual;
    wire_abc(sys, L);
    for (int j = 1; j <= m; ++j) {
        const auto& cl = phi.clauses[static_cast<std::size_t>(j - 1)];
        fill(sys, alpha(j), pos_each({L.lit(cl[0]), L.lit(cl[1])}));
        fill(sys, beta(j), pos_each({L.lit(cl[1]), L.lit(cl[2])}));
        fill(sys, gamma(j), pos_each({alpha(j), beta(j)}));
    }
    for (int i = 1; i <= n; ++i)
        for (int x = 0; x < 2; ++x) fill(sys, d(i, x), pos_each({L.c(i, x)}));

    ReductionInstance inst{sys, start_a1(total), Config(total), 3, false, {}};
    inst.target.set(L.a(1) - 1, true);
    for (int i = 1; i <= n; ++i) inst.target.set(d(i, 1) - 1, true);
    for (int j = 1; j <= m; ++j) inst.target.set(gamma(j) - 1, true);
    return inst;
}

ReductionInstance reduce_2sat_t2(const CnfFormula& phi) {
    check_width(phi, 2, "reduce_2sat_t2");
    const int n = phi.n;
    const int m = static_cast<int>(phi.clauses.size());
    const Layered L{n};
    auto alpha = [&](int j) { return L.after_c() + (j - 1); };
    const int total = 2 + 4 * n + m;

    System sys(total, 2);
    sys.selection.kind = SelectionKind::Individual;
    wire_abc(sys, L);
    for (int j = 1; j <= m; ++j) {
        const auto& cl = phi.clauses[static_cast<std::size_t>(j - 1)];
        fill(sys, alpha(j), pos_each({L.lit(cl[0]), L.lit(cl[1])}));
    }
    ReductionInstance inst{sys, start_a1(total), Config(total), 2, false, {}};
    inst.target.set(L.a(1) - 1, true);
    for (int i = 1; i <= n; ++i) inst.target.set(L.c(i, 1) - 1, true);
    for (int j = 1; j <= m; ++j) inst.target.set(alpha(j) - 1, true);
    return inst;
}

ReductionInstance reduce_3sat_k3_t2(const CnfFormula& phi) {
    check_width(phi, 3, "reduce_3sat_k3_t2");
    const int n = phi.n;
    const int m = static_cast<int>(phi.clauses.size());
    const Layered L{n};
    auto gamma = [&](int j) { return L.after_c() + (j - 1); };
    const int total = 2 + 4 * n + m;

    System sys(total, 3);
    sys.selection.kind = SelectionKind::Individual;
    wire_abc(sys, L);
    for (int j = 1; j <= m; ++j) {
        const auto& cl = phi.clauses[static_cast<std::size_t>(j - 1)];
        fill(sys, gamma(j), pos_each({L.lit(cl[0]), L.lit(cl[1]), L.lit(cl[2])}));
    }
    ReductionInstance inst{sys, start_a1(total), Config(total), 2, false, {}};
    inst.target.set(L.a(1) - 1, true);
    for (int i = 1; i <= n; ++i) inst.target.set(L.c(i, 1) - 1, true);
    for (int j = 1; j <= m; ++j) inst.target.set(gamma(j) - 1, true);
    return inst;
}

ReductionInstance reduce_parsimonious_count(const CnfFormula& phi) {
    check_width(phi, 3, "reduce_parsimonious_count");
    const int n = phi.n;
    const int m = static_cast<int>(phi.clauses.size());
    const Layered L{n};
    auto gamma = [&](int j) { return L.after_c() + (j - 1); };
    const int w1 = 3 + 4 * n + m;
    const int w2 = w1 + 1;
    const int total = w2;

    System sys(total, 4);
    sys.selection.kind = SelectionKind::Individual;
    fill(sys, L.a(0), pos_each({L.a(0)}));
    fill(sys, L.a(1), pos_each({L.a(0)}));
    for (int i = 1; i <= n; ++i) {
        for (int x = 0; x < 2; ++x) fill(sys, L.b(i, x), pos_each({L.a(0), L.a(1)}));
        fill(sys, L.c(i, 0), pos_each({L.b(i, 0), L.b(i, 1)}));
        fill(sys, L.c(i, 1), pos_each({L.b(i, 0), L.b(i, 1), L.c(i, 1)}));
    }
    for (int j = 1; j <= m; ++j) {
        const auto& cl = phi.clauses[static_cast<std::size_t>(j - 1)];
        fill(sys, gamma(j), pos_each({L.lit(cl[0]), L.lit(cl[1]), L.lit(cl[2]), gamma(j)}));
    }
    // Two-stage clock: w2 holds 1 only at step 2, which pins every path to length two.
    fill(sys, w1, pos_each({L.a(1)}));
    fill(sys, w2, pos_each({w1}));

    ReductionInstance inst{sys, start_a1(total), Config(total), 2, true, {}};
    for (int i = 1; i <= n; ++i) inst.target.set(L.c(i, 1) - 1, true);
    for (int j = 1; j <= m; ++j) inst.target.set(gamma(j) - 1, true);
    inst.target.set(w2 - 1, true);
    return inst;
}

ReductionInstance reduce_graph_iso(const SimpleGraph& g, const SimpleGraph& h) {
    if (g.n != h.n) throw InputError("reduce_graph_iso: graphs have different node counts");
    const int n = g.n;
    if (n < 2) throw InputError("reduce_graph_iso: need at least two graph nodes");
    auto tau = [n](int i, int j) { return (i - 1) * n + j; };
    auto alpha = [n](int i) { return i == 1 ? 1 : (i < n ? i + 1 : 2); };
    auto beta = [](int i) { return i == 1 ? 2 : (i == 2 ? 1 : i); };

    System sys(n * n, 2);
    sys.selection.kind = SelectionKind::Coordinated;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            sys.fn(tau(i, j), 1) = NodeFunction::pos(tau(alpha(i), alpha(j)));
            sys.fn(tau(i, j), 2) = NodeFunction::pos(tau(beta(i), beta(j)));
        }
    auto encode = [&](const SimpleGraph& gr) {
        Config c(n * n);
        for (auto [u, v] : gr.edges) {
            c.set(tau(u, v) - 1, true);
            c.set(tau(v, u) - 1, true);
        }
        return c;
    };
    return ReductionInstance{sys, encode(g), encode(h), std::nullopt, false, {}};
}

ReductionInstance reduce_3sat_coordinated(const CnfFormula& phi) {
    check_width(phi, 3, "reduce_3sat_coordinated");
    const int n = phi.n;
    const int m = static_cast<int>(phi.clauses.size());
    auto a = [](int i) { return 1 + i; };
    auto b = [n](int i) { return n + 2 + i; };
    const int eval0 = 2 * (n + 1);
    auto alpha = [&](int j) { return eval0 + j; };
    auto beta = [&](int j) { return eval0 + m + j; };
    auto gamma = [&](int j) { return eval0 + 2 * m + j; };
    const int flow0 = eval0 + 3 * m;
    auto c = [&](int i, int j) { return flow0 + 1 + i * (n + 2) + j; };
    const int d1 = flow0 + (n + 2) * (n + 2) + 1;
    const int d2 = d1 + 1;
    const int d3 = d1 + 2;
    auto t = [&](int i) { return d3 + 1 + i; };
    const int total = t(2 * n + 4);

    // a_i stands for the negative literal of x_i, b_i for the positive one.
    auto lit = [&](int l) { return l > 0 ? b(l) : a(-l); };

    System sys(total, 4);
    sys.selection.kind = SelectionKind::Coordinated;
    for (int j = 1; j <= 4; ++j)
        for (int i = 1; i <= 2 * n + 4; ++i) sys.fn(t(i), j) = NodeFunction::pos(t(i - 1));

    sys.fn(a(0), 1) = NodeFunction::pos(b(0));
    sys.fn(b(0), 1) = NodeFunction::pos(a(0));
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 0; j <= n + 1; ++j) sys.fn(c(i, j), 1) = NodeFunction::pos(c(i - 1, j));

    for (int i = 1; i <= n; ++i) {
        sys.fn(a(i), 2) = NodeFunction::pos(a(i - 1));
        sys.fn(b(i), 2) = NodeFunction::pos(b(i - 1));
    }
    for (int i = 0; i <= n + 1; ++i)
        for (int j = 1; j <= n + 1; ++j) sys.fn(c(i, j), 2) = NodeFunction::pos(c(i, j - 1));

    for (int j = 1; j <= m; ++j) {
        const auto& cl = phi.clauses[static_cast<std::size_t>(j - 1)];
        sys.fn(alpha(j), 3) = NodeFunction::any_of({lit(cl[0]), lit(cl[1])});
        sys.fn(beta(j), 3) = NodeFunction::any_of({lit(cl[1]), lit(cl[2])});
        sys.fn(gamma(j), 4) = NodeFunction::any_of({alpha(j), beta(j)});
    }
    sys.fn(d1, 3) = NodeFunction::pos(c(n + 1, n + 1));
    sys.fn(d3, 3) = NodeFunction::pos(d2);
    for (int i = 0; i <= n; ++i) {
        sys.fn(a(i), 4) = NodeFunction::any_of({a(i), b(i)});
        sys.fn(b(i), 4) = NodeFunction::any_of({a(i), b(i)});
    }
    sys.fn(d2, 4) = NodeFunction::pos(d1);

    const int horizon = 2 * n + 3;
    ReductionInstance inst{sys, Config(total), Config(total), horizon, true, {}};
    inst.start.set(a(0) - 1, true);
    inst.start.set(c(1, 1) - 1, true);
    inst.start.set(t(1) - 1, true);
    for (int i = 0; i <= n; ++i) {
        inst.target.set(a(i) - 1, true);
        inst.target.set(b(i) - 1, true);
    }
    for (int j = 1; j <= m; ++j) {
        inst.target.set(alpha(j) - 1, true);
        inst.target.set(beta(j) - 1, true);
        inst.target.set(gamma(j) - 1, true);
    }
    for (int v : {c(n + 1, n + 1), d1, d2, d3, t(2 * n + 4)}) inst.target.set(v - 1, true);
    return inst;
}

ReductionInstance reduce_3sat_permlist(const CnfFormula& phi) {
    auto inst = reduce_3sat_unary_t3(phi);
    const int n = phi.n;
    const int m = static_cast<int>(phi.clauses.size());
    const Layered L{n};
    std::vector<int> as{L.a(0), L.a(1)};
    std::vector<int> bs, cs, ds, alphas, betas, gammas;
    for (int i = 1; i <= n; ++i)
        for (int x = 0; x < 2; ++x) {
            bs.push_back(L.b(i, x));
            cs.push_back(L.c(i, x));
            ds.push_back(3 + 4 * n + 2 * m + 2 * (i - 1) + x);
        }
    for (int j = 1; j <= m; ++j) {
        alphas.push_back(L.after_c() + 2 * (j - 1));
        betas.push_back(L.after_c() + 2 * (j - 1) + 1);
        gammas.push_back(3 + 6 * n + 2 * m + (j - 1));
    }
    auto concat = [](std::initializer_list<const std::vector<int>*> parts) {
        std::vector<int> out;
        for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
        return out;
    };
    const auto pi = concat({&as, &bs, &cs, &ds, &alphas, &betas, &gammas});
    // d reads c before c is cleared, so d moves up next to the gammas.
    const auto sigma = concat({&gammas, &ds, &as, &bs, &cs, &alphas, &betas});
    inst.system.schedule.kind = ScheduleKind::PermutationList;
    inst.system.schedule.perms = {pi, sigma};
    inst.horizon = 2;
    inst.extras = {"pi " + join_perm(pi), "sigma " + join_perm(sigma)};
    return inst;
}

CnfFormula extract_2cnf(const System& sys, const Config& c, const Config& d) {
    if (sys.k > 2 || sys.schedule.kind != ScheduleKind::Parallel ||
        (sys.selection.kind != SelectionKind::Individual && sys.selection.kind != SelectionKind::Fixed))
        throw ModelError("extract_2cnf needs an individual-selection parallel system with at most two choices");
    const int choices = sys.selection.kind == SelectionKind::Fixed ? 1 : sys.k;
    for (int i = 1; i <= sys.n; ++i)
        for (int j = 1; j <= choices; ++j) {
            const auto kind = sys.fn(i, j).kind;
            if (kind != FnKind::Pos && kind != FnKind::Neg && kind != FnKind::Const)
                throw ModelError("extract_2cnf needs unary or constant functions (node " + std::to_string(i) + ")");
        }
    if (c.size() != sys.n || d.size() != sys.n) throw InputError("configuration length does not match system");

    CnfFormula f;
    f.n = sys.n;
    std::set<std::vector<int>> seen;
    bool contradiction = false;
    auto add = [&](std::vector<int> cl) {
        std::sort(cl.begin(), cl.end());
        cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
        for (std::size_t p = 0; p + 1 < cl.size(); ++p)
            if (cl[p] == -cl[p + 1]) return;  // tautology
        if (cl.empty()) contradiction = true;
        if (seen.insert(cl).second) f.clauses.push_back(cl);
    };
    for (int i = 1; i <= sys.n; ++i) {
        // Final step: some choice must map x to d_i.
        std::vector<int> clause;
        bool always = false;
        for (int j = 1; j <= choices; ++j) {
            const auto& fn = sys.fn(i, j);
            if (fn.kind == FnKind::Const) {
                if (fn.value == d.node(i)) always = true;
                continue;
            }
            const bool positive = (fn.kind == FnKind::Pos) == d.node(i);
            clause.push_back(positive ? fn.srcs[0] : -fn.srcs[0]);
        }
        if (!always) add(clause);
        // First step: x_i is forced when every choice gives the same value on c.
        bool v0 = eval_function(sys.fn(i, 1), c);
        bool forced = true;
        for (int j = 2; j <= choices; ++j) forced = forced && eval_function(sys.fn(i, j), c) == v0;
        if (forced) add({v0 ? i : -i});
    }
    if (contradiction) {
        f.clauses.clear();
        f.clauses.push_back({});
    }
    return f;
}

System build_near_connected(int n) {
    if (n < 4) throw InputError("build_near_connected needs n >= 4");
    System sys(n, 2);
    sys.selection.kind = SelectionKind::Individual;
    for (int i = 3; i <= n; ++i) sys.fn(i, 1) = sys.fn(i, 2) = NodeFunction::pos(i - 1);
    sys.fn(1, 1) = NodeFunction::pos(1);
    sys.fn(1, 2) = NodeFunction::pos(n);
    sys.fn(2, 1) = NodeFunction::pos(n);
    sys.fn(2, 2) = NodeFunction::pos(1);
    return sys;
}

System build_cyclic_connected(int n) {
    if (n < 2) throw InputError("build_cyclic_connected needs n >= 2");
    System sys(n, 2);
    sys.selection.kind = SelectionKind::Coordinated;
    for (int i = 1; i <= n; ++i) {
        sys.fn(i, 1) = NodeFunction::pos(i == 1 ? n : i - 1);
        sys.fn(i, 2) = i == 1 ? NodeFunction::neg(1) : NodeFunction::pos(i);
    }
    return sys;
}

bool decide_instance(const ReductionInstance& inst, const Caps& caps) {
    if (!inst.horizon) return reachability(inst.system, inst.start, inst.target, ReachMode::Any, 0, caps).yes;
    if (inst.exact_horizon) return reach_exactly(inst.system, inst.start, inst.target, *inst.horizon, caps).has_value();
    return reach_within(inst.system, inst.start, inst.target, *inst.horizon, caps).has_value();
}

ReductionReport verify_reduction(const ReductionInstance& inst, bool oracle_answer, const Caps& caps) {
    return ReductionReport{decide_instance(inst, caps), oracle_answer};
}

}  // namespace bfds
