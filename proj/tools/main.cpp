#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bfds/analysis.hpp"
#include "bfds/config_graph.hpp"
#include "bfds/io.hpp"
#include "bfds/permsolve.hpp"
#include "bfds/reductions.hpp"
#include "bfds/transforms.hpp"

namespace {

using namespace bfds;

constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

// Result fields, printed as `key: value` lines or as one tab-separated record.
class Report {
public:
    explicit Report(bool records) : records_(records) {}
    void add(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
    void print(std::ostream& os) const {
        if (records_) {
            for (std::size_t i = 0; i < fields_.size(); ++i) os << (i ? "\t" : "") << fields_[i].first << '=' << fields_[i].second;
            os << '\n';
            return;
        }
        for (const auto& [k, v] : fields_) os << k << ": " << v << '\n';
    }

private:
    bool records_;
    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string path_text(const std::vector<Config>& path) {
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) s += (i ? " " : "") + path[i].str();
    return s;
}

std::string list_text(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

void add_answer(Report& r, const ProblemAnswer& a) {
    switch (a.kind) {
    case ProblemAnswer::Kind::Bool: r.add("answer", a.yes ? "yes" : "no"); break;
    case ProblemAnswer::Kind::Count: r.add("answer", std::to_string(a.count)); break;
    case ProblemAnswer::Kind::Length: r.add("answer", a.length ? std::to_string(*a.length) : "missing"); break;
    }
    if (!a.path.empty()) r.add("path", path_text(a.path));
}

// BFDS_CAPS="action=N,state=N,dfs=N"; any subset.
Caps caps_from_env() {
    Caps caps;
    const char* env = std::getenv("BFDS_CAPS");
    if (env == nullptr) return caps;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("BFDS_CAPS entry '" + item + "' needs key=value");
        const std::string key = item.substr(0, eq);
        std::uint64_t v = 0;
        try {
            v = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("BFDS_CAPS entry '" + item + "' has a bad number");
        }
        if (key == "action") caps.action_cap = v;
        else if (key == "state") caps.state_cap = v;
        else if (key == "dfs") caps.dfs_budget = v;
        else throw InputError("BFDS_CAPS has unknown key '" + key + "'");
    }
    return caps;
}

struct Endpoints {
    std::string from;
    std::string to;
};

Config pick(const std::string& flag, const std::optional<Config>& fallback, const System& sys, const char* what) {
    Config c;
    if (!flag.empty()) c = Config::from_string(flag);
    else if (fallback) c = *fallback;
    else throw InputError(std::string("missing --") + what + " configuration");
    if (c.size() != sys.n) throw InputError(std::string("--") + what + " has length " + std::to_string(c.size()) + ", system has n=" + std::to_string(sys.n));
    return c;
}

template <typename E>
E lookup(const std::map<std::string, E>& table, const std::string& key, const char* what) {
    auto it = table.find(key);
    if (it == table.end()) throw InputError(std::string("unknown ") + what + " '" + key + "'");
    return it->second;
}

CnfFormula read_cnf(const std::string& path) { return parse_dimacs(read_file(path)); }

ReductionInstance run_reduce(const std::string& name, const std::vector<std::string>& inputs) {
    auto need = [&](std::size_t count) {
        if (inputs.size() != count)
            throw InputError("reduce " + name + " takes " + std::to_string(count) + " input(s)");
    };
    if (name == "graph-iso") {
        need(2);
        return reduce_graph_iso(parse_edge_list(read_file(inputs[0])), parse_edge_list(read_file(inputs[1])));
    }
    need(1);
    const auto phi = read_cnf(inputs[0]);
    if (name == "3sat-t3") return reduce_3sat_unary_t3(phi);
    if (name == "2sat-t2") return reduce_2sat_t2(phi);
    if (name == "3sat-k3") return reduce_3sat_k3_t2(phi);
    if (name == "parsimonious") return reduce_parsimonious_count(phi);
    if (name == "coordinated") return reduce_3sat_coordinated(phi);
    if (name == "permlist") return reduce_3sat_permlist(phi);
    throw InputError("unknown reduction '" + name + "'");
}

const std::vector<std::string> kReductions{"3sat-t3", "2sat-t2", "3sat-k3", "parsimonious", "coordinated", "permlist", "graph-iso"};

int run(int argc, char** argv) {
    CLI::App app{"Analysis, simulation, and reduction tools for Boolean finite dynamical systems with uncertainty"};
    app.require_subcommand(1);
    bool records = false;
    app.add_flag("--records", records, "Print one tab-separated key=value record per result");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Answer a configuration-graph question");
    std::string problem, file, mode, what;
    Endpoints ends;
    int t = 0;
    const std::vector<std::string> problems{"reachability", "path-intersection", "tail-length", "predecessors", "cycles",
                                            "global", "fixed-points", "count-subsequent", "count-simple-paths", "successors"};
    analyze->add_option("problem", problem, "Problem name")->required()->check(CLI::IsMember(problems));
    analyze->add_option("system", file, "System file")->required();
    analyze->add_option("--from", ends.from, "Source configuration (default: file's start)");
    analyze->add_option("--to", ends.to, "Target configuration (default: file's target)");
    analyze->add_option("--mode", mode, "Problem variant");
    analyze->add_option("--what", what, "Quantity for the global problem");
    analyze->add_option("-t,--steps", t, "Step bound");

    auto* graph = app.add_subcommand("graph", "Dump the configuration graph as `src dst labels` lines");
    graph->add_option("system", file, "System file")->required();

    auto* transform = app.add_subcommand("transform", "Convert a system into another model");
    std::string tname, embedding_out;
    transform->add_option("name", tname, "Transformation")->required()->check(CLI::IsMember(transform_names()));
    transform->add_option("system", file, "System file")->required();
    transform->add_option("--embedding", embedding_out, "Write the configuration map to this file");

    auto* reduce = app.add_subcommand("reduce", "Compile a formula or graph pair into a reachability instance");
    std::string rname;
    std::vector<std::string> inputs;
    reduce->add_option("name", rname, "Reduction")->required()->check(CLI::IsMember(kReductions));
    reduce->add_option("inputs", inputs, "CNF file, or two edge-list files for graph-iso")->required();

    auto* verify = app.add_subcommand("verify-embedding", "Check that a configuration map embeds F into G");
    std::string fsys, gsys, emb;
    int bound = 64;
    verify->add_option("source", fsys, "Source system file")->required();
    verify->add_option("target", gsys, "Target system file")->required();
    verify->add_option("embedding", emb, "Embedding file")->required();
    verify->add_option("--bound", bound, "Longest target path searched");

    auto* solve = app.add_subcommand("solve-perm", "Find a sweep order realizing a one-step transition");
    std::string method = "auto";
    solve->add_option("system", file, "System file")->required();
    solve->add_option("--from", ends.from, "Source configuration");
    solve->add_option("--to", ends.to, "Target configuration");
    solve->add_option("--method", method, "auto, 1choice, coordinated, individual, brute")
        ->check(CLI::IsMember({"auto", "1choice", "coordinated", "individual", "brute"}));

    auto* robust = app.add_subcommand("robust", "Robust t-step reachability");
    std::string rmethod = "auto";
    int rt = 1;
    robust->add_option("system", file, "System file")->required();
    robust->add_option("--from", ends.from, "Source configuration");
    robust->add_option("--to", ends.to, "Target configuration");
    robust->add_option("-t,--steps", rt, "Step count");
    robust->add_option("--method", rmethod, "auto, fast, brute")->check(CLI::IsMember({"auto", "fast", "brute"}));

    auto* oracle = app.add_subcommand("oracle-check", "Compare a reduction's gadget answer with direct enumeration");
    oracle->add_option("name", rname, "Reduction")->required()->check(CLI::IsMember(kReductions));
    oracle->add_option("inputs", inputs, "CNF file, or two edge-list files for graph-iso")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    const Caps caps = caps_from_env();
    Report rep(records);

    if (analyze->parsed()) {
        const auto doc = parse_document(read_file(file));
        const auto& sys = doc.system;
        auto from = [&] { return pick(ends.from, doc.start, sys, "from"); };
        auto to = [&] { return pick(ends.to, doc.target, sys, "to"); };
        rep.add("problem", problem);
        if (problem == "reachability") {
            const auto m = lookup<ReachMode>({{"any", ReachMode::Any}, {"within", ReachMode::Within}, {"min-len", ReachMode::MinLen},
                                              {"max-simple-len", ReachMode::MaxSimpleLen}},
                                             mode.empty() ? "any" : mode, "mode");
            int steps = t;
            if (m == ReachMode::Within && steps == 0 && doc.horizon) steps = *doc.horizon;
            add_answer(rep, reachability(sys, from(), to(), m, steps, caps));
        } else if (problem == "path-intersection") {
            rep.add("answer", path_intersection(sys, from(), to(), caps) ? "yes" : "no");
        } else if (problem == "tail-length") {
            rep.add("answer", std::to_string(tail_length(sys, from(), caps)));
        } else if (problem == "predecessors") {
            const auto m = lookup<PredMode>({{"is-goe", PredMode::IsGoe}, {"count", PredMode::Count}, {"t-goe", PredMode::TGoe}},
                                            mode.empty() ? "count" : mode, "mode");
            add_answer(rep, predecessors(sys, from(), m, t, caps));
        } else if (problem == "cycles") {
            const auto m = lookup<CycleMode>({{"point", CycleMode::Point}, {"min-len", CycleMode::MinLen},
                                              {"max-simple-len", CycleMode::MaxSimpleLen},
                                              {"count-simple-through", CycleMode::CountSimpleThrough}},
                                             mode.empty() ? "point" : mode, "mode");
            add_answer(rep, cycles(sys, from(), m, caps));
        } else if (problem == "global") {
            const auto w = lookup<GlobalWhat>({{"gardens", GlobalWhat::Gardens}, {"fixed-points", GlobalWhat::FixedPoints},
                                               {"complete-fixed-points", GlobalWhat::CompleteFixedPoints},
                                               {"cycles", GlobalWhat::Cycles}},
                                              what.empty() ? "fixed-points" : what, "quantity");
            rep.add("answer", std::to_string(global_counts(sys, w, caps)));
        } else if (problem == "fixed-points") {
            const auto m = lookup<FpMode>({{"exists", FpMode::Exists}, {"is-fp", FpMode::IsFp}, {"is-complete-fp", FpMode::IsCompleteFp},
                                           {"complete-exists", FpMode::CompleteExists}},
                                          mode.empty() ? "exists" : mode, "mode");
            const bool local = m == FpMode::IsFp || m == FpMode::IsCompleteFp;
            add_answer(rep, fixed_points(sys, m, local ? from() : Config{}, caps));
        } else if (problem == "count-subsequent") {
            rep.add("answer", std::to_string(count_subsequent(sys, from(), caps)));
        } else if (problem == "count-simple-paths") {
            rep.add("answer", std::to_string(count_simple_paths(sys, from(), to(), caps)));
        } else {
            const auto succ = successors(sys, from(), caps.action_cap);
            rep.add("answer", std::to_string(succ.size()));
            for (const auto& [cfg, info] : succ)
                rep.add("successor", cfg.str() + " labels=" + std::to_string(info.labels) + " witness=" + describe(info.witness));
        }
        rep.print(std::cout);
        return 0;
    }
    if (graph->parsed()) {
        const auto sys = parse_system(read_file(file));
        dump_graph(build_graph(sys, caps.state_cap, caps.action_cap), std::cout);
        return 0;
    }
    if (transform->parsed()) {
        const auto res = apply_transform(tname, parse_system(read_file(file)));
        SystemDocument doc;
        doc.system = res.system;
        doc.meta.emplace_back("transform", tname);
        doc.meta.emplace_back("rate", std::to_string(res.claimed_rate.num) + "/" + std::to_string(res.claimed_rate.den));
        doc.extras = res.notes;
        std::cout << emit_document(doc);
        if (!embedding_out.empty()) {
            std::ofstream out(embedding_out);
            if (!out) throw InputError("cannot write '" + embedding_out + "'");
            out << embedding_to_text(res.embedding);
        }
        return 0;
    }
    if (reduce->parsed()) {
        std::cout << emit_document(to_document(run_reduce(rname, inputs)));
        return 0;
    }
    if (verify->parsed()) {
        const auto F = parse_system(read_file(fsys));
        const auto G = parse_system(read_file(gsys));
        const auto nu = embedding_from_text(read_file(emb));
        const auto r = verify_embedding(F, G, nu, bound, caps.state_cap);
        rep.add("answer", r.is_embedding ? "yes" : "no");
        rep.add("expansion", std::to_string(r.expansion.num) + "/" + std::to_string(r.expansion.den));
        rep.add("bounded", r.bounded ? "yes" : "no");
        if (r.counterexample) rep.add("counterexample", r.counterexample->first.str() + " " + r.counterexample->second.str());
        if (!r.detail.empty()) rep.add("detail", r.detail);
        rep.print(std::cout);
        return 0;
    }
    if (solve->parsed()) {
        const auto doc = parse_document(read_file(file));
        const auto& sys = doc.system;
        const auto c = pick(ends.from, doc.start, sys, "from");
        const auto d = pick(ends.to, doc.target, sys, "to");
        std::string used = method;
        if (used == "auto") {
            if (sys.k == 1 || sys.selection.kind == SelectionKind::Fixed) used = "1choice";
            else if (sys.selection.kind == SelectionKind::Coordinated) used = "coordinated";
            else used = "individual";
        }
        std::optional<PermWitness> w;
        if (used == "1choice") w = perm_exists_1choice_unary(sys, c, d);
        else if (used == "coordinated") w = perm_exists_coordinated(sys, c, d);
        else if (used == "individual") w = perm_exists_individual_search(sys, c, d, caps.state_cap);
        else w = perm_exists_bruteforce(sys, c, d, caps.state_cap);
        rep.add("answer", w ? "yes" : "no");
        rep.add("method", used);
        if (w) {
            rep.add("perm", list_text(w->perm));
            rep.add("choice", list_text(w->choice));
            rep.add("replay", replay(sys, c, d, *w) ? "ok" : "failed");
        }
        rep.print(std::cout);
        return 0;
    }
    if (robust->parsed()) {
        const auto doc = parse_document(read_file(file));
        const auto& sys = doc.system;
        const auto c = pick(ends.from, doc.start, sys, "from");
        const auto d = pick(ends.to, doc.target, sys, "to");
        if (rmethod == "fast" || (rmethod == "auto" && rt == 1 && sys.schedule.kind == ScheduleKind::ArbitraryPermutation)) {
            if (rt != 1) throw InputError("the fast test handles one step only");
            try {
                const auto r = robust_one_step_fast(sys, c, d);
                rep.add("answer", r.robust ? "yes" : "no");
                rep.add("method", "fast");
                if (r.failing_node) {
                    rep.add("failing-node", std::to_string(*r.failing_node));
                    rep.add("counter-perm", list_text(r.counter_perm));
                }
                rep.print(std::cout);
                return 0;
            } catch (const ModelError&) {
                if (rmethod == "fast") throw;
            }
        }
        rep.add("answer", robust_reach_bruteforce(sys, c, d, rt, caps.state_cap) ? "yes" : "no");
        rep.add("method", "brute");
        rep.print(std::cout);
        return 0;
    }
    if (oracle->parsed()) {
        const auto inst = run_reduce(rname, inputs);
        bool expected = false;
        if (rname == "graph-iso") {
            expected = isomorphic(parse_edge_list(read_file(inputs[0])), parse_edge_list(read_file(inputs[1])));
        } else {
            expected = satisfiable(read_cnf(inputs[0]));
        }
        const auto r = verify_reduction(inst, expected, caps);
        rep.add("answer", r.agree() ? "agree" : "disagree");
        rep.add("gadget", r.gadget ? "yes" : "no");
        rep.add("oracle", r.oracle ? "yes" : "no");
        if (rname == "parsimonious") {
            rep.add("paths", std::to_string(count_simple_paths(inst.system, inst.start, inst.target, caps)));
            rep.add("models", std::to_string(model_count(read_cnf(inputs[0]))));
        }
        rep.print(std::cout);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ResourceError& e) {
        std::cerr << "bfds: resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const InputError& e) {
        std::cerr << "bfds: input error: " << e.what() << '\n';
        return kExitInput;
    }
}
