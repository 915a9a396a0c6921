#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfds/analysis.hpp"
#include "bfds/system.hpp"

namespace bfds {

/// Literals are signed 1-based variable indices.
struct CnfFormula {
    int n = 0;
    std::vector<std::vector<int>> clauses;
};

CnfFormula parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfFormula& f);

bool evaluate(const CnfFormula& f, std::uint64_t assignment);  // bit v-1 holds x_v
bool satisfiable(const CnfFormula& f);
std::uint64_t model_count(const CnfFormula& f);

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based, undirected
};

SimpleGraph parse_edge_list(const std::string& text);
std::string to_edge_list(const SimpleGraph& g);
bool isomorphic(const SimpleGraph& g, const SimpleGraph& h);

struct ReductionInstance {
    System system;
    Config start;
    Config target;
    std::optional<int> horizon;  // empty means unbounded
    bool exact_horizon = false;  // target must appear at exactly `horizon` steps
    std::vector<std::string> extras;
};

ReductionInstance reduce_3sat_unary_t3(const CnfFormula& phi);
ReductionInstance reduce_2sat_t2(const CnfFormula& phi);
ReductionInstance reduce_3sat_k3_t2(const CnfFormula& phi);
ReductionInstance reduce_parsimonious_count(const CnfFormula& phi);
ReductionInstance reduce_graph_iso(const SimpleGraph& g, const SimpleGraph& h);
ReductionInstance reduce_3sat_coordinated(const CnfFormula& phi);
ReductionInstance reduce_3sat_permlist(const CnfFormula& phi);

/// 2CNF over the intermediate configuration x of a 2-step path c -> x -> d.
CnfFormula extract_2cnf(const System& sys, const Config& c, const Config& d);

System build_near_connected(int n);
System build_cyclic_connected(int n);

/// Gadget-side answer: reachability within the horizon (exactly at it when
/// exact_horizon is set), or nontrivial reachability when unbounded.
bool decide_instance(const ReductionInstance& inst, const Caps& caps = {});

struct ReductionReport {
    bool gadget = false;
    bool oracle = false;
    [[nodiscard]] bool agree() const { return gadget == oracle; }
};

ReductionReport verify_reduction(const ReductionInstance& inst, bool oracle_answer, const Caps& caps = {});

}  // namespace bfds
