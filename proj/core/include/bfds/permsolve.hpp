#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bfds/system.hpp"

namespace bfds {

/// Ordering requirement on a sequential sweep. Before(i, j): node i updates before node j.
struct OrderConstraint {
    enum class Kind { Before, ForcedTrue, ForcedFalse };
    Kind kind = Kind::ForcedTrue;
    int i = 0;
    int j = 0;
    friend bool operator==(const OrderConstraint&, const OrderConstraint&) = default;
};

/// Requirement that a unary or constant `f` at node i yields d_i in one sweep.
OrderConstraint unary_constraint(const NodeFunction& f, int i, const Config& c, const Config& d);

/// For every permissible sweep some selection continues to a robust path of t-1 steps.
bool robust_reach_bruteforce(const System& sys, const Config& c, const Config& d, int t,
                             std::uint64_t budget = std::uint64_t{1} << 24);

/// (before-set, after-set) relative to the failing node z.
struct WPair {
    std::vector<int> before;
    std::vector<int> after;
    friend auto operator<=>(const WPair&, const WPair&) = default;
};

struct RobustReport {
    bool robust = true;
    std::vector<std::vector<WPair>> w;   // w[z-1] = W_z
    std::optional<int> failing_node;     // first z with nonempty W_z
    std::vector<int> counter_perm;       // sweep on which every selection misses d
};

/// One-step robustness for individual selection over arbitrary permutations. Functions
/// must be constant, unary, OR, AND, or tables of fan-in at most q; otherwise throws ModelError.
RobustReport robust_one_step_fast(const System& sys, const Config& c, const Config& d, int q = kDefaultMaxFanIn,
                                  std::uint64_t cap = std::uint64_t{1} << 20);

/// Uses the fast test for t = 1 when the system qualifies, brute force otherwise.
bool robust_reach(const System& sys, const Config& c, const Config& d, int t);

struct PermWitness {
    std::vector<int> perm;
    std::vector<int> choice;  // per node, 1-based
};

/// 1-choice unary systems. The witness comes from eliminating constraint endpoints in
/// ascending node order.
std::optional<PermWitness> perm_exists_1choice_unary(const System& sys, const Config& c, const Config& d);

/// Coordinated unary systems: the 1-choice test per column, lowest feasible column first.
std::optional<PermWitness> perm_exists_coordinated(const System& sys, const Config& c, const Config& d);

/// Individual-selection unary systems, by backtracking over one constraint arc per node.
std::optional<PermWitness> perm_exists_individual_search(const System& sys, const Config& c, const Config& d,
                                                         std::uint64_t budget = std::uint64_t{1} << 22);

/// Exhaustive oracle over all n! sweeps and all selections.
std::optional<PermWitness> perm_exists_bruteforce(const System& sys, const Config& c, const Config& d,
                                                  std::uint64_t budget = std::uint64_t{1} << 24);

/// True when the witness sweep and selection take c to d.
bool replay(const System& sys, const Config& c, const Config& d, const PermWitness& w);

}  // namespace bfds
