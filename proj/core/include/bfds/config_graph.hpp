#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bfds/system.hpp"

namespace bfds {

inline constexpr std::uint64_t kDefaultStateCap = std::uint64_t{1} << 22;

struct Arc {
    std::uint64_t dst = 0;
    std::uint64_t labels = 0;
    Action witness;
};

/// Explicit configuration graph; vertex v is the configuration with index v.
struct ConfigGraph {
    int n = 0;
    std::vector<std::vector<Arc>> out;  // arcs sorted by dst

    [[nodiscard]] std::uint64_t vertex_count() const { return out.size(); }
    [[nodiscard]] std::uint64_t arc_count() const;
    [[nodiscard]] const Arc* find_arc(std::uint64_t u, std::uint64_t v) const;
    [[nodiscard]] std::vector<std::vector<std::uint64_t>> reverse() const;
};

ConfigGraph build_graph(const System& sys, std::uint64_t state_cap = kDefaultStateCap,
                        std::uint64_t action_cap = kDefaultActionCap);

/// One line per arc: "<src> <dst> <labels>", sources ascending.
void dump_graph(const ConfigGraph& g, std::ostream& os);

/// Configurations reachable from start in at most step_bound steps, with BFS depth.
/// Start itself is included at depth 0.
std::unordered_map<Config, int, ConfigHash> reachable_set(const System& sys, const Config& start, int step_bound,
                                                          std::uint64_t state_cap = kDefaultStateCap,
                                                          std::uint64_t action_cap = kDefaultActionCap);

/// Sets of configurations at exact depth 0..depth.
std::vector<std::vector<Config>> bfs_layers(const System& sys, const Config& start, int depth,
                                            std::uint64_t state_cap = kDefaultStateCap,
                                            std::uint64_t action_cap = kDefaultActionCap);

/// Length of a shortest path of length >= 1 from c to d, if any.
std::optional<int> shortest_nontrivial(const System& sys, const Config& c, const Config& d, int step_bound,
                                       std::uint64_t state_cap = kDefaultStateCap,
                                       std::uint64_t action_cap = kDefaultActionCap);

std::optional<Action> edge_exists(const System& sys, const Config& c, const Config& d,
                                  std::uint64_t action_cap = kDefaultActionCap);

}  // namespace bfds
