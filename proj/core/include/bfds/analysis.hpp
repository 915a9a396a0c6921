#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfds/config_graph.hpp"
#include "bfds/system.hpp"

namespace bfds {

struct Caps {
    std::uint64_t action_cap = kDefaultActionCap;
    std::uint64_t state_cap = kDefaultStateCap;
    std::uint64_t dfs_budget = std::uint64_t{1} << 16;
};

struct ProblemAnswer {
    enum class Kind { Bool, Count, Length };
    Kind kind = Kind::Bool;
    bool yes = false;
    std::uint64_t count = 0;
    std::optional<int> length;  // empty means Missing
    std::vector<Config> path;   // witness path, when one is produced

    static ProblemAnswer boolean(bool b, std::vector<Config> path = {});
    static ProblemAnswer counted(std::uint64_t c);
    static ProblemAnswer len(std::optional<int> l, std::vector<Config> path = {});

    [[nodiscard]] std::string render() const;
};

enum class ReachMode { Any, Within, MinLen, MaxSimpleLen };
enum class PredMode { IsGoe, Count, TGoe };
enum class CycleMode { Point, MinLen, MaxSimpleLen, CountSimpleThrough };
enum class GlobalWhat { Gardens, FixedPoints, CompleteFixedPoints, Cycles };
enum class FpMode { Exists, IsFp, IsCompleteFp, CompleteExists };

/// `t` is only read for ReachMode::Within.
ProblemAnswer reachability(const System& sys, const Config& c, const Config& d, ReachMode mode, int t = 0,
                           const Caps& caps = {});

bool path_intersection(const System& sys, const Config& c, const Config& d, const Caps& caps = {});

int tail_length(const System& sys, const Config& c, const Caps& caps = {});

/// `t` is only read for PredMode::TGoe.
ProblemAnswer predecessors(const System& sys, const Config& c, PredMode mode, int t = 0, const Caps& caps = {});

ProblemAnswer cycles(const System& sys, const Config& c, CycleMode mode, const Caps& caps = {});

std::uint64_t global_counts(const System& sys, GlobalWhat what, const Caps& caps = {});

/// `c` is ignored for the global modes.
ProblemAnswer fixed_points(const System& sys, FpMode mode, const Config& c = {}, const Caps& caps = {});

std::uint64_t count_subsequent(const System& sys, const Config& c, const Caps& caps = {});

/// Node-simple configuration paths; c = d counts simple cycles through c.
std::uint64_t count_simple_paths(const System& sys, const Config& c, const Config& d, const Caps& caps = {});

/// Path of exactly t steps from c to d, as a configuration sequence. Individual
/// selection with parallel or permutation schedules is solved by constraint search
/// over the last intermediate configuration; other models use layered search.
std::optional<std::vector<Config>> reach_exactly(const System& sys, const Config& c, const Config& d, int t,
                                                 const Caps& caps = {});

/// Shortest path of length 1..t.
std::optional<std::vector<Config>> reach_within(const System& sys, const Config& c, const Config& d, int t,
                                                const Caps& caps = {});

/// Configurations lying on some cycle, indexed by configuration index.
std::vector<bool> cycle_points(const ConfigGraph& g);

}  // namespace bfds
