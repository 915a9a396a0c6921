#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfds/system.hpp"

namespace bfds {

/// Target bit rule: constant, copy of a source node, or its negation.
struct MapTerm {
    enum class Kind { Zero, One, Src, NegSrc };
    Kind kind = Kind::Zero;
    int src = 0;  // 1-based source node

    friend bool operator==(const MapTerm&, const MapTerm&) = default;
};

/// Injective configuration map given bitwise. `tgt` is set only when the
/// source-side and target-side images differ.
struct Embedding {
    std::string rule;
    int source_n = 0;
    std::vector<MapTerm> src;
    std::optional<std::vector<MapTerm>> tgt;

    [[nodiscard]] Config map_source(const Config& c) const;
    [[nodiscard]] Config map_target(const Config& c) const;
    [[nodiscard]] bool split() const { return tgt.has_value(); }
};

Embedding identity_embedding(int n);

struct Rate {
    std::int64_t num = 1;
    std::int64_t den = 1;
};

/// One-hot counter rows of a pipeline construction; each row's home position is its first node.
/// A configuration is dead when some row is all zero or two rows are away from home: no
/// embedding image is reachable from it. verify_embedding checks that claim locally.
struct PruneRule {
    std::vector<std::vector<int>> counter_rows;
    [[nodiscard]] bool empty() const { return counter_rows.empty(); }
    [[nodiscard]] bool dead(const Config& c) const;
};

struct TransformResult {
    System system;
    Embedding embedding;
    Rate claimed_rate;
    std::vector<std::string> notes;
    PruneRule prune;
};

TransformResult async_to_parallel(const System& sys);
TransformResult parallel_to_async(const System& sys);
TransformResult parallel_to_sequential(const System& sys);
TransformResult sequential_to_parallel(const System& sys);
TransformResult permlist_to_parallel(const System& sys);
TransformResult kchoice_to_3choice(const System& sys);
TransformResult eliminate_negation(const System& sys);

/// Dispatch by CLI name; throws InputError for unknown names.
TransformResult apply_transform(const std::string& name, const System& sys);
const std::vector<std::string>& transform_names();

struct EmbeddingReport {
    bool is_embedding = true;
    Rate expansion{0, 1};  // 0/1 when no pair has finite lengths on both sides
    bool bounded = false;  // some target search stopped at length_bound
    std::optional<std::pair<Config, Config>> counterexample;
    std::string detail;
};

/// Checks nontrivial-path equivalence over all source pairs and measures the
/// largest ratio of shortest path lengths. With a split embedding the source side
/// uses reflexive reachability (length >= 0) and pairs with a = b are not rated.
/// With a prune rule, dead configurations are not expanded; each one met is checked to be
/// outside the image set with only dead successors, else InputError.
EmbeddingReport verify_embedding(const System& F, const System& G, const Embedding& nu, int length_bound,
                                 std::uint64_t state_cap = std::uint64_t{1} << 22, const PruneRule& prune = {});

/// Source lines "0", "1", "x<i>", "~x<i>", one per target node; "tgt" section if split.
std::string embedding_to_text(const Embedding& e);
Embedding embedding_from_text(const std::string& text);

NodeFunction remap_sources(const NodeFunction& f, const std::vector<int>& map);

}  // namespace bfds
