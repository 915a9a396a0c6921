#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bfds {

/// Raised for malformed systems, configurations or files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside a model's preconditions.
class ModelError : public InputError {
public:
    using InputError::InputError;
};

/// Raised when an enumeration or search exceeds its cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultActionCap = std::uint64_t{1} << 20;
inline constexpr int kDefaultMaxFanIn = 8;

/// Bit vector over nodes 1..n. Node 1 is the leftmost character of str()
/// and the most significant bit of index().
class Config {
public:
    Config() = default;
    explicit Config(int n);

    static Config from_string(std::string_view bits);
    static Config from_index(int n, std::uint64_t idx);

    [[nodiscard]] int size() const { return n_; }
    // 0-based position; node i lives at position i-1.
    [[nodiscard]] bool get(int pos) const {
        return (w_[pos >> 6] >> (63 - (pos & 63))) & 1u;
    }
    void set(int pos, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (63 - (pos & 63));
        if (v) w_[pos >> 6] |= m;
        else w_[pos >> 6] &= ~m;
    }
    [[nodiscard]] bool node(int i) const { return get(i - 1); }

    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::uint64_t index() const;
    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] int popcount() const;

    [[nodiscard]] Config concat(const Config& other) const;
    [[nodiscard]] Config slice(int from, int len) const;

    friend bool operator==(const Config&, const Config&) = default;
    friend auto operator<=>(const Config& a, const Config& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.w_ <=> b.w_;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct ConfigHash {
    std::size_t operator()(const Config& c) const { return c.hash(); }
};

enum class FnKind { Const, Pos, Neg, Or, And, Table };

/// Local update function. Sources are 1-based node indices.
/// For Table, the first source is the most significant bit of the row index.
struct NodeFunction {
    FnKind kind = FnKind::Const;
    bool value = false;
    std::vector<int> srcs;
    std::vector<std::uint8_t> table;

    static NodeFunction constant(bool b);
    static NodeFunction pos(int src);
    static NodeFunction neg(int src);
    static NodeFunction any_of(std::vector<int> srcs);
    static NodeFunction all_of(std::vector<int> srcs);
    static NodeFunction make_table(std::vector<int> srcs, std::vector<std::uint8_t> bits);

    [[nodiscard]] bool is_unary() const { return kind == FnKind::Pos || kind == FnKind::Neg; }
    friend bool operator==(const NodeFunction&, const NodeFunction&) = default;
};

bool eval_function(const NodeFunction& f, const Config& c);

enum class SelectionKind { Fixed, Coordinated, Individual, SemiCoordinated };
enum class ScheduleKind { Parallel, FixedPermutation, PermutationList, ArbitraryPermutation, Asynchronous };

struct Selection {
    SelectionKind kind = SelectionKind::Fixed;
    std::vector<std::vector<int>> blocks;  // SemiCoordinated only

    friend bool operator==(const Selection&, const Selection&) = default;
};

struct Schedule {
    ScheduleKind kind = ScheduleKind::Parallel;
    std::vector<std::vector<int>> perms;  // one for FixedPermutation, L for PermutationList

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct System {
    int n = 0;
    int k = 0;
    std::vector<std::vector<NodeFunction>> functions;  // [i-1][j-1]
    Selection selection;
    Schedule schedule;

    System() = default;
    System(int n, int k);

    NodeFunction& fn(int i, int j) { return functions[i - 1][j - 1]; }
    [[nodiscard]] const NodeFunction& fn(int i, int j) const { return functions[i - 1][j - 1]; }

    /// Throws InputError on any structural violation.
    void validate(int max_fan_in = kDefaultMaxFanIn) const;

    friend bool operator==(const System&, const System&) = default;
};

bool is_permutation(const std::vector<int>& p, int n);

/// Ordered list of disjoint nonempty node groups.
struct AsyncPlan {
    std::vector<std::vector<int>> groups;
    friend bool operator==(const AsyncPlan&, const AsyncPlan&) = default;
};

enum class RealizationKind { Parallel, Sequential, Async };

struct Action {
    std::vector<int> choice;  // per node, 1-based
    RealizationKind realization = RealizationKind::Parallel;
    std::vector<int> perm;    // Sequential
    AsyncPlan plan;           // Async

    friend bool operator==(const Action&, const Action&) = default;
};

std::string describe(const Action& a);

Config step_parallel(const System& sys, const Config& c, const std::vector<int>& choice);
Config step_sequential(const System& sys, const Config& c, const std::vector<int>& choice,
                       const std::vector<int>& perm);
Config step_async(const System& sys, const Config& c, const std::vector<int>& choice,
                  const AsyncPlan& plan);
Config apply_action(const System& sys, const Config& c, const Action& a);

/// Saturating count of the action space.
std::uint64_t count_actions(const System& sys);

/// Calls fn on every permissible selection vector (1-based choice per node).
void for_each_choice(const System& sys, const std::function<void(const std::vector<int>&)>& fn);

/// Calls fn on every permissible action. Throws ResourceError if the count exceeds cap.
void for_each_action(const System& sys, const std::function<void(const Action&)>& fn,
                     std::uint64_t cap = kDefaultActionCap);

std::vector<Action> enumerate_actions(const System& sys, std::uint64_t cap = kDefaultActionCap);

struct ArcInfo {
    std::uint64_t labels = 0;
    Action witness;
};

using SuccessorMap = std::map<Config, ArcInfo>;

SuccessorMap successors(const System& sys, const Config& c, std::uint64_t cap = kDefaultActionCap);

/// Distinct successors only, without label bookkeeping. Uses product shortcuts
/// for Individual + Parallel.
std::vector<Config> successor_set(const System& sys, const Config& c,
                                  std::uint64_t cap = kDefaultActionCap);

NodeFunction identity_function(int i);

}  // namespace bfds
