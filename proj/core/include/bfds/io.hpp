#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfds/reductions.hpp"
#include "bfds/system.hpp"

namespace bfds {

/// Parsed system file: the system, free-form metadata, and an optional instance trailer.
struct SystemDocument {
    System system;
    std::vector<std::pair<std::string, std::string>> meta;  // `meta <key> = <value>`, in file order
    std::optional<Config> start;
    std::optional<Config> target;
    std::optional<int> horizon;  // absent or `unbounded` leaves this empty
    bool exact_horizon = false;
    std::vector<std::string> extras;
};

/// Throws InputError naming the offending line.
SystemDocument parse_document(const std::string& text);
System parse_system(const std::string& text);

/// Canonical text. parse_document(emit_document(d)) == d.
std::string emit_document(const SystemDocument& doc);
std::string emit_system(const System& sys);

SystemDocument to_document(const ReductionInstance& inst);
ReductionInstance to_instance(const SystemDocument& doc);

std::string function_text(const NodeFunction& f);
NodeFunction parse_function(const std::string& text);

std::string selection_name(SelectionKind k);
std::string schedule_name(ScheduleKind k);

std::string read_file(const std::string& path);

}  // namespace bfds
