#include "bfds/io.hpp"

#include <fstream>
#include <sstream>

namespace bfds {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

int to_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw InputError("bad " + what + " '" + s + "'");
    }
    if (used != s.size()) throw InputError("bad " + what + " '" + s + "'");
    return v;
}

// Decimal, or `u:111` for the unary compatibility form.
int count_value(const std::string& s, const std::string& what) {
    if (s.rfind("u:", 0) == 0) {
        const std::string body = s.substr(2);
        if (body.find_first_not_of('1') != std::string::npos) throw InputError("bad unary " + what + " '" + s + "'");
        return static_cast<int>(body.size());
    }
    return to_int(s, what);
}

std::vector<int> int_list(const std::vector<std::string>& ws, std::size_t from, const std::string& what) {
    std::vector<int> out;
    for (std::size_t i = from; i < ws.size(); ++i) out.push_back(to_int(ws[i], what));
    return out;
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

SelectionKind selection_from(const std::string& s) {
    if (s == "fixed") return SelectionKind::Fixed;
    if (s == "coordinated") return SelectionKind::Coordinated;
    if (s == "individual") return SelectionKind::Individual;
    if (s == "semi-coordinated") return SelectionKind::SemiCoordinated;
    throw InputError("unknown selection '" + s + "'");
}

ScheduleKind schedule_from(const std::string& s) {
    if (s == "parallel") return ScheduleKind::Parallel;
    if (s == "fixed-permutation") return ScheduleKind::FixedPermutation;
    if (s == "permutation-list") return ScheduleKind::PermutationList;
    if (s == "arbitrary-permutation") return ScheduleKind::ArbitraryPermutation;
    if (s == "asynchronous") return ScheduleKind::Asynchronous;
    throw InputError("unknown schedule '" + s + "'");
}

}  // namespace

std::string selection_name(SelectionKind k) {
    switch (k) {
    case SelectionKind::Fixed: return "fixed";
    case SelectionKind::Coordinated: return "coordinated";
    case SelectionKind::Individual: return "individual";
    case SelectionKind::SemiCoordinated: return "semi-coordinated";
    }
    return "?";
}

std::string schedule_name(ScheduleKind k) {
    switch (k) {
    case ScheduleKind::Parallel: return "parallel";
    case ScheduleKind::FixedPermutation: return "fixed-permutation";
    case ScheduleKind::PermutationList: return "permutation-list";
    case ScheduleKind::ArbitraryPermutation: return "arbitrary-permutation";
    case ScheduleKind::Asynchronous: return "asynchronous";
    }
    return "?";
}

std::string function_text(const NodeFunction& f) {
    std::ostringstream os;
    switch (f.kind) {
    case FnKind::Const: os << "const " << (f.value ? 1 : 0); break;
    case FnKind::Pos: os << "pos " << f.srcs[0]; break;
    case FnKind::Neg: os << "neg " << f.srcs[0]; break;
    case FnKind::Or: os << "or " << join(f.srcs); break;
    case FnKind::And: os << "and " << join(f.srcs); break;
    case FnKind::Table:
        os << "table";
        if (!f.srcs.empty()) os << ' ' << join(f.srcs);
        os << " : ";
        for (auto b : f.table) os << (b ? '1' : '0');
        break;
    }
    return os.str();
}

NodeFunction parse_function(const std::string& text) {
    std::string body = text;
    std::string bits;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        body = text.substr(0, colon);
        bits = trim(text.substr(colon + 1));
    }
    const auto ws = words(body);
    if (ws.empty()) throw InputError("missing function");
    const std::string& kind = ws[0];
    if (kind != "table" && !bits.empty()) throw InputError("only tables take ':'");
    if (kind == "const") {
        if (ws.size() != 2 || (ws[1] != "0" && ws[1] != "1")) throw InputError("const takes 0 or 1");
        return NodeFunction::constant(ws[1] == "1");
    }
    if (kind == "pos" || kind == "neg") {
        if (ws.size() != 2) throw InputError(kind + " takes one source");
        const int s = to_int(ws[1], "source");
        return kind == "pos" ? NodeFunction::pos(s) : NodeFunction::neg(s);
    }
    if (kind == "or" || kind == "and") {
        if (ws.size() < 2) throw InputError(kind + " needs at least one source");
        auto srcs = int_list(ws, 1, "source");
        return kind == "or" ? NodeFunction::any_of(std::move(srcs)) : NodeFunction::all_of(std::move(srcs));
    }
    if (kind == "table") {
        if (text.find(':') == std::string::npos) throw InputError("table needs ': <bits>'");
        std::vector<std::uint8_t> tbl;
        for (char ch : bits) {
            if (ch != '0' && ch != '1') throw InputError("table bits must be 0 or 1");
            tbl.push_back(ch == '1' ? 1 : 0);
        }
        auto srcs = int_list(ws, 1, "source");
        if (srcs.size() >= 30 || tbl.size() != std::size_t{1} << srcs.size())
            throw InputError("table over " + std::to_string(srcs.size()) + " sources needs " +
                             (srcs.size() >= 30 ? std::string("too many") : std::to_string(std::size_t{1} << srcs.size())) +
                             " bits");
        return NodeFunction::make_table(std::move(srcs), std::move(tbl));
    }
    throw InputError("unknown function kind '" + kind + "'");
}

SystemDocument parse_document(const std::string& text) {
    SystemDocument doc;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<SelectionKind> sel;
    std::optional<ScheduleKind> sch;
    std::vector<std::vector<int>> perms;
    std::vector<std::vector<int>> blocks;
    struct Cell {
        int i, j, line;
        NodeFunction f;
    };
    std::vector<Cell> cells;
    std::optional<std::string> start_s;
    std::optional<std::string> target_s;
    int start_line = 0;
    int target_line = 0;
    auto fail = [&](const std::string& msg) -> InputError { return InputError("line " + std::to_string(line_no) + ": " + msg); };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail("expected '<key> = <value>'");
        const auto lhs = words(line.substr(0, eq));
        const std::string rhs = trim(line.substr(eq + 1));
        if (lhs.empty()) throw fail("missing key");
        const std::string& key = lhs[0];
        try {
            if (key == "f") {
                if (lhs.size() != 3) throw InputError("expected 'f <node> <choice> = <function>'");
                cells.push_back({to_int(lhs[1], "node"), to_int(lhs[2], "choice"), line_no, parse_function(rhs)});
                continue;
            }
            if (key == "meta") {
                if (lhs.size() != 2) throw InputError("expected 'meta <key> = <value>'");
                doc.meta.emplace_back(lhs[1], rhs);
                continue;
            }
            if (lhs.size() != 1) throw InputError("unexpected words before '='");
            if (key == "n") {
                if (n) throw InputError("n given twice");
                n = count_value(rhs, "n");
                if (*n < 1) throw InputError("n must be at least 1");
            } else if (key == "k") {
                if (k) throw InputError("k given twice");
                k = count_value(rhs, "k");
                if (*k < 1) throw InputError("k must be at least 1");
            } else if (key == "selection") {
                if (sel) throw InputError("selection given twice");
                sel = selection_from(rhs);
            } else if (key == "schedule") {
                if (sch) throw InputError("schedule given twice");
                sch = schedule_from(rhs);
            } else if (key == "perm") {
                perms.push_back(int_list(words(rhs), 0, "permutation entry"));
                if (n && !is_permutation(perms.back(), *n)) throw InputError("perm is not a permutation of 1..n");
            } else if (key == "block") {
                blocks.push_back(int_list(words(rhs), 0, "block entry"));
                if (blocks.back().empty()) throw InputError("empty block");
            } else if (key == "start") {
                start_s = rhs;
                start_line = line_no;
            } else if (key == "target") {
                target_s = rhs;
                target_line = line_no;
            } else if (key == "horizon") {
                const auto ws = words(rhs);
                if (ws.empty() || ws.size() > 2) throw InputError("expected 'horizon = <t> [exact]' or 'unbounded'");
                if (ws[0] == "unbounded") {
                    if (ws.size() != 1) throw InputError("unbounded takes no modifier");
                } else {
                    doc.horizon = to_int(ws[0], "horizon");
                    if (*doc.horizon < 0) throw InputError("horizon must be non-negative");
                    if (ws.size() == 2) {
                        if (ws[1] != "exact") throw InputError("unknown horizon modifier '" + ws[1] + "'");
                        doc.exact_horizon = true;
                    }
                }
            } else if (key == "extra") {
                doc.extras.push_back(rhs);
            } else {
                throw InputError("unknown key '" + key + "'");
            }
        } catch (const InputError& e) {
            const std::string what = e.what();
            if (what.rfind("line ", 0) == 0) throw;
            throw fail(what);
        }
    }
    if (!n) throw InputError("missing 'n'");
    if (!k) throw InputError("missing 'k'");
    System sys(*n, *k);
    sys.selection.kind = sel.value_or(SelectionKind::Fixed);
    sys.schedule.kind = sch.value_or(ScheduleKind::Parallel);
    std::vector<char> seen(static_cast<std::size_t>(*n) * static_cast<std::size_t>(*k), 0);
    for (auto& cell : cells) {
        line_no = cell.line;
        if (cell.i < 1 || cell.i > *n) throw fail("node index out of range");
        if (cell.j < 1 || cell.j > *k) throw fail("choice index out of range");
        auto& mark = seen[static_cast<std::size_t>(cell.i - 1) * static_cast<std::size_t>(*k) + static_cast<std::size_t>(cell.j - 1)];
        if (mark) throw fail("function f " + std::to_string(cell.i) + " " + std::to_string(cell.j) + " given twice");
        mark = 1;
        for (int s : cell.f.srcs)
            if (s < 1 || s > *n) throw fail("source " + std::to_string(s) + " out of range");
        sys.fn(cell.i, cell.j) = std::move(cell.f);
    }
    for (int i = 1; i <= *n; ++i)
        for (int j = 1; j <= *k; ++j)
            if (!seen[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(*k) + static_cast<std::size_t>(j - 1)])
                throw InputError("missing function f " + std::to_string(i) + " " + std::to_string(j));
    const bool sequential = sys.schedule.kind == ScheduleKind::FixedPermutation || sys.schedule.kind == ScheduleKind::PermutationList;
    if (!sequential && !perms.empty()) throw InputError("schedule '" + schedule_name(sys.schedule.kind) + "' takes no 'perm' lines");
    if (sys.selection.kind != SelectionKind::SemiCoordinated && !blocks.empty())
        throw InputError("selection '" + selection_name(sys.selection.kind) + "' takes no 'block' lines");
    sys.schedule.perms = std::move(perms);
    sys.selection.blocks = std::move(blocks);
    sys.validate();
    doc.system = std::move(sys);

    auto config = [&](const std::string& s, int line, const char* what) {
        line_no = line;
        Config c;
        try {
            c = Config::from_string(s);
        } catch (const InputError& e) {
            throw fail(std::string(what) + ": " + e.what());
        }
        if (c.size() != *n) throw fail(std::string(what) + " has length " + std::to_string(c.size()) + ", expected " + std::to_string(*n));
        return c;
    };
    if (start_s) doc.start = config(*start_s, start_line, "start");
    if (target_s) doc.target = config(*target_s, target_line, "target");
    return doc;
}

System parse_system(const std::string& text) { return parse_document(text).system; }

std::string emit_document(const SystemDocument& doc) {
    const System& sys = doc.system;
    std::ostringstream os;
    for (const auto& [key, value] : doc.meta) os << "meta " << key << " = " << value << '\n';
    os << "n = " << sys.n << '\n';
    os << "k = " << sys.k << '\n';
    os << "selection = " << selection_name(sys.selection.kind) << '\n';
    for (const auto& b : sys.selection.blocks) os << "block = " << join(b) << '\n';
    os << "schedule = " << schedule_name(sys.schedule.kind) << '\n';
    for (const auto& p : sys.schedule.perms) os << "perm = " << join(p) << '\n';
    for (int i = 1; i <= sys.n; ++i)
        for (int j = 1; j <= sys.k; ++j) os << "f " << i << ' ' << j << " = " << function_text(sys.fn(i, j)) << '\n';
    if (doc.start) os << "start = " << doc.start->str() << '\n';
    if (doc.target) os << "target = " << doc.target->str() << '\n';
    if (doc.start || doc.target) {
        if (doc.horizon) os << "horizon = " << *doc.horizon << (doc.exact_horizon ? " exact" : "") << '\n';
        else os << "horizon = unbounded\n";
    }
    for (const auto& e : doc.extras) os << "extra = " << e << '\n';
    return os.str();
}

std::string emit_system(const System& sys) {
    SystemDocument doc;
    doc.system = sys;
    return emit_document(doc);
}

SystemDocument to_document(const ReductionInstance& inst) {
    SystemDocument doc;
    doc.system = inst.system;
    doc.start = inst.start;
    doc.target = inst.target;
    doc.horizon = inst.horizon;
    doc.exact_horizon = inst.exact_horizon;
    doc.extras = inst.extras;
    return doc;
}

ReductionInstance to_instance(const SystemDocument& doc) {
    if (!doc.start || !doc.target) throw InputError("instance needs 'start' and 'target'");
    return ReductionInstance{doc.system, *doc.start, *doc.target, doc.horizon, doc.exact_horizon, doc.extras};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace bfds
