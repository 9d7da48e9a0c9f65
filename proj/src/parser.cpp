#include "foon/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace foon {

namespace {

std::size_t count_errors(const std::vector<ParseDiagnostic> &diagnostics) {
    return std::count_if(diagnostics.begin(), diagnostics.end(),
                         [](const ParseDiagnostic &d) {
                             return d.severity == Severity::Error;
                         });
}

// 1-based line of the first byte sequence that is not structurally valid
// UTF-8, or 0 when the whole document decodes.
int first_invalid_utf8_line(std::string_view text) {
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        std::size_t extra;
        if (c < 0x80)
            extra = 0;
        else if ((c & 0xE0) == 0xC0 && c >= 0xC2)
            extra = 1;
        else if ((c & 0xF0) == 0xE0)
            extra = 2;
        else if ((c & 0xF8) == 0xF0 && c <= 0xF4)
            extra = 3;
        else
            return line;
        if (i + extra >= text.size())
            return line;
        for (std::size_t k = 1; k <= extra; ++k)
            if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80)
                return line;
        i += extra + 1;
    }
    return 0;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            return fields;
        }
        fields.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) {
        return std::isspace(c);
    });
}

std::optional<double> parse_rate_field(std::string_view field) {
    double value = 0.0;
    const char *begin = field.data();
    const char *end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        return std::nullopt;
    if (!(value >= 0.0 && value <= 1.0))
        return std::nullopt;
    return value;
}

// One object being accumulated from an O line and its S lines.
struct PendingObject {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> ingredients;
};

struct BlockState {
    std::vector<ObjectNode> before_motion;
    std::vector<ObjectNode> after_motion;
    std::optional<PendingObject> open;
    bool has_motion = false;
    std::string motion_name;
    double motion_rate = 1.0;
    int first_line = 0;
    bool any_content = false;
    bool bad = false; // first error reported; rest of the block is skipped

    void reset() { *this = BlockState(); }
};

/*
  Shared line scanner for subgraph and kitchen files. The two modes differ
  only in whether M lines are legal and in what finalize() does with a
  completed block.
*/
class BlockParser {
public:
    BlockParser(bool kitchen_mode, std::vector<ParseDiagnostic> &diagnostics)
        : kitchen_mode_(kitchen_mode), diagnostics_(diagnostics) {}

    std::vector<FunctionalUnit> take_units() { return std::move(units_); }
    std::vector<ObjectNode> take_items() { return std::move(items_); }

    void run(std::string_view text) {
        int line_number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t newline = text.find('\n', pos);
            std::string_view line;
            if (newline == std::string_view::npos) {
                if (pos == text.size())
                    break;
                line = text.substr(pos);
                pos = text.size() + 1;
            } else {
                line = text.substr(pos, newline - pos);
                pos = newline + 1;
            }
            ++line_number;
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            handle_line(line, line_number);
        }
        handle_eof();
    }

private:
    void error(int line, std::string message) {
        diagnostics_.push_back({line, Severity::Error, std::move(message)});
    }

    void mark_bad(int line, std::string message) {
        error(line, std::move(message));
        block_.bad = true;
    }

    void touch(int line) {
        if (!block_.any_content) {
            block_.any_content = true;
            block_.first_line = line;
        }
    }

    void commit_open_object() {
        if (!block_.open)
            return;
        ObjectNode node(block_.open->name, block_.open->states,
                        block_.open->ingredients);
        if (block_.has_motion)
            block_.after_motion.push_back(std::move(node));
        else
            block_.before_motion.push_back(std::move(node));
        block_.open.reset();
    }

    void handle_line(std::string_view line, int line_number) {
        if (is_blank(line) || line.front() == '#')
            return;
        if (line == "//") {
            finalize_block();
            return;
        }
        if (block_.bad)
            return;
        auto fields = split_fields(line);
        const std::string &tag = fields[0];
        if (tag == "O")
            handle_object(fields, line_number);
        else if (tag == "S")
            handle_state(fields, line_number);
        else if (tag == "M")
            handle_motion(fields, line_number);
        else
            mark_bad(line_number, "unrecognized record '" + tag + "'");
    }

    void handle_object(const std::vector<std::string> &fields, int line_number) {
        touch(line_number);
        if (fields.size() != 2) {
            mark_bad(line_number, "object line must be 'O<TAB>name'");
            return;
        }
        std::string name = normalize_label(fields[1]);
        if (name.empty()) {
            mark_bad(line_number, "object name is empty");
            return;
        }
        commit_open_object();
        block_.open = PendingObject{std::move(name), {}, {}};
    }

    void handle_state(const std::vector<std::string> &fields, int line_number) {
        touch(line_number);
        if (!block_.open) {
            mark_bad(line_number, "state line without a preceding object line");
            return;
        }
        if (fields.size() != 2 && fields.size() != 3) {
            mark_bad(line_number,
                     "state line must be 'S<TAB>state' or "
                     "'S<TAB>state<TAB>{ingredients}'");
            return;
        }
        std::string state = normalize_label(fields[1]);
        if (state.empty()) {
            mark_bad(line_number, "state name is empty");
            return;
        }
        if (fields.size() == 3 && !parse_ingredients(fields[2], line_number))
            return;
        block_.open->states.push_back(std::move(state));
    }

    bool parse_ingredients(const std::string &field, int line_number) {
        if (field.size() < 2 || field.front() != '{' || field.back() != '}') {
            mark_bad(line_number, "ingredient set must be brace-enclosed: {a,b,...}");
            return false;
        }
        std::string_view inner(field.data() + 1, field.size() - 2);
        std::size_t start = 0;
        while (start <= inner.size()) {
            std::size_t comma = inner.find(',', start);
            std::string_view piece = comma == std::string_view::npos
                                         ? inner.substr(start)
                                         : inner.substr(start, comma - start);
            std::string name = normalize_label(piece);
            if (name.empty()) {
                mark_bad(line_number, "ingredient name is empty");
                return false;
            }
            block_.open->ingredients.push_back(std::move(name));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return true;
    }

    void handle_motion(const std::vector<std::string> &fields, int line_number) {
        touch(line_number);
        if (kitchen_mode_) {
            mark_bad(line_number, "motion line not allowed in a kitchen file");
            return;
        }
        if (!block_.open && block_.before_motion.empty()) {
            mark_bad(line_number, "motion line precedes any object line");
            return;
        }
        if (block_.has_motion) {
            mark_bad(line_number, "unit has more than one motion line");
            return;
        }
        if (fields.size() != 2 && fields.size() != 3) {
            mark_bad(line_number,
                     "motion line must be 'M<TAB>name' or 'M<TAB>name<TAB>rate'");
            return;
        }
        std::string name = normalize_label(fields[1]);
        if (name.empty()) {
            mark_bad(line_number, "motion name is empty");
            return;
        }
        double rate = 1.0;
        if (fields.size() == 3) {
            auto parsed = parse_rate_field(fields[2]);
            if (!parsed) {
                mark_bad(line_number,
                         "motion rate '" + fields[2] + "' is not a decimal in [0, 1]");
                return;
            }
            rate = *parsed;
        }
        commit_open_object();
        block_.has_motion = true;
        block_.motion_name = std::move(name);
        block_.motion_rate = rate;
    }

    void finalize_block() {
        if (block_.bad || !block_.any_content) {
            block_.reset();
            return;
        }
        commit_open_object();
        if (kitchen_mode_) {
            for (auto &node : block_.before_motion)
                items_.push_back(std::move(node));
        } else {
            emit_unit();
        }
        block_.reset();
    }

    void emit_unit() {
        if (!block_.has_motion) {
            error(block_.first_line, "unit has no motion line");
            return;
        }
        if (block_.before_motion.empty()) {
            error(block_.first_line, "unit has no input objects");
            return;
        }
        if (block_.after_motion.empty()) {
            error(block_.first_line, "unit has no output objects");
            return;
        }
        if (has_duplicate(block_.before_motion)) {
            error(block_.first_line, "duplicate input object in unit");
            return;
        }
        if (has_duplicate(block_.after_motion)) {
            error(block_.first_line, "duplicate output object in unit");
            return;
        }
        units_.emplace_back(std::move(block_.before_motion),
                            MotionNode(block_.motion_name, block_.motion_rate),
                            std::move(block_.after_motion));
    }

    static bool has_duplicate(const std::vector<ObjectNode> &nodes) {
        std::vector<std::string> ids;
        ids.reserve(nodes.size());
        for (const auto &node : nodes)
            ids.push_back(node.identity());
        std::sort(ids.begin(), ids.end());
        return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
    }

    void handle_eof() {
        if (!block_.any_content || block_.bad) {
            block_.reset();
            return;
        }
        if (kitchen_mode_) {
            // Kitchen blocks are separated, not terminated; a trailing block
            // without `//` is fine.
            finalize_block();
            return;
        }
        error(block_.first_line, "unit not terminated by '//'");
        block_.reset();
    }

    bool kitchen_mode_;
    std::vector<ParseDiagnostic> &diagnostics_;
    BlockState block_;
    std::vector<FunctionalUnit> units_;
    std::vector<ObjectNode> items_;
};

} // namespace

std::size_t ParseResult::error_count() const {
    return count_errors(diagnostics);
}

std::size_t KitchenParseResult::error_count() const {
    return count_errors(diagnostics);
}

ParseResult parse_foon(std::string_view text) {
    ParseResult result;
    if (int line = first_invalid_utf8_line(text)) {
        result.diagnostics.push_back(
            {line, Severity::Error, "document is not valid UTF-8"});
        return result;
    }
    BlockParser parser(false, result.diagnostics);
    parser.run(text);
    result.units = parser.take_units();
    return result;
}

KitchenParseResult parse_kitchen(std::string_view text) {
    KitchenParseResult result;
    if (int line = first_invalid_utf8_line(text)) {
        result.diagnostics.push_back(
            {line, Severity::Error, "document is not valid UTF-8"});
        return result;
    }
    BlockParser parser(true, result.diagnostics);
    parser.run(text);
    for (auto &item : parser.take_items())
        result.kitchen.add(item);
    return result;
}

std::string format_rate(double rate) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", rate);
    std::string text(buffer);
    while (text.size() > 1 && text.back() == '0')
        text.pop_back();
    if (text.back() == '.')
        text += '0';
    return text;
}

namespace {

void emit_object(std::ostringstream &out, const ObjectNode &node) {
    out << "O\t" << node.name() << "\n";
    const auto &states = node.states();
    for (std::size_t i = 0; i < states.size(); ++i) {
        out << "S\t" << states[i];
        if (i == 0 && !node.ingredients().empty()) {
            out << "\t{";
            const auto &ings = node.ingredients();
            for (std::size_t j = 0; j < ings.size(); ++j)
                out << (j > 0 ? "," : "") << ings[j];
            out << "}";
        }
        out << "\n";
    }
}

void check_serializable(const FunctionalUnit &unit) {
    auto check_node = [](const ObjectNode &node) {
        if (!node.ingredients().empty() && node.states().empty())
            throw std::invalid_argument(
                "object '" + node.name() +
                "' has ingredients but no states; the subgraph grammar has no "
                "line to carry its ingredient set");
    };
    for (const auto &node : unit.inputs())
        check_node(node);
    for (const auto &node : unit.outputs())
        check_node(node);
}

} // namespace

std::string serialize_foon(const std::vector<FunctionalUnit> &units) {
    std::ostringstream out;
    for (const auto &unit : units) {
        check_serializable(unit);
        for (const auto &node : unit.inputs())
            emit_object(out, node);
        out << "M\t" << unit.motion().name() << "\t"
            << format_rate(unit.motion().success_rate()) << "\n";
        for (const auto &node : unit.outputs())
            emit_object(out, node);
        out << "//\n";
    }
    return out.str();
}

} // namespace foon
