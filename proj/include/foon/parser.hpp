#ifndef FOON_PARSER_HPP
#define FOON_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "foon/model.hpp"

namespace foon {

enum class Severity { Warning, Error };

struct ParseDiagnostic {
    int line_number = 0; // 1-based physical line in the source text
    Severity severity = Severity::Error;
    std::string message;
};

struct ParseResult {
    std::vector<FunctionalUnit> units;
    std::vector<ParseDiagnostic> diagnostics;

    std::size_t error_count() const;
    bool ok() const { return error_count() == 0; }
};

struct KitchenParseResult {
    Kitchen kitchen;
    std::vector<ParseDiagnostic> diagnostics;

    std::size_t error_count() const;
    bool ok() const { return error_count() == 0; }
};

/*
  Subgraph file grammar (TAB-separated records, one per line, `\n` or `\r\n`):

    O<TAB>name                       object line; opens a new object
    S<TAB>state                      state of the most recent object
    S<TAB>state<TAB>{ing,ing,...}    state line carrying the ingredient set
    M<TAB>name[<TAB>rate]            motion; rate in [0,1], defaults to 1.0
    //                               unit terminator

  Blank lines and lines starting with `#` are ignored. Objects before the M
  line are inputs, objects after it are outputs. Malformed blocks are
  reported as error diagnostics and skipped; parsing never aborts.
*/
ParseResult parse_foon(std::string_view text);

// Canonical emission: normalized labels, sorted states/ingredients (the full
// ingredient set rides on the object's first state line), explicit rate.
// parse_foon(serialize_foon(U)) reproduces U under unit_equals with zero
// diagnostics. Throws std::invalid_argument for units the grammar cannot
// represent (an object carrying ingredients but no state has no line to put
// the ingredient set on).
std::string serialize_foon(const std::vector<FunctionalUnit> &units);

// Kitchen inventory: O/S records and `//` separators only; an M line is an
// error and drops the surrounding block. Duplicates collapse silently.
KitchenParseResult parse_kitchen(std::string_view text);

// Success-rate formatting used everywhere a rate is printed: up to six
// decimal digits, trailing zeros trimmed, at least one digit after the dot.
std::string format_rate(double rate);

} // namespace foon

#endif
