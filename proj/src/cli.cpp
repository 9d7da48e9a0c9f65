#include "foon/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "foon/export.hpp"
#include "foon/graph.hpp"
#include "foon/parser.hpp"
#include "foon/retrieval.hpp"

namespace foon {
namespace cli {

namespace {

bool color_enabled() {
    const char *value = std::getenv("FOON_COLOR");
    return value != nullptr && std::string(value) == "1";
}

struct Session {
    std::ostream &out;
    std::ostream &err;
    bool color = false;
    bool had_parse_errors = false;

    std::string severity_tag(Severity severity) const {
        const char *tag = severity == Severity::Error ? "error" : "warning";
        if (!color)
            return tag;
        const char *code = severity == Severity::Error ? "\x1b[31m" : "\x1b[33m";
        return std::string(code) + tag + "\x1b[0m";
    }

    void report(const std::string &path,
                const std::vector<ParseDiagnostic> &diagnostics) {
        for (const auto &d : diagnostics)
            err << path << ":" << d.line_number << ": " << severity_tag(d.severity)
                << ": " << d.message << "\n";
        if (std::any_of(diagnostics.begin(), diagnostics.end(),
                        [](const ParseDiagnostic &d) {
                            return d.severity == Severity::Error;
                        }))
            had_parse_errors = true;
    }

    std::optional<std::string> read_file(const std::string &path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            err << path << ": cannot open file\n";
            return std::nullopt;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }

    std::optional<ParseResult> load_units(const std::string &path) {
        auto text = read_file(path);
        if (!text)
            return std::nullopt;
        ParseResult result = parse_foon(*text);
        report(path, result.diagnostics);
        return result;
    }

    std::optional<Kitchen> load_kitchen(const std::string &path) {
        auto text = read_file(path);
        if (!text)
            return std::nullopt;
        KitchenParseResult result = parse_kitchen(*text);
        report(path, result.diagnostics);
        return result.kitchen;
    }

    bool write_result(const std::string &output_path, const std::string &text) {
        if (output_path.empty()) {
            out << text;
            return true;
        }
        std::ofstream file(output_path, std::ios::binary);
        if (!file) {
            err << output_path << ": cannot open for writing\n";
            return false;
        }
        file << text;
        return true;
    }
};

std::vector<std::string> split_list(const std::string &text, const char *what) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = comma == std::string::npos
                                ? text.substr(start)
                                : text.substr(start, comma - start);
        if (normalize_label(piece).empty())
            throw std::invalid_argument(std::string("empty ") + what +
                                        " in goal selector");
        items.push_back(piece);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return items;
}

} // namespace

ObjectNode parse_goal_spec(const std::string &spec) {
    std::string rest = spec;
    std::vector<std::string> ingredients;
    std::size_t hash = rest.find('#');
    if (hash != std::string::npos) {
        ingredients = split_list(rest.substr(hash + 1), "ingredient");
        rest = rest.substr(0, hash);
    }
    std::vector<std::string> states;
    std::size_t colon = rest.find(':');
    if (colon != std::string::npos) {
        states = split_list(rest.substr(colon + 1), "state");
        rest = rest.substr(0, colon);
    }
    if (normalize_label(rest).empty())
        throw std::invalid_argument("goal selector has an empty object name");
    return ObjectNode(rest, std::move(states), std::move(ingredients));
}

namespace {

std::string cell_text(const CompareCell &cell) {
    switch (cell.status) {
    case SearchStatus::FoundTree:
        return std::to_string(cell.step_count);
    case SearchStatus::DepthExhausted:
        return "limit";
    case SearchStatus::Unsolvable:
        return "none";
    }
    return "?";
}

std::string format_table_row(const std::vector<std::string> &cells,
                             const std::vector<std::size_t> &widths) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0)
            line += "  ";
        line += cells[i];
        if (i + 1 < cells.size() && cells[i].size() < widths[i])
            line += std::string(widths[i] - cells[i].size(), ' ');
    }
    return line;
}

void print_compare_table(std::ostream &out, const std::string &goal_text,
                         const CompareRow &row) {
    std::vector<std::string> header = {"Goal", "IDS", "H1", "H2"};
    std::vector<std::string> values = {goal_text, cell_text(row.ids),
                                       cell_text(row.h1), cell_text(row.h2)};
    std::vector<std::size_t> widths(4);
    for (std::size_t i = 0; i < 4; ++i)
        widths[i] = std::max(header[i].size(), values[i].size());
    out << format_table_row(header, widths) << "\n";
    out << format_table_row(values, widths) << "\n";
}

void print_trace(std::ostream &err, const ExpansionTrace &trace) {
    for (const auto &record : trace.records) {
        err << "need " << record.needed_display << ": candidates";
        for (std::size_t i = 0; i < record.candidate_indexes.size(); ++i)
            err << " " << record.candidate_indexes[i] << "("
                << record.scores[i] << ")";
        err << " -> chose " << record.chosen_index << "\n";
    }
}

struct SearchArgs {
    std::string goal_spec;
    std::string kitchen_path;
    std::string algo = "ids";
    std::string graph_path;
    std::string output_path;
    int max_depth = 25;
    bool trace = false;
};

int run_one_search(Session &session, const SearchArgs &args, const Foon &graph,
                   const Goal &goal, const Kitchen &kitchen) {
    SearchOutcome outcome;
    std::optional<ExpansionTrace> trace;
    if (args.algo == "ids") {
        outcome = search_ids(graph, goal, kitchen, args.max_depth);
    } else {
        GbfsHeuristic heuristic = args.algo == "gbfs1"
                                      ? GbfsHeuristic::SuccessRate
                                      : GbfsHeuristic::FewestInputs;
        GbfsResult result = search_gbfs(graph, goal, kitchen, heuristic);
        outcome = std::move(result.outcome);
        trace = std::move(result.trace);
    }

    if (args.trace) {
        if (trace)
            print_trace(session.err, *trace);
        else
            session.err << "trace: only the greedy searches record a trace\n";
    }

    if (!outcome.found()) {
        session.err << "no task tree: ";
        if (outcome.status == SearchStatus::Unsolvable)
            session.err << "unsolvable: ";
        session.err << outcome.note << "\n";
        return 1;
    }

    const TaskTree &tree = *outcome.tree;
    session.err << algorithm_name(tree.algorithm) << ": " << tree.steps.size()
                << " steps";
    if (tree.algorithm == Algorithm::Ids)
        session.err << ", depth " << tree.discovered_depth;
    session.err << ", " << outcome.expansions << " expansions\n";
    if (!session.write_result(args.output_path, serialize_foon(tree.steps)))
        return 1;
    return session.had_parse_errors ? 1 : 0;
}

int run_search(Session &session, const SearchArgs &args) {
    Goal goal{parse_goal_spec(args.goal_spec)};
    auto kitchen = session.load_kitchen(args.kitchen_path);
    if (!kitchen)
        return 1;
    auto parsed = session.load_units(args.graph_path);
    if (!parsed)
        return 1;
    Foon graph = Foon::build(std::move(parsed->units));

    if (args.algo == "all") {
        CompareRow row = compare(graph, goal, *kitchen, args.max_depth);
        std::ostringstream table;
        print_compare_table(table, goal.target.display(), row);
        session.err << "expansions: IDS " << row.ids.expansions << ", H1 "
                    << row.h1.expansions << ", H2 " << row.h2.expansions << "\n";
        if (!session.write_result(args.output_path, table.str()))
            return 1;
        return session.had_parse_errors ? 1 : 0;
    }
    return run_one_search(session, args, graph, goal, *kitchen);
}

int run_validate(Session &session, const std::string &goal_spec,
                 const std::string &kitchen_path, const std::string &tree_path) {
    Goal goal{parse_goal_spec(goal_spec)};
    auto kitchen = session.load_kitchen(kitchen_path);
    if (!kitchen)
        return 1;
    auto parsed = session.load_units(tree_path);
    if (!parsed)
        return 1;
    if (session.had_parse_errors)
        return 1;

    ValidityReport report =
        validate_steps(parsed->units, goal.target, *kitchen);
    if (report.valid()) {
        session.out << "valid: " << parsed->units.size() << " steps produce '"
                    << goal.target.display() << "'\n";
        return 0;
    }
    for (const auto &violation : report.violations)
        session.out << "invalid: step " << violation.step_index << " needs '"
                    << violation.input.display() << "' before it is available\n";
    if (!report.goal_satisfied)
        session.out << "invalid: goal '" << goal.target.display()
                    << "' is never produced\n";
    return 1;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
    Session session{out, err, color_enabled()};

    CLI::App app{"FOON subgraph tools: merge annotated subgraphs into a "
                 "universal network and retrieve task trees for goal nodes"};
    app.name("foon");
    app.require_subcommand(1);

    // parse
    std::string parse_path;
    CLI::App *cmd_parse =
        app.add_subcommand("parse", "Parse a subgraph file and report "
                                    "diagnostics and graph statistics");
    cmd_parse->add_option("file", parse_path, "subgraph file")->required();

    // merge
    std::vector<std::string> merge_paths;
    std::string merge_output;
    CLI::App *cmd_merge = app.add_subcommand(
        "merge", "Union subgraph files into one deduplicated network");
    cmd_merge->add_option("files", merge_paths, "subgraph files")->required();
    cmd_merge->add_option("-o,--output", merge_output, "output file");

    // stats
    std::string stats_path;
    CLI::App *cmd_stats =
        app.add_subcommand("stats", "Print unit/object/motion counts");
    cmd_stats->add_option("file", stats_path, "subgraph file")->required();

    // search
    SearchArgs search_args;
    CLI::App *cmd_search = app.add_subcommand(
        "search", "Retrieve a task tree for a goal node from a graph");
    cmd_search->add_option("--goal", search_args.goal_spec,
                           "goal selector name[:states][#ingredients]")
        ->required();
    cmd_search->add_option("--kitchen", search_args.kitchen_path,
                           "kitchen inventory file")
        ->required();
    cmd_search
        ->add_option("--algo", search_args.algo, "ids|gbfs1|gbfs2|all")
        ->check(CLI::IsMember({"ids", "gbfs1", "gbfs2", "all"}))
        ->required();
    cmd_search->add_option("--max-depth", search_args.max_depth,
                           "iterative deepening limit")
        ->check(CLI::PositiveNumber);
    cmd_search->add_flag("--trace", search_args.trace,
                         "print greedy expansion trace to stderr");
    cmd_search->add_option("graph", search_args.graph_path, "graph file")
        ->required();
    cmd_search->add_option("-o,--output", search_args.output_path,
                           "output file");

    // validate
    std::string validate_goal, validate_kitchen, validate_tree_path;
    CLI::App *cmd_validate = app.add_subcommand(
        "validate", "Check a task tree file for executability from a kitchen");
    cmd_validate->add_option("--kitchen", validate_kitchen, "kitchen file")
        ->required();
    cmd_validate->add_option("--goal", validate_goal, "goal selector")
        ->required();
    cmd_validate->add_option("tree", validate_tree_path, "task tree file")
        ->required();

    // compare
    std::string compare_goal, compare_kitchen, compare_graph;
    int compare_max_depth = 25;
    CLI::App *cmd_compare = app.add_subcommand(
        "compare", "Run all three searches and print a step-count table");
    cmd_compare->add_option("--goal", compare_goal, "goal selector")->required();
    cmd_compare->add_option("--kitchen", compare_kitchen, "kitchen file")
        ->required();
    cmd_compare->add_option("--max-depth", compare_max_depth,
                            "iterative deepening limit")
        ->check(CLI::PositiveNumber);
    cmd_compare->add_option("graph", compare_graph, "graph file")->required();

    // export
    std::string export_format, export_path, export_output;
    CLI::App *cmd_export = app.add_subcommand(
        "export", "Render a subgraph or task tree file to DOT or JSON");
    cmd_export->add_option("--format", export_format, "dot|json")
        ->check(CLI::IsMember({"dot", "json"}))
        ->required();
    cmd_export->add_option("file", export_path, "subgraph or tree file")
        ->required();
    cmd_export->add_option("-o,--output", export_output, "output file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        err << "run 'foon --help' for usage\n";
        return 2;
    }

    try {
        if (*cmd_parse) {
            auto parsed = session.load_units(parse_path);
            if (!parsed)
                return 1;
            std::size_t raw = parsed->units.size();
            Foon graph = Foon::build(std::move(parsed->units));
            GraphStats stats = graph.stats();
            out << "parsed " << raw << " units (" << raw - stats.unit_count
                << " duplicates), " << parsed->error_count() << " errors, "
                << parsed->diagnostics.size() - parsed->error_count()
                << " warnings\n";
            out << "graph: " << stats.unit_count << " units, "
                << stats.object_node_count << " object nodes, "
                << stats.motion_node_count << " motion nodes\n";
            return session.had_parse_errors ? 1 : 0;
        }
        if (*cmd_merge) {
            Foon merged;
            for (const auto &path : merge_paths) {
                auto parsed = session.load_units(path);
                if (!parsed)
                    return 1;
                merged = merge(merged, Foon::build(std::move(parsed->units)));
            }
            if (!session.write_result(merge_output, serialize_foon(merged.units())))
                return 1;
            return session.had_parse_errors ? 1 : 0;
        }
        if (*cmd_stats) {
            auto parsed = session.load_units(stats_path);
            if (!parsed)
                return 1;
            GraphStats stats = Foon::build(std::move(parsed->units)).stats();
            out << "units: " << stats.unit_count << "\n";
            out << "object nodes: " << stats.object_node_count << "\n";
            out << "motion nodes: " << stats.motion_node_count << "\n";
            return session.had_parse_errors ? 1 : 0;
        }
        if (*cmd_search)
            return run_search(session, search_args);
        if (*cmd_validate)
            return run_validate(session, validate_goal, validate_kitchen,
                                validate_tree_path);
        if (*cmd_compare) {
            Goal goal{parse_goal_spec(compare_goal)};
            auto kitchen = session.load_kitchen(compare_kitchen);
            if (!kitchen)
                return 1;
            auto parsed = session.load_units(compare_graph);
            if (!parsed)
                return 1;
            Foon graph = Foon::build(std::move(parsed->units));
            CompareRow row = compare(graph, goal, *kitchen, compare_max_depth);
            print_compare_table(out, goal.target.display(), row);
            err << "expansions: IDS " << row.ids.expansions << ", H1 "
                << row.h1.expansions << ", H2 " << row.h2.expansions << "\n";
            return session.had_parse_errors ? 1 : 0;
        }
        if (*cmd_export) {
            auto parsed = session.load_units(export_path);
            if (!parsed)
                return 1;
            std::string rendered = export_format == "dot"
                                       ? to_dot(parsed->units)
                                       : units_to_json(parsed->units);
            if (!session.write_result(export_output, rendered))
                return 1;
            return session.had_parse_errors ? 1 : 0;
        }
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace cli
} // namespace foon
