#include "foon/retrieval.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace foon {

namespace {

/*
  Work bookkeeping shared by the searches. An identity counts as visited once
  it is resolved conclusively: satisfied from the kitchen, or expanded through
  at least one candidate unit. Dead identities (no producers, not in the
  kitchen) end the search without being counted.
*/
struct Counters {
    long expansions = 0;
    std::unordered_set<std::string> visited;
    std::unordered_set<std::string> kitchen_hits;

    void note_kitchen_hit(const std::string &identity) {
        visited.insert(identity);
        kitchen_hits.insert(identity);
    }
    void note_expansion(const std::string &identity) {
        ++expansions;
        visited.insert(identity);
    }
    void fill(SearchOutcome &outcome) const {
        outcome.expansions = expansions;
        outcome.visited = static_cast<long>(visited.size());
        outcome.kitchen_hits = static_cast<long>(kitchen_hits.size());
    }
};

void append_dedup(std::vector<int> &steps, const std::vector<int> &more) {
    for (int index : more)
        if (std::find(steps.begin(), steps.end(), index) == steps.end())
            steps.push_back(index);
}

std::vector<FunctionalUnit> materialize(const Foon &graph,
                                        const std::vector<int> &indexes) {
    std::vector<FunctionalUnit> steps;
    steps.reserve(indexes.size());
    for (int index : indexes)
        steps.push_back(graph.unit(index));
    return steps;
}

struct DfsContext {
    const Foon &graph;
    const Kitchen &kitchen;
    Counters &counters;
    std::unordered_set<int> path; // units on the current recursion trail
};

DfsResult dfs_recurse(DfsContext &ctx, const ObjectNode &need, int limit) {
    if (node_satisfied(need, ctx.kitchen)) {
        ctx.counters.note_kitchen_hit(need.identity());
        return {true, false, {}};
    }
    if (limit == 0)
        return {false, true, {}};

    bool cutoff = false;
    for (int index : ctx.graph.producer_indexes(need.identity())) {
        if (ctx.path.count(index))
            continue; // a unit may not appear on its own recursion path
        ctx.counters.note_expansion(need.identity());
        ctx.path.insert(index);
        std::vector<int> steps;
        bool failed = false;
        for (const auto &input : ctx.graph.unit(index).inputs()) {
            DfsResult sub = dfs_recurse(ctx, input, limit - 1);
            if (!sub.success) {
                cutoff |= sub.cutoff;
                failed = true;
                break;
            }
            append_dedup(steps, sub.step_indexes);
        }
        ctx.path.erase(index);
        if (!failed) {
            steps.push_back(index);
            return {true, false, std::move(steps)};
        }
    }
    return {false, cutoff, {}};
}

} // namespace

const char *algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::Ids:
        return "IDS";
    case Algorithm::GbfsH1:
        return "GBFS-H1";
    case Algorithm::GbfsH2:
        return "GBFS-H2";
    case Algorithm::Oracle:
        return "ORACLE";
    }
    return "?";
}

double h1_score(const FunctionalUnit &unit) {
    return unit.motion().success_rate();
}

std::size_t h2_score(const FunctionalUnit &unit) {
    return unit.inputs().size();
}

DfsResult dfs_limited(const Foon &graph, const ObjectNode &need,
                      const Kitchen &kitchen, int limit) {
    if (limit < 0)
        throw std::invalid_argument("depth limit must be non-negative");
    Counters counters;
    DfsContext ctx{graph, kitchen, counters, {}};
    return dfs_recurse(ctx, need, limit);
}

/*
  Re-running the limited DFS from scratch at every level looks wasteful, but
  with branching factor b the level-L pass expands on the order of b^L nodes
  while all previous passes together cost the same sum one level shallower;
  the deepest pass dominates, so iterative deepening stays within a constant
  factor of a single full-depth DFS while keeping only one trail in memory.
*/
SearchOutcome search_ids(const Foon &graph, const Goal &goal,
                         const Kitchen &kitchen, int max_depth) {
    if (max_depth < 1)
        throw std::invalid_argument("max_depth must be at least 1");

    Counters counters;
    SearchOutcome outcome;
    for (int limit = 0; limit <= max_depth; ++limit) {
        DfsContext ctx{graph, kitchen, counters, {}};
        DfsResult result = dfs_recurse(ctx, goal.target, limit);
        if (result.success) {
            outcome.status = SearchStatus::FoundTree;
            outcome.tree = TaskTree{Algorithm::Ids, goal.target, limit,
                                    materialize(graph, result.step_indexes)};
            counters.fill(outcome);
            return outcome;
        }
        if (!result.cutoff) {
            // The whole space below the goal was explored without touching
            // the depth limit; deepening cannot help.
            outcome.status = SearchStatus::Unsolvable;
            outcome.note = "no executable producer chain exists for '" +
                           goal.target.display() + "'";
            counters.fill(outcome);
            return outcome;
        }
    }
    outcome.status = SearchStatus::DepthExhausted;
    outcome.note = "no tree within depth limit " + std::to_string(max_depth);
    counters.fill(outcome);
    return outcome;
}

GbfsResult search_gbfs(const Foon &graph, const Goal &goal,
                       const Kitchen &kitchen, GbfsHeuristic heuristic) {
    GbfsResult result;
    Counters counters;
    const Algorithm algorithm = heuristic == GbfsHeuristic::SuccessRate
                                    ? Algorithm::GbfsH1
                                    : Algorithm::GbfsH2;

    std::deque<ObjectNode> queue;
    std::unordered_set<std::string> enqueued;
    std::vector<int> chosen_order;
    std::unordered_set<int> chosen_set;

    queue.push_back(goal.target);
    enqueued.insert(goal.target.identity());

    while (!queue.empty()) {
        ObjectNode need = queue.front();
        queue.pop_front();
        if (node_satisfied(need, kitchen)) {
            counters.note_kitchen_hit(need.identity());
            continue;
        }
        const std::vector<int> &producers =
            graph.producer_indexes(need.identity());
        if (producers.empty()) {
            result.outcome.status = SearchStatus::Unsolvable;
            result.outcome.note = "'" + need.display() +
                                  "' has no producers and is not in the kitchen";
            counters.fill(result.outcome);
            return result;
        }

        ExpansionRecord record;
        record.needed_identity = need.identity();
        record.needed_display = need.display();
        int best = -1;
        double best_score = 0.0;
        for (int index : producers) {
            counters.note_expansion(need.identity());
            const FunctionalUnit &candidate = graph.unit(index);
            double score = heuristic == GbfsHeuristic::SuccessRate
                               ? h1_score(candidate)
                               : static_cast<double>(h2_score(candidate));
            record.candidate_indexes.push_back(index);
            record.scores.push_back(score);
            // Strict comparison keeps the earliest file position on ties.
            bool better = best < 0 ||
                          (heuristic == GbfsHeuristic::SuccessRate
                               ? score > best_score
                               : score < best_score);
            if (better) {
                best = index;
                best_score = score;
            }
        }
        record.chosen_index = best;
        result.trace.records.push_back(std::move(record));

        if (!chosen_set.count(best)) {
            chosen_set.insert(best);
            chosen_order.push_back(best);
        }
        for (const auto &input : graph.unit(best).inputs())
            if (enqueued.insert(input.identity()).second)
                queue.push_back(input);
    }

    std::reverse(chosen_order.begin(), chosen_order.end());
    std::vector<FunctionalUnit> steps = materialize(graph, chosen_order);
    TopoResult topo = topological_order(steps, kitchen);
    if (!topo.ok) {
        result.outcome.status = SearchStatus::Unsolvable;
        result.outcome.note = topo.cycle_note;
        counters.fill(result.outcome);
        return result;
    }

    TaskTree tree{algorithm, goal.target, 0, std::move(topo.ordered)};
    ValidityReport report = validate_tree(tree, kitchen);
    if (!report.valid()) {
        result.outcome.status = SearchStatus::Unsolvable;
        result.outcome.note = "greedy selection produced a non-executable tree";
        counters.fill(result.outcome);
        return result;
    }
    result.outcome.status = SearchStatus::FoundTree;
    result.outcome.tree = std::move(tree);
    counters.fill(result.outcome);
    return result;
}

TopoResult topological_order(const std::vector<FunctionalUnit> &steps,
                             const Kitchen &kitchen) {
    const std::size_t n = steps.size();
    TopoResult result;

    std::vector<std::unordered_set<std::string>> needed_outputs(n);
    for (std::size_t u = 0; u < n; ++u)
        for (const auto &node : steps[u].outputs())
            if (!node_satisfied(node, kitchen))
                needed_outputs[u].insert(node.identity());

    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    std::vector<int> indegree(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v)
                continue;
            for (const auto &input : steps[v].inputs()) {
                if (needed_outputs[u].count(input.identity())) {
                    edge[u][v] = true;
                    ++indegree[v];
                    break;
                }
            }
        }
    }

    std::vector<bool> emitted(n, false);
    std::vector<int> order;
    order.reserve(n);
    for (std::size_t round = 0; round < n; ++round) {
        int pick = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!emitted[i] && indegree[i] == 0) {
                pick = static_cast<int>(i);
                break;
            }
        }
        if (pick < 0)
            break;
        emitted[pick] = true;
        order.push_back(pick);
        for (std::size_t v = 0; v < n; ++v)
            if (edge[pick][v])
                --indegree[v];
    }

    if (order.size() != n) {
        std::ostringstream note;
        note << "dependency cycle among steps:";
        for (std::size_t i = 0; i < n; ++i) {
            if (!emitted[i]) {
                result.cycle_positions.push_back(static_cast<int>(i));
                note << " [" << i << "] " << steps[i].motion().name();
            }
        }
        result.cycle_note = note.str();
        return result;
    }

    result.ok = true;
    for (int position : order)
        result.ordered.push_back(steps[position]);
    return result;
}

ValidityReport validate_steps(const std::vector<FunctionalUnit> &steps,
                              const ObjectNode &goal, const Kitchen &kitchen) {
    ValidityReport report;
    Kitchen available = kitchen;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        for (const auto &input : steps[i].inputs())
            if (!node_satisfied(input, available))
                report.violations.push_back({static_cast<int>(i), input});
        for (const auto &output : steps[i].outputs())
            available.add(output);
    }
    report.goal_satisfied = node_satisfied(goal, available);
    return report;
}

ValidityReport validate_tree(const TaskTree &tree, const Kitchen &kitchen) {
    return validate_steps(tree.steps, tree.goal, kitchen);
}

namespace {

constexpr int kInfiniteDepth = std::numeric_limits<int>::max();

/*
  Least fixpoint of depth(x) = 0 if the kitchen satisfies x, else
  min over producers u of 1 + max over inputs of depth(input). This is the
  exact minimal functional-unit depth of any executable tree for x.
*/
std::unordered_map<std::string, int> min_depths(const Foon &graph,
                                                const Kitchen &kitchen) {
    std::unordered_map<std::string, int> depth;
    auto ensure = [&](const ObjectNode &node) {
        auto [it, fresh] = depth.emplace(node.identity(), kInfiniteDepth);
        if (fresh && node_satisfied(node, kitchen))
            it->second = 0;
    };
    for (const auto &unit : graph.units()) {
        for (const auto &node : unit.inputs())
            ensure(node);
        for (const auto &node : unit.outputs())
            ensure(node);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &unit : graph.units()) {
            int worst_input = 0;
            for (const auto &node : unit.inputs()) {
                int d = depth.at(node.identity());
                worst_input = std::max(worst_input, d);
                if (d == kInfiniteDepth)
                    break;
            }
            if (worst_input == kInfiniteDepth)
                continue;
            int through_unit = worst_input + 1;
            for (const auto &node : unit.outputs()) {
                int &best = depth.at(node.identity());
                if (through_unit < best) {
                    best = through_unit;
                    changed = true;
                }
            }
        }
    }
    return depth;
}

struct Enumerator {
    const Foon &graph;
    const Kitchen &kitchen;

    // All solutions for `need` within the trail budget, each an execution-
    // ordered duplicate-free index list, deduplicated by unit set.
    std::vector<std::vector<int>> solve_all(const ObjectNode &need, int limit,
                                            std::unordered_set<int> &path) {
        if (node_satisfied(need, kitchen))
            return {{}};
        if (limit == 0)
            return {};

        std::vector<std::vector<int>> solutions;
        std::unordered_set<std::string> seen_sets;
        for (int index : graph.producer_indexes(need.identity())) {
            if (path.count(index))
                continue;
            path.insert(index);
            const FunctionalUnit &unit = graph.unit(index);
            std::vector<std::vector<std::vector<int>>> per_input;
            bool dead = false;
            for (const auto &input : unit.inputs()) {
                per_input.push_back(solve_all(input, limit - 1, path));
                if (per_input.back().empty()) {
                    dead = true;
                    break;
                }
            }
            path.erase(index);
            if (dead)
                continue;
            std::vector<int> merged;
            combine(per_input, 0, merged, index, solutions, seen_sets);
        }
        return solutions;
    }

    static std::string set_key(std::vector<int> indexes) {
        std::sort(indexes.begin(), indexes.end());
        std::string key;
        for (int index : indexes) {
            key += std::to_string(index);
            key += ',';
        }
        return key;
    }

    void combine(const std::vector<std::vector<std::vector<int>>> &per_input,
                 std::size_t at, std::vector<int> &merged, int unit_index,
                 std::vector<std::vector<int>> &solutions,
                 std::unordered_set<std::string> &seen_sets) {
        if (at == per_input.size()) {
            std::vector<int> full = merged;
            full.push_back(unit_index);
            if (seen_sets.insert(set_key(full)).second)
                solutions.push_back(std::move(full));
            return;
        }
        for (const auto &choice : per_input[at]) {
            std::vector<int> saved = merged;
            append_dedup(merged, choice);
            combine(per_input, at + 1, merged, unit_index, solutions, seen_sets);
            merged = std::move(saved);
        }
    }
};

} // namespace

OracleResult oracle_min_tree(const Foon &graph, const Goal &goal,
                             const Kitchen &kitchen, int depth_bound) {
    if (depth_bound < 1)
        throw std::invalid_argument("depth_bound must be at least 1");

    OracleResult result;
    if (node_satisfied(goal.target, kitchen)) {
        result.tree = TaskTree{Algorithm::Oracle, goal.target, 0, {}};
        return result;
    }

    auto depths = min_depths(graph, kitchen);
    auto it = depths.find(goal.target.identity());
    int depth = it == depths.end() ? kInfiniteDepth : it->second;
    if (depth == kInfiniteDepth || depth > depth_bound)
        return result;

    Enumerator enumerator{graph, kitchen};
    std::unordered_set<int> path;
    auto solutions = enumerator.solve_all(goal.target, depth, path);
    if (solutions.empty())
        return result;

    auto rank = [](const std::vector<int> &steps) {
        std::vector<int> sorted = steps;
        std::sort(sorted.begin(), sorted.end());
        return sorted;
    };
    std::size_t best = 0;
    std::vector<int> best_rank = rank(solutions[0]);
    for (std::size_t i = 1; i < solutions.size(); ++i) {
        std::vector<int> r = rank(solutions[i]);
        if (solutions[i].size() < solutions[best].size() ||
            (solutions[i].size() == solutions[best].size() && r < best_rank)) {
            best = i;
            best_rank = std::move(r);
        }
    }

    result.tree = TaskTree{Algorithm::Oracle, goal.target, depth,
                           materialize(graph, solutions[best])};
    return result;
}

namespace {

CompareCell to_cell(const SearchOutcome &outcome) {
    CompareCell cell;
    cell.status = outcome.status;
    cell.step_count = outcome.tree ? outcome.tree->steps.size() : 0;
    cell.expansions = outcome.expansions;
    return cell;
}

} // namespace

CompareRow compare(const Foon &graph, const Goal &goal, const Kitchen &kitchen,
                   int max_depth) {
    CompareRow row;
    row.ids = to_cell(search_ids(graph, goal, kitchen, max_depth));
    row.h1 = to_cell(search_gbfs(graph, goal, kitchen,
                                 GbfsHeuristic::SuccessRate).outcome);
    row.h2 = to_cell(search_gbfs(graph, goal, kitchen,
                                 GbfsHeuristic::FewestInputs).outcome);
    return row;
}

} // namespace foon
