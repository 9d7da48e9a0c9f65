#ifndef FOON_RETRIEVAL_HPP
#define FOON_RETRIEVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "foon/graph.hpp"
#include "foon/model.hpp"

namespace foon {

enum class Algorithm { Ids, GbfsH1, GbfsH2, Oracle };

const char *algorithm_name(Algorithm algorithm);

/*
  An executable plan: functional units in execution order. Every input of
  steps[i] is satisfied by the kitchen plus the outputs of steps[0..i-1],
  and the goal appears in the kitchen (empty tree) or in some step's outputs.
  discovered_depth is meaningful for IDS and the oracle; 0 when the goal is
  already in the kitchen.
*/
struct TaskTree {
    Algorithm algorithm = Algorithm::Ids;
    ObjectNode goal;
    int discovered_depth = 0;
    std::vector<FunctionalUnit> steps;
};

enum class SearchStatus { FoundTree, DepthExhausted, Unsolvable };

/*
  Search result plus deterministic work counters:
    expansions   - candidate-unit evaluations (every producer scored or
                   attempted, across all IDS iterations);
    visited      - distinct object identities resolved conclusively, i.e.
                   satisfied from the kitchen or expanded through at least
                   one candidate;
    kitchen_hits - distinct identities satisfied directly by the kitchen.
  expansions >= visited - kitchen_hits always holds.
*/
struct SearchOutcome {
    SearchStatus status = SearchStatus::Unsolvable;
    std::optional<TaskTree> tree;
    long expansions = 0;
    long visited = 0;
    long kitchen_hits = 0;
    std::string note; // unsolvable reason or cycle diagnostic

    bool found() const { return status == SearchStatus::FoundTree; }
};

// One greedy choice: the needed identity, every candidate considered with
// its heuristic value, and the winner.
struct ExpansionRecord {
    std::string needed_identity;
    std::string needed_display;
    std::vector<int> candidate_indexes; // source indexes, file order
    std::vector<double> scores;         // heuristic value per candidate
    int chosen_index = -1;
};

struct ExpansionTrace {
    std::vector<ExpansionRecord> records;
};

// Heuristic 1: motion success rate, higher is better.
double h1_score(const FunctionalUnit &unit);

// Heuristic 2: number of input nodes, lower is better.
std::size_t h2_score(const FunctionalUnit &unit);

struct DfsResult {
    bool success = false;
    // On failure: true if some branch died on the depth limit, so a deeper
    // search could still succeed. False means the space below is exhausted.
    bool cutoff = false;
    std::vector<int> step_indexes; // unit indexes, execution order
};

/*
  Depth-limited backward chaining from `need`. Producers are tried in file
  order and the first fully-executable trail wins; inputs resolve left to
  right with limit - 1. Units repeated within one tree are kept at their
  earliest position, and a unit never recurses through itself.
*/
DfsResult dfs_limited(const Foon &graph, const ObjectNode &need,
                      const Kitchen &kitchen, int limit);

/*
  Iterative deepening: depth limits 0, 1, ..., max_depth, returning the first
  success. Depth counts functional-unit levels (the goal's producing unit is
  level 1; a goal already in the kitchen solves at level 0). A level that
  fails without ever touching its depth limit proves unsolvability.
  Throws std::invalid_argument if max_depth < 1.
*/
SearchOutcome search_ids(const Foon &graph, const Goal &goal,
                         const Kitchen &kitchen, int max_depth);

enum class GbfsHeuristic { SuccessRate, FewestInputs };

struct GbfsResult {
    SearchOutcome outcome;
    ExpansionTrace trace;
};

/*
  Greedy best-first retrieval: pop a needed node from a FIFO queue; if the
  kitchen does not satisfy it, score all of its producers, keep the best
  (strict comparison, so ties keep the earliest file position), and enqueue
  that unit's unvisited inputs. The collected list is reversed and then
  topologically ordered, since reversed discovery order alone is not
  guaranteed executable. A needed node with no producers makes the goal
  unsolvable for this strategy; so does a dependency cycle among the chosen
  units.
*/
GbfsResult search_gbfs(const Foon &graph, const Goal &goal,
                       const Kitchen &kitchen, GbfsHeuristic heuristic);

struct TopoResult {
    bool ok = false;
    std::vector<FunctionalUnit> ordered;
    std::vector<int> cycle_positions; // positions in the input list
    std::string cycle_note;
};

// Stable topological sort of "u precedes v if some output of u is an input
// of v not satisfied by the kitchen". Among units not ordered by that
// relation, earlier input positions stay earlier.
TopoResult topological_order(const std::vector<FunctionalUnit> &steps,
                             const Kitchen &kitchen);

struct InputViolation {
    int step_index = 0;
    ObjectNode input;
};

struct ValidityReport {
    bool goal_satisfied = false;
    std::vector<InputViolation> violations;

    bool valid() const { return goal_satisfied && violations.empty(); }
};

// Simulates execution: start from the kitchen, run each step after checking
// its inputs, add its outputs, and finally check the goal.
ValidityReport validate_steps(const std::vector<FunctionalUnit> &steps,
                              const ObjectNode &goal, const Kitchen &kitchen);
ValidityReport validate_tree(const TaskTree &tree, const Kitchen &kitchen);

struct OracleResult {
    std::optional<TaskTree> tree; // empty means unsolvable within the bound

    bool found() const { return tree.has_value(); }
};

/*
  Exhaustive enumeration of every producer choice up to depth_bound,
  returning a valid tree that minimizes depth, then step count, then the
  sorted list of unit indexes. Exact but exponential; intended for small
  graphs (around 30 units) and for checking the real searches.
*/
OracleResult oracle_min_tree(const Foon &graph, const Goal &goal,
                             const Kitchen &kitchen, int depth_bound);

struct CompareCell {
    SearchStatus status = SearchStatus::Unsolvable;
    std::size_t step_count = 0; // valid when status == FoundTree
    long expansions = 0;
};

struct CompareRow {
    CompareCell ids;
    CompareCell h1;
    CompareCell h2;
};

// Runs all three strategies on the same query; per-strategy failures land in
// the row instead of aborting.
CompareRow compare(const Foon &graph, const Goal &goal, const Kitchen &kitchen,
                   int max_depth);

} // namespace foon

#endif
