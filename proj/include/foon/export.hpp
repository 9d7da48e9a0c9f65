#ifndef FOON_EXPORT_HPP
#define FOON_EXPORT_HPP

#include <string>
#include <vector>

#include "foon/model.hpp"
#include "foon/retrieval.hpp"

namespace foon {

/*
  DOT rendering of the bipartite structure: one ellipse per distinct object
  identity, one box per unit's motion (motions are per-unit actions, so they
  are never shared), edges input -> motion -> output. Output is byte-stable
  for equal unit lists.
*/
std::string to_dot(const std::vector<FunctionalUnit> &units);

// Machine-readable form of a unit list; schema documented in
// docs/formats.md, "version" pinned to 1.
std::string units_to_json(const std::vector<FunctionalUnit> &units);

// Task tree as JSON: algorithm, goal, discovered_depth, ordered steps.
// tree_from_json inverts it exactly; throws std::invalid_argument on
// documents that do not match the schema.
std::string tree_to_json(const TaskTree &tree);
TaskTree tree_from_json(const std::string &text);

} // namespace foon

#endif
