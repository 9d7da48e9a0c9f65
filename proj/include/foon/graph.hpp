#ifndef FOON_GRAPH_HPP
#define FOON_GRAPH_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "foon/model.hpp"

namespace foon {

struct GraphStats {
    std::size_t unit_count = 0;
    std::size_t object_node_count = 0; // distinct identities
    std::size_t motion_node_count = 0; // distinct motion names

    bool operator==(const GraphStats &) const = default;
};

/*
  A deduplicated set of functional units plus producer/consumer indexes.
  "Universal" when built from the concatenation of many subgraph files.
  Immutable after build; any number of searches may read it concurrently.
*/
class Foon {
public:
    Foon() = default;

    // The first occurrence of each equivalence class (unit_equals) survives
    // and takes the arithmetic mean of all duplicates' success rates.
    // Source indexes are assigned by surviving position.
    static Foon build(std::vector<FunctionalUnit> units);

    const std::vector<FunctionalUnit> &units() const { return units_; }
    const FunctionalUnit &unit(int index) const { return units_.at(index); }
    std::size_t unit_count() const { return units_.size(); }

    // Indexes of units producing / consuming the identity, ascending.
    const std::vector<int> &producer_indexes(const std::string &identity) const;
    const std::vector<int> &consumer_indexes(const std::string &identity) const;

    // Units whose outputs contain the node's identity, in file order.
    std::vector<FunctionalUnit> producers_of(const ObjectNode &node) const;

    GraphStats stats() const;

private:
    std::vector<FunctionalUnit> units_;
    std::unordered_map<std::string, std::vector<int>> producers_;
    std::unordered_map<std::string, std::vector<int>> consumers_;
};

inline Foon build_graph(std::vector<FunctionalUnit> units) {
    return Foon::build(std::move(units));
}

// Union of the two unit sets with duplicates removed; equivalent to
// build_graph(a.units ++ b.units).
Foon merge(const Foon &a, const Foon &b);

} // namespace foon

#endif
