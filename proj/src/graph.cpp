#include "foon/graph.hpp"

#include <unordered_set>

namespace foon {

Foon Foon::build(std::vector<FunctionalUnit> units) {
    Foon graph;
    std::unordered_map<std::string, int> survivor_by_key;
    std::vector<double> rate_sums;
    std::vector<int> rate_counts;

    for (auto &unit : units) {
        auto it = survivor_by_key.find(unit.key());
        if (it == survivor_by_key.end()) {
            int index = static_cast<int>(graph.units_.size());
            survivor_by_key.emplace(unit.key(), index);
            rate_sums.push_back(unit.motion().success_rate());
            rate_counts.push_back(1);
            graph.units_.push_back(std::move(unit));
        } else {
            rate_sums[it->second] += unit.motion().success_rate();
            rate_counts[it->second] += 1;
        }
    }

    for (std::size_t i = 0; i < graph.units_.size(); ++i) {
        FunctionalUnit &unit = graph.units_[i];
        if (rate_counts[i] > 1) {
            double mean = rate_sums[i] / rate_counts[i];
            unit = FunctionalUnit(unit.inputs(),
                                  MotionNode(unit.motion().name(), mean),
                                  unit.outputs());
        }
        unit.set_source_index(static_cast<int>(i));

        std::unordered_set<std::string> seen;
        for (const auto &node : unit.outputs())
            if (seen.insert(node.identity()).second)
                graph.producers_[node.identity()].push_back(static_cast<int>(i));
        seen.clear();
        for (const auto &node : unit.inputs())
            if (seen.insert(node.identity()).second)
                graph.consumers_[node.identity()].push_back(static_cast<int>(i));
    }
    return graph;
}

const std::vector<int> &Foon::producer_indexes(const std::string &identity) const {
    static const std::vector<int> empty;
    auto it = producers_.find(identity);
    return it == producers_.end() ? empty : it->second;
}

const std::vector<int> &Foon::consumer_indexes(const std::string &identity) const {
    static const std::vector<int> empty;
    auto it = consumers_.find(identity);
    return it == consumers_.end() ? empty : it->second;
}

std::vector<FunctionalUnit> Foon::producers_of(const ObjectNode &node) const {
    std::vector<FunctionalUnit> result;
    for (int index : producer_indexes(node.identity()))
        result.push_back(units_[index]);
    return result;
}

GraphStats Foon::stats() const {
    GraphStats stats;
    stats.unit_count = units_.size();
    std::unordered_set<std::string> objects;
    std::unordered_set<std::string> motions;
    for (const auto &unit : units_) {
        for (const auto &node : unit.inputs())
            objects.insert(node.identity());
        for (const auto &node : unit.outputs())
            objects.insert(node.identity());
        motions.insert(unit.motion().name());
    }
    stats.object_node_count = objects.size();
    stats.motion_node_count = motions.size();
    return stats;
}

Foon merge(const Foon &a, const Foon &b) {
    std::vector<FunctionalUnit> combined;
    combined.reserve(a.unit_count() + b.unit_count());
    combined.insert(combined.end(), a.units().begin(), a.units().end());
    combined.insert(combined.end(), b.units().begin(), b.units().end());
    return Foon::build(std::move(combined));
}

} // namespace foon
