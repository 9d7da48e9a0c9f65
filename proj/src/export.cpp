#include "foon/export.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "foon/parser.hpp"

namespace foon {

namespace {

std::string dot_escape(const std::string &text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

// Printable, identity-derived node id: field separators become '|' and ','.
std::string dot_object_id(const ObjectNode &node) {
    std::string id = "o:";
    for (char c : node.identity()) {
        if (c == '\x1f')
            id += '|';
        else if (c == '\x1e')
            id += ',';
        else
            id += c;
    }
    return id;
}

} // namespace

std::string to_dot(const std::vector<FunctionalUnit> &units) {
    std::ostringstream out;
    out << "digraph foon {\n";
    if (!units.empty())
        out << "  rankdir=LR;\n";

    std::unordered_set<std::string> declared;
    auto declare = [&](const ObjectNode &node) {
        if (!declared.insert(node.identity()).second)
            return;
        out << "  \"" << dot_escape(dot_object_id(node))
            << "\" [shape=ellipse, label=\"" << dot_escape(node.display())
            << "\"];\n";
    };
    for (const auto &unit : units) {
        for (const auto &node : unit.inputs())
            declare(node);
        for (const auto &node : unit.outputs())
            declare(node);
    }

    for (std::size_t i = 0; i < units.size(); ++i) {
        const FunctionalUnit &unit = units[i];
        std::string motion_id = "m:" + std::to_string(i);
        out << "  \"" << motion_id << "\" [shape=box, label=\""
            << dot_escape(unit.motion().name()) << " ("
            << format_rate(unit.motion().success_rate()) << ")\"];\n";
        for (const auto &node : unit.inputs())
            out << "  \"" << dot_escape(dot_object_id(node)) << "\" -> \""
                << motion_id << "\";\n";
        for (const auto &node : unit.outputs())
            out << "  \"" << motion_id << "\" -> \""
                << dot_escape(dot_object_id(node)) << "\";\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

using json = nlohmann::ordered_json;

json object_to_json(const ObjectNode &node) {
    return json{{"name", node.name()},
                {"states", node.states()},
                {"ingredients", node.ingredients()}};
}

json unit_to_json(const FunctionalUnit &unit) {
    json inputs = json::array();
    for (const auto &node : unit.inputs())
        inputs.push_back(object_to_json(node));
    json outputs = json::array();
    for (const auto &node : unit.outputs())
        outputs.push_back(object_to_json(node));
    return json{{"inputs", std::move(inputs)},
                {"motion", json{{"name", unit.motion().name()},
                                {"rate", unit.motion().success_rate()}}},
                {"outputs", std::move(outputs)}};
}

ObjectNode object_from_json(const json &value) {
    return ObjectNode(value.at("name").get<std::string>(),
                      value.at("states").get<std::vector<std::string>>(),
                      value.at("ingredients").get<std::vector<std::string>>());
}

FunctionalUnit unit_from_json(const json &value) {
    std::vector<ObjectNode> inputs;
    for (const auto &node : value.at("inputs"))
        inputs.push_back(object_from_json(node));
    std::vector<ObjectNode> outputs;
    for (const auto &node : value.at("outputs"))
        outputs.push_back(object_from_json(node));
    const json &motion = value.at("motion");
    return FunctionalUnit(std::move(inputs),
                          MotionNode(motion.at("name").get<std::string>(),
                                     motion.at("rate").get<double>()),
                          std::move(outputs));
}

Algorithm algorithm_from_name(const std::string &name) {
    for (Algorithm a : {Algorithm::Ids, Algorithm::GbfsH1, Algorithm::GbfsH2,
                        Algorithm::Oracle})
        if (name == algorithm_name(a))
            return a;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

} // namespace

std::string units_to_json(const std::vector<FunctionalUnit> &units) {
    json doc;
    doc["version"] = 1;
    json list = json::array();
    for (const auto &unit : units)
        list.push_back(unit_to_json(unit));
    doc["units"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string tree_to_json(const TaskTree &tree) {
    json doc;
    doc["version"] = 1;
    doc["algorithm"] = algorithm_name(tree.algorithm);
    doc["goal"] = object_to_json(tree.goal);
    doc["discovered_depth"] = tree.discovered_depth;
    json steps = json::array();
    for (const auto &step : tree.steps)
        steps.push_back(unit_to_json(step));
    doc["steps"] = std::move(steps);
    return doc.dump(2) + "\n";
}

TaskTree tree_from_json(const std::string &text) {
    try {
        json doc = json::parse(text);
        if (doc.at("version").get<int>() != 1)
            throw std::invalid_argument("unsupported task tree schema version");
        TaskTree tree{algorithm_from_name(doc.at("algorithm").get<std::string>()),
                      object_from_json(doc.at("goal")),
                      doc.at("discovered_depth").get<int>(),
                      {}};
        for (const auto &step : doc.at("steps"))
            tree.steps.push_back(unit_from_json(step));
        return tree;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed task tree JSON: ") +
                                    e.what());
    }
}

} // namespace foon
