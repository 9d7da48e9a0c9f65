#include "foon/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace foon {

namespace {

// Field/element separators for identity keys. Control characters cannot
// appear in labels (the file grammar is tab-separated single lines).
constexpr char kFieldSep = '\x1f';
constexpr char kElemSep = '\x1e';

std::vector<std::string> normalize_set(std::vector<std::string> labels,
                                       const char *what) {
    for (auto &label : labels) {
        label = normalize_label(label);
        if (label.empty())
            throw std::invalid_argument(std::string(what) + " label is empty");
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

void append_joined(std::string &out, const std::vector<std::string> &items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            out += kElemSep;
        out += items[i];
    }
}

} // namespace

std::string normalize_label(std::string_view raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1])))
        --end;
    std::string result(raw.substr(begin, end - begin));
    std::transform(result.begin(), result.end(), result.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return result;
}

ObjectNode::ObjectNode(std::string name, std::vector<std::string> states,
                       std::vector<std::string> ingredients)
    : name_(normalize_label(name)),
      states_(normalize_set(std::move(states), "state")),
      ingredients_(normalize_set(std::move(ingredients), "ingredient")) {
    if (name_.empty())
        throw std::invalid_argument("object node name is empty");
    identity_ = name_;
    identity_ += kFieldSep;
    append_joined(identity_, states_);
    identity_ += kFieldSep;
    append_joined(identity_, ingredients_);
}

std::string ObjectNode::display() const {
    std::ostringstream out;
    out << name_;
    if (!states_.empty()) {
        out << " (";
        for (std::size_t i = 0; i < states_.size(); ++i)
            out << (i > 0 ? ", " : "") << states_[i];
        out << ")";
    }
    if (!ingredients_.empty()) {
        out << " {";
        for (std::size_t i = 0; i < ingredients_.size(); ++i)
            out << (i > 0 ? ", " : "") << ingredients_[i];
        out << "}";
    }
    return out.str();
}

MotionNode::MotionNode(std::string name, double success_rate)
    : name_(normalize_label(name)), success_rate_(success_rate) {
    if (name_.empty())
        throw std::invalid_argument("motion node name is empty");
    if (!(success_rate_ >= 0.0 && success_rate_ <= 1.0))
        throw std::invalid_argument("motion success rate outside [0, 1]");
}

namespace {

std::vector<std::string> identity_set(const std::vector<ObjectNode> &nodes,
                                      const char *side) {
    std::vector<std::string> ids;
    ids.reserve(nodes.size());
    for (const auto &node : nodes)
        ids.push_back(node.identity());
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::invalid_argument(std::string("duplicate ") + side +
                                    " object in functional unit");
    return ids;
}

} // namespace

FunctionalUnit::FunctionalUnit(std::vector<ObjectNode> inputs, MotionNode motion,
                               std::vector<ObjectNode> outputs)
    : inputs_(std::move(inputs)), motion_(std::move(motion)),
      outputs_(std::move(outputs)) {
    if (inputs_.empty())
        throw std::invalid_argument("functional unit has no inputs");
    if (outputs_.empty())
        throw std::invalid_argument("functional unit has no outputs");
    auto input_ids = identity_set(inputs_, "input");
    auto output_ids = identity_set(outputs_, "output");
    key_.clear();
    append_joined(key_, input_ids);
    key_ += '\x1d';
    key_ += motion_.name();
    key_ += '\x1d';
    append_joined(key_, output_ids);
}

bool FunctionalUnit::has_output(const std::string &identity) const {
    return std::any_of(outputs_.begin(), outputs_.end(), [&](const ObjectNode &n) {
        return n.identity() == identity;
    });
}

bool FunctionalUnit::has_input(const std::string &identity) const {
    return std::any_of(inputs_.begin(), inputs_.end(), [&](const ObjectNode &n) {
        return n.identity() == identity;
    });
}

bool unit_equals(const FunctionalUnit &a, const FunctionalUnit &b) {
    return a.key() == b.key();
}

Kitchen::Kitchen(const std::vector<ObjectNode> &items) {
    for (const auto &item : items)
        add(item);
}

void Kitchen::add(const ObjectNode &item) {
    if (identities_.insert(item.identity()).second)
        items_.push_back(item);
}

bool Kitchen::contains(const ObjectNode &node) const {
    return contains_identity(node.identity());
}

bool Kitchen::contains_identity(const std::string &identity) const {
    return identities_.count(identity) > 0;
}

} // namespace foon
