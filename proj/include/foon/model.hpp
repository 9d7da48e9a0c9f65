#ifndef FOON_MODEL_HPP
#define FOON_MODEL_HPP

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace foon {

// Label hygiene applied to every name in the network: annotation sources are
// inconsistent, so all comparisons run on trimmed, lowercased labels.
std::string normalize_label(std::string_view raw);

/*
  An object in the environment: a name plus the set of states it is in and,
  for containers, the set of ingredients it holds. Canonical form (lowercased
  name, sorted unique states/ingredients) is fixed at construction; two nodes
  are the same object iff their canonical triples match.
*/
class ObjectNode {
public:
    explicit ObjectNode(std::string name, std::vector<std::string> states = {},
                        std::vector<std::string> ingredients = {});

    const std::string &name() const { return name_; }
    const std::vector<std::string> &states() const { return states_; }
    const std::vector<std::string> &ingredients() const { return ingredients_; }

    // Canonical identity key; equal keys <=> equal nodes.
    const std::string &identity() const { return identity_; }

    // Human-readable form, e.g. `water (liquid)` or `bowl (empty) {tomato}`.
    std::string display() const;

    bool operator==(const ObjectNode &other) const {
        return identity_ == other.identity_;
    }
    bool operator!=(const ObjectNode &other) const { return !(*this == other); }

private:
    std::string name_;
    std::vector<std::string> states_;
    std::vector<std::string> ingredients_;
    std::string identity_;
};

inline const std::string &canonical_identity(const ObjectNode &node) {
    return node.identity();
}

// A manipulation action with a success rate in [0, 1]. Identity for
// deduplication purposes is the name alone; rates of merged duplicates are
// averaged by the graph builder.
class MotionNode {
public:
    explicit MotionNode(std::string name, double success_rate = 1.0);

    const std::string &name() const { return name_; }
    double success_rate() const { return success_rate_; }

private:
    std::string name_;
    double success_rate_;
};

/*
  The atomic knowledge element: input object nodes, one motion, output object
  nodes. Inputs/outputs stay in their annotated order for serialization, but
  all equality logic treats them as identity sets.
*/
class FunctionalUnit {
public:
    FunctionalUnit(std::vector<ObjectNode> inputs, MotionNode motion,
                   std::vector<ObjectNode> outputs);

    const std::vector<ObjectNode> &inputs() const { return inputs_; }
    const MotionNode &motion() const { return motion_; }
    const std::vector<ObjectNode> &outputs() const { return outputs_; }

    // Position within the owning graph; -1 until a graph assigns it.
    int source_index() const { return source_index_; }
    void set_source_index(int index) { source_index_ = index; }

    // Key combining sorted input identities, motion name and sorted output
    // identities. Equal keys <=> unit_equals.
    const std::string &key() const { return key_; }

    bool has_output(const std::string &identity) const;
    bool has_input(const std::string &identity) const;

private:
    std::vector<ObjectNode> inputs_;
    MotionNode motion_;
    std::vector<ObjectNode> outputs_;
    int source_index_ = -1;
    std::string key_;
};

// True iff input identity sets, output identity sets and motion names all
// match. Success rates and source indexes are ignored.
bool unit_equals(const FunctionalUnit &a, const FunctionalUnit &b);

// The set of object nodes available in the environment, deduplicated by
// canonical identity.
class Kitchen {
public:
    Kitchen() = default;
    explicit Kitchen(const std::vector<ObjectNode> &items);

    // No-op if an identical item is already present.
    void add(const ObjectNode &item);

    bool contains(const ObjectNode &node) const;
    bool contains_identity(const std::string &identity) const;

    const std::vector<ObjectNode> &items() const { return items_; }
    std::size_t size() const { return items_.size(); }

private:
    std::vector<ObjectNode> items_;
    std::unordered_set<std::string> identities_;
};

// A goal is any object node; it need not exist in the graph (that is a
// search failure, not a type error).
struct Goal {
    ObjectNode target;
};

inline bool node_satisfied(const ObjectNode &node, const Kitchen &kitchen) {
    return kitchen.contains_identity(node.identity());
}

} // namespace foon

#endif
