#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netsel/common.hpp"
#include "netsel/graph.hpp"

namespace netsel {

struct Event {
    NodeId node;
    ItemId item;
    double value;
    std::int64_t timestamp;
};

// Timestamped (node, item, value) activity with dense 0-based ids. The
// original-id spellings are kept for report sidecars.
struct EventLog {
    std::vector<Event> events;
    std::size_t node_count = 0;
    std::size_t item_count = 0;
    std::vector<std::string> node_names;
    std::vector<std::string> item_names;
};

struct SparseEntry {
    ItemId item;
    double value;
};

using SparseRow = std::vector<SparseEntry>;  // item ids strictly increasing

struct AttributeMatrix {
    std::vector<SparseRow> rows;
    std::size_t item_count = 0;

    std::size_t node_count() const { return rows.size(); }
    std::size_t nnz(NodeId i) const { return rows[i].size(); }
};

struct LabelSet {
    std::string name;
    std::vector<NodeId> positives;  // sorted unique

    bool contains(NodeId i) const;
};

// Three temporally contiguous partitions: validation (earliest), training
// (middle), testing (latest). Label sets are computed per partition.
struct Dataset {
    std::array<AttributeMatrix, 3> partitions;
    std::array<std::vector<LabelSet>, 3> labels;
    std::optional<EdgeSet> explicit_edges;
    std::size_t node_count = 0;

    static constexpr std::size_t kValidation = 0;
    static constexpr std::size_t kTraining = 1;
    static constexpr std::size_t kTesting = 2;
};

struct LoadFormat {
    std::string node_column = "node";
    std::string item_column = "item";
    std::string value_column = "value";
    std::string timestamp_column = "timestamp";
    char delimiter = 0;  // 0 = auto-detect comma or tab from the header
};

EventLog load_events(const std::string& path, const LoadFormat& format = {});

std::array<EventLog, 3> temporal_split(const EventLog& log, const std::array<double, 3>& fractions);

AttributeMatrix build_attributes(const EventLog& log);

using ItemGroups = std::map<std::string, std::vector<ItemId>>;

std::vector<LabelSet> build_labels(const EventLog& log, const ItemGroups& groups,
                                   double value_threshold = 5.0, std::size_t item_threshold = 5);

// Parses `group,item` pairs, mapping original item ids through the log's
// item-name table. Unknown items are dropped (counted in *dropped if given).
ItemGroups load_item_groups(const std::string& path, const EventLog& log,
                            std::size_t* dropped = nullptr);

// Keeps only each group's top `limit` items by total value in the log.
ItemGroups limit_group_items(const ItemGroups& groups, const EventLog& log, std::size_t limit);

struct SyntheticSpec {
    std::size_t node_count = 600;
    std::size_t community_count = 6;
    double intra_affinity = 0.9;
    double label_noise = 0.05;
    std::uint64_t seed = 1;
    std::size_t items_per_community = 50;
    std::size_t events_per_node = 40;
};

// Planted-community fixture: disjoint per-community item blocks, one label
// set per community (membership with flips at label_noise), one anchor item
// per node so same-community rows always share support.
Dataset generate_synthetic(const SyntheticSpec& spec);

// Community of node i under the synthetic assignment rule.
inline std::size_t synthetic_community(NodeId i, std::size_t community_count) {
    return i % community_count;
}

}  // namespace netsel
