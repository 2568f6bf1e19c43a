#include "netsel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace netsel {

bool LabelSet::contains(NodeId i) const {
    return std::binary_search(positives.begin(), positives.end(), i);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) fields.push_back(field);
    if (!line.empty() && line.back() == delim) fields.emplace_back();
    return fields;
}

double parse_real(const std::string& s, std::size_t line_no, const char* what) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " + what +
                                 " '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no, const char* what) {
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " + what +
                                 " '" + s + "'");
    return v;
}

}  // namespace

EventLog load_events(const std::string& path, const LoadFormat& format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open events file: " + path);

    std::string header;
    EventLog log;
    if (!std::getline(in, header)) return log;  // empty file: empty log
    if (!header.empty() && header.back() == '\r') header.pop_back();

    char delim = format.delimiter;
    if (delim == 0) delim = header.find('\t') != std::string::npos ? '\t' : ',';

    const auto columns = split_line(header, delim);
    auto find_column = [&](const std::string& name) -> std::size_t {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == name) return c;
        throw std::runtime_error("events file " + path + ": missing column '" + name + "'");
    };
    const std::size_t node_col = find_column(format.node_column);
    const std::size_t item_col = find_column(format.item_column);
    const std::size_t value_col = find_column(format.value_column);
    const std::size_t time_col = find_column(format.timestamp_column);

    std::unordered_map<std::string, NodeId> node_ids;
    std::unordered_map<std::string, ItemId> item_ids;
    auto intern = [](auto& map, auto& names, const std::string& key) {
        auto [it, inserted] = map.emplace(key, static_cast<std::uint32_t>(names.size()));
        if (inserted) names.push_back(key);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_line(line, delim);
        const std::size_t needed = std::max({node_col, item_col, value_col, time_col}) + 1;
        if (fields.size() < needed)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected at least " +
                                     std::to_string(needed) + " fields, got " +
                                     std::to_string(fields.size()));
        Event e;
        e.node = intern(node_ids, log.node_names, fields[node_col]);
        e.item = intern(item_ids, log.item_names, fields[item_col]);
        e.value = parse_real(fields[value_col], line_no, "value");
        e.timestamp = parse_int(fields[time_col], line_no, "timestamp");
        if (!std::isfinite(e.value) || e.value < 0)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": value must be finite and non-negative");
        log.events.push_back(e);
    }
    log.node_count = log.node_names.size();
    log.item_count = log.item_names.size();
    return log;
}

std::array<EventLog, 3> temporal_split(const EventLog& log, const std::array<double, 3>& fractions) {
    if (log.events.empty()) throw std::runtime_error("temporal_split: empty event log");
    for (double f : fractions)
        if (!(f >= 0) || !std::isfinite(f))
            throw std::runtime_error("temporal_split: fractions must be non-negative");
    const double total = fractions[0] + fractions[1] + fractions[2];
    if (std::abs(total - 1.0) > 1e-9)
        throw std::runtime_error("temporal_split: fractions must sum to 1");

    std::int64_t t_min = log.events.front().timestamp;
    std::int64_t t_max = t_min;
    for (const Event& e : log.events) {
        t_min = std::min(t_min, e.timestamp);
        t_max = std::max(t_max, e.timestamp);
    }
    if (t_min == t_max && log.events.size() > 1)
        throw std::runtime_error("temporal_split: all timestamps equal, no temporal extent");

    const double span = static_cast<double>(t_max - t_min);
    // Interior boundaries are half-open; the last partition with a positive
    // fraction is closed at t_max so degenerate fractions like (1,0,0) keep
    // every event in the intended partition.
    std::array<double, 2> bounds = {static_cast<double>(t_min) + span * fractions[0],
                                    static_cast<double>(t_min) + span * (fractions[0] + fractions[1])};
    int last_positive = 2;
    while (last_positive > 0 && fractions[static_cast<std::size_t>(last_positive)] == 0.0)
        --last_positive;

    std::array<EventLog, 3> parts;
    for (auto& p : parts) {
        p.node_count = log.node_count;
        p.item_count = log.item_count;
        p.node_names = log.node_names;
        p.item_names = log.item_names;
    }
    for (const Event& e : log.events) {
        const double t = static_cast<double>(e.timestamp);
        int idx;
        if (t < bounds[0])
            idx = 0;
        else if (t < bounds[1])
            idx = 1;
        else
            idx = 2;
        if (idx > last_positive) idx = last_positive;
        parts[static_cast<std::size_t>(idx)].events.push_back(e);
    }
    return parts;
}

AttributeMatrix build_attributes(const EventLog& log) {
    AttributeMatrix A;
    A.item_count = log.item_count;
    A.rows.resize(log.node_count);
    std::vector<std::unordered_map<ItemId, double>> acc(log.node_count);
    for (const Event& e : log.events) acc[e.node][e.item] += e.value;
    for (std::size_t i = 0; i < log.node_count; ++i) {
        SparseRow& row = A.rows[i];
        row.reserve(acc[i].size());
        for (const auto& [item, value] : acc[i]) row.push_back({item, value});
        std::sort(row.begin(), row.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.item < b.item; });
    }
    return A;
}

std::vector<LabelSet> build_labels(const EventLog& log, const ItemGroups& groups,
                                   double value_threshold, std::size_t item_threshold) {
    if (groups.empty()) throw std::runtime_error("build_labels: no item groups");
    const AttributeMatrix A = build_attributes(log);
    std::vector<LabelSet> out;
    out.reserve(groups.size());
    for (const auto& [name, items] : groups) {
        std::vector<ItemId> sorted_items = items;
        std::sort(sorted_items.begin(), sorted_items.end());
        LabelSet ls;
        ls.name = name;
        for (NodeId i = 0; i < A.node_count(); ++i) {
            std::size_t qualifying = 0;
            for (const SparseEntry& e : A.rows[i]) {
                if (e.value >= value_threshold &&
                    std::binary_search(sorted_items.begin(), sorted_items.end(), e.item))
                    ++qualifying;
            }
            if (qualifying >= item_threshold) ls.positives.push_back(i);
        }
        out.push_back(std::move(ls));
    }
    return out;
}

ItemGroups load_item_groups(const std::string& path, const EventLog& log, std::size_t* dropped) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open item-group file: " + path);
    std::unordered_map<std::string, ItemId> item_ids;
    for (std::size_t j = 0; j < log.item_names.size(); ++j)
        item_ids.emplace(log.item_names[j], static_cast<ItemId>(j));

    ItemGroups groups;
    std::size_t unknown = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "group,item") continue;
        const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
        const auto fields = split_line(line, delim);
        if (fields.size() != 2)
            throw std::runtime_error("item-group line " + std::to_string(line_no) +
                                     ": expected `group,item`");
        auto it = item_ids.find(fields[1]);
        if (it == item_ids.end()) {
            ++unknown;
            continue;
        }
        groups[fields[0]].push_back(it->second);
    }
    if (dropped) *dropped = unknown;
    return groups;
}

ItemGroups limit_group_items(const ItemGroups& groups, const EventLog& log, std::size_t limit) {
    if (limit == 0) return groups;
    std::vector<double> totals(log.item_count, 0.0);
    for (const Event& e : log.events) totals[e.item] += e.value;
    ItemGroups out;
    for (const auto& [name, items] : groups) {
        std::vector<ItemId> kept = items;
        std::sort(kept.begin(), kept.end(), [&](ItemId a, ItemId b) {
            if (totals[a] != totals[b]) return totals[a] > totals[b];
            return a < b;
        });
        if (kept.size() > limit) kept.resize(limit);
        std::sort(kept.begin(), kept.end());
        out.emplace(name, std::move(kept));
    }
    return out;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.community_count == 0 || spec.community_count > spec.node_count)
        throw std::runtime_error("generate_synthetic: need 1 <= communities <= nodes");
    if (!(spec.intra_affinity > 0.0) || spec.intra_affinity > 1.0)
        throw std::runtime_error("generate_synthetic: intra_affinity must be in (0,1]");
    if (spec.label_noise < 0.0 || spec.label_noise >= 1.0)
        throw std::runtime_error("generate_synthetic: label_noise must be in [0,1)");

    const std::size_t n = spec.node_count;
    const std::size_t c = spec.community_count;
    const std::size_t block = spec.items_per_community;
    const std::size_t item_count = c * block;

    Dataset ds;
    ds.node_count = n;
    for (std::size_t part = 0; part < 3; ++part) {
        AttributeMatrix A;
        A.item_count = item_count;
        A.rows.resize(n);
        for (NodeId i = 0; i < n; ++i) {
            Rng rng(derive_seed(spec.seed, std::uint64_t{part}, std::uint64_t{i}, "attrs"));
            const std::size_t comm = synthetic_community(i, c);
            std::unordered_map<ItemId, double> acc;
            // anchor keeps same-community supports overlapping
            acc[static_cast<ItemId>(comm * block)] += 1.0 + static_cast<double>(rng.below(5));
            for (std::size_t d = 0; d < spec.events_per_node; ++d) {
                ItemId item;
                if (rng.bernoulli(spec.intra_affinity)) {
                    // head-heavy draw inside the signature block
                    const double u = rng.real();
                    item = static_cast<ItemId>(comm * block +
                                               static_cast<std::size_t>(u * u * static_cast<double>(block)));
                } else {
                    std::size_t pick = static_cast<std::size_t>(rng.below(item_count - block));
                    if (pick >= comm * block) pick += block;
                    item = static_cast<ItemId>(pick);
                }
                acc[item] += 1.0 + static_cast<double>(rng.below(5));
            }
            SparseRow& row = A.rows[i];
            row.reserve(acc.size());
            for (const auto& [item, value] : acc) row.push_back({item, value});
            std::sort(row.begin(), row.end(),
                      [](const SparseEntry& a, const SparseEntry& b) { return a.item < b.item; });
        }
        ds.partitions[part] = std::move(A);

        std::vector<LabelSet> labels;
        labels.reserve(c);
        for (std::size_t g = 0; g < c; ++g) {
            LabelSet ls;
            ls.name = "community_" + std::to_string(g);
            for (NodeId i = 0; i < n; ++i) {
                Rng rng(derive_seed(spec.seed, std::uint64_t{part}, std::uint64_t{g},
                                    std::uint64_t{i}, "label"));
                bool member = synthetic_community(i, c) == g;
                if (spec.label_noise > 0.0 && rng.bernoulli(spec.label_noise)) member = !member;
                if (member) ls.positives.push_back(i);
            }
            labels.push_back(std::move(ls));
        }
        ds.labels[part] = std::move(labels);
    }
    return ds;
}

}  // namespace netsel
