#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bipinf/errors.hpp"

namespace bipinf {

/// The two node sets of a two-mode network. Mode A is the "actor" side
/// (left column of input files), mode B the "event" side.
enum class Mode : std::uint8_t { A = 0, B = 1 };

inline constexpr Mode opposite(Mode m) {
    return m == Mode::A ? Mode::B : Mode::A;
}

inline constexpr const char* mode_name(Mode m) {
    return m == Mode::A ? "a" : "b";
}

/// Index of a node within its mode, in first-appearance order.
using NodeIndex = std::uint32_t;

/// A node reference that is unique across the whole graph. The same label
/// may appear in both modes and denotes two distinct nodes.
struct NodeId {
    std::string label;
    Mode mode;

    friend bool operator==(const NodeId&, const NodeId&) = default;
    friend auto operator<=>(const NodeId& lhs, const NodeId& rhs) {
        if (auto c = lhs.mode <=> rhs.mode; c != 0) return c;
        return lhs.label <=> rhs.label;
    }
};

/// Undirected two-mode graph. Nodes are labeled strings; every edge joins a
/// mode-A node to a mode-B node, so self-loops and same-mode edges cannot be
/// represented. Node order is first appearance in the input, which makes all
/// downstream reports deterministic for a fixed input file.
///
/// Immutable after construction; all accessors are safe for concurrent use.
class BipartiteGraph {
public:
    /// Builds a graph from labeled (a, b) pairs. Duplicate edges are dropped
    /// with a note appended to `warnings` (when given). Throws input_error on
    /// an empty edge list.
    static BipartiteGraph from_edge_list(
        const std::vector<std::pair<std::string, std::string>>& edges,
        std::vector<std::string>* warnings = nullptr) {
        if (edges.empty()) throw input_error("empty graph");
        BipartiteGraph g;
        for (const auto& [la, lb] : edges) {
            NodeIndex a = g.intern(Mode::A, la);
            NodeIndex b = g.intern(Mode::B, lb);
            if (!g.insert_edge(a, b) && warnings)
                warnings->push_back("duplicate edge (" + la + ", " + lb + ") ignored");
        }
        g.sort_adjacency();
        return g;
    }

    /// Builds a graph from explicit node tables plus index edges. Used where
    /// isolated nodes must survive (node removal). Labels must be unique per
    /// mode; edges must be duplicate-free.
    static BipartiteGraph from_parts(std::vector<std::string> labels_a,
                                     std::vector<std::string> labels_b,
                                     const std::vector<std::pair<NodeIndex, NodeIndex>>& edges) {
        BipartiteGraph g;
        for (auto& l : labels_a) g.intern(Mode::A, l);
        for (auto& l : labels_b) g.intern(Mode::B, l);
        if (g.labels_[0].size() != labels_a.size() || g.labels_[1].size() != labels_b.size())
            throw internal_error("duplicate node label in node table");
        for (auto [a, b] : edges) {
            if (a >= g.labels_[0].size() || b >= g.labels_[1].size())
                throw internal_error("edge endpoint out of range");
            if (!g.insert_edge(a, b)) throw internal_error("duplicate edge in edge table");
        }
        g.sort_adjacency();
        return g;
    }

    std::size_t node_count(Mode m) const { return labels_[side(m)].size(); }

    /// |A| + |B|, the total number of members of the network.
    std::size_t total_nodes() const { return labels_[0].size() + labels_[1].size(); }

    std::size_t edge_count() const { return edge_count_; }

    /// Labels of one mode in first-appearance order.
    const std::vector<std::string>& labels(Mode m) const { return labels_[side(m)]; }

    const std::string& label(Mode m, NodeIndex i) const { return labels_[side(m)].at(i); }

    std::optional<NodeIndex> find(Mode m, std::string_view label) const {
        const auto& ix = index_[side(m)];
        auto it = ix.find(std::string(label));
        if (it == ix.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const NodeId& n) const { return find(n.mode, n.label).has_value(); }

    /// Opposite-mode neighbor indices of node i of mode m, ascending.
    const std::vector<NodeIndex>& neighbors(Mode m, NodeIndex i) const {
        return adj_[side(m)].at(i);
    }

    std::size_t degree(Mode m, NodeIndex i) const { return adj_[side(m)].at(i).size(); }

    /// All opposite-mode nodes adjacent to `n`. Throws input_error if `n`
    /// is not a node of this graph.
    std::vector<NodeId> neighbors(const NodeId& n) const {
        auto i = find(n.mode, n.label);
        if (!i) throw input_error("unknown node '" + n.label + "' in mode " + mode_name(n.mode));
        std::vector<NodeId> out;
        Mode om = opposite(n.mode);
        out.reserve(neighbors(n.mode, *i).size());
        for (NodeIndex j : neighbors(n.mode, *i)) out.push_back({label(om, j), om});
        return out;
    }

    bool has_edge(NodeIndex a, NodeIndex b) const {
        const auto& nb = adj_[0].at(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    /// Edges as (a, b) index pairs, ordered by (a, b).
    std::vector<std::pair<NodeIndex, NodeIndex>> edges() const {
        std::vector<std::pair<NodeIndex, NodeIndex>> out;
        out.reserve(edge_count_);
        for (NodeIndex a = 0; a < adj_[0].size(); ++a)
            for (NodeIndex b : adj_[0][a]) out.emplace_back(a, b);
        return out;
    }

    /// Returns a copy of the graph without the named victims and their
    /// incident edges. All other nodes are retained, isolated or not, in
    /// their original order. Every victim must name an existing node of
    /// `victim_mode`; otherwise input_error.
    BipartiteGraph remove_nodes(Mode victim_mode, const std::vector<std::string>& victims) const {
        std::vector<bool> dead(node_count(victim_mode), false);
        for (const auto& v : victims) {
            auto i = find(victim_mode, v);
            if (!i)
                throw input_error("victim '" + v + "' is not a mode-" +
                                  mode_name(victim_mode) + " node");
            dead[*i] = true;
        }
        // surviving victim-mode nodes, renumbered in original order
        std::vector<std::string> keep;
        std::vector<NodeIndex> renum(node_count(victim_mode));
        for (NodeIndex i = 0; i < dead.size(); ++i) {
            if (dead[i]) continue;
            renum[i] = static_cast<NodeIndex>(keep.size());
            keep.push_back(label(victim_mode, i));
        }
        std::vector<std::pair<NodeIndex, NodeIndex>> kept_edges;
        for (auto [a, b] : edges()) {
            NodeIndex vi = victim_mode == Mode::A ? a : b;
            if (dead[vi]) continue;
            if (victim_mode == Mode::A)
                kept_edges.emplace_back(renum[a], b);
            else
                kept_edges.emplace_back(a, renum[b]);
        }
        if (victim_mode == Mode::A)
            return from_parts(std::move(keep), labels_[1], kept_edges);
        return from_parts(labels_[0], std::move(keep), kept_edges);
    }

    friend bool operator==(const BipartiteGraph& lhs, const BipartiteGraph& rhs) {
        return lhs.labels_[0] == rhs.labels_[0] && lhs.labels_[1] == rhs.labels_[1] &&
               lhs.adj_[0] == rhs.adj_[0];
    }

private:
    BipartiteGraph() = default;

    static std::size_t side(Mode m) { return m == Mode::A ? 0 : 1; }

    NodeIndex intern(Mode m, const std::string& label) {
        auto& ix = index_[side(m)];
        auto it = ix.find(label);
        if (it != ix.end()) return it->second;
        NodeIndex i = static_cast<NodeIndex>(labels_[side(m)].size());
        labels_[side(m)].push_back(label);
        adj_[side(m)].emplace_back();
        ix.emplace(label, i);
        return i;
    }

    bool insert_edge(NodeIndex a, NodeIndex b) {
        auto& nb = adj_[0][a];
        if (std::find(nb.begin(), nb.end(), b) != nb.end()) return false;
        nb.push_back(b);
        adj_[1][b].push_back(a);
        ++edge_count_;
        return true;
    }

    void sort_adjacency() {
        for (auto& side_adj : adj_)
            for (auto& nb : side_adj) std::sort(nb.begin(), nb.end());
    }

    std::vector<std::string> labels_[2];
    std::map<std::string, NodeIndex> index_[2];
    std::vector<std::vector<NodeIndex>> adj_[2];
    std::size_t edge_count_ = 0;
};

} // namespace bipinf
