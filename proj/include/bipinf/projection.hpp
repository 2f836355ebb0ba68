#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bipinf/bipartite_graph.hpp"
#include "bipinf/errors.hpp"

namespace bipinf {

/// Unordered pair of projected-node indices, stored (low, high).
using EdgeKey = std::pair<NodeIndex, NodeIndex>;

inline EdgeKey make_edge_key(NodeIndex x, NodeIndex y) {
    return x < y ? EdgeKey{x, y} : EdgeKey{y, x};
}

/// One-mode projection of a bipartite graph. Two same-mode nodes are joined
/// iff they share at least one opposite-mode neighbor; each edge carries its
/// provenance, the exact set of opposite-mode nodes that create it. The size
/// of that set is the edge multiplicity `w`.
///
/// Node indices and labels are carried over unchanged from the source graph,
/// so isolated nodes stay in place. Immutable after construction.
class ProjectedGraph {
public:
    ProjectedGraph(Mode mode, std::vector<std::string> node_labels,
                   std::vector<std::string> provenance_labels,
                   std::map<EdgeKey, std::vector<NodeIndex>> edges)
        : mode_(mode),
          labels_(std::move(node_labels)),
          provenance_labels_(std::move(provenance_labels)),
          edges_(std::move(edges)),
          adj_(labels_.size()) {
        for (const auto& [key, prov] : edges_) {
            if (prov.empty()) throw internal_error("projected edge with empty provenance");
            adj_.at(key.first).push_back(key.second);
            adj_.at(key.second).push_back(key.first);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    /// Mode of the projected-onto side.
    Mode mode() const { return mode_; }

    /// Mode whose nodes appear in provenance sets.
    Mode provenance_mode() const { return opposite(mode_); }

    std::size_t node_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& node_labels() const { return labels_; }
    const std::string& node_label(NodeIndex i) const { return labels_.at(i); }

    /// All opposite-mode labels of the source graph, index-aligned with the
    /// provenance entries (not only those appearing on some edge).
    const std::vector<std::string>& provenance_labels() const { return provenance_labels_; }

    /// Same-mode neighbors of node i, ascending.
    const std::vector<NodeIndex>& neighbors(NodeIndex i) const { return adj_.at(i); }

    bool has_edge(NodeIndex x, NodeIndex y) const {
        return edges_.find(make_edge_key(x, y)) != edges_.end();
    }

    /// Provenance of edge (x, y), ascending opposite-mode indices.
    /// Throws input_error if the edge does not exist.
    const std::vector<NodeIndex>& provenance(NodeIndex x, NodeIndex y) const {
        auto it = edges_.find(make_edge_key(x, y));
        if (it == edges_.end())
            throw input_error("no projected edge (" + labels_.at(x) + ", " + labels_.at(y) + ")");
        return it->second;
    }

    const std::map<EdgeKey, std::vector<NodeIndex>>& edges() const { return edges_; }

    std::optional<NodeIndex> find(std::string_view label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) return std::nullopt;
        return static_cast<NodeIndex>(it - labels_.begin());
    }

    friend bool operator==(const ProjectedGraph& lhs, const ProjectedGraph& rhs) {
        return lhs.mode_ == rhs.mode_ && lhs.labels_ == rhs.labels_ &&
               lhs.provenance_labels_ == rhs.provenance_labels_ && lhs.edges_ == rhs.edges_;
    }

private:
    Mode mode_;
    std::vector<std::string> labels_;
    std::vector<std::string> provenance_labels_;
    std::map<EdgeKey, std::vector<NodeIndex>> edges_;
    std::vector<std::vector<NodeIndex>> adj_;
};

/// Projects `g` onto one mode. For every unordered same-mode pair sharing at
/// least one opposite-mode neighbor, emits an edge whose provenance is the
/// full shared-neighbor set. Nodes sharing nothing stay isolated.
inline ProjectedGraph project(const BipartiteGraph& g, Mode onto) {
    const Mode src = opposite(onto);
    std::map<EdgeKey, std::vector<NodeIndex>> edges;
    // wedge pass: every opposite-mode node stamps itself on all pairs of its
    // neighborhood; neighbor lists are ascending, so provenance ends sorted
    for (NodeIndex o = 0; o < g.node_count(src); ++o) {
        const auto& nb = g.neighbors(src, o);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                edges[{nb[i], nb[j]}].push_back(o);
    }
    return ProjectedGraph(onto, g.labels(onto), g.labels(src), std::move(edges));
}

/// Multiplicity `w` of a projected edge: how many opposite-mode nodes
/// make it.
inline std::size_t edge_multiplicity(const ProjectedGraph& p, NodeIndex x, NodeIndex y) {
    return p.provenance(x, y).size();
}

inline std::size_t edge_multiplicity(const ProjectedGraph& p, std::string_view x,
                                     std::string_view y) {
    auto ix = p.find(x);
    auto iy = p.find(y);
    if (!ix || !iy) throw input_error("unknown projected node");
    return edge_multiplicity(p, *ix, *iy);
}

} // namespace bipinf
