#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bipinf/errors.hpp"
#include "bipinf/projection.hpp"

namespace bipinf {

/// A community of the projection: a maximal clique, stored as ascending
/// node indices. Its size is the community-size weight k.
struct Community {
    std::vector<NodeIndex> members;

    std::size_t size() const { return members.size(); }

    bool contains(NodeIndex v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }

    friend bool operator==(const Community&, const Community&) = default;
};

/// The communities of one projection, in deterministic report order:
/// descending size, then lexicographic member labels. Communities may
/// overlap in nodes and edges.
class CommunitySet {
public:
    CommunitySet() = default;

    CommunitySet(std::vector<Community> communities, const std::vector<std::string>& node_labels)
        : communities_(std::move(communities)) {
        member_labels_.reserve(communities_.size());
        for (auto& c : communities_) {
            std::sort(c.members.begin(), c.members.end());
            std::vector<std::string> ls;
            ls.reserve(c.members.size());
            for (NodeIndex v : c.members) ls.push_back(node_labels.at(v));
            std::sort(ls.begin(), ls.end());
            member_labels_.push_back(std::move(ls));
        }
        std::vector<std::size_t> order(communities_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (communities_[a].size() != communities_[b].size())
                return communities_[a].size() > communities_[b].size();
            return member_labels_[a] < member_labels_[b];
        });
        std::vector<Community> cs;
        std::vector<std::vector<std::string>> ls;
        cs.reserve(order.size());
        ls.reserve(order.size());
        for (std::size_t i : order) {
            cs.push_back(std::move(communities_[i]));
            ls.push_back(std::move(member_labels_[i]));
        }
        communities_ = std::move(cs);
        member_labels_ = std::move(ls);
    }

    std::size_t size() const { return communities_.size(); }
    bool empty() const { return communities_.empty(); }

    const Community& operator[](std::size_t i) const { return communities_.at(i); }
    const std::vector<Community>& communities() const { return communities_; }

    /// Sorted label list of community i.
    const std::vector<std::string>& member_labels(std::size_t i) const {
        return member_labels_.at(i);
    }

    auto begin() const { return communities_.begin(); }
    auto end() const { return communities_.end(); }

    friend bool operator==(const CommunitySet& lhs, const CommunitySet& rhs) {
        return lhs.member_labels_ == rhs.member_labels_;
    }

private:
    std::vector<Community> communities_;
    std::vector<std::vector<std::string>> member_labels_;
};

namespace detail {

// Bron-Kerbosch with pivoting. P and X are ascending index vectors.
class CliqueEnumerator {
public:
    CliqueEnumerator(const ProjectedGraph& p, std::size_t min_size,
                     std::vector<Community>& out)
        : p_(p), min_size_(min_size), out_(out) {}

    void expand(std::vector<NodeIndex>& clique, std::vector<NodeIndex> cand,
                std::vector<NodeIndex> excl) {
        if (cand.empty() && excl.empty()) {
            if (clique.size() >= min_size_) out_.push_back(Community{clique});
            return;
        }
        const NodeIndex pivot = choose_pivot(cand, excl);
        const auto& pnb = p_.neighbors(pivot);
        std::vector<NodeIndex> branch;
        std::set_difference(cand.begin(), cand.end(), pnb.begin(), pnb.end(),
                            std::back_inserter(branch));
        for (NodeIndex v : branch) {
            const auto& vnb = p_.neighbors(v);
            std::vector<NodeIndex> next_cand, next_excl;
            std::set_intersection(cand.begin(), cand.end(), vnb.begin(), vnb.end(),
                                  std::back_inserter(next_cand));
            std::set_intersection(excl.begin(), excl.end(), vnb.begin(), vnb.end(),
                                  std::back_inserter(next_excl));
            clique.push_back(v);
            expand(clique, std::move(next_cand), std::move(next_excl));
            clique.pop_back();
            cand.erase(std::find(cand.begin(), cand.end(), v));
            excl.insert(std::upper_bound(excl.begin(), excl.end(), v), v);
        }
    }

private:
    // pivot = vertex of P∪X covering the most of P; ties resolve to the
    // smallest index for determinism
    NodeIndex choose_pivot(const std::vector<NodeIndex>& cand,
                           const std::vector<NodeIndex>& excl) const {
        NodeIndex best = cand.empty() ? excl.front() : cand.front();
        std::size_t best_cover = 0;
        bool first = true;
        auto consider = [&](NodeIndex u) {
            const auto& unb = p_.neighbors(u);
            std::size_t cover = count_intersection(cand, unb);
            if (first || cover > best_cover) {
                best = u;
                best_cover = cover;
                first = false;
            }
        };
        for (NodeIndex u : cand) consider(u);
        for (NodeIndex u : excl) consider(u);
        return best;
    }

    static std::size_t count_intersection(const std::vector<NodeIndex>& a,
                                          const std::vector<NodeIndex>& b) {
        std::size_t n = 0;
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i < *j) ++i;
            else if (*j < *i) ++j;
            else { ++n; ++i; ++j; }
        }
        return n;
    }

    const ProjectedGraph& p_;
    std::size_t min_size_;
    std::vector<Community>& out_;
};

// Peel minimum-degree vertices to get a degeneracy order.
inline std::vector<NodeIndex> degeneracy_order(const ProjectedGraph& p) {
    const std::size_t n = p.node_count();
    std::vector<std::size_t> deg(n);
    std::vector<bool> removed(n, false);
    for (NodeIndex v = 0; v < n; ++v) deg[v] = p.neighbors(v).size();
    std::vector<NodeIndex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        NodeIndex best = 0;
        std::size_t best_deg = SIZE_MAX;
        for (NodeIndex v = 0; v < n; ++v) {
            if (!removed[v] && deg[v] < best_deg) {
                best = v;
                best_deg = deg[v];
            }
        }
        removed[best] = true;
        order.push_back(best);
        for (NodeIndex u : p.neighbors(best))
            if (!removed[u]) --deg[u];
    }
    return order;
}

} // namespace detail

/// Enumerates exactly the maximal cliques of `p` with at least `min_size`
/// members, as a deterministically ordered CommunitySet. Bron-Kerbosch with
/// pivoting, with a degeneracy-ordered outer level. min_size must be >= 2.
inline CommunitySet find_communities(const ProjectedGraph& p, std::size_t min_size = 3) {
    if (min_size < 2) throw input_error("min_size must be at least 2");
    std::vector<Community> found;
    detail::CliqueEnumerator enumerator(p, min_size, found);
    const auto order = detail::degeneracy_order(p);
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    for (NodeIndex v : order) {
        const auto& nb = p.neighbors(v);
        std::vector<NodeIndex> cand, excl;
        for (NodeIndex u : nb)
            (rank[u] > rank[v] ? cand : excl).push_back(u);
        std::vector<NodeIndex> clique{v};
        enumerator.expand(clique, std::move(cand), std::move(excl));
    }
    return CommunitySet(std::move(found), p.node_labels());
}

/// All k(k-1)/2 member pairs of a community, each verified to be an edge of
/// `p`; a missing pair means the community does not belong to this
/// projection and raises internal_error.
inline std::vector<EdgeKey> community_edges(const Community& c, const ProjectedGraph& p) {
    std::vector<EdgeKey> out;
    out.reserve(c.size() * (c.size() - 1) / 2);
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        for (std::size_t j = i + 1; j < c.members.size(); ++j) {
            EdgeKey key = make_edge_key(c.members[i], c.members[j]);
            if (!p.has_edge(key.first, key.second))
                throw internal_error("community pair (" + p.node_label(key.first) + ", " +
                                     p.node_label(key.second) + ") is not a projected edge");
            out.push_back(key);
        }
    }
    return out;
}

} // namespace bipinf
