#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bipinf/bipartite_graph.hpp"
#include "bipinf/communities.hpp"
#include "bipinf/errors.hpp"
#include "bipinf/projection.hpp"
#include "bipinf/scoring.hpp"

namespace bipinf {

/// The six before/after community-change categories, plus an explicit
/// Unchanged label for bookkeeping.
enum class AnomalyType { Born, Vanish, Grow, Merge, Split, Shrink, Unchanged };

inline constexpr const char* anomaly_name(AnomalyType t) {
    switch (t) {
        case AnomalyType::Born: return "born";
        case AnomalyType::Vanish: return "vanish";
        case AnomalyType::Grow: return "grow";
        case AnomalyType::Merge: return "merge";
        case AnomalyType::Split: return "split";
        case AnomalyType::Shrink: return "shrink";
        case AnomalyType::Unchanged: return "unchanged";
    }
    return "?";
}

/// Outcome of classifying one before/after community pair of sets.
/// `counts` tallies the before side plus after-side births, so the entries
/// sum to |before| + #born. change_rate is the fraction of before
/// communities whose label is not Unchanged (0 for an empty before set);
/// born communities do not enter the rate.
struct ChangeClassification {
    std::vector<AnomalyType> before_labels;
    std::vector<AnomalyType> after_labels;
    std::map<AnomalyType, std::size_t> counts;
    double change_rate = 0.0;
};

/// A full node-removal experiment: who was removed, the community sets on
/// either side, and the classified changes.
struct AblationReport {
    std::vector<std::string> removed; // selection order
    CommunitySet before;
    CommunitySet after;
    ChangeClassification changes;
};

namespace detail {

inline std::size_t overlap_size(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
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

} // namespace detail

/// Matches before communities against after communities and labels both
/// sides. A candidate link exists where two communities share at least two
/// members (the endpoints of at least one edge). Links are accepted
/// greedily by descending overlap, then by canonical community order, under
/// the constraint that every matched group stays a star: one-to-one,
/// one-before-to-many-after (a split), or many-before-to-one-after
/// (a merge). Chains and many-to-many tangles are rejected.
///
/// Labels: an unlinked before community Vanishes, an unlinked after
/// community is Born. A one-to-one pair is Unchanged on identical
/// membership, Grow when the after side is larger, and Shrink otherwise --
/// including the equal-size, different-membership case, which lost original
/// members. Star members are all labeled Split or Merge respectively.
inline ChangeClassification classify_changes(const CommunitySet& before,
                                             const CommunitySet& after) {
    struct Link {
        std::size_t overlap;
        std::size_t b, a;
    };
    std::vector<Link> links;
    for (std::size_t b = 0; b < before.size(); ++b) {
        for (std::size_t a = 0; a < after.size(); ++a) {
            std::size_t ov =
                detail::overlap_size(before.member_labels(b), after.member_labels(a));
            if (ov >= 2) links.push_back({ov, b, a});
        }
    }
    std::sort(links.begin(), links.end(), [](const Link& l, const Link& r) {
        if (l.overlap != r.overlap) return l.overlap > r.overlap;
        if (l.b != r.b) return l.b < r.b;
        return l.a < r.a;
    });

    std::vector<std::vector<std::size_t>> b_links(before.size()), a_links(after.size());
    auto all_leaves = [](const std::vector<std::vector<std::size_t>>& other_side,
                         const std::vector<std::size_t>& nbrs) {
        return std::all_of(nbrs.begin(), nbrs.end(), [&](std::size_t o) {
            return other_side[o].size() == 1;
        });
    };
    for (const Link& l : links) {
        const bool b_free = b_links[l.b].empty();
        const bool a_free = a_links[l.a].empty();
        bool accept = false;
        if (b_free && a_free) {
            accept = true;
        } else if (b_free) {
            // `a` may take another leaf only while it is a star center,
            // i.e. all of its linked before-communities are single-linked
            accept = all_leaves(b_links, a_links[l.a]);
        } else if (a_free) {
            accept = all_leaves(a_links, b_links[l.b]);
        }
        if (accept) {
            b_links[l.b].push_back(l.a);
            a_links[l.a].push_back(l.b);
        }
    }

    ChangeClassification out;
    out.before_labels.assign(before.size(), AnomalyType::Vanish);
    out.after_labels.assign(after.size(), AnomalyType::Born);
    for (std::size_t b = 0; b < before.size(); ++b) {
        const auto& linked = b_links[b];
        if (linked.empty()) continue;
        if (linked.size() > 1) {
            out.before_labels[b] = AnomalyType::Split;
            for (std::size_t a : linked) out.after_labels[a] = AnomalyType::Split;
            continue;
        }
        const std::size_t a = linked.front();
        if (a_links[a].size() > 1) {
            out.after_labels[a] = AnomalyType::Merge;
            for (std::size_t bb : a_links[a]) out.before_labels[bb] = AnomalyType::Merge;
            continue;
        }
        const auto& bm = before.member_labels(b);
        const auto& am = after.member_labels(a);
        AnomalyType label;
        if (bm == am) label = AnomalyType::Unchanged;
        else if (am.size() > bm.size()) label = AnomalyType::Grow;
        else label = AnomalyType::Shrink;
        out.before_labels[b] = label;
        out.after_labels[a] = label;
    }

    for (AnomalyType t :
         {AnomalyType::Born, AnomalyType::Vanish, AnomalyType::Grow, AnomalyType::Merge,
          AnomalyType::Split, AnomalyType::Shrink, AnomalyType::Unchanged})
        out.counts[t] = 0;
    std::size_t unchanged = 0;
    for (AnomalyType t : out.before_labels) {
        ++out.counts[t];
        if (t == AnomalyType::Unchanged) ++unchanged;
    }
    for (AnomalyType t : out.after_labels)
        if (t == AnomalyType::Born) ++out.counts[AnomalyType::Born];
    out.change_rate =
        before.size() == 0
            ? 0.0
            : static_cast<double>(before.size() - unchanged) / static_cast<double>(before.size());
    return out;
}

/// Removes scored-mode nodes; the rest of the graph is untouched.
inline BipartiteGraph remove_events(const BipartiteGraph& g, Mode event_mode,
                                    const std::vector<std::string>& victims) {
    return g.remove_nodes(event_mode, victims);
}

/// Selects victims from `measure` by fraction and direction, removes them
/// from the bipartite graph, re-projects onto the mode opposite the scored
/// one, re-detects communities at the same min_size, and classifies the
/// before/after difference.
inline AblationReport run_ablation(const BipartiteGraph& g, const ScoreTable& measure,
                                   double fraction, Direction direction,
                                   std::size_t min_size) {
    const Mode victim_mode = measure.target_mode;
    const Mode onto = opposite(victim_mode);
    if (measure.node_labels != g.labels(victim_mode))
        throw input_error("score table does not cover the graph's scored mode");

    AblationReport report;
    report.removed = top_k(measure, fraction, direction);
    report.before = find_communities(project(g, onto), min_size);
    const BipartiteGraph reduced = remove_events(g, victim_mode, report.removed);
    report.after = find_communities(project(reduced, onto), min_size);
    report.changes = classify_changes(report.before, report.after);
    return report;
}

} // namespace bipinf
