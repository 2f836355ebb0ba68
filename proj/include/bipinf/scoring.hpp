#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "bipinf/bipartite_graph.hpp"
#include "bipinf/communities.hpp"
#include "bipinf/errors.hpp"
#include "bipinf/projection.hpp"

namespace bipinf {

enum class Measure { HH, Degree, Betweenness, Closeness, Eigenvector };

inline constexpr const char* measure_name(Measure m) {
    switch (m) {
        case Measure::HH: return "HH";
        case Measure::Degree: return "Degree";
        case Measure::Betweenness: return "Betweenness";
        case Measure::Closeness: return "Closeness";
        case Measure::Eigenvector: return "Eigenvector";
    }
    return "?";
}

/// Raw and min-max-normalized scores of every node of one mode, aligned
/// with that mode's first-appearance index order.
struct ScoreTable {
    Measure measure;
    Mode target_mode;
    std::vector<std::string> node_labels;
    std::vector<double> raw;
    std::vector<double> normalized;

    std::size_t size() const { return node_labels.size(); }

    double raw_of(std::string_view label) const { return at(raw, label); }
    double normalized_of(std::string_view label) const { return at(normalized, label); }

private:
    double at(const std::vector<double>& v, std::string_view label) const {
        auto it = std::find(node_labels.begin(), node_labels.end(), label);
        if (it == node_labels.end())
            throw input_error("no score entry for '" + std::string(label) + "'");
        return v.at(static_cast<std::size_t>(it - node_labels.begin()));
    }
};

/// Min-max rescaling: min maps to 0, max to 1, order preserved. A table
/// whose entries are all equal maps to all zeros. Idempotent on `raw`.
inline ScoreTable normalize(ScoreTable t) {
    if (t.raw.empty()) throw input_error("cannot normalize an empty score table");
    auto [lo_it, hi_it] = std::minmax_element(t.raw.begin(), t.raw.end());
    const double lo = *lo_it, hi = *hi_it;
    t.normalized.resize(t.raw.size());
    if (hi == lo) {
        std::fill(t.normalized.begin(), t.normalized.end(), 0.0);
    } else {
        for (std::size_t i = 0; i < t.raw.size(); ++i)
            t.normalized[i] = (t.raw[i] - lo) / (hi - lo);
    }
    return t;
}

/// Per-community contributions of one opposite-mode node: per_community[j]
/// is the shared-credit sum over the edges of community j (before the size
/// weight), total the final community-size-weighted score.
struct EffectBreakdown {
    std::string event;
    std::vector<double> per_community;
    double total = 0.0;
};

/// Shared-credit contribution of opposite-mode node `event` to one
/// community: over every community edge whose provenance contains it,
/// 1 / (number of opposite-mode nodes making that edge). Zero when it
/// touches no edge of the community.
inline double event_effect(const ProjectedGraph& p, NodeIndex event, const Community& c) {
    if (event >= p.provenance_labels().size())
        throw input_error("event index out of range");
    double effect = 0.0;
    for (const EdgeKey& key : community_edges(c, p)) {
        const auto& prov = p.provenance(key.first, key.second);
        if (std::binary_search(prov.begin(), prov.end(), event))
            effect += 1.0 / static_cast<double>(prov.size());
    }
    return effect;
}

inline double event_effect(const BipartiteGraph& g, const ProjectedGraph& p,
                           std::string_view event, const Community& c) {
    auto i = g.find(p.provenance_mode(), event);
    if (!i) throw input_error("unknown node '" + std::string(event) + "'");
    return event_effect(p, *i, c);
}

struct HHResult {
    ScoreTable table;
    std::vector<EffectBreakdown> breakdown; // aligned with table entries
};

/// The influence score of every opposite-mode node: the community-size-
/// weighted sum of its shared-credit contributions across all communities.
/// Nodes touching no community edge score 0. `p` and `cs` must come from
/// `g` (same node tables).
inline HHResult hh_scores(const BipartiteGraph& g, const ProjectedGraph& p,
                          const CommunitySet& cs) {
    if (g.labels(p.mode()) != p.node_labels() ||
        g.labels(p.provenance_mode()) != p.provenance_labels())
        throw internal_error("projection does not belong to this bipartite graph");
    const Mode scored = p.provenance_mode();
    const std::size_t n_events = g.node_count(scored);

    HHResult r;
    r.breakdown.resize(n_events);
    for (std::size_t e = 0; e < n_events; ++e) {
        r.breakdown[e].event = g.label(scored, e);
        r.breakdown[e].per_community.assign(cs.size(), 0.0);
    }
    // accumulate per edge rather than per event: each community edge hands
    // 1/w to each of its w provenance events, then the k_j weight applies
    for (std::size_t j = 0; j < cs.size(); ++j) {
        const Community& c = cs[j];
        const double k = static_cast<double>(c.size());
        for (const EdgeKey& key : community_edges(c, p)) {
            const auto& prov = p.provenance(key.first, key.second);
            const double share = 1.0 / static_cast<double>(prov.size());
            for (NodeIndex e : prov) r.breakdown[e].per_community[j] += share;
        }
        for (std::size_t e = 0; e < n_events; ++e)
            r.breakdown[e].total += k * r.breakdown[e].per_community[j];
    }

    r.table.measure = Measure::HH;
    r.table.target_mode = scored;
    r.table.node_labels = g.labels(scored);
    r.table.raw.resize(n_events);
    for (std::size_t e = 0; e < n_events; ++e) r.table.raw[e] = r.breakdown[e].total;
    r.table = normalize(std::move(r.table));
    return r;
}

namespace detail {

// Combined view of the bipartite graph as one simple graph on |A|+|B|
// vertices: A nodes first, then B.
struct CombinedGraph {
    explicit CombinedGraph(const BipartiteGraph& g)
        : n_a(g.node_count(Mode::A)), n(g.total_nodes()), adj(n) {
        for (NodeIndex a = 0; a < n_a; ++a)
            for (NodeIndex b : g.neighbors(Mode::A, a)) {
                adj[a].push_back(n_a + b);
                adj[n_a + b].push_back(a);
            }
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    }

    std::size_t offset(Mode m) const { return m == Mode::A ? 0 : n_a; }

    std::size_t n_a;
    std::size_t n;
    std::vector<std::vector<std::size_t>> adj;
};

inline ScoreTable make_table(const BipartiteGraph& g, Mode target, Measure m,
                             const CombinedGraph& cg, const std::vector<double>& full) {
    ScoreTable t;
    t.measure = m;
    t.target_mode = target;
    t.node_labels = g.labels(target);
    const std::size_t off = cg.offset(target);
    t.raw.assign(full.begin() + off, full.begin() + off + g.node_count(target));
    return normalize(std::move(t));
}

} // namespace detail

/// Bipartite degree of every target-mode node (adjacency row sum).
inline ScoreTable degree_centrality(const BipartiteGraph& g, Mode target_mode) {
    ScoreTable t;
    t.measure = Measure::Degree;
    t.target_mode = target_mode;
    t.node_labels = g.labels(target_mode);
    t.raw.resize(g.node_count(target_mode));
    for (NodeIndex i = 0; i < t.raw.size(); ++i)
        t.raw[i] = static_cast<double>(g.degree(target_mode, i));
    return normalize(std::move(t));
}

/// Shortest-path betweenness on the full bipartite graph, counting each
/// unordered pair once with endpoints excluded; pairs with no connecting
/// path contribute nothing. Brandes accumulation.
inline ScoreTable betweenness_centrality(const BipartiteGraph& g, Mode target_mode) {
    const detail::CombinedGraph cg(g);
    const std::size_t n = cg.n;
    std::vector<double> score(n, 0.0);

    std::vector<std::size_t> dist(n), order;
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> preds(n);
    order.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& pr : preds) pr.clear();
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (std::size_t w : cg.adj[v]) {
                if (dist[w] == SIZE_MAX) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : preds[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) score[w] += delta[w];
        }
    }
    // each unordered pair was accumulated from both endpoints
    for (double& x : score) x /= 2.0;
    return detail::make_table(g, target_mode, Measure::Betweenness, cg, score);
}

/// Reciprocal of the summed distances from a node to every node it can
/// reach; a node reaching nothing scores 0.
inline ScoreTable closeness_centrality(const BipartiteGraph& g, Mode target_mode) {
    const detail::CombinedGraph cg(g);
    const std::size_t n = cg.n;
    std::vector<double> score(n, 0.0);
    std::vector<std::size_t> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        std::size_t total = 0;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            total += dist[v];
            for (std::size_t w : cg.adj[v])
                if (dist[w] == SIZE_MAX) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        score[s] = total > 0 ? 1.0 / static_cast<double>(total) : 0.0;
    }
    return detail::make_table(g, target_mode, Measure::Closeness, cg, score);
}

/// Dominant eigenvector of the full bipartite adjacency, L2-normalized over
/// all |A|+|B| components, reported for the target mode. Power iteration on
/// the identity-shifted adjacency: a bipartite spectrum is symmetric around
/// zero, and the shift separates the top eigenvalue without moving the
/// eigenvectors. Converges to 1e-10 or stops after 1000 rounds; components
/// outside the dominant connected component may end up at ~0.
inline ScoreTable eigenvector_centrality(const BipartiteGraph& g, Mode target_mode) {
    if (g.edge_count() == 0) throw input_error("eigenvector undefined: graph has no edges");
    const detail::CombinedGraph cg(g);
    const std::size_t n = cg.n;
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
    constexpr double tol = 1e-10;
    constexpr int max_rounds = 1000;
    for (int round = 0; round < max_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = v[i]; // identity shift
            for (std::size_t j : cg.adj[i]) acc += v[j];
            next[i] = acc;
        }
        double norm = 0.0;
        for (double x : next) norm += x * x;
        norm = std::sqrt(norm);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= norm;
            change = std::max(change, std::abs(next[i] - v[i]));
        }
        v.swap(next);
        if (change < tol) break;
    }
    for (double& x : v) x = std::max(x, 0.0);
    return detail::make_table(g, target_mode, Measure::Eigenvector, cg, v);
}

/// Pairwise coefficients of determination between normalized score vectors:
/// symmetric, unit diagonal. Vectors must cover the same nodes in the same
/// order and hold at least two entries.
struct ComparisonMatrix {
    std::vector<Measure> measures;
    std::vector<std::vector<double>> r2; // r2[i][j], symmetric

    double at(Measure a, Measure b) const {
        return r2.at(index(a)).at(index(b));
    }

private:
    std::size_t index(Measure m) const {
        auto it = std::find(measures.begin(), measures.end(), m);
        if (it == measures.end()) throw input_error("measure not in comparison");
        return static_cast<std::size_t>(it - measures.begin());
    }
};

namespace detail {

// R^2 of the least-squares line through (x, y): the squared Pearson
// correlation. A constant vector has no line to fit; the fit is perfect
// when both are constant and worthless when only one is.
inline double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return (sxx == syy) ? 1.0 : 0.0;
    return (sxy * sxy) / (sxx * syy);
}

} // namespace detail

inline ComparisonMatrix compare_measures(const std::vector<ScoreTable>& tables) {
    if (tables.empty()) throw input_error("nothing to compare");
    const auto& labels = tables.front().node_labels;
    if (labels.size() < 2) throw input_error("comparison needs at least two nodes");
    for (const auto& t : tables)
        if (t.node_labels != labels)
            throw input_error("score tables cover different node sets");
    ComparisonMatrix m;
    m.measures.reserve(tables.size());
    for (const auto& t : tables) m.measures.push_back(t.measure);
    m.r2.assign(tables.size(), std::vector<double>(tables.size(), 1.0));
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = i + 1; j < tables.size(); ++j)
            m.r2[i][j] = m.r2[j][i] =
                detail::r_squared(tables[i].normalized, tables[j].normalized);
    return m;
}

enum class Direction { Top, Bottom };

/// The floor(fraction * n) highest- or lowest-scoring labels, at least one.
/// Ties break toward the lexicographically smaller label, so selections are
/// reproducible.
inline std::vector<std::string> top_k(const ScoreTable& t, double fraction,
                                      Direction direction) {
    if (t.size() == 0) throw input_error("empty score table");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw input_error("fraction must lie in (0, 1]");
    std::size_t k = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(t.size())));
    k = std::max<std::size_t>(k, 1);

    std::vector<std::size_t> order(t.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (t.raw[a] != t.raw[b])
            return direction == Direction::Top ? t.raw[a] > t.raw[b] : t.raw[a] < t.raw[b];
        return t.node_labels[a] < t.node_labels[b];
    });
    std::vector<std::string> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(t.node_labels[order[i]]);
    return out;
}

} // namespace bipinf
