#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bipinf/ablation.hpp"
#include "bipinf/bipartite_graph.hpp"
#include "bipinf/communities.hpp"
#include "bipinf/errors.hpp"
#include "bipinf/projection.hpp"
#include "bipinf/scoring.hpp"

namespace bipinf {

using ordered_json = nlohmann::ordered_json;

enum class InputFormat { Tsv, Konect };

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) fields.push_back(tok);
    return fields;
}

inline bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// 4-decimal fixed formatting, truncated toward zero to match table-style
// report precision (0.15159 prints as 0.1515). The nudge absorbs float
// accumulation error so an exact quarter never prints as .x499.
inline std::string fixed4(double x) {
    const double scaled = x * 1e4;
    const double nudge = 1e-9 + std::abs(scaled) * 1e-12;
    double t = x >= 0.0 ? std::floor(scaled + nudge) / 1e4 : std::ceil(scaled - nudge) / 1e4;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", t);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace detail

/// Reads a two-column edge list: first field mode A, second mode B, extra
/// fields ignored, '#' lines and blank lines skipped. Malformed lines fail
/// with their line number.
inline BipartiteGraph parse_tsv(std::istream& in, std::vector<std::string>* warnings = nullptr,
                                const std::string& name = "<input>") {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() < 2)
            throw input_error(name + " line " + std::to_string(lineno) +
                              ": expected at least two fields");
        edges.emplace_back(fields[0], fields[1]);
    }
    if (edges.empty()) throw input_error("empty graph");
    return BipartiteGraph::from_edge_list(edges, warnings);
}

/// Reads a KONECT out.* file: '%' header lines, then "u v [weight [time]]"
/// integer rows. A header declaring a one-mode network (sym/asym) is
/// rejected. Left ids become mode A as "p:<id>", right ids mode B as
/// "c:<id>", keeping equal integers across modes distinct.
inline BipartiteGraph parse_konect(std::istream& in, std::vector<std::string>* warnings = nullptr,
                                   const std::string& name = "<input>") {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::size_t lineno = 0;
    bool saw_format_header = false;
    bool warned_extra = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '%') {
            if (!saw_format_header) {
                saw_format_header = true;
                auto fields = detail::split_ws(line.substr(1));
                if (!fields.empty() && (fields[0] == "sym" || fields[0] == "asym"))
                    throw input_error(name + ": header declares a non-bipartite network (" +
                                      fields[0] + ")");
            }
            continue;
        }
        auto fields = detail::split_ws(line);
        if (fields.size() < 2)
            throw input_error(name + " line " + std::to_string(lineno) +
                              ": expected at least two fields");
        if (!detail::is_integer(fields[0]) || !detail::is_integer(fields[1]))
            throw input_error(name + " line " + std::to_string(lineno) +
                              ": node ids must be non-negative integers");
        if (fields.size() > 2 && !warned_extra) {
            warned_extra = true;
            if (warnings)
                warnings->push_back(name + ": weight/time columns present, ignored");
        }
        edges.emplace_back("p:" + fields[0], "c:" + fields[1]);
    }
    if (edges.empty()) throw input_error("empty graph");
    return BipartiteGraph::from_edge_list(edges, warnings);
}

inline BipartiteGraph load_graph(const std::string& path, InputFormat format,
                                 std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    return format == InputFormat::Tsv ? parse_tsv(in, warnings, path)
                                      : parse_konect(in, warnings, path);
}

/// The classic 18-women / 14-event attendance network (89 edges). Events
/// enter in attendance order, so node order matches the usual published
/// score tables. This is the 89-edge variant of the data; published copies
/// with 93 edges exist but are not the one embedded here.
inline BipartiteGraph southern_women() {
    struct Row {
        const char* woman;
        std::initializer_list<int> events;
    };
    static const Row rows[] = {
        {"W1", {1, 2, 3, 4, 5, 6, 8, 9}},
        {"W2", {1, 2, 3, 5, 6, 7, 8}},
        {"W3", {2, 3, 4, 5, 6, 7, 8, 9}},
        {"W4", {1, 3, 4, 5, 6, 7, 8}},
        {"W5", {3, 4, 5, 7}},
        {"W6", {3, 5, 6, 8}},
        {"W7", {5, 6, 7, 8}},
        {"W8", {6, 8, 9}},
        {"W9", {5, 7, 8, 9}},
        {"W10", {7, 8, 9, 12}},
        {"W11", {8, 9, 10, 12}},
        {"W12", {8, 9, 10, 12, 13, 14}},
        {"W13", {7, 8, 9, 10, 12, 13, 14}},
        {"W14", {6, 7, 9, 10, 11, 12, 13, 14}},
        {"W15", {7, 8, 10, 11, 12}},
        {"W16", {8, 9}},
        {"W17", {9, 11}},
        {"W18", {9, 11}},
    };
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Row& r : rows)
        for (int e : r.events) edges.emplace_back(r.woman, "E" + std::to_string(e));
    return BipartiteGraph::from_edge_list(edges);
}

/// Writes the bipartite edge list in the TSV input layout, one
/// "a<TAB>b" row per edge in node order.
inline void write_bipartite_tsv(std::ostream& out, const BipartiteGraph& g) {
    for (auto [a, b] : g.edges())
        out << g.label(Mode::A, a) << '\t' << g.label(Mode::B, b) << '\n';
}

/// Writes a projection so that read_projection_tsv reproduces it exactly:
/// 'm' the projected mode, 'n' rows the projected nodes in order, 'o' rows
/// the opposite-mode table, 'e' rows the edges with their provenance labels.
inline void write_projection_tsv(std::ostream& out, const ProjectedGraph& p) {
    out << "m\t" << mode_name(p.mode()) << '\n';
    for (const auto& l : p.node_labels()) out << "n\t" << l << '\n';
    for (const auto& l : p.provenance_labels()) out << "o\t" << l << '\n';
    for (const auto& [key, prov] : p.edges()) {
        out << "e\t" << p.node_label(key.first) << '\t' << p.node_label(key.second);
        for (NodeIndex o : prov) out << '\t' << p.provenance_labels().at(o);
        out << '\n';
    }
}

inline ProjectedGraph read_projection_tsv(std::istream& in, const std::string& name = "<input>") {
    Mode mode = Mode::A;
    bool saw_mode = false;
    std::vector<std::string> nodes, opposite_nodes;
    std::map<std::string, NodeIndex> node_ix, opp_ix;
    std::map<EdgeKey, std::vector<NodeIndex>> edges;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw input_error(name + " line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_ws(line);
        if (fields[0] == "m" && fields.size() == 2) {
            if (fields[1] != "a" && fields[1] != "b") fail("mode must be 'a' or 'b'");
            mode = fields[1] == "a" ? Mode::A : Mode::B;
            saw_mode = true;
        } else if (fields[0] == "n" && fields.size() == 2) {
            node_ix[fields[1]] = static_cast<NodeIndex>(nodes.size());
            nodes.push_back(fields[1]);
        } else if (fields[0] == "o" && fields.size() == 2) {
            opp_ix[fields[1]] = static_cast<NodeIndex>(opposite_nodes.size());
            opposite_nodes.push_back(fields[1]);
        } else if (fields[0] == "e" && fields.size() >= 4) {
            auto x = node_ix.find(fields[1]);
            auto y = node_ix.find(fields[2]);
            if (x == node_ix.end() || y == node_ix.end()) fail("edge endpoint not declared");
            std::vector<NodeIndex> prov;
            for (std::size_t i = 3; i < fields.size(); ++i) {
                auto o = opp_ix.find(fields[i]);
                if (o == opp_ix.end()) fail("provenance node not declared");
                prov.push_back(o->second);
            }
            std::sort(prov.begin(), prov.end());
            edges[make_edge_key(x->second, y->second)] = std::move(prov);
        } else {
            fail("unrecognized record");
        }
    }
    if (!saw_mode) throw input_error(name + ": missing mode record");
    return ProjectedGraph(mode, std::move(nodes), std::move(opposite_nodes), std::move(edges));
}

/// Score rows as "node,measure,raw,normalized", sorted by node label then
/// by the order the tables were given, values truncated to 4 decimals.
inline void write_scores_csv(std::ostream& out, const std::vector<ScoreTable>& tables) {
    out << "node,measure,raw,normalized\n";
    std::vector<std::string> labels;
    if (!tables.empty()) labels = tables.front().node_labels;
    std::sort(labels.begin(), labels.end());
    for (const auto& label : labels) {
        for (const auto& t : tables) {
            out << detail::csv_field(label) << ',' << measure_name(t.measure) << ','
                << detail::fixed4(t.raw_of(label)) << ',' << detail::fixed4(t.normalized_of(label))
                << '\n';
        }
    }
}

inline void write_communities_csv(std::ostream& out, const CommunitySet& cs) {
    out << "community,size,members\n";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string members;
        for (const auto& l : cs.member_labels(i)) {
            if (!members.empty()) members += ' ';
            members += l;
        }
        out << (i + 1) << ',' << cs[i].size() << ',' << detail::csv_field(members) << '\n';
    }
}

inline void write_r2_csv(std::ostream& out, const ComparisonMatrix& m) {
    out << "r2";
    for (Measure mm : m.measures) out << ',' << measure_name(mm);
    out << '\n';
    for (std::size_t i = 0; i < m.measures.size(); ++i) {
        out << measure_name(m.measures[i]);
        for (std::size_t j = 0; j < m.measures.size(); ++j)
            out << ',' << detail::fixed4(m.r2[i][j]);
        out << '\n';
    }
}

inline ordered_json communities_json(const CommunitySet& cs) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        ordered_json c;
        c["size"] = cs[i].size();
        c["members"] = cs.member_labels(i);
        arr.push_back(std::move(c));
    }
    return arr;
}

inline ordered_json scores_json(const std::vector<ScoreTable>& tables) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : tables) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            ordered_json row;
            row["node"] = t.node_labels[i];
            row["measure"] = measure_name(t.measure);
            row["raw"] = t.raw[i];
            row["normalized"] = t.normalized[i];
            arr.push_back(std::move(row));
        }
    }
    return arr;
}

inline ordered_json ablation_json(const AblationReport& r, Measure measure, double fraction,
                                  Direction direction) {
    ordered_json j;
    j["measure"] = measure_name(measure);
    j["fraction"] = fraction;
    j["direction"] = direction == Direction::Top ? "top" : "bottom";
    j["removed"] = r.removed;
    j["before_count"] = r.before.size();
    j["after_count"] = r.after.size();
    ordered_json counts;
    for (auto [type, count] : r.changes.counts) counts[anomaly_name(type)] = count;
    j["counts"] = std::move(counts);
    j["change_rate"] = r.changes.change_rate;
    auto side = [](const CommunitySet& cs, const std::vector<AnomalyType>& labels) {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            ordered_json c;
            c["members"] = cs.member_labels(i);
            c["label"] = anomaly_name(labels.at(i));
            arr.push_back(std::move(c));
        }
        return arr;
    };
    j["before"] = side(r.before, r.changes.before_labels);
    j["after"] = side(r.after, r.changes.after_labels);
    return j;
}

inline ordered_json r2_json(const ComparisonMatrix& m) {
    ordered_json j;
    ordered_json names = ordered_json::array();
    for (Measure mm : m.measures) names.push_back(measure_name(mm));
    j["measures"] = std::move(names);
    j["matrix"] = m.r2;
    return j;
}

/// Grouped bar chart of normalized scores: one group per node (sorted by
/// label), one bar per measure, |measures| * |nodes| bars total.
inline void write_svg_chart(std::ostream& out, const std::vector<ScoreTable>& tables) {
    static const char* palette[] = {"#4878a8", "#e49444", "#6a9f58", "#d1605e", "#855c9c"};
    std::vector<std::string> labels;
    if (!tables.empty()) labels = tables.front().node_labels;
    std::sort(labels.begin(), labels.end());

    const double bar_w = 14.0, group_gap = 12.0, left = 48.0, top = 36.0;
    const double plot_h = 220.0;
    const double group_w = bar_w * static_cast<double>(tables.size()) + group_gap;
    const double width = left + group_w * static_cast<double>(labels.size()) + 24.0;
    const double height = top + plot_h + 44.0;
    char buf[256];

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t t = 0; t < tables.size(); ++t) {
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"10\" width=\"10\" height=\"10\" fill=\"%s\"/>"
                      "<text x=\"%.2f\" y=\"19\" font-size=\"10\">%s</text>\n",
                      left + 110.0 * static_cast<double>(t), palette[t % 5],
                      left + 110.0 * static_cast<double>(t) + 14.0,
                      measure_name(tables[t].measure));
        out << buf;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double gx = left + group_w * static_cast<double>(i);
        for (std::size_t t = 0; t < tables.size(); ++t) {
            const double v = tables[t].normalized_of(labels[i]);
            const double h = plot_h * v;
            std::snprintf(buf, sizeof(buf),
                          "<rect class=\"bar\" x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                          "height=\"%.2f\" fill=\"%s\"/>\n",
                          gx + bar_w * static_cast<double>(t), top + plot_h - h, bar_w, h,
                          palette[t % 5]);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"9\" text-anchor=\"middle\">",
                      gx + bar_w * static_cast<double>(tables.size()) / 2.0,
                      top + plot_h + 14.0);
        out << buf << labels[i] << "</text>\n";
    }
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  left - 4.0, top + plot_h, width - 16.0, top + plot_h);
    out << buf;
    out << "</svg>\n";
}

struct ReportPaths {
    std::string csv;  // score table, empty = skip
    std::string json; // full report, empty = skip
    std::string svg;  // bar chart, empty = skip
};

/// Writes the selected report files. Emits an error for unwritable paths;
/// output is byte-deterministic for fixed inputs.
inline void emit_report(const std::vector<ScoreTable>& tables, const CommunitySet& communities,
                        const std::vector<ordered_json>& ablations,
                        const ComparisonMatrix* comparison, const ReportPaths& paths) {
    if (paths.csv.empty() && paths.json.empty() && paths.svg.empty())
        throw input_error("no report outputs requested");
    auto open = [](const std::string& path) {
        std::ofstream out(path);
        if (!out) throw input_error("cannot write '" + path + "'");
        return out;
    };
    if (!paths.csv.empty()) {
        auto out = open(paths.csv);
        write_scores_csv(out, tables);
    }
    if (!paths.json.empty()) {
        ordered_json j;
        j["communities"] = communities_json(communities);
        j["scores"] = scores_json(tables);
        j["ablations"] = ablations;
        if (comparison) j["r2"] = r2_json(*comparison);
        auto out = open(paths.json);
        out << j.dump(2) << '\n';
    }
    if (!paths.svg.empty()) {
        auto out = open(paths.svg);
        write_svg_chart(out, tables);
    }
}

} // namespace bipinf
