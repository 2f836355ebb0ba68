#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bipinf/bipinf.hpp"

using namespace bipinf;

namespace {

struct CommonOpts {
    std::string input;
    std::string format = "tsv";
    std::string onto = "a";
    std::size_t min_size = 3;
};

void add_input_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "edge list file")->required();
    cmd->add_option("--format", o.format, "input layout (default tsv)")
        ->check(CLI::IsMember({"tsv", "konect"}));
    cmd->add_option("--onto", o.onto, "mode to project onto (default a)")
        ->check(CLI::IsMember({"a", "b"}));
}

Mode onto_mode(const CommonOpts& o) { return o.onto == "a" ? Mode::A : Mode::B; }

BipartiteGraph load(const CommonOpts& o) {
    std::vector<std::string> warnings;
    BipartiteGraph g = load_graph(
        o.input, o.format == "tsv" ? InputFormat::Tsv : InputFormat::Konect, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return g;
}

Measure parse_measure(const std::string& name) {
    if (name == "hh") return Measure::HH;
    if (name == "degree") return Measure::Degree;
    if (name == "betweenness") return Measure::Betweenness;
    if (name == "closeness") return Measure::Closeness;
    if (name == "eigenvector") return Measure::Eigenvector;
    throw input_error("unknown measure '" + name + "'");
}

const std::vector<Measure> kAllMeasures = {Measure::HH, Measure::Degree, Measure::Betweenness,
                                           Measure::Closeness, Measure::Eigenvector};

ScoreTable compute_table(const BipartiteGraph& g, Mode onto, std::size_t min_size, Measure m) {
    const Mode scored = opposite(onto);
    switch (m) {
        case Measure::HH: {
            ProjectedGraph p = project(g, onto);
            CommunitySet cs = find_communities(p, min_size);
            return hh_scores(g, p, cs).table;
        }
        case Measure::Degree: return degree_centrality(g, scored);
        case Measure::Betweenness: return betweenness_centrality(g, scored);
        case Measure::Closeness: return closeness_centrality(g, scored);
        case Measure::Eigenvector: return eigenvector_centrality(g, scored);
    }
    throw internal_error("unreachable measure");
}

std::vector<ScoreTable> compute_tables(const BipartiteGraph& g, Mode onto, std::size_t min_size,
                                       const std::vector<Measure>& which) {
    std::vector<ScoreTable> out;
    out.reserve(which.size());
    for (Measure m : which) out.push_back(compute_table(g, onto, min_size, m));
    return out;
}

int cmd_demo(const std::string& dataset, std::size_t min_size, const std::string& svg_path,
             const std::string& json_path) {
    if (dataset != "southern-women")
        throw input_error("unknown demo dataset '" + dataset + "' (try: southern-women)");
    BipartiteGraph g = southern_women();
    ProjectedGraph p = project(g, Mode::A);
    CommunitySet cs = find_communities(p, min_size);
    std::vector<ScoreTable> tables = compute_tables(g, Mode::A, min_size, kAllMeasures);
    ComparisonMatrix r2 = compare_measures(tables);

    std::cout << "# dataset: southern-women  |A|=" << g.node_count(Mode::A)
              << " |B|=" << g.node_count(Mode::B) << " edges=" << g.edge_count() << '\n';
    std::cout << "# projection: onto a  nodes=" << p.node_count() << " edges=" << p.edge_count()
              << '\n';
    std::cout << "# communities: min_size=" << min_size << " count=" << cs.size() << "\n\n";
    write_communities_csv(std::cout, cs);
    std::cout << '\n';
    write_scores_csv(std::cout, tables);
    std::cout << '\n';
    write_r2_csv(std::cout, r2);
    if (!svg_path.empty() || !json_path.empty())
        emit_report(tables, cs, {}, &r2,
                    ReportPaths{.csv = "", .json = json_path, .svg = svg_path});
    return 0;
}

int cmd_project(const CommonOpts& o, const std::string& output) {
    BipartiteGraph g = load(o);
    ProjectedGraph p = project(g, onto_mode(o));
    std::ofstream out(output);
    if (!out) throw input_error("cannot write '" + output + "'");
    write_projection_tsv(out, p);
    return 0;
}

int cmd_communities(const CommonOpts& o) {
    BipartiteGraph g = load(o);
    CommunitySet cs = find_communities(project(g, onto_mode(o)), o.min_size);
    write_communities_csv(std::cout, cs);
    return 0;
}

int cmd_score(const CommonOpts& o, const std::string& measure) {
    BipartiteGraph g = load(o);
    std::vector<Measure> which =
        measure == "all" ? kAllMeasures : std::vector<Measure>{parse_measure(measure)};
    write_scores_csv(std::cout, compute_tables(g, onto_mode(o), o.min_size, which));
    return 0;
}

int cmd_ablate(const CommonOpts& o, const std::string& measure, double fraction,
               const std::string& direction) {
    BipartiteGraph g = load(o);
    Measure m = parse_measure(measure);
    Direction dir = direction == "top" ? Direction::Top : Direction::Bottom;
    ScoreTable table = compute_table(g, onto_mode(o), o.min_size, m);
    AblationReport report = run_ablation(g, table, fraction, dir, o.min_size);
    std::cout << ablation_json(report, m, fraction, dir).dump(2) << '\n';
    return 0;
}

int cmd_compare(const CommonOpts& o) {
    BipartiteGraph g = load(o);
    ComparisonMatrix r2 =
        compare_measures(compute_tables(g, onto_mode(o), o.min_size, kAllMeasures));
    write_r2_csv(std::cout, r2);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Influence analysis of two-mode networks: who creates the communities "
                 "of the one-mode projection"};
    app.require_subcommand(1);

    std::string demo_dataset, svg_path, json_path;
    std::size_t demo_min_size = 3;
    CLI::App* demo = app.add_subcommand("demo", "run the full pipeline on a built-in dataset");
    demo->add_option("dataset", demo_dataset, "built-in dataset name")->required();
    demo->add_option("--min-size", demo_min_size, "smallest community size (default 3)");
    demo->add_option("--svg", svg_path, "write a grouped bar chart of normalized scores");
    demo->add_option("--json", json_path, "write the full report as JSON");

    CommonOpts po;
    std::string project_output;
    CLI::App* projectc = app.add_subcommand("project", "write the one-mode projection");
    add_input_opts(projectc, po);
    projectc->add_option("--output", project_output, "projection file to write")->required();

    CommonOpts co;
    CLI::App* communitiesc =
        app.add_subcommand("communities", "list maximal-clique communities of the projection");
    add_input_opts(communitiesc, co);
    communitiesc->add_option("--min-size", co.min_size, "smallest community size (default 3)");

    CommonOpts so;
    std::string score_measure = "all";
    CLI::App* scorec = app.add_subcommand("score", "score the nodes opposite the projection");
    add_input_opts(scorec, so);
    scorec->add_option("--measure", score_measure, "hh|degree|betweenness|closeness|eigenvector|all")
        ->check(CLI::IsMember({"hh", "degree", "betweenness", "closeness", "eigenvector", "all"}));
    scorec->add_option("--min-size", so.min_size, "smallest community size (default 3)");

    CommonOpts ao;
    std::string ablate_measure, ablate_direction = "top";
    double fraction = 0.10;
    CLI::App* ablatec =
        app.add_subcommand("ablate", "remove top/bottom scored nodes and classify the fallout");
    add_input_opts(ablatec, ao);
    ablatec->add_option("--measure", ablate_measure, "measure that selects the victims")
        ->check(CLI::IsMember({"hh", "degree", "betweenness", "closeness", "eigenvector"}))
        ->required();
    ablatec->add_option("--fraction", fraction, "victim fraction in (0,1] (default 0.10)");
    ablatec->add_option("--direction", ablate_direction, "top|bottom (default top)")
        ->check(CLI::IsMember({"top", "bottom"}));
    ablatec->add_option("--min-size", ao.min_size, "smallest community size (default 3)");

    CommonOpts xo;
    CLI::App* comparec = app.add_subcommand("compare", "pairwise R^2 between all measures");
    add_input_opts(comparec, xo);
    comparec->add_option("--min-size", xo.min_size, "smallest community size (default 3)");

    try {
        app.parse(argc, argv);
        if (demo->parsed()) return cmd_demo(demo_dataset, demo_min_size, svg_path, json_path);
        if (projectc->parsed()) return cmd_project(po, project_output);
        if (communitiesc->parsed()) return cmd_communities(co);
        if (scorec->parsed()) return cmd_score(so, score_measure);
        if (ablatec->parsed()) return cmd_ablate(ao, ablate_measure, fraction, ablate_direction);
        if (comparec->parsed()) return cmd_compare(xo);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
