#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "bipinf/ablation.hpp"
#include "bipinf/io.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bipinf;
namespace bt = bipinf::testing;

namespace {

// Builds a CommunitySet directly from label lists; members double as their
// own labels via an index table.
CommunitySet set_of(const std::vector<std::vector<std::string>>& groups) {
    std::vector<std::string> labels;
    std::map<std::string, NodeIndex> ix;
    std::vector<Community> cs;
    for (const auto& group : groups) {
        Community c;
        for (const auto& m : group) {
            auto it = ix.find(m);
            if (it == ix.end()) {
                it = ix.emplace(m, static_cast<NodeIndex>(labels.size())).first;
                labels.push_back(m);
            }
            c.members.push_back(it->second);
        }
        cs.push_back(std::move(c));
    }
    return CommunitySet(std::move(cs), labels);
}

std::size_t count_of(const ChangeClassification& c, AnomalyType t) { return c.counts.at(t); }

} // namespace

TEST_CASE("removing events re-shapes the projection") {
    BipartiteGraph g = bt::toy_two_event_triangle();
    SECTION("dropping the shared event keeps the triangle alive") {
        auto reduced = remove_events(g, Mode::B, {"c"});
        ProjectedGraph p = project(reduced, Mode::A);
        CHECK(p.edge_count() == 3);
        CHECK(bt::as_label_provenance(p).at({"2", "3"}) == std::set<std::string>{"a"});
        CHECK(find_communities(p, 3).size() == 1);
    }
    SECTION("dropping the dominant event dissolves the community") {
        auto reduced = remove_events(g, Mode::B, {"a"});
        ProjectedGraph p = project(reduced, Mode::A);
        CHECK(p.edge_count() == 1);
        CHECK(bt::as_label_provenance(p).at({"2", "3"}) == std::set<std::string>{"c"});
        CHECK(find_communities(p, 3).empty());
    }
}

TEST_CASE("classification of small before/after pairs") {
    SECTION("identical sets are unchanged") {
        auto before = set_of({{"a", "b", "c"}, {"d", "e", "f"}});
        auto c = classify_changes(before, before);
        CHECK(count_of(c, AnomalyType::Unchanged) == 2);
        CHECK(c.change_rate == 0.0);
    }
    SECTION("a community with no successor vanishes") {
        auto c = classify_changes(set_of({{"1", "2", "3"}}), set_of({}));
        REQUIRE(c.before_labels.size() == 1);
        CHECK(c.before_labels[0] == AnomalyType::Vanish);
        CHECK(c.change_rate == 1.0);
    }
    SECTION("strict subset is a shrink") {
        auto c = classify_changes(set_of({{"1", "2", "3", "4"}}), set_of({{"1", "2", "3"}}));
        CHECK(c.before_labels[0] == AnomalyType::Shrink);
        CHECK(c.after_labels[0] == AnomalyType::Shrink);
        CHECK(c.change_rate == 1.0);
    }
    SECTION("strict superset is a grow") {
        auto c = classify_changes(set_of({{"1", "2", "3"}}), set_of({{"1", "2", "3", "4"}}));
        CHECK(c.before_labels[0] == AnomalyType::Grow);
    }
    SECTION("equal size with different membership counts as shrink") {
        auto c = classify_changes(set_of({{"1", "2", "3"}}), set_of({{"1", "2", "9"}}));
        CHECK(c.before_labels[0] == AnomalyType::Shrink);
    }
    SECTION("an after-community with no predecessor is born") {
        auto c = classify_changes(set_of({{"1", "2", "3"}}),
                                  set_of({{"1", "2", "3"}, {"7", "8", "9"}}));
        CHECK(count_of(c, AnomalyType::Born) == 1);
        CHECK(count_of(c, AnomalyType::Unchanged) == 1);
        CHECK(c.change_rate == 0.0); // births do not touch the rate
    }
    SECTION("one before splitting into two afters") {
        auto c = classify_changes(set_of({{"1", "2", "3", "4"}}),
                                  set_of({{"1", "2", "3"}, {"1", "2", "4"}}));
        CHECK(c.before_labels[0] == AnomalyType::Split);
        CHECK(c.after_labels[0] == AnomalyType::Split);
        CHECK(c.after_labels[1] == AnomalyType::Split);
        CHECK(count_of(c, AnomalyType::Split) == 1); // before side only
    }
    SECTION("two befores merging into one after") {
        auto c = classify_changes(set_of({{"1", "2", "3"}, {"3", "4", "5"}}),
                                  set_of({{"1", "2", "3", "4", "5"}}));
        CHECK(c.before_labels[0] == AnomalyType::Merge);
        CHECK(c.before_labels[1] == AnomalyType::Merge);
        CHECK(c.after_labels[0] == AnomalyType::Merge);
        CHECK(count_of(c, AnomalyType::Merge) == 2);
        CHECK(c.change_rate == 1.0);
    }
    SECTION("an overlap below two members is no link") {
        auto c = classify_changes(set_of({{"1", "2", "3"}}), set_of({{"3", "8", "9"}}));
        CHECK(c.before_labels[0] == AnomalyType::Vanish);
        CHECK(c.after_labels[0] == AnomalyType::Born);
    }
    SECTION("many-to-many tangles stay star-shaped") {
        // all six pairs overlap in {1,2}; greedy order links the first
        // before to both afters, the rest must not attach anywhere
        auto c = classify_changes(
            set_of({{"1", "2", "3"}, {"1", "2", "4"}, {"1", "2", "5"}}),
            set_of({{"1", "2", "8"}, {"1", "2", "9"}}));
        CHECK(c.before_labels[0] == AnomalyType::Split);
        CHECK(c.before_labels[1] == AnomalyType::Vanish);
        CHECK(c.before_labels[2] == AnomalyType::Vanish);
        CHECK(c.after_labels[0] == AnomalyType::Split);
        CHECK(c.after_labels[1] == AnomalyType::Split);
        CHECK(count_of(c, AnomalyType::Split) == 1);
        CHECK(count_of(c, AnomalyType::Vanish) == 2);
        CHECK(count_of(c, AnomalyType::Born) == 0);
    }
    SECTION("a chain cannot form: weaker cross links are rejected") {
        // strongest links pair B0-A0 and B1-A1; the overlap-2 cross links
        // would chain the two pairs and must lose
        auto c = classify_changes(
            set_of({{"1", "2", "3", "4"}, {"3", "4", "5"}}),
            set_of({{"1", "2", "3", "4"}, {"3", "4", "5", "6"}}));
        CHECK(c.before_labels[0] == AnomalyType::Unchanged);
        CHECK(c.before_labels[1] == AnomalyType::Grow);
        CHECK(c.after_labels[0] == AnomalyType::Unchanged);
        CHECK(c.after_labels[1] == AnomalyType::Grow);
        CHECK(c.change_rate == 0.5);
    }
}

TEST_CASE("label accounting on random ablations") {
    std::mt19937 rng(20240815);
    int nontrivial = 0;
    for (int round = 0; round < 60; ++round) {
        BipartiteGraph g = bt::random_bipartite(rng);
        ProjectedGraph p = project(g, Mode::A);
        CommunitySet before = find_communities(p, 3);
        auto hh = hh_scores(g, p, before).table;
        AblationReport r = run_ablation(g, hh, 0.25, Direction::Top, 3);
        if (!r.before.empty()) ++nontrivial;

        REQUIRE(r.changes.before_labels.size() == r.before.size());
        REQUIRE(r.changes.after_labels.size() == r.after.size());
        std::size_t born = 0;
        for (AnomalyType t : r.changes.after_labels)
            if (t == AnomalyType::Born) ++born;
        std::size_t tally = 0;
        for (const auto& [type, count] : r.changes.counts) tally += count;
        CHECK(tally == r.before.size() + born);
        CHECK(r.changes.change_rate >= 0.0);
        CHECK(r.changes.change_rate <= 1.0);
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("zero-score victims leave the communities untouched") {
    // event d rides a single actor, so it backs no community edge
    BipartiteGraph g = bt::graph_of(
        {{"1", "a"}, {"2", "a"}, {"3", "a"}, {"2", "c"}, {"3", "c"}, {"1", "d"}});
    ProjectedGraph p = project(g, Mode::A);
    CommunitySet cs = find_communities(p, 3);
    auto hh = hh_scores(g, p, cs).table;
    CHECK(hh.raw_of("d") == 0.0);

    AblationReport r = run_ablation(g, hh, 1.0 / 3.0, Direction::Bottom, 3);
    REQUIRE(r.removed == std::vector<std::string>{"d"});
    CHECK(r.changes.change_rate == 0.0);
    CHECK(r.before == r.after);
}

TEST_CASE("removing all zero scorers preserves the community set") {
    std::mt19937 rng(616);
    for (int round = 0; round < 80; ++round) {
        BipartiteGraph g = bt::random_bipartite(rng);
        ProjectedGraph p = project(g, Mode::A);
        CommunitySet before = find_communities(p, 3);
        auto hh = hh_scores(g, p, before).table;
        std::vector<std::string> zeros;
        for (std::size_t i = 0; i < hh.size(); ++i)
            if (hh.raw[i] == 0.0) zeros.push_back(hh.node_labels[i]);
        if (zeros.empty() || zeros.size() == hh.size()) continue;
        auto reduced = remove_events(g, Mode::B, zeros);
        CommunitySet after = find_communities(project(reduced, Mode::A), 3);
        CHECK(before == after);
    }
}

TEST_CASE("ablation reports are deterministic") {
    BipartiteGraph g = southern_women();
    ProjectedGraph p = project(g, Mode::A);
    CommunitySet cs = find_communities(p, 3);
    auto hh = hh_scores(g, p, cs).table;
    auto once = run_ablation(g, hh, 0.10, Direction::Top, 3);
    auto twice = run_ablation(g, hh, 0.10, Direction::Top, 3);
    CHECK(ablation_json(once, Measure::HH, 0.10, Direction::Top) ==
          ablation_json(twice, Measure::HH, 0.10, Direction::Top));
    CHECK(once.removed == twice.removed);
}
