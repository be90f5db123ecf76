#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "wngf/dichotomize.hpp"

using namespace wngf;

namespace {

using EdgeSet = std::set<std::pair<std::string, std::string>>;

EdgeSet edge_set(const WeightedDigraph &g) {
  EdgeSet out;
  for (const Edge &e : g.edges())
    out.emplace(g.label(e.source), g.label(e.target));
  return out;
}

bool subset(const EdgeSet &a, const EdgeSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_binary(const WeightedDigraph &g) {
  for (const Edge &e : g.edges())
    if (e.weight != 1.0)
      return false;
  return true;
}

} // namespace

TEST_SUITE("dichotomize") {

TEST_CASE("threshold removes the bottom edges") {
  std::vector<EdgeRecord> rec;
  for (int i = 1; i <= 10; ++i)
    rec.push_back({"s" + std::to_string(i), "t" + std::to_string(i), static_cast<double>(i)});
  const auto g = build_graph(rec, false);

  const auto cut = threshold_cut(g, 0.10);
  CHECK(cut.edge_count() == 9);
  CHECK(cut.node_count() == g.node_count());
  CHECK(is_binary(cut));
  CHECK_FALSE(edge_set(cut).contains({"s1", "t1"}));

  const auto none = threshold_cut(g, 0.0);
  CHECK(edge_set(none) == edge_set(g));
  CHECK(is_binary(none));

  const auto kept = threshold_cut(g, 0.10, true);
  CHECK(kept.weight("s2", "t2") == 2.0);
}

TEST_CASE("threshold ties break by source then target label") {
  const std::vector<EdgeRecord> rec = {
      {"B", "A", 1.0}, {"A", "C", 1.0}, {"C", "A", 2.0}, {"B", "C", 3.0}};
  const auto cut = threshold_cut(build_graph(rec, false), 0.25);
  CHECK(cut.edge_count() == 3);
  CHECK_FALSE(edge_set(cut).contains({"A", "C"}));
  CHECK(edge_set(cut).contains({"B", "A"}));
}

TEST_CASE("threshold fraction range") {
  const std::vector<EdgeRecord> rec = {{"A", "B", 1.0}};
  const auto g = build_graph(rec, false);
  CHECK_THROWS_AS(threshold_cut(g, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(threshold_cut(g, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(DichotomizationSpec::threshold(1.0), std::invalid_argument);
}

TEST_CASE("threshold count and monotonicity on random graphs") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rg = testing::random_graph(rng, {15, 0.4, 1, {}});
    const auto g = build_graph(rg.records, false, rg.nodes);
    EdgeSet previous = edge_set(g);
    for (double f : {0.0, 0.1, 0.35, 0.5, 0.9}) {
      const auto cut = threshold_cut(g, f);
      CHECK(cut.edge_count() ==
            g.edge_count() - static_cast<std::size_t>(std::floor(f * g.edge_count())));
      const auto now = edge_set(cut);
      CHECK(subset(now, previous));
      previous = now;
    }
  }
}

TEST_CASE("disparity significance") {
  CHECK(disparity_significance(10.0 / 11.0, 2) == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(disparity_significance(0.5, 3) == 0.25);
  CHECK(disparity_significance(1.0, 1) == 1.0);
  CHECK_THROWS_AS(disparity_significance(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(disparity_significance(1.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(disparity_significance(0.5, 0), std::invalid_argument);
}

TEST_CASE("disparity significance is monotone") {
  for (std::size_t k = 2; k < 12; ++k)
    for (double p = 0.05; p < 0.95; p += 0.05) {
      CHECK(disparity_significance(p + 0.05, k) < disparity_significance(p, k));
      CHECK(disparity_significance(p, k + 1) <= disparity_significance(p, k));
    }
}

TEST_CASE("backbone keeps strong out-edges and drops weak ones") {
  // i sends 10 to a and 1 to b. c sends 100 to b, so b's in-test on i->b
  // sees share 1/101 over degree 2: significance 100/101.
  const std::vector<EdgeRecord> rec = {{"i", "a", 10.0}, {"i", "b", 1.0}, {"c", "b", 100.0}};
  const auto g = build_graph(rec, false);
  const auto bb = backbone(g, 0.4);
  CHECK(edge_set(bb).contains({"i", "a"}));
  CHECK_FALSE(edge_set(bb).contains({"i", "b"}));
  CHECK(edge_set(bb).contains({"c", "b"}));
  CHECK(is_binary(bb));

  // With a weak competitor at b, i->b dominates b's inflow and passes the
  // in-test (share 1/1.1, significance 1/11).
  const std::vector<EdgeRecord> rec2 = {{"i", "a", 10.0}, {"i", "b", 1.0}, {"c", "b", 0.1}};
  CHECK(edge_set(backbone(build_graph(rec2, false), 0.4)).contains({"i", "b"}));
}

TEST_CASE("backbone degree-one convention keeps a star") {
  std::vector<EdgeRecord> rec;
  for (int i = 0; i < 5; ++i)
    rec.push_back({"center", "leaf" + std::to_string(i), 3.0});
  const auto g = build_graph(rec, false);
  CHECK(backbone(g, 0.4).edge_count() == 5);
}

TEST_CASE("backbone at alpha 1 keeps everything") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rg = testing::random_graph(rng, {20, 0.5, 1, {}});
    const auto g = build_graph(rg.records, false, rg.nodes);
    CHECK(edge_set(backbone(g, 1.0)) == edge_set(g));
  }
  // A share too small to move (1 - p) off 1.0 in double precision.
  const std::vector<EdgeRecord> rec = {
      {"a", "b", 1e-20}, {"a", "c", 1.0}, {"d", "b", 1.0}, {"e", "c", 1.0}};
  CHECK(backbone(build_graph(rec, false), 1.0).edge_count() == 4);
}

TEST_CASE("backbone is monotone in alpha") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rg = testing::random_graph(rng, {20, 0.4, 1, {}});
    const auto g = build_graph(rg.records, false, rg.nodes);
    EdgeSet previous;
    for (double a : {0.01, 0.1, 0.2, 0.34, 0.4, 0.5, 0.8, 1.0}) {
      const auto now = edge_set(backbone(g, a));
      CHECK(subset(previous, now));
      previous = now;
    }
  }
}

TEST_CASE("backbone alpha range") {
  const std::vector<EdgeRecord> rec = {{"A", "B", 1.0}};
  const auto g = build_graph(rec, false);
  CHECK_THROWS_AS(backbone(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(backbone(g, 1.5), std::invalid_argument);
}

TEST_CASE("retention report") {
  const std::vector<EdgeRecord> rec = {{"A", "B", 1.0}, {"B", "C", 5.0}};
  const auto g = build_graph(rec, false);

  const auto same = retention_report(g, g);
  CHECK(same.all_nodes_retained);
  CHECK(same.edges_after == same.edges_before);
  CHECK(same.nodes_retained == 3);

  const auto cut = retention_report(g, threshold_cut(g, 0.5));
  CHECK(cut.edges_after == 1);
  CHECK(cut.nodes_retained == 2);
  CHECK_FALSE(cut.all_nodes_retained);

  const auto empty = WeightedDigraph::from_indexed({"A", "B", "C"}, {});
  const auto r = retention_report(g, empty);
  CHECK(r.nodes_retained == 0);
  CHECK(r.edges_after == 0);

  const std::vector<EdgeRecord> other = {{"X", "Y", 1.0}};
  CHECK_THROWS_AS(retention_report(g, build_graph(other, false)), GraphError);
}

}
