#include <doctest.h>

#include "oracles.hpp"
#include "rigc/components.hpp"
#include "rigc/theory.hpp"
#include "test_util.hpp"

using namespace rigc;

namespace {

std::vector<CommunityGraph> graphs(std::initializer_list<const char*> names) {
  std::vector<CommunityGraph> out;
  for (const char* n : names) out.push_back(named_graph(n));
  return out;
}

/// Connected community graphs used for exhaustive enumeration, by size.
std::map<int, std::vector<CommunityGraph>> graph_pool() {
  std::map<int, std::vector<CommunityGraph>> pool;
  pool[1] = graphs({"K1"});
  pool[2] = graphs({"K2"});
  pool[3] = graphs({"P3", "K3"});
  pool[4] = graphs({"P4", "S4", "C4", "K4"});
  pool[4].push_back(CommunityGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}));
  pool[4].push_back(CommunityGraph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}));
  pool[5] = graphs({"P5", "K5"});
  pool[6] = graphs({"S6"});
  return pool;
}

/// Every multiset of pool graphs whose sizes sum to h.
std::vector<std::vector<CommunityGraph>> community_lists(int h) {
  const auto pool = graph_pool();
  std::vector<CommunityGraph> flat;
  for (const auto& [size, gs] : pool)
    for (const auto& g : gs) flat.push_back(g);
  std::vector<std::vector<CommunityGraph>> out;
  std::vector<CommunityGraph> cur;
  std::function<void(int, std::size_t)> rec = [&](int rest, std::size_t from) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < flat.size(); ++i) {
      if (flat[i].n() > rest) continue;
      cur.push_back(flat[i]);
      rec(rest - flat[i].n(), i);
      cur.pop_back();
    }
  };
  rec(h, 0);
  return out;
}

std::vector<int> as_int(const std::vector<std::int32_t>& v, std::size_t n) {
  return std::vector<int>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace

TEST_CASE("component labelings on small instances") {
  Rng rng(1);
  {
    const auto p = build_params({1, 1, 1}, graphs({"K3"}));
    const auto c = rigc_components(project_rigc(generate_bcm(p, rng), p.communities));
    CHECK(c.count() == 1);
    CHECK(c.sizes[0] == 3);
  }
  {
    const auto p = build_params({1, 1}, graphs({"K1", "K1"}));
    const auto c = rigc_components(project_rigc(generate_bcm(p, rng), p.communities));
    CHECK(c.count() == 2);
    CHECK(c.sizes == std::vector<std::int64_t>{1, 1});
  }
  {
    const auto p = build_params({1, 1}, graphs({"K2"}));
    const auto c = bcm_components(generate_bcm(p, rng));
    CHECK(c.count() == 1);
    CHECK(c.sizes[0] == 3);
  }
  CHECK(largest_label({2, 5, 5, 1}) == 1);
}

TEST_CASE("giant statistics on small instances") {
  Rng rng(2);
  {
    const auto p = build_params({1, 1, 1}, graphs({"K3"}));
    const auto g = giant_stats_rigc(project_rigc(generate_bcm(p, rng), p.communities), p);
    CHECK(g.c1_fraction == 1.0);
    CHECK(g.joint_in_giant == std::map<std::pair<int, int>, double>{{{1, 2}, 1.0}});
    CHECK(g.edges_in_giant_per_N == doctest::Approx(1.0));
  }
  {
    const auto p = build_params({1, 1}, graphs({"K1", "K1"}));
    const auto g = giant_stats_rigc(project_rigc(generate_bcm(p, rng), p.communities), p);
    CHECK(g.c1_fraction == 0.5);
    CHECK(g.c2_fraction == 0.5);
    CHECK(g.edges_in_giant_per_N == 0.0);
  }
  {
    const auto p = build_params({2}, graphs({"K2"}));
    const auto g = giant_stats_rigc(project_rigc(generate_bcm(p, rng), p.communities), p);
    CHECK(g.edges_in_giant_per_N == 1.0);
    CHECK(g.joint_in_giant == std::map<std::pair<int, int>, double>{{{2, 2}, 1.0}});
  }
  {
    const auto p = build_params({1, 1}, graphs({"K2"}));
    const auto b = giant_stats_bcm(generate_bcm(p, rng), p);
    CHECK(b.lhs_fraction == 1.0);
    CHECK(b.rhs_fraction == 1.0);
    CHECK(b.combined_fraction == 1.0);
    CHECK(b.edges_per_N == 1.0);
    CHECK(b.lhs_degk == std::map<int, double>{{1, 1.0}});
    CHECK(b.rhs_degk == std::map<int, double>{{2, 1.0}});
  }
}

TEST_CASE("exhaustive: RIGC connectivity equals BCM connectivity restricted to l-vertices") {
  std::int64_t checked = 0;
  for (int h = 1; h <= 6; ++h) {
    const auto law = oracle::sequential_matching_law(h);
    for (const auto& l_part : oracle::partitions(h)) {
      for (const auto& coms : community_lists(h)) {
        if (l_part.size() + coms.size() > 12) continue;
        const auto params = build_params(l_part, coms);
        const auto layout = HalfEdgeLayout::from_params(params);
        for (const auto& [m, prob] : law) {
          const BcmGraph bcm(layout, m);
          const auto rigc = project_rigc(bcm, coms);
          const auto rc = rigc_components(rigc);
          const auto bc = bcm_components(bcm);
          const auto n = params.n();
          const auto r_cls = as_int(rc.label, n);
          const auto b_cls = as_int(bc.label, n);
          REQUIRE(oracle::same_partition(r_cls, b_cls));
          REQUIRE(oracle::same_partition(r_cls, oracle::projected_l_classes(bcm, coms)));
          REQUIRE(oracle::same_partition(b_cls, oracle::bipartite_l_classes(bcm)));

          const auto g = giant_stats_rigc(rigc, rc, params.l_degrees);
          std::int64_t in_bcm = 0;
          for (std::size_t v = 0; v < n; ++v)
            if (rc.label[v] == g.giant_label) {
              const auto b = bc.label[v];
              in_bcm = 0;
              for (std::size_t w = 0; w < n; ++w) in_bcm += bc.label[w] == b;
              break;
            }
          REQUIRE(in_bcm == rc.sizes[g.giant_label]);
          ++checked;
        }
      }
    }
  }
  MESSAGE("matchings checked: " << checked);
  CHECK(checked > 100000);
}

TEST_CASE("property: giant statistics invariants on random instances") {
  const auto p = pmf_new({{1, 0.4}, {2, 0.3}, {5, 0.3}});
  const auto mix = CommunityCatalog::create(
      {{named_graph("K1"), 0.2}, {named_graph("K2"), 0.3}, {named_graph("P4"), 0.3}, {named_graph("K3"), 0.2}});
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(1000 + s);
    const auto params = sample_params(p, mix, 300, rng);
    const auto bcm = generate_bcm(params, rng);
    const auto rigc = project_rigc(bcm, params.communities);
    const auto g = giant_stats_rigc(rigc, params);
    CHECK(0.0 <= g.c2_fraction);
    CHECK(g.c2_fraction <= g.c1_fraction);
    CHECK(g.c1_fraction <= 1.0);
    double joint = 0.0;
    for (const auto& [kd, f] : g.joint_in_giant) joint += f;
    CHECK(std::abs(joint - g.c1_fraction) < 1e-12);
    CHECK(g.edges_in_giant_per_N <= static_cast<double>(rigc.edge_count()) / static_cast<double>(params.n()) + 1e-12);

    const auto b = giant_stats_bcm(bcm, params);
    double degk = 0.0;
    for (const auto& [k, f] : b.lhs_degk) degk += f;
    CHECK(std::abs(degk - b.lhs_fraction) < 1e-12);
    for (double f : {b.lhs_fraction, b.rhs_fraction, b.combined_fraction, b.second_fraction}) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
  }
}

TEST_CASE("spot check at N = 10^4: RIGC giant is the l-part of a BCM component") {
  const auto p = pmf_new({{1, 0.5}, {3, 0.5}});
  const auto k3 = CommunityCatalog::create({{named_graph("K3"), 1.0}});
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(77 + s);
    const auto params = sample_params(p, k3, 10000, rng);
    const auto bcm = generate_bcm(params, rng);
    const auto rc = rigc_components(project_rigc(bcm, params.communities));
    const auto bc = bcm_components(bcm);
    const auto n = params.n();
    CHECK(oracle::same_partition(as_int(rc.label, n), as_int(bc.label, n)));
  }
}
