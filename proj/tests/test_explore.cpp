#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rigc/components.hpp"
#include "rigc/explore.hpp"
#include "rigc/theory.hpp"
#include "test_util.hpp"

using namespace rigc;

namespace {

std::vector<CommunityGraph> graphs(std::initializer_list<const char*> names) {
  std::vector<CommunityGraph> out;
  for (const char* n : names) out.push_back(named_graph(n));
  return out;
}

const Pmf kP = pmf_new({{1, 0.5}, {3, 0.5}});
const CommunityCatalog kK3 = CommunityCatalog::create({{named_graph("K3"), 1.0}});

std::map<StepKind, int> step_counts(const Trajectory& t) {
  std::map<StepKind, int> c;
  for (const auto& e : t.events) ++c[e.kind];
  return c;
}

std::vector<double> c_grid() {
  std::vector<double> g;
  for (int i = 10; i <= 100; ++i) g.push_back(i / 100.0);
  return g;
}

void check_trajectory_invariants(const Trajectory& t) {
  REQUIRE(!t.events.empty());
  std::int64_t prev_L = t.half_edges;
  double prev_t = 0.0;
  for (const auto& e : t.events) {
    CHECK(e.t >= prev_t);
    if (e.kind == StepKind::Step1) {
      CHECK(e.L == prev_L);
    } else {
      CHECK(e.L == prev_L - 1);
    }
    CHECK(e.A == e.L - e.S);
    CHECK(e.A >= 0);
    CHECK(e.S_hat >= e.S);
    CHECK(e.W >= 0);
    prev_L = e.L;
    prev_t = e.t;
  }
  CHECK(prev_L == 0);

  // s1_times is a sublist of s2_times.
  std::size_t j = 0;
  for (double s : t.s1_times) {
    while (j < t.s2_times.size() && t.s2_times[j] != s) ++j;
    CHECK(j < t.s2_times.size());
    if (j < t.s2_times.size()) ++j;
  }

  std::int64_t edges = 0;
  for (const auto& c : t.components) {
    CHECK(t.events[c.start_event].kind == StepKind::Step1);
    const std::int64_t before = t.events[c.start_event].L;
    const std::int64_t after = t.events[c.end_event].L;
    CHECK(before - after == c.edges);
    edges += c.edges;
  }
  CHECK(edges == t.half_edges);
}

}  // namespace

TEST_CASE("forced sequences on tiny instances") {
  Rng rng(1);
  {
    const auto t = run_exploration(build_params({1, 1}, graphs({"K2"})), rng);
    auto c = step_counts(t);
    CHECK(c[StepKind::Step1] == 1);
    CHECK(c[StepKind::Step2] == 1);
    CHECK(c[StepKind::Step3] == 1);
    REQUIRE(t.components.size() == 1);
    CHECK(t.components[0].l_vertices == 2);
    CHECK(t.components[0].r_vertices == 1);
    check_trajectory_invariants(t);
  }
  {
    const auto t = run_exploration(build_params({1}, graphs({"K1"})), rng);
    auto c = step_counts(t);
    CHECK(c[StepKind::Step1] == 1);
    CHECK(c[StepKind::Step2] == 1);
    CHECK(c[StepKind::Step3] == 0);
    CHECK(t.s1_times == std::vector<double>{0.0});
    CHECK(t.s2_times == std::vector<double>{0.0});
  }
  {
    // Two isolated degree-1 communities: duplicate timestamps in both lists.
    const auto t = run_exploration(build_params({1, 1}, graphs({"K1", "K1"})), rng);
    CHECK(t.s1_times.size() == 2);
    CHECK(t.s2_times.size() == 2);
    CHECK(t.s1_times[0] == t.s1_times[1]);
  }
}

TEST_CASE("property: trajectory invariants on random instances") {
  const auto mix = CommunityCatalog::create(
      {{named_graph("K1"), 0.2}, {named_graph("K2"), 0.3}, {named_graph("P4"), 0.3}, {named_graph("K3"), 0.2}});
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(100 + s);
    const auto params = sample_params(pmf_new({{1, 0.4}, {2, 0.3}, {4, 0.3}}), mix, 500, rng);
    for (bool direct : {false, true}) {
      const auto t = run_exploration(params, rng, {direct, true});
      check_trajectory_invariants(t);
    }
  }
}

TEST_CASE("exploration components agree with union-find on the same matching") {
  Rng rng(2);
  const auto params = sample_params(kP, kK3, 100000, rng);
  const auto t = run_exploration(params, rng);
  const auto bcm = trajectory_bcm(params, t);
  const auto comps = bcm_components(bcm);
  CHECK(comps.count() == t.components.size());
  std::int64_t largest_uf = 0;
  const auto n = static_cast<std::int64_t>(params.n());
  std::vector<std::int64_t> l_count(comps.count(), 0);
  for (std::int64_t v = 0; v < n; ++v) ++l_count[comps.label[v]];
  for (auto c : l_count) largest_uf = std::max(largest_uf, c);
  std::int64_t largest_tr = 0;
  for (const auto& c : t.components) largest_tr = std::max(largest_tr, c.l_vertices);
  CHECK(largest_tr == largest_uf);
  std::vector<std::int64_t> a(l_count);
  std::vector<std::int64_t> b;
  for (const auto& c : t.components) b.push_back(c.l_vertices);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("exploration matchings are uniform on small instances") {
  for (const auto& [degs, coms] : std::vector<std::pair<std::vector<int>, std::vector<CommunityGraph>>>{
           {{1, 1, 1, 1}, graphs({"K2", "K2"})}, {{2, 1, 1}, graphs({"K3", "K1"})}, {{3}, graphs({"K2", "K1"})}}) {
    const auto params = build_params(degs, coms);
    const auto law = oracle::sequential_matching_law(static_cast<int>(params.half_edges));
    for (bool direct : {false, true}) {
      Explorer ex(params);
      Rng rng(direct ? 11 : 12);
      std::map<std::vector<std::int32_t>, double> counts;
      for (int i = 0; i < 100000; ++i) counts[ex.run(rng, {direct, false}).r_to_l] += 1;
      std::vector<double> c;
      std::vector<double> p;
      for (const auto& [m, prob] : law) {
        c.push_back(counts[m]);
        p.push_back(prob);
      }
      CHECK(counts.size() == law.size());
      CHECK(oracle::chi_square_p(c, p) > 0.001);
    }
  }
}

TEST_CASE("sup errors against the limit curves") {
  const auto in = TheoryInputs::make(kP, kK3);
  Rng rng(3);
  const auto params = sample_params(kP, kK3, 100000, rng);
  const auto t = run_exploration(params, rng);
  const auto zero = trajectory_sup_error(t, in, 0.0);
  const double n = static_cast<double>(t.n_vertices);
  const double slack = std::abs(static_cast<double>(t.half_edges) / n - 2.0);
  CHECK(zero.living <= slack + 1.0 / n + 1e-12);
  CHECK(zero.sleeping <= slack + 1.0 / n + 1e-12);
  CHECK(zero.active <= 1.0 / n + 1e-12);
  const auto own = trajectory_sup_error(t, empirical_inputs(params), 0.0);
  CHECK(own.living <= 1.0 / n + 1e-12);
  CHECK(own.sleeping <= 1.0 / n + 1e-12);
  CHECK(own.active <= 1.0 / n + 1e-12);
  const auto two = trajectory_sup_error(t, in, 2.0);
  CHECK(two.living < 0.02);
  CHECK(two.sleeping < 0.02);
  CHECK(two.active < 0.02);

  const auto sub_p = point_mass(1);
  const auto k2 = CommunityCatalog::create({{named_graph("K2"), 1.0}});
  const auto sub_in = TheoryInputs::make(sub_p, k2);
  const auto sub_params = sample_params(sub_p, k2, 100000, rng);
  const auto st = run_exploration(sub_params, rng);
  CHECK(trajectory_sup_error(st, sub_in, 1.0).active < 0.02);
  for (int i = 0; i <= 100; ++i) CHECK(Hfun(sub_in, std::exp(-i / 100.0)) <= 1e-15);

  const auto q1 = CommunityCatalog::create({{named_graph("K1"), 0.5}, {named_graph("K2"), 0.5}});
  const auto q1_in = TheoryInputs::make(kP, q1);
  const auto q1_t = run_exploration(sample_params(kP, q1, 1000, rng), rng);
  const double horizon = -std::log(q_tilde_zero(q1_in));
  CHECK(code_of([&] { trajectory_sup_error(q1_t, q1_in, horizon); }) == ErrorCode::DomainHorizon);
  CHECK_NOTHROW(trajectory_sup_error(q1_t, q1_in, 0.9 * horizon));
}

TEST_CASE("hitting times") {
  const auto in = TheoryInputs::make(kP, kK3);
  Rng rng(4);
  const auto params = sample_params(kP, kK3, 100000, rng);
  const auto t = run_exploration(params, rng, {false, false});
  CHECK(hitting_times(t, {1.0})[0] == 0.0);
  CHECK(code_of([&] { hitting_times(t, {}); }) == ErrorCode::EmptyGrid);
  CHECK(code_of([&] { coupled_standard_hitting_times(t, {}); }) == ErrorCode::EmptyGrid);
  CHECK(code_of([&] { hitting_times(t, {0.0}); }) == ErrorCode::OutOfDomain);

  const auto grid = c_grid();
  const auto tau = hitting_times(t, grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sup = std::max(sup, std::abs(tau[i] - tau_theory(in, grid[i])));
  CHECK(sup < 0.05);

  const auto stn = coupled_standard_hitting_times(t, grid);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) CHECK(stn[i] - tau[i] > 0.0);
  CHECK(stn.back() == 0.0);
}

TEST_CASE("standard death process") {
  Rng rng(5);
  const std::int64_t h = 300000;
  const auto d = standard_death_process(h, rng);
  double sup_hit = 0.0;
  for (double c : c_grid()) sup_hit = std::max(sup_hit, std::abs(d.hitting_time(c) + std::log(c)));
  CHECK(sup_hit < 0.02);

  // Trajectory form on the same run, and the conversion between the two.
  double sup_traj = 0.0;
  for (int i = 0; i <= 230; ++i) {
    const double t = i / 100.0;
    sup_traj = std::max(sup_traj, std::abs(static_cast<double>(d.position_at(t)) / h - std::exp(-t)));
  }
  CHECK(sup_traj < 0.01);
  for (double c : c_grid()) {
    const double T = d.hitting_time(c);
    CHECK(static_cast<double>(d.position_at(T)) <= c * h);
    if (c < 1.0) {
      CHECK(static_cast<double>(d.position_at(std::nextafter(T, 0.0))) > c * h);
    }
  }

  // Mean hitting time equals a harmonic sum.
  const std::int64_t small = 50;
  const double c = 0.4;
  double harmonic = 0.0;
  for (std::int64_t i = small; i > static_cast<std::int64_t>(std::floor(c * small)); --i) harmonic += 1.0 / i;
  double avg = 0.0;
  const int reps = 40000;
  for (int r = 0; r < reps; ++r) avg += standard_death_process(small, rng).hitting_time(c) / reps;
  CHECK(std::abs(avg - harmonic) < 0.01);
}

TEST_CASE("size-biased reordering process") {
  Rng rng(6);
  {
    const auto z = zr_process({3, 3, 3}, rng);
    CHECK(z.h == 9);
    CHECK(z.partial_sums == std::vector<std::int64_t>{0, 3, 6, 9});
    std::vector<std::int32_t> order(z.order);
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<std::int32_t>{0, 1, 2});
  }
  {
    // First pick is size-biased: P(first = index 1) = 3/4.
    int big_first = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) big_first += zr_process({1, 3}, rng).order[0] == 1;
    CHECK(std::abs(big_first / double(n) - 0.75) < 0.01);
  }
  {
    std::vector<int> degs;
    for (int i = 0; i < 500; ++i) degs.push_back(i % 2 == 0 ? 2 : 4);
    const auto q = pmf_new({{2, 0.5}, {4, 0.5}});
    const auto sb = size_bias(q);
    const auto grid = c_grid();
    std::vector<double> avg(grid.size(), 0.0);
    const int reps = 10000;
    for (int r = 0; r < reps; ++r) {
      const auto z = zr_process(degs, rng);
      for (std::size_t i = 0; i < grid.size(); ++i) avg[i] += z.hitting_time(grid[i]) / reps;
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      sup = std::max(sup, std::abs(avg[i] + std::log(gf_inverse(sb, grid[i]))));
    CHECK(sup < 0.05);
  }
}

TEST_CASE("giant exploration window") {
  const auto in = TheoryInputs::make(kP, kK3);
  const double t_star = giant_time(giant_prediction(in));
  int good = 0;
  const int runs = 100;
  const auto params_rng_seed = 1000;
  for (int r = 0; r < runs; ++r) {
    Rng rng = make_stream(params_rng_seed, static_cast<std::uint64_t>(r), StreamRole::Params);
    const auto params = sample_params(kP, kK3, 100000, rng);
    Rng ex = make_stream(params_rng_seed, static_cast<std::uint64_t>(r), StreamRole::Exploration);
    const auto t = run_exploration(params, ex, {false, false});
    const auto w = giant_window(t, t_star);
    good += (w.T1 < 0.05 && std::abs(w.T2 - 2.748) < 0.1);
  }
  MESSAGE("runs inside the window: " << good << " / " << runs);
  CHECK(good >= 95);
}
