#include "rigc/percolation.hpp"

#include <algorithm>
#include <random>

#include "rigc/error.hpp"
#include "rigc/union_find.hpp"

namespace rigc {

namespace {

void require_probability(double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw Error(ErrorCode::OutOfDomain, "retention probability outside [0,1]");
}

}  // namespace

RigcGraph percolate_rigc_graph(const RigcGraph& g, double pi, Rng& rng) {
  require_probability(pi);
  RigcGraph out;
  out.n_vertices = g.n_vertices;
  if (pi >= 1.0) return g;
  if (pi <= 0.0) return out;
  for (const auto& e : g.edges) {
    const auto kept = std::binomial_distribution<std::int32_t>(e.mult, pi)(rng);
    if (kept > 0) out.edges.push_back({e.u, e.v, kept});
  }
  return out;
}

std::vector<CommunityGraph> build_com_pi(const std::vector<CommunityGraph>& communities, double pi,
                                         Rng& rng) {
  require_probability(pi);
  std::vector<CommunityGraph> out;
  out.reserve(communities.size());
  for (const auto& c : communities) {
    auto pieces = percolate_sample(c, pi, rng);
    for (auto& piece : pieces) out.push_back(std::move(piece));
  }
  return out;
}

PercolatedCatalog mu_pi_limit(const CommunityCatalog& catalog, double pi) {
  require_probability(pi);
  PercolatedCatalog out;
  out.pi = pi;
  if (pi >= 1.0) {
    out.catalog_pi = catalog;
    out.mean_size_pi = mean(catalog_size_pmf(catalog));
    return out;
  }
  if (pi <= 0.0) {
    out.catalog_pi = CommunityCatalog::create({{CommunityGraph(1, {}), 1.0}});
    out.mean_size_pi = 1.0;
    return out;
  }

  std::map<CommunityKey, double> numerator;
  std::map<CommunityKey, CommunityGraph> reps;
  double denominator = 0.0;
  for (const auto& item : catalog.items()) {
    const PercolationTable table(item.graph);
    for (const auto& outcome : table.profile(pi).outcomes) {
      const double w = item.weight * outcome.probability;
      for (const auto& key : outcome.components) numerator[key] += w;
      denominator += w * static_cast<double>(outcome.components.size());
    }
    for (const auto& [key, g] : table.representatives()) reps.emplace(key, g);
  }
  std::vector<std::pair<CommunityGraph, double>> items;
  for (const auto& [key, w] : numerator) items.emplace_back(reps.at(key), w / denominator);
  out.catalog_pi = CommunityCatalog::from_counts(items);
  out.mean_size_pi = mean(catalog_size_pmf(catalog)) / denominator;
  return out;
}

GiantPrediction percolated_prediction(const Pmf& p, const CommunityCatalog& catalog, double pi) {
  return giant_prediction(TheoryInputs::make(p, mu_pi_limit(catalog, pi).catalog_pi));
}

CriticalFunction::CriticalFunction(const Pmf& p, const CommunityCatalog& catalog)
    : mean_p_tilde_(mean(tilted(p))), mean_r_(mean(catalog_size_pmf(catalog))) {
  for (const auto& item : catalog.items())
    terms_.emplace_back(item.weight * item.graph.n(), PercolationTable(item.graph));
}

double CriticalFunction::operator()(double pi) const {
  double s = 0.0;
  for (const auto& [w, table] : terms_) s += w * table.mean_root_component_minus_one(pi);
  return mean_p_tilde_ * s / mean_r_ - 1.0;
}

CriticalPi critical_pi(const Pmf& p, const CommunityCatalog& catalog, double tol) {
  const auto in = TheoryInputs::make(p, catalog);
  if (criticality_value(in) <= 1.0)
    throw Error(ErrorCode::NotSupercritical, "unpercolated model is not supercritical");
  if (!(tol > 0.0)) throw Error(ErrorCode::OutOfDomain, "tolerance must be positive");
  const CriticalFunction f(p, catalog);
  CriticalPi out;
  out.lo = 0.0;
  out.hi = 1.0;
  while (out.hi - out.lo > tol && out.iterations < 200) {
    const double mid = 0.5 * (out.lo + out.hi);
    if (f(mid) > 0.0)
      out.hi = mid;
    else
      out.lo = mid;
    ++out.iterations;
  }
  out.pi_c = 0.5 * (out.lo + out.hi);
  return out;
}

std::vector<GiantStats> harris_sweep(const RigcGraph& g, const std::vector<int>& l_degrees,
                                     const std::vector<double>& pi_grid, Rng& rng) {
  for (std::size_t i = 0; i < pi_grid.size(); ++i) {
    require_probability(pi_grid[i]);
    if (i > 0 && pi_grid[i] < pi_grid[i - 1])
      throw Error(ErrorCode::OutOfDomain, "pi grid must be sorted ascending");
  }
  std::vector<double> u;
  u.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const auto& e : g.edges)
    for (std::int32_t i = 0; i < e.mult; ++i) u.push_back(uniform01(rng));

  std::vector<GiantStats> out;
  out.reserve(pi_grid.size());
  RigcGraph kept;
  kept.n_vertices = g.n_vertices;
  for (double pi : pi_grid) {
    kept.edges.clear();
    std::size_t at = 0;
    for (const auto& e : g.edges) {
      std::int32_t m = 0;
      for (std::int32_t i = 0; i < e.mult; ++i, ++at)
        if (u[at] <= pi) ++m;
      if (m > 0) kept.edges.push_back({e.u, e.v, m});
    }
    out.push_back(giant_stats_rigc(kept, rigc_components(kept), l_degrees));
  }
  return out;
}

ComsizeCheck sizebiased_comsize_check(const std::vector<CommunityGraph>& communities, double pi,
                                      Rng& rng, std::int64_t replicas) {
  require_probability(pi);
  if (communities.empty()) throw Error(ErrorCode::EmptySupport, "no communities");
  if (replicas < 1) throw Error(ErrorCode::OutOfDomain, "replicas must be at least 1");
  ComsizeCheck out;

  std::map<int, double> biased;
  double total = 0.0;
  for (const auto& c : build_com_pi(communities, pi, rng)) {
    biased[c.n() - 1] += c.n();
    total += c.n();
  }
  for (auto& [k, w] : biased) out.from_com_pi[k] = w / total;

  std::vector<std::int64_t> offset{0};
  for (const auto& c : communities) offset.push_back(offset.back() + c.n());
  std::uniform_int_distribution<std::int64_t> role(0, offset.back() - 1);
  std::bernoulli_distribution keep(pi);
  std::map<int, std::int64_t> counts;
  UnionFind uf;
  for (std::int64_t r = 0; r < replicas; ++r) {
    const auto j = role(rng);
    const auto a = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), j) - offset.begin() - 1);
    const auto& c = communities[a];
    uf.reset(static_cast<std::size_t>(c.n()));
    for (const auto& [x, y] : c.edges())
      if (keep(rng)) uf.unite(x, y);
    ++counts[static_cast<int>(uf.component_size(static_cast<std::uint32_t>(j - offset[a]))) - 1];
  }
  for (const auto& [k, n] : counts)
    out.from_uniform_role[k] = static_cast<double>(n) / static_cast<double>(replicas);
  out.distance = total_variation(out.from_com_pi, out.from_uniform_role);
  return out;
}

}  // namespace rigc
