#include "rigc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rigc/error.hpp"

namespace rigc {

ModelParams build_params(std::vector<int> l_degrees, std::vector<CommunityGraph> communities) {
  if (l_degrees.empty() || communities.empty())
    throw Error(ErrorCode::EmptySupport, "model needs at least one vertex on each side");
  std::int64_t left = 0;
  for (int d : l_degrees) {
    if (d < 1) throw Error(ErrorCode::ZeroDegree, "every l-degree must be at least 1");
    left += d;
  }
  std::int64_t right = 0;
  for (const auto& c : communities) right += c.n();
  if (left != right)
    throw Error(ErrorCode::HalfEdgeMismatch,
                std::to_string(left) + " l-half-edges vs " + std::to_string(right) + " r-half-edges");
  return ModelParams{std::move(l_degrees), std::move(communities), left};
}

ModelParams sample_params(const Pmf& l_pmf, const CommunityCatalog& catalog, std::int64_t target_n,
                          Rng& rng) {
  if (target_n < 1) throw Error(ErrorCode::OutOfDomain, "target N must be at least 1");
  if (l_pmf.min_value() < 1) throw Error(ErrorCode::ZeroDegree, "l-degree law puts mass on 0");
  const auto target_h =
      static_cast<std::int64_t>(std::ceil(static_cast<double>(target_n) * mean(l_pmf) - 1e-9));

  CatalogSampler draw_community(catalog);
  std::vector<CommunityGraph> communities;
  std::int64_t h = 0;
  while (h < std::max<std::int64_t>(target_h, 1)) {
    communities.push_back(draw_community(rng));
    h += communities.back().n();
  }

  PmfSampler draw_degree(l_pmf);
  std::vector<int> degrees;
  std::int64_t sum = 0;
  while (sum < h) {
    degrees.push_back(draw_degree(rng));
    sum += degrees.back();
  }
  if (sum > h) {
    const std::int64_t excess = sum - h;
    degrees.back() = static_cast<int>(std::max<std::int64_t>(1, degrees.back() - excess));
    sum = std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  }
  while (sum < h) {
    degrees.push_back(1);
    ++sum;
  }
  return build_params(std::move(degrees), std::move(communities));
}

HalfEdgeLayout HalfEdgeLayout::from_params(const ModelParams& params) {
  HalfEdgeLayout layout;
  layout.l_offset.reserve(params.n() + 1);
  layout.l_offset.push_back(0);
  for (std::size_t v = 0; v < params.n(); ++v) {
    for (int i = 0; i < params.l_degrees[v]; ++i) layout.l_owner.push_back(static_cast<std::int32_t>(v));
    layout.l_offset.push_back(static_cast<std::int32_t>(layout.l_owner.size()));
  }
  layout.r_offset.reserve(params.m() + 1);
  layout.r_offset.push_back(0);
  for (std::size_t a = 0; a < params.m(); ++a) {
    for (int i = 0; i < params.communities[a].n(); ++i) layout.r_owner.push_back(static_cast<std::int32_t>(a));
    layout.r_offset.push_back(static_cast<std::int32_t>(layout.r_owner.size()));
  }
  return layout;
}

BcmGraph::BcmGraph(HalfEdgeLayout layout, std::vector<std::int32_t> r_to_l)
    : layout_(std::move(layout)), r_to_l_(std::move(r_to_l)) {
  const auto h = layout_.half_edges();
  if (static_cast<std::int64_t>(layout_.r_owner.size()) != h ||
      static_cast<std::int64_t>(r_to_l_.size()) != h)
    throw Error(ErrorCode::InconsistentMatching, "matching size differs from half-edge count");
  l_to_r_.assign(static_cast<std::size_t>(h), -1);
  for (std::int32_t y = 0; y < static_cast<std::int32_t>(h); ++y) {
    const auto x = r_to_l_[y];
    if (x < 0 || x >= h || l_to_r_[x] != -1)
      throw Error(ErrorCode::InconsistentMatching, "matching is not a bijection");
    l_to_r_[x] = y;
  }
}

std::int32_t BcmGraph::role_owner(std::size_t community, int role) const {
  return layout_.l_owner[r_to_l_[layout_.r_offset[community] + role]];
}

BcmGraph generate_bcm(const ModelParams& params, Rng& rng) {
  HalfEdgeLayout layout = HalfEdgeLayout::from_params(params);
  std::vector<std::int32_t> perm(static_cast<std::size_t>(params.half_edges));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  // perm[x] is the r-half-edge paired with l-half-edge x.
  std::vector<std::int32_t> r_to_l(perm.size());
  for (std::size_t x = 0; x < perm.size(); ++x) r_to_l[perm[x]] = static_cast<std::int32_t>(x);
  return BcmGraph(std::move(layout), std::move(r_to_l));
}

std::int64_t RigcGraph::edge_count() const {
  std::int64_t total = 0;
  for (const auto& e : edges) total += e.mult;
  return total;
}

std::vector<std::int32_t> RigcGraph::projected_degrees() const {
  std::vector<std::int32_t> deg(static_cast<std::size_t>(n_vertices), 0);
  for (const auto& e : edges) {
    if (e.u == e.v) {
      deg[e.u] += 2 * e.mult;
    } else {
      deg[e.u] += e.mult;
      deg[e.v] += e.mult;
    }
  }
  return deg;
}

RigcGraph RigcGraph::from_instances(std::int32_t n,
                                    std::vector<std::pair<std::int32_t, std::int32_t>> pairs) {
  for (auto& [u, v] : pairs)
    if (u > v) std::swap(u, v);
  std::sort(pairs.begin(), pairs.end());
  RigcGraph g;
  g.n_vertices = n;
  for (const auto& [u, v] : pairs) {
    if (!g.edges.empty() && g.edges.back().u == u && g.edges.back().v == v)
      ++g.edges.back().mult;
    else
      g.edges.push_back(MultiEdge{u, v, 1});
  }
  return g;
}

RigcGraph project_rigc(const BcmGraph& bcm, const std::vector<CommunityGraph>& communities) {
  const auto& layout = bcm.layout();
  if (communities.size() != layout.m())
    throw Error(ErrorCode::InconsistentMatching, "community count differs from r-vertex count");
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::size_t a = 0; a < communities.size(); ++a) {
    if (communities[a].n() != layout.r_offset[a + 1] - layout.r_offset[a])
      throw Error(ErrorCode::InconsistentMatching, "community size differs from r-degree");
    for (const auto& [j1, j2] : communities[a].edges())
      pairs.emplace_back(bcm.role_owner(a, j1), bcm.role_owner(a, j2));
  }
  return RigcGraph::from_instances(static_cast<std::int32_t>(layout.n()), std::move(pairs));
}

RigcGraph contract_to_cm(const BcmGraph& bcm) {
  const auto& layout = bcm.layout();
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(layout.m());
  for (std::size_t a = 0; a < layout.m(); ++a) {
    if (layout.r_offset[a + 1] - layout.r_offset[a] != 2)
      throw Error(ErrorCode::NotTwoRegularRight, "r-vertex " + std::to_string(a) + " does not have degree 2");
    pairs.emplace_back(bcm.role_owner(a, 0), bcm.role_owner(a, 1));
  }
  return RigcGraph::from_instances(static_cast<std::int32_t>(layout.n()), std::move(pairs));
}

}  // namespace rigc
