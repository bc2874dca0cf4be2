#include "rigc/components.hpp"

#include <algorithm>

#include "rigc/union_find.hpp"

namespace rigc {

namespace {

ComponentLabeling label_from(UnionFind& uf) {
  ComponentLabeling out;
  const auto n = uf.size();
  out.label.assign(n, -1);
  std::vector<std::int32_t> root_label(n, -1);
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto r = uf.find(v);
    if (root_label[r] < 0) {
      root_label[r] = static_cast<std::int32_t>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.label[v] = root_label[r];
    ++out.sizes[root_label[r]];
  }
  return out;
}

}  // namespace

ComponentLabeling rigc_components(const RigcGraph& g) {
  UnionFind uf(static_cast<std::size_t>(g.n_vertices));
  for (const auto& e : g.edges)
    if (e.u != e.v) uf.unite(e.u, e.v);
  return label_from(uf);
}

ComponentLabeling bcm_components(const BcmGraph& bcm) {
  const auto& layout = bcm.layout();
  const auto n = static_cast<std::uint32_t>(layout.n());
  UnionFind uf(layout.n() + layout.m());
  for (std::int32_t y = 0; y < static_cast<std::int32_t>(layout.half_edges()); ++y)
    uf.unite(static_cast<std::uint32_t>(layout.l_owner[bcm.l_partner(y)]),
             n + static_cast<std::uint32_t>(layout.r_owner[y]));
  return label_from(uf);
}

std::int32_t largest_label(const std::vector<std::int64_t>& sizes) {
  std::int32_t best = -1;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (best < 0 || sizes[i] > sizes[best]) best = static_cast<std::int32_t>(i);
  return best;
}

GiantStats giant_stats_rigc(const RigcGraph& g, const ModelParams& params) {
  return giant_stats_rigc(g, rigc_components(g), params.l_degrees);
}

GiantStats giant_stats_rigc(const RigcGraph& g, const ComponentLabeling& comps,
                            const std::vector<int>& l_degrees) {
  GiantStats s;
  s.n_vertices = g.n_vertices;
  if (g.n_vertices == 0) return s;
  const double n = static_cast<double>(g.n_vertices);
  s.giant_label = largest_label(comps.sizes);
  std::int64_t second = 0;
  for (std::size_t i = 0; i < comps.sizes.size(); ++i)
    if (static_cast<std::int32_t>(i) != s.giant_label) second = std::max(second, comps.sizes[i]);
  s.c1_fraction = static_cast<double>(comps.sizes[s.giant_label]) / n;
  s.c2_fraction = static_cast<double>(second) / n;

  const auto deg = g.projected_degrees();
  std::map<std::pair<int, int>, std::int64_t> joint;
  for (std::int32_t v = 0; v < g.n_vertices; ++v)
    if (comps.label[v] == s.giant_label) ++joint[{l_degrees[v], deg[v]}];
  for (const auto& [kd, count] : joint) s.joint_in_giant[kd] = static_cast<double>(count) / n;

  std::int64_t edges = 0;
  for (const auto& e : g.edges)
    if (comps.label[e.u] == s.giant_label) edges += e.mult;
  s.edges_in_giant_per_N = static_cast<double>(edges) / n;
  return s;
}

BcmGiantStats giant_stats_bcm(const BcmGraph& bcm, const ModelParams& params) {
  (void)params;
  return giant_stats_bcm(bcm, bcm_components(bcm));
}

BcmGiantStats giant_stats_bcm(const BcmGraph& bcm, const ComponentLabeling& comps) {
  const auto& layout = bcm.layout();
  const auto n = layout.n();
  const auto m = layout.m();
  BcmGiantStats s;
  s.giant_label = largest_label(comps.sizes);
  const auto c1 = s.giant_label;
  std::int64_t second = 0;
  for (std::size_t i = 0; i < comps.sizes.size(); ++i)
    if (static_cast<std::int32_t>(i) != c1) second = std::max(second, comps.sizes[i]);

  std::int64_t lhs = 0;
  std::int64_t edges = 0;
  std::map<int, std::int64_t> lhs_k;
  for (std::size_t v = 0; v < n; ++v) {
    if (comps.label[v] != c1) continue;
    const int k = layout.l_offset[v + 1] - layout.l_offset[v];
    ++lhs;
    ++lhs_k[k];
    edges += k;
  }
  std::int64_t rhs = 0;
  std::map<int, std::int64_t> rhs_k;
  for (std::size_t a = 0; a < m; ++a) {
    if (comps.label[n + a] != c1) continue;
    ++rhs;
    ++rhs_k[layout.r_offset[a + 1] - layout.r_offset[a]];
  }
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  s.lhs_fraction = static_cast<double>(lhs) / dn;
  s.rhs_fraction = static_cast<double>(rhs) / dm;
  for (const auto& [k, c] : lhs_k) s.lhs_degk[k] = static_cast<double>(c) / dn;
  for (const auto& [k, c] : rhs_k) s.rhs_degk[k] = static_cast<double>(c) / dm;
  s.edges_per_N = static_cast<double>(edges) / dn;
  s.combined_fraction = static_cast<double>(lhs + rhs) / (dn + dm);
  s.second_fraction = static_cast<double>(second) / (dn + dm);
  return s;
}

}  // namespace rigc
