#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rigc/community.hpp"
#include "rigc/pmf.hpp"
#include "rigc/rng.hpp"

namespace rigc {

/// l-degrees (group memberships per individual) and the community list, one
/// community per r-vertex. Both sides carry the same number of half-edges.
struct ModelParams {
  std::vector<int> l_degrees;
  std::vector<CommunityGraph> communities;
  std::int64_t half_edges = 0;

  std::size_t n() const { return l_degrees.size(); }
  std::size_t m() const { return communities.size(); }
};

/// Throws ZeroDegree, HalfEdgeMismatch, or EmptySupport for empty sequences.
ModelParams build_params(std::vector<int> l_degrees, std::vector<CommunityGraph> communities);

/// Communities are drawn iid until their total size reaches
/// ceil(target_n * mean(l_pmf)); l-degrees are then drawn until their running sum
/// covers it, with the last degree trimmed so both sides balance exactly.
ModelParams sample_params(const Pmf& l_pmf, const CommunityCatalog& catalog, std::int64_t target_n,
                          Rng& rng);

/// Half-edge indexing shared by the bipartite structures. l-half-edges of vertex
/// v are l_offset[v]..l_offset[v+1]-1; r-half-edge (a, role) has index
/// r_offset[a] + role.
struct HalfEdgeLayout {
  std::vector<std::int32_t> l_offset;
  std::vector<std::int32_t> r_offset;
  std::vector<std::int32_t> l_owner;
  std::vector<std::int32_t> r_owner;

  static HalfEdgeLayout from_params(const ModelParams& params);
  std::int64_t half_edges() const { return static_cast<std::int64_t>(l_owner.size()); }
  std::size_t n() const { return l_offset.size() - 1; }
  std::size_t m() const { return r_offset.size() - 1; }
};

/// Bipartite multigraph given by a bijection between l- and r-half-edges.
class BcmGraph {
 public:
  /// r_to_l[y] is the l-half-edge matched with r-half-edge y. Throws
  /// InconsistentMatching unless it is a bijection of the right size.
  BcmGraph(HalfEdgeLayout layout, std::vector<std::int32_t> r_to_l);

  const HalfEdgeLayout& layout() const { return layout_; }
  const std::vector<std::int32_t>& r_to_l() const { return r_to_l_; }
  std::int32_t l_partner(std::int32_t r_half_edge) const { return r_to_l_[r_half_edge]; }
  std::int32_t r_partner(std::int32_t l_half_edge) const { return l_to_r_[l_half_edge]; }
  /// l-vertex holding role `role` of community a.
  std::int32_t role_owner(std::size_t community, int role) const;

 private:
  HalfEdgeLayout layout_;
  std::vector<std::int32_t> r_to_l_;
  std::vector<std::int32_t> l_to_r_;
};

/// Uniform matching: the r-half-edge sequence is uniformly permuted and paired
/// positionally with the l-half-edges.
BcmGraph generate_bcm(const ModelParams& params, Rng& rng);

/// Multigraph on the l-vertices; pairs are (u, v) with u <= v and u == v a
/// self-loop. Sorted by (u, v).
struct RigcGraph {
  struct MultiEdge {
    std::int32_t u;
    std::int32_t v;
    std::int32_t mult;
    friend bool operator==(const MultiEdge&, const MultiEdge&) = default;
  };

  std::int32_t n_vertices = 0;
  std::vector<MultiEdge> edges;

  /// Total multiplicity mass.
  std::int64_t edge_count() const;
  /// 2 X(v,v) + sum over w != v of X(v,w).
  std::vector<std::int32_t> projected_degrees() const;
  /// Aggregates (u, v) instances, one per unit of multiplicity.
  static RigcGraph from_instances(std::int32_t n, std::vector<std::pair<std::int32_t, std::int32_t>> pairs);
};

/// Copies every community edge onto the l-vertices holding its two roles.
RigcGraph project_rigc(const BcmGraph& bcm, const std::vector<CommunityGraph>& communities);

/// Replaces each r-vertex of degree 2 by an edge between its two l-neighbours.
RigcGraph contract_to_cm(const BcmGraph& bcm);

}  // namespace rigc
