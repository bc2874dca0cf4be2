#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rigc/model.hpp"

namespace rigc {

/// Partition of vertices into connected components. Labels are assigned in
/// order of each component's smallest vertex id.
struct ComponentLabeling {
  std::vector<std::int32_t> label;
  std::vector<std::int64_t> sizes;

  std::size_t count() const { return sizes.size(); }
};

/// Components of the projected graph; self-loops and parallel edges do not
/// affect connectivity.
ComponentLabeling rigc_components(const RigcGraph& g);

/// Components of the bipartite graph over l-vertices 0..N-1 followed by
/// r-vertices N..N+M-1.
ComponentLabeling bcm_components(const BcmGraph& bcm);

struct GiantStats {
  std::int64_t n_vertices = 0;
  std::int32_t giant_label = -1;
  double c1_fraction = 0.0;
  double c2_fraction = 0.0;
  /// (l-degree k, projected degree d) -> share of all N vertices inside C1.
  std::map<std::pair<int, int>, double> joint_in_giant;
  double edges_in_giant_per_N = 0.0;
};

struct BcmGiantStats {
  std::int32_t giant_label = -1;
  double lhs_fraction = 0.0;
  double rhs_fraction = 0.0;
  std::map<int, double> lhs_degk;
  std::map<int, double> rhs_degk;
  double edges_per_N = 0.0;
  double combined_fraction = 0.0;
  double second_fraction = 0.0;  ///< |C2,b| / (N + M)
};

/// Index of the largest entry of `sizes`; ties go to the lowest index.
std::int32_t largest_label(const std::vector<std::int64_t>& sizes);

/// C1 is the component with the most l-vertices.
GiantStats giant_stats_rigc(const RigcGraph& g, const ModelParams& params);
GiantStats giant_stats_rigc(const RigcGraph& g, const ComponentLabeling& comps,
                            const std::vector<int>& l_degrees);

/// C1,b is the component with the most vertices in total.
BcmGiantStats giant_stats_bcm(const BcmGraph& bcm, const ModelParams& params);
BcmGiantStats giant_stats_bcm(const BcmGraph& bcm, const ComponentLabeling& comps);

}  // namespace rigc
