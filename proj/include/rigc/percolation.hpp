#pragma once

#include <map>
#include <vector>

#include "rigc/community.hpp"
#include "rigc/components.hpp"
#include "rigc/model.hpp"
#include "rigc/theory.hpp"

namespace rigc {

/// Keeps each unit of edge multiplicity (self-loops included) with probability pi.
RigcGraph percolate_rigc_graph(const RigcGraph& g, double pi, Rng& rng);

/// Percolates every community independently and lists the resulting pieces.
/// The total vertex count, hence the half-edge balance, is unchanged.
std::vector<CommunityGraph> build_com_pi(const std::vector<CommunityGraph>& communities, double pi,
                                         Rng& rng);

struct PercolatedCatalog {
  double pi = 1.0;
  CommunityCatalog catalog_pi;
  double mean_size_pi = 0.0;
};

/// Limiting community law after percolation, computed exactly by enumeration.
/// Throws TooManyEdges for communities above the enumeration cap.
PercolatedCatalog mu_pi_limit(const CommunityCatalog& catalog, double pi);

/// giant_prediction for (p, mu(pi)).
GiantPrediction percolated_prediction(const Pmf& p, const CommunityCatalog& catalog, double pi);

/// Exact evaluation of the percolation criticality function
/// f(pi) = E[p~] sum_H mu_H |H| m_H(pi) / E[D^r] - 1, where m_H(pi) is the
/// expected size minus one of the percolated component of a uniform vertex of H.
class CriticalFunction {
 public:
  CriticalFunction(const Pmf& p, const CommunityCatalog& catalog);
  double operator()(double pi) const;

 private:
  double mean_p_tilde_;
  double mean_r_;
  std::vector<std::pair<double, PercolationTable>> terms_;  // (mu_H |H|, table)
};

struct CriticalPi {
  double pi_c = 0.0;
  double lo = 0.0;  ///< f(lo) <= 0
  double hi = 1.0;  ///< f(hi) > 0
  int iterations = 0;
};

/// Bisection for the root of CriticalFunction; the bracket is reported
/// without deciding the behaviour at pi_c itself. Throws NotSupercritical when
/// the unpercolated model is not supercritical.
CriticalPi critical_pi(const Pmf& p, const CommunityCatalog& catalog, double tol = 1e-10);

/// Harris coupling: one uniform per edge instance; at each grid value the
/// instances with U <= pi are kept. Giant stats are nondecreasing along the grid.
std::vector<GiantStats> harris_sweep(const RigcGraph& g, const std::vector<int>& l_degrees,
                                     const std::vector<double>& pi_grid, Rng& rng);

struct ComsizeCheck {
  std::map<int, double> from_com_pi;       ///< size-biased Com(pi) sizes minus one
  std::map<int, double> from_uniform_role;  ///< component of a uniform role, minus one
  double distance = 0.0;                    ///< total variation between the two
};

/// Two estimates of the law of the size-biased percolated community size minus
/// one: (a) size-biasing the sizes of one Com(pi) realization, (b) percolating
/// the community of a uniform community role afresh in each of `replicas` trials.
ComsizeCheck sizebiased_comsize_check(const std::vector<CommunityGraph>& communities, double pi,
                                      Rng& rng, std::int64_t replicas);

}  // namespace rigc
