#pragma once

#include <cstdint>
#include <map>

#include "rigc/community.hpp"
#include "rigc/model.hpp"
#include "rigc/pmf.hpp"

namespace rigc {

/// Limiting laws of a model: p (l-degrees), the catalog mu and everything
/// derived from them.
struct TheoryInputs {
  Pmf p;
  CommunityCatalog catalog;
  Pmf q;        ///< community size law
  Pmf rho;      ///< community degree of a uniform community vertex
  Pmf p_tilde;  ///< forward l-degree, p size-biased minus one
  Pmf q_tilde;  ///< forward r-degree
  double gamma = 0.0;  ///< E[D^l] / E[D^r]

  /// Throws ZeroMean when either side has mean zero.
  static TheoryInputs make(Pmf p, CommunityCatalog catalog);
};

/// Inputs built from the empirical laws of a concrete parameter set.
TheoryInputs empirical_inputs(const ModelParams& params);

struct GiantPrediction {
  double eta_l = 1.0;
  double eta_r = 1.0;
  double xi_l = 0.0;
  double xi_r = 0.0;
  bool supercritical = false;
  double criticality_value = 0.0;
};

/// E[p~] E[q~].
double criticality_value(const TheoryInputs& in);

/// G_{q~}(G_{p~}(x)).
double composite_gf(const TheoryInputs& in, double x);

/// Smallest fixed point of composite_gf in [0,1]. Throws ExcludedRegime when
/// p_2 + q_2 = 2 and NonConvergence when the residual stays above 1e-10.
double solve_eta_l(const TheoryInputs& in);

GiantPrediction giant_prediction(const TheoryInputs& in);

/// Limiting share of vertices with l-degree k and projected degree d in the giant.
double deg_in_giant(const TheoryInputs& in, const GiantPrediction& pred, int k, int d);
/// All nonzero A(k, d) with d <= d_max; d_max < 0 means the full support.
std::map<std::pair<int, int>, double> deg_in_giant_table(const TheoryInputs& in,
                                                          const GiantPrediction& pred,
                                                          int d_max = -1);

/// gamma * sum_H mu_H |E(H)| (1 - eta_r^|H|).
double edges_in_giant_rigc(const TheoryInputs& in, const GiantPrediction& pred);
/// 1/2 sum_{d <= d_max} d sum_k A(k, d); d_max < 0 means the full support.
double edges_in_giant_via_Akd(const TheoryInputs& in, const GiantPrediction& pred, int d_max = -1);

struct BcmPrediction {
  double lhs_fraction = 0.0;
  double rhs_fraction = 0.0;
  std::map<int, double> lhs_degk;
  std::map<int, double> rhs_degk;
  double edges_per_N = 0.0;
  double combined_fraction = 0.0;
};

BcmPrediction bcm_predictions(const TheoryInputs& in, const GiantPrediction& pred);

/// q~(0) = q_1 / E[D^r], the lower end of the domain of h2.
double q_tilde_zero(const TheoryInputs& in);

double h1(const TheoryInputs& in, double z);
/// Throws OutOfDomain for z outside [q~(0), 1].
double h2(const TheoryInputs& in, double z);
double Hfun(const TheoryInputs& in, double z);

/// -log c + log G^{-1}_{q*}(c) for c in (0, 1].
double tau_theory(const TheoryInputs& in, double c);

/// Inverse of a generating function evaluated along a monotone sequence of
/// arguments. Newton steps start from the previous root, with bisection as a
/// fallback, which makes long sweeps much cheaper than repeated bisection.
class GfInverter {
 public:
  explicit GfInverter(Pmf p);
  double operator()(double y);

 private:
  Pmf p_;
  double last_ = 1.0;
};

/// 1 - exp(-t*) is the fixed point; t* = -log eta_l.
double giant_time(const GiantPrediction& pred);

enum class Side { Left, Right };

struct SurvivalEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t survivors = 0;
  std::int64_t replicas = 0;
};

/// Alternating branching process started from one vertex on `side`. A replica
/// survives when its total progeny reaches size_cap or it is still alive after
/// generation_cap generations. Replica i uses its own stream derived from
/// (seed, i), so the result does not depend on the thread count.
SurvivalEstimate bp_survival_sim(const TheoryInputs& in, Side side, std::int64_t replicas,
                                 int generation_cap, std::int64_t size_cap, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace rigc
