#include "rigc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rigc/error.hpp"
#include "rigc/parallel.hpp"
#include "rigc/rng.hpp"

namespace rigc {

namespace {

constexpr double kExcludedTolerance = 1e-12;
constexpr double kIncrementStop = 1e-13;
constexpr long kMaxIterations = 1'000'000;
constexpr double kResidualTolerance = 1e-10;

void require_supercritical(const GiantPrediction& pred) {
  if (!pred.supercritical)
    throw Error(ErrorCode::NotSupercritical,
                "criticality value " + std::to_string(pred.criticality_value) + " is not above 1");
}

double fixed_point_gap(const TheoryInputs& in, double x) { return composite_gf(in, x) - x; }

}  // namespace

TheoryInputs TheoryInputs::make(Pmf p, CommunityCatalog catalog) {
  TheoryInputs in;
  in.q = catalog_size_pmf(catalog);
  in.rho = catalog_cdeg_pmf(catalog);
  in.p_tilde = tilted(p);
  in.q_tilde = tilted(in.q);
  in.gamma = mean(p) / mean(in.q);
  in.p = std::move(p);
  in.catalog = std::move(catalog);
  return in;
}

TheoryInputs empirical_inputs(const ModelParams& params) {
  return TheoryInputs::make(empirical_pmf(params.l_degrees),
                            CommunityCatalog::empirical(params.communities));
}

double criticality_value(const TheoryInputs& in) { return mean(in.p_tilde) * mean(in.q_tilde); }

double composite_gf(const TheoryInputs& in, double x) {
  return gf_eval(in.q_tilde, gf_eval(in.p_tilde, x));
}

double solve_eta_l(const TheoryInputs& in) {
  if (std::abs(in.p.prob(2) + in.q.prob(2) - 2.0) <= kExcludedTolerance)
    throw Error(ErrorCode::ExcludedRegime, "p_2 + q_2 = 2 is excluded: we further assume that p₂+q₂<2");
  if (criticality_value(in) <= 1.0) return 1.0;

  double x = 0.0;
  for (long it = 0; it < kMaxIterations; ++it) {
    const double next = composite_gf(in, x);
    const double step = next - x;
    x = next;
    if (step < kIncrementStop) break;
  }
  if (fixed_point_gap(in, x) == 0.0) return x;

  // Slow contraction near criticality: bracket the smallest root between x and
  // the minimiser of the convex gap function, then bisect.
  double lo = x;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (fixed_point_gap(in, m1) < fixed_point_gap(in, m2))
      hi = m2;
    else
      lo = m1;
  }
  const double x_min = 0.5 * (lo + hi);
  if (fixed_point_gap(in, x_min) < 0.0 && fixed_point_gap(in, x) >= 0.0) {
    lo = x;
    hi = x_min;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (fixed_point_gap(in, mid) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    x = lo;
  }
  if (std::abs(fixed_point_gap(in, x)) > kResidualTolerance)
    throw Error(ErrorCode::NonConvergence, "fixed-point residual above 1e-10");
  return x;
}

GiantPrediction giant_prediction(const TheoryInputs& in) {
  GiantPrediction pred;
  pred.criticality_value = criticality_value(in);
  pred.eta_l = solve_eta_l(in);
  pred.supercritical = pred.criticality_value > 1.0;
  pred.eta_r = gf_eval(in.p_tilde, pred.eta_l);
  pred.xi_l = 1.0 - gf_eval(in.p, pred.eta_l);
  pred.xi_r = 1.0 - gf_eval(in.q, pred.eta_r);
  return pred;
}

double deg_in_giant(const TheoryInputs& in, const GiantPrediction& pred, int k, int d) {
  require_supercritical(pred);
  const double pk = in.p.prob(k);
  if (pk == 0.0 || d < 0) return 0.0;
  const auto table = deg_in_giant_table(in, pred, d);
  const auto it = table.find({k, d});
  return it == table.end() ? 0.0 : it->second;
}

std::map<std::pair<int, int>, double> deg_in_giant_table(const TheoryInputs& in,
                                                          const GiantPrediction& pred, int d_max) {
  require_supercritical(pred);
  const int k_max = in.p.max_value();
  if (d_max < 0) d_max = k_max * in.rho.max_value();

  WeightVector rho = in.rho.dense();
  WeightVector w(rho.size(), 0.0);
  const double mean_r = mean(in.q);
  for (const auto& item : in.catalog.items()) {
    const double factor = item.weight * std::pow(pred.eta_r, item.graph.n() - 1) / mean_r;
    for (const auto& [c, count] : degree_census(item.graph)) w[c] += count * factor;
  }

  std::map<std::pair<int, int>, double> out;
  WeightVector rho_k{1.0};
  WeightVector w_k{1.0};
  for (int k = 1; k <= k_max; ++k) {
    rho_k = convolve(rho_k, rho);
    w_k = convolve(w_k, w);
    if (static_cast<int>(rho_k.size()) > d_max + 1) rho_k.resize(d_max + 1);
    if (static_cast<int>(w_k.size()) > d_max + 1) w_k.resize(d_max + 1);
    const double pk = in.p.prob(k);
    if (pk == 0.0) continue;
    for (std::size_t d = 0; d < rho_k.size(); ++d) {
      const double a = pk * (rho_k[d] - (d < w_k.size() ? w_k[d] : 0.0));
      if (a != 0.0) out[{k, static_cast<int>(d)}] = a;
    }
  }
  return out;
}

double edges_in_giant_rigc(const TheoryInputs& in, const GiantPrediction& pred) {
  require_supercritical(pred);
  double s = 0.0;
  for (const auto& item : in.catalog.items())
    s += item.weight * item.graph.edge_count() * (1.0 - std::pow(pred.eta_r, item.graph.n()));
  return in.gamma * s;
}

double edges_in_giant_via_Akd(const TheoryInputs& in, const GiantPrediction& pred, int d_max) {
  double s = 0.0;
  for (const auto& [kd, a] : deg_in_giant_table(in, pred, d_max)) s += kd.second * a;
  return 0.5 * s;
}

BcmPrediction bcm_predictions(const TheoryInputs& in, const GiantPrediction& pred) {
  require_supercritical(pred);
  BcmPrediction out;
  out.lhs_fraction = pred.xi_l;
  out.rhs_fraction = pred.xi_r;
  for (const auto& [k, pk] : in.p.entries()) out.lhs_degk[k] = pk * (1.0 - std::pow(pred.eta_l, k));
  for (const auto& [k, qk] : in.q.entries()) out.rhs_degk[k] = qk * (1.0 - std::pow(pred.eta_r, k));
  out.edges_per_N = mean(in.p) * (1.0 - pred.eta_l * pred.eta_r);
  out.combined_fraction = (pred.xi_l + in.gamma * pred.xi_r) / (1.0 + in.gamma);
  return out;
}

double q_tilde_zero(const TheoryInputs& in) { return in.q_tilde.prob(0); }

double h1(const TheoryInputs& in, double z) { return mean(in.p) * z * gf_eval(in.p_tilde, z); }

double h2(const TheoryInputs& in, double z) {
  const double lo = q_tilde_zero(in);
  if (!(z <= 1.0) || z < lo - 1e-14)
    throw Error(ErrorCode::OutOfDomain, "h2 is defined on [q~(0), 1]");
  if (lo >= 1.0 || z >= 1.0) return mean(in.p) * std::min(z, 1.0);
  return mean(in.p) * z * gf_inverse(in.q_tilde, std::max(z, lo));
}

double Hfun(const TheoryInputs& in, double z) { return h2(in, z) - h1(in, z); }

double tau_theory(const TheoryInputs& in, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorCode::OutOfDomain, "tau is defined for c in (0,1]");
  return -std::log(c) + std::log(gf_inverse(size_bias(in.q), c));
}

GfInverter::GfInverter(Pmf p) : p_(std::move(p)) {}

double GfInverter::operator()(double y) {
  const double g0 = p_.prob(0);
  if (y >= 1.0) return last_ = 1.0;
  if (y <= g0) return last_ = 0.0;
  double x = last_;
  bool ok = false;
  for (int i = 0; i < 100; ++i) {
    const double g = gf_eval(p_, x) - y;
    if (std::abs(g) <= 1e-15) {
      ok = true;
      break;
    }
    const double d = gf_derivative(p_, x);
    if (!(d > 0.0)) break;
    const double next = x - g / d;
    if (!(next >= 0.0 && next <= 1.0)) break;
    if (std::abs(next - x) <= 1e-15) {
      x = next;
      ok = true;
      break;
    }
    x = next;
  }
  if (!ok || std::abs(gf_eval(p_, x) - y) > 1e-12) x = gf_inverse(p_, y);
  return last_ = x;
}

double giant_time(const GiantPrediction& pred) {
  require_supercritical(pred);
  return -std::log(pred.eta_l);
}

namespace {

/// Sum of n iid draws from p, via a chain of binomial splits over the support.
std::int64_t sum_of_draws(const Pmf& p, std::int64_t n, Rng& rng) {
  std::int64_t total = 0;
  double mass = 1.0;
  const auto& e = p.entries();
  for (std::size_t i = 0; i + 1 < e.size() && n > 0; ++i) {
    const double share = std::clamp(e[i].second / mass, 0.0, 1.0);
    const std::int64_t c = std::binomial_distribution<std::int64_t>(n, share)(rng);
    total += c * e[i].first;
    n -= c;
    mass -= e[i].second;
  }
  return total + n * e.back().first;
}

}  // namespace

SurvivalEstimate bp_survival_sim(const TheoryInputs& in, Side side, std::int64_t replicas,
                                 int generation_cap, std::int64_t size_cap, std::uint64_t seed,
                                 unsigned threads) {
  if (replicas < 1 || generation_cap < 1 || size_cap < 1)
    throw Error(ErrorCode::OutOfDomain, "replicas and caps must be at least 1");
  const Pmf& root = side == Side::Left ? in.p : in.q;
  const Pmf& odd = side == Side::Left ? in.q_tilde : in.p_tilde;
  const Pmf& even = side == Side::Left ? in.p_tilde : in.q_tilde;

  std::vector<char> survived(static_cast<std::size_t>(replicas), 0);
  parallel_for(survived.size(), threads, [&](std::size_t i) {
    Rng rng = make_stream(seed, i, StreamRole::BranchingProcess);
    std::int64_t alive = sum_of_draws(root, 1, rng);
    std::int64_t total = 1 + alive;
    for (int gen = 1; alive > 0; ++gen) {
      if (total >= size_cap || gen >= generation_cap) {
        survived[i] = 1;
        break;
      }
      alive = sum_of_draws(gen % 2 == 1 ? odd : even, alive, rng);
      total += alive;
    }
  });

  SurvivalEstimate out;
  out.replicas = replicas;
  for (char s : survived) out.survivors += s;
  const double r = static_cast<double>(replicas);
  out.estimate = static_cast<double>(out.survivors) / r;
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / r);
  return out;
}

}  // namespace rigc
