#include "rigc/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rigc/error.hpp"

namespace rigc {

namespace {

constexpr double kRenormalizeSlack = 1e-9;
constexpr double kInverseSlack = 1e-14;
constexpr int kBisectionIterations = 200;

}  // namespace

Pmf::Pmf() : entries_{{0, 1.0}} {}

double Pmf::prob(int k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, int v) { return e.first < v; });
  return (it != entries_.end() && it->first == k) ? it->second : 0.0;
}

std::vector<double> Pmf::dense() const {
  std::vector<double> out(static_cast<std::size_t>(max_value()) + 1, 0.0);
  for (const auto& [k, w] : entries_) out[k] = w;
  return out;
}

Pmf pmf_new(const std::map<int, double>& weights) {
  std::vector<Pmf::Entry> entries;
  double total = 0.0;
  for (const auto& [k, w] : weights) {
    if (k < 0) throw Error(ErrorCode::OutOfDomain, "pmf values must be nonnegative");
    if (w < 0.0 || std::isnan(w)) {
      std::ostringstream msg;
      msg << "weight " << w << " at value " << k;
      throw Error(ErrorCode::NegativeWeight, msg.str());
    }
    if (w > 0.0) {
      entries.emplace_back(k, w);
      total += w;
    }
  }
  if (entries.empty()) throw Error(ErrorCode::EmptySupport, "no positive weight");
  if (std::abs(total - 1.0) > kRenormalizeSlack) {
    std::ostringstream msg;
    msg << "weights sum to " << total;
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
  for (auto& e : entries) e.second /= total;
  return Pmf(std::move(entries));
}

Pmf point_mass(int k) { return pmf_new({{k, 1.0}}); }

double mean(const Pmf& p) {
  double m = 0.0;
  for (const auto& [k, w] : p.entries()) m += k * w;
  return m;
}

double factorial_moment2(const Pmf& p) {
  double m = 0.0;
  for (const auto& [k, w] : p.entries()) m += static_cast<double>(k) * (k - 1) * w;
  return m;
}

double second_moment(const Pmf& p) {
  double m = 0.0;
  for (const auto& [k, w] : p.entries()) m += static_cast<double>(k) * k * w;
  return m;
}

Pmf size_bias(const Pmf& p) {
  const double m = mean(p);
  if (m <= 0.0) throw Error(ErrorCode::ZeroMean, "cannot size-bias a law with zero mean");
  std::map<int, double> out;
  for (const auto& [k, w] : p.entries())
    if (k > 0) out[k] = k * w / m;
  return pmf_new(out);
}

Pmf shift_down_one(const Pmf& p) {
  if (p.min_value() == 0)
    throw Error(ErrorCode::SupportContainsZero, "cannot shift a law with mass at zero");
  std::map<int, double> out;
  for (const auto& [k, w] : p.entries()) out[k - 1] = w;
  return pmf_new(out);
}

Pmf tilted(const Pmf& p) { return shift_down_one(size_bias(p)); }

double gf_eval(const Pmf& p, double z) {
  if (!(z >= 0.0 && z <= 1.0))
    throw Error(ErrorCode::OutOfDomain, "generating function argument outside [0,1]");
  double s = 0.0;
  for (const auto& [k, w] : p.entries()) s += w * std::pow(z, k);
  return s;
}

double gf_derivative(const Pmf& p, double z) {
  if (!(z >= 0.0 && z <= 1.0))
    throw Error(ErrorCode::OutOfDomain, "generating function argument outside [0,1]");
  double s = 0.0;
  for (const auto& [k, w] : p.entries())
    if (k > 0) s += k * w * std::pow(z, k - 1);
  return s;
}

double gf_inverse(const Pmf& p, double y) {
  const double g0 = p.prob(0);
  if (g0 >= 1.0) throw Error(ErrorCode::OutOfRange, "generating function of a point mass at 0");
  if (y < g0 - kInverseSlack || y > 1.0 + kInverseSlack) {
    std::ostringstream msg;
    msg << "value " << y << " outside [" << g0 << ", 1]";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  if (y <= g0) return 0.0;
  if (y >= 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kBisectionIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = gf_eval(p, mid);
    if (g == y) return mid;
    if (g < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

WeightVector convolve(const WeightVector& a, const WeightVector& b) {
  if (a.empty() || b.empty()) return {};
  WeightVector out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Pmf convolve(const Pmf& a, const Pmf& b) {
  const WeightVector c = convolve(a.dense(), b.dense());
  std::map<int, double> out;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] > 0.0) out[static_cast<int>(k)] = c[k];
  return pmf_new(out);
}

WeightVector convolve_power(const WeightVector& w, int k, int max_value) {
  WeightVector result{1.0};
  for (int i = 0; i < k; ++i) {
    result = convolve(result, w);
    if (max_value >= 0 && result.size() > static_cast<std::size_t>(max_value) + 1)
      result.resize(static_cast<std::size_t>(max_value) + 1);
  }
  return result;
}

double total_variation(const std::map<int, double>& a, const std::map<int, double>& b) {
  double d = 0.0;
  for (const auto& [k, w] : a) {
    auto it = b.find(k);
    d += std::abs(w - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, w] : b)
    if (!a.contains(k)) d += w;
  return 0.5 * d;
}

double total_variation(const Pmf& a, const Pmf& b) {
  std::map<int, double> ma(a.entries().begin(), a.entries().end());
  std::map<int, double> mb(b.entries().begin(), b.entries().end());
  return total_variation(ma, mb);
}

Pmf empirical_pmf(std::span<const int> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySupport, "empty sample");
  std::map<int, double> counts;
  for (int v : values) counts[v] += 1.0;
  for (auto& [k, c] : counts) c /= static_cast<double>(values.size());
  return pmf_new(counts);
}

Pmf truncated_poisson(double lambda, int offset) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::OutOfDomain, "Poisson rate must be positive");
  std::map<int, double> out;
  double term = std::exp(-lambda);
  double cumulative = 0.0;
  for (int k = 0; cumulative < 1.0 - 1e-12 && k < 100000; ++k) {
    if (k > 0) term *= lambda / k;
    if (term > 0.0) out[k + offset] = term;
    cumulative += term;
  }
  for (auto& [k, w] : out) w /= cumulative;
  return pmf_new(out);
}

PmfSampler::PmfSampler(const Pmf& p) {
  std::vector<double> weights;
  for (const auto& [k, w] : p.entries()) {
    values_.push_back(k);
    weights.push_back(w);
  }
  dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
}

}  // namespace rigc
