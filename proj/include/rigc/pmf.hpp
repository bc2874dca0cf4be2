#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace rigc {

/// Finite probability mass function on the nonnegative integers.
///
/// Entries are kept sorted by value with strictly positive weights summing to
/// one. Instances are immutable after construction.
class Pmf {
 public:
  using Entry = std::pair<int, double>;

  /// Point mass at zero.
  Pmf();

  const std::vector<Entry>& entries() const { return entries_; }
  double prob(int k) const;
  int min_value() const { return entries_.front().first; }
  int max_value() const { return entries_.back().first; }
  bool is_point_mass() const { return entries_.size() == 1; }

  /// Dense weights indexed by value, length max_value() + 1.
  std::vector<double> dense() const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  friend Pmf pmf_new(const std::map<int, double>& weights);
  explicit Pmf(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  std::vector<Entry> entries_;
};

/// Zero weights are dropped; a total within 1e-9 of one is renormalized.
Pmf pmf_new(const std::map<int, double>& weights);
Pmf point_mass(int k);

double mean(const Pmf& p);
double factorial_moment2(const Pmf& p);
double second_moment(const Pmf& p);

/// Weight k p_k / E[X] at k.
Pmf size_bias(const Pmf& p);
/// Moves the mass at k to k - 1; requires P(X = 0) = 0.
Pmf shift_down_one(const Pmf& p);
/// shift_down_one(size_bias(p)): the forward-degree law X~ = X* - 1.
Pmf tilted(const Pmf& p);

double gf_eval(const Pmf& p, double z);
double gf_derivative(const Pmf& p, double z);
/// z in [0,1] with gf_eval(p, z) = y, for y in [P(X=0), 1]. Bisection.
double gf_inverse(const Pmf& p, double y);

Pmf convolve(const Pmf& a, const Pmf& b);

/// Dense (sub-)probability weight vector indexed by value.
using WeightVector = std::vector<double>;

WeightVector convolve(const WeightVector& a, const WeightVector& b);
/// k-fold convolution; k = 0 gives the point mass at zero. Entries beyond
/// `max_value` are discarded when it is nonnegative.
WeightVector convolve_power(const WeightVector& w, int k, int max_value = -1);

/// Half the L1 distance between two laws (missing keys count as zero).
double total_variation(const std::map<int, double>& a, const std::map<int, double>& b);
double total_variation(const Pmf& a, const Pmf& b);

/// Empirical law of a sample of nonnegative integers.
Pmf empirical_pmf(std::span<const int> values);

/// Poisson(lambda) shifted by `offset`, truncated once the cumulative mass
/// reaches 1 - 1e-12 and renormalized.
Pmf truncated_poisson(double lambda, int offset = 0);

/// Draws values from a Pmf.
class PmfSampler {
 public:
  explicit PmfSampler(const Pmf& p);
  template <class Urbg>
  int operator()(Urbg& rng) {
    return values_[dist_(rng)];
  }

 private:
  std::vector<int> values_;
  std::discrete_distribution<std::size_t> dist_;
};

}  // namespace rigc
