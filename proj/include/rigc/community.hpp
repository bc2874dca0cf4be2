#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rigc/pmf.hpp"
#include "rigc/rng.hpp"

namespace rigc {

/// Largest vertex count for which isomorphism classes are computed exactly.
inline constexpr int kExactIsomorphismCap = 8;
/// Largest edge count for exhaustive bond-percolation enumeration (2^22 subsets).
inline constexpr int kEnumerationEdgeCap = 22;

/// Simple, finite, connected, labeled graph. Vertices are 0..n-1 internally;
/// the JSON form uses labels 1..n. Edges are stored as (u, v) with u < v, sorted.
class CommunityGraph {
 public:
  using Edge = std::pair<int, int>;

  /// Throws InvalidGraph unless the result is simple and connected.
  CommunityGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  friend bool operator==(const CommunityGraph&, const CommunityGraph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
};

CommunityGraph complete_graph(int n);
/// Path on n vertices (P3 is the path 0-1-2).
CommunityGraph path_graph(int n);
CommunityGraph star_graph(int n);
CommunityGraph cycle_graph(int n);
/// Parses "K<n>", "P<n>", "S<n>" or "C<n>".
CommunityGraph named_graph(const std::string& name);

/// Isomorphism-class key. Exact keys ("n:code") come from the minimum edge-set
/// encoding over all vertex permutations; graphs above the exact cap receive a
/// heuristic key ("~n:m:degrees") that can collide for non-isomorphic graphs.
struct CommunityKey {
  std::string text;
  bool exact = true;
  auto operator<=>(const CommunityKey&) const = default;
};

/// Exact key; throws TooLargeForExactIsomorphism when n > kExactIsomorphismCap.
CommunityKey canonical_key(const CommunityGraph& g);
/// Exact key when possible, otherwise the heuristic (n, |E|, degree sequence) key.
CommunityKey community_key(const CommunityGraph& g);

/// nu(c | H): number of vertices with community degree c.
std::map<int, int> degree_census(const CommunityGraph& g);

/// Frequency-weighted collection of pairwise non-isomorphic community graphs.
class CommunityCatalog {
 public:
  struct Item {
    CommunityGraph graph;
    double weight;
    CommunityKey key;
  };

  /// Throws DuplicateCommunity on repeated isomorphism classes and NotNormalized
  /// when the weights are more than 1e-9 away from summing to one.
  static CommunityCatalog create(std::vector<std::pair<CommunityGraph, double>> items);
  /// Merges isomorphic entries and normalizes arbitrary positive weights.
  static CommunityCatalog from_counts(const std::vector<std::pair<CommunityGraph, double>>& items);
  /// Empirical catalog of a community list.
  static CommunityCatalog empirical(const std::vector<CommunityGraph>& communities);

  const std::vector<Item>& items() const { return items_; }
  /// Weight of the class with this key, zero if absent.
  double weight(const CommunityKey& key) const;

 private:
  std::vector<Item> items_;
  std::map<CommunityKey, std::size_t> index_;
};

/// q: law of the community size |H|.
Pmf catalog_size_pmf(const CommunityCatalog& catalog);
/// rho: law of the community degree of a uniformly chosen community vertex.
Pmf catalog_cdeg_pmf(const CommunityCatalog& catalog);
/// E|E(H)|.
double catalog_mean_edges(const CommunityCatalog& catalog);

/// Draws catalog items by weight.
class CatalogSampler {
 public:
  explicit CatalogSampler(const CommunityCatalog& catalog);
  const CommunityGraph& operator()(Rng& rng);

 private:
  const CommunityCatalog* catalog_;
  std::discrete_distribution<std::size_t> dist_;
};

struct PercolationOutcome {
  /// Sorted component keys; a multiset.
  std::vector<CommunityKey> components;
  double probability;
};

struct PercolationProfile {
  double pi;
  std::vector<PercolationOutcome> outcomes;
  /// E over outcomes of (average over vertices of component size) - 1.
  double mean_root_component_minus_one;
  double mean_component_count;
};

/// Exhaustive bond-percolation enumeration of one community. All 2^|E| edge
/// subsets are visited once; results are stored grouped by the number of kept
/// edges so any retention probability is evaluated exactly afterwards.
class PercolationTable {
 public:
  /// Throws TooManyEdges when |E| > kEnumerationEdgeCap.
  explicit PercolationTable(const CommunityGraph& g);

  PercolationProfile profile(double pi) const;
  double mean_root_component_minus_one(double pi) const;
  double mean_component_count(double pi) const;
  /// A graph of each component class that occurs.
  const std::map<CommunityKey, CommunityGraph>& representatives() const { return reps_; }

  int vertex_count() const { return n_; }

 private:
  std::vector<double> weights(double pi) const;

  int n_;
  int edges_;
  std::vector<std::vector<CommunityKey>> outcome_keys_;
  std::vector<std::vector<double>> outcome_counts_;  // [outcome][kept edges]
  std::vector<double> root_sum_;                     // [kept edges]
  std::vector<double> component_sum_;                // [kept edges]
  std::map<CommunityKey, CommunityGraph> reps_;
};

PercolationProfile percolate_enumerate(const CommunityGraph& g, double pi);

/// Keeps each edge with probability pi and returns the connected pieces as new
/// communities, renumbered 1..m in original vertex order and ordered by their
/// smallest original vertex.
std::vector<CommunityGraph> percolate_sample(const CommunityGraph& g, double pi, Rng& rng);

/// Monte Carlo fallback for communities beyond the enumeration cap.
struct PercolationEstimate {
  double mean_root_component_minus_one;
  double standard_error;
};
PercolationEstimate percolate_monte_carlo(const CommunityGraph& g, double pi, int replicas,
                                          Rng& rng);

}  // namespace rigc

template <>
struct std::hash<rigc::CommunityKey> {
  std::size_t operator()(const rigc::CommunityKey& k) const noexcept {
    return std::hash<std::string>{}(k.text);
  }
};
