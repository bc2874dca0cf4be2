#include "rigc/community.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rigc/error.hpp"
#include "rigc/union_find.hpp"

namespace rigc {

namespace {

int pair_bit(int a, int b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}

std::uint64_t raw_code(int n, const std::vector<CommunityGraph::Edge>& edges,
                       const std::vector<int>& perm) {
  (void)n;
  std::uint64_t code = 0;
  for (const auto& [u, v] : edges) code |= std::uint64_t{1} << pair_bit(perm[u], perm[v]);
  return code;
}

std::uint64_t minimal_code(int n, const std::vector<CommunityGraph::Edge>& edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = raw_code(n, edges, perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    best = std::min(best, raw_code(n, edges, perm));
  return best;
}

CommunityKey exact_key_cached(int n, const std::vector<CommunityGraph::Edge>& edges) {
  thread_local std::unordered_map<std::uint64_t, CommunityKey> cache;
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const std::uint64_t lookup = (static_cast<std::uint64_t>(n) << 32) | raw_code(n, edges, identity);
  if (auto it = cache.find(lookup); it != cache.end()) return it->second;
  CommunityKey key{std::to_string(n) + ":" + std::to_string(minimal_code(n, edges)), true};
  cache.emplace(lookup, key);
  return key;
}

CommunityKey heuristic_key(const CommunityGraph& g) {
  std::vector<int> deg(g.n(), 0);
  for (const auto& [u, v] : g.edges()) {
    ++deg[u];
    ++deg[v];
  }
  std::sort(deg.rbegin(), deg.rend());
  std::ostringstream s;
  s << "~" << g.n() << ":" << g.edge_count() << ":";
  for (std::size_t i = 0; i < deg.size(); ++i) s << (i ? "," : "") << deg[i];
  return CommunityKey{s.str(), false};
}

/// Components of (n, kept edges): each returned as local edge list with vertices
/// renumbered in original order; components sorted by smallest original vertex.
struct Piece {
  int n;
  std::vector<CommunityGraph::Edge> edges;
};

std::vector<Piece> split_pieces(int n, const std::vector<CommunityGraph::Edge>& kept,
                                UnionFind& uf) {
  uf.reset(static_cast<std::size_t>(n));
  for (const auto& [u, v] : kept) uf.unite(u, v);
  std::vector<int> piece_of_root(n, -1);
  std::vector<int> local(n, 0);
  std::vector<Piece> pieces;
  for (int v = 0; v < n; ++v) {
    const auto r = uf.find(v);
    if (piece_of_root[r] < 0) {
      piece_of_root[r] = static_cast<int>(pieces.size());
      pieces.push_back(Piece{0, {}});
    }
    Piece& p = pieces[piece_of_root[r]];
    local[v] = p.n++;
  }
  for (const auto& [u, v] : kept)
    pieces[piece_of_root[uf.find(u)]].edges.emplace_back(local[u], local[v]);
  return pieces;
}

}  // namespace

CommunityGraph::CommunityGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw Error(ErrorCode::InvalidGraph, "community needs at least one vertex");
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::InvalidGraph, "self-loop in community");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error(ErrorCode::InvalidGraph, "duplicate edge in community");
  UnionFind uf(static_cast<std::size_t>(n_));
  int merges = 0;
  for (const auto& [u, v] : edges_) merges += uf.unite(u, v) ? 1 : 0;
  if (merges != n_ - 1) throw Error(ErrorCode::InvalidGraph, "community is not connected");
}

CommunityGraph complete_graph(int n) {
  std::vector<CommunityGraph::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return CommunityGraph(n, std::move(e));
}

CommunityGraph path_graph(int n) {
  std::vector<CommunityGraph::Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return CommunityGraph(n, std::move(e));
}

CommunityGraph star_graph(int n) {
  std::vector<CommunityGraph::Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return CommunityGraph(n, std::move(e));
}

CommunityGraph cycle_graph(int n) {
  if (n < 3) return path_graph(n);
  std::vector<CommunityGraph::Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return CommunityGraph(n, std::move(e));
}

CommunityGraph named_graph(const std::string& name) {
  if (name.size() < 2) throw Error(ErrorCode::InvalidGraph, "unknown graph name '" + name + "'");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(name.substr(1), &used);
    if (used != name.size() - 1) throw std::invalid_argument(name);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidGraph, "unknown graph name '" + name + "'");
  }
  switch (name[0]) {
    case 'K': return complete_graph(n);
    case 'P': return path_graph(n);
    case 'S': return star_graph(n);
    case 'C': return cycle_graph(n);
    default: throw Error(ErrorCode::InvalidGraph, "unknown graph name '" + name + "'");
  }
}

CommunityKey canonical_key(const CommunityGraph& g) {
  if (g.n() > kExactIsomorphismCap)
    throw Error(ErrorCode::TooLargeForExactIsomorphism,
                "exact isomorphism supports at most 8 vertices, got " + std::to_string(g.n()));
  return exact_key_cached(g.n(), g.edges());
}

CommunityKey community_key(const CommunityGraph& g) {
  return g.n() <= kExactIsomorphismCap ? canonical_key(g) : heuristic_key(g);
}

std::map<int, int> degree_census(const CommunityGraph& g) {
  std::vector<int> deg(g.n(), 0);
  for (const auto& [u, v] : g.edges()) {
    ++deg[u];
    ++deg[v];
  }
  std::map<int, int> census;
  for (int d : deg) ++census[d];
  return census;
}

CommunityCatalog CommunityCatalog::create(std::vector<std::pair<CommunityGraph, double>> items) {
  CommunityCatalog c;
  double total = 0.0;
  for (auto& [g, w] : items) {
    if (!(w > 0.0)) throw Error(ErrorCode::NegativeWeight, "catalog weights must be positive");
    CommunityKey key = community_key(g);
    if (c.index_.contains(key))
      throw Error(ErrorCode::DuplicateCommunity, "isomorphic communities listed twice (" + key.text + ")");
    c.index_.emplace(key, c.items_.size());
    c.items_.push_back(Item{std::move(g), w, std::move(key)});
    total += w;
  }
  if (c.items_.empty()) throw Error(ErrorCode::EmptySupport, "empty catalog");
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::NotNormalized, "catalog weights sum to " + std::to_string(total));
  for (auto& item : c.items_) item.weight /= total;
  return c;
}

CommunityCatalog CommunityCatalog::from_counts(
    const std::vector<std::pair<CommunityGraph, double>>& items) {
  std::map<CommunityKey, std::pair<const CommunityGraph*, double>> merged;
  std::vector<CommunityKey> order;
  double total = 0.0;
  for (const auto& [g, w] : items) {
    if (w <= 0.0) continue;
    CommunityKey key = community_key(g);
    auto [it, inserted] = merged.try_emplace(key, &g, 0.0);
    if (inserted) order.push_back(key);
    it->second.second += w;
    total += w;
  }
  if (order.empty()) throw Error(ErrorCode::EmptySupport, "empty catalog");
  std::vector<std::pair<CommunityGraph, double>> normalized;
  for (const auto& key : order) {
    const auto& [g, w] = merged.at(key);
    normalized.emplace_back(*g, w / total);
  }
  return create(std::move(normalized));
}

CommunityCatalog CommunityCatalog::empirical(const std::vector<CommunityGraph>& communities) {
  std::vector<std::pair<CommunityGraph, double>> items;
  items.reserve(communities.size());
  for (const auto& g : communities) items.emplace_back(g, 1.0);
  return from_counts(items);
}

double CommunityCatalog::weight(const CommunityKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? 0.0 : items_[it->second].weight;
}

Pmf catalog_size_pmf(const CommunityCatalog& catalog) {
  std::map<int, double> q;
  for (const auto& item : catalog.items()) q[item.graph.n()] += item.weight;
  return pmf_new(q);
}

Pmf catalog_cdeg_pmf(const CommunityCatalog& catalog) {
  const double mean_size = mean(catalog_size_pmf(catalog));
  std::map<int, double> rho;
  for (const auto& item : catalog.items())
    for (const auto& [c, count] : degree_census(item.graph))
      rho[c] += count * item.weight / mean_size;
  return pmf_new(rho);
}

double catalog_mean_edges(const CommunityCatalog& catalog) {
  double m = 0.0;
  for (const auto& item : catalog.items()) m += item.weight * item.graph.edge_count();
  return m;
}

CatalogSampler::CatalogSampler(const CommunityCatalog& catalog) : catalog_(&catalog) {
  std::vector<double> w;
  for (const auto& item : catalog.items()) w.push_back(item.weight);
  dist_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
}

const CommunityGraph& CatalogSampler::operator()(Rng& rng) {
  return catalog_->items()[dist_(rng)].graph;
}

PercolationTable::PercolationTable(const CommunityGraph& g) : n_(g.n()), edges_(g.edge_count()) {
  if (edges_ > kEnumerationEdgeCap)
    throw Error(ErrorCode::TooManyEdges, std::to_string(edges_) + " edges exceed the enumeration cap");
  const std::size_t subsets = std::size_t{1} << edges_;
  root_sum_.assign(edges_ + 1, 0.0);
  component_sum_.assign(edges_ + 1, 0.0);

  std::map<std::vector<int>, std::size_t> outcome_index;
  std::map<std::pair<int, std::uint64_t>, int> exact_ids;
  std::map<CommunityKey, int> key_ids;
  std::vector<CommunityKey> id_keys;

  auto key_id_of = [&](const Piece& p) {
    if (p.n <= kExactIsomorphismCap) {
      std::vector<int> identity(p.n);
      std::iota(identity.begin(), identity.end(), 0);
      const auto lookup = std::make_pair(p.n, raw_code(p.n, p.edges, identity));
      if (auto it = exact_ids.find(lookup); it != exact_ids.end()) return it->second;
      CommunityGraph piece(p.n, p.edges);
      CommunityKey key = canonical_key(piece);
      auto [kit, inserted] = key_ids.try_emplace(key, static_cast<int>(id_keys.size()));
      if (inserted) {
        id_keys.push_back(key);
        reps_.emplace(key, std::move(piece));
      }
      exact_ids.emplace(lookup, kit->second);
      return kit->second;
    }
    CommunityGraph piece(p.n, p.edges);
    CommunityKey key = heuristic_key(piece);
    auto [kit, inserted] = key_ids.try_emplace(key, static_cast<int>(id_keys.size()));
    if (inserted) {
      id_keys.push_back(key);
      reps_.emplace(key, std::move(piece));
    }
    return kit->second;
  };

  UnionFind uf;
  std::vector<CommunityGraph::Edge> kept;
  std::vector<int> ids;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    kept.clear();
    for (int e = 0; e < edges_; ++e)
      if (mask >> e & 1U) kept.push_back(g.edges()[e]);
    const int kept_count = static_cast<int>(kept.size());
    const auto pieces = split_pieces(n_, kept, uf);
    ids.clear();
    double square_sum = 0.0;
    for (const auto& p : pieces) {
      ids.push_back(key_id_of(p));
      square_sum += static_cast<double>(p.n) * p.n;
    }
    std::sort(ids.begin(), ids.end());
    auto [it, inserted] = outcome_index.try_emplace(ids, outcome_counts_.size());
    if (inserted) outcome_counts_.emplace_back(edges_ + 1, 0.0);
    outcome_counts_[it->second][kept_count] += 1.0;
    root_sum_[kept_count] += square_sum / n_ - 1.0;
    component_sum_[kept_count] += static_cast<double>(pieces.size());
  }

  outcome_keys_.resize(outcome_counts_.size());
  for (const auto& [id_list, index] : outcome_index) {
    auto& keys = outcome_keys_[index];
    for (int id : id_list) keys.push_back(id_keys[id]);
    std::sort(keys.begin(), keys.end());
  }
}

std::vector<double> PercolationTable::weights(double pi) const {
  if (!(pi >= 0.0 && pi <= 1.0)) throw Error(ErrorCode::OutOfDomain, "retention probability outside [0,1]");
  std::vector<double> w(edges_ + 1);
  for (int k = 0; k <= edges_; ++k) w[k] = std::pow(pi, k) * std::pow(1.0 - pi, edges_ - k);
  return w;
}

PercolationProfile PercolationTable::profile(double pi) const {
  const auto w = weights(pi);
  PercolationProfile out{pi, {}, 0.0, 0.0};
  for (std::size_t o = 0; o < outcome_counts_.size(); ++o) {
    double p = 0.0;
    for (int k = 0; k <= edges_; ++k) p += outcome_counts_[o][k] * w[k];
    if (p > 0.0) out.outcomes.push_back(PercolationOutcome{outcome_keys_[o], p});
  }
  for (int k = 0; k <= edges_; ++k) {
    out.mean_root_component_minus_one += root_sum_[k] * w[k];
    out.mean_component_count += component_sum_[k] * w[k];
  }
  return out;
}

double PercolationTable::mean_root_component_minus_one(double pi) const {
  const auto w = weights(pi);
  double s = 0.0;
  for (int k = 0; k <= edges_; ++k) s += root_sum_[k] * w[k];
  return s;
}

double PercolationTable::mean_component_count(double pi) const {
  const auto w = weights(pi);
  double s = 0.0;
  for (int k = 0; k <= edges_; ++k) s += component_sum_[k] * w[k];
  return s;
}

PercolationProfile percolate_enumerate(const CommunityGraph& g, double pi) {
  return PercolationTable(g).profile(pi);
}

std::vector<CommunityGraph> percolate_sample(const CommunityGraph& g, double pi, Rng& rng) {
  std::bernoulli_distribution keep(pi);
  std::vector<CommunityGraph::Edge> kept;
  kept.reserve(g.edges().size());
  for (const auto& e : g.edges())
    if (keep(rng)) kept.push_back(e);
  UnionFind uf;
  std::vector<CommunityGraph> out;
  for (auto& p : split_pieces(g.n(), kept, uf)) out.emplace_back(p.n, std::move(p.edges));
  return out;
}

PercolationEstimate percolate_monte_carlo(const CommunityGraph& g, double pi, int replicas,
                                          Rng& rng) {
  std::bernoulli_distribution keep(pi);
  UnionFind uf;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 0; r < replicas; ++r) {
    uf.reset(static_cast<std::size_t>(g.n()));
    for (const auto& [u, v] : g.edges())
      if (keep(rng)) uf.unite(u, v);
    double square_sum = 0.0;
    for (int v = 0; v < g.n(); ++v) square_sum += uf.component_size(v);
    const double x = square_sum / g.n() - 1.0;
    sum += x;
    sum_sq += x * x;
  }
  const double m = sum / replicas;
  const double var = replicas > 1 ? (sum_sq - replicas * m * m) / (replicas - 1) : 0.0;
  return {m, std::sqrt(std::max(var, 0.0) / replicas)};
}

}  // namespace rigc
