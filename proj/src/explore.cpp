#include "rigc/explore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>

#include "rigc/error.hpp"

namespace rigc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Number of pairings needed before L <= c h.
std::int64_t jumps_to_reach(std::int64_t h, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorCode::OutOfDomain, "c must lie in (0,1]");
  const auto target = static_cast<std::int64_t>(std::floor(c * static_cast<double>(h)));
  return h - std::min(target, h);
}

void require_grid(const std::vector<double>& c_grid) {
  if (c_grid.empty()) throw Error(ErrorCode::EmptyGrid, "hitting-time grid is empty");
}

}  // namespace

void Explorer::IndexedSet::fill(std::int32_t n) {
  items.resize(static_cast<std::size_t>(n));
  std::iota(items.begin(), items.end(), 0);
  pos.resize(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 0);
}

void Explorer::IndexedSet::erase(std::int32_t x) {
  const auto i = pos[x];
  if (i < 0) return;
  const auto last = items.back();
  items[i] = last;
  pos[last] = i;
  items.pop_back();
  pos[x] = -1;
}

std::int32_t Explorer::IndexedSet::pick(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

Explorer::Explorer(const ModelParams& params) : layout_(HalfEdgeLayout::from_params(params)) {
  traj_.n_vertices = static_cast<std::int64_t>(layout_.n());
  traj_.half_edges = layout_.half_edges();
  traj_.l_degrees.assign(params.l_degrees.begin(), params.l_degrees.end());
}

void Explorer::wake_l_vertex(std::int32_t v, std::int32_t except) {
  l_awake_[v] = 1;
  const auto begin = layout_.l_offset[v];
  const auto end = layout_.l_offset[v + 1];
  for (auto e = begin; e < end; ++e) {
    sleeping_l_.erase(e);
    if (e == except) continue;
    l_state_[e] = 1;
    active_stack_.push_back(e);
    ++A_;
  }
  S_ -= end - begin;
}

const Trajectory& Explorer::run(Rng& rng, const ExplorationOptions& options) {
  const auto h = static_cast<std::int32_t>(layout_.half_edges());
  const auto n = static_cast<std::int32_t>(layout_.n());
  Trajectory& tr = traj_;
  tr.events.clear();
  tr.s1_times.clear();
  tr.s2_times.clear();
  tr.components.clear();
  tr.jump_times.assign(static_cast<std::size_t>(h), 0.0);
  tr.jump_clocks.assign(static_cast<std::size_t>(h), 0.0);
  tr.r_to_l.assign(static_cast<std::size_t>(h), -1);
  l_state_.assign(static_cast<std::size_t>(h), 0);
  l_awake_.assign(static_cast<std::size_t>(n), 0);
  clock_.assign(static_cast<std::size_t>(h), kInf);
  active_stack_.clear();
  unpaired_l_.fill(h);
  sleeping_l_.fill(h);
  sleeping_r_.fill(h);
  S_ = h;
  A_ = 0;

  using Ring = std::pair<double, std::int32_t>;
  std::vector<Ring> heap;
  if (options.direct_clocks) {
    heap.reserve(static_cast<std::size_t>(h));
    for (std::int32_t x = 0; x < h; ++x) {
      clock_[x] = exp1(rng);
      heap.emplace_back(clock_[x], x);
    }
    std::make_heap(heap.begin(), heap.end(), std::greater<>{});
  }

  std::int64_t L = h;
  std::int64_t W = 0;
  std::size_t jump = 0;
  double t = 0.0;
  auto record = [&](StepKind kind) {
    if (options.record_events) tr.events.push_back({t, kind, L, S_, 0, A_, W});
  };
  auto pair_l = [&](std::int32_t x, std::int32_t y) {
    tr.r_to_l[y] = x;
    l_state_[x] = 2;
    unpaired_l_.erase(x);
    --L;
  };

  while (L > 0) {
    if (A_ == 0) {
      const auto x0 = sleeping_l_.pick(rng);
      wake_l_vertex(layout_.l_owner[x0], -1);
      tr.s1_times.push_back(t);
      ComponentRecord rec;
      rec.start_event = tr.events.size();
      rec.start_time = t;
      rec.l_vertices = 1;
      tr.components.push_back(rec);
      record(StepKind::Step1);
    }
    ComponentRecord& comp = tr.components.back();

    std::int32_t x;
    do {
      x = active_stack_.back();
      active_stack_.pop_back();
    } while (l_state_[x] != 1);
    const auto y = sleeping_r_.pick(rng);
    const auto a = layout_.r_owner[y];
    const auto r_begin = layout_.r_offset[a];
    const auto r_end = layout_.r_offset[a + 1];
    for (auto r = r_begin; r < r_end; ++r) sleeping_r_.erase(r);
    pair_l(x, y);
    --A_;
    if (!options.direct_clocks) clock_[x] = t + exp1(rng);
    tr.jump_times[jump] = t;
    tr.jump_clocks[jump] = exp1(rng);
    ++jump;
    W = r_end - r_begin - 1;
    ++comp.r_vertices;
    ++comp.edges;
    tr.s2_times.push_back(t);
    record(StepKind::Step2);

    for (auto r = r_begin; r < r_end; ++r) {
      if (r == y) continue;
      std::int32_t xr;
      double dt;
      if (options.direct_clocks) {
        while (l_state_[heap.front().second] == 2) {
          std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
          heap.pop_back();
        }
        xr = heap.front().second;
        dt = heap.front().first - t;
        t = heap.front().first;
      } else {
        dt = exp1(rng) / static_cast<double>(L);
        xr = unpaired_l_.pick(rng);
        t += dt;
        clock_[xr] = t;
      }
      tr.jump_clocks[jump] = dt * static_cast<double>(L);
      const auto v = layout_.l_owner[xr];
      if (!l_awake_[v]) {
        wake_l_vertex(v, xr);
        ++comp.l_vertices;
      } else {
        --A_;
      }
      pair_l(xr, r);
      --W;
      tr.jump_times[jump] = t;
      ++jump;
      ++comp.edges;
      record(StepKind::Step3);
    }
    comp.end_event = tr.events.empty() ? 0 : tr.events.size() - 1;
  }

  tr.death_times.assign(static_cast<std::size_t>(n), kInf);
  for (std::int32_t x = 0; x < h; ++x) {
    auto& d = tr.death_times[layout_.l_owner[x]];
    d = std::min(d, clock_[x]);
  }
  if (options.record_events) fill_s_hat();
  return tr;
}

void Explorer::fill_s_hat() {
  Trajectory& tr = traj_;
  std::vector<std::int32_t> order(tr.death_times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::int32_t a, std::int32_t b) { return tr.death_times[a] < tr.death_times[b]; });
  std::int64_t s_hat = tr.half_edges;
  std::size_t next = 0;
  for (auto& e : tr.events) {
    while (next < order.size() && tr.death_times[order[next]] <= e.t) {
      s_hat -= tr.l_degrees[order[next]];
      ++next;
    }
    e.S_hat = s_hat;
  }
}

Trajectory run_exploration(const ModelParams& params, Rng& rng, const ExplorationOptions& options) {
  Explorer explorer(params);
  return explorer.run(rng, options);
}

BcmGraph trajectory_bcm(const ModelParams& params, const Trajectory& traj) {
  return BcmGraph(HalfEdgeLayout::from_params(params), traj.r_to_l);
}

SupErrors trajectory_sup_error(const Trajectory& traj, const TheoryInputs& in, double t0) {
  const double q0 = q_tilde_zero(in);
  const double horizon = q0 > 0.0 ? -std::log(q0) : kInf;
  if (!(t0 < horizon))
    throw Error(ErrorCode::DomainHorizon, "t0 must stay below -log q~(0)");
  if (t0 < 0.0) throw Error(ErrorCode::OutOfDomain, "t0 must be nonnegative");

  std::vector<std::int32_t> order(traj.death_times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return traj.death_times[a] < traj.death_times[b];
  });

  const double n = static_cast<double>(traj.n_vertices);
  const double mean_l = mean(in.p);
  GfInverter inverse(in.q_tilde);
  SupErrors err;
  std::int64_t L = traj.half_edges;
  std::int64_t s_hat = traj.half_edges;
  auto measure = [&](double t) {
    const double z = std::exp(-t);
    const double th2 = mean_l * z * inverse(std::max(z, q0));
    const double th1 = h1(in, z);
    const double l = static_cast<double>(L) / n;
    const double s = static_cast<double>(s_hat) / n;
    err.living = std::max(err.living, std::abs(l - th2));
    err.sleeping = std::max(err.sleeping, std::abs(s - th1));
    err.active = std::max(err.active, std::abs((l - s) - (th2 - th1)));
  };

  std::size_t j = 0;
  std::size_t d = 0;
  const auto jumps = traj.jump_times.size();
  while (true) {
    const double tj = j < jumps ? traj.jump_times[j] : kInf;
    const double td = d < order.size() ? traj.death_times[order[d]] : kInf;
    const double tau = std::min(tj, td);
    if (tau > t0) break;
    if (tau > 0.0) measure(tau);
    while (j < jumps && traj.jump_times[j] == tau) {
      --L;
      ++j;
    }
    while (d < order.size() && traj.death_times[order[d]] == tau) {
      s_hat -= traj.l_degrees[order[d]];
      ++d;
    }
    measure(tau);
  }
  measure(t0);
  return err;
}

std::vector<double> hitting_times(const Trajectory& traj, const std::vector<double>& c_grid) {
  require_grid(c_grid);
  std::vector<double> out;
  out.reserve(c_grid.size());
  for (double c : c_grid) {
    const auto j = jumps_to_reach(traj.half_edges, c);
    out.push_back(j == 0 ? 0.0 : traj.jump_times[j - 1]);
  }
  return out;
}

std::vector<double> coupled_standard_hitting_times(const Trajectory& traj,
                                                   const std::vector<double>& c_grid) {
  require_grid(c_grid);
  const auto h = traj.half_edges;
  std::vector<double> cumulative(static_cast<std::size_t>(h) + 1, 0.0);
  for (std::int64_t i = 0; i < h; ++i)
    cumulative[i + 1] = cumulative[i] + traj.jump_clocks[i] / static_cast<double>(h - i);
  std::vector<double> out;
  out.reserve(c_grid.size());
  for (double c : c_grid) out.push_back(cumulative[jumps_to_reach(h, c)]);
  return out;
}

double DeathProcess::hitting_time(double c) const {
  const auto j = jumps_to_reach(h, c);
  return j == 0 ? 0.0 : jump_times[j - 1];
}

std::int64_t DeathProcess::position_at(double t) const {
  return h - (std::upper_bound(jump_times.begin(), jump_times.end(), t) - jump_times.begin());
}

DeathProcess standard_death_process(std::int64_t h, Rng& rng) {
  if (h < 1) throw Error(ErrorCode::OutOfDomain, "initial position must be at least 1");
  DeathProcess out;
  out.h = h;
  out.jump_times.resize(static_cast<std::size_t>(h));
  double t = 0.0;
  for (std::int64_t i = 0; i < h; ++i) {
    t += exp1(rng) / static_cast<double>(h - i);
    out.jump_times[i] = t;
  }
  return out;
}

double ZrProcess::hitting_time(double c) const {
  const auto need = jumps_to_reach(h, c);
  const auto it = std::lower_bound(partial_sums.begin(), partial_sums.end(), need);
  return times[it - partial_sums.begin()];
}

ZrProcess zr_process(const std::vector<int>& r_degrees, Rng& rng) {
  const auto m = r_degrees.size();
  if (m == 0) throw Error(ErrorCode::EmptySupport, "no r-vertices");
  // Fenwick tree over the remaining degrees.
  std::vector<std::int64_t> tree(m + 1, 0);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (r_degrees[i] < 1) throw Error(ErrorCode::ZeroDegree, "r-degrees must be at least 1");
    total += r_degrees[i];
    for (auto k = i + 1; k <= m; k += k & (~k + 1)) tree[k] += r_degrees[i];
  }
  std::size_t top = 1;
  while (top * 2 <= m) top *= 2;

  ZrProcess out;
  out.h = total;
  out.order.reserve(m);
  out.partial_sums.assign(1, 0);
  out.times.assign(1, 0.0);
  std::int64_t remaining = total;
  for (std::size_t step = 0; step < m; ++step) {
    std::int64_t u = std::uniform_int_distribution<std::int64_t>(0, remaining - 1)(rng);
    std::size_t idx = 0;
    for (auto bit = top; bit > 0; bit >>= 1) {
      const auto next = idx + bit;
      if (next <= m && tree[next] <= u) {
        idx = next;
        u -= tree[next];
      }
    }
    const int deg = r_degrees[idx];
    for (auto k = idx + 1; k <= m; k += k & (~k + 1)) tree[k] -= deg;
    out.times.push_back(out.times.back() + exp1(rng) / static_cast<double>(remaining));
    remaining -= deg;
    out.order.push_back(static_cast<std::int32_t>(idx));
    out.partial_sums.push_back(out.partial_sums.back() + deg);
  }
  return out;
}

GiantWindow giant_window(const Trajectory& traj, double t_star) {
  GiantWindow w;
  const double half = 0.5 * t_star;
  for (std::size_t i = 0; i < traj.s1_times.size(); ++i) {
    if (traj.s1_times[i] < half) {
      w.T1 = traj.s1_times[i];
      w.component = i;
    } else {
      w.T2 = traj.s1_times[i];
      break;
    }
  }
  return w;
}

}  // namespace rigc
