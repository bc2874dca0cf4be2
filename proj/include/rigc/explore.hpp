#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rigc/model.hpp"
#include "rigc/rng.hpp"
#include "rigc/theory.hpp"

namespace rigc {

enum class StepKind : std::uint8_t { Step1 = 1, Step2 = 2, Step3 = 3 };

/// State right after one step (all processes are right-continuous).
struct TrajectoryEvent {
  double t;
  StepKind kind;
  std::int64_t L;      ///< living (unpaired) l-half-edges
  std::int64_t S;      ///< sleeping l-half-edges
  std::int64_t S_hat;  ///< half-edges of vertices none of whose clocks has rung yet
  std::int64_t A;      ///< active l-half-edges
  std::int64_t W;      ///< waiting r-half-edges
};

struct ComponentRecord {
  std::size_t start_event = 0;  ///< index of the Step1 event opening the component
  std::size_t end_event = 0;    ///< index of its last event
  double start_time = 0.0;
  std::int64_t l_vertices = 0;
  std::int64_t r_vertices = 0;
  std::int64_t edges = 0;
};

struct Trajectory {
  std::int64_t n_vertices = 0;
  std::int64_t half_edges = 0;
  std::vector<std::int32_t> l_degrees;
  std::vector<TrajectoryEvent> events;  ///< empty unless events are recorded
  std::vector<double> s1_times;
  std::vector<double> s2_times;
  std::vector<ComponentRecord> components;
  /// Time of the j-th pairing, i.e. when L first drops to h - j - 1.
  std::vector<double> jump_times;
  /// Exp(1) variable of the j-th pairing: the rescaled waiting time for a
  /// Step3, a fresh draw for an instantaneous Step2. Used to couple the
  /// standard death process to the exploration.
  std::vector<double> jump_clocks;
  /// Per l-vertex: the smallest alarm clock among its half-edges.
  std::vector<double> death_times;
  /// The matching built by the exploration, r-half-edge -> l-half-edge.
  std::vector<std::int32_t> r_to_l;
};

struct ExplorationOptions {
  /// Draw every alarm clock up front and ring them in order from a heap,
  /// instead of the exponential race. Slower; kept as an independent check.
  bool direct_clocks = false;
  bool record_events = true;
};

/// Runs the continuous-time exploration of the bipartite configuration model
/// repeatedly on one parameter set, reusing its buffers between runs.
class Explorer {
 public:
  explicit Explorer(const ModelParams& params);

  const Trajectory& run(Rng& rng, const ExplorationOptions& options = {});
  const HalfEdgeLayout& layout() const { return layout_; }

 private:
  struct IndexedSet {
    std::vector<std::int32_t> items;
    std::vector<std::int32_t> pos;
    void fill(std::int32_t n);
    void erase(std::int32_t x);
    bool empty() const { return items.empty(); }
    std::int32_t pick(Rng& rng) const;
  };

  void wake_l_vertex(std::int32_t v, std::int32_t except);
  void fill_s_hat();

  HalfEdgeLayout layout_;
  Trajectory traj_;
  std::vector<std::uint8_t> l_state_;  // 0 sleeping, 1 active, 2 paired
  std::vector<std::uint8_t> l_awake_;
  std::vector<double> clock_;
  std::vector<std::int32_t> active_stack_;
  IndexedSet unpaired_l_;
  IndexedSet sleeping_l_;
  IndexedSet sleeping_r_;
  std::int64_t S_ = 0;
  std::int64_t A_ = 0;
};

Trajectory run_exploration(const ModelParams& params, Rng& rng,
                           const ExplorationOptions& options = {});

/// The bipartite graph whose matching the trajectory produced.
BcmGraph trajectory_bcm(const ModelParams& params, const Trajectory& traj);

struct SupErrors {
  double living = 0.0;    ///< sup |L/N - h2(e^-t)|
  double sleeping = 0.0;  ///< sup |S_hat/N - h1(e^-t)|
  double active = 0.0;    ///< sup |(L - S_hat)/N - H(e^-t)|
};

/// Suprema over t <= t0, taken at every jump time (both one-sided limits) and
/// at t0. Throws DomainHorizon when t0 >= -log q~(0).
SupErrors trajectory_sup_error(const Trajectory& traj, const TheoryInputs& in, double t0);

/// tau(c) = min{t : L(t) <= c h} for each c. Throws EmptyGrid or OutOfDomain.
std::vector<double> hitting_times(const Trajectory& traj, const std::vector<double>& c_grid);

/// Hitting times of the standard death process driven by the same jump
/// variables as the trajectory, with rate i from position i throughout.
std::vector<double> coupled_standard_hitting_times(const Trajectory& traj,
                                                   const std::vector<double>& c_grid);

/// Pure death process started at h, jumping at rate i from position i.
struct DeathProcess {
  std::int64_t h = 0;
  std::vector<double> jump_times;  ///< jump_times[j]: time of reaching h - j - 1

  double hitting_time(double c) const;
  std::int64_t position_at(double t) const;
};

DeathProcess standard_death_process(std::int64_t h, Rng& rng);

/// Sleeping r-half-edge count when every r-half-edge carries an Exp(1) clock
/// and a vertex wakes with all its half-edges at its first ring; realized
/// through a size-biased reordering of the r-degrees.
struct ZrProcess {
  std::int64_t h = 0;
  std::vector<std::int32_t> order;          ///< indices of r-vertices in wake-up order
  std::vector<std::int64_t> partial_sums;   ///< Sigma_j, j = 0..M
  std::vector<double> times;                ///< time at which Z reaches h - Sigma_j

  double hitting_time(double c) const;
};

ZrProcess zr_process(const std::vector<int>& r_degrees, Rng& rng);

/// Last Step1 before t*/2 and the first one after.
struct GiantWindow {
  double T1 = 0.0;
  double T2 = std::numeric_limits<double>::infinity();
  /// Component opened at T1.
  std::size_t component = 0;
};

GiantWindow giant_window(const Trajectory& traj, double t_star);

}  // namespace rigc
