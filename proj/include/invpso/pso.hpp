#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "invpso/domain.hpp"
#include "invpso/history_store.hpp"
#include "invpso/random.hpp"

namespace invpso {

enum class LogBase { Natural, Base10 };

struct PsoConfig {
  std::int64_t swarm_size = 30;
  std::int64_t max_iterations = 100;
  double c1 = 2.0;
  double c2 = 2.0;
  double w_max = 0.9;
  double w_min = 0.4;
  Bounds bounds;
  PriorityConfig priorities;
  std::int64_t match_radius = 100;
  LogBase log_base = LogBase::Natural;
  std::int64_t stall_window = 0;  // 0 disables early stopping
  bool per_dimension_r = false;   // draw r1, r2 per dimension instead of per particle
  std::uint64_t seed = 42;

  bool operator==(const PsoConfig&) const = default;
};

/// Throws InvalidConfig, ZeroPrioritySum or DegenerateLeadTimeWeights.
void validate_config(const PsoConfig& config);

/// Position layout: element 0 is the product dimension, elements 1..l the
/// stock level of each chain member.
struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> pbest_position;
  double fitness = 0.0;  // fitness of `position`
  double pbest_fitness = 0.0;

  bool operator==(const Particle&) const = default;
};

struct TracePoint {
  std::int64_t iteration = 0;
  double fitness = 0.0;

  bool operator==(const TracePoint&) const = default;
};

struct OptimizationResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::vector<TracePoint> gbest_trace;  // one entry per completed iteration
  std::int64_t iterations_run = 0;
  Weights weights_used;

  bool operator==(const OptimizationResult&) const = default;
};

/// Round half away from zero, as used for every database query and report.
std::int64_t round_coordinate(double x) noexcept;

/// Rounded stock dimensions (elements 1..l) of a position.
std::vector<StockLevel> rounded_levels(std::span<const double> position);

/// Objective: w1 * (1 - occurrences / periods) + log(w2 * t_stock + w3 * t_raw),
/// where occurrences and t_stock come from matching the rounded position.
/// Throws LogDomain when the logarithm argument is not positive.
double evaluate(const HistoryStore& store, const Weights& weights, std::int64_t match_radius,
                LogBase log_base, std::span<const double> position);

double evaluate(const HistoryStore& store, const PsoConfig& config, std::span<const double> position);

/// Linearly decaying inertia, w_max at iteration 0 and w_min at max_iterations.
double inertia_weight(const PsoConfig& config, std::int64_t iteration);

/// Fresh particles, positions and velocities uniform within their bounds,
/// pbest set to the evaluated initial position.
std::vector<Particle> init_swarm(const HistoryStore& store, const PsoConfig& config, Rng& rng);

/// Velocity update with per-dimension clamping. `r1` and `r2` hold either one
/// coefficient (shared by every dimension) or one per dimension.
std::vector<double> update_velocity(const Particle& particle, std::span<const double> gbest_position,
                                    double inertia, double c1, double c2, std::span<const double> r1,
                                    std::span<const double> r2, const Bounds& bounds);

std::vector<double> update_velocity(const Particle& particle, std::span<const double> gbest_position,
                                    double inertia, double c1, double c2, double r1, double r2,
                                    const Bounds& bounds);

/// position + velocity, clamped to the product and stock bounds.
std::vector<double> update_position(std::span<const double> position, std::span<const double> velocity,
                                    const Bounds& bounds);

/// Called after initialisation (iteration 0) and after every completed iteration.
using IterationObserver = std::function<void(std::int64_t iteration, std::span<const Particle> swarm,
                                             std::span<const double> gbest_position, double gbest_fitness)>;

/// Full optimisation loop. Configuration problems (including products whose
/// objective would hit log(0)) are rejected before the first evaluation.
OptimizationResult run(const HistoryStore& store, const PsoConfig& config,
                       const IterationObserver& observer = {});

}  // namespace invpso
