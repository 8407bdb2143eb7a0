#include "invpso/pso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invpso/error.hpp"

namespace invpso {

void validate_config(const PsoConfig& config) {
  if (config.swarm_size < 2) throw Error(ErrorCode::InvalidConfig, "swarm_size must be at least 2");
  if (config.max_iterations < 1) throw Error(ErrorCode::InvalidConfig, "max_iterations must be positive");
  if (!(config.c1 >= 0.0 && config.c2 >= 0.0 && config.c1 + config.c2 > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "acceleration constants must be non-negative with c1 + c2 > 0");
  }
  if (!(std::isfinite(config.w_min) && std::isfinite(config.w_max) && config.w_min <= config.w_max)) {
    throw Error(ErrorCode::InvalidConfig, "inertia endpoints must satisfy w_min <= w_max");
  }
  if (config.match_radius < 0) throw Error(ErrorCode::InvalidConfig, "match_radius must be non-negative");
  if (config.stall_window < 0) throw Error(ErrorCode::InvalidConfig, "stall_window must be non-negative");
  config.bounds.validate();
  weights_from_priorities(config.priorities);
}

std::int64_t round_coordinate(double x) noexcept { return static_cast<std::int64_t>(std::round(x)); }

std::vector<StockLevel> rounded_levels(std::span<const double> position) {
  std::vector<StockLevel> levels;
  if (position.empty()) return levels;
  levels.reserve(position.size() - 1);
  for (const double x : position.subspan(1)) levels.push_back(round_coordinate(x));
  return levels;
}

double evaluate(const HistoryStore& store, const Weights& weights, std::int64_t match_radius, LogBase log_base,
                std::span<const double> position) {
  const auto expected = static_cast<std::size_t>(dimension(store.topology()));
  if (position.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "position has " + std::to_string(position.size()) +
                                                  " dimensions, expected " + std::to_string(expected));
  }
  const ProductId product = round_coordinate(position[0]);
  const std::vector<StockLevel> levels = rounded_levels(position);
  const MatchResult match = store.match_individual(product, levels, match_radius);

  const PeriodCount periods{store.total_periods(), match.occurrences};
  const auto t_stock = static_cast<double>(store.stock_lead_time_total(match.tids));
  const auto t_raw = static_cast<double>(store.raw_lead_time_total(product));

  const double lead = weights.w2 * t_stock + weights.w3 * t_raw;
  if (!(lead > 0.0)) {
    throw Error(ErrorCode::LogDomain, "lead-time term is " + std::to_string(lead) + " for product " +
                                          std::to_string(product) + "; logarithm undefined");
  }
  const double log_term = log_base == LogBase::Natural ? std::log(lead) : std::log10(lead);
  return weights.w1 * periods.absence_ratio() + log_term;
}

double evaluate(const HistoryStore& store, const PsoConfig& config, std::span<const double> position) {
  return evaluate(store, weights_from_priorities(config.priorities), config.match_radius, config.log_base,
                  position);
}

double inertia_weight(const PsoConfig& config, std::int64_t iteration) {
  return config.w_max - (config.w_max - config.w_min) * static_cast<double>(iteration) /
                            static_cast<double>(config.max_iterations);
}

std::vector<Particle> init_swarm(const HistoryStore& store, const PsoConfig& config, Rng& rng) {
  const auto dims = static_cast<std::size_t>(dimension(store.topology()));
  const Weights weights = weights_from_priorities(config.priorities);

  std::vector<Particle> swarm(static_cast<std::size_t>(config.swarm_size));
  for (Particle& p : swarm) {
    p.position.resize(dims);
    p.velocity.resize(dims);
    for (std::size_t b = 0; b < dims; ++b) p.position[b] = rng.uniform(config.bounds.lower(b), config.bounds.upper(b));
    for (std::size_t b = 0; b < dims; ++b) {
      const VelocityLimits& v = config.bounds.velocity(b);
      p.velocity[b] = rng.uniform(v.min, v.max);
    }
  }
  for (Particle& p : swarm) {
    p.fitness = evaluate(store, weights, config.match_radius, config.log_base, p.position);
    p.pbest_position = p.position;
    p.pbest_fitness = p.fitness;
  }
  return swarm;
}

std::vector<double> update_velocity(const Particle& particle, std::span<const double> gbest_position,
                                    double inertia, double c1, double c2, std::span<const double> r1,
                                    std::span<const double> r2, const Bounds& bounds) {
  const std::size_t dims = particle.position.size();
  std::vector<double> velocity(dims);
  for (std::size_t b = 0; b < dims; ++b) {
    const double rc = r1.size() == 1 ? r1[0] : r1[b];
    const double rs = r2.size() == 1 ? r2[0] : r2[b];
    const double x = particle.position[b];
    const double v = inertia * particle.velocity[b] + c1 * rc * (particle.pbest_position[b] - x) +
                     c2 * rs * (gbest_position[b] - x);
    const VelocityLimits& limit = bounds.velocity(b);
    velocity[b] = std::clamp(v, limit.min, limit.max);
  }
  return velocity;
}

std::vector<double> update_velocity(const Particle& particle, std::span<const double> gbest_position,
                                    double inertia, double c1, double c2, double r1, double r2,
                                    const Bounds& bounds) {
  return update_velocity(particle, gbest_position, inertia, c1, c2, std::span<const double>(&r1, 1),
                         std::span<const double>(&r2, 1), bounds);
}

std::vector<double> update_position(std::span<const double> position, std::span<const double> velocity,
                                    const Bounds& bounds) {
  std::vector<double> next(position.size());
  for (std::size_t b = 0; b < position.size(); ++b) {
    next[b] = std::clamp(position[b] + velocity[b], bounds.lower(b), bounds.upper(b));
  }
  return next;
}

namespace {

/// Every product reachable from the bounds must give the logarithm a positive
/// argument even when nothing in the history matches.
void check_reachable_products(const HistoryStore& store, const PsoConfig& config, const Weights& weights) {
  for (ProductId product = config.bounds.product_lb; product <= config.bounds.product_ub; ++product) {
    const auto t_raw = static_cast<double>(store.raw_lead_time_total(product));
    if (!(weights.w3 * t_raw > 0.0)) {
      throw Error(ErrorCode::LogDomain, "product " + std::to_string(product) +
                                            " has a zero raw-material term (w3 * t_raw = 0); an unmatched "
                                            "position would evaluate log(0)");
    }
  }
}

std::size_t best_pbest(std::span<const Particle> swarm) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < swarm.size(); ++i) {
    if (swarm[i].pbest_fitness < swarm[best].pbest_fitness) best = i;
  }
  return best;
}

}  // namespace

OptimizationResult run(const HistoryStore& store, const PsoConfig& config, const IterationObserver& observer) {
  validate_config(config);
  const Weights weights = weights_from_priorities(config.priorities);
  check_reachable_products(store, config, weights);

  Rng rng(config.seed);
  std::vector<Particle> swarm = init_swarm(store, config, rng);
  const std::size_t dims = swarm.front().position.size();

  std::size_t leader = best_pbest(swarm);
  std::vector<double> gbest_position = swarm[leader].pbest_position;
  double gbest_fitness = swarm[leader].pbest_fitness;
  if (observer) observer(0, swarm, gbest_position, gbest_fitness);

  OptimizationResult result;
  result.weights_used = weights;
  const std::size_t draws = config.per_dimension_r ? dims : 1;
  std::vector<double> r1(draws), r2(draws);
  std::int64_t stalled = 0;

  for (std::int64_t iter = 1; iter <= config.max_iterations; ++iter) {
    const double inertia = inertia_weight(config, iter);
    for (Particle& p : swarm) {
      for (double& r : r1) r = rng.unit();
      for (double& r : r2) r = rng.unit();
      p.velocity = update_velocity(p, gbest_position, inertia, config.c1, config.c2, r1, r2, config.bounds);
      p.position = update_position(p.position, p.velocity, config.bounds);
    }
    for (Particle& p : swarm) {
      p.fitness = evaluate(store, weights, config.match_radius, config.log_base, p.position);
      if (p.fitness < p.pbest_fitness) {
        p.pbest_fitness = p.fitness;
        p.pbest_position = p.position;
      }
    }

    leader = best_pbest(swarm);
    if (swarm[leader].pbest_fitness < gbest_fitness) {
      gbest_fitness = swarm[leader].pbest_fitness;
      gbest_position = swarm[leader].pbest_position;
      stalled = 0;
    } else {
      ++stalled;
    }

    result.gbest_trace.push_back({iter, gbest_fitness});
    result.iterations_run = iter;
    if (observer) observer(iter, swarm, gbest_position, gbest_fitness);
    if (config.stall_window > 0 && stalled >= config.stall_window) break;
  }

  result.best_position = std::move(gbest_position);
  result.best_fitness = gbest_fitness;
  return result;
}

}  // namespace invpso
