#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace invpso {

using StockLevel = std::int64_t;
using ProductId = std::int64_t;
using Tid = std::int64_t;

/// Sum of end-level agents over all distribution centres.
std::int64_t total_agents(std::span<const std::int64_t> agents_per_dc);

/// Chain shape: one factory, `dc_count` distribution centres, and the agents
/// served by each centre. Members are ordered factory, centres, then agents
/// grouped by centre.
class Topology {
 public:
  /// Throws InvalidConfig unless every entry is >= 1 and the list is non-empty.
  static Topology from_agents(std::vector<std::int64_t> agents_per_dc);

  /// As above, additionally checking an explicitly configured member count.
  static Topology from_counts(std::int64_t dc_count, std::vector<std::int64_t> agents_per_dc,
                              std::int64_t member_count);

  std::int64_t dc_count() const noexcept { return static_cast<std::int64_t>(agents_per_dc_.size()); }
  const std::vector<std::int64_t>& agents_per_dc() const noexcept { return agents_per_dc_; }
  std::int64_t member_count() const noexcept { return member_count_; }

  bool operator==(const Topology&) const = default;

 private:
  explicit Topology(std::vector<std::int64_t> agents_per_dc);

  std::vector<std::int64_t> agents_per_dc_;
  std::int64_t member_count_ = 0;
};

/// Position dimensionality: product dimension plus one per stock-holding member.
std::int64_t dimension(const Topology& topology) noexcept;

struct VelocityLimits {
  double min = 0.0;
  double max = 0.0;

  bool operator==(const VelocityLimits&) const = default;
};

struct Bounds {
  std::int64_t product_lb = 1;
  std::int64_t product_ub = 5;
  StockLevel stock_lb = -1000;
  StockLevel stock_ub = 1000;
  VelocityLimits product_velocity{-0.8, 0.8};
  VelocityLimits stock_velocity{-400.0, 400.0};

  /// Symmetric velocity limits of `fraction` times each dimension's range.
  static Bounds with_velocity_fraction(std::int64_t product_lb, std::int64_t product_ub,
                                       StockLevel stock_lb, StockLevel stock_ub, double fraction);

  double lower(std::size_t dim) const noexcept {
    return dim == 0 ? static_cast<double>(product_lb) : static_cast<double>(stock_lb);
  }
  double upper(std::size_t dim) const noexcept {
    return dim == 0 ? static_cast<double>(product_ub) : static_cast<double>(stock_ub);
  }
  const VelocityLimits& velocity(std::size_t dim) const noexcept {
    return dim == 0 ? product_velocity : stock_velocity;
  }

  /// Throws InvalidConfig on empty ranges or limits that do not straddle zero.
  void validate() const;

  bool operator==(const Bounds&) const = default;
};

/// Relative priority of stock-level frequency, stock lead time and raw-material
/// lead time.
struct PriorityConfig {
  double r1 = 10.0;
  double r2 = 5.0;
  double r3 = 1.0;

  bool operator==(const PriorityConfig&) const = default;
};

struct Weights {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;

  bool operator==(const Weights&) const = default;
};

/// w_k = r_k / (r1 + r2 + r3). Throws ZeroPrioritySum, DegenerateLeadTimeWeights,
/// or InvalidConfig for negative or non-finite priorities.
Weights weights_from_priorities(const PriorityConfig& priorities);

struct PeriodCount {
  std::int64_t total_periods = 0;
  std::int64_t occurrences = 0;

  /// Fraction of periods in which the pattern did not occur.
  double absence_ratio() const noexcept {
    return 1.0 - static_cast<double>(occurrences) / static_cast<double>(total_periods);
  }
};

}  // namespace invpso
