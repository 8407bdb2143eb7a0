#include "invpso/domain.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "invpso/error.hpp"

namespace invpso {

std::int64_t total_agents(std::span<const std::int64_t> agents_per_dc) {
  return std::accumulate(agents_per_dc.begin(), agents_per_dc.end(), std::int64_t{0});
}

Topology::Topology(std::vector<std::int64_t> agents_per_dc)
    : agents_per_dc_(std::move(agents_per_dc)),
      member_count_(1 + static_cast<std::int64_t>(agents_per_dc_.size()) + total_agents(agents_per_dc_)) {}

Topology Topology::from_agents(std::vector<std::int64_t> agents_per_dc) {
  if (agents_per_dc.empty()) {
    throw Error(ErrorCode::InvalidConfig, "topology needs at least one distribution centre");
  }
  for (std::size_t i = 0; i < agents_per_dc.size(); ++i) {
    if (agents_per_dc[i] < 1) {
      throw Error(ErrorCode::InvalidConfig,
                  "distribution centre " + std::to_string(i + 1) + " must serve at least one agent");
    }
  }
  return Topology(std::move(agents_per_dc));
}

Topology Topology::from_counts(std::int64_t dc_count, std::vector<std::int64_t> agents_per_dc,
                               std::int64_t member_count) {
  if (dc_count != static_cast<std::int64_t>(agents_per_dc.size())) {
    throw Error(ErrorCode::InvalidConfig, "dc_count = " + std::to_string(dc_count) + " but agents_per_dc has " +
                                              std::to_string(agents_per_dc.size()) + " entries");
  }
  Topology topology = from_agents(std::move(agents_per_dc));
  if (topology.member_count() != member_count) {
    throw Error(ErrorCode::InvalidConfig, "member_count = " + std::to_string(member_count) +
                                              " but the chain has " + std::to_string(topology.member_count()) +
                                              " members (1 factory + centres + agents)");
  }
  return topology;
}

std::int64_t dimension(const Topology& topology) noexcept { return topology.member_count() + 1; }

Bounds Bounds::with_velocity_fraction(std::int64_t product_lb, std::int64_t product_ub, StockLevel stock_lb,
                                      StockLevel stock_ub, double fraction) {
  Bounds b;
  b.product_lb = product_lb;
  b.product_ub = product_ub;
  b.stock_lb = stock_lb;
  b.stock_ub = stock_ub;
  const double pv = fraction * static_cast<double>(product_ub - product_lb);
  const double sv = fraction * static_cast<double>(stock_ub - stock_lb);
  b.product_velocity = {-pv, pv};
  b.stock_velocity = {-sv, sv};
  return b;
}

namespace {

void check_velocity(const VelocityLimits& v, const char* what) {
  if (!(std::isfinite(v.min) && std::isfinite(v.max) && v.min < 0.0 && 0.0 < v.max)) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(what) + " velocity limits must satisfy v_min < 0 < v_max");
  }
}

}  // namespace

void Bounds::validate() const {
  if (product_lb < 1 || product_lb > product_ub) {
    throw Error(ErrorCode::InvalidConfig, "product bounds must satisfy 1 <= product_lb <= product_ub");
  }
  if (stock_lb >= stock_ub) {
    throw Error(ErrorCode::InvalidConfig, "stock bounds must satisfy stock_lb < stock_ub");
  }
  check_velocity(product_velocity, "product");
  check_velocity(stock_velocity, "stock");
}

Weights weights_from_priorities(const PriorityConfig& p) {
  for (double r : {p.r1, p.r2, p.r3}) {
    if (!std::isfinite(r) || r < 0.0) {
      throw Error(ErrorCode::InvalidConfig, "priorities must be finite and non-negative");
    }
  }
  const double sum = p.r1 + p.r2 + p.r3;
  if (sum == 0.0) {
    throw Error(ErrorCode::ZeroPrioritySum, "r1 + r2 + r3 must be positive");
  }
  if (p.r2 + p.r3 == 0.0) {
    throw Error(ErrorCode::DegenerateLeadTimeWeights,
                "r2 + r3 must be positive, otherwise the lead-time logarithm is log(0)");
  }
  return {p.r1 / sum, p.r2 / sum, p.r3 / sum};
}

}  // namespace invpso
