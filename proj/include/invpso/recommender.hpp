#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invpso/domain.hpp"

namespace invpso {

enum class Direction { Increase, Decrease, None };

std::string_view to_string(Direction direction) noexcept;

struct Action {
  std::int64_t member_index = 0;
  std::string member_label;
  Direction direction = Direction::None;
  std::int64_t quantity = 0;

  bool operator==(const Action&) const = default;
};

struct Recommendation {
  ProductId product_id = 0;
  std::vector<Action> actions;
  double fitness = 0.0;
  Weights weights;
  std::int64_t iterations = 0;

  bool operator==(const Recommendation&) const = default;
};

/// "factory", "distribution centre k", then "agent k" numbered across centres.
std::vector<std::string> member_labels(const Topology& topology);

/// Shortage (negative level) becomes an increase, excess a decrease. Throws
/// DimensionMismatch if the position is not member_count + 1 wide.
Recommendation interpret(std::span<const double> best_position, const Topology& topology);

enum class ReportFormat { Text, Json };

std::string render_report(const Recommendation& recommendation, ReportFormat format);

/// Inverse of the JSON rendering. Throws Parse on malformed documents.
Recommendation parse_report_json(std::string_view json);

}  // namespace invpso
