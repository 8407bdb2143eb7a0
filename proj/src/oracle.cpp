#include "invpso/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace invpso {

namespace {

/// Looks for an in-bounds integer stock vector that lies outside the match box
/// of every given record. Greedy per dimension: pick the candidate value that
/// excludes the most still-matching records.
std::optional<std::vector<StockLevel>> escape_vector(const std::vector<const HistoryRecord*>& records,
                                                     std::size_t members, const Bounds& bounds,
                                                     std::int64_t radius) {
  std::vector<StockLevel> v(members, std::clamp<StockLevel>(0, bounds.stock_lb, bounds.stock_ub));
  std::vector<const HistoryRecord*> remaining = records;

  for (std::size_t j = 0; j < members && !remaining.empty(); ++j) {
    std::vector<StockLevel> candidates{bounds.stock_lb, bounds.stock_ub};
    for (const HistoryRecord* r : remaining) {
      candidates.push_back(r->levels[j] - radius - 1);
      candidates.push_back(r->levels[j] + radius + 1);
    }
    std::size_t best_excluded = 0;
    for (const StockLevel x : candidates) {
      if (x < bounds.stock_lb || x > bounds.stock_ub) continue;
      const auto excluded = static_cast<std::size_t>(std::ranges::count_if(
          remaining, [&](const HistoryRecord* r) { return std::abs(r->levels[j] - x) > radius; }));
      if (excluded > best_excluded) {
        best_excluded = excluded;
        v[j] = x;
      }
    }
    std::erase_if(remaining, [&](const HistoryRecord* r) { return std::abs(r->levels[j] - v[j]) > radius; });
  }
  if (!remaining.empty()) return std::nullopt;
  return v;
}

}  // namespace

OracleReport enumerate_oracle(const HistoryStore& store, const PsoConfig& config) {
  validate_config(config);
  const Weights weights = weights_from_priorities(config.priorities);
  const auto members = static_cast<std::size_t>(store.topology().member_count());

  OracleReport report;
  auto add = [&](std::vector<double> position, bool empty_match) {
    OracleCandidate c;
    c.fitness = evaluate(store, weights, config.match_radius, config.log_base, position);
    c.occurrences = store.match_individual(round_coordinate(position[0]), rounded_levels(position),
                                           config.match_radius)
                        .occurrences;
    c.position = std::move(position);
    c.empty_match = empty_match;
    report.candidates.push_back(std::move(c));
  };

  for (const HistoryRecord& r : store.history()) {
    std::vector<double> position{static_cast<double>(r.product_id)};
    position.insert(position.end(), r.levels.begin(), r.levels.end());
    add(std::move(position), false);
  }

  for (ProductId product = config.bounds.product_lb; product <= config.bounds.product_ub; ++product) {
    std::vector<const HistoryRecord*> records;
    for (const HistoryRecord& r : store.history()) {
      if (r.product_id == product) records.push_back(&r);
    }
    const auto escape = escape_vector(records, members, config.bounds, config.match_radius);
    if (!escape) {
      report.products_without_empty_candidate.push_back(product);
      continue;
    }
    std::vector<double> position{static_cast<double>(product)};
    position.insert(position.end(), escape->begin(), escape->end());
    add(std::move(position), true);
  }

  for (std::size_t i = 1; i < report.candidates.size(); ++i) {
    if (report.candidates[i].fitness < report.candidates[report.best_index].fitness) report.best_index = i;
  }
  return report;
}

}  // namespace invpso
