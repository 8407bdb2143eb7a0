#pragma once

#include <vector>

#include "invpso/history_store.hpp"
#include "invpso/pso.hpp"

namespace invpso {

struct OracleCandidate {
  std::vector<double> position;
  double fitness = 0.0;
  std::int64_t occurrences = 0;
  bool empty_match = false;  // constructed to match no record
};

struct OracleReport {
  std::vector<OracleCandidate> candidates;
  std::size_t best_index = 0;
  // products in bounds for which no in-bounds vector escapes every record
  std::vector<ProductId> products_without_empty_candidate;

  const OracleCandidate& best() const { return candidates.at(best_index); }
};

/// Evaluates the objective at every history record's exact stock vector (for
/// its own product) plus one non-matching vector per product in bounds, and
/// keeps the minimum. Ties go to the earliest candidate.
OracleReport enumerate_oracle(const HistoryStore& store, const PsoConfig& config);

}  // namespace invpso
