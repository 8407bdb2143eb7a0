#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <unordered_map>
#include <vector>

#include "invpso/domain.hpp"

namespace invpso {

/// One period's stock levels of one product across every chain member.
struct HistoryRecord {
  Tid tid = 0;
  ProductId product_id = 0;
  std::vector<StockLevel> levels;

  bool operator==(const HistoryRecord&) const = default;
};

/// Transport time in days on each of the member_count - 1 links of one period.
struct StockLeadTimeRecord {
  Tid tid = 0;
  std::vector<std::int64_t> link_times;

  bool operator==(const StockLeadTimeRecord&) const = default;
};

struct RawMaterialLeadTime {
  ProductId product_id = 0;
  std::int64_t raw_material_id = 0;
  std::int64_t time = 0;

  bool operator==(const RawMaterialLeadTime&) const = default;
};

struct MatchResult {
  std::vector<Tid> tids;  // strictly increasing
  std::int64_t occurrences = 0;

  bool operator==(const MatchResult&) const = default;
};

/// Validated, immutable in-memory view of the three historical tables.
/// Records are held sorted by TID (raw materials by product, then material id).
class HistoryStore {
 public:
  /// Validates the tables against each other and the topology. Throws
  /// DuplicateTid, MissingLeadTimeRow, MissingRawMaterial or DimensionMismatch.
  HistoryStore(Topology topology, std::vector<HistoryRecord> history,
               std::vector<StockLeadTimeRecord> stock_lead_times,
               std::vector<RawMaterialLeadTime> raw_lead_times);

  const Topology& topology() const noexcept { return topology_; }
  const std::vector<HistoryRecord>& history() const noexcept { return history_; }
  const std::vector<StockLeadTimeRecord>& stock_lead_times() const noexcept { return stock_lead_; }
  const std::vector<RawMaterialLeadTime>& raw_lead_times() const noexcept { return raw_lead_; }

  std::int64_t total_periods() const noexcept { return static_cast<std::int64_t>(history_.size()); }

  /// Distinct product ids appearing in the history table, ascending.
  std::vector<ProductId> history_products() const;

  /// Distinct product ids with at least one raw-material row, ascending.
  std::vector<ProductId> raw_material_products() const;

  bool has_raw_materials(ProductId product_id) const noexcept {
    return raw_total_by_product_.contains(product_id);
  }

  /// Records with the given product whose every level lies within `radius` of
  /// `levels`. Throws DimensionMismatch if `levels` is not member_count wide.
  MatchResult match_individual(ProductId product_id, std::span<const StockLevel> levels,
                               std::int64_t radius) const;

  /// Sum of every link time over the given TIDs. Throws UnknownTid.
  std::int64_t stock_lead_time_total(std::span<const Tid> tids) const;

  /// Sum of raw-material lead times of a product. Throws MissingRawMaterial.
  std::int64_t raw_lead_time_total(ProductId product_id) const;

  bool operator==(const HistoryStore& other) const {
    return topology_ == other.topology_ && history_ == other.history_ &&
           stock_lead_ == other.stock_lead_ && raw_lead_ == other.raw_lead_;
  }

 private:
  Topology topology_;
  std::vector<HistoryRecord> history_;
  std::vector<StockLeadTimeRecord> stock_lead_;
  std::vector<RawMaterialLeadTime> raw_lead_;

  std::unordered_map<ProductId, std::vector<std::size_t>> history_by_product_;
  std::unordered_map<Tid, std::int64_t> stock_lead_total_by_tid_;
  std::unordered_map<ProductId, std::int64_t> raw_total_by_product_;
};

// CSV readers. `source` names the input in error messages.
std::vector<HistoryRecord> read_history_csv(std::istream& in, const Topology& topology,
                                            std::string_view source = "stock history");
std::vector<StockLeadTimeRecord> read_stock_lead_csv(std::istream& in, const Topology& topology,
                                                     std::string_view source = "stock lead times");
std::vector<RawMaterialLeadTime> read_raw_lead_csv(std::istream& in,
                                                   std::string_view source = "raw material lead times");

/// Reads and validates all three tables. Throws Io for unreadable paths.
HistoryStore load_store(const std::filesystem::path& history_path,
                        const std::filesystem::path& stock_lead_path,
                        const std::filesystem::path& raw_lead_path, const Topology& topology);

}  // namespace invpso
