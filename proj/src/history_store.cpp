#include "invpso/history_store.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "invpso/error.hpp"

namespace invpso {

namespace {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + " line " + std::to_string(line);
}

std::int64_t parse_int(std::string_view field, std::string_view source, std::size_t line) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::Parse, where(source, line) + ": '" + std::string(field) + "' is not an integer");
  }
  return value;
}

std::int64_t parse_non_negative(std::string_view field, std::string_view source, std::size_t line) {
  const std::int64_t value = parse_int(field, source, line);
  if (value < 0) {
    throw Error(ErrorCode::Parse, where(source, line) + ": lead time " + std::string(field) + " is negative");
  }
  return value;
}

/// Reads the whole stream, checks the header, returns the data rows.
class CsvTable {
 public:
  CsvTable(std::istream& in, std::string_view source) : source_(source) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text_ = buffer.str();

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string::npos) eol = text_.size();
      std::string_view line(text_.data() + pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      pos = eol + 1;
      if (line.empty()) continue;
      if (header_.empty()) {
        header_ = split(line);
        header_line_ = line_no;
      } else {
        rows_.push_back({line_no, split(line)});
      }
    }
    if (header_.empty()) {
      throw Error(ErrorCode::Parse, std::string(source) + ": file is empty");
    }
    if (rows_.empty()) {
      throw Error(ErrorCode::Parse, std::string(source) + ": no records after the header");
    }
  }

  /// Header must be `fixed..., prefix1, ..., prefixN` with N == expected_repeat.
  void expect_header(std::initializer_list<std::string_view> fixed, std::string_view prefix,
                     std::size_t expected_repeat, ErrorCode width_error) const {
    const std::size_t expected = fixed.size() + expected_repeat;
    std::vector<std::string> names(fixed.begin(), fixed.end());
    for (std::size_t i = 1; i <= expected_repeat; ++i) names.push_back(std::string(prefix) + std::to_string(i));

    const std::size_t common = std::min(header_.size(), expected);
    for (std::size_t i = 0; i < common; ++i) {
      if (header_[i] != names[i]) {
        throw Error(ErrorCode::Parse, where(source_, header_line_) + ": expected column '" + names[i] +
                                          "', found '" + std::string(header_[i]) + "'");
      }
    }
    if (header_.size() != expected) {
      throw Error(width_error, where(source_, header_line_) + ": header has " + std::to_string(header_.size()) +
                                   " columns, expected " + std::to_string(expected));
    }
  }

  void expect_width(const CsvRow& row, ErrorCode width_error) const {
    if (row.fields.size() != header_.size()) {
      throw Error(width_error, where(source_, row.line) + ": row has " + std::to_string(row.fields.size()) +
                                   " columns, expected " + std::to_string(header_.size()));
    }
  }

  const std::vector<CsvRow>& rows() const noexcept { return rows_; }
  std::string_view source() const noexcept { return source_; }

 private:
  std::string source_;
  std::string text_;
  std::vector<std::string_view> header_;
  std::size_t header_line_ = 0;
  std::vector<CsvRow> rows_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::vector<HistoryRecord> read_history_csv(std::istream& in, const Topology& topology, std::string_view source) {
  const CsvTable table(in, source);
  const auto members = static_cast<std::size_t>(topology.member_count());
  table.expect_header({"TID", "PI"}, "F", members, ErrorCode::DimensionMismatch);

  std::vector<HistoryRecord> records;
  records.reserve(table.rows().size());
  for (const CsvRow& row : table.rows()) {
    table.expect_width(row, ErrorCode::DimensionMismatch);
    HistoryRecord record;
    record.tid = parse_int(row.fields[0], source, row.line);
    record.product_id = parse_int(row.fields[1], source, row.line);
    if (record.tid < 1 || record.product_id < 1) {
      throw Error(ErrorCode::Parse, where(source, row.line) + ": TID and PI must be positive");
    }
    record.levels.reserve(members);
    for (std::size_t j = 0; j < members; ++j) record.levels.push_back(parse_int(row.fields[2 + j], source, row.line));
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<StockLeadTimeRecord> read_stock_lead_csv(std::istream& in, const Topology& topology,
                                                     std::string_view source) {
  const CsvTable table(in, source);
  const auto links = static_cast<std::size_t>(topology.member_count() - 1);
  table.expect_header({"TID"}, "T", links, ErrorCode::DimensionMismatch);

  std::vector<StockLeadTimeRecord> records;
  records.reserve(table.rows().size());
  for (const CsvRow& row : table.rows()) {
    table.expect_width(row, ErrorCode::DimensionMismatch);
    StockLeadTimeRecord record;
    record.tid = parse_int(row.fields[0], source, row.line);
    if (record.tid < 1) throw Error(ErrorCode::Parse, where(source, row.line) + ": TID must be positive");
    record.link_times.reserve(links);
    for (std::size_t j = 0; j < links; ++j) {
      record.link_times.push_back(parse_non_negative(row.fields[1 + j], source, row.line));
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<RawMaterialLeadTime> read_raw_lead_csv(std::istream& in, std::string_view source) {
  const CsvTable table(in, source);
  table.expect_header({"PI", "RM", "T"}, "", 0, ErrorCode::Parse);

  std::vector<RawMaterialLeadTime> records;
  records.reserve(table.rows().size());
  for (const CsvRow& row : table.rows()) {
    table.expect_width(row, ErrorCode::Parse);
    RawMaterialLeadTime record;
    record.product_id = parse_int(row.fields[0], source, row.line);
    record.raw_material_id = parse_int(row.fields[1], source, row.line);
    record.time = parse_non_negative(row.fields[2], source, row.line);
    if (record.product_id < 1 || record.raw_material_id < 1) {
      throw Error(ErrorCode::Parse, where(source, row.line) + ": PI and RM must be positive");
    }
    records.push_back(record);
  }
  return records;
}

HistoryStore::HistoryStore(Topology topology, std::vector<HistoryRecord> history,
                           std::vector<StockLeadTimeRecord> stock_lead_times,
                           std::vector<RawMaterialLeadTime> raw_lead_times)
    : topology_(std::move(topology)),
      history_(std::move(history)),
      stock_lead_(std::move(stock_lead_times)),
      raw_lead_(std::move(raw_lead_times)) {
  const auto members = static_cast<std::size_t>(topology_.member_count());
  if (history_.empty()) throw Error(ErrorCode::Parse, "history table has no records");

  std::ranges::sort(history_, {}, &HistoryRecord::tid);
  std::ranges::sort(stock_lead_, {}, &StockLeadTimeRecord::tid);
  std::ranges::sort(raw_lead_, [](const RawMaterialLeadTime& a, const RawMaterialLeadTime& b) {
    return std::pair(a.product_id, a.raw_material_id) < std::pair(b.product_id, b.raw_material_id);
  });

  for (std::size_t i = 0; i < history_.size(); ++i) {
    const HistoryRecord& r = history_[i];
    if (r.levels.size() != members) {
      throw Error(ErrorCode::DimensionMismatch, "history TID " + std::to_string(r.tid) + " has " +
                                                    std::to_string(r.levels.size()) + " stock levels, expected " +
                                                    std::to_string(members));
    }
    if (i > 0 && history_[i - 1].tid == r.tid) {
      throw Error(ErrorCode::DuplicateTid, "history TID " + std::to_string(r.tid) + " appears more than once");
    }
    history_by_product_[r.product_id].push_back(i);
  }

  for (std::size_t i = 0; i < stock_lead_.size(); ++i) {
    const StockLeadTimeRecord& r = stock_lead_[i];
    if (r.link_times.size() != members - 1) {
      throw Error(ErrorCode::DimensionMismatch, "lead-time TID " + std::to_string(r.tid) + " has " +
                                                    std::to_string(r.link_times.size()) + " link times, expected " +
                                                    std::to_string(members - 1));
    }
    if (i > 0 && stock_lead_[i - 1].tid == r.tid) {
      throw Error(ErrorCode::DuplicateTid, "lead-time TID " + std::to_string(r.tid) + " appears more than once");
    }
    stock_lead_total_by_tid_[r.tid] = std::accumulate(r.link_times.begin(), r.link_times.end(), std::int64_t{0});
  }

  for (std::size_t i = 0; i < raw_lead_.size(); ++i) {
    const RawMaterialLeadTime& r = raw_lead_[i];
    if (i > 0 && raw_lead_[i - 1].product_id == r.product_id &&
        raw_lead_[i - 1].raw_material_id == r.raw_material_id) {
      throw Error(ErrorCode::Parse, "raw material (PI " + std::to_string(r.product_id) + ", RM " +
                                        std::to_string(r.raw_material_id) + ") appears more than once");
    }
    raw_total_by_product_[r.product_id] += r.time;
  }

  for (const HistoryRecord& r : history_) {
    if (!stock_lead_total_by_tid_.contains(r.tid)) {
      throw Error(ErrorCode::MissingLeadTimeRow,
                  "history TID " + std::to_string(r.tid) + " has no stock lead-time row");
    }
  }
  for (const auto& [product, rows] : history_by_product_) {
    if (!raw_total_by_product_.contains(product)) {
      throw Error(ErrorCode::MissingRawMaterial, "product " + std::to_string(product) + " has no raw-material rows");
    }
  }
}

std::vector<ProductId> HistoryStore::history_products() const {
  std::vector<ProductId> products;
  for (const auto& [product, rows] : history_by_product_) products.push_back(product);
  std::ranges::sort(products);
  return products;
}

std::vector<ProductId> HistoryStore::raw_material_products() const {
  std::vector<ProductId> products;
  for (const auto& [product, total] : raw_total_by_product_) products.push_back(product);
  std::ranges::sort(products);
  return products;
}

MatchResult HistoryStore::match_individual(ProductId product_id, std::span<const StockLevel> levels,
                                           std::int64_t radius) const {
  if (levels.size() != static_cast<std::size_t>(topology_.member_count())) {
    throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(levels.size()) +
                                                  " stock levels, expected " +
                                                  std::to_string(topology_.member_count()));
  }
  MatchResult result;
  const auto it = history_by_product_.find(product_id);
  if (it == history_by_product_.end()) return result;

  for (const std::size_t index : it->second) {
    const HistoryRecord& record = history_[index];
    bool inside = true;
    for (std::size_t j = 0; j < levels.size() && inside; ++j) {
      inside = std::abs(record.levels[j] - levels[j]) <= radius;
    }
    if (inside) result.tids.push_back(record.tid);
  }
  // indices per product are in TID order already
  result.occurrences = static_cast<std::int64_t>(result.tids.size());
  return result;
}

std::int64_t HistoryStore::stock_lead_time_total(std::span<const Tid> tids) const {
  std::int64_t total = 0;
  for (const Tid tid : tids) {
    const auto it = stock_lead_total_by_tid_.find(tid);
    if (it == stock_lead_total_by_tid_.end()) {
      throw Error(ErrorCode::UnknownTid, "TID " + std::to_string(tid) + " has no stock lead-time row");
    }
    total += it->second;
  }
  return total;
}

std::int64_t HistoryStore::raw_lead_time_total(ProductId product_id) const {
  const auto it = raw_total_by_product_.find(product_id);
  if (it == raw_total_by_product_.end()) {
    throw Error(ErrorCode::MissingRawMaterial, "product " + std::to_string(product_id) + " has no raw-material rows");
  }
  return it->second;
}

HistoryStore load_store(const std::filesystem::path& history_path, const std::filesystem::path& stock_lead_path,
                        const std::filesystem::path& raw_lead_path, const Topology& topology) {
  std::istringstream history(read_file(history_path));
  std::istringstream stock(read_file(stock_lead_path));
  std::istringstream raw(read_file(raw_lead_path));
  return HistoryStore(topology, read_history_csv(history, topology, history_path.string()),
                      read_stock_lead_csv(stock, topology, stock_lead_path.string()),
                      read_raw_lead_csv(raw, raw_lead_path.string()));
}

}  // namespace invpso
