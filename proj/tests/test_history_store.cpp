#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "invpso/error.hpp"
#include "invpso/history_store.hpp"
#include "test_support.hpp"

using namespace invpso;
using namespace invpso::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected invpso::Error";
  return ErrorCode::Io;
}

/// Exact-equality scan, independent of the radius arithmetic.
std::vector<Tid> brute_force_exact(const HistoryStore& store, ProductId product, const std::vector<StockLevel>& levels) {
  std::vector<Tid> out;
  for (const HistoryRecord& r : store.history()) {
    if (r.product_id == product && r.levels == levels) out.push_back(r.tid);
  }
  return out;
}

const std::string kRaw = "PI,RM,T\n1,1,5\n2,1,7\n";
const Topology kSmall = Topology::from_agents({1});  // 3 members, 2 links

}  // namespace

TEST(LoadStore, FixtureTablesLoad) {
  const HistoryStore store = fixture_store();
  EXPECT_EQ(store.total_periods(), 20);
  EXPECT_EQ(store.history().size(), 20u);
  EXPECT_EQ(store.stock_lead_times().size(), 20u);
  EXPECT_EQ(store.raw_lead_times().size(), 20u);
  EXPECT_EQ(store.history_products(), (std::vector<ProductId>{1, 2, 3, 4, 5}));
  EXPECT_EQ(store.history().front().levels, (std::vector<StockLevel>{632, 424, 247, -298, -115, 365, 961}));
}

TEST(LoadStore, ReloadIsIdentical) { EXPECT_EQ(fixture_store(), fixture_store()); }

TEST(LoadStore, RecordsSortedByTidRegardlessOfFileOrder) {
  const HistoryStore store = store_from_csv(kSmall, "TID,PI,F1,F2,F3\n2,1,0,0,0\n1,2,1,1,1\n",
                                            "TID,T1,T2\n2,1,1\n1,3,4\n", kRaw);
  EXPECT_EQ(store.history()[0].tid, 1);
  EXPECT_EQ(store.history()[1].tid, 2);
  EXPECT_EQ(store.stock_lead_times()[0].link_times, (std::vector<std::int64_t>{3, 4}));
}

TEST(LoadStore, EmptyHistoryIsParseError) {
  EXPECT_EQ(code_of([] { store_from_csv(kSmall, "", "TID,T1,T2\n1,1,1\n", kRaw); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { store_from_csv(kSmall, "TID,PI,F1,F2,F3\n", "TID,T1,T2\n1,1,1\n", kRaw); }),
            ErrorCode::Parse);
}

TEST(LoadStore, MalformedFieldsAreParseErrors) {
  const std::string stock = "TID,T1,T2\n1,1,1\n";
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, "TID,PI,F1,F2,F3\n1,1,x,0,0\n", stock, kRaw); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, "TID,PI,F1,F2,F3\n1,1,1.5,0,0\n", stock, kRaw); }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, "TID,PI,F1,F2,F3\n1,1,0,0,0\n", "TID,T1,T2\n1,-1,1\n", kRaw); }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, "TID,PX,F1,F2,F3\n1,1,0,0,0\n", stock, kRaw); }), ErrorCode::Parse);
}

TEST(LoadStore, ToleratesCrlfAndMissingFinalNewline) {
  const HistoryStore store =
      store_from_csv(kSmall, "TID,PI,F1,F2,F3\r\n1,1,-5,0,7\r\n", "TID,T1,T2\n1,2,3", kRaw);
  EXPECT_EQ(store.history()[0].levels, (std::vector<StockLevel>{-5, 0, 7}));
  EXPECT_EQ(store.stock_lead_time_total(std::vector<Tid>{1}), 5);
}

TEST(LoadStore, NarrowRowIsDimensionMismatch) {
  std::ifstream in(fixture_history());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  // drop the last stock column from the header and the row
  header = header.substr(0, header.rfind(','));
  row = row.substr(0, row.rfind(','));
  std::ifstream stock(fixture_stock_lead()), raw(fixture_raw_lead());
  std::stringstream s, r;
  s << stock.rdbuf();
  r << raw.rdbuf();
  const Topology seven = paper_topology();
  EXPECT_EQ(code_of([&] { store_from_csv(seven, header + "\n" + row + "\n", s.str(), r.str()); }),
            ErrorCode::DimensionMismatch);
  // correct header, short row
  EXPECT_EQ(code_of([&] {
              store_from_csv(seven, "TID,PI,F1,F2,F3,F4,F5,F6,F7\n" + row + "\n", s.str(), r.str());
            }),
            ErrorCode::DimensionMismatch);
}

TEST(LoadStore, CrossTableViolations) {
  const std::string history = "TID,PI,F1,F2,F3\n1,1,0,0,0\n2,2,0,0,0\n";
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, history, "TID,T1,T2\n1,1,1\n", kRaw); }),
            ErrorCode::MissingLeadTimeRow);
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, history, "TID,T1,T2\n1,1,1\n2,1,1\n", "PI,RM,T\n1,1,5\n"); }),
            ErrorCode::MissingRawMaterial);
  EXPECT_EQ(code_of([&] {
              store_from_csv(kSmall, "TID,PI,F1,F2,F3\n1,1,0,0,0\n1,2,0,0,0\n", "TID,T1,T2\n1,1,1\n", kRaw);
            }),
            ErrorCode::DuplicateTid);
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, history, "TID,T1,T2\n1,1,1\n2,1,1\n2,3,3\n", kRaw); }),
            ErrorCode::DuplicateTid);
  EXPECT_EQ(code_of([&] { store_from_csv(kSmall, history, "TID,T1,T2\n1,1,1\n2,1,1\n", kRaw + "1,1,9\n"); }),
            ErrorCode::Parse);
}

TEST(LoadStore, UnreadablePathIsIoError) {
  EXPECT_EQ(code_of([] {
              load_store("/nonexistent/stock_history.csv", fixture_stock_lead(), fixture_raw_lead(), paper_topology());
            }),
            ErrorCode::Io);
}

TEST(MatchIndividual, ExactRowMatchesOnlyItself) {
  const HistoryStore store = fixture_store();
  const std::vector<StockLevel> tid1{632, 424, 247, -298, -115, 365, 961};
  const MatchResult m = store.match_individual(3, tid1, 0);
  EXPECT_EQ(m.tids, (std::vector<Tid>{1}));
  EXPECT_EQ(m.occurrences, 1);
  // same vector under another product does not occur
  EXPECT_EQ(store.match_individual(2, tid1, 0).occurrences, 0);
}

TEST(MatchIndividual, AllZeroVectorHasNoMatch) {
  const HistoryStore store = fixture_store();
  const MatchResult m = store.match_individual(3, std::vector<StockLevel>(7, 0), 0);
  EXPECT_TRUE(m.tids.empty());
  EXPECT_EQ(m.occurrences, 0);
}

TEST(MatchIndividual, WideRadiusReturnsEveryRowOfTheProduct) {
  const HistoryStore store = fixture_store();
  const MatchResult m = store.match_individual(3, std::vector<StockLevel>(7, 0), 2000);
  EXPECT_EQ(m.tids, (std::vector<Tid>{1, 5, 7, 8, 12, 15, 19}));
  EXPECT_EQ(m.occurrences, 7);
}

TEST(MatchIndividual, RadiusIsInclusive) {
  const HistoryStore store = fixture_store();
  std::vector<StockLevel> near{632 + 5, 424 - 5, 247, -298, -115, 365, 961};
  EXPECT_EQ(store.match_individual(3, near, 5).occurrences, 1);
  EXPECT_EQ(store.match_individual(3, near, 4).occurrences, 0);
}

TEST(MatchIndividual, WrongWidthIsDimensionMismatch) {
  const HistoryStore store = fixture_store();
  EXPECT_EQ(code_of([&] { store.match_individual(3, std::vector<StockLevel>(6, 0), 0); }),
            ErrorCode::DimensionMismatch);
}

TEST(MatchIndividual, ZeroRadiusEqualsBruteForceOnFixture) {
  const HistoryStore store = fixture_store();
  for (const HistoryRecord& r : store.history()) {
    for (ProductId p = 1; p <= 5; ++p) {
      const MatchResult m = store.match_individual(p, r.levels, 0);
      EXPECT_EQ(m.tids, brute_force_exact(store, p, r.levels));
      EXPECT_EQ(m.occurrences, static_cast<std::int64_t>(m.tids.size()));
    }
  }
}

TEST(MatchIndividual, PropertiesOnSyntheticStores) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    SynthConfig cfg;
    cfg.periods = 5 + static_cast<std::int64_t>(rng() % 60);
    cfg.products = 1 + static_cast<std::int64_t>(rng() % 4);
    cfg.topology = Topology::from_agents({1 + static_cast<std::int64_t>(rng() % 2), 1});
    cfg.stock_lb = -20;  // narrow range so duplicates and near-misses occur
    cfg.stock_ub = 20;
    cfg.seed = rng();
    const HistoryStore store = synthetic_store(cfg);
    const auto members = static_cast<std::size_t>(cfg.topology.member_count());

    for (int q = 0; q < 20; ++q) {
      const ProductId p = 1 + static_cast<ProductId>(rng() % static_cast<std::uint64_t>(cfg.products));
      std::vector<StockLevel> levels(members);
      if (q % 2 == 0) {
        levels = store.history()[rng() % store.history().size()].levels;
      } else {
        for (auto& x : levels) x = static_cast<StockLevel>(rng() % 41) - 20;
      }
      const std::int64_t d1 = static_cast<std::int64_t>(rng() % 15);
      const std::int64_t d2 = d1 + static_cast<std::int64_t>(rng() % 15);
      const MatchResult narrow = store.match_individual(p, levels, d1);
      const MatchResult wide = store.match_individual(p, levels, d2);

      EXPECT_TRUE(std::ranges::includes(wide.tids, narrow.tids));
      EXPECT_TRUE(std::ranges::is_sorted(wide.tids));
      EXPECT_TRUE(std::ranges::adjacent_find(wide.tids) == wide.tids.end());
      EXPECT_LE(wide.occurrences, store.total_periods());
      EXPECT_EQ(store.match_individual(p, levels, 0).tids, brute_force_exact(store, p, levels));
    }
  }
}

TEST(StockLeadTime, FixtureTotals) {
  const HistoryStore store = fixture_store();
  EXPECT_EQ(store.stock_lead_time_total(std::vector<Tid>{1}), 121);
  EXPECT_EQ(store.stock_lead_time_total(std::vector<Tid>{}), 0);
  EXPECT_EQ(store.stock_lead_time_total(std::vector<Tid>{1, 2}), 248);
  EXPECT_EQ(code_of([&] { store.stock_lead_time_total(std::vector<Tid>{99}); }), ErrorCode::UnknownTid);
}

TEST(StockLeadTime, AdditiveOverDisjointSets) {
  const HistoryStore store = fixture_store();
  std::mt19937_64 rng(5);
  std::vector<Tid> all(20);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Tid>(i + 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::ranges::shuffle(all, rng);
    const std::size_t cut = rng() % all.size();
    const std::span<const Tid> a(all.data(), cut), b(all.data() + cut, all.size() - cut);
    EXPECT_EQ(store.stock_lead_time_total(all), store.stock_lead_time_total(a) + store.stock_lead_time_total(b));
  }
}

TEST(RawLeadTime, FixtureTotals) {
  const HistoryStore store = fixture_store();
  EXPECT_EQ(store.raw_lead_time_total(3), 89);
  EXPECT_EQ(store.raw_lead_time_total(1), 31);
  EXPECT_EQ(code_of([&] { store.raw_lead_time_total(99); }), ErrorCode::MissingRawMaterial);
}
