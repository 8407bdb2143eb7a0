#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "invpso/error.hpp"
#include "invpso/oracle.hpp"
#include "invpso/pso.hpp"
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

// 40-digit reference values (mpmath): 0.59375 + ln(43.375) and 0.625 + ln(5.5625)
constexpr double kTid1Fitness = 4.363633238267023264101980482011329830368;
constexpr double kEmptyPi3Fitness = 2.341047647492358600648887054837142947103;

PsoConfig paper_config() {
  PsoConfig c;
  c.priorities = {10, 5, 1};
  c.match_radius = 0;
  return c;
}

Particle particle(std::vector<double> pos, std::vector<double> vel, std::vector<double> pbest) {
  Particle p;
  p.position = std::move(pos);
  p.velocity = std::move(vel);
  p.pbest_position = std::move(pbest);
  return p;
}

}  // namespace

TEST(InertiaWeight, LinearSchedule) {
  PsoConfig c;
  c.w_max = 0.9;
  c.w_min = 0.4;
  c.max_iterations = 100;
  EXPECT_EQ(inertia_weight(c, 0), 0.9);
  EXPECT_EQ(inertia_weight(c, 100), 0.4);
  EXPECT_NEAR(inertia_weight(c, 50), 0.65, 1e-15);
}

TEST(UpdateVelocity, NoAttractionLeavesScaledVelocity) {
  Bounds b;
  const Particle p = particle({3, 10, -10}, {0.5, 100, -30}, {3, 10, -10});
  const auto v = update_velocity(p, p.position, 0.7, 2.0, 2.0, 0.3, 0.9, b);
  EXPECT_DOUBLE_EQ(v[0], 0.35);
  EXPECT_DOUBLE_EQ(v[1], 70.0);
  EXPECT_DOUBLE_EQ(v[2], -21.0);
}

TEST(UpdateVelocity, ClampsToLimits) {
  Bounds b;
  b.stock_velocity = {-200, 200};
  const Particle p = particle({1, 0, 0}, {0, 500, -500}, {1, 0, 0});
  const auto v = update_velocity(p, p.position, 1.0, 2.0, 2.0, 0.5, 0.5, b);
  EXPECT_EQ(v[1], 200.0);
  EXPECT_EQ(v[2], -200.0);
}

TEST(UpdateVelocity, WorkedExample) {
  Bounds b;
  b.stock_velocity = {-50, 50};
  // pbest - pos = 10, gbest - pos = -4
  const Particle p = particle({1, 100}, {0, 1.0}, {1, 110});
  const std::vector<double> gbest{1, 96};
  const double w = 0.9, c1 = 2.0, c2 = 2.0, r1 = 0.5, r2 = 0.25;
  const double expected = w * 1.0 + c1 * r1 * 10.0 + c2 * r2 * -4.0;
  ASSERT_DOUBLE_EQ(expected, 8.9);
  EXPECT_DOUBLE_EQ(update_velocity(p, gbest, w, c1, c2, r1, r2, b)[1], 8.9);
}

TEST(UpdateVelocity, PerDimensionCoefficients) {
  Bounds b;
  const Particle p = particle({1, 0, 0}, {0, 0, 0}, {1, 10, 10});
  const std::vector<double> r1{0.0, 0.1, 0.2}, r2{0.0, 0.0, 0.0};
  const auto v = update_velocity(p, p.position, 0.5, 1.0, 1.0, r1, r2, b);
  EXPECT_DOUBLE_EQ(v[1], 1.0);
  EXPECT_DOUBLE_EQ(v[2], 2.0);
}

TEST(UpdatePosition, AddsAndClamps) {
  Bounds b;
  const std::vector<double> pos{3, 10, -990, 999};
  EXPECT_EQ(update_position(pos, std::vector<double>(4, 0.0), b), pos);

  const auto moved = update_position(std::vector<double>{4.8, -990, 0, 0}, std::vector<double>{1.0, -25, 3, 0}, b);
  EXPECT_EQ(moved[0], 5.0);
  EXPECT_EQ(moved[1], -1000.0);
  EXPECT_EQ(moved[2], 3.0);
  EXPECT_EQ(update_position(std::vector<double>{1.1}, std::vector<double>{-0.5}, b)[0], 1.0);
}

TEST(Evaluate, MatchedFixtureRow) {
  const HistoryStore store = fixture_store();
  const std::vector<double> tid1{3, 632, 424, 247, -298, -115, 365, 961};
  EXPECT_NEAR(evaluate(store, paper_config(), tid1), kTid1Fitness, 1e-12);
}

TEST(Evaluate, UnmatchedPositionUsesRawLeadTimeOnly) {
  const HistoryStore store = fixture_store();
  const std::vector<double> zeros{3, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_NEAR(evaluate(store, paper_config(), zeros), kEmptyPi3Fitness, 1e-12);
}

TEST(Evaluate, RoundsContinuousPositionBeforeMatching) {
  const HistoryStore store = fixture_store();
  const std::vector<double> near{2.6, 631.6, 424.4, 246.5, -298.4, -114.5, 365.2, 960.7};
  EXPECT_NEAR(evaluate(store, paper_config(), near), kTid1Fitness, 1e-12);
  EXPECT_EQ(round_coordinate(2.5), 3);
  EXPECT_EQ(round_coordinate(-2.5), -3);
}

TEST(Evaluate, Base10Logarithm) {
  const HistoryStore store = fixture_store();
  PsoConfig c = paper_config();
  c.log_base = LogBase::Base10;
  const std::vector<double> tid1{3, 632, 424, 247, -298, -115, 365, 961};
  EXPECT_NEAR(evaluate(store, c, tid1), 0.59375 + std::log10(43.375), 1e-12);
}

TEST(Evaluate, PureAndBitIdentical) {
  const HistoryStore store = fixture_store();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> prod(1, 5), stock(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> pos{prod(rng)};
    for (int j = 0; j < 7; ++j) pos.push_back(stock(rng));
    const double a = evaluate(store, paper_config(), pos);
    const double b = evaluate(store, paper_config(), pos);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  }
}

TEST(Evaluate, LogDomainAndDimensionErrors) {
  const HistoryStore store = fixture_store();
  const std::vector<double> zeros{3, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(code_of([&] { evaluate(store, Weights{0.5, 0.5, 0.0}, 0, LogBase::Natural, zeros); }),
            ErrorCode::LogDomain);
  EXPECT_EQ(code_of([&] { evaluate(store, paper_config(), std::vector<double>{3, 0, 0}); }),
            ErrorCode::DimensionMismatch);
}

TEST(Evaluate, MoreOccurrencesLowerFitness) {
  // Two stores identical except that one more period repeats the probe vector.
  // Repeated periods carry zero link times so t_stock stays fixed.
  const Topology t = Topology::from_agents({1});
  const std::string raw = "PI,RM,T\n1,1,12\n";
  const std::vector<double> probe{1, 5, 5, 5};
  std::mt19937_64 rng(1);
  for (int k = 0; k < 6; ++k) {
    auto build = [&](int copies) {
      std::string history = "TID,PI,F1,F2,F3\n", stock = "TID,T1,T2\n";
      for (int tid = 1; tid <= 8; ++tid) {
        const bool copy = tid <= copies;
        history += std::to_string(tid) + (copy ? ",1,5,5,5\n" : ",1,-9,-9," + std::to_string(tid) + "\n");
        stock += std::to_string(tid) + (copy ? ",0,0\n" : ",3,4\n");
      }
      return store_from_csv(t, history, stock, raw);
    };
    const Weights w = weights_from_priorities({1.0 + static_cast<double>(rng() % 10), 1, 1});
    const double fewer = evaluate(build(k), w, 0, LogBase::Natural, probe);
    const double more = evaluate(build(k + 1), w, 0, LogBase::Natural, probe);
    EXPECT_LT(more, fewer);
  }
}

TEST(InitSwarm, ShapeBoundsAndDeterminism) {
  const HistoryStore store = fixture_store();
  PsoConfig c = paper_config();
  c.swarm_size = 2;
  Rng a(123), b(123);
  const auto first = init_swarm(store, c, a);
  const auto second = init_swarm(store, c, b);
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(first, second);
  for (const Particle& p : first) {
    ASSERT_EQ(p.position.size(), 8u);
    EXPECT_EQ(p.pbest_position, p.position);
    EXPECT_EQ(p.pbest_fitness, p.fitness);
    EXPECT_EQ(p.fitness, evaluate(store, c, p.position));
    for (std::size_t d = 0; d < 8; ++d) {
      EXPECT_GE(p.position[d], c.bounds.lower(d));
      EXPECT_LE(p.position[d], c.bounds.upper(d));
      EXPECT_GE(p.velocity[d], c.bounds.velocity(d).min);
      EXPECT_LE(p.velocity[d], c.bounds.velocity(d).max);
    }
  }
}

TEST(Run, DeterministicForSeed) {
  const HistoryStore store = fixture_store();
  PsoConfig c = paper_config();
  c.seed = 77;
  EXPECT_EQ(run(store, c), run(store, c));
  c.per_dimension_r = true;
  EXPECT_EQ(run(store, c), run(store, c));
  PsoConfig other = c;
  other.seed = 78;
  EXPECT_NE(run(store, c).best_position, run(store, other).best_position);
}

TEST(Run, InvariantsHoldEveryIteration) {
  const HistoryStore store = fixture_store();
  PsoConfig c;  // default radius 100
  c.swarm_size = 12;
  c.max_iterations = 60;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    c.seed = seed;
    c.per_dimension_r = seed % 2 == 1;
    double last_gbest = INFINITY;
    std::vector<double> best_seen(12, INFINITY);
    const auto result = run(store, c, [&](std::int64_t, std::span<const Particle> swarm,
                                          std::span<const double>, double gbest) {
      EXPECT_LE(gbest, last_gbest);
      last_gbest = gbest;
      for (std::size_t i = 0; i < swarm.size(); ++i) {
        const Particle& p = swarm[i];
        best_seen[i] = std::min(best_seen[i], p.fitness);
        EXPECT_EQ(p.pbest_fitness, best_seen[i]);
        EXPECT_LE(p.pbest_fitness, p.fitness);
        EXPECT_EQ(p.pbest_fitness, evaluate(store, c, p.pbest_position));
        EXPECT_GE(p.pbest_fitness, gbest);
        for (std::size_t d = 0; d < p.position.size(); ++d) {
          ASSERT_GE(p.position[d], c.bounds.lower(d));
          ASSERT_LE(p.position[d], c.bounds.upper(d));
          ASSERT_GE(p.velocity[d], c.bounds.velocity(d).min);
          ASSERT_LE(p.velocity[d], c.bounds.velocity(d).max);
        }
      }
    });
    ASSERT_EQ(result.gbest_trace.size(), 60u);
    for (std::size_t i = 1; i < result.gbest_trace.size(); ++i) {
      EXPECT_LE(result.gbest_trace[i].fitness, result.gbest_trace[i - 1].fitness);
      EXPECT_EQ(result.gbest_trace[i].iteration, static_cast<std::int64_t>(i + 1));
    }
    EXPECT_EQ(result.best_fitness, result.gbest_trace.back().fitness);
    EXPECT_EQ(result.best_fitness, evaluate(store, c, result.best_position));
  }
}

TEST(Run, StallWindowStopsEarly) {
  const HistoryStore store = fixture_store();
  PsoConfig c = paper_config();
  c.max_iterations = 500;
  c.stall_window = 5;
  const auto result = run(store, c);
  ASSERT_LT(result.iterations_run, 500);
  ASSERT_GE(result.gbest_trace.size(), 5u);
  const auto n = result.gbest_trace.size();
  // the final window saw no improvement
  EXPECT_EQ(result.gbest_trace[n - 1].fitness, result.gbest_trace[n - 5].fitness);
}

TEST(Run, RejectsBadConfiguration) {
  const HistoryStore store = fixture_store();
  PsoConfig c = paper_config();
  c.priorities = {1, 0, 0};
  EXPECT_EQ(code_of([&] { run(store, c); }), ErrorCode::DegenerateLeadTimeWeights);
  c = paper_config();
  c.swarm_size = 1;
  EXPECT_EQ(code_of([&] { run(store, c); }), ErrorCode::InvalidConfig);
  c = paper_config();
  c.w_min = 0.95;
  EXPECT_EQ(code_of([&] { run(store, c); }), ErrorCode::InvalidConfig);
  c = paper_config();
  c.priorities = {1, 1, 0};  // unmatched positions would evaluate log(0)
  EXPECT_EQ(code_of([&] { run(store, c); }), ErrorCode::LogDomain);
  c = paper_config();
  c.bounds.product_ub = 6;  // product 6 has no raw materials
  EXPECT_EQ(code_of([&] { run(store, c); }), ErrorCode::MissingRawMaterial);
}

TEST(Run, NearOracleOptimumOnFixture) {
  const HistoryStore store = fixture_store();
  PsoConfig c;
  c.priorities = {10, 5, 1};
  c.max_iterations = 100;
  const double optimum = enumerate_oracle(store, c).best().fitness;
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.seed = seed;
    if (run(store, c).best_fitness <= 1.05 * optimum) ++within;
  }
  EXPECT_GE(within, 16);
}
