#include <gtest/gtest.h>

#include <sstream>

#include "nsb/admission/instance.h"
#include "nsb/admission/instance_io.h"
#include "nsb/admission/solver.h"
#include "../support/oracles.h"

using namespace nsb;
using namespace nsb::admission;

TEST(Instance, ValidationAndRevenues) {
  const auto inst = make_instance({{1, 2}, {3, 4}}, {{5, 6}, {7, 8}}, {10, 10});
  EXPECT_EQ(inst.revenues, (std::vector<std::int64_t>{11, 15}));
  EXPECT_THROW(make_instance({{1, 2}}, {{5}}, {10, 10}), std::invalid_argument);
  EXPECT_THROW(make_instance({{-1, 2}}, {{5, 1}}, {10, 10}), std::invalid_argument);
  AdmissionInstance broken = inst;
  broken.revenues[0] = 0;
  EXPECT_FALSE(broken.validate().empty());
}

TEST(Instance, DecisionAndFeasibility) {
  const auto inst = make_instance({{6, 1}, {6, 1}}, {{1, 1}, {2, 2}}, {10, 10});
  const auto both = decision_from_y(inst, {1, 1});
  EXPECT_FALSE(is_feasible(inst, both));
  const auto one = decision_from_y(inst, {0, 1});
  EXPECT_TRUE(is_feasible(inst, one));
  EXPECT_EQ(one.objective, 4);
  EXPECT_EQ(one.x[1], (std::vector<std::uint8_t>{1, 1}));
}

TEST(Solver, SmallKnownOptimum) {
  // Greedy by density takes request 0 first and then nothing else fits;
  // the optimum is requests 1 and 2.
  const auto inst2 = make_instance({{6}, {5}, {5}}, {{10}, {8}, {8}}, {10});
  const auto exact = solve_exact(inst2);
  EXPECT_EQ(exact.objective, 16);
  EXPECT_EQ(exact.y, (std::vector<std::uint8_t>{0, 1, 1}));
  const auto greedy = solve_greedy(inst2);
  EXPECT_TRUE(is_feasible(inst2, greedy));
  EXPECT_LE(greedy.objective, exact.objective);
}

TEST(Solver, EmptyAndZeroCapacity) {
  const auto empty = make_instance({}, {}, {5});
  EXPECT_EQ(solve_exact(empty).objective, 0);
  const auto zero = make_instance({{1}, {0}}, {{3}, {4}}, {0});
  EXPECT_EQ(solve_exact(zero).objective, 4);
  EXPECT_EQ(solve_greedy(zero).objective, 4);
  EXPECT_EQ(brute_force_oracle(zero), 4);
}

TEST(Solver, ExactMatchesEnumerationAndGreedyIsBounded) {
  Rng rng = make_rng(42, "admission-unit");
  for (int k = 0; k < 300; ++k) {
    const auto inst = oracle::random_instance(rng, 14, 4);
    const auto exact = solve_exact(inst);
    const auto greedy = solve_greedy(inst);
    ASSERT_TRUE(is_feasible(inst, exact));
    ASSERT_TRUE(is_feasible(inst, greedy));
    const std::int64_t best = oracle::enumerate_best(inst);
    EXPECT_EQ(exact.objective, best) << "instance " << k;
    EXPECT_EQ(brute_force_oracle(inst), best) << "instance " << k;
    EXPECT_LE(greedy.objective, exact.objective);
  }
}

TEST(Solver, ExactIsDeterministic) {
  Rng rng = make_rng(9, "det");
  const auto inst = oracle::random_instance(rng, 20, 3);
  EXPECT_EQ(solve_exact(inst).y, solve_exact(inst).y);
}

TEST(Solver, BruteForceRefusesLargeInstances) {
  admission::Matrix pi(21, std::vector<std::int64_t>{1});
  admission::Matrix th(21, std::vector<std::int64_t>{1});
  const auto inst = make_instance(pi, th, {5});
  EXPECT_THROW(brute_force_oracle(inst), std::invalid_argument);
  EXPECT_EQ(solve_exact(inst).objective, 5);
}

TEST(InstanceIo, RoundTrip) {
  Rng rng = make_rng(3, "io");
  for (int k = 0; k < 20; ++k) {
    const auto inst = oracle::random_instance(rng, 8, 4);
    std::stringstream s;
    write_instance(s, inst);
    const auto back = read_instance(s);
    EXPECT_EQ(back.demands, inst.demands);
    EXPECT_EQ(back.prices, inst.prices);
    EXPECT_EQ(back.capacity, inst.capacity);
    EXPECT_EQ(back.revenues, inst.revenues);
  }
}

TEST(InstanceIo, ReportsLineOfError) {
  std::istringstream in("# demo\nI 2\nJ 1\nr 10 10\npi 1 x\ntheta 1 1\n");
  try {
    read_instance(in);
    FAIL() << "expected InstanceFormatError";
  } catch (const InstanceFormatError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
  std::istringstream missing("I 1\nJ 2\nr 5\npi 1\ntheta 1\n");
  EXPECT_THROW(read_instance(missing), InstanceFormatError);
}
