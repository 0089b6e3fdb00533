#include "mbqc/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mbqc/direct_optimizer.hpp"
#include "mbqc/rewrite_engine.hpp"
#include "fixtures.hpp"

namespace mbqc {
namespace {

using testing::example1;
using testing::example2;

OpenGraph path3(Angle a1, Angle a2) {
  OpenGraph g;
  g.vertices = {1, 2, 3};
  g.edges = {{1, 2}, {2, 3}};
  g.inputs = {1};
  g.outputs = {3};
  g.angles.emplace(1, a1);
  g.angles.emplace(2, a2);
  return g;
}

// J(theta) = H Rz(theta), the map a single measured edge implements.
LinearMap j_matrix(double theta) {
  const Amplitude phase(std::cos(theta), std::sin(theta));
  const double r = 1.0 / std::numbers::sqrt2;
  return {{r, r * phase}, {r, -r * phase}};
}

LinearMap multiply(const LinearMap& a, const LinearMap& b) {
  LinearMap out(a.size(), std::vector<Amplitude>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b[0].size(); ++j) {
      Amplitude sum(0.0, 0.0);
      for (std::size_t k = 0; k < b.size(); ++k) sum += a[i][k] * b[k][j];
      out[i][j] = sum;
    }
  }
  return out;
}

TEST(Simulator, StatesEqualUpToPhase) {
  const Amplitude i(0.0, 1.0);
  const StateVector a{{0.6, 0.0}, {0.0, 0.8}};
  StateVector rotated(a);
  for (Amplitude& amp : rotated) amp *= std::exp(i * 0.7);
  EXPECT_TRUE(states_equal_up_to_phase(a, rotated));
  EXPECT_TRUE(states_equal_up_to_phase(a, a));
  EXPECT_FALSE(states_equal_up_to_phase(a, StateVector{{0.8, 0.0}, {0.0, 0.6}}));
  EXPECT_FALSE(states_equal_up_to_phase(a, StateVector{{0.6, 0.0}}));
}

TEST(Simulator, SingleEdgeImplementsJ) {
  for (const Angle alpha : {Angle(0, 1), Angle(1, 5), Angle(1, 2),
                            Angle(-2, 3)}) {
    Pattern p;
    p.inputs = {1};
    p.outputs = {2};
    p.commands = {Command::correct_x(2, {1}),
                  Command::measure(1, alpha.negated()),
                  Command::entangle(1, 2)};
    EXPECT_TRUE(check_determinism(p).deterministic);
    EXPECT_TRUE(maps_equal_up_to_phase(extract_linear_map(p),
                                       j_matrix(alpha.radians())))
        << "alpha = " << alpha.to_string();
  }
}

TEST(Simulator, BareEntanglerIsCz) {
  Pattern p;
  p.inputs = {1, 2};
  p.outputs = {1, 2};
  p.commands = {Command::entangle(1, 2)};
  const LinearMap cz{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
  EXPECT_TRUE(maps_equal_up_to_phase(extract_linear_map(p), cz));

  const auto branches = enumerate_branches(p, {1, 0, 0, 0});
  ASSERT_EQ(branches.size(), 1u);
  EXPECT_NEAR(branches[0].probability, 1.0, kSimTolerance);
}

// A measured chain composes J maps: measuring angle a applies J(-pi a).
TEST(Simulator, ChainComposesJMaps) {
  const OpenGraph g = path3(Angle(1, 4), Angle(1, 3));
  const auto pattern = standard_pattern(g);
  ASSERT_TRUE(pattern);
  const LinearMap expected =
      multiply(j_matrix(Angle(1, 3).negated().radians()),
               j_matrix(Angle(1, 4).negated().radians()));
  EXPECT_TRUE(maps_equal_up_to_phase(extract_linear_map(*pattern), expected));

  // Two zero-angle steps give H^2 = identity.
  const auto hh = standard_pattern(path3(Angle(0, 1), Angle(0, 1)));
  ASSERT_TRUE(hh);
  const LinearMap identity{{1, 0}, {0, 1}};
  EXPECT_TRUE(maps_equal_up_to_phase(extract_linear_map(*hh), identity));
}

TEST(Simulator, BranchCountsAndProbabilities) {
  const auto pattern = standard_pattern(path3(Angle(1, 5), Angle(1, 7)));
  ASSERT_TRUE(pattern);
  const auto branches = enumerate_branches(*pattern, {1, 0});
  ASSERT_EQ(branches.size(), 4u);
  for (const auto& branch : branches) {
    EXPECT_NEAR(branch.probability, 0.25, kSimTolerance);
    EXPECT_EQ(branch.register_qubits, (std::vector<QubitId>{3}));
    EXPECT_EQ(branch.outcomes.size(), 2u);
  }
  // Branch keys assign raw outcomes in execution order: qubit 1 is bit 0.
  EXPECT_TRUE(branches[1].outcomes.at(1));
  EXPECT_FALSE(branches[1].outcomes.at(2));
}

TEST(Simulator, EnumerationGuardsBranchCount) {
  Pattern p;
  for (QubitId q = 1; q <= 21; ++q) {
    p.commands.push_back(Command::measure(q, Angle(0, 1)));
  }
  EXPECT_THROW(enumerate_branches(p, {1}), std::domain_error);
}

TEST(Simulator, RandomInputCatchesBasisOnlyDeterminism) {
  // Measuring an input qubit at angle 0 looks deterministic on basis inputs
  // (both branches leave the other qubit in |+>), but not on superpositions.
  Pattern p;
  p.inputs = {1};
  p.outputs = {2};
  p.commands = {Command::measure(1, Angle(0, 1)), Command::entangle(1, 2)};
  const auto report = check_determinism(p);
  EXPECT_FALSE(report.deterministic);
  EXPECT_NE(report.detail.find("random input"), std::string::npos);
}

TEST(Simulator, UncorrectedMeasurementIsNotDeterministic) {
  Pattern p;
  p.outputs = {2};
  p.commands = {Command::measure(1, Angle(1, 4)), Command::entangle(1, 2)};
  const auto report = check_determinism(p);
  EXPECT_FALSE(report.deterministic);
  EXPECT_THROW(patterns_equivalent(p, p), std::domain_error);
}

TEST(Simulator, StandardPatternsAreUniformlyDeterministic) {
  for (const OpenGraph& g : {example2(), path3(Angle(1, 4), Angle(-1, 2))}) {
    const auto pattern = standard_pattern(g);
    ASSERT_TRUE(pattern);
    const auto fixed = check_determinism(*pattern);
    EXPECT_TRUE(fixed.deterministic) << fixed.detail;
    const auto uniform = check_uniform_determinism(*pattern);
    EXPECT_TRUE(uniform.deterministic) << uniform.detail;
  }
}

TEST(Simulator, Example1StandardPatternIsDeterministic) {
  const auto pattern = standard_pattern(example1());
  ASSERT_TRUE(pattern);
  const auto report = check_determinism(*pattern);
  EXPECT_TRUE(report.deterministic) << report.detail;
}

TEST(Simulator, OptimizedPatternsMatchStandardSemantics) {
  for (const OpenGraph& g :
       {example2(), path3(Angle(1, 4), Angle(1, 3)),
        path3(Angle(1, 4), Angle(-1, 2)), path3(Angle(0, 1), Angle(1, 2))}) {
    const Classification cls = classify_geometry(g);
    const Pattern standard = standard_pattern(g, cls);
    const auto direct = optimize_geometry(g);
    ASSERT_TRUE(direct);
    const RulesEngineResult rules = optimize_by_rules(g, cls);

    const auto vs_direct = patterns_equivalent(standard, direct->to_pattern());
    EXPECT_TRUE(vs_direct.equivalent) << vs_direct.detail;
    const auto vs_rules = patterns_equivalent(standard, rules.rewritten);
    EXPECT_TRUE(vs_rules.equivalent) << vs_rules.detail;
  }
}

TEST(Simulator, Example1OptimizedMatchesStandard) {
  const OpenGraph g = example1();
  const auto direct = optimize_geometry(g);
  ASSERT_TRUE(direct);
  const auto standard = standard_pattern(g);
  ASSERT_TRUE(standard);
  const auto report = patterns_equivalent(*standard, direct->to_pattern());
  EXPECT_TRUE(report.equivalent) << report.detail;
}

TEST(Simulator, DifferentAnglesAreDetected) {
  const auto a = standard_pattern(path3(Angle(1, 4), Angle(1, 3)));
  const auto b = standard_pattern(path3(Angle(1, 4), Angle(1, 5)));
  ASSERT_TRUE(a && b);
  const auto report = patterns_equivalent(*a, *b);
  EXPECT_FALSE(report.equivalent);
}

// A retained shift command must behave exactly like the substitution its
// deletion applies.
TEST(Simulator, ShiftCommandRelabelsOutcomes) {
  const OpenGraph g = path3(Angle(1, 4), Angle(-1, 2));
  const Classification cls = classify_geometry(g);
  Pattern mid = standard_pattern(g, cls);
  RewriteTrace trace;
  standardize(mid, &trace);
  pauli_simplify(mid, &trace);
  // the measurement of qubit 2 now carries t = s1; extract but keep the S
  apply_rule(mid, RewriteRule::extract_shift, 2);
  ASSERT_EQ(mid.commands[2].kind, CommandKind::shift);
  ASSERT_TRUE(validate_pattern(mid).ok());

  const Pattern reference = standard_pattern(g, cls);
  const auto vs_reference = patterns_equivalent(mid, reference);
  EXPECT_TRUE(vs_reference.equivalent) << vs_reference.detail;

  const RulesEngineResult rules = optimize_by_rules(g, cls);
  const auto vs_final = patterns_equivalent(mid, rules.rewritten);
  EXPECT_TRUE(vs_final.equivalent) << vs_final.detail;
}

// Replay the recorded rewrite trace one rule at a time; every intermediate
// pattern must stay semantically equal to the naive one.
TEST(Simulator, EveryRewriteStepPreservesSemantics) {
  OpenGraph fork;
  fork.vertices = {1, 2, 3, 4};
  fork.edges = {{1, 2}, {2, 3}, {2, 4}};
  fork.inputs = {1};
  fork.outputs = {3, 4};
  fork.angles.emplace(1, Angle(1, 5));
  fork.angles.emplace(2, Angle(1, 2));

  for (const OpenGraph& g :
       {path3(Angle(1, 4), Angle(1, 3)), path3(Angle(1, 4), Angle(-1, 2)),
        path3(Angle(0, 1), Angle(1, 2)), fork}) {
    const Classification cls = classify_geometry(g);
    const Pattern standard = standard_pattern(g, cls);
    const RulesEngineResult rules = optimize_by_rules(g, cls);

    Pattern current = standard;
    for (std::size_t k = 0; k < rules.trace.size(); ++k) {
      apply_rule(current, rules.trace[k].rule, rules.trace[k].position);
      const auto report = patterns_equivalent(standard, current);
      EXPECT_TRUE(report.equivalent)
          << "step " << k << " (" << to_string(rules.trace[k].rule) << " at "
          << rules.trace[k].position << "): " << report.detail;
    }
    EXPECT_EQ(current, rules.rewritten);
  }
}

}  // namespace
}  // namespace mbqc
