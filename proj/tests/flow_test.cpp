#include "mbqc/flow.hpp"

#include <gtest/gtest.h>

#include <iostream>

#include "mbqc/geometry_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace mbqc {
namespace {

using testing::brute_force_has_flow;
using testing::brute_force_has_gflow;
using testing::example1;
using testing::example2;

TEST(FindFlow, Example1) {
  const auto flow = find_flow(example1());
  ASSERT_TRUE(flow);
  const std::map<QubitId, QubitId> expected_f{{1, 2}, {2, 3}, {4, 5}, {5, 6},
                                              {7, 8}, {8, 9}, {9, 10}};
  EXPECT_EQ(flow->f, expected_f);
  const std::map<QubitId, int> expected_layer{{1, 0}, {2, 1}, {4, 1}, {5, 2},
                                              {7, 2}, {8, 3}, {9, 4}, {3, 5},
                                              {6, 5}, {10, 5}};
  EXPECT_EQ(flow->layer, expected_layer);
  EXPECT_TRUE(verify_flow(example1(), *flow));
}

TEST(FindFlow, Example2HasNone) {
  EXPECT_FALSE(find_flow(example2()));
  EXPECT_FALSE(brute_force_has_flow(example2()));
}

TEST(FindFlow, AllOutputsIsTrivial) {
  OpenGraph g;
  g.vertices = {1, 2};
  g.edges = {{1, 2}};
  g.inputs = {1, 2};
  g.outputs = {1, 2};
  const auto flow = find_flow(g);
  ASSERT_TRUE(flow);
  EXPECT_TRUE(flow->f.empty());
  EXPECT_EQ(flow->layer, (std::map<QubitId, int>{{1, 0}, {2, 0}}));
  EXPECT_TRUE(verify_flow(g, *flow));
}

TEST(VerifyFlow, RejectsTamperedMaps) {
  const OpenGraph g = example1();
  const FlowMap good = *find_flow(g);

  FlowMap wrong_neighbor = good;
  wrong_neighbor.f[1] = 5;  // 5 is not adjacent to 1
  EXPECT_FALSE(verify_flow(g, wrong_neighbor));

  FlowMap not_injective = good;
  not_injective.f[1] = 3;
  not_injective.f[2] = 3;
  EXPECT_FALSE(verify_flow(g, not_injective));

  FlowMap input_corrector = good;
  input_corrector.f[5] = 4;  // 4 is an input (and adjacent to 5)
  EXPECT_FALSE(verify_flow(g, input_corrector));

  FlowMap bad_layer = good;
  bad_layer.layer[9] = 0;  // f(8)=9 must come after 8
  EXPECT_FALSE(verify_flow(g, bad_layer));

  FlowMap missing = good;
  missing.f.erase(7);
  EXPECT_FALSE(verify_flow(g, missing));
}

TEST(FindGflow, Example1IsFocusedAndLayered) {
  const auto gflow = find_gflow(example1());
  ASSERT_TRUE(gflow);
  const std::map<QubitId, std::vector<QubitId>> expected_g{
      {1, {2}},  {2, {3, 6}}, {4, {5}},  {5, {6, 9}},
      {7, {8, 10}}, {8, {9}}, {9, {10}}};
  EXPECT_EQ(gflow->g, expected_g);

  const std::map<QubitId, int> expected_layer{{1, 0}, {4, 0}, {7, 0}, {2, 1},
                                              {5, 1}, {8, 1}, {9, 2}, {3, 3},
                                              {6, 3}, {10, 3}};
  EXPECT_EQ(gflow->layer, expected_layer);

  const std::map<QubitId, int> expected_delay{{4, 0}, {7, 0}, {1, 1}, {5, 1},
                                              {8, 1}, {2, 2}, {9, 2}, {3, 3},
                                              {6, 3}, {10, 3}};
  EXPECT_EQ(gflow->delay, expected_delay);

  EXPECT_TRUE(verify_gflow(example1(), *gflow));
  GflowMap delayed = *gflow;
  delayed.layer = delayed.delay;
  EXPECT_TRUE(verify_gflow(example1(), delayed));
  EXPECT_EQ(gflow_depth(*gflow), 4);
}

TEST(FindGflow, Example2) {
  const auto gflow = find_gflow(example2());
  ASSERT_TRUE(gflow);
  const std::map<QubitId, std::vector<QubitId>> expected_g{
      {1, {4, 6}}, {3, {2, 4, 6}}, {5, {2, 6}}};
  EXPECT_EQ(gflow->g, expected_g);
  const std::map<QubitId, int> expected_layer{{1, 0}, {3, 0}, {5, 0},
                                              {2, 1}, {4, 1}, {6, 1}};
  EXPECT_EQ(gflow->layer, expected_layer);
  EXPECT_EQ(gflow->delay, expected_layer);
  EXPECT_TRUE(verify_gflow(example2(), *gflow));
  EXPECT_EQ(gflow_depth(*gflow), 2);
}

TEST(VerifyGflow, AcceptsAlternativeMapWithCoarserOrder) {
  const OpenGraph g = example2();
  GflowMap alt;
  alt.g = {{1, {2}}, {3, {2, 4, 6}}, {5, {2, 6}}};
  alt.layer = {{1, 0}, {3, 1}, {5, 1}, {2, 2}, {4, 2}, {6, 2}};
  EXPECT_TRUE(verify_gflow(g, alt));

  // The same map with every measured qubit in one layer breaks the order
  // condition: Odd({2}) = {1,3} puts 3 at a later layer than 1.
  GflowMap flat = alt;
  flat.layer = {{1, 0}, {3, 0}, {5, 0}, {2, 1}, {4, 1}, {6, 1}};
  EXPECT_FALSE(verify_gflow(g, flat));
}

TEST(VerifyGflow, RejectsTamperedMaps) {
  const OpenGraph g = example2();
  const GflowMap good = *find_gflow(g);

  GflowMap not_odd = good;
  not_odd.g[1] = {2, 6};  // Odd({2,6}) = {5}, does not contain 1
  EXPECT_FALSE(verify_gflow(g, not_odd));

  GflowMap empty_set = good;
  empty_set.g[1] = {};
  EXPECT_FALSE(verify_gflow(g, empty_set));

  GflowMap input_member = good;
  input_member.g[1] = {3, 4, 6};  // 3 is an input
  EXPECT_FALSE(verify_gflow(g, input_member));

  GflowMap missing = good;
  missing.g.erase(5);
  EXPECT_FALSE(verify_gflow(g, missing));
}

TEST(InvertFg, FlowPreimages) {
  const auto inverse = invert_fg(*find_flow(example1()));
  const std::map<QubitId, std::vector<QubitId>> expected{
      {2, {1}}, {3, {2}}, {5, {4}}, {6, {5}}, {8, {7}}, {9, {8}}, {10, {9}}};
  EXPECT_EQ(inverse, expected);
}

TEST(InvertFg, GflowPreimages) {
  const auto inverse = invert_fg(*find_gflow(example1()));
  const std::map<QubitId, std::vector<QubitId>> expected{
      {2, {1}},  {3, {2}},    {5, {4}},  {6, {2, 5}},
      {8, {7}},  {9, {5, 8}}, {10, {7, 9}}};
  EXPECT_EQ(inverse, expected);
}

TEST(Classify, Examples) {
  const auto c1 = classify_geometry(example1());
  EXPECT_EQ(c1.kind, GeometryClass::has_flow);
  ASSERT_TRUE(c1.flow);
  ASSERT_TRUE(c1.gflow);
  EXPECT_EQ(&c1.order_layers(), &c1.flow->layer);

  const auto c2 = classify_geometry(example2());
  EXPECT_EQ(c2.kind, GeometryClass::gflow_only);
  EXPECT_FALSE(c2.flow);
  ASSERT_TRUE(c2.gflow);

  OpenGraph isolated;
  isolated.vertices = {1};
  isolated.angles = {{1, Angle()}};
  const auto c3 = classify_geometry(isolated);
  EXPECT_EQ(c3.kind, GeometryClass::no_determinism);
  EXPECT_FALSE(c3.flow);
  EXPECT_FALSE(c3.gflow);
}

TEST(Classify, ToString) {
  EXPECT_EQ(to_string(GeometryClass::has_flow), "flow");
  EXPECT_EQ(to_string(GeometryClass::gflow_only), "gflow");
  EXPECT_EQ(to_string(GeometryClass::no_determinism), "none");
}

// No vertex of a maximally delayed schedule can be measured any later.
void expect_maximally_delayed(const OpenGraph& graph, const GflowMap& gflow) {
  const auto adj = graph.adjacency();
  int max_delay = 0;
  for (QubitId v : graph.measured_vertices()) {
    max_delay = std::max(max_delay, gflow.delay.at(v));
  }
  for (QubitId i : graph.measured_vertices()) {
    for (int target = gflow.delay.at(i) + 1; target <= max_delay; ++target) {
      std::vector<QubitId> correctors;
      std::set<QubitId> constrained;
      for (QubitId v : graph.vertices) {
        if (gflow.delay.at(v) > target && !graph.is_input(v)) {
          correctors.push_back(v);
        }
        if (gflow.delay.at(v) <= target && !graph.is_output(v)) {
          constrained.insert(v);
        }
      }
      Gf2System system(correctors.size());
      for (QubitId w : constrained) {
        std::vector<std::size_t> cols;
        const auto& nw = adj.at(w);
        for (std::size_t c = 0; c < correctors.size(); ++c) {
          if (std::binary_search(nw.begin(), nw.end(), correctors[c])) {
            cols.push_back(c);
          }
        }
        system.add_row(cols, w == i);
      }
      EXPECT_FALSE(system.solve().has_value())
          << "qubit " << i << " could move from delay " << gflow.delay.at(i)
          << " to " << target;
    }
  }
}

TEST(FindGflow, ExamplesAreMaximallyDelayed) {
  expect_maximally_delayed(example1(), *find_gflow(example1()));
  expect_maximally_delayed(example2(), *find_gflow(example2()));
}

// Exhaustive sweep of every geometry on up to 4 vertices: the finders must
// agree with brute-force existence, returned maps must self-verify, and the
// delay schedule must be maximal.
TEST(FlowFinderDifferential, ExhaustiveUpToFourVertices) {
  int flow_count = 0;
  int gflow_only_count = 0;
  int none_count = 0;

  for (int n = 1; n <= 4; ++n) {
    std::vector<std::pair<QubitId, QubitId>> all_edges;
    for (QubitId u = 1; u <= static_cast<QubitId>(n); ++u) {
      for (QubitId v = u + 1; v <= static_cast<QubitId>(n); ++v) {
        all_edges.emplace_back(u, v);
      }
    }
    const std::size_t edge_masks = std::size_t{1} << all_edges.size();
    const std::size_t vertex_masks = std::size_t{1} << n;

    for (std::size_t em = 0; em < edge_masks; ++em) {
      OpenGraph g;
      for (QubitId v = 1; v <= static_cast<QubitId>(n); ++v) {
        g.vertices.push_back(v);
      }
      for (std::size_t e = 0; e < all_edges.size(); ++e) {
        if (em & (std::size_t{1} << e)) g.edges.push_back(all_edges[e]);
      }
      for (std::size_t im = 0; im < vertex_masks; ++im) {
        for (std::size_t om = 0; om < vertex_masks; ++om) {
          g.inputs.clear();
          g.outputs.clear();
          for (int b = 0; b < n; ++b) {
            if (im & (std::size_t{1} << b)) g.inputs.push_back(b + 1);
            if (om & (std::size_t{1} << b)) g.outputs.push_back(b + 1);
          }

          const auto flow = find_flow(g);
          const auto gflow = find_gflow(g);
          ASSERT_EQ(flow.has_value(), brute_force_has_flow(g))
              << serialize_geometry(g);
          ASSERT_EQ(gflow.has_value(), brute_force_has_gflow(g))
              << serialize_geometry(g);
          if (flow) {
            ASSERT_TRUE(verify_flow(g, *flow)) << serialize_geometry(g);
            ASSERT_TRUE(gflow) << serialize_geometry(g);
          }
          if (gflow) {
            ASSERT_TRUE(verify_gflow(g, *gflow)) << serialize_geometry(g);
            GflowMap delayed = *gflow;
            delayed.layer = delayed.delay;
            ASSERT_TRUE(verify_gflow(g, delayed)) << serialize_geometry(g);
            expect_maximally_delayed(g, *gflow);
          }

          flow_count += flow.has_value();
          gflow_only_count += !flow && gflow;
          none_count += !gflow;
        }
      }
    }
  }

  std::cout << "four-vertex sweep: flow=" << flow_count
            << " gflow_only=" << gflow_only_count << " none=" << none_count
            << "\n";
  EXPECT_EQ(flow_count, 4718);
  // Gflow-only geometries need at least 5 vertices; the smallest instances
  // (e.g. edges {1,2},{1,4},{1,5},{2,3},{2,5},{3,4} with I={1}, O={2,4})
  // appear in the 5-vertex sweep.
  EXPECT_EQ(gflow_only_count, 0);
  EXPECT_EQ(none_count, 12214);
}

}  // namespace
}  // namespace mbqc
