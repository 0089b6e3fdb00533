#pragma once

#include "mbqc/open_graph.hpp"

namespace mbqc::testing {

// 10-qubit braided-chain geometry, shipped as data/example1.json.
inline OpenGraph example1() {
  OpenGraph g;
  g.vertices = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  g.edges = {{1, 2}, {2, 3}, {3, 5}, {3, 8}, {4, 5},
             {5, 6}, {6, 8}, {7, 8}, {8, 9}, {9, 10}};
  g.inputs = {1, 4, 7};
  g.outputs = {3, 6, 10};
  g.angles = {{1, {1, 9}}, {2, {1, 10}}, {4, {5, 9}}, {5, {1, 2}},
              {7, {1, 11}}, {8, {1, 10}}, {9, {1, 3}}};
  return g;
}

// 6-qubit ring-with-chord geometry, shipped as data/example2.json.
inline OpenGraph example2() {
  OpenGraph g;
  g.vertices = {1, 2, 3, 4, 5, 6};
  g.edges = {{1, 2}, {1, 6}, {2, 3}, {3, 4}, {3, 6}, {4, 5}, {5, 6}};
  g.inputs = {1, 3, 5};
  g.outputs = {2, 4, 6};
  g.angles = {{1, {1, 4}}, {3, {1, 5}}, {5, {1, 7}}};
  return g;
}

}  // namespace mbqc::testing
