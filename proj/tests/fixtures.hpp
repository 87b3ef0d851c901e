#pragma once

#include "toric/fan.hpp"

// Standard small fans used across the test suites.
namespace fixtures {

using toric::Fan;
using toric::Int;
using toric::IntVec;

inline IntVec v(std::initializer_list<long long> xs) {
  IntVec out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

// complete fan of the projective line: rays +-e1
inline Fan p1() {
  return Fan::from_ray_indices(1, {v({-1}), v({1})}, {{0}, {1}});
}

// complete fan of the projective plane
inline Fan p2() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1}), v({-1, -1})},
                               {{0, 1}, {1, 2}, {0, 2}});
}

// product of two projective lines: the four quadrants
inline Fan p1xp1() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// first Hirzebruch surface
inline Fan hirzebruch1() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1}), v({-1, 1}), v({0, -1})},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// single smooth affine chart
inline Fan orthant() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1})}, {{0, 1}});
}

// two chambers glued along the ray e2
inline Fan halfplane() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1}), v({-1, 0})},
                               {{0, 1}, {1, 2}});
}

// two opposite quadrants meeting only at the origin
inline Fan antipodal() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})},
                               {{0, 1}, {2, 3}});
}

// three quadrants forming a facet-connected chain
inline Fan threequad() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({0, 1}), v({0, -1}), v({-1, 0})},
                               {{0, 1}, {0, 2}, {2, 3}});
}

// complete simplicial fan containing the singular cone ((1,0),(1,2))
inline Fan nonsmooth_complete() {
  return Fan::from_ray_indices(2, {v({1, 0}), v({1, 2}), v({-1, 0}), v({0, -1})},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

// complete non-simplicial fan: cones over the six facets of the cube.
// Hereditary with spherical links, yet its cochain complex is not exact.
inline Fan cubefan() {
  std::vector<IntVec> rays;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) rays.push_back(v({a, b, c}));
  auto idx = [](int a, int b, int c) {
    return 4 * (a + 1) / 2 + 2 * (b + 1) / 2 + (c + 1) / 2;
  };
  std::vector<std::vector<int>> maximal = {
      {idx(1, -1, -1), idx(1, -1, 1), idx(1, 1, -1), idx(1, 1, 1)},      // x = 1
      {idx(-1, -1, -1), idx(-1, -1, 1), idx(-1, 1, -1), idx(-1, 1, 1)},  // x = -1
      {idx(-1, 1, -1), idx(-1, 1, 1), idx(1, 1, -1), idx(1, 1, 1)},      // y = 1
      {idx(-1, -1, -1), idx(-1, -1, 1), idx(1, -1, -1), idx(1, -1, 1)},  // y = -1
      {idx(-1, -1, 1), idx(-1, 1, 1), idx(1, -1, 1), idx(1, 1, 1)},      // z = 1
      {idx(-1, -1, -1), idx(-1, 1, -1), idx(1, -1, -1), idx(1, 1, -1)},  // z = -1
  };
  return Fan::from_ray_indices(3, rays, maximal);
}

// complete smooth 3-dimensional fan: the eight octants
inline Fan octants() {
  std::vector<IntVec> rays = {v({1, 0, 0}),  v({0, 1, 0}),  v({0, 0, 1}),
                              v({-1, 0, 0}), v({0, -1, 0}), v({0, 0, -1})};
  std::vector<std::vector<int>> maximal;
  for (int a : {0, 3})
    for (int b : {1, 4})
      for (int c : {2, 5}) maximal.push_back({a, b, c});
  return Fan::from_ray_indices(3, rays, maximal);
}

}  // namespace fixtures
