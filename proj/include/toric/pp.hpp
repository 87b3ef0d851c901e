#pragma once

#include <cassert>
#include <vector>

#include "toric/errors.hpp"
#include "toric/fan.hpp"
#include "toric/poly.hpp"
#include "toric/snf.hpp"

namespace toric {

/// Piecewise polynomial of homogeneous degree q: one coefficient vector per
/// maximal cone, in the fan's fixed ordering of maximal cones, whose
/// restrictions agree on all pairwise intersections.
struct PPElement {
  const Fan* fan = nullptr;
  int degree = 0;
  std::vector<IntVec> per_maximal;
};

/// Number of columns contributed by each maximal cone of the difference map,
/// i.e. the size of its degree-q monomial basis.
inline std::vector<std::size_t> delta_block_sizes(const Fan& f, int q) {
  std::vector<std::size_t> sizes;
  sizes.reserve(f.maximal().size());
  for (int id : f.maximal()) sizes.push_back(monomial_count(f.cone(id).dim(), q));
  return sizes;
}

/// Difference map whose kernel is the degree-q piecewise polynomials:
/// for every ordered pair sigma0 < sigma1 of maximal cones the row block is
///   f  |->  f_{sigma1}|_{sigma0 cap sigma1} - f_{sigma0}|_{sigma0 cap sigma1}.
/// Pairs whose intersection carries no degree-q polynomials (the zero cone in
/// positive degree) contribute no rows and are not materialized.
inline IntMatrix delta_matrix(const Fan& f, int q) {
  const std::vector<int>& max = f.maximal();
  std::vector<std::size_t> sizes = delta_block_sizes(f, q);
  std::vector<std::size_t> offsets(max.size() + 1, 0);
  for (std::size_t i = 0; i < max.size(); ++i) offsets[i + 1] = offsets[i] + sizes[i];

  struct Row {
    std::size_t i, j;  // positions into the maximal list
    int meet;
    std::size_t height;
  };
  std::vector<Row> blocks;
  std::size_t total_rows = 0;
  for (std::size_t i = 0; i < max.size(); ++i)
    for (std::size_t j = i + 1; j < max.size(); ++j) {
      int meet = f.common_face(max[i], max[j]);
      std::size_t h = monomial_count(f.cone(meet).dim(), q);
      if (h == 0) continue;
      blocks.push_back({i, j, meet, h});
      total_rows += h;
    }

  IntMatrix delta(total_rows, offsets.back());
  std::size_t row = 0;
  for (const Row& b : blocks) {
    const Cone& meet = f.cone(b.meet);
    delta.add_block(row, offsets[b.j],
                    restriction_matrix(f.cone(max[b.j]), meet, q), +1);
    delta.add_block(row, offsets[b.i],
                    restriction_matrix(f.cone(max[b.i]), meet, q), -1);
    row += b.height;
  }
  return delta;
}

/// Z-basis of the degree-q piecewise polynomials, computed as ker(delta).
inline std::vector<PPElement> pp_basis(const Fan& f, int q) {
  IntMatrix delta = delta_matrix(f, q);
  IntMatrix kernel = kernel_basis(delta);
  assert((delta * kernel).is_zero());

  std::vector<std::size_t> sizes = delta_block_sizes(f, q);
  std::vector<PPElement> out;
  out.reserve(kernel.cols());
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    PPElement el;
    el.fan = &f;
    el.degree = q;
    std::size_t offset = 0;
    for (std::size_t block = 0; block < sizes.size(); ++block) {
      IntVec coeffs(sizes[block]);
      for (std::size_t k = 0; k < sizes[block]; ++k) coeffs[k] = kernel(offset + k, c);
      el.per_maximal.push_back(std::move(coeffs));
      offset += sizes[block];
    }
    out.push_back(std::move(el));
  }
  return out;
}

/// Ranks of the piecewise polynomials for q = 0..d_max.  The corresponding
/// cohomological degrees are 0, 2, ..., 2*d_max.
inline std::vector<std::size_t> hilbert_function(const Fan& f, int d_max) {
  std::vector<std::size_t> ranks;
  ranks.reserve(static_cast<std::size_t>(d_max) + 1);
  for (int q = 0; q <= d_max; ++q) {
    IntMatrix delta = delta_matrix(f, q);
    ranks.push_back(delta.cols() - rank(delta));
  }
  return ranks;
}

/// Cone-wise product of two piecewise polynomials on the same fan.
inline PPElement pp_multiply(const PPElement& a, const PPElement& b) {
  if (a.fan == nullptr || a.fan != b.fan)
    throw FanMismatchError("piecewise polynomials live on different fans");
  const Fan& f = *a.fan;
  PPElement out;
  out.fan = a.fan;
  out.degree = a.degree + b.degree;
  const std::vector<int>& max = f.maximal();
  for (std::size_t i = 0; i < max.size(); ++i) {
    const Cone& c = f.cone(max[i]);
    PolyElement prod = multiply(make_poly(c, a.degree, a.per_maximal[i]),
                                make_poly(c, b.degree, b.per_maximal[i]));
    out.per_maximal.push_back(std::move(prod.coefficients));
  }
#ifndef NDEBUG
  // products of compatible tuples stay compatible
  IntVec stacked;
  for (const IntVec& block : out.per_maximal)
    stacked.insert(stacked.end(), block.begin(), block.end());
  assert(is_zero_vector(delta_matrix(f, out.degree) * stacked));
#endif
  return out;
}

struct ComponentReport {
  bool degenerate = false;  // some maximal cone is not full-dimensional
  std::size_t count = 0;
  std::vector<int> labels;  // per maximal cone, fan order
};

/// Connected components of the maximal cones under the shares-a-common-facet
/// relation; the count is the rank of the degree-0 piecewise constants glued
/// along two-sided walls.
inline ComponentReport piecewise_constant_components(const Fan& f) {
  const std::vector<int>& max = f.maximal();
  const std::size_t n = f.ambient_rank();
  ComponentReport report;
  report.degenerate = !f.maximal_full_dim();

  std::vector<int> parent(max.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (std::size_t i = 0; i < max.size(); ++i)
    for (std::size_t j = i + 1; j < max.size(); ++j) {
      int meet = f.common_face(max[i], max[j]);
      if (n >= 1 && f.cone(meet).dim() == n - 1)
        parent[static_cast<std::size_t>(find(static_cast<int>(i)))] =
            find(static_cast<int>(j));
    }
  std::map<int, int> canon;
  report.labels.resize(max.size());
  for (std::size_t i = 0; i < max.size(); ++i) {
    int root = find(static_cast<int>(i));
    if (!canon.count(root)) canon[root] = static_cast<int>(canon.size());
    report.labels[i] = canon[root];
  }
  report.count = canon.size();
  return report;
}

}  // namespace toric
