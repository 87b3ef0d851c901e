#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <vector>

#include "toric/errors.hpp"
#include "toric/fan.hpp"
#include "toric/snf.hpp"

namespace toric {

/// Simplicial complex with integer chain groups.  Simplices are sorted vertex
/// tuples; boundary matrices carry the standard alternating signs.
class SimplicialComplexZ {
public:
  /// Builds the closure of the given simplices (vertex tuples, any order).
  static SimplicialComplexZ from_simplices(std::size_t num_vertices,
                                           const std::vector<std::vector<int>>& simplices) {
    SimplicialComplexZ sc;
    sc.num_vertices_ = num_vertices;
    std::map<std::vector<int>, bool> seen;
    std::vector<std::vector<int>> queue;
    for (std::vector<int> s : simplices) {
      std::sort(s.begin(), s.end());
      assert(std::unique(s.begin(), s.end()) == s.end());
      if (!seen.count(s)) {
        seen[s] = true;
        queue.push_back(std::move(s));
      }
    }
    while (!queue.empty()) {
      std::vector<int> s = std::move(queue.back());
      queue.pop_back();
      if (s.size() > 1)
        for (std::size_t j = 0; j < s.size(); ++j) {
          std::vector<int> face;
          for (std::size_t i = 0; i < s.size(); ++i)
            if (i != j) face.push_back(s[i]);
          if (!seen.count(face)) {
            seen[face] = true;
            queue.push_back(std::move(face));
          }
        }
    }
    for (auto& [s, flag] : seen) {
      std::size_t p = s.size() - 1;
      if (sc.simplices_.size() <= p) sc.simplices_.resize(p + 1);
      sc.simplices_[p].push_back(s);
    }
    for (auto& level : sc.simplices_) std::sort(level.begin(), level.end());
    return sc;
  }

  bool empty() const { return simplices_.empty(); }
  int dim() const { return static_cast<int>(simplices_.size()) - 1; }

  const std::vector<std::vector<int>>& simplices(std::size_t p) const {
    return simplices_[p];
  }

  /// Boundary C_p -> C_{p-1} for p >= 1; for p = 0 the augmentation to Z.
  IntMatrix boundary_matrix(std::size_t p) const {
    assert(p < simplices_.size());
    if (p == 0) {
      IntMatrix aug(1, simplices_[0].size());
      for (std::size_t j = 0; j < simplices_[0].size(); ++j) aug(0, j) = 1;
      return aug;
    }
    const auto& rows = simplices_[p - 1];
    const auto& cols = simplices_[p];
    std::map<std::vector<int>, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
    IntMatrix d(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      int sign = 1;
      for (std::size_t j = 0; j < cols[c].size(); ++j) {
        std::vector<int> face;
        for (std::size_t i = 0; i < cols[c].size(); ++i)
          if (i != j) face.push_back(cols[c][i]);
        d(row_index.at(face), c) = sign;
        sign = -sign;
      }
    }
    return d;
  }

  /// Reduced homology over Z per degree, including the empty-complex
  /// convention that reduced H_{-1} of the void complex is Z.
  std::map<int, CohomologyGroup> reduced_homology() const {
    std::map<int, CohomologyGroup> out;
    if (empty()) {
      out[-1] = CohomologyGroup{1, {}};
      return out;
    }
    const int top = dim();
    std::vector<IntMatrix> d;  // d[p]: C_p -> C_{p-1}, with d[0] the augmentation
    for (int p = 0; p <= top; ++p) d.push_back(boundary_matrix(static_cast<std::size_t>(p)));
    std::vector<SnfResult> snf;
    for (const IntMatrix& m : d) snf.push_back(smith_normal_form(m));

    auto rank_of = [&](int p) { return snf[static_cast<std::size_t>(p)].rank(); };
    for (int p = -1; p <= top; ++p) {
      CohomologyGroup h;
      std::size_t ker, im;
      if (p == -1) {
        ker = 1;  // C_{-1} = Z
        im = rank_of(0);
      } else {
        std::size_t chains = simplices_[static_cast<std::size_t>(p)].size();
        ker = chains - rank_of(p);
        im = (p + 1 <= top) ? rank_of(p + 1) : 0;
      }
      h.free_rank = ker - im;
      if (p + 1 <= top)
        for (const Int& v : snf[static_cast<std::size_t>(p + 1)].diagonal)
          if (v > 1) h.torsion.push_back(v);
      out[p] = std::move(h);
    }
    return out;
  }

private:
  std::size_t num_vertices_ = 0;
  std::vector<std::vector<std::vector<int>>> simplices_;  // per dimension p
};

namespace detail {

/// Ascending chains of the fan poset restricted to `members` (sorted ids).
inline std::vector<std::vector<int>> chains_within(const Fan& f,
                                                   const std::vector<int>& members) {
  std::vector<std::vector<int>> chains;
  for (int id : members) chains.push_back({id});
  for (std::size_t i = 0; i < chains.size(); ++i) {
    std::vector<int> chain = chains[i];
    for (int c : f.coface_ids(chain.back())) {
      if (c == chain.back()) continue;
      if (!std::binary_search(members.begin(), members.end(), c)) continue;
      std::vector<int> longer = chain;
      longer.push_back(c);
      chains.push_back(std::move(longer));
    }
  }
  return chains;
}

}  // namespace detail

/// Reduced homology of the order complex of the strict upper interval
/// { tau : tau > sigma }, the combinatorial model of the link of sigma.
/// For maximal sigma the link is the void complex (reduced H_{-1} = Z).
inline std::map<int, CohomologyGroup> link_homology(const Fan& f, int sigma) {
  if (sigma < 0 || static_cast<std::size_t>(sigma) >= f.size())
    throw ConeNotInFanError("cone id out of range");
  std::vector<int> interval;
  for (int c : f.coface_ids(sigma))
    if (c != sigma) interval.push_back(c);
  std::map<int, int> local;
  for (int id : interval) local[id] = static_cast<int>(local.size());
  std::vector<std::vector<int>> simplices;
  for (const std::vector<int>& chain : detail::chains_within(f, interval)) {
    std::vector<int> s;
    for (int id : chain) s.push_back(local.at(id));
    simplices.push_back(std::move(s));
  }
  return SimplicialComplexZ::from_simplices(interval.size(), simplices)
      .reduced_homology();
}

/// True iff the reduced link homology of sigma vanishes (torsion included) in
/// all degrees below n - dim(sigma) - 1.
inline bool free_link_check(const Fan& f, int sigma) {
  long long bound = static_cast<long long>(f.ambient_rank()) -
                    static_cast<long long>(f.cone(sigma).dim()) - 1;
  for (const auto& [degree, group] : link_homology(f, sigma))
    if (degree < bound && !group.is_zero()) return false;
  return true;
}

enum class Monoid { C, R, RPlus };

/// Counts of ordinary cells in the identification-space model of the toric
/// variety over the chosen monoid, one batch per chain of the order complex.
struct CellCensus {
  Monoid variant = Monoid::C;
  std::vector<long long> counts;  // per cell dimension
  long long euler = 0;
};

inline CellCensus cell_census(const Fan& f, Monoid k) {
  const std::size_t n = f.ambient_rank();
  CellCensus census;
  census.variant = k;
  census.counts.assign(2 * n + 2, 0);
  auto binom = [](std::size_t m, std::size_t j) {
    long long r = 1;
    for (std::size_t i = 0; i < j; ++i) r = r * static_cast<long long>(m - i) /
                                            static_cast<long long>(i + 1);
    return r;
  };
  OrderComplex oc = f.order_complex();
  for (std::size_t p = 0; p < oc.chains.size(); ++p)
    for (const std::vector<int>& chain : oc.chains[p]) {
      std::size_t m = n - f.cone(chain.front()).dim();  // rank of the torus factor
      switch (k) {
        case Monoid::C:
          for (std::size_t j = 0; j <= m; ++j)
            census.counts[j + p] += binom(m, j);
          break;
        case Monoid::R:
          census.counts[p] += 1LL << m;
          break;
        case Monoid::RPlus:
          census.counts[p] += 1;
          break;
      }
    }
  while (!census.counts.empty() && census.counts.back() == 0) census.counts.pop_back();
  int sign = 1;
  for (long long c : census.counts) {
    census.euler += sign * c;
    sign = -sign;
  }
  return census;
}

/// One cube per face pair tau <= sigma, of dimension dim(sigma) - dim(tau),
/// triangulated by the chains of the closed interval [tau, sigma].
struct Cube {
  int tau = -1;
  int sigma = -1;
  std::size_t dim = 0;
  std::vector<std::vector<int>> chains;  // constituent simplices, as id chains
};

struct CubicalSubdivision {
  std::vector<Cube> cubes;
  std::vector<long long> counts;  // cubes per dimension
  long long euler = 0;
};

inline CubicalSubdivision cubical_subdivision(const Fan& f) {
  if (!f.is_complete())
    throw NotCompleteError("cubical subdivision needs a complete fan");
  for (const Cone& c : f.cones())
    if (!c.is_simplicial())
      throw NotSimplicialError("cubical subdivision needs a simplicial fan");

  CubicalSubdivision out;
  out.counts.assign(f.ambient_rank() + 1, 0);
  for (int sigma = 0; sigma < static_cast<int>(f.size()); ++sigma)
    for (int tau : f.face_ids(sigma)) {
      Cube cube;
      cube.tau = tau;
      cube.sigma = sigma;
      cube.dim = f.cone(sigma).dim() - f.cone(tau).dim();
      std::vector<int> interval;
      for (int u : f.coface_ids(tau))
        if (f.is_face(u, sigma)) interval.push_back(u);
      cube.chains = detail::chains_within(f, interval);
      out.counts[cube.dim] += 1;
      out.cubes.push_back(std::move(cube));
    }
  int sign = 1;
  for (long long c : out.counts) {
    out.euler += sign * c;
    sign = -sign;
  }
  return out;
}

}  // namespace toric
