#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "toric/errors.hpp"
#include "toric/int_matrix.hpp"
#include "toric/snf.hpp"

namespace toric {

/// Lattice projection N -> N(sigma) = N / N_sigma in fixed bases.
struct QuotientMap {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  IntMatrix matrix;  // target_rank x source_rank, surjective
};

/// Strongly convex rational polyhedral cone.
///
/// Stored data is fully canonical: rays are the primitive extremal generators
/// in lexicographic order, the span basis is the Hermite-normal-form basis of
/// the saturated sublattice N_sigma, and facet normals are derived from those.
/// Two equal cones therefore compare equal field by field; identity across a
/// fan is the sorted ray list.
class Cone {
public:
  static Cone zero(std::size_t ambient_rank) { return from_rays(ambient_rank, {}); }

  /// Builds the cone generated by `generators`.  Duplicate, non-primitive and
  /// zero generators are normalized away, non-extremal ones dropped.
  /// Throws NotStronglyConvexError if the generated cone contains a line.
  static Cone from_rays(std::size_t ambient_rank, const std::vector<IntVec>& generators);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVec>& rays() const { return rays_; }

  /// Columns form the canonical Z-basis of N_sigma = N intersect lin(sigma).
  const IntMatrix& span_basis() const { return span_basis_; }

  /// Primitive supporting normals of the facets, in ambient M-coordinates.
  /// Together with the span equations these cut out the cone:
  /// x in sigma  iff  all annihilator pairings vanish and all facet pairings
  /// are >= 0.
  const std::vector<IntVec>& facet_normals() const { return facet_normals_; }

  /// Canonical basis of M intersect sigma^perp (the annihilator of the span).
  const std::vector<IntVec>& span_annihilator() const { return annihilator_; }

  /// Coordinates of the i-th ray in the span basis.
  const std::vector<IntVec>& ray_span_coords() const { return ray_coords_; }

  bool is_zero_cone() const { return dim_ == 0; }

  bool contains(const IntVec& v) const {
    assert(v.size() == ambient_rank_);
    for (const IntVec& a : annihilator_)
      if (dot(a, v) != 0) return false;
    for (const IntVec& m : facet_normals_)
      if (dot(m, v) < 0) return false;
    return true;
  }

  bool contains(const Cone& other) const {
    for (const IntVec& r : other.rays())
      if (!contains(r)) return false;
    return true;
  }

  bool relative_interior_contains(const IntVec& v) const {
    assert(v.size() == ambient_rank_);
    for (const IntVec& a : annihilator_)
      if (dot(a, v) != 0) return false;
    for (const IntVec& m : facet_normals_)
      if (dot(m, v) <= 0) return false;
    return true;
  }

  /// Sum of the primitive ray generators; lies in the relative interior.
  IntVec interior_point() const {
    if (dim_ == 0) throw ZeroConeError("the zero cone has no interior point");
    IntVec v(ambient_rank_);
    for (const IntVec& r : rays_)
      for (std::size_t i = 0; i < ambient_rank_; ++i) v[i] += r[i];
    return v;
  }

  bool is_simplicial() const { return rays_.size() == dim_; }

  bool is_smooth() const {
    if (!is_simplicial()) return false;
    if (dim_ == 0) return true;
    IntMatrix m = IntMatrix::from_columns(dim_, ray_coords_);
    Int d = determinant(m);
    return d == 1 || d == -1;
  }

  /// Projection N -> N/N_sigma; the basis of the quotient is fixed by the
  /// (deterministic) normal form of the ray matrix.
  QuotientMap quotient_map() const {
    SnfResult snf = smith_normal_form(IntMatrix::from_columns(ambient_rank_, rays_));
    QuotientMap q;
    q.source_rank = ambient_rank_;
    q.target_rank = ambient_rank_ - dim_;
    q.matrix = snf.left.row_slice(dim_, ambient_rank_);
    return q;
  }

  /// All faces, every dimension, including the cone itself and the zero cone,
  /// sorted by (dim, rays).
  std::vector<Cone> faces() const;

  /// Codimension-one faces.
  std::vector<Cone> facets() const;

  /// Dual cone in M.  Only defined (and strongly convex) for full-dimensional
  /// cones; otherwise the dual contains sigma^perp and this throws.
  Cone dual() const {
    if (dim_ < ambient_rank_)
      throw NotStronglyConvexError(
          "dual of a non-full-dimensional cone contains a line");
    return from_rays(ambient_rank_, facet_normals_);
  }

  /// Canonical identity of the cone inside a fan: the sorted primitive rays.
  std::string key() const {
    std::ostringstream os;
    for (const IntVec& r : rays_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << ";";
    }
    return os.str();
  }

  bool operator==(const Cone& other) const {
    return ambient_rank_ == other.ambient_rank_ && rays_ == other.rays_;
  }

private:
  Cone() = default;

  std::size_t ambient_rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVec> rays_;
  std::vector<IntVec> ray_coords_;
  IntMatrix span_basis_;
  std::vector<IntVec> facet_normals_;        // ambient lifts
  std::vector<IntVec> facet_normals_local_;  // in coordinates dual to span_basis_
  std::vector<IntVec> annihilator_;

  friend Cone intersect_cones(const Cone&, const Cone&);
};

namespace detail {

/// Extreme rays of the pointed cone { x in Z^n : <a, x> >= 0 for all rows a }.
/// Every extreme ray is the kernel of some rank n-1 subset of active rows, so
/// enumerating those subsets is exhaustive.  The caller guarantees that the
/// cone is pointed (kernel of the full row system is zero).
inline std::vector<IntVec> extreme_rays_of_halfspaces(std::size_t n,
                                                      const std::vector<IntVec>& rows) {
  std::vector<IntVec> out;
  if (n == 0) return out;
  std::map<IntVec, bool> seen;
  const std::size_t k = rows.size();
  // iterate over all (n-1)-subsets of rows; n-1 == 0 means the single empty set
  auto consider = [&](const std::vector<std::size_t>& subset) {
    std::vector<IntVec> sub;
    sub.reserve(subset.size());
    for (std::size_t i : subset) sub.push_back(rows[i]);
    IntMatrix m = IntMatrix::from_rows(n, sub);
    IntMatrix ker = kernel_basis(m);
    if (ker.cols() != 1) return;  // subset rank != n-1
    IntVec g = primitive_vector(ker.column(0));
    bool pos = true, neg = true;
    for (const IntVec& a : rows) {
      Int p = dot(a, g);
      if (p < 0) pos = false;
      if (p > 0) neg = false;
      if (!pos && !neg) return;
    }
    IntVec ray = pos ? g : negated(g);
    if (!seen.count(ray)) {
      seen[ray] = true;
      out.push_back(ray);
    }
  };
  if (n == 1) {
    consider({});
  } else {
    std::vector<std::size_t> subset(n - 1);
    // lexicographic subset enumeration
    if (k >= n - 1) {
      for (std::size_t i = 0; i < n - 1; ++i) subset[i] = i;
      for (;;) {
        consider(subset);
        std::size_t i = n - 1;
        while (i > 0 && subset[i - 1] == k - (n - 1) + (i - 1)) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < n - 1; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Cone Cone::from_rays(std::size_t ambient_rank,
                            const std::vector<IntVec>& generators) {
  Cone c;
  c.ambient_rank_ = ambient_rank;

  // normalize: primitive, nonzero, deduplicated, sorted
  std::vector<IntVec> rays;
  for (const IntVec& g : generators) {
    assert(g.size() == ambient_rank);
    if (is_zero_vector(g)) continue;
    rays.push_back(primitive_vector(g));
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  IntMatrix gen_matrix = IntMatrix::from_columns(ambient_rank, rays);
  SnfResult snf = smith_normal_form(gen_matrix);
  c.dim_ = snf.rank();

  if (c.dim_ == 0) {
    c.span_basis_ = IntMatrix(ambient_rank, 0);
    std::vector<IntVec> std_basis;
    for (std::size_t i = 0; i < ambient_rank; ++i) {
      IntVec e(ambient_rank);
      e[i] = 1;
      std_basis.push_back(e);
    }
    c.annihilator_ = std_basis;
    return c;
  }

  // canonical saturated basis of N_sigma: HNF of the first dim columns of
  // left_inv (they span the saturation of the column space of the ray matrix)
  {
    std::vector<IntVec> span_rows;
    for (std::size_t j = 0; j < c.dim_; ++j) span_rows.push_back(snf.left_inv.column(j));
    std::vector<IntVec> hnf = hermite_basis(ambient_rank, span_rows);
    assert(hnf.size() == c.dim_);
    c.span_basis_ = IntMatrix::from_columns(ambient_rank, hnf);
  }

  // ray coordinates in the span basis (integral because the basis is saturated)
  auto coords_of = [&](const IntVec& v) {
    auto x = solve(c.span_basis_, v);
    assert(x.has_value());
    return *x;
  };
  std::vector<IntVec> coords;
  coords.reserve(rays.size());
  for (const IntVec& r : rays) coords.push_back(coords_of(r));

  // facet normals inside the span: a facet is supported by the kernel of a
  // rank dim-1 subset of generators, oriented so all generators pair >= 0
  const std::size_t d = c.dim_;
  std::vector<IntVec> local_normals;
  {
    std::map<IntVec, bool> seen;
    auto consider = [&](const std::vector<std::size_t>& subset) {
      std::vector<IntVec> sub;
      for (std::size_t i : subset) sub.push_back(coords[i]);
      IntMatrix m = IntMatrix::from_rows(d, sub);
      IntMatrix ker = kernel_basis(m);
      if (ker.cols() != 1) return;
      IntVec mu = primitive_vector(ker.column(0));
      bool pos = true, neg = true;
      for (const IntVec& w : coords) {
        Int p = dot(mu, w);
        if (p < 0) pos = false;
        if (p > 0) neg = false;
        if (!pos && !neg) return;
      }
      IntVec normal = pos ? mu : negated(mu);
      if (!seen.count(normal)) {
        seen[normal] = true;
        local_normals.push_back(normal);
      }
    };
    if (d == 1) {
      consider({});
    } else {
      std::vector<std::size_t> subset(d - 1);
      for (std::size_t i = 0; i < d - 1; ++i) subset[i] = i;
      for (;;) {
        consider(subset);
        std::size_t i = d - 1;
        while (i > 0 && subset[i - 1] == coords.size() - (d - 1) + (i - 1)) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < d - 1; ++j) subset[j] = subset[j - 1] + 1;
      }
    }
  }

  // strong convexity: the lineality space is the common kernel of the facet
  // normals within the span
  {
    bool pointed;
    if (local_normals.empty()) {
      pointed = false;  // cone equals its span, dim >= 1
    } else {
      IntMatrix f = IntMatrix::from_rows(d, local_normals);
      pointed = kernel_basis(f).cols() == 0;
    }
    if (!pointed)
      throw NotStronglyConvexError("generators span a cone containing a line");
  }

  // extremal generators: a ray is extremal iff its active facet normals cut a
  // one-dimensional face
  {
    std::vector<IntVec> ext_rays;
    std::vector<IntVec> ext_coords;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::vector<IntVec> active;
      for (const IntVec& mu : local_normals)
        if (dot(mu, coords[i]) == 0) active.push_back(mu);
      std::size_t r = active.empty() ? 0 : rank(IntMatrix::from_rows(d, active));
      if (r == d - 1) {
        ext_rays.push_back(rays[i]);
        ext_coords.push_back(coords[i]);
      }
    }
    c.rays_ = std::move(ext_rays);
    c.ray_coords_ = std::move(ext_coords);
  }

  // lift facet normals to M (canonical: deterministic particular solution)
  std::sort(local_normals.begin(), local_normals.end());
  c.facet_normals_local_ = local_normals;
  IntMatrix bt = c.span_basis_.transposed();
  for (const IntVec& mu : local_normals) {
    auto m = solve(bt, mu);
    assert(m.has_value());
    c.facet_normals_.push_back(*m);
  }

  // annihilator of the span in M, canonicalized
  {
    IntMatrix kb = kernel_basis(bt);
    std::vector<IntVec> gens;
    for (std::size_t j = 0; j < kb.cols(); ++j) gens.push_back(kb.column(j));
    c.annihilator_ = hermite_basis(ambient_rank, gens);
  }
  return c;
}

inline std::vector<Cone> Cone::facets() const {
  std::vector<Cone> out;
  if (dim_ == 0) return out;
  std::map<std::string, bool> seen;
  for (const IntVec& mu : facet_normals_local_) {
    std::vector<IntVec> sub;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (dot(mu, ray_coords_[i]) == 0) sub.push_back(rays_[i]);
    Cone f = from_rays(ambient_rank_, sub);
    if (!seen.count(f.key())) {
      seen[f.key()] = true;
      out.push_back(std::move(f));
    }
  }
  return out;
}

inline std::vector<Cone> Cone::faces() const {
  std::map<std::string, Cone> all;
  std::vector<Cone> queue{*this};
  all.emplace(key(), *this);
  while (!queue.empty()) {
    Cone c = std::move(queue.back());
    queue.pop_back();
    for (Cone& f : c.facets()) {
      if (all.count(f.key())) continue;
      all.emplace(f.key(), f);
      queue.push_back(std::move(f));
    }
  }
  std::vector<Cone> out;
  out.reserve(all.size());
  for (auto& [k, c] : all) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rays() < b.rays();
  });
  return out;
}

/// Exact intersection of two strongly convex cones (always strongly convex).
inline Cone intersect_cones(const Cone& a, const Cone& b) {
  assert(a.ambient_rank() == b.ambient_rank());
  const std::size_t n = a.ambient_rank();
  std::vector<IntVec> rows;
  auto add_cone = [&rows](const Cone& c) {
    for (const IntVec& m : c.facet_normals()) rows.push_back(m);
    for (const IntVec& e : c.span_annihilator()) {
      rows.push_back(e);
      rows.push_back(negated(e));
    }
  };
  add_cone(a);
  add_cone(b);
  std::vector<IntVec> rays = detail::extreme_rays_of_halfspaces(n, rows);
  return Cone::from_rays(n, rays);
}

}  // namespace toric
