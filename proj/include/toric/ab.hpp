#pragma once

#include <cassert>
#include <map>
#include <stdexcept>
#include <vector>

#include "toric/errors.hpp"
#include "toric/fan.hpp"
#include "toric/poly.hpp"
#include "toric/pp.hpp"
#include "toric/snf.hpp"

namespace toric {

/// Incidence sign between a cone and one of its facets: the sign of the
/// determinant expressing [oriented basis of tau, interior point of sigma]
/// in the oriented basis of sigma.  Orientations are the ordered canonical
/// span bases, so the signs are reproducible; any consistent assignment gives
/// the same cohomology.
inline int incidence_sign(const Cone& sigma, const Cone& tau) {
  assert(tau.dim() + 1 == sigma.dim());
  const std::size_t d = sigma.dim();
  IntMatrix t(d, d);
  for (std::size_t j = 0; j < tau.dim(); ++j) {
    auto coords = solve(sigma.span_basis(), tau.span_basis().column(j));
    assert(coords.has_value());
    for (std::size_t i = 0; i < d; ++i) t(i, j) = (*coords)[i];
  }
  auto inward = solve(sigma.span_basis(), sigma.interior_point());
  assert(inward.has_value());
  for (std::size_t i = 0; i < d; ++i) t(i, d - 1) = (*inward)[i];
  Int det = determinant(t);
  assert(det != 0);
  return det > 0 ? 1 : -1;
}

/// Cochain complex with position-i term the degree-q polynomials summed over
/// the codimension-i cones, and differentials given by signed restriction to
/// facets.  Defined for complete fans, where all terms are free Z-modules.
class ABComplex {
public:
  /// `orientation_flips`, when given, re-orients each cone by the listed sign
  /// (+1/-1 per cone id); cohomology is independent of the choice.
  static ABComplex build(const Fan& f, int q,
                         const std::vector<int>* orientation_flips = nullptr) {
    if (!f.is_complete())
      throw NotCompleteError("the cochain complex is defined for complete fans");
    const std::size_t n = f.ambient_rank();
    ABComplex ab;
    ab.fan_ = &f;
    ab.degree_ = q;
    ab.cones_at_.resize(n + 1);
    ab.offsets_.resize(n + 1);
    ab.term_ranks_.assign(n + 1, 0);
    auto flip = [&](int id) {
      return orientation_flips ? (*orientation_flips)[static_cast<std::size_t>(id)] : 1;
    };
    for (std::size_t i = 0; i <= n; ++i) {
      ab.cones_at_[i] = f.ids_of_dim(n - i);
      std::size_t at = 0;
      for (int id : ab.cones_at_[i]) {
        ab.offsets_[i][id] = at;
        at += monomial_count(f.cone(id).dim(), q);
      }
      ab.term_ranks_[i] = at;
    }
    for (std::size_t i = 0; i < n; ++i) {
      IntMatrix d(ab.term_ranks_[i + 1], ab.term_ranks_[i]);
      for (int sigma : ab.cones_at_[i]) {
        const Cone& cs = f.cone(sigma);
        for (int tau : f.face_ids(sigma)) {
          const Cone& ct = f.cone(tau);
          if (ct.dim() + 1 != cs.dim()) continue;
          int sign = incidence_sign(cs, ct) * flip(sigma) * flip(tau);
          d.add_block(ab.offsets_[i + 1].at(tau), ab.offsets_[i].at(sigma),
                      restriction_matrix(cs, ct, q), sign);
        }
      }
      ab.differentials_.push_back(std::move(d));
    }
    // delta . delta = 0 is an exact integer identity; a failure is a bug
    for (std::size_t i = 0; i + 1 < ab.differentials_.size(); ++i)
      if (!(ab.differentials_[i + 1] * ab.differentials_[i]).is_zero())
        throw std::logic_error("differentials do not compose to zero");
    for (const IntMatrix& d : ab.differentials_)
      ab.diagonals_.push_back(smith_normal_form(d).diagonal);
    return ab;
  }

  const Fan& fan() const { return *fan_; }
  int degree() const { return degree_; }
  std::size_t positions() const { return term_ranks_.size(); }  // n + 1
  std::size_t term_rank(std::size_t i) const { return term_ranks_[i]; }
  const std::vector<int>& cones_at(std::size_t i) const { return cones_at_[i]; }
  const IntMatrix& differential(std::size_t i) const { return differentials_[i]; }

  std::size_t differential_rank(std::size_t i) const {
    std::size_t r = 0;
    for (const Int& d : diagonals_[i])
      if (d != 0) ++r;
    return r;
  }

  CohomologyGroup cohomology_z(std::size_t i) const {
    CohomologyGroup h;
    std::size_t ker = (i < differentials_.size())
                          ? term_ranks_[i] - differential_rank(i)
                          : term_ranks_[i];
    std::size_t im = (i > 0) ? differential_rank(i - 1) : 0;
    h.free_rank = ker - im;
    if (i > 0)
      for (const Int& d : diagonals_[i - 1])
        if (d > 1) h.torsion.push_back(d);
    return h;
  }

  std::size_t rank_rational(std::size_t i) const {
    return cohomology_z(i).free_rank;
  }

  std::size_t dim_mod_p(std::size_t i, long p) const {
    std::size_t ker = (i < differentials_.size())
                          ? term_ranks_[i] - rank_mod_p(differentials_[i], p)
                          : term_ranks_[i];
    std::size_t im = (i > 0) ? rank_mod_p(differentials_[i - 1], p) : 0;
    return ker - im;
  }

private:
  ABComplex() = default;

  const Fan* fan_ = nullptr;
  int degree_ = 0;
  std::vector<std::vector<int>> cones_at_;
  std::vector<std::map<int, std::size_t>> offsets_;
  std::vector<std::size_t> term_ranks_;
  std::vector<IntMatrix> differentials_;
  std::vector<std::vector<Int>> diagonals_;
};

/// First differential for arbitrary fans with full-dimensional maximal cones:
/// one row block per (n-1)-cone lying in exactly two chambers, mapping
/// (f_0, f_1) to f_1|_tau - f_0|_tau.  Walls contained in a single chamber
/// contribute nothing.  Columns match the layout of delta_matrix.
inline IntMatrix delta0_general(const Fan& f, int q) {
  if (!f.maximal_full_dim())
    throw MaximalNotFullDimError(
        "the skeleton differential needs full-dimensional maximal cones");
  const std::vector<int>& max = f.maximal();
  std::map<int, std::size_t> position;
  for (std::size_t i = 0; i < max.size(); ++i) position[max[i]] = i;
  std::vector<std::size_t> sizes = delta_block_sizes(f, q);
  std::vector<std::size_t> offsets(max.size() + 1, 0);
  for (std::size_t i = 0; i < max.size(); ++i) offsets[i + 1] = offsets[i] + sizes[i];

  const std::size_t n = f.ambient_rank();
  std::vector<std::pair<int, std::pair<int, int>>> walls;  // tau -> (s0, s1)
  std::size_t total_rows = 0;
  if (n >= 1)
    for (int tau : f.ids_of_dim(n - 1)) {
      std::vector<int> above = f.full_dim_cofaces(tau);
      if (above.size() != 2) continue;
      walls.push_back({tau, {above[0], above[1]}});
      total_rows += monomial_count(n - 1, q);
    }

  IntMatrix d(total_rows, offsets.back());
  std::size_t row = 0;
  for (const auto& [tau, pair] : walls) {
    const Cone& wall = f.cone(tau);
    auto [s0, s1] = pair;  // ids are sorted, matching the fixed ordering
    d.add_block(row, offsets[position.at(s1)],
                restriction_matrix(f.cone(s1), wall, q), +1);
    d.add_block(row, offsets[position.at(s0)],
                restriction_matrix(f.cone(s0), wall, q), -1);
    row += monomial_count(n - 1, q);
  }
  return d;
}

struct KernelComparison {
  std::size_t ker_delta0_rank = 0;
  std::size_t ker_delta_rank = 0;
  bool equal = false;
  IntMatrix basis_change;  // ker(delta) = ker(delta0) . basis_change when equal
};

/// Compares ker(delta0) with ker(delta) as submodules of the sum over the
/// maximal cones.  Both kernels are saturated, so they coincide iff they have
/// equal ranks and their union has no larger rank.
inline KernelComparison kernel_comparison(const Fan& f, int q) {
  IntMatrix k0 = kernel_basis(delta0_general(f, q));
  IntMatrix k = kernel_basis(delta_matrix(f, q));
  KernelComparison out;
  out.ker_delta0_rank = k0.cols();
  out.ker_delta_rank = k.cols();
  if (k0.cols() != k.cols()) return out;
  IntMatrix joint(k0.rows(), k0.cols() + k.cols());
  joint.set_block(0, 0, k0);
  joint.set_block(0, k0.cols(), k);
  if (rank(joint) != k0.cols()) return out;
  out.equal = true;
  if (auto w = solve(k0, k)) out.basis_change = *w;
  return out;
}

struct Coefficients {
  enum class Kind { integers, rationals, mod_p };
  Kind kind = Kind::integers;
  long p = 0;

  static Coefficients integers() { return {Kind::integers, 0}; }
  static Coefficients rationals() { return {Kind::rationals, 0}; }
  static Coefficients mod_p(long p) { return {Kind::mod_p, p}; }
};

struct EvennessPosition {
  std::size_t position = 0;
  bool zero = false;
  std::size_t rank = 0;            // rank (Z, Q) or dimension (F_p)
  std::vector<Int> torsion;        // integral coefficients only
};

struct EvennessDegree {
  int q = 0;
  std::size_t h0_rank = 0;
  std::vector<std::size_t> exact_at;  // positions i >= 1 with vanishing cohomology
  std::vector<EvennessPosition> positions;
  bool exact = false;
};

struct EvennessReport {
  Coefficients coefficients;
  int max_degree = 0;
  bool pass = false;  // exact at all positions >= 1 for all q <= max_degree
  std::vector<EvennessDegree> degrees;
};

/// Exactness probe for the complex at positions >= 1, degree by degree up to
/// d_max.  A pass certifies nothing beyond the stated degree bound.
inline EvennessReport evenness_probe(const Fan& f, int d_max, Coefficients coeffs) {
  EvennessReport report;
  report.coefficients = coeffs;
  report.max_degree = d_max;
  report.pass = true;
  for (int q = 0; q <= d_max; ++q) {
    ABComplex ab = ABComplex::build(f, q);
    EvennessDegree deg;
    deg.q = q;
    deg.exact = true;
    for (std::size_t i = 0; i < ab.positions(); ++i) {
      EvennessPosition pos;
      pos.position = i;
      switch (coeffs.kind) {
        case Coefficients::Kind::integers: {
          CohomologyGroup h = ab.cohomology_z(i);
          pos.rank = h.free_rank;
          pos.torsion = h.torsion;
          pos.zero = h.is_zero();
          break;
        }
        case Coefficients::Kind::rationals:
          pos.rank = ab.rank_rational(i);
          pos.zero = pos.rank == 0;
          break;
        case Coefficients::Kind::mod_p:
          pos.rank = ab.dim_mod_p(i, coeffs.p);
          pos.zero = pos.rank == 0;
          break;
      }
      if (i == 0) deg.h0_rank = pos.rank;
      if (i >= 1) {
        if (pos.zero)
          deg.exact_at.push_back(i);
        else
          deg.exact = false;
      }
      deg.positions.push_back(std::move(pos));
    }
    report.pass = report.pass && deg.exact;
    report.degrees.push_back(std::move(deg));
  }
  return report;
}

struct SweepEntry {
  int cone_id = -1;
  bool pass = false;
};

struct SweepReport {
  bool all_pass = false;
  bool whole_fan_pass = false;  // the entry of the zero cone
  std::vector<SweepEntry> entries;
  // stars failing while the whole fan passes; expected empty
  std::vector<int> counterexamples;
};

/// Runs the evenness probe on the star fan of every cone.
inline SweepReport orbit_closure_sweep(const Fan& f, int d_max) {
  if (!f.is_complete())
    throw NotCompleteError("orbit-closure sweep needs a complete fan");
  SweepReport report;
  report.all_pass = true;
  for (int id = 0; id < static_cast<int>(f.size()); ++id) {
    Fan star = f.star_fan(id);
    bool pass = evenness_probe(star, d_max, Coefficients::integers()).pass;
    report.entries.push_back({id, pass});
    report.all_pass = report.all_pass && pass;
    if (id == f.zero_cone_id()) report.whole_fan_pass = pass;
  }
  for (const SweepEntry& e : report.entries)
    if (!e.pass && report.whole_fan_pass) report.counterexamples.push_back(e.cone_id);
  return report;
}

struct TorsionPosition {
  std::size_t position = 0;
  std::vector<Int> torsion;
  std::size_t rank_rational = 0;
  std::map<long, std::size_t> dim_mod_p;
  bool mismatch = false;  // some F_p dimension differs from the rational rank
};

struct TorsionDegree {
  int q = 0;
  bool h0_saturated = false;
  std::vector<TorsionPosition> positions;
};

struct TorsionReport {
  int max_degree = 0;
  bool any_torsion = false;
  bool any_mismatch = false;
  std::vector<TorsionDegree> degrees;
};

/// Torsion diagnostics: integral torsion coefficients per position, rational
/// rank versus F_p dimensions for p in {2, 3, 5}, and saturation of the
/// position-0 kernel.  Content is reported, not judged.
inline TorsionReport torsion_probe(const Fan& f, int d_max) {
  if (!f.is_complete())
    throw NotCompleteError("torsion probe needs a complete fan");
  TorsionReport report;
  report.max_degree = d_max;
  for (int q = 0; q <= d_max; ++q) {
    ABComplex ab = ABComplex::build(f, q);
    TorsionDegree deg;
    deg.q = q;
    IntMatrix h0 = ab.positions() > 1 ? kernel_basis(ab.differential(0))
                                      : IntMatrix::identity(ab.term_rank(0));
    deg.h0_saturated = h0.cols() == 0 || is_saturated_basis(h0);
    for (std::size_t i = 0; i < ab.positions(); ++i) {
      TorsionPosition pos;
      pos.position = i;
      CohomologyGroup h = ab.cohomology_z(i);
      pos.torsion = h.torsion;
      pos.rank_rational = h.free_rank;
      for (long p : {2L, 3L, 5L}) {
        std::size_t d = ab.dim_mod_p(i, p);
        pos.dim_mod_p[p] = d;
        pos.mismatch = pos.mismatch || d != pos.rank_rational;
      }
      report.any_torsion = report.any_torsion || !pos.torsion.empty();
      report.any_mismatch = report.any_mismatch || pos.mismatch;
      deg.positions.push_back(std::move(pos));
    }
    report.degrees.push_back(std::move(deg));
  }
  return report;
}

}  // namespace toric
