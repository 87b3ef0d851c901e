#pragma once

#include <cassert>
#include <map>
#include <string>
#include <vector>

#include "toric/cone.hpp"
#include "toric/errors.hpp"
#include "toric/int_matrix.hpp"
#include "toric/snf.hpp"

namespace toric {

using Exponents = std::vector<int>;

/// Monomials of total degree q in d variables, lexicographically decreasing
/// exponent vectors.  This ordering is the basis order everywhere.
inline std::vector<Exponents> monomial_basis(std::size_t d, int q) {
  assert(q >= 0);
  std::vector<Exponents> out;
  if (d == 0) {
    if (q == 0) out.push_back({});
    return out;
  }
  for (int e = q; e >= 0; --e)
    for (const Exponents& rest : monomial_basis(d - 1, q - e)) {
      Exponents m;
      m.reserve(d);
      m.push_back(e);
      m.insert(m.end(), rest.begin(), rest.end());
      out.push_back(std::move(m));
    }
  return out;
}

inline std::size_t monomial_count(std::size_t d, int q) {
  if (d == 0) return q == 0 ? 1 : 0;
  // C(q + d - 1, d - 1)
  Int num = 1, den = 1;
  for (std::size_t i = 1; i < d; ++i) {
    num *= q + static_cast<int>(i);
    den *= static_cast<int>(i);
  }
  return (num / den).convert_to<std::size_t>();
}

/// Monomial basis of the homogeneous degree-q integral polynomials on N_sigma,
/// written in the coordinates of the cone's canonical span basis.  The induced
/// cohomological grading is twice the polynomial degree.
struct GradedPolySpace {
  std::string cone_key;
  std::size_t cone_dim = 0;
  int degree = 0;
  std::vector<Exponents> monomials;

  static GradedPolySpace of(const Cone& c, int q) {
    GradedPolySpace s;
    s.cone_key = c.key();
    s.cone_dim = c.dim();
    s.degree = q;
    s.monomials = monomial_basis(c.dim(), q);
    return s;
  }

  std::size_t size() const { return monomials.size(); }
  int cohomological_degree() const { return 2 * degree; }
};

struct PolyElement {
  std::string cone_key;
  std::size_t cone_dim = 0;
  int degree = 0;
  IntVec coefficients;  // over monomial_basis(cone_dim, degree)
};

inline PolyElement make_poly(const Cone& c, int q, IntVec coefficients) {
  assert(coefficients.size() == monomial_count(c.dim(), q));
  return PolyElement{c.key(), c.dim(), q, std::move(coefficients)};
}

// --- sparse polynomial helpers -------------------------------------------

using SparsePoly = std::map<Exponents, Int>;

inline SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  // drop explicit zeros so equality tests behave
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

inline SparsePoly to_sparse(std::size_t d, int q, const IntVec& coeffs) {
  SparsePoly out;
  std::vector<Exponents> basis = monomial_basis(d, q);
  assert(coeffs.size() == basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] != 0) out[basis[i]] = coeffs[i];
  return out;
}

inline IntVec from_sparse(std::size_t d, int q, const SparsePoly& p) {
  std::vector<Exponents> basis = monomial_basis(d, q);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  IntVec out(basis.size());
  for (const auto& [e, c] : p) {
    auto it = index.find(e);
    assert(it != index.end());  // homogeneous of the right degree
    out[it->second] = c;
  }
  return out;
}

/// Matrix of the substitution x_i = sum_j C(i, j) y_j on homogeneous degree-q
/// polynomials: columns are indexed by the x-monomials (C.rows() variables),
/// rows by the y-monomials (C.cols() variables).
inline IntMatrix substitution_matrix(const IntMatrix& c, int q) {
  const std::size_t s = c.rows(), t = c.cols();
  std::vector<Exponents> cols = monomial_basis(s, q);
  std::vector<Exponents> rows = monomial_basis(t, q);
  IntMatrix out(rows.size(), cols.size());
  if (rows.empty() || cols.empty()) return out;

  std::map<Exponents, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;

  std::vector<SparsePoly> linear(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (c(i, j) != 0) {
        Exponents e(t, 0);
        e[j] = 1;
        linear[i][e] = c(i, j);
      }

  SparsePoly unit{{Exponents(t, 0), Int(1)}};
  for (std::size_t col = 0; col < cols.size(); ++col) {
    SparsePoly prod = unit;
    for (std::size_t i = 0; i < s; ++i)
      for (int e = 0; e < cols[col][i]; ++e) prod = sparse_mul(prod, linear[i]);
    for (const auto& [e, coeff] : prod) out(row_index.at(e), col) = coeff;
  }
  return out;
}

namespace detail {

inline void require_face(const Cone& sigma, const Cone& tau) {
  if (sigma.ambient_rank() != tau.ambient_rank())
    throw NotAFaceError("cones live in different lattices");
  for (const IntVec& r : tau.rays()) {
    bool found = false;
    for (const IntVec& s : sigma.rays()) found = found || s == r;
    if (!found) throw NotAFaceError("ray of tau is not a ray of sigma");
  }
  // the normals of sigma active on tau must cut out exactly tau
  std::vector<const IntVec*> active;
  for (const IntVec& m : sigma.facet_normals()) {
    bool vanishes = true;
    for (const IntVec& r : tau.rays()) vanishes = vanishes && dot(m, r) == 0;
    if (vanishes) active.push_back(&m);
  }
  std::vector<IntVec> cut;
  for (const IntVec& r : sigma.rays()) {
    bool on_all = true;
    for (const IntVec* m : active) on_all = on_all && dot(*m, r) == 0;
    if (on_all) cut.push_back(r);
  }
  if (cut != tau.rays()) throw NotAFaceError("tau is not a face of sigma");
}

}  // namespace detail

/// Matrix of restricting degree-q polynomials on N_sigma to N_tau, for a face
/// tau <= sigma.  Computed by writing tau's lattice basis in sigma's and
/// substituting the resulting linear forms.
inline IntMatrix restriction_matrix(const Cone& sigma, const Cone& tau, int q) {
  detail::require_face(sigma, tau);
  auto coords = solve(sigma.span_basis(), tau.span_basis());
  assert(coords.has_value());  // N_tau sits inside the saturated N_sigma
  return substitution_matrix(*coords, q);
}

/// Matrix of restricting a global degree-q polynomial on N to N_sigma.
inline IntMatrix global_restriction_matrix(const Cone& sigma, int q) {
  return substitution_matrix(sigma.span_basis(), q);
}

inline PolyElement multiply(const PolyElement& f, const PolyElement& g) {
  if (f.cone_key != g.cone_key || f.cone_dim != g.cone_dim)
    throw ConeMismatchError("polynomial factors live on different cones");
  SparsePoly prod = sparse_mul(to_sparse(f.cone_dim, f.degree, f.coefficients),
                               to_sparse(g.cone_dim, g.degree, g.coefficients));
  PolyElement out;
  out.cone_key = f.cone_key;
  out.cone_dim = f.cone_dim;
  out.degree = f.degree + g.degree;
  out.coefficients = from_sparse(f.cone_dim, out.degree, prod);
  return out;
}

}  // namespace toric
