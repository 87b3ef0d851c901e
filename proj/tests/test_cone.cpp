#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "toric/cone.hpp"

using namespace toric;

namespace {

IntVec v2(long long a, long long b) { return IntVec{Int(a), Int(b)}; }
IntVec v3(long long a, long long b, long long c) {
  return IntVec{Int(a), Int(b), Int(c)};
}

// Independent membership oracle for dims <= 3: by Caratheodory, x lies in the
// cone iff it is a non-negative rational combination of some independent
// subset of <= dim generators.  Solved exactly with integer cross-multiplied
// Cramer rules (no library cone machinery involved).
bool member_oracle(const std::vector<IntVec>& gens, const IntVec& x) {
  const std::size_t n = x.size();
  if (is_zero_vector(x)) return true;
  std::size_t k = gens.size();
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t a = 0; a < k; ++a) {
    subsets.push_back({a});
    for (std::size_t b = a + 1; b < k && n >= 2; ++b) {
      subsets.push_back({a, b});
      for (std::size_t c = b + 1; c < k && n >= 3; ++c) subsets.push_back({a, b, c});
    }
  }
  for (const auto& sub : subsets) {
    // solve sum_i t_i g_i = x over Q by Gaussian elimination on an augmented
    // integer matrix with exact pivoting (track numerator/denominator pairs)
    std::size_t m = sub.size();
    // build n x (m+1) rational-free system via successive elimination using
    // integer row ops; fall back to solving with Cramer on a maximal square
    // subsystem: choose m independent coordinate rows.
    // Simpler: iterate over all m-subsets of coordinate rows, use Cramer.
    std::vector<std::size_t> rows_idx(n);
    for (std::size_t i = 0; i < n; ++i) rows_idx[i] = i;
    // enumerate m-subsets of rows
    std::vector<std::size_t> rs(m);
    std::vector<bool> sel(n, false);
    std::fill(sel.begin(), sel.begin() + m, true);
    std::sort(sel.begin(), sel.end());  // start with last m rows, any order works
    do {
      rs.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (sel[i]) rs.push_back(i);
      if (rs.size() != m) continue;
      IntMatrix a(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = gens[sub[j]][rs[i]];
      Int det = determinant(a);
      if (det == 0) continue;
      // Cramer: t_j = det_j / det
      std::vector<Int> num(m);
      for (std::size_t j = 0; j < m; ++j) {
        IntMatrix aj = a;
        for (std::size_t i = 0; i < m; ++i) aj(i, j) = x[rs[i]];
        num[j] = determinant(aj);
      }
      // check signs t_j >= 0 and that the full vector equation holds
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j)
        if (num[j] * det < 0) ok = false;
      if (!ok) continue;
      for (std::size_t i = 0; i < n && ok; ++i) {
        Int lhs = 0;
        for (std::size_t j = 0; j < m; ++j) lhs += num[j] * gens[sub[j]][i];
        if (lhs != det * x[i]) ok = false;
      }
      if (ok) return true;
    } while (std::next_permutation(sel.begin(), sel.end()));
  }
  return false;
}

}  // namespace

TEST_CASE("cone construction") {
  SECTION("first orthant") {
    Cone c = Cone::from_rays(2, {v2(1, 0), v2(0, 1)});
    REQUIRE(c.dim() == 2);
    REQUIRE(c.rays() == std::vector<IntVec>{v2(0, 1), v2(1, 0)});
    std::vector<IntVec> normals = c.facet_normals();
    std::sort(normals.begin(), normals.end());
    REQUIRE(normals == std::vector<IntVec>{v2(0, 1), v2(1, 0)});
  }
  SECTION("zero cone") {
    Cone c = Cone::from_rays(2, {});
    REQUIRE(c.dim() == 0);
    REQUIRE(c.rays().empty());
    REQUIRE(c.facet_normals().empty());
    REQUIRE(c.span_annihilator().size() == 2);
    REQUIRE(c.contains(v2(0, 0)));
    REQUIRE_FALSE(c.contains(v2(1, 0)));
  }
  SECTION("half-open slice cone((1,0),(1,2))") {
    Cone c = Cone::from_rays(2, {v2(1, 0), v2(1, 2)});
    REQUIRE(c.dim() == 2);
    std::vector<IntVec> normals = c.facet_normals();
    std::sort(normals.begin(), normals.end());
    REQUIRE(normals == std::vector<IntVec>{v2(0, 1), v2(2, -1)});
  }
  SECTION("degenerate input is normalized, not rejected") {
    Cone c = Cone::from_rays(2, {v2(2, 0), v2(1, 0), v2(0, 3), v2(1, 1)});
    REQUIRE(c.rays() == std::vector<IntVec>{v2(0, 1), v2(1, 0)});  // (1,1) not extremal
  }
  SECTION("line is rejected") {
    REQUIRE_THROWS_AS(Cone::from_rays(2, {v2(1, 0), v2(-1, 0), v2(0, 1)}),
                      NotStronglyConvexError);
    REQUIRE_THROWS_AS(Cone::from_rays(1, {IntVec{1}, IntVec{-1}}),
                      NotStronglyConvexError);
  }
}

TEST_CASE("dual cone") {
  SECTION("first orthant is self-dual") {
    Cone c = Cone::from_rays(2, {v2(1, 0), v2(0, 1)});
    REQUIRE(c.dual() == c);
  }
  SECTION("cone((1,0),(1,2)) dualizes to cone((0,1),(2,-1))") {
    Cone c = Cone::from_rays(2, {v2(1, 0), v2(1, 2)});
    Cone expected = Cone::from_rays(2, {v2(0, 1), v2(2, -1)});
    REQUIRE(c.dual() == expected);
  }
  SECTION("non-full-dimensional cone has no strongly convex dual") {
    Cone ray = Cone::from_rays(2, {v2(1, 0)});
    REQUIRE_THROWS_AS(ray.dual(), NotStronglyConvexError);
  }
  SECTION("dual of dual is the identity on full-dimensional cones") {
    std::vector<Cone> cones = {
        Cone::from_rays(2, {v2(1, 0), v2(1, 2)}),
        Cone::from_rays(2, {v2(3, -1), v2(-1, 2)}),
        Cone::from_rays(3, {v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1), v3(-1, -1, 1)}),
    };
    for (const Cone& c : cones) REQUIRE(c.dual().dual() == c);
  }
}

TEST_CASE("faces") {
  SECTION("first orthant has 4 faces") {
    Cone c = Cone::from_rays(2, {v2(1, 0), v2(0, 1)});
    REQUIRE(c.faces().size() == 4);
  }
  SECTION("cone over a square has 10 faces") {
    Cone c =
        Cone::from_rays(3, {v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1), v3(-1, -1, 1)});
    auto faces = c.faces();
    REQUIRE(faces.size() == 10);
    std::size_t by_dim[4] = {0, 0, 0, 0};
    for (const Cone& f : faces) ++by_dim[f.dim()];
    REQUIRE(by_dim[0] == 1);
    REQUIRE(by_dim[1] == 4);
    REQUIRE(by_dim[2] == 4);
    REQUIRE(by_dim[3] == 1);
  }
  SECTION("zero cone is its only face") {
    Cone c = Cone::from_rays(3, {});
    REQUIRE(c.faces().size() == 1);
  }
  SECTION("faces are graded: every (k-1)-face is a facet of some k-face") {
    Cone c =
        Cone::from_rays(3, {v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1), v3(-1, -1, 1)});
    auto faces = c.faces();
    for (const Cone& f : faces) {
      if (f.dim() == c.dim()) continue;
      bool covered = false;
      for (const Cone& g : faces) {
        if (g.dim() != f.dim() + 1) continue;
        for (const Cone& gf : g.facets())
          if (gf == f) covered = true;
      }
      REQUIRE(covered);
    }
  }
}

TEST_CASE("interior point") {
  REQUIRE(Cone::from_rays(2, {v2(1, 0)}).interior_point() == v2(1, 0));
  REQUIRE(Cone::from_rays(2, {v2(1, 0), v2(0, 1)}).interior_point() == v2(1, 1));
  Cone c = Cone::from_rays(2, {v2(1, 0), v2(1, 2)});
  REQUIRE(c.interior_point() == v2(2, 2));
  REQUIRE(c.relative_interior_contains(c.interior_point()));
  REQUIRE_THROWS_AS(Cone::from_rays(2, {}).interior_point(), ZeroConeError);
}

TEST_CASE("smooth and simplicial") {
  REQUIRE(Cone::from_rays(2, {v2(1, 0), v2(0, 1)}).is_smooth());
  Cone index2 = Cone::from_rays(2, {v2(1, 0), v2(1, 2)});
  REQUIRE(index2.is_simplicial());
  REQUIRE_FALSE(index2.is_smooth());
  Cone square =
      Cone::from_rays(3, {v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1), v3(-1, -1, 1)});
  REQUIRE_FALSE(square.is_simplicial());
  REQUIRE(Cone::from_rays(2, {}).is_smooth());
  // a non-saturated ray sublattice cannot happen: rays are primitive, so every
  // 1-dimensional cone is smooth
  REQUIRE(Cone::from_rays(3, {v3(2, 4, 6)}).is_smooth());
}

TEST_CASE("quotient map") {
  SECTION("zero cone gives the identity") {
    QuotientMap q = Cone::from_rays(3, {}).quotient_map();
    REQUIRE(q.target_rank == 3);
    REQUIRE(q.matrix == IntMatrix::identity(3));
  }
  SECTION("ray (1,0) projects onto the second coordinate") {
    QuotientMap q = Cone::from_rays(2, {v2(1, 0)}).quotient_map();
    REQUIRE(q.target_rank == 1);
    REQUIRE(q.matrix == IntMatrix{{0, 1}});
  }
  SECTION("full-dimensional cone maps to rank zero") {
    QuotientMap q = Cone::from_rays(2, {v2(1, 0), v2(0, 1)}).quotient_map();
    REQUIRE(q.target_rank == 0);
    REQUIRE(q.matrix.rows() == 0);
  }
  SECTION("invariants: surjective and kills the span") {
    for (Cone c : {Cone::from_rays(3, {v3(1, 2, 3)}),
                   Cone::from_rays(3, {v3(1, 0, 1), v3(0, 1, 1)}),
                   Cone::from_rays(3, {v3(2, 1, 0), v3(0, 1, 2), v3(1, 1, 1)})}) {
      QuotientMap q = c.quotient_map();
      REQUIRE(q.matrix.rows() == q.target_rank);
      if (q.target_rank > 0) {
        SnfResult snf = smith_normal_form(q.matrix);
        REQUIRE(snf.rank() == q.target_rank);
        for (const Int& d : snf.diagonal) REQUIRE(d == 1);
      }
      REQUIRE((q.matrix * c.span_basis()).is_zero());
    }
  }
}

TEST_CASE("H and V representations agree on random points") {
  std::mt19937 rng(987654);
  std::uniform_int_distribution<int> coord(-6, 6);
  std::vector<std::pair<std::size_t, std::vector<IntVec>>> gens = {
      {2, {v2(1, 0), v2(1, 2)}},
      {2, {v2(1, 0)}},
      {3, {v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1), v3(-1, -1, 1)}},
      {3, {v3(1, 0, 0), v3(0, 1, 0)}},
      {3, {v3(1, 0, 2), v3(0, 1, 2), v3(1, 1, 3)}},
  };
  int checked = 0;
  for (const auto& [n, g] : gens) {
    Cone c = Cone::from_rays(n, g);
    for (int t = 0; t < 100; ++t) {
      IntVec x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = coord(rng);
      REQUIRE(c.contains(x) == member_oracle(g, x));
      ++checked;
    }
  }
  REQUIRE(checked == 500);
}

TEST_CASE("interior point pairs strictly positively with facet normals") {
  for (Cone c : {Cone::from_rays(2, {v2(1, 0), v2(1, 2)}),
                 Cone::from_rays(3, {v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1),
                                     v3(-1, -1, 1)}),
                 Cone::from_rays(3, {v3(1, 0, 0), v3(0, 1, 0)})}) {
    IntVec v = c.interior_point();
    for (const IntVec& m : c.facet_normals()) REQUIRE(dot(m, v) > 0);
    for (const IntVec& a : c.span_annihilator()) REQUIRE(dot(a, v) == 0);
  }
}

TEST_CASE("cone intersection") {
  Cone orthant = Cone::from_rays(2, {v2(1, 0), v2(0, 1)});
  Cone slice = Cone::from_rays(2, {v2(1, 1), v2(-1, 1)});
  Cone meet = intersect_cones(orthant, slice);
  REQUIRE(meet == Cone::from_rays(2, {v2(1, 1), v2(0, 1)}));

  Cone opposite = Cone::from_rays(2, {v2(-1, 0), v2(0, -1)});
  REQUIRE(intersect_cones(orthant, opposite).is_zero_cone());

  // common ray only
  Cone right = Cone::from_rays(2, {v2(1, 0), v2(1, -2)});
  Cone upper = Cone::from_rays(2, {v2(1, 0), v2(1, 2)});
  REQUIRE(intersect_cones(right, upper) == Cone::from_rays(2, {v2(1, 0)}));
}
