#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "toric/ab.hpp"

using namespace toric;

namespace {

// rows normalized to first-nonzero-positive and sorted, for comparisons that
// ignore row order and per-row sign
std::vector<IntVec> canonical_rows(const IntMatrix& m) {
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVec r = m.row(i);
    for (const Int& x : r) {
      if (x == 0) continue;
      if (x < 0) r = negated(r);
      break;
    }
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("complex construction on P2") {
  Fan f = fixtures::p2();
  SECTION("degree 0") {
    ABComplex ab = ABComplex::build(f, 0);
    REQUIRE(ab.positions() == 3);
    REQUIRE(ab.term_rank(0) == 3);
    REQUIRE(ab.term_rank(1) == 3);
    REQUIRE(ab.term_rank(2) == 1);
    REQUIRE(ab.differential_rank(0) == 2);
    REQUIRE(ab.differential_rank(1) == 1);
    CohomologyGroup h0 = ab.cohomology_z(0);
    REQUIRE(h0.free_rank == 1);
    REQUIRE(h0.torsion.empty());
    REQUIRE(ab.cohomology_z(1).is_zero());
    REQUIRE(ab.cohomology_z(2).is_zero());
  }
  SECTION("degree 1") {
    ABComplex ab = ABComplex::build(f, 1);
    REQUIRE(ab.term_rank(0) == 6);
    REQUIRE(ab.term_rank(1) == 3);
    REQUIRE(ab.term_rank(2) == 0);
    REQUIRE(ab.cohomology_z(0).free_rank == 3);
    REQUIRE(ab.cohomology_z(1).is_zero());
  }
}

TEST_CASE("complex construction on P1") {
  ABComplex ab = ABComplex::build(fixtures::p1(), 0);
  REQUIRE(ab.positions() == 2);
  REQUIRE(ab.term_rank(0) == 2);
  REQUIRE(ab.term_rank(1) == 1);
  REQUIRE(ab.cohomology_z(0).free_rank == 1);
  REQUIRE(ab.cohomology_z(1).is_zero());
}

TEST_CASE("incomplete fans are rejected") {
  REQUIRE_THROWS_AS(ABComplex::build(fixtures::orthant(), 1), NotCompleteError);
  REQUIRE_THROWS_AS(evenness_probe(fixtures::antipodal(), 2, Coefficients::integers()),
                    NotCompleteError);
}

TEST_CASE("differentials compose to zero and satisfy the Euler identity") {
  for (const Fan& f : {fixtures::p1(), fixtures::p2(), fixtures::p1xp1(),
                       fixtures::hirzebruch1(), fixtures::nonsmooth_complete(),
                       fixtures::octants()}) {
    for (int q = 0; q <= 4; ++q) {
      ABComplex ab = ABComplex::build(f, q);
      for (std::size_t i = 0; i + 1 + 1 < ab.positions(); ++i)
        REQUIRE((ab.differential(i + 1) * ab.differential(i)).is_zero());
      long long terms = 0, cohomology = 0;
      int sign = 1;
      for (std::size_t i = 0; i < ab.positions(); ++i) {
        terms += sign * static_cast<long long>(ab.term_rank(i));
        cohomology += sign * static_cast<long long>(ab.cohomology_z(i).free_rank);
        sign = -sign;
      }
      REQUIRE(terms == cohomology);
    }
  }
}

TEST_CASE("degree-1 kernel rank counts rays on complete simplicial fans") {
  for (const Fan& f : {fixtures::p2(), fixtures::p1xp1(), fixtures::hirzebruch1(),
                       fixtures::nonsmooth_complete()}) {
    ABComplex ab = ABComplex::build(f, 1);
    REQUIRE(ab.cohomology_z(0).free_rank == f.ids_of_dim(1).size());
  }
}

TEST_CASE("skeleton differential for general fans") {
  SECTION("single chamber has no walls") {
    IntMatrix d = delta0_general(fixtures::orthant(), 2);
    REQUIRE(d.rows() == 0);
    REQUIRE(d.cols() == 3);
  }
  SECTION("half plane has one wall block") {
    for (int q = 0; q <= 3; ++q) {
      IntMatrix d = delta0_general(fixtures::halfplane(), q);
      REQUIRE(d.rows() == 1);  // one monomial on the shared ray per degree
    }
  }
  SECTION("matches the complex differential up to row order and sign on P2") {
    for (int q = 0; q <= 3; ++q) {
      ABComplex ab = ABComplex::build(fixtures::p2(), q);
      REQUIRE(canonical_rows(delta0_general(fixtures::p2(), q)) ==
              canonical_rows(ab.differential(0)));
    }
  }
  SECTION("low-dimensional maximal cones are rejected") {
    Fan f = Fan::from_ray_indices(2, {fixtures::v({1, 0})}, {{0}});
    REQUIRE_THROWS_AS(delta0_general(f, 1), MaximalNotFullDimError);
  }
}

TEST_CASE("kernel comparison") {
  SECTION("complete fixtures agree at all degrees") {
    REQUIRE(hilbert_function(fixtures::p2(), 3) ==
            std::vector<std::size_t>{1, 3, 6, 9});
    for (int q = 0; q <= 3; ++q) {
      KernelComparison kc = kernel_comparison(fixtures::p2(), q);
      REQUIRE(kc.equal);
      REQUIRE(kc.ker_delta_rank == std::vector<std::size_t>{1, 3, 6, 9}[q]);
      REQUIRE(kc.basis_change.cols() == kc.ker_delta_rank);
    }
    for (int q = 0; q <= 2; ++q) {
      KernelComparison kc = kernel_comparison(fixtures::p1xp1(), q);
      REQUIRE(kc.equal);
      REQUIRE(kc.ker_delta_rank == std::vector<std::size_t>{1, 4, 8}[q]);
    }
  }
  SECTION("the half-plane fan agrees in every degree") {
    for (int q = 0; q <= 4; ++q) REQUIRE(kernel_comparison(fixtures::halfplane(), q).equal);
  }
  SECTION("kernels differ at degree 0 when the support is pinched at the origin") {
    // the two antipodal chambers meet only at the zero cone: the difference map
    // still forces equal constants there, the skeleton differential does not
    KernelComparison kc = kernel_comparison(fixtures::antipodal(), 0);
    REQUIRE(kc.ker_delta0_rank == 2);
    REQUIRE(kc.ker_delta_rank == 1);
    REQUIRE_FALSE(kc.equal);
    for (int q = 1; q <= 3; ++q) REQUIRE(kernel_comparison(fixtures::antipodal(), q).equal);
  }
}

TEST_CASE("evenness probe") {
  SECTION("smooth complete fixtures pass over Z with no torsion") {
    std::vector<Fan> fans;
    fans.push_back(fixtures::p1());
    fans.push_back(fixtures::p2());
    fans.push_back(fixtures::p1xp1());
    fans.push_back(fixtures::hirzebruch1());
    fans.push_back(fixtures::p2().barycentric_fan(0));
    for (const Fan& f : fans) {
      EvennessReport r = evenness_probe(f, 4, Coefficients::integers());
      REQUIRE(r.pass);
      for (const EvennessDegree& d : r.degrees)
        for (const EvennessPosition& p : d.positions) REQUIRE(p.torsion.empty());
    }
  }
  SECTION("position-0 rank matches the piecewise polynomial rank") {
    EvennessReport r = evenness_probe(fixtures::p2(), 3, Coefficients::integers());
    std::vector<std::size_t> h0;
    for (const EvennessDegree& d : r.degrees) h0.push_back(d.h0_rank);
    REQUIRE(h0 == hilbert_function(fixtures::p2(), 3));
  }
  SECTION("rational and mod-p probes agree on smooth fixtures") {
    for (Coefficients c : {Coefficients::rationals(), Coefficients::mod_p(2),
                           Coefficients::mod_p(5)}) {
      REQUIRE(evenness_probe(fixtures::p1xp1(), 3, c).pass);
    }
  }
  SECTION("rank-0 fans pass vacuously") {
    Fan point = fixtures::p2().star_fan(fixtures::p2().maximal()[0]);
    EvennessReport r = evenness_probe(point, 2, Coefficients::integers());
    REQUIRE(r.pass);
    REQUIRE(r.degrees[0].h0_rank == 1);
    REQUIRE(r.degrees[1].h0_rank == 0);
  }
}

TEST_CASE("orbit closure sweep") {
  for (const Fan& f : {fixtures::p2(), fixtures::p1xp1()}) {
    SweepReport r = orbit_closure_sweep(f, 2);
    REQUIRE(r.all_pass);
    REQUIRE(r.whole_fan_pass);
    REQUIRE(r.counterexamples.empty());
    REQUIRE(r.entries.size() == f.size());
  }
  SECTION("the zero-cone entry reproduces the whole-fan probe") {
    Fan f = fixtures::nonsmooth_complete();
    SweepReport r = orbit_closure_sweep(f, 2);
    bool direct = evenness_probe(f, 2, Coefficients::integers()).pass;
    REQUIRE(r.whole_fan_pass == direct);
  }
}

TEST_CASE("torsion probe") {
  SECTION("P2 is clean up to degree 4") {
    TorsionReport r = torsion_probe(fixtures::p2(), 4);
    REQUIRE_FALSE(r.any_torsion);
    REQUIRE_FALSE(r.any_mismatch);
    for (const TorsionDegree& d : r.degrees) REQUIRE(d.h0_saturated);
  }
  SECTION("P1 is clean") {
    REQUIRE_FALSE(torsion_probe(fixtures::p1(), 3).any_torsion);
  }
  SECTION("the singular complete fixture is rationally exact; torsion recorded") {
    TorsionReport r = torsion_probe(fixtures::nonsmooth_complete(), 3);
    for (const TorsionDegree& d : r.degrees) {
      REQUIRE(d.h0_saturated);
      for (const TorsionPosition& p : d.positions)
        if (p.position >= 1) REQUIRE(p.rank_rational == 0);
    }
    // content (torsion or F_p jumps) is whatever it is; the report just has to
    // be internally consistent: a mismatch implies torsion somewhere in the
    // adjacent positions of that degree
    for (const TorsionDegree& d : r.degrees)
      for (const TorsionPosition& p : d.positions)
        if (p.mismatch) REQUIRE(r.any_torsion);
  }
}

TEST_CASE("the cube fan is hereditary but not exact") {
  // the fan over the facets of the 3-cube has connected stars and spherical
  // links, yet the complex fails exactness already in degree 1; hereditary is
  // a necessary condition only
  Fan f = fixtures::cubefan();
  REQUIRE(f.is_complete());
  REQUIRE(f.is_hereditary());
  EvennessReport z = evenness_probe(f, 2, Coefficients::integers());
  REQUIRE_FALSE(z.pass);
  REQUIRE_FALSE(evenness_probe(f, 2, Coefficients::rationals()).pass);
  // degree 0 is still exact: constants only see the facet components
  REQUIRE(z.degrees[0].exact);
  // the failure shows up at position 1 in degree 1
  REQUIRE_FALSE(z.degrees[1].positions[1].zero);
  SweepReport sweep = orbit_closure_sweep(f, 1);
  REQUIRE_FALSE(sweep.whole_fan_pass);
  // proper stars are complete fans of rank <= 2, which always pass
  for (const SweepEntry& e : sweep.entries)
    if (e.cone_id != f.zero_cone_id()) REQUIRE(e.pass);
  REQUIRE(sweep.counterexamples.empty());
}

TEST_CASE("cohomology is independent of the orientation choices") {
  std::mt19937 rng(777);
  for (const Fan& f : {fixtures::p2(), fixtures::p1xp1(), fixtures::nonsmooth_complete()}) {
    std::vector<int> flips(f.size());
    for (int& s : flips) s = rng() % 2 == 0 ? 1 : -1;
    for (int q = 0; q <= 3; ++q) {
      ABComplex plain = ABComplex::build(f, q);
      ABComplex flipped = ABComplex::build(f, q, &flips);
      for (std::size_t i = 0; i < plain.positions(); ++i) {
        CohomologyGroup a = plain.cohomology_z(i), b = flipped.cohomology_z(i);
        REQUIRE(a.free_rank == b.free_rank);
        REQUIRE(a.torsion == b.torsion);
      }
    }
  }
}
