#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "msl/matroid.hpp"
#include "msl/poset.hpp"

using namespace msl;

namespace {

// All two-element subsets of the ground set lie on exactly one common line.
bool pairs_on_unique_lines(const std::vector<std::vector<int>>& lines, int n) {
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      int count = 0;
      for (const auto& l : lines)
        if (std::binary_search(l.begin(), l.end(), a) && std::binary_search(l.begin(), l.end(), b))
          ++count;
      if (count != 1) return false;
    }
  return true;
}

std::string violated_axiom(const std::vector<int>& ground,
                           const std::vector<std::vector<int>>& flats) {
  try {
    GeometricLattice M(ground, flats);
  } catch (const input_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("boolean lattices enumerate all subsets") {
  GeometricLattice b3 = boolean_matroid(3);
  CHECK(b3.n_flats() == 8);
  CHECK(b3.r() == 3);
  CHECK(b3.atoms().size() == 3);
  CHECK(b3.rank_of(b3.top()) == 3);
  CHECK(b3.flat(b3.bottom()).empty());
  SECTION("size bounds") {
    CHECK_THROWS_AS(boolean_matroid(-1), input_error);
    CHECK_THROWS_AS(boolean_matroid(11), input_error);
  }
}

TEST_CASE("uniform lattices truncate the boolean lattice") {
  GeometricLattice u23 = uniform_matroid(2, 3);
  CHECK(u23.n_flats() == 5);
  CHECK(u23.r() == 2);
  GeometricLattice u34 = uniform_matroid(3, 4);
  CHECK(u34.n_flats() == 1 + 4 + 6 + 1);
  SECTION("rank-1 uniform matroids on several elements have non-singleton atoms") {
    CHECK_THROWS_WITH(uniform_matroid(1, 3),
                      Catch::Matchers::ContainsSubstring("atoms-are-singletons"));
  }
  SECTION("parameter bounds") {
    CHECK_THROWS_AS(uniform_matroid(0, 3), input_error);
    CHECK_THROWS_AS(uniform_matroid(4, 3), input_error);
  }
}

TEST_CASE("the seven-point plane") {
  auto lines = fano_lines();
  REQUIRE(lines.size() == 7);
  for (const auto& l : lines) REQUIRE(l.size() == 3);
  CHECK(pairs_on_unique_lines(lines, 7));

  GeometricLattice fano = fano_matroid();
  CHECK(fano.n_flats() == 16);
  CHECK(fano.r() == 3);
  CHECK(fano.atoms().size() == 7);
  int rank2 = 0;
  for (int i = 0; i < fano.n_flats(); ++i)
    if (fano.rank_of(i) == 2) ++rank2;
  CHECK(rank2 == 7);
}

TEST_CASE("axiom violations are reported with the failing axiom and witness") {
  SECTION("pentagon-shaped family is not graded") {
    CHECK(violated_axiom({1, 2, 3}, {{}, {1}, {1, 2}, {3}, {1, 2, 3}}).find("graded") !=
          std::string::npos);
  }
  SECTION("missing bottom or top") {
    CHECK(violated_axiom({1}, {{1}}).find("bounded") != std::string::npos);
  }
  SECTION("two minimal upper bounds break the lattice property") {
    CHECK(violated_axiom({1, 2, 3, 4},
                         {{}, {1}, {2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}})
              .find("lattice") != std::string::npos);
  }
  SECTION("meets must be intersections") {
    // {1,2} and {1,3} are flats but their intersection {1} is missing.
    CHECK(violated_axiom({1, 2, 3}, {{}, {2}, {3}, {1, 2}, {1, 3}, {1, 2, 3}})
              .find("meet-is-intersection") != std::string::npos);
  }
  SECTION("atoms must be singletons") {
    CHECK(violated_axiom({1, 2, 3}, {{}, {1, 2, 3}}).find("atoms-are-singletons") !=
          std::string::npos);
  }
  SECTION("ground elements that are not atoms are rejected") {
    // A chain of flats where element 2 never appears as a singleton; the
    // atom axioms catch it before atomicity can even be tested (once every
    // element is an atom and meets are intersections, every flat is forced
    // to be the join of its atoms).
    CHECK(violated_axiom({1, 2, 3}, {{}, {1}, {1, 2}, {1, 2, 3}}).find("atom") !=
          std::string::npos);
  }
  SECTION("opposite vertices of a square violate semimodularity") {
    CHECK(violated_axiom({1, 2, 3, 4}, {{},
                                        {1},
                                        {2},
                                        {3},
                                        {4},
                                        {1, 2},
                                        {2, 3},
                                        {3, 4},
                                        {1, 4},
                                        {1, 2, 3, 4}})
              .find("semimodular") != std::string::npos);
  }
  SECTION("flats outside the ground set") {
    CHECK(violated_axiom({1}, {{}, {1}, {2}}).find("ground") != std::string::npos);
  }
}

TEST_CASE("join, meet, closure, and rank behave lattice-theoretically") {
  GeometricLattice fano = fano_matroid();
  const int a1 = fano.atom_of(1), a2 = fano.atom_of(2);
  const int line = fano.join(a1, a2);
  CHECK(fano.rank_of(line) == 2);
  CHECK(fano.flat(line) == std::vector<int>{1, 2, 3});  // closure adds the third point
  CHECK(fano.meet(line, fano.atom_of(3)) == fano.atom_of(3));
  CHECK(fano.leq(a1, line));
  CHECK_FALSE(fano.leq(fano.atom_of(4), line));
  CHECK(fano.closure({1, 2}) == line);
  CHECK(fano.closure({}) == fano.bottom());
  CHECK(fano.closure({1, 2, 4}) == fano.top());
}

TEST_CASE("atom support recovers the flat as a set of ground elements") {
  for (const GeometricLattice& M :
       {boolean_matroid(3), uniform_matroid(2, 4), fano_matroid()}) {
    for (int i = 0; i < M.n_flats(); ++i) {
      CHECK(M.atom_support(i) == M.flat(i));
      // Joining the atoms below a flat gives the flat back.
      int acc = M.bottom();
      for (int e : M.flat(i)) acc = M.join(acc, M.atom_of(e));
      CHECK(acc == i);
    }
  }
}

TEST_CASE("Moebius numbers alternate in sign and never vanish") {
  for (const GeometricLattice& M : {boolean_matroid(2), boolean_matroid(3),
                                    uniform_matroid(2, 3), uniform_matroid(2, 4),
                                    uniform_matroid(3, 4), fano_matroid()}) {
    for (int i = 0; i < M.n_flats(); ++i) {
      long long mu = M.mobius_from_bottom(i);
      REQUIRE(mu != 0);
      CHECK((M.rank_of(i) % 2 == 0 ? mu > 0 : mu < 0));
      if (M.rank_of(i) == 1) CHECK(mu == -1);
    }
  }
  SECTION("pinned values") {
    GeometricLattice fano = fano_matroid();
    CHECK(fano.mobius_from_bottom(fano.top()) == -8);
    CHECK(fano.mobius_from_bottom(fano.join(fano.atom_of(1), fano.atom_of(2))) == 2);
    GeometricLattice u23 = uniform_matroid(2, 3);
    CHECK(u23.mobius_from_bottom(u23.top()) == 2);
    GeometricLattice b3 = boolean_matroid(3);
    CHECK(b3.mobius_from_bottom(b3.top()) == -1);
  }
}

TEST_CASE("matroids from matrices over a prime field") {
  SECTION("identity matrix gives the boolean lattice") {
    GeometricLattice m = matroid_from_gfp_columns(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto iso = poset_isomorphism(m.poset(), boolean_matroid(3).poset());
    CHECK(iso.has_value());
  }
  SECTION("all seven nonzero binary vectors of length three") {
    std::vector<std::vector<int>> cols;
    for (int v = 1; v <= 7; ++v) cols.push_back({(v >> 2) & 1, (v >> 1) & 1, v & 1});
    GeometricLattice m = matroid_from_gfp_columns(2, cols);
    CHECK(m.n_flats() == 16);
    // Same flats as the builtin seven-point plane, element for element.
    GeometricLattice fano = fano_matroid();
    for (int i = 0; i < m.n_flats(); ++i) CHECK(m.flat(i) == fano.flat(i));
  }
  SECTION("four distinct points in the projective line over GF(3)") {
    GeometricLattice m = matroid_from_gfp_columns(3, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
    CHECK(m.r() == 2);
    CHECK(m.n_flats() == 2 + 4);  // bottom, four points, top
  }
  SECTION("rejected inputs") {
    CHECK_THROWS_AS(matroid_from_gfp_columns(4, {{1}}), input_error);        // not prime
    CHECK_THROWS_AS(matroid_from_gfp_columns(2, {{0, 0}}), input_error);     // zero column
    CHECK_THROWS_AS(matroid_from_gfp_columns(2, {{1, 0}, {1, 0}}), input_error);  // parallel
    CHECK_THROWS_AS(matroid_from_gfp_columns(2, {{1, 0}, {1}}), input_error);  // ragged
  }
  SECTION("entries are reduced modulo p") {
    GeometricLattice a = matroid_from_gfp_columns(2, {{1, 2}, {0, 1}});
    GeometricLattice b = matroid_from_gfp_columns(2, {{1, 0}, {0, 1}});
    REQUIRE(a.n_flats() == b.n_flats());
    for (int i = 0; i < a.n_flats(); ++i) CHECK(a.flat(i) == b.flat(i));
  }
}

TEST_CASE("default labeling uses the lowest labels at each rank") {
  GeometricLattice fano = fano_matroid();
  EllMap ell = ell_default(fano);
  CHECK(ell.at(fano.bottom()) == std::vector<int>{1, 2, 3});
  CHECK(ell.at(fano.top()).empty());
  const int line = fano.join(fano.atom_of(1), fano.atom_of(2));
  CHECK(ell.at(line) == std::vector<int>{1});
  CHECK(ell.at(fano.atom_of(5)) == std::vector<int>{1, 2});
  validate_ell(fano, ell);
}

TEST_CASE("flag labeling follows the rank jumps of joins against the flag") {
  GeometricLattice b2 = boolean_matroid(2);
  EllMap ell = ell_flag(b2, {{}, {1}, {1, 2}});
  CHECK(ell.at(b2.index_of({2})) == std::vector<int>{2});
  CHECK(ell.at(b2.index_of({1})) == std::vector<int>{1});
  CHECK(ell.at(b2.bottom()) == std::vector<int>{1, 2});
  CHECK(ell.at(b2.top()).empty());
  validate_ell(b2, ell);

  SECTION("every flag labeling is rank-consistent and order-reversing") {
    GeometricLattice b3 = boolean_matroid(3);
    EllMap e3 = ell_flag(b3, {{}, {2}, {2, 3}, {1, 2, 3}});
    validate_ell(b3, e3);
    CHECK(e3.at(b3.index_of({1})) != ell_default(b3).at(b3.index_of({1})));
  }
  SECTION("flags must be maximal chains of flats") {
    GeometricLattice fano = fano_matroid();
    // {4,7} is not closed: its closure picks up a third point.
    CHECK_THROWS_AS(ell_flag(fano, {{}, {7}, {4, 7}, {1, 2, 3, 4, 5, 6, 7}}), input_error);
    // Wrong length.
    CHECK_THROWS_AS(ell_flag(fano, {{}, {1, 2, 3, 4, 5, 6, 7}}), input_error);
    // Not a chain.
    GeometricLattice b3 = boolean_matroid(3);
    CHECK_THROWS_AS(ell_flag(b3, {{}, {1}, {2, 3}, {1, 2, 3}}), input_error);
  }
}

TEST_CASE("label map validation rejects malformed assignments") {
  GeometricLattice b2 = boolean_matroid(2);
  SECTION("wrong size for the rank") {
    EllMap bad;
    bad.labels.assign(b2.n_flats(), {});
    bad.labels[b2.bottom()] = {1, 2};
    bad.labels[b2.index_of({1})] = {1, 2};  // rank 1 needs exactly one label
    bad.labels[b2.index_of({2})] = {1};
    CHECK_THROWS_AS(validate_ell(b2, bad), input_error);
  }
  SECTION("not order-reversing") {
    EllMap bad;
    bad.labels.assign(b2.n_flats(), {});
    bad.labels[b2.bottom()] = {1, 2};
    bad.labels[b2.index_of({1})] = {1};
    bad.labels[b2.index_of({2})] = {2};
    // So far fine; now make the top keep a label its lower flat dropped.
    bad.labels[b2.top()] = {};
    validate_ell(b2, bad);  // this assignment is actually valid
    bad.labels[b2.index_of({1})] = {3};  // out of range
    CHECK_THROWS_AS(validate_ell(b2, bad), input_error);
  }
  SECTION("cover steps drop exactly one label") {
    for (const GeometricLattice& M : {boolean_matroid(3), fano_matroid()}) {
      EllMap ell = ell_default(M);
      for (const auto& [lo, hi] : M.poset().cover_pairs()) {
        std::vector<int> dropped;
        std::set_difference(ell.at(lo).begin(), ell.at(lo).end(), ell.at(hi).begin(),
                            ell.at(hi).end(), std::back_inserter(dropped));
        CHECK(dropped.size() == 1);
      }
    }
  }
}
