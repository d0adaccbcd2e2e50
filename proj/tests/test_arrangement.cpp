#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "msl/arrangement.hpp"
#include "msl/diagram.hpp"
#include "msl/homology.hpp"
#include "msl/matroid.hpp"
#include "msl/simplicial.hpp"

using namespace msl;

namespace {

Arrangement make(const GeometricLattice& M, const std::string& space) {
  return build_arrangement(M, ell_default(M), standard_space(space));
}

BettiVector bv(Field f, std::initializer_list<std::pair<int, long long>> entries) {
  BettiVector out(f);
  for (const auto& [d, v] : entries) out.set(d, v);
  return out;
}

}  // namespace

TEST_CASE("rank-one degenerates to a doubled point with an empty union") {
  GeometricLattice M = boolean_matroid(1);
  Arrangement arr = make(M, "points:2");
  CHECK(arr.Y().n_cells() == 2);
  CHECK(arr.union_cells.empty());

  ArrangementReport rep = verify_conditions(arr);
  CHECK(rep.pass);
  CHECK(rep.lines.size() == 4);

  // The union is genuinely empty while the inclusion-exclusion prediction
  // degenerates to the empty-join term; the two disagree only in this
  // rank-one corner and the mismatch is asserted here on purpose.
  CHECK(union_betti(arr, Field::Q).is_zero());
  CHECK(predict_union_betti(M, arr.X, Field::Q) == bv(Field::Q, {{-1, 1}}));
}

TEST_CASE("doubled-point models: frozen homology of unions") {
  struct Row {
    const char* name;
    GeometricLattice M;
    std::map<int, long long> expected;
  };
  const std::vector<Row> rows = {
      {"boolean rank 2", boolean_matroid(2), {{0, 3}}},
      {"boolean rank 3", boolean_matroid(3), {{1, 7}}},
      {"three points on a line", uniform_matroid(2, 3), {{0, 5}}},
      {"four points on a line", uniform_matroid(2, 4), {{0, 7}}},
      {"four points in general position", uniform_matroid(3, 4), {{1, 13}}},
  };
  for (const auto& row : rows) {
    DYNAMIC_SECTION(row.name) {
      Arrangement arr = make(row.M, "points:2");
      for (Field f : {Field::Q, Field::GF2}) {
        BettiVector expected(f);
        for (const auto& [d, v] : row.expected) expected.set(d, v);
        BettiVector computed = union_betti(arr, f);
        CHECK(computed == expected);
        CHECK(computed == predict_union_betti(row.M, arr.X, f));
      }
    }
  }
}

TEST_CASE("three collinear doubled points, checked in detail") {
  GeometricLattice M = uniform_matroid(2, 3);
  Arrangement arr = make(M, "points:2");
  CHECK(arr.Y().n_cells() == 20);
  for (Field f : {Field::Q, Field::GF2}) CHECK(betti(arr.Y().cw(), f) == bv(f, {{1, 1}}));

  ArrangementReport rep = verify_conditions(arr);
  CHECK(rep.pass);
  std::set<std::string> conditions;
  for (const auto& line : rep.lines) {
    conditions.insert(line.condition);
    CHECK(line.pass);
  }
  CHECK(conditions == std::set<std::string>{
                          "space-is-model-power", "atom-subcomplex",
                          "intersections-determined-by-join", "intersection-is-model-power",
                          "refinement-drops-one-power"});

  RecoveredFlats rec = recover_flats(arr);
  CHECK(rec.pass);
  CHECK(rec.flats.size() == 5);
  CHECK(rec.isomorphism.has_value());
}

TEST_CASE("the seven-point plane over a doubled point") {
  GeometricLattice M = fano_matroid();
  Arrangement arr = make(M, "points:2");
  CHECK(arr.Y().n_cells() == 250);
  CHECK(arr.Y().cw().dim() == 2);

  ArrangementReport rep = verify_conditions(arr);
  CHECK(rep.pass);
  CHECK(rep.lines.size() == 94);

  for (Field f : {Field::Q, Field::GF2}) {
    BettiVector computed = union_betti(arr, f);
    CHECK(computed == bv(f, {{1, 29}}));
    CHECK(computed == predict_union_betti(M, arr.X, f));
  }

  RecoveredFlats rec = recover_flats(arr);
  CHECK(rec.pass);
  CHECK(rec.flats.size() == 16);
}

TEST_CASE("the seven-point plane over a tripled point") {
  GeometricLattice M = fano_matroid();
  Arrangement arr = make(M, "points:3");
  CHECK(arr.Y().n_cells() == 441);
  for (Field f : {Field::Q, Field::GF2})
    CHECK(union_betti(arr, f) == predict_union_betti(M, arr.X, f));
  CHECK(union_betti(arr, Field::Q) == bv(Field::Q, {{1, 64}}));
}

TEST_CASE("a square model raises every degree by one") {
  GeometricLattice M = boolean_matroid(2);
  Arrangement arr = make(M, "cycle:4");
  ArrangementReport rep = verify_conditions(arr);
  CHECK(rep.pass);
  for (Field f : {Field::Q, Field::GF2}) {
    BettiVector computed = union_betti(arr, f);
    CHECK(computed == bv(f, {{0, 1}, {1, 2}}));
    CHECK(computed == predict_union_betti(M, arr.X, f));
  }
}

TEST_CASE("coordinate labels from a flag change the cells but not the topology") {
  GeometricLattice M = boolean_matroid(3);
  EllMap flag = ell_flag(M, {{}, {2}, {2, 3}, {1, 2, 3}});
  EllMap deflt = ell_default(M);
  REQUIRE(flag.labels != deflt.labels);

  SimplicialComplex X = standard_space("points:2");
  Arrangement a = build_arrangement(M, deflt, X);
  Arrangement b = build_arrangement(M, flag, X);
  CHECK(a.Y().n_cells() == b.Y().n_cells());
  for (Field f : {Field::Q, Field::GF2}) {
    CHECK(union_betti(a, f) == union_betti(b, f));
    CHECK(betti(a.Y().cw(), f) == betti(b.Y().cw(), f));
  }
  CHECK(verify_conditions(b).pass);
}

TEST_CASE("vertex permutations that move every cell of every power") {
  SECTION("swapping a doubled point") {
    for (const GeometricLattice& M :
         {uniform_matroid(2, 3), fano_matroid()}) {
      Arrangement arr = make(M, "points:2");
      FreeActionReport rep = check_free_action(arr, {1, 0});
      CHECK(rep.pass);
      CHECK(rep.order == 2);
      CHECK(rep.cells_checked > 0);
    }
  }
  SECTION("cycling a tripled point") {
    Arrangement arr = make(uniform_matroid(2, 3), "points:3");
    FreeActionReport rep = check_free_action(arr, {1, 2, 0});
    CHECK(rep.pass);
    CHECK(rep.order == 3);
  }
  SECTION("rotating a square halfway around") {
    Arrangement arr = make(boolean_matroid(2), "cycle:4");
    FreeActionReport rep = check_free_action(arr, {2, 3, 0, 1});
    CHECK(rep.pass);
    CHECK(rep.order == 2);
    CHECK(rep.cells_checked == 112);
  }
  SECTION("the identity fixes everything and is rejected") {
    Arrangement arr = make(boolean_matroid(2), "points:2");
    CHECK_THROWS_AS(check_free_action(arr, {0, 1}), input_error);
  }
  SECTION("a reflection fixing an edge setwise is rejected") {
    Arrangement arr = make(boolean_matroid(2), "cycle:4");
    try {
      check_free_action(arr, {1, 0, 3, 2});
      FAIL("expected a rejection");
    } catch (const input_error& e) {
      CHECK(std::string(e.what()).find("fixes") != std::string::npos);
    }
  }
  SECTION("a non-permutation is rejected") {
    Arrangement arr = make(boolean_matroid(2), "points:2");
    CHECK_THROWS_AS(check_free_action(arr, {0, 0}), input_error);
    CHECK_THROWS_AS(check_free_action(arr, {0}), input_error);
  }
}

TEST_CASE("the cover by atom subcomplexes reproduces the union's homology") {
  for (const GeometricLattice& M : {uniform_matroid(2, 3), fano_matroid()}) {
    Arrangement arr = make(M, "points:2");
    std::vector<std::pair<std::string, CellSet>> parts;
    for (size_t i = 0; i < arr.atom_cells.size(); ++i)
      parts.emplace_back("A" + std::to_string(i), arr.atom_cells[i]);
    ProjectionReport rep = projection_check(arr.Y().cw(), parts);
    CHECK(rep.pass);
    CHECK(rep.direct.at("Q").same_values(union_betti(arr, Field::Q)));
  }
}

TEST_CASE("matching hypotheses hold on the strict upper diagrams") {
  for (const GeometricLattice& M : {boolean_matroid(2), uniform_matroid(2, 3)}) {
    Arrangement arr = make(M, "points:2");
    WedgeHypothesesReport rep = arrangement_wedge_hypotheses(arr);
    CHECK(rep.pass);
    CHECK_FALSE(rep.nodes.empty());
  }
}

TEST_CASE("both coefficient fields agree across the suite") {
  for (const GeometricLattice& M :
       {boolean_matroid(2), boolean_matroid(3), uniform_matroid(2, 3), uniform_matroid(2, 4),
        uniform_matroid(3, 4)}) {
    Arrangement arr = make(M, "points:2");
    CHECK(union_betti(arr, Field::Q).same_values(union_betti(arr, Field::GF2)));
    CHECK(betti(arr.Y().cw(), Field::Q).same_values(betti(arr.Y().cw(), Field::GF2)));
  }
}

TEST_CASE("the seven-point plane over a square", "[.slow]") {
  GeometricLattice M = fano_matroid();
  Arrangement arr = make(M, "cycle:4");
  CHECK(arr.Y().n_cells() == 2296);
  CHECK(arr.Y().cw().dim() == 5);
  for (Field f : {Field::Q, Field::GF2}) CHECK(betti(arr.Y().cw(), f) == bv(f, {{5, 1}}));
}
