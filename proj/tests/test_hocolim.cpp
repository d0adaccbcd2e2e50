#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "msl/arrangement.hpp"
#include "msl/diagram.hpp"
#include "msl/homology.hpp"
#include "msl/matroid.hpp"
#include "msl/simplicial.hpp"

using namespace msl;

namespace {

// Cells of x.to_cw() whose vertex labels all satisfy `keep`; cw cell order
// matches simplices() order, so ids line up by position.
template <class Pred>
CellSet cells_where(const SimplicialComplex& x, Pred keep) {
  CellSet out;
  const auto& faces = x.simplices();
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    bool ok = true;
    for (int v : faces[i]) ok = ok && keep(x.vertex(v));
    if (ok) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("gluing a vertex into an edge gives a contractible double complex") {
  SimplicialComplex edge({"u", "v"}, {{"u", "v"}});
  SimplicialComplex tip({"u"}, {{"u"}});
  SpaceDiagram d{FinitePoset({"lo", "hi"}, std::vector<std::pair<int, int>>{{0, 1}}),
                 {edge, tip}};
  Hocolim h = hocolim(d);

  // Three cells carried by "lo" alone, one by "hi" alone, one by the chain
  // lo < hi (the prism edge joining the two copies of u).
  CHECK(h.prism.n_cells() == 5);
  CHECK(h.prism.cw().dim() == 1);
  for (Field f : {Field::Q, Field::GF2}) CHECK(betti(h.prism.cw(), f).is_zero());

  // The union complex is just the bigger space.
  CHECK(h.union_complex.n_simplices() == edge.n_simplices());
  CHECK(h.union_complex.subcomplex_of(edge));
  CHECK(edge.subcomplex_of(h.union_complex));
}

TEST_CASE("cell dimension is chain length minus one plus carried-cell dimension") {
  SimplicialComplex triangle({"a", "b", "c"}, {{"a", "b", "c"}});
  SimplicialComplex side({"a", "b"}, {{"a", "b"}});
  SimplicialComplex corner({"a"}, {{"a"}});
  SpaceDiagram d{
      FinitePoset({"t", "e", "p"}, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}),
      {triangle, side, corner}};
  Hocolim h = hocolim(d);
  const CwComplex& amb = h.prism.diagram().ambient;
  for (int i = 0; i < h.prism.n_cells(); ++i) {
    const int chain_len = static_cast<int>(h.prism.cell_chain(i).size());
    const int host_dim = amb.dims[h.prism.cell_host(i)];
    CHECK(h.prism.cw().dims[i] == chain_len - 1 + host_dim);
  }
  // A full chain through all three nodes carrying the vertex "a" reaches
  // dimension 2.
  CHECK(h.prism.cw().dim() == 2);
  // Still contractible: everything deformation-retracts onto the triangle.
  for (Field f : {Field::Q, Field::GF2}) CHECK(betti(h.prism.cw(), f).is_zero());
}

TEST_CASE("a one-node diagram reproduces its space") {
  SimplicialComplex x = standard_space("cycle:4");
  SpaceDiagram d{FinitePoset({"only"}, std::vector<std::pair<int, int>>{}), {x}};
  Hocolim h = hocolim(d);
  CHECK(h.prism.n_cells() == x.n_simplices());
  for (int i = 0; i < h.prism.n_cells(); ++i)
    CHECK(h.prism.cell_chain(i) == std::vector<int>{0});
  for (Field f : {Field::Q, Field::GF2}) {
    CHECK(betti(h.prism.cw(), f) == betti(x.to_cw(), f));
  }
}

TEST_CASE("diagram validation rejects non-nested spaces") {
  SimplicialComplex edge({"u", "v"}, {{"u", "v"}});
  SimplicialComplex other({"w"}, {{"w"}});
  SpaceDiagram d{FinitePoset({"lo", "hi"}, std::vector<std::pair<int, int>>{{0, 1}}),
                 {edge, other}};
  CHECK_THROWS_AS(hocolim(d), input_error);
  SpaceDiagram wrong_count{FinitePoset({"lo"}, std::vector<std::pair<int, int>>{}),
                           {edge, other}};
  CHECK_THROWS_AS(validate_inclusions(wrong_count), input_error);
}

TEST_CASE("restricting to an upper set matches the cell mask of the full complex") {
  GeometricLattice M = fano_matroid();
  Arrangement arr = build_arrangement(M, ell_default(M), standard_space("points:2"));

  const int atom = M.atom_of(1);
  std::vector<int> keep = M.poset().up_set(atom);
  SpaceDiagram sub = restrict_diagram(arr.diagram, keep);
  Hocolim h = hocolim(sub);

  CellSet mask = arr.Y().up_set_cells(atom);
  CHECK(static_cast<int>(mask.size()) == h.prism.n_cells());
  for (Field f : {Field::Q, Field::GF2}) {
    BettiVector via_mask = betti(arr.Y().cw(), f, mask);
    BettiVector via_sub = betti(h.prism.cw(), f);
    CHECK(via_mask == via_sub);
    // Above an atom of a rank-3 lattice the double-point model stacks to a
    // circle.
    BettiVector circle(f);
    circle.set(1, 1);
    CHECK(via_sub == circle);
  }
}

TEST_CASE("intersection diagrams of two arcs covering a hexagon") {
  SimplicialComplex hex = standard_space("cycle:6");
  CwComplex amb = hex.to_cw();
  auto in_arc_a = [](const std::string& v) {
    return v == "0" || v == "1" || v == "2" || v == "3";
  };
  auto in_arc_b = [](const std::string& v) {
    return v == "3" || v == "4" || v == "5" || v == "0";
  };
  CellSet a = cells_where(hex, in_arc_a);
  CellSet b = cells_where(hex, in_arc_b);
  REQUIRE(a.size() == 7);  // four vertices, three edges
  REQUIRE(b.size() == 7);

  SECTION("diagram nodes are the distinct intersections, ordered by support") {
    CellDiagram d = intersection_diagram(amb, {{"A", a}, {"B", b}});
    REQUIRE(d.poset.size() == 3);
    CHECK(d.poset.id(0) == "A");
    CHECK(d.poset.id(1) == "B");
    CHECK(d.poset.id(2) == "A&B");
    CHECK(d.node_cells[0] == a);
    CHECK(d.node_cells[1] == b);
    CHECK(d.node_cells[2] == cellset_intersect(a, b));
    CHECK(d.node_cells[2].size() == 2);  // the two shared endpoints
    auto covers = d.poset.cover_pairs();
    std::sort(covers.begin(), covers.end());
    CHECK(covers == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  }

  SECTION("the double complex of the cover recovers the homology of the union") {
    ProjectionReport rep = projection_check(amb, {{"A", a}, {"B", b}});
    CHECK(rep.pass);
    for (Field f : {Field::Q, Field::GF2}) {
      BettiVector circle(f);
      circle.set(1, 1);
      CHECK(rep.direct.at(field_name(f)) == circle);
      CHECK(rep.via_diagram.at(field_name(f)) == circle);
    }
  }

  SECTION("parts must be face-closed") {
    CellSet broken;
    for (int c : a)
      if (amb.dims[c] == 1) broken.push_back(c);  // edges without their endpoints
    CHECK_THROWS_AS(intersection_diagram(amb, {{"A", broken}, {"B", b}}), input_error);
    CHECK_THROWS_AS(projection_check(amb, {{"A", broken}, {"B", b}}), input_error);
  }
}
