#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msl/diagram.hpp"
#include "msl/errors.hpp"
#include "msl/homology.hpp"
#include "msl/matroid.hpp"
#include "msl/morse.hpp"
#include "msl/poset.hpp"
#include "msl/simplicial.hpp"

namespace msl {

// The object of study: over each lattice element p sits the join of copies of
// the model space X at the coordinates labels(p); going down the lattice adds
// coordinates, so the spaces nest literally.  Y realizes the whole diagram,
// and each atom contributes the subcomplex of cells sitting at or above it.
struct Arrangement {
  GeometricLattice M;
  SimplicialComplex X;
  EllMap ell;
  SpaceDiagram diagram;
  Hocolim built;
  std::vector<CellSet> atom_cells;  // aligned with M.atoms()
  CellSet union_cells;              // cells whose chain avoids the bottom

  const PrismComplex& Y() const { return built.prism; }
};

inline Arrangement build_arrangement(const GeometricLattice& M, const EllMap& ell,
                                     const SimplicialComplex& X) {
  validate_ell(M, ell);
  if (X.n_vertices() == 0)
    throw input_error("build_arrangement: model space must have at least one vertex");

  SpaceDiagram d{M.poset(), {}};
  for (int p = 0; p < M.n_flats(); ++p)
    d.spaces.push_back(coordinate_join(X, ell.at(p)).complex);
  Hocolim built = hocolim(d);

  std::vector<CellSet> atom_cells;
  for (int a : M.atoms()) atom_cells.push_back(built.prism.up_set_cells(a));

  std::vector<char> keep(M.n_flats(), 1);
  keep[M.bottom()] = 0;
  CellSet union_cells = built.prism.cells_over(keep);

  Arrangement arr{M,
                  X,
                  ell,
                  std::move(d),
                  std::move(built),
                  std::move(atom_cells),
                  std::move(union_cells)};

  CellSet from_atoms;
  for (const auto& mask : arr.atom_cells) from_atoms = cellset_union(from_atoms, mask);
  if (from_atoms != arr.union_cells)
    throw internal_error("build_arrangement: union of atom subcomplexes differs from the "
                         "cells above the bottom");
  return arr;
}

struct ConditionLine {
  std::string condition;
  std::string witness;
  bool pass = true;
  std::string detail;
};

struct ArrangementReport {
  bool pass = true;
  std::vector<ConditionLine> lines;

  void add(const std::string& condition, const std::string& witness, bool ok,
           const std::string& detail) {
    pass = pass && ok;
    lines.push_back({condition, witness, ok, detail});
  }
};

namespace detail {

// Shared state for the condition checks: expected invariants of the model
// powers and memoized homology of the up-set subcomplexes.
struct VerifyContext {
  const Arrangement* arr;
  std::vector<Field> fields;
  std::vector<int> target_dim;                          // by exponent e
  std::map<Field, std::vector<BettiVector>> target_b;   // by field, exponent
  std::map<std::pair<int, int>, BettiVector> mask_b;    // (flat, field index)

  VerifyContext(const Arrangement& a, std::vector<Field> fs) : arr(&a), fields(std::move(fs)) {
    const int r = a.M.r();
    for (int e = 0; e <= r; ++e) {
      target_dim.push_back(e * (a.X.dim() + 1) - 1);
      for (Field f : fields) {
        if (e == 0)
          target_b[f].push_back(betti(SimplicialComplex::trivial(), f));
        else
          target_b[f].push_back(betti(power_join(a.X, e).complex, f));
      }
    }
  }

  const BettiVector& mask_betti(int flat, const CellSet& mask, int field_idx) {
    auto key = std::make_pair(flat, field_idx);
    auto it = mask_b.find(key);
    if (it == mask_b.end())
      it = mask_b.emplace(key, betti(arr->Y().cw(), fields[field_idx], mask)).first;
    return it->second;
  }
};

// One homotopy-type comparison: the masked subcomplex against the e-fold
// model power, by dimension and by Betti numbers over every field.  The
// zero-power target is the empty space, which the mask realizes iff it has no
// cells; its degree -1 homology lives in the convention, not in the matrix,
// so the check there is emptiness itself.
inline void check_against_power(VerifyContext& ctx, ArrangementReport& rep,
                                const std::string& condition, const std::string& witness,
                                int flat, const CellSet& mask, int e) {
  if (e == 0) {
    rep.add(condition, witness, mask.empty(),
            mask.empty() ? "empty space, as required for the zero-fold power"
                         : "expected the empty space but found cells");
    return;
  }
  if (mask.empty()) {
    rep.add(condition, witness, false, "expected a nonempty space, found no cells");
    return;
  }
  const int dim = cellset_dim(ctx.arr->Y().cw(), mask);
  if (dim != ctx.target_dim[e]) {
    rep.add(condition, witness, false,
            "dimension " + std::to_string(dim) + ", expected " + std::to_string(ctx.target_dim[e]));
    return;
  }
  for (size_t fi = 0; fi < ctx.fields.size(); ++fi) {
    const Field f = ctx.fields[fi];
    const BettiVector& got = ctx.mask_betti(flat, mask, static_cast<int>(fi));
    const BettiVector& want = ctx.target_b.at(f).at(e);
    if (!got.same_values(want)) {
      rep.add(condition, witness, false,
              "betti over " + field_name(f) + " " + got.str() + ", expected " + want.str());
      return;
    }
  }
  rep.add(condition, witness, true,
          "dim " + std::to_string(ctx.target_dim[e]) + ", betti " +
              ctx.target_b.at(ctx.fields[0]).at(e).str());
}

}  // namespace detail

// The axioms of the arrangement, instance-checked: the whole space, each atom
// subcomplex, every intersection of atom subcomplexes, and every refinement
// step match the appropriate power of the model space, with "matches" meaning
// equal dimension and equal reduced Betti numbers over the requested fields.
inline ArrangementReport verify_conditions(const Arrangement& arr,
                                           const std::vector<Field>& fields = {Field::Q,
                                                                               Field::GF2}) {
  detail::VerifyContext ctx(arr, fields);
  ArrangementReport rep;
  const GeometricLattice& M = arr.M;
  const int r = M.r();
  const int n = static_cast<int>(M.atoms().size());

  // Whole space.
  detail::check_against_power(ctx, rep, "space-is-model-power", "Y", M.bottom(),
                              full_cell_set(arr.Y().cw()), r);

  // Each atom subcomplex.
  for (int i = 0; i < n; ++i)
    detail::check_against_power(ctx, rep, "atom-subcomplex", "A" + M.flat_id(M.atoms()[i]),
                                M.atoms()[i], arr.atom_cells[i], r - 1);

  // All intersections of atom subcomplexes.  Two facts are checked: the
  // intersection is exactly the up-set subcomplex of the join of the atoms
  // (a cell-for-cell identity), and it matches the predicted model power.
  std::map<int, CellSet> by_join;
  bool identity_ok = true;
  std::string identity_witness;
  for (unsigned t = 1; t < (1u << n); ++t) {
    int join_flat = M.bottom();
    CellSet mask = full_cell_set(arr.Y().cw());
    for (int i = 0; i < n; ++i)
      if (t & (1u << i)) {
        join_flat = M.join(join_flat, M.atoms()[i]);
        mask = cellset_intersect(mask, arr.atom_cells[i]);
      }
    auto it = by_join.find(join_flat);
    if (it == by_join.end()) {
      if (mask != arr.Y().up_set_cells(join_flat)) {
        identity_ok = false;
        identity_witness = M.flat_id(join_flat);
      }
      by_join.emplace(join_flat, std::move(mask));
    } else if (it->second != mask) {
      identity_ok = false;
      identity_witness = M.flat_id(join_flat);
    }
  }
  rep.add("intersections-determined-by-join", identity_ok ? "all atom subsets" : identity_witness,
          identity_ok,
          identity_ok ? "every intersection equals the up-set subcomplex of the join"
                      : "intersection differs from the join's up-set subcomplex");

  for (const auto& [p, mask] : by_join)
    detail::check_against_power(ctx, rep, "intersection-is-model-power", "cells above " + M.flat_id(p),
                                p, mask, r - M.rank_of(p));

  // Refinement: cutting an intersection with an atom subcomplex that does not
  // already contain it drops the power by exactly one.
  for (const auto& [p, mask] : by_join) {
    const int e = r - M.rank_of(p);
    if (e == 0) continue;  // nothing can refine the empty space
    for (int i = 0; i < n; ++i) {
      if (cellset_subset(mask, arr.atom_cells[i])) continue;
      const int q = M.join(p, M.atoms()[i]);
      CellSet cut = cellset_intersect(mask, arr.atom_cells[i]);
      detail::check_against_power(ctx, rep, "refinement-drops-one-power",
                                  "A" + M.flat_id(M.atoms()[i]) + " meets cells above " + M.flat_id(p),
                                  q, cut, e - 1);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Recovering the lattice from the arrangement alone.

struct RecoveredFlats {
  std::vector<std::vector<int>> flats;  // ground-element sets, from intersections only
  FinitePoset lattice;
  std::optional<std::vector<int>> isomorphism;  // recovered index -> M lattice index
  bool pass = false;
};

inline RecoveredFlats recover_flats(const Arrangement& arr) {
  const GeometricLattice& M = arr.M;
  const int n = static_cast<int>(M.atoms().size());
  RecoveredFlats out;

  // For every set of atoms, intersect their subcomplexes and record which
  // atoms contain the result; the distinct containment sets are the flats.
  std::set<std::vector<int>> supports;
  for (unsigned t = 0; t < (1u << n); ++t) {
    CellSet mask = full_cell_set(arr.Y().cw());
    for (int i = 0; i < n; ++i)
      if (t & (1u << i)) mask = cellset_intersect(mask, arr.atom_cells[i]);
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (cellset_subset(mask, arr.atom_cells[i]))
        support.push_back(M.flat(M.atoms()[i])[0]);
    supports.insert(std::move(support));
  }
  out.flats.assign(supports.begin(), supports.end());
  std::sort(out.flats.begin(), out.flats.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.lattice = detail::inclusion_poset(out.flats);
  out.isomorphism = poset_isomorphism(out.lattice, M.poset());
  out.pass = out.isomorphism.has_value();
  return out;
}

// ---------------------------------------------------------------------------
// The union of the arrangement and its predicted homology.

inline BettiVector union_betti(const Arrangement& arr, Field field) {
  return betti(arr.Y().cw(), field, arr.union_cells);
}

// Closed form for the homology of the union: every lattice element above the
// bottom contributes its model power joined with as many spheres (of
// dimension two less than its rank) as the absolute value of its Moebius
// number, and the contributions wedge together.
inline BettiVector predict_union_betti(const GeometricLattice& M, const SimplicialComplex& X,
                                       Field field) {
  const int r = M.r();
  const BettiVector bx = betti(X, field);
  std::vector<BettiVector> parts;
  for (int p = 0; p < M.n_flats(); ++p) {
    if (p == M.bottom()) continue;
    long long mu = M.mobius_from_bottom(p);
    if (mu < 0) mu = -mu;
    std::vector<BettiVector> spheres(static_cast<size_t>(mu),
                                     sphere_betti(M.rank_of(p) - 2, field));
    parts.push_back(join_betti(power_join_betti(bx, r - M.rank_of(p)), wedge_betti(spheres)));
  }
  return wedge_betti(parts);
}

// ---------------------------------------------------------------------------
// Wedge hypotheses over the part of the lattice above the bottom: every
// non-maximal node gets the standard join matching of its space (basepoint =
// first vertex of each factor), and the diagram is checked against the
// collapse hypotheses.

inline WedgeHypothesesReport arrangement_wedge_hypotheses(const Arrangement& arr) {
  std::vector<int> keep;
  for (int p = 0; p < arr.M.n_flats(); ++p)
    if (p != arr.M.bottom()) keep.push_back(p);
  SpaceDiagram upper = restrict_diagram(arr.diagram, keep);

  std::map<int, JoinupData> data;
  for (int i = 0; i < upper.poset.size(); ++i) {
    if (upper.poset.upper_covers(i).empty()) continue;  // maximal node needs no matching
    std::vector<std::pair<int, const SimplicialComplex*>> factors;
    for (int c : arr.ell.at(keep[i])) factors.emplace_back(c, &arr.X);
    data.emplace(i, joinup_matching(factors));
  }
  return check_wedge_hypotheses(upper, data);
}

// ---------------------------------------------------------------------------
// Free action induced by a fixed-point-free automorphism of the model space.

struct FreeActionReport {
  bool pass = true;
  int order = 1;
  int cells_checked = 0;
  std::string detail;
};

// gamma maps vertex i of X to vertex image[i].  It must be a simplicial
// automorphism none of whose nontrivial powers fixes a simplex of X setwise;
// the induced action on the full complex relabels simplices coordinatewise
// and must move every cell of every power.
inline FreeActionReport check_free_action(const Arrangement& arr, const std::vector<int>& image) {
  const SimplicialComplex& X = arr.X;
  const int nv = X.n_vertices();
  if (static_cast<int>(image.size()) != nv)
    throw input_error("free action: need one image per model-space vertex");
  {
    std::vector<char> seen(nv, 0);
    for (int v : image) {
      if (v < 0 || v >= nv || seen[v]) throw input_error("free action: image is not a permutation");
      seen[v] = 1;
    }
  }
  for (const auto& s : X.simplices()) {
    std::vector<int> mapped;
    for (int v : s) mapped.push_back(image[v]);
    std::sort(mapped.begin(), mapped.end());
    if (!X.contains_indices(mapped))
      throw input_error("free action: vertex map is not a simplicial automorphism");
  }

  FreeActionReport rep;
  std::vector<int> power(nv);
  for (int i = 0; i < nv; ++i) power[i] = i;
  std::vector<std::vector<int>> nontrivial_powers;
  for (int t = 1; t <= nv + 1; ++t) {
    std::vector<int> next(nv);
    for (int i = 0; i < nv; ++i) next[i] = image[power[i]];
    power = std::move(next);
    bool identity = true;
    for (int i = 0; i < nv; ++i)
      if (power[i] != i) identity = false;
    if (identity) {
      rep.order = t;
      break;
    }
    nontrivial_powers.push_back(power);
  }
  if (nontrivial_powers.empty())
    throw input_error("free action: the vertex map is the identity, so there is nothing to verify");
  for (const auto& pw : nontrivial_powers)
    for (const auto& s : X.simplices()) {
      std::vector<int> mapped;
      for (int v : s) mapped.push_back(pw[v]);
      std::sort(mapped.begin(), mapped.end());
      if (mapped == s)
        throw input_error("free action: a power of the map fixes the face '" + X.face_key(s) +
                          "' setwise");
    }
  // Relabeling on the union complex underlying Y.
  const SimplicialComplex& u = arr.built.union_complex;
  std::map<std::vector<std::string>, int> ambient_by_labels;
  for (int i = 0; i < static_cast<int>(u.simplices().size()); ++i) {
    auto labels = u.labels_of(u.simplices()[i]);
    std::sort(labels.begin(), labels.end());
    ambient_by_labels[labels] = i;
  }
  auto map_label = [&](const std::string& label, const std::vector<int>& pw) {
    auto colon = label.find(':');
    const std::string coord = label.substr(0, colon);
    const std::string orig = label.substr(colon + 1);
    return coord + ":" + X.vertex(pw[X.vertex_index_of(orig)]);
  };

  const PrismComplex& Y = arr.Y();
  std::vector<std::vector<char>> in_atom(arr.atom_cells.size(),
                                         std::vector<char>(Y.n_cells(), 0));
  for (size_t a = 0; a < arr.atom_cells.size(); ++a)
    for (int c : arr.atom_cells[a]) in_atom[a][c] = 1;

  for (const auto& pw : nontrivial_powers) {
    std::vector<int> host_image;
    for (const auto& s : u.simplices()) {
      auto labels = u.labels_of(s);
      for (auto& l : labels) l = map_label(l, pw);
      std::sort(labels.begin(), labels.end());
      auto found = ambient_by_labels.find(labels);
      host_image.push_back(found == ambient_by_labels.end() ? -1 : found->second);
    }
    for (int c = 0; c < Y.n_cells(); ++c) {
      const int img_host = host_image[Y.cell_host(c)];
      if (img_host < 0) {
        rep.pass = false;
        rep.detail = "image of cell '" + Y.cw().keys[c] + "' leaves the complex";
        return rep;
      }
      auto it = Y.cw().index.find(
          PrismComplex::cell_key(Y.diagram(), Y.cell_chain(c), img_host));
      if (it == Y.cw().index.end()) {
        rep.pass = false;
        rep.detail = "image of cell '" + Y.cw().keys[c] + "' leaves its chain's fiber";
        return rep;
      }
      const int img = it->second;
      if (img == c) {
        rep.pass = false;
        rep.detail = "cell '" + Y.cw().keys[c] + "' is fixed setwise";
        return rep;
      }
      // Every intersection subcomplex is an intersection of atom
      // subcomplexes, so atom invariance covers them all.
      for (size_t a = 0; a < arr.atom_cells.size(); ++a)
        if (in_atom[a][c] && !in_atom[a][img]) {
          rep.pass = false;
          rep.detail = "image of cell '" + Y.cw().keys[c] + "' leaves an atom subcomplex";
          return rep;
        }
      ++rep.cells_checked;
    }
  }
  rep.detail =
      "no fixed cell in any nontrivial power; atom subcomplexes (hence all intersections) are "
      "invariant";
  return rep;
}

}  // namespace msl
