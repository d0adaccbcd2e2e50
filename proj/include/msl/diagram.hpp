#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msl/cw.hpp"
#include "msl/errors.hpp"
#include "msl/homology.hpp"
#include "msl/poset.hpp"
#include "msl/simplicial.hpp"

namespace msl {

// Diagram of simplicial complexes over a poset where every map is a literal
// inclusion: whenever p >= q, each face of the space at p is a face of the
// space at q (larger poset elements carry smaller spaces, so going down the
// poset is going up in space).  Functoriality is automatic for inclusions.
struct SpaceDiagram {
  FinitePoset poset;
  std::vector<SimplicialComplex> spaces;
};

inline void validate_inclusions(const SpaceDiagram& d) {
  if (static_cast<int>(d.spaces.size()) != d.poset.size())
    throw input_error("diagram: one space per poset element required");
  for (const auto& [lo, hi] : d.poset.cover_pairs())
    if (!d.spaces[hi].subcomplex_of(d.spaces[lo]))
      throw input_error("diagram: space at '" + d.poset.id(hi) +
                        "' is not included in space at '" + d.poset.id(lo) + "'");
}

inline SpaceDiagram restrict_diagram(const SpaceDiagram& d, const std::vector<int>& keep) {
  SpaceDiagram out;
  out.poset = d.poset.subposet(keep);
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (int i : sorted) out.spaces.push_back(d.spaces.at(i));
  return out;
}

// Smallest simplicial complex containing every space of the diagram; vertex
// order is lexicographic in the labels so the result does not depend on the
// diagram's node order.
inline SimplicialComplex diagram_union(const SpaceDiagram& d) {
  std::set<std::string> label_set;
  std::set<std::vector<std::string>> facet_labels;
  bool any_nonvoid = false;
  for (const auto& s : d.spaces) {
    if (s.is_void()) continue;
    any_nonvoid = true;
    for (const auto& f : s.facets()) {
      auto labels = s.labels_of(f);
      std::sort(labels.begin(), labels.end());
      for (const auto& v : labels) label_set.insert(v);
      facet_labels.insert(std::move(labels));
    }
  }
  if (!any_nonvoid) return SimplicialComplex::void_complex();
  std::vector<std::string> verts(label_set.begin(), label_set.end());
  std::map<std::string, int> pos;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) pos[verts[i]] = i;
  std::vector<std::vector<int>> faces;
  for (const auto& fl : facet_labels) {
    std::vector<int> f;
    for (const auto& v : fl) f.push_back(pos.at(v));
    faces.push_back(std::move(f));
  }
  return SimplicialComplex::from_index_faces(std::move(verts), faces);
}

// Cell-level diagram: every node carries a face-closed set of cells of one
// shared ambient complex, and larger nodes carry smaller sets.  This is the
// common input for both levels of the construction: simplicial diagrams are
// lowered to it over their union complex, and intersection diagrams use the
// subcomplex masks directly.
struct CellDiagram {
  FinitePoset poset;
  CwComplex ambient;
  std::vector<CellSet> node_cells;
};

inline void validate_cell_diagram(const CellDiagram& d) {
  if (static_cast<int>(d.node_cells.size()) != d.poset.size())
    throw input_error("cell diagram: one cell set per poset element required");
  for (int i = 0; i < d.poset.size(); ++i) {
    for (int c : d.node_cells[i])
      if (c < 0 || c >= d.ambient.size())
        throw input_error("cell diagram: cell id out of range at '" + d.poset.id(i) + "'");
    if (!std::is_sorted(d.node_cells[i].begin(), d.node_cells[i].end()))
      throw input_error("cell diagram: cell set not sorted at '" + d.poset.id(i) + "'");
    if (!cellset_closed(d.ambient, d.node_cells[i]))
      throw input_error("cell diagram: cell set not face-closed at '" + d.poset.id(i) + "'");
  }
  for (const auto& [lo, hi] : d.poset.cover_pairs())
    if (!cellset_subset(d.node_cells[hi], d.node_cells[lo]))
      throw input_error("cell diagram: cells at '" + d.poset.id(hi) +
                        "' not included in cells at '" + d.poset.id(lo) + "'");
}

// The homotopy colimit of an inclusion diagram, realized as a regular cell
// complex.  A cell is a pair (chain q_0 < ... < q_m in the poset, ambient
// cell e carried by q_m); its dimension is m + dim e.  The boundary consists
// of the chain faces (drop q_i, sign (-1)^i; none when m = 0) and the ambient
// faces of e with global sign (-1)^m.  The boundary of a boundary is checked
// to vanish on every build.
class PrismComplex {
 public:
  static PrismComplex build(CellDiagram d) {
    validate_cell_diagram(d);
    PrismComplex out;
    out.d_ = std::move(d);

    struct Raw {
      int dim;
      std::string key;
      std::vector<int> chain;
      int host;
    };
    std::vector<Raw> raw;
    for (const auto& chain : out.d_.poset.chains()) {
      const int m = static_cast<int>(chain.size()) - 1;
      for (int e : out.d_.node_cells[chain.back()]) {
        Raw r;
        r.dim = m + out.d_.ambient.dims[e];
        r.chain = chain;
        r.host = e;
        r.key = cell_key(out.d_, chain, e);
        raw.push_back(std::move(r));
      }
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      return a.key < b.key;
    });

    for (const auto& r : raw) {
      std::vector<std::pair<int, int>> faces;
      const int m = static_cast<int>(r.chain.size()) - 1;
      if (m >= 1) {
        for (int i = 0; i <= m; ++i) {
          std::vector<int> sub = r.chain;
          sub.erase(sub.begin() + i);
          faces.emplace_back(out.cw_.id_of(cell_key(out.d_, sub, r.host)),
                             (i % 2 == 0) ? 1 : -1);
        }
      }
      const int chain_sign = (m % 2 == 0) ? 1 : -1;
      for (const auto& [f, s] : out.d_.ambient.faces[r.host])
        faces.emplace_back(out.cw_.id_of(cell_key(out.d_, r.chain, f)), chain_sign * s);
      out.cw_.push_cell(r.key, r.dim, std::move(faces));
      out.chain_of_.push_back(r.chain);
      out.host_of_.push_back(r.host);
    }
    out.cw_.validate();
    return out;
  }

  static std::string cell_key(const CellDiagram& d, const std::vector<int>& chain, int host) {
    std::string key;
    for (int q : chain) {
      key += d.poset.id(q);
      key += '>';
    }
    key += '|';
    key += d.ambient.keys[host];
    return key;
  }

  const CwComplex& cw() const { return cw_; }
  const CellDiagram& diagram() const { return d_; }
  int n_cells() const { return cw_.size(); }
  const std::vector<int>& cell_chain(int i) const { return chain_of_.at(i); }
  int cell_host(int i) const { return host_of_.at(i); }

  // Cells whose chain stays inside the marked nodes.
  CellSet cells_over(const std::vector<char>& node_keep) const {
    CellSet out;
    for (int i = 0; i < n_cells(); ++i) {
      bool in = true;
      for (int q : chain_of_[i])
        if (!node_keep[q]) {
          in = false;
          break;
        }
      if (in) out.push_back(i);
    }
    return out;
  }

  CellSet cells_over_nodes(const std::vector<int>& nodes) const {
    std::vector<char> keep(d_.poset.size(), 0);
    for (int q : nodes) keep.at(q) = 1;
    return cells_over(keep);
  }

  // Cells whose entire chain sits at or above the given node; because chains
  // are stored increasing, only the smallest chain element needs checking.
  CellSet up_set_cells(int node) const {
    CellSet out;
    for (int i = 0; i < n_cells(); ++i)
      if (d_.poset.leq(node, chain_of_[i][0])) out.push_back(i);
    return out;
  }

 private:
  PrismComplex() = default;
  CellDiagram d_;
  CwComplex cw_;
  std::vector<std::vector<int>> chain_of_;
  std::vector<int> host_of_;
};

// Lower a simplicial diagram to a cell diagram over its union complex.
inline CellDiagram lower_to_cells(const SpaceDiagram& d, const SimplicialComplex& union_complex) {
  CellDiagram out;
  out.poset = d.poset;
  out.ambient = union_complex.to_cw();
  for (int n = 0; n < d.poset.size(); ++n) {
    CellSet cells;
    for (int i = 0; i < static_cast<int>(union_complex.simplices().size()); ++i)
      if (d.spaces[n].contains(union_complex.labels_of(union_complex.simplices()[i])))
        cells.push_back(i);
    out.node_cells.push_back(std::move(cells));
  }
  return out;
}

// Homotopy colimit of a simplicial inclusion diagram, with the union complex
// kept alongside the prism complex.
struct Hocolim {
  SimplicialComplex union_complex;
  PrismComplex prism;
};

inline Hocolim hocolim(const SpaceDiagram& d) {
  validate_inclusions(d);
  SimplicialComplex u = diagram_union(d);
  PrismComplex p = PrismComplex::build(lower_to_cells(d, u));
  return Hocolim{std::move(u), std::move(p)};
}

// Diagram of all distinct intersections of the named subcomplexes, ordered by
// reverse inclusion (finer intersections are higher), each node carrying its
// cell set.  The node over the intersection of everything is the unique
// maximal element.
inline CellDiagram intersection_diagram(const CwComplex& ambient,
                                        const std::vector<std::pair<std::string, CellSet>>& parts) {
  const int n = static_cast<int>(parts.size());
  if (n < 1) throw input_error("intersection diagram: need at least one subcomplex");
  if (n > 12) throw input_error("intersection diagram: too many subcomplexes (limit 12)");
  for (const auto& [name, cells] : parts)
    if (!cellset_closed(ambient, cells))
      throw input_error("intersection diagram: subcomplex '" + name + "' is not face-closed");

  // Distinct intersections, each identified by the full set of parts that
  // contain it (the support); mask and support determine each other.
  std::map<std::vector<int>, CellSet> by_support;
  for (unsigned t = 1; t < (1u << n); ++t) {
    CellSet mask = full_cell_set(ambient);
    for (int i = 0; i < n; ++i)
      if (t & (1u << i)) mask = cellset_intersect(mask, parts[i].second);
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (cellset_subset(mask, parts[i].second)) support.push_back(i);
    by_support.emplace(std::move(support), std::move(mask));
  }

  std::vector<std::pair<std::vector<int>, CellSet>> nodes(by_support.begin(), by_support.end());
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });

  std::vector<std::string> ids;
  for (const auto& [support, mask] : nodes) {
    std::string id;
    for (size_t k = 0; k < support.size(); ++k) {
      if (k) id += '&';
      id += parts[support[k]].first;
    }
    ids.push_back(std::move(id));
  }

  const int m = static_cast<int>(nodes.size());
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      // j above i in the diagram order: strictly smaller mask.
      if (nodes[j].second == nodes[i].second || !cellset_subset(nodes[j].second, nodes[i].second))
        continue;
      bool is_cover = true;
      for (int k = 0; k < m && is_cover; ++k) {
        if (k == i || k == j) continue;
        if (cellset_subset(nodes[k].second, nodes[i].second) &&
            cellset_subset(nodes[j].second, nodes[k].second) &&
            nodes[k].second != nodes[i].second && nodes[k].second != nodes[j].second)
          is_cover = false;
      }
      if (is_cover) covers.emplace_back(i, j);
    }

  CellDiagram out;
  out.poset = FinitePoset(std::move(ids), std::move(covers));
  out.ambient = ambient;
  for (auto& [support, mask] : nodes) out.node_cells.push_back(std::move(mask));
  return out;
}

// Compares the homology of a union of subcomplexes against the homology of
// the homotopy colimit of their intersection diagram.  The two must agree;
// this is the cross-check that the diagram machinery reproduces the space it
// models.  (Betti numbers over both fields are the verifiable surrogate for
// the underlying equivalence.)
struct ProjectionReport {
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> lines;  // (label, detail)
  std::map<std::string, BettiVector> direct, via_diagram;  // by field name
};

inline ProjectionReport projection_check(const CwComplex& ambient,
                                         const std::vector<std::pair<std::string, CellSet>>& parts,
                                         const std::vector<Field>& fields = {Field::Q, Field::GF2}) {
  ProjectionReport rep;
  CellSet union_mask;
  for (const auto& [name, cells] : parts) {
    (void)name;
    union_mask = cellset_union(union_mask, cells);
  }
  CellDiagram d = intersection_diagram(ambient, parts);
  PrismComplex prism = PrismComplex::build(std::move(d));
  for (Field f : fields) {
    BettiVector direct = betti(ambient, f, union_mask);
    BettiVector via = betti(prism.cw(), f);
    const std::string fname = field_name(f);
    rep.direct.emplace(fname, direct);
    rep.via_diagram.emplace(fname, via);
    const bool ok = direct == via;
    rep.pass = rep.pass && ok;
    rep.lines.emplace_back("betti-" + fname, (ok ? "match " : "MISMATCH ") + direct.str() +
                                                 (ok ? "" : " vs " + via.str()));
  }
  return rep;
}

}  // namespace msl
