#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msl/cw.hpp"
#include "msl/diagram.hpp"
#include "msl/errors.hpp"
#include "msl/homology.hpp"
#include "msl/poset.hpp"
#include "msl/simplicial.hpp"

namespace msl {

// A partial matching on the incidence digraph of a cell complex: each pair is
// (upper cell, one of its codimension-one faces), and no cell appears twice.
struct Matching {
  std::vector<std::pair<int, int>> pairs;

  std::vector<int> matched_cells() const {
    std::vector<int> out;
    for (const auto& [u, l] : pairs) {
      out.push_back(u);
      out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline void validate_matching(const CwComplex& cw, const CellSet& mask, const Matching& m) {
  std::set<int> seen;
  for (const auto& [u, l] : m.pairs) {
    if (!cellset_contains(mask, u) || !cellset_contains(mask, l))
      throw input_error("matching: pair outside the cell set");
    bool incident = false;
    for (const auto& [f, s] : cw.faces[u]) {
      (void)s;
      if (f == l) incident = true;
    }
    if (!incident)
      throw input_error("matching: '" + cw.keys[l] + "' is not a face of '" + cw.keys[u] + "'");
    if (!seen.insert(u).second || !seen.insert(l).second)
      throw input_error("matching: cell matched twice");
  }
}

struct AcyclicityResult {
  bool ok = false;
  std::vector<int> topo_order;  // certificate when acyclic
  std::vector<int> cycle;       // directed cycle witness otherwise
};

// Orient every incidence arrow downward except matched ones, which flip
// upward; the matching is usable precisely when that digraph is acyclic.
// Returns a topological order as the certificate, or an explicit cycle.
inline AcyclicityResult is_acyclic_matching(const CwComplex& cw, const CellSet& mask,
                                            const Matching& m) {
  validate_matching(cw, mask, m);
  std::map<int, int> local;
  for (size_t i = 0; i < mask.size(); ++i) local[mask[i]] = static_cast<int>(i);
  const int n = static_cast<int>(mask.size());
  std::set<std::pair<int, int>> matched(m.pairs.begin(), m.pairs.end());

  std::vector<std::vector<int>> out_edges(n);
  std::vector<int> indeg(n, 0);
  for (int u : mask)
    for (const auto& [f, s] : cw.faces[u]) {
      (void)s;
      auto it = local.find(f);
      if (it == local.end()) continue;  // face outside the mask: no arrow
      if (matched.count({u, f})) {
        out_edges[it->second].push_back(local[u]);
        indeg[local[u]] += 1;
      } else {
        out_edges[local[u]].push_back(it->second);
        indeg[it->second] += 1;
      }
    }

  AcyclicityResult res;
  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  std::vector<int> order;
  std::vector<int> left = indeg;
  for (size_t head = 0; head < queue.size(); ++head) {
    int i = queue[head];
    order.push_back(mask[i]);
    for (int j : out_edges[i])
      if (--left[j] == 0) queue.push_back(j);
  }
  if (static_cast<int>(order.size()) == n) {
    res.ok = true;
    res.topo_order = std::move(order);
    return res;
  }

  // Remaining nodes either lie on a directed cycle or sit downstream of one;
  // every one of them keeps an unprocessed (hence remaining) predecessor, so
  // walking predecessors until a repeat finds a cycle.
  std::vector<char> alive(n, 0);
  for (int i = 0; i < n; ++i)
    if (left[i] > 0) alive[i] = 1;
  std::vector<std::vector<int>> in_edges(n);
  for (int i = 0; i < n; ++i)
    for (int j : out_edges[i]) in_edges[j].push_back(i);
  int start = -1;
  for (int i = 0; i < n && start < 0; ++i)
    if (alive[i]) start = i;
  std::vector<int> seen_at(n, -1);
  std::vector<int> path;
  int cur = start;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (int j : in_edges[cur])
      if (alive[j]) {
        cur = j;
        break;
      }
  }
  // The path ran against edge direction; reverse it to report a forward cycle.
  for (size_t i = path.size(); i-- > static_cast<size_t>(seen_at[cur]);)
    res.cycle.push_back(mask[path[i]]);
  return res;
}

// Union of per-fiber matchings over an order-preserving assignment of cells
// to a poset.  Each fiber's matching must be acyclic on its own; the union is
// then guaranteed acyclic, and that guarantee is re-verified as a hard
// internal assertion.
inline Matching compose_matchings(const CwComplex& cw, const CellSet& mask,
                                  const FinitePoset& q, const std::vector<int>& fiber_of,
                                  const std::vector<Matching>& fiber_matchings) {
  if (static_cast<int>(fiber_of.size()) != cw.size())
    throw input_error("compose: fiber assignment must cover every ambient cell");
  if (static_cast<int>(fiber_matchings.size()) != q.size())
    throw input_error("compose: one matching per fiber required");
  for (int c : mask)
    if (fiber_of[c] < 0 || fiber_of[c] >= q.size())
      throw input_error("compose: cell '" + cw.keys[c] + "' has no fiber");
  for (int u : mask)
    for (const auto& [f, s] : cw.faces[u]) {
      (void)s;
      if (cellset_contains(mask, f) && !q.leq(fiber_of[f], fiber_of[u]))
        throw input_error("compose: assignment not order-preserving at '" + cw.keys[u] + "'");
    }

  Matching all;
  for (int qi = 0; qi < q.size(); ++qi) {
    CellSet fiber;
    for (int c : mask)
      if (fiber_of[c] == qi) fiber.push_back(c);
    for (const auto& [u, l] : fiber_matchings[qi].pairs)
      if (fiber_of[u] != qi || fiber_of[l] != qi)
        throw input_error("compose: matching of fiber '" + q.id(qi) + "' leaves its fiber");
    if (!is_acyclic_matching(cw, fiber, fiber_matchings[qi]).ok)
      throw input_error("compose: matching of fiber '" + q.id(qi) + "' is not acyclic");
    for (const auto& pr : fiber_matchings[qi].pairs) all.pairs.push_back(pr);
  }
  std::sort(all.pairs.begin(), all.pairs.end());
  if (!is_acyclic_matching(cw, mask, all).ok)
    throw internal_error("compose: union of acyclic fiber matchings is not acyclic");
  return all;
}

// The explicit matching on a join with chosen basepoints.  Classify each cell
// by the 0/1-vector telling, per coordinate, whether its part there is more
// than the basepoint; away from the all-ones class, toggle the basepoint of
// the first zero coordinate.  The lone unmatched cell outside the all-ones
// class is the basepoint vertex of the first factor, and the cells with some
// zero coordinate form a collapsible subcomplex around it.
struct JoinupData {
  LabeledJoin join;
  CwComplex cw;
  Matching matching;
  int basepoint_cell = -1;
  CellSet z_set;
  std::vector<unsigned> ones_class;  // per cell, bitmask of coordinates with a 1
  unsigned all_ones = 0;
};

inline JoinupData joinup_matching(const std::vector<std::pair<int, const SimplicialComplex*>>& factors,
                                  std::vector<int> basepoints = {}) {
  const int n = static_cast<int>(factors.size());
  if (n < 1) throw input_error("join matching: need at least one factor");
  if (n > 31) throw input_error("join matching: too many factors");
  if (basepoints.empty()) basepoints.assign(n, 0);
  if (static_cast<int>(basepoints.size()) != n)
    throw input_error("join matching: one basepoint per factor required");
  for (int k = 0; k < n; ++k) {
    if (factors[k].second->n_vertices() == 0)
      throw input_error("join matching: factor has no vertices");
    if (basepoints[k] < 0 || basepoints[k] >= factors[k].second->n_vertices())
      throw input_error("join matching: basepoint out of range");
  }

  JoinupData out;
  out.join = labeled_join(factors);
  out.cw = out.join.complex.to_cw();
  out.all_ones = (n == 31) ? 0x7fffffffu : ((1u << n) - 1);

  // Join-vertex index of each factor's basepoint.
  std::vector<int> bp_vertex(n);
  for (int k = 0; k < n; ++k) {
    const std::string label =
        std::to_string(factors[k].first) + ":" + factors[k].second->vertex(basepoints[k]);
    bp_vertex[k] = out.join.complex.vertex_index_of(label);
  }
  std::map<int, int> coord_pos;  // coordinate label -> factor position
  for (int k = 0; k < n; ++k) coord_pos[factors[k].first] = k;

  const auto& simplices = out.join.complex.simplices();
  std::map<std::vector<int>, int> cell_of;
  for (int i = 0; i < static_cast<int>(simplices.size()); ++i) cell_of[simplices[i]] = i;

  for (int i = 0; i < static_cast<int>(simplices.size()); ++i) {
    const auto& s = simplices[i];
    unsigned ones = 0;
    for (int v : s) {
      const int k = coord_pos.at(out.join.vertex_coord[v]);
      if (v != bp_vertex[k]) ones |= (1u << k);
    }
    out.ones_class.push_back(ones);
  }

  for (int i = 0; i < static_cast<int>(simplices.size()); ++i) {
    const unsigned ones = out.ones_class[i];
    if (ones == out.all_ones) continue;  // left untouched for the census
    out.z_set.push_back(i);
    int l = 0;
    while (ones & (1u << l)) ++l;
    const auto& s = simplices[i];
    if (std::binary_search(s.begin(), s.end(), bp_vertex[l])) {
      if (s.size() == 1) {
        out.basepoint_cell = i;  // the one unmatched cell below the all-ones class
        continue;
      }
      continue;  // upper end of a pair; recorded from the lower end
    }
    std::vector<int> up = s;
    up.insert(std::lower_bound(up.begin(), up.end(), bp_vertex[l]), bp_vertex[l]);
    out.matching.pairs.emplace_back(cell_of.at(up), i);
  }
  std::sort(out.matching.pairs.begin(), out.matching.pairs.end());
  if (out.basepoint_cell < 0)
    throw internal_error("join matching: basepoint cell not found");
  return out;
}

// Cells of the join using no vertex of the given coordinate (the subjoin in
// which that factor is emptied out).
inline CellSet subjoin_cells(const JoinupData& jd, int coord) {
  CellSet out;
  const auto& simplices = jd.join.complex.simplices();
  for (int i = 0; i < static_cast<int>(simplices.size()); ++i) {
    bool uses = false;
    for (int v : simplices[i])
      if (jd.join.vertex_coord[v] == coord) uses = true;
    if (!uses) out.push_back(i);
  }
  return out;
}

struct CollapseResult {
  bool ok = false;
  std::string reason;
  std::vector<int> cycle;
  int witness_cell = -1;
};

// Certifies that the matching collapses the cell set down to the single
// vertex v: the set is face-closed, the matching is acyclic on it, and every
// cell except v is matched.
inline CollapseResult verify_collapse(const CwComplex& cw, const CellSet& mask,
                                      const Matching& m, int v) {
  CollapseResult res;
  if (!cellset_contains(mask, v)) {
    res.reason = "vertex not in the cell set";
    res.witness_cell = v;
    return res;
  }
  if (cw.dims[v] != 0) {
    res.reason = "designated cell is not a vertex";
    res.witness_cell = v;
    return res;
  }
  if (!cellset_closed(cw, mask)) {
    res.reason = "cell set is not face-closed";
    return res;
  }
  Matching inside;
  for (const auto& [u, l] : m.pairs) {
    if (cellset_contains(mask, u) != cellset_contains(mask, l)) {
      res.reason = "matched pair crosses the cell set boundary";
      res.witness_cell = u;
      return res;
    }
    if (cellset_contains(mask, u)) inside.pairs.emplace_back(u, l);
  }
  auto covered = inside.matched_cells();
  for (int c : mask) {
    const bool is_covered = std::binary_search(covered.begin(), covered.end(), c);
    if (c == v && is_covered) {
      res.reason = "designated vertex is matched";
      res.witness_cell = c;
      return res;
    }
    if (c != v && !is_covered) {
      res.reason = "unmatched cell '" + cw.keys[c] + "'";
      res.witness_cell = c;
      return res;
    }
  }
  auto ac = is_acyclic_matching(cw, mask, inside);
  if (!ac.ok) {
    res.reason = "matching has a directed cycle";
    res.cycle = ac.cycle;
    return res;
  }
  res.ok = true;
  return res;
}

struct CensusResult {
  std::map<int, int> critical;  // dimension -> count of unmatched cells
  long long euler_cells = 0;
  long long euler_critical = 0;
  bool euler_ok = false;
};

inline CensusResult critical_census(const CwComplex& cw, const CellSet& mask, const Matching& m) {
  validate_matching(cw, mask, m);
  CensusResult res;
  auto covered = m.matched_cells();
  for (int c : mask) {
    res.euler_cells += (cw.dims[c] % 2 == 0) ? 1 : -1;
    if (!std::binary_search(covered.begin(), covered.end(), c)) res.critical[cw.dims[c]] += 1;
  }
  for (const auto& [d, k] : res.critical) res.euler_critical += (d % 2 == 0) ? k : -k;
  res.euler_ok = res.euler_cells == res.euler_critical;
  return res;
}

// Critical-cell counts bound the unreduced Betti numbers from above, in every
// dimension; the census must also reproduce the Euler characteristic exactly.
inline bool morse_inequalities_ok(const CensusResult& census, const BettiVector& reduced,
                                  bool nonvoid) {
  if (!census.euler_ok) return false;
  std::map<int, long long> unreduced;
  for (const auto& [d, v] : reduced.entries()) {
    if (d < 0) return false;  // empty space: no census to compare against
    unreduced[d] = v;
  }
  if (nonvoid) unreduced[0] += 1;
  for (const auto& [d, b] : unreduced) {
    auto it = census.critical.find(d);
    const long long c = it == census.critical.end() ? 0 : it->second;
    if (c < b) return false;
  }
  return true;
}

// Hypothesis checker for diagrams whose every non-maximal node carries a
// matching with basepoint: the matched cells plus the basepoint must form a
// face-closed collapsible set, and every space included from a covering node
// must land inside the matched cells, except possibly at the basepoint.
struct WedgeNodeVerdict {
  std::string node;
  bool pass = true;
  std::string detail;
};

struct WedgeHypothesesReport {
  bool pass = true;
  std::vector<WedgeNodeVerdict> nodes;
};

inline WedgeHypothesesReport check_wedge_hypotheses(const SpaceDiagram& d,
                                                    const std::map<int, JoinupData>& data) {
  validate_inclusions(d);
  WedgeHypothesesReport rep;
  for (int q = 0; q < d.poset.size(); ++q) {
    WedgeNodeVerdict verdict;
    verdict.node = d.poset.id(q);
    const bool maximal = d.poset.upper_covers(q).empty();
    auto it = data.find(q);
    if (it == data.end()) {
      if (!maximal) {
        verdict.pass = false;
        verdict.detail = "no matching supplied for a non-maximal node";
      } else {
        verdict.detail = "maximal node, nothing to check";
      }
      rep.pass = rep.pass && verdict.pass;
      rep.nodes.push_back(std::move(verdict));
      continue;
    }
    const JoinupData& jd = it->second;
    if (!jd.join.complex.subcomplex_of(d.spaces[q]) ||
        !d.spaces[q].subcomplex_of(jd.join.complex)) {
      verdict.pass = false;
      verdict.detail = "matching data built on a different space";
      rep.pass = false;
      rep.nodes.push_back(std::move(verdict));
      continue;
    }

    const CellSet everything = full_cell_set(jd.cw);
    auto ac = is_acyclic_matching(jd.cw, everything, jd.matching);
    if (!ac.ok) {
      verdict.pass = false;
      verdict.detail = "matching is not acyclic";
    }

    CellSet z = jd.matching.matched_cells();
    z.erase(std::unique(z.begin(), z.end()), z.end());
    if (!cellset_contains(z, jd.basepoint_cell)) {
      z.push_back(jd.basepoint_cell);
      std::sort(z.begin(), z.end());
    }
    if (verdict.pass && !cellset_closed(jd.cw, z)) {
      verdict.pass = false;
      verdict.detail = "matched cells plus basepoint are not a subcomplex";
    }
    if (verdict.pass) {
      auto col = verify_collapse(jd.cw, z, jd.matching, jd.basepoint_cell);
      if (!col.ok) {
        verdict.pass = false;
        verdict.detail = "collapse certificate failed: " + col.reason;
      }
    }

    if (verdict.pass) {
      // Sorted-label lookup of this node's cells.
      std::map<std::vector<std::string>, int> by_labels;
      const auto& simplices = jd.join.complex.simplices();
      for (int i = 0; i < static_cast<int>(simplices.size()); ++i) {
        auto labels = jd.join.complex.labels_of(simplices[i]);
        std::sort(labels.begin(), labels.end());
        by_labels[labels] = i;
      }
      auto matched = jd.matching.matched_cells();
      for (int p : d.poset.upper_covers(q)) {
        const SimplicialComplex& sp = d.spaces[p];
        for (const auto& s : sp.simplices()) {
          auto labels = sp.labels_of(s);
          std::sort(labels.begin(), labels.end());
          auto found = by_labels.find(labels);
          if (found == by_labels.end()) {
            verdict.pass = false;
            verdict.detail = "cell of '" + d.poset.id(p) + "' missing from the node space";
            break;
          }
          const int cell = found->second;
          if (cell == jd.basepoint_cell) continue;
          if (!std::binary_search(matched.begin(), matched.end(), cell)) {
            verdict.pass = false;
            verdict.detail = "cell '" + jd.cw.keys[cell] + "' of '" + d.poset.id(p) +
                             "' is not matched";
            break;
          }
        }
        if (!verdict.pass) break;
      }
      if (verdict.pass && verdict.detail.empty()) verdict.detail = "ok";
    }
    rep.pass = rep.pass && verdict.pass;
    rep.nodes.push_back(std::move(verdict));
  }
  return rep;
}

}  // namespace msl
