#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msl/cw.hpp"
#include "msl/errors.hpp"
#include "msl/poset.hpp"

namespace msl {

// Finite abstract simplicial complex over an ordered list of labelled
// vertices.  The stored data is the list of facets; the full face list
// (closed under subsets, empty face included) is derived once at
// construction.  Two degenerate complexes are told apart by the facet list:
// a single empty facet yields the complex whose only face is the empty set
// (the join identity), while no facets at all yields the void complex
// without any face, which only shows up as an empty intersection.
class SimplicialComplex {
 public:
  SimplicialComplex() : SimplicialComplex(std::vector<std::string>{}, {{}}) {}

  SimplicialComplex(std::vector<std::string> vertices,
                    const std::vector<std::vector<std::string>>& faces)
      : vertices_(std::move(vertices)) {
    for (int i = 0; i < n_vertices(); ++i) {
      const std::string& v = vertices_[i];
      if (v.find(',') != std::string::npos || v.find('|') != std::string::npos ||
          v.find('>') != std::string::npos)
        throw input_error("complex: vertex label '" + v + "' may not contain ',', '|' or '>'");
      if (!vertex_index_.emplace(v, i).second)
        throw input_error("complex: duplicate vertex label '" + v + "'");
    }
    std::set<std::vector<int>> gens;
    for (const auto& face : faces) {
      std::vector<int> f;
      f.reserve(face.size());
      for (const auto& v : face) f.push_back(vertex_index_of(v));
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      gens.insert(std::move(f));
    }
    init_from_generators(gens);
  }

  static SimplicialComplex void_complex() {
    SimplicialComplex c(std::vector<std::string>{}, {});
    return c;
  }

  static SimplicialComplex trivial() { return SimplicialComplex(); }

  // Internal fast path: vertex labels plus faces as index vectors.
  static SimplicialComplex from_index_faces(std::vector<std::string> vertices,
                                            const std::vector<std::vector<int>>& faces) {
    SimplicialComplex c;
    c.vertices_ = std::move(vertices);
    c.vertex_index_.clear();
    for (int i = 0; i < c.n_vertices(); ++i) c.vertex_index_.emplace(c.vertices_[i], i);
    std::set<std::vector<int>> gens;
    for (auto f : faces) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      gens.insert(std::move(f));
    }
    c.facets_.clear();
    c.simplices_.clear();
    c.simplex_set_.clear();
    c.init_from_generators(gens);
    return c;
  }

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& vertex(int i) const { return vertices_.at(i); }

  int vertex_index_of(const std::string& v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end()) throw input_error("complex: unknown vertex label '" + v + "'");
    return it->second;
  }

  bool is_void() const { return facets_.empty(); }
  bool is_trivial() const { return facets_.size() == 1 && facets_[0].empty(); }

  // Dimension of the complex; -1 for both the trivial and the void complex
  // (tell them apart with is_void).
  int dim() const {
    int d = -1;
    for (const auto& f : facets_) d = std::max<int>(d, static_cast<int>(f.size()) - 1);
    return d;
  }

  const std::vector<std::vector<int>>& facets() const { return facets_; }

  // All nonempty faces, ordered by (dimension, lexicographic vertex indices).
  const std::vector<std::vector<int>>& simplices() const { return simplices_; }

  long long n_simplices() const { return static_cast<long long>(simplices_.size()); }

  // f-vector including the empty face: entry 0 counts the (-1)-face, entry
  // k+1 the k-faces.  The void complex has an empty f-vector.
  std::vector<long long> f_vector() const {
    if (is_void()) return {};
    std::vector<long long> f(static_cast<size_t>(dim()) + 2, 0);
    f[0] = 1;
    for (const auto& s : simplices_) f[s.size()] += 1;
    return f;
  }

  bool contains_indices(std::vector<int> face) const {
    std::sort(face.begin(), face.end());
    if (face.empty()) return !is_void();
    return simplex_set_.count(face) != 0;
  }

  bool contains(const std::vector<std::string>& face) const {
    std::vector<int> f;
    f.reserve(face.size());
    for (const auto& v : face) {
      auto it = vertex_index_.find(v);
      if (it == vertex_index_.end()) return false;
      f.push_back(it->second);
    }
    return contains_indices(std::move(f));
  }

  std::vector<std::string> labels_of(const std::vector<int>& face) const {
    std::vector<std::string> out;
    out.reserve(face.size());
    for (int i : face) out.push_back(vertex(i));
    return out;
  }

  // Label-wise subcomplex test.
  bool subcomplex_of(const SimplicialComplex& other) const {
    if (is_void()) return true;
    if (other.is_void()) return is_void();
    for (const auto& f : facets_)
      if (!other.contains(labels_of(f))) return false;
    return true;
  }

  std::string face_key(const std::vector<int>& face) const {
    std::string key;
    for (size_t i = 0; i < face.size(); ++i) {
      if (i) key += ',';
      key += vertex(face[i]);
    }
    return key;
  }

  // Chain-complex view over the nonempty faces.  The empty face is handled
  // by the homology routines as an augmentation, not as a cell here.
  CwComplex to_cw() const {
    CwComplex cw;
    for (const auto& s : simplices_) {
      std::vector<std::pair<int, int>> fs;
      if (s.size() > 1) {
        for (size_t j = 0; j < s.size(); ++j) {
          std::vector<int> face = s;
          face.erase(face.begin() + static_cast<long>(j));
          fs.emplace_back(cw.id_of(face_key(face)), (j % 2 == 0) ? 1 : -1);
        }
      }
      cw.push_cell(face_key(s), static_cast<int>(s.size()) - 1, std::move(fs));
    }
    return cw;
  }

 private:
  void init_from_generators(const std::set<std::vector<int>>& gens) {
    if (gens.empty()) {
      if (n_vertices() > 0) throw input_error("complex: no faces but vertices declared");
      return;
    }
    std::vector<char> used(n_vertices(), 0);
    for (const auto& g : gens)
      for (int v : g) used[v] = 1;
    for (int v = 0; v < n_vertices(); ++v)
      if (!used[v]) throw input_error("complex: vertex '" + vertices_[v] + "' appears in no face");

    // Keep the maximal generators as facets.
    std::vector<std::vector<int>> all(gens.begin(), gens.end());
    for (const auto& g : all) {
      bool maximal = true;
      for (const auto& h : all)
        if (&g != &h && g != h && std::includes(h.begin(), h.end(), g.begin(), g.end()))
          maximal = false;
      if (maximal) facets_.push_back(g);
    }
    std::sort(facets_.begin(), facets_.end(), size_lex_less);

    std::set<std::vector<int>> faces;
    for (const auto& f : facets_) expand_subsets(f, faces);
    for (const auto& s : faces)
      if (!s.empty()) simplices_.push_back(s);
    std::sort(simplices_.begin(), simplices_.end(), size_lex_less);
    simplex_set_.insert(simplices_.begin(), simplices_.end());
  }

  static bool size_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }

  static void expand_subsets(const std::vector<int>& f, std::set<std::vector<int>>& out) {
    const size_t n = f.size();
    for (size_t bits = 0; bits < (size_t{1} << n); ++bits) {
      std::vector<int> s;
      for (size_t j = 0; j < n; ++j)
        if (bits & (size_t{1} << j)) s.push_back(f[j]);
      out.insert(std::move(s));
    }
  }

  std::vector<std::string> vertices_;
  std::map<std::string, int> vertex_index_;
  std::vector<std::vector<int>> facets_;
  std::vector<std::vector<int>> simplices_;
  std::set<std::vector<int>> simplex_set_;
};

// Join of labelled factors.  Coordinates are the given integer labels; a
// vertex v of the factor at coordinate c becomes "c:v", and the faces are
// exactly the unions of one face per factor.  Keeping the coordinate in the
// label makes joins over nested coordinate sets literal subcomplexes of one
// another, which the diagram machinery depends on.
struct LabeledJoin {
  SimplicialComplex complex;
  std::vector<int> coords;                    // coordinate labels, increasing
  std::vector<int> vertex_coord;              // per join vertex
  std::vector<std::string> vertex_original;   // label inside its factor
};

inline LabeledJoin labeled_join(const std::vector<std::pair<int, const SimplicialComplex*>>& factors) {
  LabeledJoin out;
  for (const auto& [c, x] : factors)
    if (x->is_void()) {
      out.complex = SimplicialComplex::void_complex();
      return out;
    }
  std::vector<std::pair<int, const SimplicialComplex*>> live;
  for (const auto& [c, x] : factors) {
    if (x->is_trivial()) continue;  // join identity
    live.emplace_back(c, x);
  }
  for (size_t i = 1; i < live.size(); ++i)
    if (live[i].first <= live[i - 1].first)
      throw input_error("join: coordinate labels must be strictly increasing");

  std::vector<std::string> verts;
  std::vector<int> offsets;
  for (const auto& [c, x] : live) {
    out.coords.push_back(c);
    offsets.push_back(static_cast<int>(verts.size()));
    for (const auto& v : x->vertices()) {
      verts.push_back(std::to_string(c) + ":" + v);
      out.vertex_coord.push_back(c);
      out.vertex_original.push_back(v);
    }
  }

  // Facets: one facet of every factor, combined; odometer order over the
  // factors' facet lists keeps the result deterministic.
  std::vector<std::vector<int>> faces;
  if (live.empty()) {
    faces.push_back({});
  } else {
    std::vector<size_t> pick(live.size(), 0);
    bool done = false;
    while (!done) {
      std::vector<int> face;
      for (size_t i = 0; i < live.size(); ++i)
        for (int v : live[i].second->facets()[pick[i]]) face.push_back(offsets[i] + v);
      faces.push_back(std::move(face));
      done = true;
      for (size_t i = live.size(); i-- > 0;) {
        if (++pick[i] < live[i].second->facets().size()) {
          done = false;
          break;
        }
        pick[i] = 0;
      }
    }
  }
  out.complex = SimplicialComplex::from_index_faces(std::move(verts), faces);
  return out;
}

inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.is_trivial()) return b;
  if (b.is_trivial()) return a;
  return labeled_join({{1, &a}, {2, &b}}).complex;
}

// n-fold join of one model space over coordinates 1..n; n = 0 gives the
// trivial complex.
inline LabeledJoin power_join(const SimplicialComplex& x, int n) {
  if (n < 0) throw input_error("power_join: negative exponent");
  std::vector<std::pair<int, const SimplicialComplex*>> fs;
  for (int i = 1; i <= n; ++i) fs.emplace_back(i, &x);
  return labeled_join(fs);
}

inline LabeledJoin coordinate_join(const SimplicialComplex& x, const std::vector<int>& coords) {
  std::vector<std::pair<int, const SimplicialComplex*>> fs;
  for (int c : coords) fs.emplace_back(c, &x);
  return labeled_join(fs);
}

// Decomposition of a join face by coordinate: for each coordinate of the
// join, the vertices of the face lying in that factor.
inline std::map<int, std::vector<int>> split_by_coord(const LabeledJoin& j,
                                                      const std::vector<int>& face) {
  std::map<int, std::vector<int>> out;
  for (int c : j.coords) out[c] = {};
  for (int v : face) out.at(j.vertex_coord.at(v)).push_back(v);
  return out;
}

// Standard model spaces.
inline SimplicialComplex points(int k) {
  if (k < 1) throw input_error("points: need at least one vertex");
  std::vector<std::string> verts;
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < k; ++i) {
    verts.push_back(std::to_string(i));
    faces.push_back({i});
  }
  return SimplicialComplex::from_index_faces(std::move(verts), faces);
}

inline SimplicialComplex cycle(int k) {
  if (k < 3) throw input_error("cycle: need at least three vertices");
  std::vector<std::string> verts;
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < k; ++i) {
    verts.push_back(std::to_string(i));
    faces.push_back({i, (i + 1) % k});
  }
  return SimplicialComplex::from_index_faces(std::move(verts), faces);
}

// Boundary of the (d+1)-simplex.
inline SimplicialComplex sphere(int d) {
  if (d < 0) throw input_error("sphere: negative dimension");
  const int n = d + 2;
  std::vector<std::string> verts;
  for (int i = 0; i < n; ++i) verts.push_back(std::to_string(i));
  std::vector<std::vector<int>> faces;
  for (int skip = 0; skip < n; ++skip) {
    std::vector<int> f;
    for (int i = 0; i < n; ++i)
      if (i != skip) f.push_back(i);
    faces.push_back(std::move(f));
  }
  return SimplicialComplex::from_index_faces(std::move(verts), faces);
}

// "points:3", "cycle:4", "sphere:2"
inline SimplicialComplex standard_space(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw input_error("standard space: expected 'kind:n', got '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw input_error("standard space: bad parameter in '" + spec + "'");
  }
  if (kind == "points") return points(n);
  if (kind == "cycle") return cycle(n);
  if (kind == "sphere") return sphere(n);
  throw input_error("standard space: unknown kind '" + kind + "'");
}

// Poset of nonempty faces graded by dimension.
inline RankedPoset face_poset(const SimplicialComplex& x) {
  std::vector<std::string> ids;
  std::map<std::vector<int>, int> pos;
  for (const auto& s : x.simplices()) {
    pos.emplace(s, static_cast<int>(ids.size()));
    ids.push_back(x.face_key(s));
  }
  std::vector<std::pair<int, int>> covers;
  for (const auto& s : x.simplices()) {
    if (s.size() < 2) continue;
    int self = pos.at(s);
    for (size_t j = 0; j < s.size(); ++j) {
      std::vector<int> face = s;
      face.erase(face.begin() + static_cast<long>(j));
      covers.emplace_back(pos.at(face), self);
    }
  }
  return RankedPoset::graded(FinitePoset(std::move(ids), std::move(covers)));
}

// Complex of chains of a poset; vertices are the poset's elements, facets its
// maximal chains.  The empty poset yields the trivial complex.
inline SimplicialComplex order_complex(const FinitePoset& p) {
  if (p.size() == 0) return SimplicialComplex::trivial();
  auto all = p.chains();
  std::vector<std::vector<int>> maximal;
  for (const auto& c : all) {
    bool extendable = false;
    for (int y = 0; y < p.size() && !extendable; ++y) {
      if (std::find(c.begin(), c.end(), y) != c.end()) continue;
      bool fits = true;
      for (int m : c)
        if (!p.comparable(y, m)) fits = false;
      if (fits) extendable = true;
    }
    if (!extendable) maximal.push_back(c);
  }
  return SimplicialComplex::from_index_faces(p.elements(), maximal);
}

}  // namespace msl
