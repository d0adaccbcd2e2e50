#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msl/errors.hpp"

namespace msl {

// Chain-complex presentation of a finite regular cell complex: cells with
// dimensions, string keys, and signed codimension-one faces.  Every topological
// object in the library (simplicial complexes, homotopy colimits, their
// subcomplexes) is reduced to this form before homology or matchings run on it.
struct CwComplex {
  std::vector<std::string> keys;
  std::vector<int> dims;
  std::vector<std::vector<std::pair<int, int>>> faces;  // (face cell, incidence sign)
  std::map<std::string, int> index;

  int size() const { return static_cast<int>(keys.size()); }

  int dim() const {
    int d = -1;
    for (int x : dims) d = std::max(d, x);
    return d;
  }

  int id_of(const std::string& key) const {
    auto it = index.find(key);
    if (it == index.end()) throw input_error("cell complex: unknown cell key '" + key + "'");
    return it->second;
  }

  bool has(const std::string& key) const { return index.count(key) != 0; }

  void push_cell(std::string key, int dim, std::vector<std::pair<int, int>> cell_faces) {
    if (!index.emplace(key, size()).second)
      throw internal_error("cell complex: duplicate cell key '" + key + "'");
    keys.push_back(std::move(key));
    dims.push_back(dim);
    faces.push_back(std::move(cell_faces));
  }

  // Structural soundness: faces drop dimension by one, every face of a face
  // cancels in pairs (the boundary of a boundary vanishes over the integers),
  // and incidence signs are units.  Failure signals a bug in whoever built
  // the complex, so the error is internal, not an input error.
  void validate() const {
    for (int c = 0; c < size(); ++c) {
      std::map<int, long long> square;
      for (const auto& [f, s] : faces[c]) {
        if (f < 0 || f >= size()) throw internal_error("cell complex: face id out of range");
        if (s != 1 && s != -1) throw internal_error("cell complex: incidence sign not a unit");
        if (dims[f] != dims[c] - 1)
          throw internal_error("cell complex: face of '" + keys[c] + "' has wrong dimension");
        for (const auto& [g, t] : faces[f]) square[g] += static_cast<long long>(s) * t;
      }
      for (const auto& [g, v] : square)
        if (v != 0)
          throw internal_error("cell complex: boundary squared is nonzero at '" + keys[c] +
                               "' over '" + keys[g] + "'");
      // A cell may not list the same face twice.
      std::map<int, int> seen;
      for (const auto& [f, s] : faces[c]) {
        (void)s;
        if (++seen[f] > 1) throw internal_error("cell complex: repeated face of '" + keys[c] + "'");
      }
    }
  }
};

// A subcomplex is a sorted list of ambient cell ids.
using CellSet = std::vector<int>;

inline CellSet full_cell_set(const CwComplex& cw) {
  CellSet out(cw.size());
  for (int i = 0; i < cw.size(); ++i) out[i] = i;
  return out;
}

inline bool cellset_contains(const CellSet& s, int id) {
  return std::binary_search(s.begin(), s.end(), id);
}

inline CellSet cellset_intersect(const CellSet& a, const CellSet& b) {
  CellSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline CellSet cellset_union(const CellSet& a, const CellSet& b) {
  CellSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool cellset_subset(const CellSet& a, const CellSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// True when the cell set is closed under taking faces.
inline bool cellset_closed(const CwComplex& cw, const CellSet& s) {
  for (int c : s)
    for (const auto& [f, sign] : cw.faces[c]) {
      (void)sign;
      if (!cellset_contains(s, f)) return false;
    }
  return true;
}

inline int cellset_dim(const CwComplex& cw, const CellSet& s) {
  int d = -1;
  for (int c : s) d = std::max(d, cw.dims[c]);
  return d;
}

}  // namespace msl
