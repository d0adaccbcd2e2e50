#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msl/errors.hpp"
#include "msl/poset.hpp"

namespace msl {

// Canonical printable name for a set of ground elements, e.g. "{1,3,7}".
inline std::string set_id(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

struct AxiomViolation {
  std::string axiom;
  std::string witness;
};

struct LatticeValidation {
  bool ok = true;
  std::vector<AxiomViolation> violations;

  void fail(const std::string& axiom, const std::string& witness) {
    ok = false;
    violations.push_back({axiom, witness});
  }

  std::string describe() const {
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v.axiom + " at " + v.witness;
    }
    return s;
  }
};

namespace detail {

inline std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_leq(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<int> set_and(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Inclusion order on a family of sets, with covers made irredundant.
inline FinitePoset inclusion_poset(const std::vector<std::vector<int>>& sets) {
  const int m = static_cast<int>(sets.size());
  std::vector<std::string> ids;
  ids.reserve(sets.size());
  for (const auto& s : sets) ids.push_back(set_id(s));
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !set_leq(sets[i], sets[j]) || sets[i] == sets[j]) continue;
      bool is_cover = true;
      for (int k = 0; k < m && is_cover; ++k)
        if (k != i && k != j && set_leq(sets[i], sets[k]) && set_leq(sets[k], sets[j]) &&
            sets[k] != sets[i] && sets[k] != sets[j])
          is_cover = false;
      if (is_cover) covers.emplace_back(i, j);
    }
  return FinitePoset(ids, covers);
}

}  // namespace detail

// A matroid presented as its lattice of flats; each flat is a sorted set of
// ground elements.  Construction validates every lattice axiom and throws
// with the full list of violations if any fails; `validate` exposes the same
// checks non-throwing.
class GeometricLattice {
 public:
  GeometricLattice(std::vector<int> ground, std::vector<std::vector<int>> flats)
      : ground_(detail::sorted_unique(std::move(ground))) {
    for (auto& f : flats) f = detail::sorted_unique(std::move(f));
    std::sort(flats.begin(), flats.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
    flats_ = std::move(flats);

    LatticeValidation v = validate_sets(ground_, flats_);
    if (!v.ok) throw input_error("not a geometric lattice: " + v.describe());

    poset_ = detail::inclusion_poset(flats_);
    auto [rk, graded] = poset_.grading();
    (void)graded;  // validated above
    rank_ = rk;
    r_ = rank_[index_of(ground_)];

    const int m = n_flats();
    join_.assign(m, std::vector<int>(m, -1));
    meet_.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        meet_[i][j] = index_of(detail::set_and(flats_[i], flats_[j]));
        int best = -1;
        for (int k = 0; k < m; ++k)
          if (detail::set_leq(flats_[i], flats_[k]) && detail::set_leq(flats_[j], flats_[k]) &&
              (best < 0 || detail::set_leq(flats_[k], flats_[best])))
            best = k;
        join_[i][j] = best;
      }
    for (int i = 0; i < m; ++i)
      if (rank_[i] == 1) atoms_.push_back(i);
  }

  // Runs every axiom check on a family of sets without building the lattice.
  static LatticeValidation validate_sets(const std::vector<int>& ground,
                                         const std::vector<std::vector<int>>& flats) {
    LatticeValidation v;
    const int m = static_cast<int>(flats.size());
    std::map<std::vector<int>, int> pos;
    for (int i = 0; i < m; ++i) pos[flats[i]] = i;
    for (const auto& f : flats)
      for (int e : f)
        if (!std::binary_search(ground.begin(), ground.end(), e)) {
          v.fail("flats-within-ground", set_id(f));
          return v;
        }
    if (!pos.count(std::vector<int>{})) v.fail("bounded", "no bottom (empty flat missing)");
    if (!pos.count(ground)) v.fail("bounded", "no top (ground set missing)");
    if (!v.ok) return v;

    FinitePoset poset = detail::inclusion_poset(flats);
    auto [rank, graded] = poset.grading();
    if (!graded) v.fail("graded", "maximal chains of different lengths");

    // Lattice property: joins exist (meets follow if intersections are flats).
    std::vector<std::vector<int>> join(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        int best = -1;
        bool unique_min = true;
        for (int k = 0; k < m; ++k) {
          if (!detail::set_leq(flats[i], flats[k]) || !detail::set_leq(flats[j], flats[k]))
            continue;
          if (best < 0 || detail::set_leq(flats[k], flats[best])) {
            best = k;
          }
        }
        for (int k = 0; k < m; ++k)
          if (k != best && detail::set_leq(flats[i], flats[k]) &&
              detail::set_leq(flats[j], flats[k]) && !detail::set_leq(flats[best], flats[k]))
            unique_min = false;
        if (!unique_min) {
          v.fail("lattice", set_id(flats[i]) + " vs " + set_id(flats[j]));
          return v;
        }
        join[i][j] = join[j][i] = best;
      }

    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (!pos.count(detail::set_and(flats[i], flats[j]))) {
          v.fail("meet-is-intersection", set_id(flats[i]) + " vs " + set_id(flats[j]));
          return v;
        }

    if (!graded) return v;  // rank-based axioms need the grading

    // Atoms must be the singletons of the ground set, one per element.
    std::set<int> covered;
    for (int i = 0; i < m; ++i) {
      if (rank[i] != 1) continue;
      if (flats[i].size() != 1) {
        v.fail("atoms-are-singletons", set_id(flats[i]));
        return v;
      }
      covered.insert(flats[i][0]);
    }
    for (int e : ground)
      if (!covered.count(e)) {
        v.fail("atoms-are-singletons", "element " + std::to_string(e) + " is not an atom");
        return v;
      }

    // Every flat is the join of the atoms below it.
    for (int i = 0; i < m; ++i) {
      int acc = pos[std::vector<int>{}];
      for (int e : flats[i]) acc = join[acc][pos[std::vector<int>{e}]];
      if (acc != i) v.fail("atomic", set_id(flats[i]));
    }

    int all = pos[std::vector<int>{}];
    for (int e : ground) all = join[all][pos[std::vector<int>{e}]];
    if (flats[all] != ground) v.fail("join-of-atoms-is-top", set_id(flats[all]));

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int mt = pos[detail::set_and(flats[i], flats[j])];
        if (rank[i] + rank[j] < rank[mt] + rank[join[i][j]])
          v.fail("semimodular", set_id(flats[i]) + " vs " + set_id(flats[j]));
      }
    return v;
  }

  int n_flats() const { return static_cast<int>(flats_.size()); }
  const std::vector<int>& ground() const { return ground_; }
  int n_elements() const { return static_cast<int>(ground_.size()); }
  int r() const { return r_; }

  const std::vector<int>& flat(int i) const { return flats_.at(i); }
  std::string flat_id(int i) const { return set_id(flats_.at(i)); }
  int rank_of(int i) const { return rank_.at(i); }

  int index_of(const std::vector<int>& flat_set) const {
    auto key = detail::sorted_unique(flat_set);
    for (int i = 0; i < n_flats(); ++i)
      if (flats_[i] == key) return i;
    throw input_error("no flat " + set_id(key));
  }
  bool is_flat(const std::vector<int>& s) const {
    auto key = detail::sorted_unique(s);
    for (const auto& f : flats_)
      if (f == key) return true;
    return false;
  }

  int bottom() const { return 0; }
  int top() const { return n_flats() - 1; }
  const std::vector<int>& atoms() const { return atoms_; }
  int atom_of(int element) const { return index_of({element}); }

  int join(int i, int j) const { return join_.at(i).at(j); }
  int meet(int i, int j) const { return meet_.at(i).at(j); }
  bool leq(int i, int j) const { return detail::set_leq(flats_[i], flats_[j]); }

  // Smallest flat containing a subset of the ground set.
  int closure(const std::vector<int>& subset) const {
    int acc = bottom();
    for (int e : detail::sorted_unique(subset)) acc = join(acc, atom_of(e));
    return acc;
  }

  // The elements whose atoms sit below flat i; with validated input this is
  // the flat itself, which makes the two directions of the dictionary between
  // lattice elements and atom sets literally inverse.
  std::vector<int> atom_support(int i) const {
    std::vector<int> out;
    for (int a : atoms_)
      if (leq(a, i)) out.push_back(flats_[a][0]);
    return out;
  }

  const FinitePoset& poset() const { return poset_; }
  RankedPoset ranked_poset() const { return RankedPoset{poset_, rank_}; }

  long long mobius(int i, int j) const { return poset_.mobius(i, j); }
  long long mobius_from_bottom(int i) const { return poset_.mobius(bottom(), i); }

 private:
  std::vector<int> ground_;
  std::vector<std::vector<int>> flats_;
  FinitePoset poset_;
  std::vector<int> rank_;
  std::vector<int> atoms_;
  std::vector<std::vector<int>> join_, meet_;
  int r_ = 0;
};

// ---------------------------------------------------------------------------
// Builders

inline GeometricLattice boolean_matroid(int n) {
  if (n < 0 || n > 10) throw input_error("boolean_matroid: n out of range [0,10]");
  std::vector<int> ground;
  for (int e = 1; e <= n; ++e) ground.push_back(e);
  std::vector<std::vector<int>> flats;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> f;
    for (int e = 1; e <= n; ++e)
      if (mask & (1u << (e - 1))) f.push_back(e);
    flats.push_back(std::move(f));
  }
  return GeometricLattice(ground, flats);
}

inline GeometricLattice uniform_matroid(int r, int n) {
  if (r < 1 || n < r || n > 12) throw input_error("uniform_matroid: need 1 <= r <= n <= 12");
  std::vector<int> ground;
  for (int e = 1; e <= n; ++e) ground.push_back(e);
  std::vector<std::vector<int>> flats;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> f;
    for (int e = 1; e <= n; ++e)
      if (mask & (1u << (e - 1))) f.push_back(e);
    if (static_cast<int>(f.size()) < r || static_cast<int>(f.size()) == n)
      flats.push_back(std::move(f));
  }
  return GeometricLattice(ground, flats);
}

// The seven-point projective plane: ground {1..7}, seven three-point lines.
inline const std::vector<std::vector<int>>& fano_lines() {
  static const std::vector<std::vector<int>> lines = {
      {1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
  return lines;
}

inline GeometricLattice fano_matroid() {
  std::vector<int> ground = {1, 2, 3, 4, 5, 6, 7};
  std::vector<std::vector<int>> flats = {{}};
  for (int e : ground) flats.push_back({e});
  for (const auto& l : fano_lines()) flats.push_back(l);
  flats.push_back(ground);
  return GeometricLattice(ground, flats);
}

namespace detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Rank of a list of column vectors over GF(p), by Gaussian elimination.
inline int gfp_rank(std::vector<std::vector<int>> cols, int p) {
  int rank = 0;
  if (cols.empty()) return 0;
  const size_t d = cols[0].size();
  std::vector<std::vector<int>> basis;
  // Reduce each vector against the basis collected so far.
  for (auto& c : cols) {
    for (const auto& b : basis) {
      size_t lead = 0;
      while (lead < d && b[lead] == 0) ++lead;
      if (lead < d && c[lead] != 0) {
        // c -= (c[lead]/b[lead]) * b
        int inv = 1;
        for (int t = 1; t < p; ++t)
          if (b[lead] * t % p == 1) inv = t;
        int coef = c[lead] * inv % p;
        for (size_t i = 0; i < d; ++i) c[i] = ((c[i] - coef * b[i]) % p + p) % p;
      }
    }
    if (std::any_of(c.begin(), c.end(), [](int x) { return x != 0; })) {
      basis.push_back(c);
      std::sort(basis.begin(), basis.end(), [&](const auto& a, const auto& b2) {
        size_t la = 0, lb = 0;
        while (la < d && a[la] == 0) ++la;
        while (lb < d && b2[lb] == 0) ++lb;
        return la < lb;
      });
      ++rank;
    }
  }
  return rank;
}

}  // namespace detail

// Matroid of a list of vectors over GF(p): flats are the subsets of columns
// closed under linear span.  Zero and pairwise-parallel columns are rejected
// (the lattice of flats cannot see loops or parallel elements).
inline GeometricLattice matroid_from_gfp_columns(int p, const std::vector<std::vector<int>>& raw_cols) {
  if (!detail::is_prime(p)) throw input_error("matroid_from_gfp_columns: p must be prime");
  const int n = static_cast<int>(raw_cols.size());
  if (n < 1 || n > 9) throw input_error("matroid_from_gfp_columns: need 1 <= n <= 9 columns");
  const size_t d = raw_cols[0].size();
  std::vector<std::vector<int>> cols;
  for (const auto& c : raw_cols) {
    if (c.size() != d) throw input_error("matroid_from_gfp_columns: ragged columns");
    std::vector<int> cc;
    for (int x : c) cc.push_back(((x % p) + p) % p);
    if (std::all_of(cc.begin(), cc.end(), [](int x) { return x == 0; }))
      throw input_error("matroid_from_gfp_columns: zero column (loop)");
    cols.push_back(std::move(cc));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::gfp_rank({cols[i], cols[j]}, p) < 2)
        throw input_error("matroid_from_gfp_columns: parallel columns " + std::to_string(i + 1) +
                          "," + std::to_string(j + 1));

  auto rank_of_subset = [&](unsigned mask) {
    std::vector<std::vector<int>> sub;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(cols[i]);
    return detail::gfp_rank(sub, p);
  };
  std::set<std::vector<int>> flat_set;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int rk = rank_of_subset(mask);
    std::vector<int> cl;
    for (int j = 0; j < n; ++j)
      if ((mask & (1u << j)) || rank_of_subset(mask | (1u << j)) == rk) cl.push_back(j + 1);
    flat_set.insert(cl);
  }
  std::vector<int> ground;
  for (int e = 1; e <= n; ++e) ground.push_back(e);
  return GeometricLattice(ground, std::vector<std::vector<int>>(flat_set.begin(), flat_set.end()));
}

// ---------------------------------------------------------------------------
// Coordinate-label maps feeding the arrangement construction: each lattice
// element p receives a subset of {1..r} with |labels(p)| = r - rank(p), and
// larger elements receive smaller label sets.

struct EllMap {
  std::vector<std::vector<int>> labels;  // indexed by flat, each sorted

  const std::vector<int>& at(int flat) const { return labels.at(flat); }
};

inline void validate_ell(const GeometricLattice& M, const EllMap& ell) {
  if (static_cast<int>(ell.labels.size()) != M.n_flats())
    throw input_error("label map: wrong number of entries");
  const int r = M.r();
  for (int i = 0; i < M.n_flats(); ++i) {
    const auto& L = ell.labels[i];
    for (size_t k = 0; k < L.size(); ++k) {
      if (L[k] < 1 || L[k] > r) throw input_error("label map: label out of range at " + M.flat_id(i));
      if (k && L[k] <= L[k - 1]) throw input_error("label map: labels not sorted at " + M.flat_id(i));
    }
    if (static_cast<int>(L.size()) + M.rank_of(i) != r)
      throw input_error("label map: size+rank mismatch at " + M.flat_id(i) + " (|labels|=" +
                        std::to_string(L.size()) + ", rank=" + std::to_string(M.rank_of(i)) + ")");
  }
  for (int i = 0; i < M.n_flats(); ++i)
    for (int j = 0; j < M.n_flats(); ++j)
      if (M.leq(i, j) && !detail::set_leq(ell.labels[j], ell.labels[i]))
        throw input_error("label map: not order-reversing at " + M.flat_id(i) + " <= " + M.flat_id(j));
}

// Initial-segment labels {1, ..., r - rank(p)}.
inline EllMap ell_default(const GeometricLattice& M) {
  EllMap ell;
  for (int i = 0; i < M.n_flats(); ++i) {
    std::vector<int> L;
    for (int k = 1; k <= M.r() - M.rank_of(i); ++k) L.push_back(k);
    ell.labels.push_back(std::move(L));
  }
  validate_ell(M, ell);
  return ell;
}

// Labels read off a maximal flag q_0 < q_1 < ... < q_r: step s of the flag is
// labeled r+1-s, and p keeps exactly the labels of the steps where joining
// with p still gains rank.  On flag elements this reproduces the initial
// segments of ell_default.
inline EllMap ell_flag(const GeometricLattice& M, const std::vector<std::vector<int>>& flag_sets) {
  const int r = M.r();
  if (static_cast<int>(flag_sets.size()) != r + 1)
    throw input_error("ell_flag: flag must list r+1 flats from bottom to top");
  std::vector<int> flag;
  for (const auto& fs : flag_sets) {
    if (!M.is_flat(fs)) throw input_error("ell_flag: " + set_id(detail::sorted_unique(fs)) + " is not a flat");
    flag.push_back(M.index_of(fs));
  }
  for (int s = 0; s <= r; ++s)
    if (M.rank_of(flag[s]) != s)
      throw input_error("ell_flag: flag element " + M.flat_id(flag[s]) + " has rank " +
                        std::to_string(M.rank_of(flag[s])) + ", expected " + std::to_string(s));
  for (int s = 1; s <= r; ++s)
    if (!M.leq(flag[s - 1], flag[s])) throw input_error("ell_flag: flag is not a chain");

  EllMap ell;
  for (int i = 0; i < M.n_flats(); ++i) {
    std::vector<int> L;
    for (int s = r; s >= 1; --s)
      if (M.rank_of(M.join(flag[s], i)) > M.rank_of(M.join(flag[s - 1], i)))
        L.push_back(r + 1 - s);
    std::sort(L.begin(), L.end());
    ell.labels.push_back(std::move(L));
  }
  validate_ell(M, ell);
  return ell;
}

}  // namespace msl
