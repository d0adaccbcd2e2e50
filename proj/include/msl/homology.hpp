#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msl/cw.hpp"
#include "msl/errors.hpp"
#include "msl/simplicial.hpp"

namespace msl {

enum class Field { Q, GF2 };

inline std::string field_name(Field f) { return f == Field::Q ? "Q" : "GF2"; }

inline Field field_from_name(const std::string& s) {
  if (s == "Q") return Field::Q;
  if (s == "GF2") return Field::GF2;
  throw input_error("unknown coefficient field '" + s + "' (expected Q or GF2)");
}

// Reduced Betti numbers, degree -1 upward, with the coefficient field they
// were computed over.  Only nonzero entries are stored.
class BettiVector {
 public:
  explicit BettiVector(Field f = Field::Q) : field_(f) {}

  Field field() const { return field_; }

  long long at(int degree) const {
    auto it = b_.find(degree);
    return it == b_.end() ? 0 : it->second;
  }

  void set(int degree, long long value) {
    if (degree < -1) throw input_error("Betti degree below -1");
    if (value < 0) throw internal_error("negative Betti number");
    if (value == 0)
      b_.erase(degree);
    else
      b_[degree] = value;
  }

  void add(int degree, long long value) { set(degree, at(degree) + value); }

  const std::map<int, long long>& entries() const { return b_; }

  bool is_zero() const { return b_.empty(); }

  int top_degree() const { return b_.empty() ? -2 : b_.rbegin()->first; }

  // Same numbers, field ignored; used to compare Q against GF2.
  bool same_values(const BettiVector& o) const { return b_ == o.b_; }

  bool operator==(const BettiVector& o) const { return field_ == o.field_ && b_ == o.b_; }
  bool operator!=(const BettiVector& o) const { return !(*this == o); }

  long long reduced_euler() const {
    long long e = 0;
    for (const auto& [d, v] : b_) e += (d % 2 == 0 ? v : -v);
    return e;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [d, v] : b_) {
      if (!first) s += ", ";
      first = false;
      s += std::to_string(d) + ":" + std::to_string(v);
    }
    return s + "}";
  }

 private:
  Field field_;
  std::map<int, long long> b_;
};

namespace detail {

using SparseRow = std::vector<std::pair<int, mpz_class>>;  // (column, entry), sorted

// Rank over the rationals by one-step fraction-free elimination.  Entries stay
// integral throughout: each update divides exactly by the previous pivot.
inline int rank_fraction_free(std::vector<SparseRow> rows) {
  std::vector<char> active(rows.size(), 1);
  mpz_class prev = 1;
  int rank = 0;
  while (true) {
    // Pivot row: fewest entries; pivot column: rarest among that row's columns.
    int pr = -1;
    size_t best = SIZE_MAX;
    for (size_t i = 0; i < rows.size(); ++i)
      if (active[i] && !rows[i].empty() && rows[i].size() < best) {
        best = rows[i].size();
        pr = static_cast<int>(i);
      }
    if (pr < 0) break;
    std::map<int, int> col_count;
    for (size_t i = 0; i < rows.size(); ++i)
      if (active[i])
        for (const auto& [c, v] : rows[i]) {
          (void)v;
          col_count[c] += 1;
        }
    int pc = -1, pc_count = INT32_MAX;
    for (const auto& [c, v] : rows[pr]) {
      (void)v;
      if (col_count[c] < pc_count) {
        pc_count = col_count[c];
        pc = c;
      }
    }
    mpz_class pivot;
    for (const auto& [c, v] : rows[pr])
      if (c == pc) pivot = v;

    for (size_t i = 0; i < rows.size(); ++i) {
      if (!active[i] || static_cast<int>(i) == pr) continue;
      mpz_class coeff;
      bool hit = false;
      for (const auto& [c, v] : rows[i])
        if (c == pc) {
          coeff = v;
          hit = true;
        }
      if (!hit) continue;
      SparseRow next;
      next.reserve(rows[i].size() + rows[pr].size());
      size_t a = 0, b = 0;
      const SparseRow& ri = rows[i];
      const SparseRow& rp = rows[pr];
      while (a < ri.size() || b < rp.size()) {
        int ca = a < ri.size() ? ri[a].first : INT32_MAX;
        int cb = b < rp.size() ? rp[b].first : INT32_MAX;
        int col = std::min(ca, cb);
        mpz_class val = 0;
        if (ca == col) val += pivot * ri[a++].second;
        if (cb == col) val -= coeff * rp[b++].second;
        if (val != 0) {
          mpz_class q;
          mpz_divexact(q.get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
          next.emplace_back(col, std::move(q));
        }
      }
      rows[i] = std::move(next);
    }
    active[pr] = 0;
    prev = pivot;
    ++rank;
  }
  return rank;
}

// Rank over GF(2); rows are bit sets packed in 64-bit words.
inline int rank_gf2(std::vector<std::vector<uint64_t>> rows) {
  int rank = 0;
  std::vector<std::pair<int, int>> pivots;  // (row index into kept list, bit)
  std::vector<std::vector<uint64_t>> kept;
  for (auto& row : rows) {
    for (const auto& [kr, bit] : pivots) {
      if (row[bit / 64] & (uint64_t{1} << (bit % 64))) {
        const auto& k = kept[kr];
        for (size_t w = 0; w < row.size(); ++w) row[w] ^= k[w];
      }
    }
    int lead = -1;
    for (size_t w = 0; w < row.size() && lead < 0; ++w)
      if (row[w]) {
        for (int b = 0; b < 64; ++b)
          if (row[w] & (uint64_t{1} << b)) {
            lead = static_cast<int>(w) * 64 + b;
            break;
          }
      }
    if (lead >= 0) {
      pivots.emplace_back(static_cast<int>(kept.size()), lead);
      kept.push_back(std::move(row));
      ++rank;
    }
  }
  return rank;
}

}  // namespace detail

// Reduced Betti numbers of (a subcomplex of) a cell complex.  The subcomplex
// must be closed under faces.  A nonempty cell set is augmented with a formal
// (-1)-cell receiving every 0-cell; the empty set has vanishing homology.
inline BettiVector betti(const CwComplex& cw, Field field, const CellSet& cells) {
  BettiVector out(field);
  if (cells.empty()) return out;

  int top = -1;
  std::map<int, int> local;  // ambient cell -> index within its degree
  std::vector<int> count_by_dim;
  for (int c : cells) top = std::max(top, cw.dims[c]);
  count_by_dim.assign(static_cast<size_t>(top) + 1, 0);
  for (int c : cells) local[c] = count_by_dim[cw.dims[c]]++;

  // Here the rows of the rank computation are the cells of degree k, viewed as
  // sparse vectors over the (k-1)-cells; the rank of that list of vectors is
  // the rank of the k-th boundary map.
  std::vector<int> rank_of_boundary(static_cast<size_t>(top) + 2, 0);
  for (int k = 0; k <= top; ++k) {
    const int n_rows_below = (k == 0) ? 1 : count_by_dim[k - 1];
    if (field == Field::Q) {
      std::vector<detail::SparseRow> rows;
      for (int c : cells) {
        if (cw.dims[c] != k) continue;
        detail::SparseRow r;
        if (k == 0) {
          r.emplace_back(0, 1);
        } else {
          for (const auto& [f, s] : cw.faces[c]) {
            auto it = local.find(f);
            if (it == local.end())
              throw internal_error("betti: cell set not closed under faces at '" + cw.keys[c] + "'");
            r.emplace_back(it->second, s);
          }
          std::sort(r.begin(), r.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        rows.push_back(std::move(r));
      }
      rank_of_boundary[k] = detail::rank_fraction_free(std::move(rows));
    } else {
      const size_t words = static_cast<size_t>(n_rows_below + 63) / 64;
      std::vector<std::vector<uint64_t>> rows;
      for (int c : cells) {
        if (cw.dims[c] != k) continue;
        std::vector<uint64_t> r(words, 0);
        if (k == 0) {
          r[0] = 1;
        } else {
          for (const auto& [f, s] : cw.faces[c]) {
            (void)s;
            auto it = local.find(f);
            if (it == local.end())
              throw internal_error("betti: cell set not closed under faces at '" + cw.keys[c] + "'");
            r[static_cast<size_t>(it->second) / 64] ^= uint64_t{1} << (it->second % 64);
          }
        }
        rows.push_back(std::move(r));
      }
      rank_of_boundary[k] = detail::rank_gf2(std::move(rows));
    }
  }

  out.set(-1, 1 - rank_of_boundary[0]);
  for (int k = 0; k <= top; ++k)
    out.set(k, count_by_dim[k] - rank_of_boundary[k] - rank_of_boundary[k + 1]);
  return out;
}

inline BettiVector betti(const CwComplex& cw, Field field) {
  return betti(cw, field, full_cell_set(cw));
}

inline BettiVector betti(const SimplicialComplex& x, Field field) {
  if (x.is_void()) return BettiVector(field);
  if (x.is_trivial()) {
    BettiVector out(field);
    out.set(-1, 1);
    return out;
  }
  return betti(x.to_cw(), field);
}

// Betti numbers of a join from those of the factors; degree shifts by one.
inline BettiVector join_betti(const BettiVector& a, const BettiVector& b) {
  if (a.field() != b.field()) throw input_error("join_betti: mismatched coefficient fields");
  BettiVector out(a.field());
  for (const auto& [i, u] : a.entries())
    for (const auto& [j, v] : b.entries()) out.add(i + j + 1, u * v);
  return out;
}

// Betti numbers of a wedge: degreewise sums.  A single summand passes through
// unchanged (this is how the (-1)-sphere shows up as a join identity); with
// two or more summands each part must be the vector of a nonempty space.
inline BettiVector wedge_betti(const std::vector<BettiVector>& parts) {
  if (parts.empty()) return BettiVector();
  if (parts.size() == 1) return parts[0];
  BettiVector out(parts[0].field());
  for (const auto& p : parts) {
    if (p.field() != out.field()) throw input_error("wedge_betti: mismatched coefficient fields");
    if (p.at(-1) != 0) throw input_error("wedge_betti: summand is an empty space");
    for (const auto& [d, v] : p.entries()) out.add(d, v);
  }
  return out;
}

// Sphere of dimension n >= -1; the (-1)-sphere is the empty space, whose
// only reduced homology sits in degree -1.
inline BettiVector sphere_betti(int n, Field field) {
  if (n < -1) throw input_error("sphere_betti: dimension below -1");
  BettiVector out(field);
  out.set(n, 1);
  return out;
}

// n-fold iterated join of one space, on the level of Betti numbers.
inline BettiVector power_join_betti(const BettiVector& x, int n) {
  BettiVector out = sphere_betti(-1, x.field());
  for (int i = 0; i < n; ++i) out = join_betti(out, x);
  return out;
}

inline long long euler_characteristic(const CwComplex& cw, const CellSet& cells) {
  long long e = 0;
  for (int c : cells) e += (cw.dims[c] % 2 == 0) ? 1 : -1;
  return e;
}

}  // namespace msl
