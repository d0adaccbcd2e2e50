#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msl/errors.hpp"

namespace msl {

// Finite poset presented by elements and covering pairs.  Element ids are
// opaque strings; their construction order fixes the tie-break order used by
// every enumeration in the library, so identical inputs always produce
// identical outputs.
class FinitePoset {
 public:
  FinitePoset() = default;

  FinitePoset(std::vector<std::string> elements,
              const std::vector<std::pair<std::string, std::string>>& covers)
      : ids_(std::move(elements)) {
    for (int i = 0; i < size(); ++i) {
      if (!index_.emplace(ids_[i], i).second)
        throw input_error("poset: duplicate element id '" + ids_[i] + "'");
    }
    std::vector<std::pair<int, int>> raw;
    raw.reserve(covers.size());
    for (const auto& [lo, hi] : covers) raw.emplace_back(index_of(lo), index_of(hi));
    init_from_covers(raw);
  }

  FinitePoset(std::vector<std::string> elements, std::vector<std::pair<int, int>> covers)
      : ids_(std::move(elements)) {
    for (int i = 0; i < size(); ++i) {
      if (!index_.emplace(ids_[i], i).second)
        throw input_error("poset: duplicate element id '" + ids_[i] + "'");
    }
    init_from_covers(std::move(covers));
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& elements() const { return ids_; }
  const std::string& id(int i) const { return ids_.at(i); }

  bool has(const std::string& id) const { return index_.count(id) != 0; }

  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw input_error("poset: unknown element id '" + id + "'");
    return it->second;
  }

  bool leq(int a, int b) const { return leq_.at(a).at(b) != 0; }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  // Covers as (lower, upper) pairs, in construction order.
  const std::vector<std::pair<int, int>>& cover_pairs() const { return covers_; }
  const std::vector<int>& upper_covers(int i) const { return up_covers_.at(i); }
  const std::vector<int>& lower_covers(int i) const { return down_covers_.at(i); }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (down_covers_[i].empty()) out.push_back(i);
    return out;
  }

  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (up_covers_[i].empty()) out.push_back(i);
    return out;
  }

  std::optional<int> bottom() const {
    auto m = minimal_elements();
    return m.size() == 1 ? std::optional<int>(m[0]) : std::nullopt;
  }

  std::optional<int> top() const {
    auto m = maximal_elements();
    return m.size() == 1 ? std::optional<int>(m[0]) : std::nullopt;
  }

  // {x : x >= q} (or > q), ascending by index.
  std::vector<int> up_set(int q, bool strict = false) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (leq(q, i) && (!strict || i != q)) out.push_back(i);
    return out;
  }

  std::vector<int> down_set(int p, bool strict = false) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (leq(i, p) && (!strict || i != p)) out.push_back(i);
    return out;
  }

  std::vector<int> open_interval(int a, int b) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (less(a, i) && less(i, b)) out.push_back(i);
    return out;
  }

  // Induced subposet on `keep` (kept in construction order); the covering
  // relation is recomputed from scratch, not inherited.
  FinitePoset subposet(std::vector<int> keep) const {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<std::string> els;
    els.reserve(keep.size());
    for (int i : keep) els.push_back(id(i));
    const int m = static_cast<int>(keep.size());
    std::vector<std::pair<int, int>> cov;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (a == b || !less(keep[a], keep[b])) continue;
        bool covering = true;
        for (int c = 0; c < m && covering; ++c)
          if (c != a && c != b && less(keep[a], keep[c]) && less(keep[c], keep[b]))
            covering = false;
        if (covering) cov.emplace_back(a, b);
      }
    return FinitePoset(std::move(els), std::move(cov));
  }

  // All nonempty chains.  Each chain is listed as its increasing tuple of
  // element indices; the list is in lexicographic order of those tuples.
  std::vector<std::vector<int>> chains() const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    for (int i = 0; i < size(); ++i) extend_chain(i, cur, out);
    return out;
  }

  // Longest-chain height from the minimal elements, plus a flag telling
  // whether every cover raises it by exactly one (i.e. the poset is graded).
  std::pair<std::vector<int>, bool> grading() const {
    std::vector<int> rank(size(), 0);
    for (int i : topo_) {
      for (int j : down_covers_[i]) rank[i] = std::max(rank[i], rank[j] + 1);
    }
    bool graded = true;
    for (const auto& [lo, hi] : covers_)
      if (rank[hi] != rank[lo] + 1) graded = false;
    return {rank, graded};
  }

  // Moebius function of the interval [a, b]; requires a <= b.
  long long mobius(int a, int b) const {
    if (!leq(a, b)) throw input_error("mobius: '" + id(a) + "' is not below '" + id(b) + "'");
    auto key = std::make_pair(a, b);
    auto it = mobius_memo_.find(key);
    if (it != mobius_memo_.end()) return it->second;
    long long value = 1;
    if (a != b) {
      value = 0;
      for (int q = 0; q < size(); ++q)
        if (leq(a, q) && less(q, b)) value -= mobius(a, q);
    }
    mobius_memo_.emplace(key, value);
    return value;
  }

 private:
  void init_from_covers(std::vector<std::pair<int, int>> covers) {
    const int n = size();
    for (const auto& [lo, hi] : covers) {
      if (lo < 0 || lo >= n || hi < 0 || hi >= n) throw input_error("poset: cover index out of range");
      if (lo == hi) throw input_error("poset: cover pair with equal endpoints '" + ids_[lo] + "'");
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
    covers_ = std::move(covers);
    up_covers_.assign(n, {});
    down_covers_.assign(n, {});
    for (const auto& [lo, hi] : covers_) {
      up_covers_[lo].push_back(hi);
      down_covers_[hi].push_back(lo);
    }

    // Topological order; rejects cyclic cover data.
    std::vector<int> indeg(n, 0);
    for (const auto& [lo, hi] : covers_) indeg[hi] += 1;
    std::vector<int> queue;
    for (int i = 0; i < n; ++i)
      if (indeg[i] == 0) queue.push_back(i);
    for (size_t head = 0; head < queue.size(); ++head) {
      int i = queue[head];
      topo_.push_back(i);
      for (int j : up_covers_[i])
        if (--indeg[j] == 0) queue.push_back(j);
    }
    if (static_cast<int>(topo_.size()) != n) throw input_error("poset: cover relation has a cycle");

    leq_.assign(n, std::vector<char>(n, 0));
    for (int k = n - 1; k >= 0; --k) {
      int i = topo_[k];
      leq_[i][i] = 1;
      for (int j : up_covers_[i])
        for (int t = 0; t < n; ++t)
          if (leq_[j][t]) leq_[i][t] = 1;
    }

    // Covers must be irredundant: no listed pair may follow from the others.
    for (const auto& [lo, hi] : covers_)
      for (int c = 0; c < n; ++c)
        if (c != lo && c != hi && leq(lo, c) && leq(c, hi))
          throw input_error("poset: pair ('" + ids_[lo] + "','" + ids_[hi] +
                            "') is not a cover: '" + ids_[c] + "' lies between");
  }

  void extend_chain(int last, std::vector<int>& cur, std::vector<std::vector<int>>& out) const {
    cur.push_back(last);
    out.push_back(cur);
    for (int j = 0; j < size(); ++j)
      if (less(last, j)) extend_chain(j, cur, out);
    cur.pop_back();
  }

  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_covers_, down_covers_;
  std::vector<std::vector<char>> leq_;
  std::vector<int> topo_;
  mutable std::map<std::pair<int, int>, long long> mobius_memo_;
};

// Poset together with a rank function that rises by exactly one along covers.
struct RankedPoset {
  FinitePoset poset;
  std::vector<int> rank;

  static RankedPoset graded(FinitePoset p) {
    auto [rank, ok] = p.grading();
    if (!ok) throw input_error("poset is not graded: some cover skips a rank");
    return RankedPoset{std::move(p), std::move(rank)};
  }
};

namespace detail {

// Refinement signature used to prune the isomorphism search: per element,
// invariants any isomorphism must preserve.
inline std::vector<long long> iso_signature(const FinitePoset& p) {
  const int n = p.size();
  auto [rank, graded] = p.grading();
  (void)graded;
  std::vector<long long> sig(n);
  for (int i = 0; i < n; ++i) {
    long long down = static_cast<long long>(p.down_set(i, true).size());
    long long up = static_cast<long long>(p.up_set(i, true).size());
    sig[i] = ((rank[i] * 101 + static_cast<long long>(p.lower_covers(i).size())) * 101 +
              static_cast<long long>(p.upper_covers(i).size())) *
                 1000003 +
             down * 997 + up;
  }
  // One round of neighbour refinement: fold in the sorted signatures of covers.
  std::vector<long long> out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<long long> nb;
    for (int j : p.lower_covers(i)) nb.push_back(sig[j] * 2);
    for (int j : p.upper_covers(i)) nb.push_back(sig[j] * 2 + 1);
    std::sort(nb.begin(), nb.end());
    long long h = sig[i];
    for (long long v : nb) h = h * 1315423911LL + v;
    out[i] = h;
  }
  return out;
}

}  // namespace detail

// Searches for an order isomorphism A -> B by backtracking over
// signature-compatible candidates.  Returns the image vector (indexed by A's
// elements) or nothing.  Intended for the small lattices handled here.
inline std::optional<std::vector<int>> poset_isomorphism(const FinitePoset& a,
                                                         const FinitePoset& b) {
  if (a.size() != b.size()) return std::nullopt;
  const int n = a.size();
  auto sa = detail::iso_signature(a);
  auto sb = detail::iso_signature(b);
  {
    auto ca = sa, cb = sb;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return std::nullopt;
  }

  // Assign elements in order of fewest candidates first.
  std::vector<std::vector<int>> candidates(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sa[i] == sb[j]) candidates[i].push_back(j);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return candidates[x].size() < candidates[y].size(); });

  std::vector<int> image(n, -1), used(n, 0);
  auto consistent = [&](int i, int j) {
    for (int k = 0; k < n; ++k) {
      if (image[k] < 0) continue;
      if (a.leq(i, k) != b.leq(j, image[k])) return false;
      if (a.leq(k, i) != b.leq(image[k], j)) return false;
    }
    return true;
  };
  std::vector<int> stack_pos(n, 0);
  int depth = 0;
  while (depth >= 0 && depth < n) {
    int i = order[depth];
    bool advanced = false;
    while (stack_pos[depth] < static_cast<int>(candidates[i].size())) {
      int j = candidates[i][stack_pos[depth]++];
      if (used[j] || !consistent(i, j)) continue;
      image[i] = j;
      used[j] = 1;
      ++depth;
      advanced = true;
      break;
    }
    if (!advanced) {
      stack_pos[depth] = 0;
      --depth;
      if (depth >= 0) {
        int i2 = order[depth];
        used[image[i2]] = 0;
        image[i2] = -1;
      }
    }
  }
  if (depth < 0) return std::nullopt;
  return image;
}

}  // namespace msl
