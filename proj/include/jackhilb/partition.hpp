#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "jackhilb/rational.hpp"

namespace jackhilb {

/// Cell of a Young diagram, 1-based, English notation (row 1 is the longest).
struct Cell {
  int row = 1;
  int col = 1;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Integer partition: a weakly decreasing sequence of positive parts.
///
/// Ordering via operator<=> is lexicographic on the parts; the canonical
/// basis order used everywhere is the reverse of it (see EnumerateOrder).
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
    for (int p : parts_) size_ += p;
  }

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// Part lambda_i with 1-based index; zero past the end.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  /// m_i: number of parts equal to i.
  int multiplicity(int i) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
  }

  bool contains(const Cell& c) const {
    return c.row >= 1 && c.col >= 1 && c.row <= length() && c.col <= parts_[c.row - 1];
  }

  Partition conjugate() const {
    std::vector<int> out;
    if (!parts_.empty()) {
      out.resize(parts_.front());
      for (int p : parts_)
        for (int j = 0; j < p; ++j) ++out[j];
    }
    return Partition(std::move(out));
  }

  /// Partition with one extra part k inserted in sorted position.
  Partition with_part(int k) const {
    std::vector<int> out = parts_;
    out.insert(std::upper_bound(out.begin(), out.end(), k, std::greater<>()), k);
    return Partition(std::move(out));
  }

  /// Partition with one part equal to k removed; k must occur.
  Partition without_part(int k) const {
    std::vector<int> out = parts_;
    auto it = std::find(out.begin(), out.end(), k);
    if (it == out.end()) throw std::domain_error("without_part: no part equal to " + std::to_string(k));
    out.erase(it);
    return Partition(std::move(out));
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(size_);
    for (int r = 1; r <= length(); ++r)
      for (int c = 1; c <= parts_[r - 1]; ++c) out.push_back({r, c});
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Strict weak order placing partitions in reverse-lexicographic (canonical)
/// order: (3) before (2,1) before (1,1,1). Refines dominance, largest first.
struct EnumerateOrder {
  bool operator()(const Partition& a, const Partition& b) const { return a > b; }
};

struct Bipartition {
  Partition first;
  Partition second;

  int total() const { return first.size() + second.size(); }
  std::string to_string() const { return "[" + first.to_string() + "," + second.to_string() + "]"; }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Canonical bipartition order: |first| descending, then reverse-lex on each
/// factor in turn.
struct BipartitionOrder {
  bool operator()(const Bipartition& a, const Bipartition& b) const {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  }
};

inline void require_cell(const Partition& lambda, const Cell& c) {
  if (!lambda.contains(c))
    throw std::domain_error("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                            ") outside diagram " + lambda.to_string());
}

/// Cells strictly right of c in its row.
inline int arm(const Partition& lambda, const Cell& c) {
  require_cell(lambda, c);
  return lambda.part(c.row) - c.col;
}

/// Cells strictly below c in its column.
inline int leg(const Partition& lambda, const Cell& c) {
  require_cell(lambda, c);
  int below = 0;
  for (int r = c.row + 1; r <= lambda.length() && lambda.part(r) >= c.col; ++r) ++below;
  return below;
}

/// c_lambda(a, b) = prod over cells of a*(leg+1) + b*arm.
inline Rational c_weight(const Partition& lambda, const Rational& a, const Rational& b) {
  Rational result = 1;
  for (const Cell& c : lambda.cells()) result *= a * (leg(lambda, c) + 1) + b * arm(lambda, c);
  return result;
}

/// c'_lambda(a, b) = prod over cells of a*leg + b*(arm+1).
inline Rational c_prime_weight(const Partition& lambda, const Rational& a, const Rational& b) {
  Rational result = 1;
  for (const Cell& c : lambda.cells()) result *= a * leg(lambda, c) + b * (arm(lambda, c) + 1);
  return result;
}

/// z_lambda = prod_i i^{m_i} m_i!, the centralizer order of cycle type lambda.
inline Rational z_factor(const Partition& lambda) {
  Integer z = 1;
  const auto& p = lambda.parts();
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    for (std::size_t m = 1; m <= j - i; ++m) z *= Integer(p[i]) * Integer(m);
    i = j;
  }
  return Rational(z);
}

/// mu <= lambda in dominance order. Both must have the same size.
inline bool dominance_leq(const Partition& mu, const Partition& lambda) {
  if (mu.size() != lambda.size())
    throw std::domain_error("dominance_leq: sizes differ (" + mu.to_string() + " vs " +
                            lambda.to_string() + ")");
  int sm = 0, sl = 0;
  const int len = std::max(mu.length(), lambda.length());
  for (int i = 1; i <= len; ++i) {
    sm += mu.part(i);
    sl += lambda.part(i);
    if (sm > sl) return false;
  }
  return true;
}

namespace detail {

inline void build_partitions(int remaining, int max_part, std::vector<int>& prefix,
                             std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    prefix.push_back(k);
    build_partitions(remaining - k, k, prefix, out);
    prefix.pop_back();
  }
}

struct PartitionTable {
  std::vector<Partition> list;
  std::map<Partition, std::size_t> index;
};

inline const PartitionTable& partition_table(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const PartitionTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  auto table = std::make_unique<PartitionTable>();
  std::vector<int> prefix;
  build_partitions(n, n, prefix, table->list);
  for (std::size_t i = 0; i < table->list.size(); ++i) table->index.emplace(table->list[i], i);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(table));
  return *it->second;
}

}  // namespace detail

/// All partitions of n in reverse-lexicographic order.
inline const std::vector<Partition>& enumerate_partitions(int n) {
  if (n < 0) throw std::domain_error("enumerate_partitions: negative size");
  return detail::partition_table(n).list;
}

/// Position of lambda in enumerate_partitions(|lambda|).
inline std::size_t partition_index(const Partition& lambda) {
  return detail::partition_table(lambda.size()).index.at(lambda);
}

/// All (l1, l2) with |l1| + |l2| = n, ordered by BipartitionOrder.
inline std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 0) throw std::domain_error("enumerate_bipartitions: negative size");
  std::vector<Bipartition> out;
  for (int k = n; k >= 0; --k)
    for (const Partition& a : enumerate_partitions(k))
      for (const Partition& b : enumerate_partitions(n - k)) out.push_back({a, b});
  return out;
}

}  // namespace jackhilb
