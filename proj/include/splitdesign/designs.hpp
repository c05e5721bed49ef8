#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitdesign/group.hpp"
#include "splitdesign/rational.hpp"

namespace splitdesign {

/// Raised when a document or in-memory object violates its structural rules.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a bounded search or enumeration exceeds its configured budget,
/// as opposed to completing and finding nothing.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using PointSet = std::vector<int>;  // strictly increasing point indices

/// One key's worth of encodings: an ordered tuple of pairwise disjoint,
/// nonempty point sets, one per source.
struct Block {
  std::vector<PointSet> parts;

  int size() const {
    int n = 0;
    for (const auto& p : parts) n += static_cast<int>(p.size());
    return n;
  }

  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

namespace detail {

inline PointSet canonical_point_set(PointSet s, int v, const char* what) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw ValidationError(std::string(what) + ": repeated point in a set");
  if (!s.empty() && (s.front() < 0 || s.back() >= v))
    throw ValidationError(std::string(what) + ": point index out of range");
  return s;
}

inline void require_disjoint_parts(const Block& b, const char* what) {
  std::vector<int> all;
  for (const auto& p : b.parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw ValidationError(std::string(what) + ": parts of a block are not pairwise disjoint");
}

}  // namespace detail

/// A splitting set system: v points 0..v-1 and an ordered list of blocks.
/// Immutable once built; construction canonicalizes each part to sorted order
/// and enforces disjointness, nonemptiness and point range.
class SplittingSystem {
 public:
  SplittingSystem(int v, std::vector<Block> blocks) : v_(v), blocks_(std::move(blocks)) {
    if (v_ < 1) throw ValidationError("SplittingSystem: v must be >= 1");
    if (blocks_.empty()) throw ValidationError("SplittingSystem: at least one block required");
    m_ = static_cast<int>(blocks_.front().parts.size());
    if (m_ < 2) throw ValidationError("SplittingSystem: m must be >= 2");
    for (auto& blk : blocks_) {
      if (static_cast<int>(blk.parts.size()) != m_)
        throw ValidationError("SplittingSystem: blocks disagree on source count");
      for (auto& part : blk.parts) {
        if (part.empty()) throw ValidationError("SplittingSystem: empty part in a block");
        part = detail::canonical_point_set(std::move(part), v_, "SplittingSystem");
      }
      detail::require_disjoint_parts(blk, "SplittingSystem");
    }
  }

  int v() const { return v_; }
  int m() const { return m_; }
  int b() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(int k) const { return blocks_.at(static_cast<size_t>(k)); }

  friend bool operator==(const SplittingSystem& a, const SplittingSystem& b) {
    return a.v_ == b.v_ && a.blocks_ == b.blocks_;
  }

 private:
  int v_;
  int m_ = 0;
  std::vector<Block> blocks_;
};

/// Returns the common part size c when every part of every block has the same
/// size, and nullopt otherwise.
inline std::optional<int> c_splitting_profile(const SplittingSystem& sys) {
  int c = static_cast<int>(sys.blocks().front().parts.front().size());
  for (const auto& blk : sys.blocks())
    for (const auto& part : blk.parts)
      if (static_cast<int>(part.size()) != c) return std::nullopt;
  return c;
}

/// Exact probability vector over the m sources.
class SourceDistribution {
 public:
  explicit SourceDistribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("SourceDistribution: empty");
    Rational sum = 0;
    for (const auto& p : probs_) {
      if (p < Rational(0)) throw ValidationError("SourceDistribution: negative probability");
      sum += p;
    }
    if (sum != Rational(1)) throw ValidationError("SourceDistribution: probabilities must sum to 1");
  }

  static SourceDistribution uniform(int m) {
    if (m < 1) throw ValidationError("SourceDistribution: m must be >= 1");
    return SourceDistribution(std::vector<Rational>(static_cast<size_t>(m), Rational(1, m)));
  }

  /// Probability 1 on source j, 0 elsewhere.
  static SourceDistribution point_mass(int m, int j) {
    std::vector<Rational> p(static_cast<size_t>(m), Rational(0));
    p.at(static_cast<size_t>(j)) = 1;
    return SourceDistribution(std::move(p));
  }

  int sources() const { return static_cast<int>(probs_.size()); }
  const Rational& prob(int j) const { return probs_.at(static_cast<size_t>(j)); }
  const std::vector<Rational>& probs() const { return probs_; }

  friend bool operator==(const SourceDistribution&, const SourceDistribution&) = default;

 private:
  std::vector<Rational> probs_;
};

/// An AMD code: an abelian group together with pairwise disjoint, nonempty
/// encoding sets, one per source. Encoding sets are kept sorted by element
/// enumeration index.
class AmdCode {
 public:
  AmdCode(AbelianGroup group, std::vector<std::vector<GroupElement>> encodings)
      : group_(std::move(group)), encodings_(std::move(encodings)) {
    if (encodings_.empty()) throw ValidationError("AmdCode: no encoding sets");
    std::vector<long long> seen;
    for (auto& set : encodings_) {
      if (set.empty()) throw ValidationError("AmdCode: empty encoding set");
      for (auto& e : set) e = group_normalize(group_, e);
      std::sort(set.begin(), set.end(), [&](const GroupElement& a, const GroupElement& b) {
        return element_index(group_, a) < element_index(group_, b);
      });
      for (const auto& e : set) seen.push_back(element_index(group_, e));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw ValidationError("AmdCode: encoding sets are not pairwise disjoint");
  }

  const AbelianGroup& group() const { return group_; }
  int sources() const { return static_cast<int>(encodings_.size()); }
  const std::vector<std::vector<GroupElement>>& encodings() const { return encodings_; }
  const std::vector<GroupElement>& encoding(int s) const {
    return encodings_.at(static_cast<size_t>(s));
  }

  friend bool operator==(const AmdCode&, const AmdCode&) = default;

 private:
  AbelianGroup group_;
  std::vector<std::vector<GroupElement>> encodings_;
};

/// A group-divisible design: points, a partition into design groups, and
/// blocks of a uniform size. The pair-coverage conditions are checked by
/// verify::check_gdd, not here.
class Gdd {
 public:
  Gdd(int points, std::vector<std::vector<int>> design_groups, int block_size,
      std::vector<std::vector<int>> blocks)
      : points_(points),
        design_groups_(std::move(design_groups)),
        block_size_(block_size),
        blocks_(std::move(blocks)) {
    if (points_ < 1) throw ValidationError("Gdd: points must be >= 1");
    if (block_size_ < 2) throw ValidationError("Gdd: block size must be >= 2");
    std::vector<int> cover;
    for (auto& g : design_groups_) {
      g = detail::canonical_point_set(std::move(g), points_, "Gdd design group");
      if (g.empty()) throw ValidationError("Gdd: empty design group");
      cover.insert(cover.end(), g.begin(), g.end());
    }
    std::sort(cover.begin(), cover.end());
    if (static_cast<int>(cover.size()) != points_ ||
        std::adjacent_find(cover.begin(), cover.end()) != cover.end())
      throw ValidationError("Gdd: design groups do not partition the point set");
    for (auto& blk : blocks_) {
      blk = detail::canonical_point_set(std::move(blk), points_, "Gdd block");
      if (static_cast<int>(blk.size()) != block_size_)
        throw ValidationError("Gdd: block size mismatch");
    }
  }

  int points() const { return points_; }
  const std::vector<std::vector<int>>& design_groups() const { return design_groups_; }
  int block_size() const { return block_size_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  /// Design-group index of each point.
  std::vector<int> group_of_point() const {
    std::vector<int> g(static_cast<size_t>(points_), -1);
    for (size_t i = 0; i < design_groups_.size(); ++i)
      for (int p : design_groups_[i]) g[static_cast<size_t>(p)] = static_cast<int>(i);
    return g;
  }

  friend bool operator==(const Gdd&, const Gdd&) = default;

 private:
  int points_;
  std::vector<std::vector<int>> design_groups_;
  int block_size_;
  std::vector<std::vector<int>> blocks_;
};

/// A GDD whose blocks carry a position for each point.
class OrderedGdd {
 public:
  OrderedGdd(int points, std::vector<std::vector<int>> design_groups, int block_size,
             std::vector<std::vector<int>> ordered_blocks)
      : skeleton_(points, std::move(design_groups), block_size, strip_order(ordered_blocks)),
        ordered_blocks_(std::move(ordered_blocks)) {}

  int points() const { return skeleton_.points(); }
  const std::vector<std::vector<int>>& design_groups() const { return skeleton_.design_groups(); }
  int block_size() const { return skeleton_.block_size(); }
  const std::vector<std::vector<int>>& ordered_blocks() const { return ordered_blocks_; }

  /// The underlying unordered GDD.
  const Gdd& skeleton() const { return skeleton_; }

  friend bool operator==(const OrderedGdd&, const OrderedGdd&) = default;

 private:
  static std::vector<std::vector<int>> strip_order(const std::vector<std::vector<int>>& ordered) {
    std::vector<std::vector<int>> out = ordered;
    for (auto& blk : out) std::sort(blk.begin(), blk.end());
    return out;
  }

  Gdd skeleton_;
  std::vector<std::vector<int>> ordered_blocks_;
};

/// A splitting system that still remembers the design groups it was built
/// over; the block list may be empty (a degenerate GDD with no blocks).
struct SplittingGdd {
  int v = 0;
  int m = 0;
  std::vector<Block> blocks;
  std::vector<std::vector<int>> design_groups;

  SplittingSystem to_system() const { return SplittingSystem(v, blocks); }
};

/// Parameter identities for a (v, m x c, lambda)-splitting BIBD.
struct BibdParams {
  long long v = 0, m = 0, c = 0, lambda = 0;
  Rational r;  // replication number, lambda(v-1)/((m-1)c)
  Rational b;  // block count, lambda v(v-1)/(m(m-1)c^2)
};

inline BibdParams bibd_params(long long v, long long m, long long c, long long lambda = 1) {
  if (v < 2 || m < 2 || c < 1 || lambda < 1) throw ValidationError("bibd_params: bad parameters");
  BibdParams p;
  p.v = v;
  p.m = m;
  p.c = c;
  p.lambda = lambda;
  p.r = Rational(lambda * (v - 1), (m - 1) * c);
  p.b = Rational(lambda * v, m * c) * Rational(v - 1, (m - 1) * c);
  return p;
}

/// lambda implied by a block count: b m c (mc - c) / (v (v-1)).
inline Rational bibd_lambda_from_blocks(long long v, long long m, long long c, long long b) {
  return Rational(b * m * c, v) * Rational(m * c - c, v - 1);
}

}  // namespace splitdesign
