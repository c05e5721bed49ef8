#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "splitdesign/designs.hpp"

namespace splitdesign {

struct BibdCheck {
  bool is_bibd = false;
  std::optional<long long> lambda;  // set when pair coverage is constant
  std::optional<int> c;             // set when the system is c-splitting
  bool has_repeated_blocks = false;
  std::optional<std::array<int, 2>> witness_pair;  // a pair whose coverage breaks constancy
  std::optional<long long> witness_count;
  std::string report;
};

namespace vdetail {

/// coverage[p][q] = number of blocks placing p and q in different parts.
inline std::vector<std::vector<long long>> cross_pair_coverage(int v,
                                                               const std::vector<Block>& blocks) {
  std::vector<std::vector<long long>> cov(static_cast<size_t>(v),
                                          std::vector<long long>(static_cast<size_t>(v), 0));
  for (const auto& blk : blocks)
    for (size_t j = 0; j < blk.parts.size(); ++j)
      for (size_t jp = j + 1; jp < blk.parts.size(); ++jp)
        for (int p : blk.parts[j])
          for (int q : blk.parts[jp]) {
            cov[static_cast<size_t>(p)][static_cast<size_t>(q)]++;
            cov[static_cast<size_t>(q)][static_cast<size_t>(p)]++;
          }
  return cov;
}

}  // namespace vdetail

/// Checks the splitting-BIBD property: uniform part size c, and a constant
/// number lambda of blocks separating every point pair into distinct parts.
inline BibdCheck check_splitting_bibd(const SplittingSystem& sys) {
  BibdCheck out;
  out.c = c_splitting_profile(sys);

  std::map<Block, int> seen;
  for (const auto& blk : sys.blocks()) out.has_repeated_blocks |= ++seen[blk] > 1;

  auto cov = vdetail::cross_pair_coverage(sys.v(), sys.blocks());
  std::map<long long, long long> histogram;
  for (int p = 0; p < sys.v(); ++p)
    for (int q = p + 1; q < sys.v(); ++q)
      histogram[cov[static_cast<size_t>(p)][static_cast<size_t>(q)]]++;
  long long mode = histogram.begin()->first;
  for (const auto& [count, freq] : histogram)
    if (freq > histogram[mode]) mode = count;

  bool constant = histogram.size() == 1;
  if (!constant) {
    for (int p = 0; p < sys.v() && !out.witness_pair; ++p)
      for (int q = p + 1; q < sys.v(); ++q)
        if (cov[static_cast<size_t>(p)][static_cast<size_t>(q)] != mode) {
          out.witness_pair = {p, q};
          out.witness_count = cov[static_cast<size_t>(p)][static_cast<size_t>(q)];
          break;
        }
  }

  if (constant) out.lambda = mode;
  out.is_bibd = constant && mode >= 1 && out.c.has_value();
  if (!constant)
    out.report = "pair {" + std::to_string((*out.witness_pair)[0]) + "," +
                 std::to_string((*out.witness_pair)[1]) + "} covered " +
                 std::to_string(*out.witness_count) + " times vs " + std::to_string(mode) +
                 " for most pairs";
  else if (!out.c)
    out.report = "pair coverage is constant but part sizes are not uniform";
  else if (mode < 1)
    out.report = "no pair is ever separated";
  else
    out.report = "ok";
  return out;
}

struct GddCheck {
  bool is_gdd = false;
  std::map<int, int> type;  // design-group size -> multiplicity
  std::string type_str;     // exponential notation, e.g. "12^3"
  std::optional<std::array<int, 2>> witness_pair;
  std::string report;
};

/// Checks the GDD covering conditions: cross-group pairs exactly once,
/// within-group pairs never (which also forbids a block meeting a design
/// group twice).
inline GddCheck check_gdd(const Gdd& g) {
  GddCheck out;
  for (const auto& grp : g.design_groups()) out.type[static_cast<int>(grp.size())]++;
  for (const auto& [size, count] : out.type) {
    if (!out.type_str.empty()) out.type_str += " ";
    out.type_str += std::to_string(size) + "^" + std::to_string(count);
  }

  auto group_of = g.group_of_point();
  std::vector<std::vector<long long>> cov(static_cast<size_t>(g.points()),
                                          std::vector<long long>(static_cast<size_t>(g.points()), 0));
  for (const auto& blk : g.blocks())
    for (size_t i = 0; i < blk.size(); ++i)
      for (size_t jp = i + 1; jp < blk.size(); ++jp) {
        cov[static_cast<size_t>(blk[i])][static_cast<size_t>(blk[jp])]++;
        cov[static_cast<size_t>(blk[jp])][static_cast<size_t>(blk[i])]++;
      }

  out.is_gdd = true;
  for (int p = 0; p < g.points() && out.is_gdd; ++p)
    for (int q = p + 1; q < g.points(); ++q) {
      long long want = group_of[static_cast<size_t>(p)] == group_of[static_cast<size_t>(q)] ? 0 : 1;
      if (cov[static_cast<size_t>(p)][static_cast<size_t>(q)] != want) {
        out.is_gdd = false;
        out.witness_pair = {p, q};
        out.report = "pair {" + std::to_string(p) + "," + std::to_string(q) + "} covered " +
                     std::to_string(cov[static_cast<size_t>(p)][static_cast<size_t>(q)]) +
                     " times, expected " + std::to_string(want);
        break;
      }
    }
  if (out.is_gdd) out.report = "ok";
  return out;
}

using PointPermutation = std::vector<int>;  // image of each point

inline bool is_permutation_of_points(const PointPermutation& perm, int v) {
  if (static_cast<int>(perm.size()) != v) return false;
  std::vector<char> hit(static_cast<size_t>(v), 0);
  for (int p : perm) {
    if (p < 0 || p >= v || hit[static_cast<size_t>(p)]) return false;
    hit[static_cast<size_t>(p)] = 1;
  }
  return true;
}

/// True iff the permutation maps the block multiset onto itself, respecting
/// the part order within each block.
inline bool is_automorphism(const SplittingSystem& sys, const PointPermutation& perm) {
  if (!is_permutation_of_points(perm, sys.v()))
    throw ValidationError("is_automorphism: not a permutation of the points");
  std::map<Block, int> count;
  for (const auto& blk : sys.blocks()) count[blk]++;
  for (const auto& blk : sys.blocks()) {
    Block image;
    for (const auto& part : blk.parts) {
      PointSet img;
      img.reserve(part.size());
      for (int p : part) img.push_back(perm[static_cast<size_t>(p)]);
      std::sort(img.begin(), img.end());
      image.parts.push_back(std::move(img));
    }
    auto it = count.find(image);
    if (it == count.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

/// The action of G on the points 0..|G|-1 identified with element indices:
/// action[g][p] = index of (element p + element g).
inline std::vector<PointPermutation> translation_action(const AbelianGroup& g) {
  long long n = g.order();
  if (n > kEnumerationCap) throw std::length_error("translation_action: group order exceeds cap");
  auto elems = enumerate_elements(g);
  std::vector<PointPermutation> action(static_cast<size_t>(n));
  for (long long gi = 0; gi < n; ++gi) {
    action[static_cast<size_t>(gi)].resize(static_cast<size_t>(n));
    for (long long p = 0; p < n; ++p)
      action[static_cast<size_t>(gi)][static_cast<size_t>(p)] = static_cast<int>(
          element_index(g, group_add(g, elems[static_cast<size_t>(p)], elems[static_cast<size_t>(gi)])));
  }
  return action;
}

struct GroupActionCheck {
  bool ok = false;
  bool homomorphism = false;
  bool regular = false;
  bool all_automorphisms = false;
  bool semiregular = false;                   // every block orbit has size |G|
  std::vector<std::vector<int>> block_orbits;  // block indices, grouped by orbit
  std::string report;
};

/// Checks that an explicit action table makes the system group generated:
/// the table is homomorphism-shaped (fully for |G| <= 512, sampled above),
/// every action is an automorphism, and the point action is regular. Also
/// computes the block orbits and whether the action is semiregular on them.
inline GroupActionCheck check_group_generated(const SplittingSystem& sys, const AbelianGroup& g,
                                              const std::vector<PointPermutation>& action,
                                              std::uint64_t sample_seed = 0x5EED) {
  if (g.order() != sys.v())
    throw ValidationError("check_group_generated: |G| must equal the point count");
  const int n = sys.v();
  GroupActionCheck out;
  if (static_cast<int>(action.size()) != n) {
    out.report = "action table has wrong element count";
    return out;
  }
  for (const auto& perm : action)
    if (!is_permutation_of_points(perm, n)) {
      out.report = "action entry is not a point permutation";
      return out;
    }

  auto compose_matches = [&](long long gi, long long hi) {
    long long sum = element_index(g, group_add(g, element_at(g, gi), element_at(g, hi)));
    const auto& pg = action[static_cast<size_t>(gi)];
    const auto& ph = action[static_cast<size_t>(hi)];
    const auto& ps = action[static_cast<size_t>(sum)];
    for (int p = 0; p < n; ++p)
      if (ps[static_cast<size_t>(p)] != ph[static_cast<size_t>(pg[static_cast<size_t>(p)])]) return false;
    return true;
  };
  out.homomorphism = true;
  if (n <= 512) {
    for (long long gi = 0; gi < n && out.homomorphism; ++gi)
      for (long long hi = 0; hi < n; ++hi)
        if (!compose_matches(gi, hi)) {
          out.homomorphism = false;
          break;
        }
  } else {
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<long long> pick(0, n - 1);
    for (int trial = 0; trial < 4096 && out.homomorphism; ++trial)
      out.homomorphism = compose_matches(pick(rng), pick(rng));
  }

  out.regular = true;
  for (int p = 0; p < n && out.regular; ++p) {
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (const auto& perm : action) {
      int q = perm[static_cast<size_t>(p)];
      if (hit[static_cast<size_t>(q)]) {
        out.regular = false;
        break;
      }
      hit[static_cast<size_t>(q)] = 1;
    }
  }

  std::map<Block, int> block_index;
  for (int k = 0; k < sys.b(); ++k) block_index.emplace(sys.block(k), k);

  out.all_automorphisms = true;
  std::vector<int> orbit_of(static_cast<size_t>(sys.b()), -1);
  for (int k = 0; k < sys.b() && out.all_automorphisms; ++k) {
    if (orbit_of[static_cast<size_t>(k)] >= 0) continue;
    int orbit_id = static_cast<int>(out.block_orbits.size());
    std::vector<int> members;
    for (const auto& perm : action) {
      Block image;
      for (const auto& part : sys.block(k).parts) {
        PointSet img;
        img.reserve(part.size());
        for (int p : part) img.push_back(perm[static_cast<size_t>(p)]);
        std::sort(img.begin(), img.end());
        image.parts.push_back(std::move(img));
      }
      auto it = block_index.find(image);
      if (it == block_index.end()) {
        out.all_automorphisms = false;
        out.report = "image of block " + std::to_string(k) + " is not a block";
        break;
      }
      if (orbit_of[static_cast<size_t>(it->second)] < 0) {
        orbit_of[static_cast<size_t>(it->second)] = orbit_id;
        members.push_back(it->second);
      }
    }
    if (out.all_automorphisms) out.block_orbits.push_back(std::move(members));
  }

  out.ok = out.homomorphism && out.regular && out.all_automorphisms;
  if (out.ok) {
    out.semiregular = true;
    for (const auto& orbit : out.block_orbits)
      if (static_cast<long long>(orbit.size()) != g.order()) out.semiregular = false;
    out.report = "ok";
  } else if (out.report.empty()) {
    out.report = !out.homomorphism ? "action table is not homomorphism-shaped"
                                   : "point action is not regular";
  }
  return out;
}

struct EquitableCheck {
  bool ok = false;
  std::vector<std::vector<long long>> table;  // [point][position] block counts
  std::optional<int> witness_point;
};

namespace vdetail {
inline std::vector<std::vector<long long>> position_counts(int v, int m,
                                                           const std::vector<Block>& blocks) {
  std::vector<std::vector<long long>> table(static_cast<size_t>(v),
                                            std::vector<long long>(static_cast<size_t>(m), 0));
  for (const auto& blk : blocks)
    for (size_t j = 0; j < blk.parts.size(); ++j)
      for (int p : blk.parts[j]) table[static_cast<size_t>(p)][j]++;
  return table;
}
}  // namespace vdetail

/// A system is equitably ordered when, for every point, the number of blocks
/// placing it in position j does not depend on j.
inline EquitableCheck check_equitably_ordered(const SplittingSystem& sys) {
  EquitableCheck out;
  out.table = vdetail::position_counts(sys.v(), sys.m(), sys.blocks());
  out.ok = true;
  for (int p = 0; p < sys.v(); ++p)
    for (int j = 1; j < sys.m(); ++j)
      if (out.table[static_cast<size_t>(p)][static_cast<size_t>(j)] !=
          out.table[static_cast<size_t>(p)][0]) {
        out.ok = false;
        if (!out.witness_point) out.witness_point = p;
      }
  return out;
}

/// Necessary congruence for an equitable ordering: v = 1 mod m(m-1)c^2.
inline bool equitable_necessary_condition(long long v, long long m, long long c) {
  if (m < 2 || c < 1) throw ValidationError("equitable_necessary_condition: m >= 2 and c >= 1 required");
  return (v - 1) % (m * (m - 1) * c * c) == 0;
}

}  // namespace splitdesign
