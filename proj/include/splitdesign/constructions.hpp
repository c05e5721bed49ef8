#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "splitdesign/designs.hpp"
#include "splitdesign/ordering.hpp"
#include "splitdesign/verify.hpp"

namespace splitdesign {

struct AmdDevelopment {
  SplittingSystem system;
  bool has_repeated_blocks = false;  // some translate collides; orbit is short
};

/// The development of an AMD code: points are element indices of the group,
/// and there is one block (g + A(s_1), ..., g + A(s_m)) per group element g,
/// in enumeration order. Repeated blocks are flagged, not rejected.
inline AmdDevelopment develop_amd(const AmdCode& code) {
  Block base;
  for (const auto& set : code.encodings()) {
    PointSet part;
    part.reserve(set.size());
    for (const auto& e : set) part.push_back(static_cast<int>(element_index(code.group(), e)));
    base.parts.push_back(std::move(part));
  }
  auto [blocks, repeated] = odetail::develop_translates(code.group(), {base});
  return AmdDevelopment{SplittingSystem(static_cast<int>(code.group().order()), std::move(blocks)),
                        repeated};
}

/// TD(3, n) from the cyclic Latin square: three groups of n points, blocks
/// {i, n+j, 2n+(i+j mod n)}.
inline Gdd latin_square_td(int n) {
  if (n < 1) throw ValidationError("latin_square_td: n must be >= 1");
  std::vector<std::vector<int>> groups(3);
  for (int g = 0; g < 3; ++g)
    for (int i = 0; i < n; ++i) groups[static_cast<size_t>(g)].push_back(g * n + i);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) blocks.push_back({i, n + j, 2 * n + (i + j) % n});
  return Gdd(3 * n, std::move(groups), 3, std::move(blocks));
}

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// TD(k, p) for prime p and 2 <= k <= p+1. For k <= p the blocks are the
/// graphs of the affine maps i -> s i + t; k = p+1 adds a group indexed by
/// the slopes.
inline Gdd prime_td(int k, int p) {
  if (!is_prime(p)) throw ValidationError("prime_td: p must be prime");
  if (k < 2 || k > p + 1) throw ValidationError("prime_td: require 2 <= k <= p+1");
  std::vector<std::vector<int>> groups(static_cast<size_t>(k));
  for (int g = 0; g < k; ++g)
    for (int i = 0; i < p; ++i) groups[static_cast<size_t>(g)].push_back(g * p + i);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(p) * static_cast<size_t>(p));
  const int affine_groups = std::min(k, p);
  for (int s = 0; s < p; ++s)
    for (int t = 0; t < p; ++t) {
      std::vector<int> blk;
      blk.reserve(static_cast<size_t>(k));
      for (int i = 0; i < affine_groups; ++i) blk.push_back(i * p + (s * i + t) % p);
      if (k == p + 1) blk.push_back(p * p + s);
      blocks.push_back(std::move(blk));
    }
  return Gdd(k * p, std::move(groups), k, std::move(blocks));
}

/// Steiner triple system of order u, presented as a 3-GDD with singleton
/// design groups. Uses the quasigroup constructions: an idempotent symmetric
/// square of odd order for u = 3 mod 6, and a half-idempotent one plus an
/// extra point for u = 1 mod 6.
inline Gdd sts(int u) {
  if (u < 1 || (u % 6 != 1 && u % 6 != 3))
    throw ValidationError("sts: order must be 1 or 3 mod 6");
  std::vector<std::vector<int>> groups;
  for (int p = 0; p < u; ++p) groups.push_back({p});
  std::vector<std::vector<int>> blocks;

  if (u % 6 == 3) {
    const int n = u / 3;  // odd
    const int half = (n + 1) / 2;  // inverse of 2 mod n
    auto pt = [n](int x, int level) { return level * n + x; };
    for (int x = 0; x < n; ++x) blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        for (int level = 0; level < 3; ++level)
          blocks.push_back({pt(x, level), pt(y, level), pt((x + y) % n * half % n, (level + 1) % 3)});
  } else if (u > 1) {
    const int t = u / 6;
    const int n = 2 * t;
    const int inf = 3 * n;
    auto pt = [n](int x, int level) { return level * n + x; };
    // Half-idempotent symmetric quasigroup on 0..2t-1: even sums halve,
    // odd sums land in the upper half.
    auto star = [t, n](int x, int y) {
      int s = (x + y) % n;
      return s % 2 == 0 ? s / 2 : t + (s - 1) / 2;
    };
    for (int i = 0; i < t; ++i) blocks.push_back({pt(i, 0), pt(i, 1), pt(i, 2)});
    for (int i = 0; i < t; ++i)
      for (int level = 0; level < 3; ++level)
        blocks.push_back({inf, pt(t + i, level), pt(i, (level + 1) % 3)});
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        for (int level = 0; level < 3; ++level)
          blocks.push_back({pt(x, level), pt(y, level), pt(star(x, y), (level + 1) % 3)});
  }
  return Gdd(u, std::move(groups), 3, std::move(blocks));
}

using TdSupplier = std::function<Gdd(int k, int n)>;

/// Built-in transversal designs: TD(2, n) directly, TD(3, n) from the cyclic
/// Latin square, TD(k, p) for prime p with k <= p+1.
inline Gdd builtin_td(int k, int n) {
  if (k == 2) {
    std::vector<std::vector<int>> groups(2);
    for (int g = 0; g < 2; ++g)
      for (int i = 0; i < n; ++i) groups[static_cast<size_t>(g)].push_back(g * n + i);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) blocks.push_back({i, n + j});
    return Gdd(2 * n, std::move(groups), 2, std::move(blocks));
  }
  if (k == 3) return latin_square_td(n);
  if (is_prime(n) && k <= n + 1) return prime_td(k, n);
  throw ValidationError("builtin_td: no TD(" + std::to_string(k) + "," + std::to_string(n) +
                        ") available; supply an ingredient");
}

/// Weighted inflation (constant weight w): every point becomes w copies and
/// every master block is replaced by a copy of TD(k, w) across its points'
/// copy classes. Design groups inflate pointwise.
inline Gdd inflate_gdd(const Gdd& master, int w, const TdSupplier& supplier = builtin_td) {
  if (w < 1) throw ValidationError("inflate_gdd: weight must be >= 1");
  const int k = master.block_size();
  Gdd ingredient = supplier(k, w);
  if (ingredient.points() != k * w ||
      static_cast<int>(ingredient.design_groups().size()) != k)
    throw ValidationError("inflate_gdd: ingredient is not a TD(k,w)");
  for (const auto& g : ingredient.design_groups())
    if (static_cast<int>(g.size()) != w)
      throw ValidationError("inflate_gdd: ingredient design groups must have size w");
  if (!check_gdd(ingredient).is_gdd)
    throw ValidationError("inflate_gdd: ingredient fails the GDD check");

  // copy rank of each ingredient point within its design group
  std::vector<int> ing_group(static_cast<size_t>(ingredient.points()));
  std::vector<int> ing_rank(static_cast<size_t>(ingredient.points()));
  for (size_t gi = 0; gi < ingredient.design_groups().size(); ++gi) {
    const auto& grp = ingredient.design_groups()[gi];
    for (size_t r = 0; r < grp.size(); ++r) {
      ing_group[static_cast<size_t>(grp[r])] = static_cast<int>(gi);
      ing_rank[static_cast<size_t>(grp[r])] = static_cast<int>(r);
    }
  }

  std::vector<std::vector<int>> groups;
  groups.reserve(master.design_groups().size());
  for (const auto& grp : master.design_groups()) {
    std::vector<int> big;
    big.reserve(grp.size() * static_cast<size_t>(w));
    for (int p : grp)
      for (int c = 0; c < w; ++c) big.push_back(p * w + c);
    groups.push_back(std::move(big));
  }

  std::vector<std::vector<int>> blocks;
  blocks.reserve(master.blocks().size() * ingredient.blocks().size());
  for (const auto& mblk : master.blocks())
    for (const auto& iblk : ingredient.blocks()) {
      std::vector<int> blk;
      blk.reserve(static_cast<size_t>(k));
      for (int q : iblk)
        blk.push_back(mblk[static_cast<size_t>(ing_group[static_cast<size_t>(q)])] * w +
                      ing_rank[static_cast<size_t>(q)]);
      blocks.push_back(std::move(blk));
    }
  return Gdd(master.points() * w, std::move(groups), k, std::move(blocks));
}

/// Replaces every ordered block (x_1, ..., x_m) by the trivial splitting
/// block ({x_1} x {1..c}, ..., {x_m} x {1..c}) over c copies of each point.
/// Cross-group pair coverage and the equitable ordering both survive.
inline SplittingGdd splitting_inflate(const OrderedGdd& og, int c) {
  if (c < 1) throw ValidationError("splitting_inflate: c must be >= 1");
  SplittingGdd out;
  out.v = og.points() * c;
  out.m = og.block_size();
  for (const auto& grp : og.design_groups()) {
    std::vector<int> big;
    big.reserve(grp.size() * static_cast<size_t>(c));
    for (int p : grp)
      for (int i = 0; i < c; ++i) big.push_back(p * c + i);
    out.design_groups.push_back(std::move(big));
  }
  for (const auto& oblk : og.ordered_blocks()) {
    Block blk;
    blk.parts.reserve(oblk.size());
    for (int x : oblk) {
      PointSet part;
      part.reserve(static_cast<size_t>(c));
      for (int i = 0; i < c; ++i) part.push_back(x * c + i);
      blk.parts.push_back(std::move(part));
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

/// Completes an equitably ordered splitting GDD to a splitting BIBD by
/// filling every design group with an equitably ordered splitting BIBD on
/// the group's points plus one shared new point. The new point gets the
/// largest index; each filler's last point maps onto it and the rest map
/// onto the group's points in increasing order.
inline SplittingSystem fill_groups(const SplittingGdd& sg,
                                   const std::vector<SplittingSystem>& fillers) {
  if (fillers.size() != sg.design_groups.size())
    throw ValidationError("fill_groups: need one filler per design group");
  const int infinity = sg.v;
  std::vector<Block> blocks = sg.blocks;
  std::optional<int> c;
  if (!sg.blocks.empty()) c = static_cast<int>(sg.blocks.front().parts.front().size());

  for (size_t gi = 0; gi < fillers.size(); ++gi) {
    const SplittingSystem& filler = fillers[gi];
    const auto& grp = sg.design_groups[gi];
    if (filler.v() != static_cast<int>(grp.size()) + 1)
      throw ValidationError("fill_groups: filler for design group " + std::to_string(gi) +
                            " must have " + std::to_string(grp.size() + 1) + " points");
    if (filler.m() != sg.m)
      throw ValidationError("fill_groups: filler source count mismatch");
    auto fc = c_splitting_profile(filler);
    if (!fc || (c && *fc != *c))
      throw ValidationError("fill_groups: filler part size mismatch");
    if (!check_equitably_ordered(filler).ok)
      throw ValidationError("fill_groups: filler for design group " + std::to_string(gi) +
                            " is not equitably ordered");
    auto remap = [&](int p) { return p == filler.v() - 1 ? infinity : grp[static_cast<size_t>(p)]; };
    for (const auto& blk : filler.blocks()) {
      Block mapped;
      mapped.parts.reserve(blk.parts.size());
      for (const auto& part : blk.parts) {
        PointSet img;
        img.reserve(part.size());
        for (int p : part) img.push_back(remap(p));
        std::sort(img.begin(), img.end());
        mapped.parts.push_back(std::move(img));
      }
      blocks.push_back(std::move(mapped));
    }
  }
  return SplittingSystem(sg.v + 1, std::move(blocks));
}

struct SearchOptions {
  long long max_nodes = 200'000'000;
  int max_points = 1024;  // size guard for the difference table
};

/// Exhaustive depth-first search for base blocks over G whose cross-part
/// differences cover every nonzero element exactly once, so the development
/// is a (v, m x c, 1)-splitting BIBD. Blocks are normalized (0 leads the
/// first part, part minima increase, blocks in increasing order) and the
/// lexicographically least witness is returned. nullopt means the canonical
/// space was exhausted.
inline std::optional<std::vector<Block>> search_base_blocks(int v, int m, int c,
                                                            const AbelianGroup& g,
                                                            const SearchOptions& opts = {}) {
  if (g.order() != v) throw ValidationError("search_base_blocks: |G| must equal v");
  if (m < 2 || c < 1) throw ValidationError("search_base_blocks: require m >= 2, c >= 1");
  long long orbit_pairs = static_cast<long long>(m) * (m - 1) * c * c;
  if ((v - 1) % orbit_pairs != 0)
    throw ValidationError("search_base_blocks: v - 1 must be divisible by m(m-1)c^2");
  if (v > opts.max_points) throw BudgetExceeded("search_base_blocks: v exceeds the table guard");
  const int block_count = static_cast<int>((v - 1) / orbit_pairs);

  // diff[a][b] = index of element_a - element_b
  std::vector<std::vector<int>> diff(static_cast<size_t>(v), std::vector<int>(static_cast<size_t>(v)));
  {
    auto elems = enumerate_elements(g);
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b)
        diff[static_cast<size_t>(a)][static_cast<size_t>(b)] = static_cast<int>(
            element_index(g, group_sub(g, elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)])));
  }

  std::vector<char> used(static_cast<size_t>(v), 0);
  std::vector<char> in_block(static_cast<size_t>(v), 0);
  std::vector<std::vector<std::vector<int>>> partial(
      static_cast<size_t>(block_count),
      std::vector<std::vector<int>>(static_cast<size_t>(m)));
  long long nodes = 0;

  auto mark = [&](int bi, int part, int x, bool on) {
    for (int jp = 0; jp < m; ++jp) {
      if (jp == part) continue;
      for (int y : partial[static_cast<size_t>(bi)][static_cast<size_t>(jp)]) {
        used[static_cast<size_t>(diff[static_cast<size_t>(x)][static_cast<size_t>(y)])] = on;
        used[static_cast<size_t>(diff[static_cast<size_t>(y)][static_cast<size_t>(x)])] = on;
      }
    }
  };
  std::vector<int> fresh;
  auto placeable = [&](int bi, int part, int x) {
    if (in_block[static_cast<size_t>(x)]) return false;
    fresh.clear();
    for (int jp = 0; jp < m; ++jp) {
      if (jp == part) continue;
      for (int y : partial[static_cast<size_t>(bi)][static_cast<size_t>(jp)]) {
        int d1 = diff[static_cast<size_t>(x)][static_cast<size_t>(y)];
        int d2 = diff[static_cast<size_t>(y)][static_cast<size_t>(x)];
        if (d1 == d2 || used[static_cast<size_t>(d1)] || used[static_cast<size_t>(d2)]) return false;
        fresh.push_back(d1);
        fresh.push_back(d2);
      }
    }
    // differences introduced together must also be mutually distinct
    std::sort(fresh.begin(), fresh.end());
    return std::adjacent_find(fresh.begin(), fresh.end()) == fresh.end();
  };

  std::function<bool(int, int, int)> extend = [&](int bi, int part, int slot) -> bool {
    if (part == m) {
      // canonical block order between consecutive base blocks
      if (bi > 0 && partial[static_cast<size_t>(bi)] <= partial[static_cast<size_t>(bi - 1)])
        return false;
      if (bi + 1 == block_count) return true;
      return extend(bi + 1, 0, 0);
    }
    auto& cur = partial[static_cast<size_t>(bi)][static_cast<size_t>(part)];
    int lo;
    if (slot > 0)
      lo = cur.back() + 1;
    else if (part == 0)
      lo = 0;
    else
      lo = partial[static_cast<size_t>(bi)][static_cast<size_t>(part - 1)].front() + 1;
    int hi = part == 0 && slot == 0 ? 0 : v - 1;  // 0 leads every canonical block
    for (int x = lo; x <= hi; ++x) {
      if (++nodes > opts.max_nodes) throw BudgetExceeded("search_base_blocks: node budget exhausted");
      if (!placeable(bi, part, x)) continue;
      mark(bi, part, x, true);
      in_block[static_cast<size_t>(x)] = 1;
      cur.push_back(x);
      bool done = slot + 1 == c ? extend(bi, part + 1, 0) : extend(bi, part, slot + 1);
      if (done) return true;
      cur.pop_back();
      in_block[static_cast<size_t>(x)] = 0;
      mark(bi, part, x, false);
    }
    return false;
  };

  if (!extend(0, 0, 0)) return std::nullopt;

  std::vector<Block> out;
  out.reserve(static_cast<size_t>(block_count));
  for (const auto& raw : partial) {
    Block blk;
    for (const auto& part : raw) blk.parts.push_back(part);
    out.push_back(std::move(blk));
  }
  return out;
}

/// Exact transcriptions of the worked fixtures, as interchange documents.
inline nlohmann::json catalog(const std::string& name) {
  using nlohmann::json;
  if (name == "firstacode")
    return json{{"kind", "splitting_system"},
                {"v", 5},
                {"m", 2},
                {"blocks",
                 json::array({json::array({json::array({1, 4}), json::array({2, 3})}),
                              json::array({json::array({0, 2}), json::array({3, 4})}),
                              json::array({json::array({1, 3}), json::array({0, 4})}),
                              json::array({json::array({2, 4}), json::array({0, 1})}),
                              json::array({json::array({0, 3}), json::array({1, 2})})})}};
  if (name == "huber9")
    return json{{"kind", "splitting_system"},
                {"v", 9},
                {"m", 2},
                {"blocks",
                 json::array({json::array({json::array({0, 1}), json::array({2, 4})}),
                              json::array({json::array({1, 2}), json::array({3, 5})}),
                              json::array({json::array({2, 3}), json::array({4, 6})}),
                              json::array({json::array({3, 4}), json::array({5, 7})}),
                              json::array({json::array({4, 5}), json::array({6, 8})}),
                              json::array({json::array({5, 6}), json::array({0, 7})}),
                              json::array({json::array({6, 7}), json::array({1, 8})}),
                              json::array({json::array({7, 8}), json::array({0, 2})}),
                              json::array({json::array({0, 8}), json::array({1, 3})})})}};
  if (name == "amd_z9")
    return json{{"kind", "amd_code"},
                {"group", json::array({9})},
                {"sources", 2},
                {"encodings", json::array({json::array({0, 1}), json::array({2, 4})})}};
  if (name == "amd_z10")
    return json{{"kind", "amd_code"},
                {"group", json::array({10})},
                {"sources", 4},
                {"encodings", json::array({json::array({0}), json::array({5}), json::array({1, 9}),
                                           json::array({2, 3})})}};
  if (name == "base_z9")
    return json{{"kind", "base_blocks"},
                {"group", json::array({9})},
                {"blocks", json::array({json::array({json::array({0, 1}), json::array({2, 4})})})}};
  if (name == "base_z25")
    return json{{"kind", "base_blocks"},
                {"group", json::array({25})},
                {"blocks", json::array({json::array({json::array({0, 1}), json::array({2, 4}),
                                                     json::array({12, 20})})})}};
  throw ValidationError("catalog: unknown fixture '" + name + "'");
}

inline std::vector<std::string> catalog_names() {
  return {"firstacode", "huber9", "amd_z9", "amd_z10", "base_z9", "base_z25"};
}

}  // namespace splitdesign
