#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "splitdesign/designs.hpp"

namespace splitdesign {

/// Raised when a development produces a repeated block, so the block orbits
/// are smaller than the group and per-orbit counting arguments do not apply.
struct OrbitCollision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BipartiteMultigraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::pair<int, int>> edges;  // (left, right); parallel edges allowed
};

struct IncidenceSplit {
  BipartiteMultigraph graph;    // left vertices = blocks, right vertices = point slots
  std::vector<int> slot_point;  // right vertex -> original point
};

/// Splits each point of a GDD into r_x/m slot vertices of degree m, yielding
/// an m-regular block-vs-slot bipartite multigraph (m = block size). A
/// point's incidences are dealt to its slots in block order, m consecutive
/// incidences per slot.
inline IncidenceSplit gdd_incidence_split(const Gdd& g) {
  const int m = g.block_size();
  std::vector<long long> replication(static_cast<size_t>(g.points()), 0);
  for (const auto& blk : g.blocks())
    for (int p : blk) replication[static_cast<size_t>(p)]++;
  for (int p = 0; p < g.points(); ++p)
    if (replication[static_cast<size_t>(p)] % m != 0)
      throw ValidationError("gdd_incidence_split: point " + std::to_string(p) +
                            " has replication " + std::to_string(replication[static_cast<size_t>(p)]) +
                            " not divisible by " + std::to_string(m));

  IncidenceSplit out;
  out.graph.left_count = static_cast<int>(g.blocks().size());
  std::vector<int> slot_base(static_cast<size_t>(g.points()), 0);
  int slots = 0;
  for (int p = 0; p < g.points(); ++p) {
    slot_base[static_cast<size_t>(p)] = slots;
    slots += static_cast<int>(replication[static_cast<size_t>(p)] / m);
  }
  out.graph.right_count = slots;
  out.slot_point.resize(static_cast<size_t>(slots));
  for (int p = 0; p < g.points(); ++p)
    for (long long s = 0; s < replication[static_cast<size_t>(p)] / m; ++s)
      out.slot_point[static_cast<size_t>(slot_base[static_cast<size_t>(p)] + s)] = p;

  std::vector<long long> dealt(static_cast<size_t>(g.points()), 0);
  for (size_t l = 0; l < g.blocks().size(); ++l)
    for (int p : g.blocks()[l]) {
      int slot = slot_base[static_cast<size_t>(p)] + static_cast<int>(dealt[static_cast<size_t>(p)] / m);
      dealt[static_cast<size_t>(p)]++;
      out.graph.edges.emplace_back(static_cast<int>(l), slot);
    }
  return out;
}

/// Proper edge coloring of a regular bipartite multigraph with exactly
/// `colors` colors, by extracting one perfect matching per color (each
/// extraction leaves a regular graph, so a perfect matching always exists).
/// Returns the color of each edge, indexed as in g.edges.
inline std::vector<int> edge_color(const BipartiteMultigraph& g, int colors) {
  if (colors < 1) throw ValidationError("edge_color: need at least one color");
  std::vector<int> deg_l(static_cast<size_t>(g.left_count), 0);
  std::vector<int> deg_r(static_cast<size_t>(g.right_count), 0);
  for (auto [l, r] : g.edges) {
    deg_l.at(static_cast<size_t>(l))++;
    deg_r.at(static_cast<size_t>(r))++;
  }
  for (int d : deg_l)
    if (d != colors) throw ValidationError("edge_color: graph is not regular of the given degree");
  for (int d : deg_r)
    if (d != colors) throw ValidationError("edge_color: graph is not regular of the given degree");

  std::vector<std::vector<int>> adj(static_cast<size_t>(g.left_count));
  for (size_t e = 0; e < g.edges.size(); ++e)
    adj[static_cast<size_t>(g.edges[e].first)].push_back(static_cast<int>(e));

  std::vector<int> color(g.edges.size(), -1);
  std::vector<int> match_r(static_cast<size_t>(g.right_count));  // edge id matched at right vertex
  std::vector<char> visited(static_cast<size_t>(g.right_count));

  std::function<bool(int)> augment = [&](int l) -> bool {
    for (int e : adj[static_cast<size_t>(l)]) {
      if (color[static_cast<size_t>(e)] >= 0) continue;
      int r = g.edges[static_cast<size_t>(e)].second;
      if (visited[static_cast<size_t>(r)]) continue;
      visited[static_cast<size_t>(r)] = 1;
      int holder = match_r[static_cast<size_t>(r)];
      if (holder < 0 || augment(g.edges[static_cast<size_t>(holder)].first)) {
        match_r[static_cast<size_t>(r)] = e;
        return true;
      }
    }
    return false;
  };

  for (int round = 0; round < colors; ++round) {
    std::fill(match_r.begin(), match_r.end(), -1);
    for (int l = 0; l < g.left_count; ++l) {
      std::fill(visited.begin(), visited.end(), 0);
      if (!augment(l)) throw ValidationError("edge_color: no perfect matching; graph is malformed");
    }
    for (int r = 0; r < g.right_count; ++r) {
      int e = match_r[static_cast<size_t>(r)];
      if (e >= 0) color[static_cast<size_t>(e)] = round;
    }
  }
  return color;
}

/// Equitably orders a GDD whose every replication number is divisible by its
/// block size: position j of each block receives the point whose incidence
/// edge was colored j, so every point lands in each position r_x/m times.
inline OrderedGdd order_gdd(const Gdd& g) {
  const int m = g.block_size();
  auto split = gdd_incidence_split(g);
  auto colors = edge_color(split.graph, m);
  std::vector<std::vector<int>> ordered(g.blocks().size(), std::vector<int>(static_cast<size_t>(m), -1));
  for (size_t e = 0; e < split.graph.edges.size(); ++e) {
    auto [l, r] = split.graph.edges[e];
    ordered[static_cast<size_t>(l)][static_cast<size_t>(colors[e])] =
        split.slot_point[static_cast<size_t>(r)];
  }
  return OrderedGdd(g.points(), g.design_groups(), m, std::move(ordered));
}

namespace odetail {

/// All |G| translates of each base block, base-major then element order;
/// points are element indices. Reports whether any block repeats.
inline std::pair<std::vector<Block>, bool> develop_translates(const AbelianGroup& g,
                                                              const std::vector<Block>& base_blocks) {
  auto elems = enumerate_elements(g);
  std::vector<Block> out;
  out.reserve(base_blocks.size() * elems.size());
  for (const auto& base : base_blocks) {
    for (const auto& shift : elems) {
      Block translated;
      translated.parts.reserve(base.parts.size());
      for (const auto& part : base.parts) {
        PointSet img;
        img.reserve(part.size());
        for (int p : part) {
          if (p < 0 || p >= g.order())
            throw ValidationError("development: base block element out of range");
          img.push_back(static_cast<int>(element_index(g, group_add(g, element_at(g, p), shift))));
        }
        std::sort(img.begin(), img.end());
        translated.parts.push_back(std::move(img));
      }
      out.push_back(std::move(translated));
    }
  }
  auto sorted = out;
  std::sort(sorted.begin(), sorted.end());
  bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  return {std::move(out), repeated};
}

}  // namespace odetail

/// Develops ordered base blocks over a group, every translate keeping the
/// base block's part order. The result is equitably ordered whenever all
/// orbits are full; a repeated block means some orbit is short, which is
/// reported as an error.
inline SplittingSystem order_development(const std::vector<Block>& base_blocks,
                                         const AbelianGroup& g) {
  if (base_blocks.empty()) throw ValidationError("order_development: no base blocks");
  auto [blocks, repeated] = odetail::develop_translates(g, base_blocks);
  if (repeated)
    throw OrbitCollision("order_development: development contains a repeated block");
  return SplittingSystem(static_cast<int>(g.order()), std::move(blocks));
}

struct ReorderOptions {
  double max_bits = 48.0;          // reject when b log2(m!) exceeds this
  long long max_nodes = 20'000'000;  // backtracking node budget
};

/// Searches for an equitable reordering of a c-splitting system by
/// backtracking over per-block part permutations, keeping every per-point
/// per-position count within its final quota r_x/m. Returns the reordered
/// system for the lexicographically first witness, nullopt when exhaustive
/// search proves none exists, and throws BudgetExceeded when the instance is
/// over budget.
inline std::optional<SplittingSystem> reorder_exact(const SplittingSystem& sys,
                                                    const ReorderOptions& opts = {}) {
  if (!c_splitting_profile(sys))
    throw ValidationError("reorder_exact: input must be c-splitting");
  const int m = sys.m();
  const int v = sys.v();

  std::vector<long long> replication(static_cast<size_t>(v), 0);
  for (const auto& blk : sys.blocks())
    for (const auto& part : blk.parts)
      for (int p : part) replication[static_cast<size_t>(p)]++;
  for (long long r : replication)
    if (r % m != 0) return std::nullopt;

  double perms_bits = 0;
  for (int j = 2; j <= m; ++j) perms_bits += std::log2(static_cast<double>(j));
  if (static_cast<double>(sys.b()) * perms_bits > opts.max_bits)
    throw BudgetExceeded("reorder_exact: search space exceeds the configured budget");

  std::vector<long long> quota(static_cast<size_t>(v));
  for (int p = 0; p < v; ++p) quota[static_cast<size_t>(p)] = replication[static_cast<size_t>(p)] / m;

  std::vector<std::vector<long long>> count(static_cast<size_t>(v),
                                            std::vector<long long>(static_cast<size_t>(m), 0));
  std::vector<std::vector<int>> chosen(static_cast<size_t>(sys.b()));
  long long nodes = 0;

  std::function<bool(int)> place = [&](int k) -> bool {
    if (k == sys.b()) return true;
    if (++nodes > opts.max_nodes)
      throw BudgetExceeded("reorder_exact: node budget exhausted");
    std::vector<int> perm(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) perm[static_cast<size_t>(j)] = j;
    const Block& blk = sys.block(k);
    do {
      bool feasible = true;
      for (int j = 0; j < m && feasible; ++j)
        for (int p : blk.parts[static_cast<size_t>(perm[static_cast<size_t>(j)])]) {
          if (count[static_cast<size_t>(p)][static_cast<size_t>(j)] + 1 > quota[static_cast<size_t>(p)]) {
            feasible = false;
            break;
          }
        }
      if (!feasible) continue;
      for (int j = 0; j < m; ++j)
        for (int p : blk.parts[static_cast<size_t>(perm[static_cast<size_t>(j)])])
          count[static_cast<size_t>(p)][static_cast<size_t>(j)]++;
      chosen[static_cast<size_t>(k)] = perm;
      if (place(k + 1)) return true;
      for (int j = 0; j < m; ++j)
        for (int p : blk.parts[static_cast<size_t>(perm[static_cast<size_t>(j)])])
          count[static_cast<size_t>(p)][static_cast<size_t>(j)]--;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };

  if (!place(0)) return std::nullopt;

  std::vector<Block> reordered;
  reordered.reserve(static_cast<size_t>(sys.b()));
  for (int k = 0; k < sys.b(); ++k) {
    Block blk;
    blk.parts.resize(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
      blk.parts[static_cast<size_t>(j)] =
          sys.block(k).parts[static_cast<size_t>(chosen[static_cast<size_t>(k)][static_cast<size_t>(j)])];
    reordered.push_back(std::move(blk));
  }
  return SplittingSystem(v, std::move(reordered));
}

}  // namespace splitdesign
