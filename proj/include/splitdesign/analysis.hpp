#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "splitdesign/designs.hpp"

namespace splitdesign {

/// Per-message substitution payoff table. Entry [t][u] is the success
/// probability contributed by the observed message t when the adversary
/// substitutes u: the sum of Pr(s_j) / (b |B_j|) over all (block, position)
/// incidences with t in B_j and u in another part of the same block. The
/// total success probability of a strategy sigma is the sum of [t][sigma(t)],
/// so strategies optimize independently per message.
inline std::vector<std::vector<Rational>> substitution_payoff(const SplittingSystem& sys,
                                                              const SourceDistribution& dist) {
  if (dist.sources() != sys.m())
    throw ValidationError("substitution_payoff: distribution source count mismatch");
  const int v = sys.v();
  std::vector<std::vector<Rational>> payoff(static_cast<size_t>(v),
                                            std::vector<Rational>(static_cast<size_t>(v)));
  std::vector<int> part_of(static_cast<size_t>(v));
  for (const auto& blk : sys.blocks()) {
    std::fill(part_of.begin(), part_of.end(), -1);
    for (size_t j = 0; j < blk.parts.size(); ++j)
      for (int p : blk.parts[j]) part_of[static_cast<size_t>(p)] = static_cast<int>(j);
    std::vector<int> members;
    for (const auto& part : blk.parts) members.insert(members.end(), part.begin(), part.end());
    for (size_t j = 0; j < blk.parts.size(); ++j) {
      Rational w = dist.prob(static_cast<int>(j)) /
                   Rational(sys.b() * static_cast<long long>(blk.parts[j].size()));
      if (w.is_zero()) continue;
      for (int t : blk.parts[j])
        for (int u : members)
          if (part_of[static_cast<size_t>(u)] != static_cast<int>(j))
            payoff[static_cast<size_t>(t)][static_cast<size_t>(u)] += w;
    }
  }
  return payoff;
}

/// Success probability of an explicit strategy, evaluated from the defining
/// sum over keys and sources (not via the payoff table). The strategy maps
/// every message to a replacement; sigma[t] == t never succeeds.
inline Rational strategy_success_probability(const SplittingSystem& sys,
                                             const SourceDistribution& dist,
                                             const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != sys.v())
    throw ValidationError("strategy_success_probability: strategy size mismatch");
  if (dist.sources() != sys.m())
    throw ValidationError("strategy_success_probability: distribution source count mismatch");
  Rational total = 0;
  std::vector<int> part_of(static_cast<size_t>(sys.v()));
  for (const auto& blk : sys.blocks()) {
    std::fill(part_of.begin(), part_of.end(), -1);
    for (size_t j = 0; j < blk.parts.size(); ++j)
      for (int p : blk.parts[j]) part_of[static_cast<size_t>(p)] = static_cast<int>(j);
    for (size_t j = 0; j < blk.parts.size(); ++j) {
      long long hits = 0;
      for (int t : blk.parts[j]) {
        int image = sigma[static_cast<size_t>(t)];
        int ip = part_of[static_cast<size_t>(image)];
        if (ip >= 0 && ip != static_cast<int>(j)) ++hits;
      }
      if (hits)
        total += Rational(hits) * dist.prob(static_cast<int>(j)) /
                 Rational(sys.b() * static_cast<long long>(blk.parts[j].size()));
    }
  }
  return total;
}

struct SubstitutionReport {
  Rational value;
  std::vector<int> strategy;  // an optimal sigma with sigma[t] != t
  std::optional<std::vector<Rational>> per_source;
};

/// Best substitution success probability over all strategies with
/// sigma(t) != t for every message, for a fixed source distribution.
/// Separability of the payoff makes the per-message greedy choice optimal;
/// ties break toward the smallest replacement message.
inline SubstitutionReport substitution_probability(const SplittingSystem& sys,
                                                   const SourceDistribution& dist) {
  auto payoff = substitution_payoff(sys, dist);
  const int v = sys.v();
  SubstitutionReport out;
  out.strategy.resize(static_cast<size_t>(v));
  for (int t = 0; t < v; ++t) {
    int best_u = t == 0 ? 1 : 0;
    for (int u = 0; u < v; ++u) {
      if (u == t) continue;
      if (payoff[static_cast<size_t>(t)][static_cast<size_t>(u)] >
          payoff[static_cast<size_t>(t)][static_cast<size_t>(best_u)])
        best_u = u;
    }
    out.strategy[static_cast<size_t>(t)] = best_u;
    out.value += payoff[static_cast<size_t>(t)][static_cast<size_t>(best_u)];
  }
  return out;
}

/// Worst case over all source distributions. The strategy value is affine in
/// the distribution, so the maximum is attained at a point mass; per_source
/// holds the optimum against each point mass in turn.
inline SubstitutionReport substitution_probability_any_distribution(const SplittingSystem& sys) {
  SubstitutionReport out;
  std::vector<Rational> per_source;
  per_source.reserve(static_cast<size_t>(sys.m()));
  for (int j = 0; j < sys.m(); ++j) {
    auto rep = substitution_probability(sys, SourceDistribution::point_mass(sys.m(), j));
    per_source.push_back(rep.value);
    if (j == 0 || rep.value > out.value) {
      out.value = rep.value;
      out.strategy = std::move(rep.strategy);
    }
  }
  out.per_source = std::move(per_source);
  return out;
}

struct ImpersonationReport {
  Rational value;
  int message = 0;  // a maximizing message
};

/// Max over messages of (blocks containing the message) / (total blocks).
inline ImpersonationReport impersonation_probability(const SplittingSystem& sys) {
  std::vector<long long> hits(static_cast<size_t>(sys.v()), 0);
  for (const auto& blk : sys.blocks())
    for (const auto& part : blk.parts)
      for (int p : part) hits[static_cast<size_t>(p)]++;
  ImpersonationReport out;
  long long best = -1;
  for (int t = 0; t < sys.v(); ++t)
    if (hits[static_cast<size_t>(t)] > best) {
      best = hits[static_cast<size_t>(t)];
      out.message = t;
    }
  out.value = Rational(best, sys.b());
  return out;
}

/// Lower bound on the substitution probability:
/// min over blocks of (|B| - max_j |B_j|) / (v - 1).
inline Rational blundo_bound(const SplittingSystem& sys) {
  std::optional<Rational> best;
  for (const auto& blk : sys.blocks()) {
    size_t max_part = 0;
    for (const auto& part : blk.parts) max_part = std::max(max_part, part.size());
    Rational val(blk.size() - static_cast<long long>(max_part), sys.v() - 1);
    if (!best || val < *best) best = val;
  }
  return *best;
}

/// Lower bound on the impersonation probability: min over blocks of |B| / v.
inline Rational simmons_bound(const SplittingSystem& sys) {
  std::optional<Rational> best;
  for (const auto& blk : sys.blocks()) {
    Rational val(blk.size(), sys.v());
    if (!best || val < *best) best = val;
  }
  return *best;
}

/// Lower bound on the substitution probability obtained by averaging the
/// v - 1 constant-shift strategies:
/// (1/b) sum over blocks of (|B| - sum_j Pr(s_j) |B_j|) / (v - 1).
/// Coincides with blundo_bound on c-splitting systems and is tighter when
/// part sizes differ.
inline Rational averaged_substitution_bound(const SplittingSystem& sys,
                                            const SourceDistribution& dist) {
  if (dist.sources() != sys.m())
    throw ValidationError("averaged_substitution_bound: distribution source count mismatch");
  Rational total = 0;
  for (const auto& blk : sys.blocks()) {
    Rational mean_part = 0;
    for (size_t j = 0; j < blk.parts.size(); ++j)
      mean_part += dist.prob(static_cast<int>(j)) * Rational(static_cast<long long>(blk.parts[j].size()));
    total += (Rational(blk.size()) - mean_part) / Rational(sys.v() - 1);
  }
  return total / Rational(sys.b());
}

struct MessageDistribution {
  std::vector<std::vector<Rational>> conditional;  // [source][message] = Pr(t | s_j)
  std::vector<Rational> marginal;                  // [message] = Pr(t)
};

/// Pr(t | s_j) = sum over blocks with t in B_j of 1 / (b |B_j|), keys uniform
/// and encodings equiprobable; Pr(t) mixes the conditionals by the source
/// distribution.
inline MessageDistribution message_distribution(const SplittingSystem& sys,
                                                const SourceDistribution& dist) {
  if (dist.sources() != sys.m())
    throw ValidationError("message_distribution: distribution source count mismatch");
  MessageDistribution out;
  out.conditional.assign(static_cast<size_t>(sys.m()),
                         std::vector<Rational>(static_cast<size_t>(sys.v())));
  for (const auto& blk : sys.blocks())
    for (size_t j = 0; j < blk.parts.size(); ++j) {
      Rational w(1, sys.b() * static_cast<long long>(blk.parts[j].size()));
      for (int p : blk.parts[j]) out.conditional[j][static_cast<size_t>(p)] += w;
    }
  out.marginal.assign(static_cast<size_t>(sys.v()), Rational(0));
  for (int j = 0; j < sys.m(); ++j)
    for (int t = 0; t < sys.v(); ++t)
      out.marginal[static_cast<size_t>(t)] +=
          dist.prob(j) * out.conditional[static_cast<size_t>(j)][static_cast<size_t>(t)];
  return out;
}

struct SecrecyReport {
  bool holds = false;      // secrecy for the supplied distribution (or universal one)
  bool universal = false;  // Pr(t | s_j) independent of j for every t
  std::optional<std::pair<int, int>> witness;  // violating (source, message)
};

/// Perfect secrecy check. The universal property (conditionals independent of
/// the source) implies secrecy for every distribution; with a distribution
/// supplied, holds tests Pr(s | t) = Pr(s) for all s and all t with
/// Pr(t) > 0.
inline SecrecyReport perfect_secrecy(const SplittingSystem& sys,
                                     const std::optional<SourceDistribution>& dist = std::nullopt) {
  auto md = message_distribution(sys, dist ? *dist : SourceDistribution::uniform(sys.m()));
  SecrecyReport out;
  out.universal = true;
  for (int t = 0; t < sys.v() && out.universal; ++t)
    for (int j = 1; j < sys.m(); ++j)
      if (md.conditional[static_cast<size_t>(j)][static_cast<size_t>(t)] !=
          md.conditional[0][static_cast<size_t>(t)]) {
        out.universal = false;
        if (!out.witness) out.witness = {0, t};
        break;
      }
  if (!dist) {
    out.holds = out.universal;
    return out;
  }
  out.holds = true;
  if (out.universal) return out;
  out.witness.reset();
  // Pr(s | t) = Pr(s) Pr(t | s) / Pr(t); equality reduces to
  // Pr(s) (Pr(t | s) - Pr(t)) = 0.
  for (int t = 0; t < sys.v() && out.holds; ++t) {
    if (md.marginal[static_cast<size_t>(t)].is_zero()) continue;
    for (int j = 0; j < sys.m(); ++j) {
      Rational gap = md.conditional[static_cast<size_t>(j)][static_cast<size_t>(t)] -
                     md.marginal[static_cast<size_t>(t)];
      if (!dist->prob(j).is_zero() && !gap.is_zero()) {
        out.holds = false;
        out.witness = {j, t};
        break;
      }
    }
  }
  return out;
}

namespace adetail {

/// For each nonzero offset index d (1-based into the enumeration), the count
/// per source of encodings that the offset carries into a different source's
/// encoding set.
inline std::vector<std::vector<long long>> amd_hit_counts(const AmdCode& code) {
  const AbelianGroup& g = code.group();
  long long n = g.order();
  if (n > kEnumerationCap) throw std::length_error("amd analysis: group order exceeds cap");
  std::vector<int> source_of(static_cast<size_t>(n), -1);
  for (int s = 0; s < code.sources(); ++s)
    for (const auto& e : code.encoding(s)) source_of[static_cast<size_t>(element_index(g, e))] = s;
  std::vector<std::vector<long long>> hits(
      static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(code.sources()), 0));
  for (long long d = 1; d < n; ++d) {
    GroupElement delta = element_at(g, d);
    for (int s = 0; s < code.sources(); ++s)
      for (const auto& e : code.encoding(s)) {
        long long moved = element_index(g, group_add(g, e, delta));
        int target = source_of[static_cast<size_t>(moved)];
        if (target >= 0 && target != s) hits[static_cast<size_t>(d)][static_cast<size_t>(s)]++;
      }
  }
  return hits;
}

}  // namespace adetail

struct AmdWeakReport {
  Rational value;
  GroupElement delta;  // a maximizing nonzero offset
};

/// Worst-case success of an offset adversary against uniformly chosen
/// sources: max over nonzero Delta of sum_s |X_s^Delta| / (m |A(s)|).
inline AmdWeakReport amd_weak_epsilon(const AmdCode& code) {
  const AbelianGroup& g = code.group();
  if (g.order() < 2) throw ValidationError("amd_weak_epsilon: trivial group has no nonzero offset");
  auto hits = adetail::amd_hit_counts(code);
  const long long m = code.sources();
  AmdWeakReport out;
  out.delta = element_at(g, 1);
  for (long long d = 1; d < g.order(); ++d) {
    Rational val = 0;
    for (int s = 0; s < code.sources(); ++s)
      val += Rational(hits[static_cast<size_t>(d)][static_cast<size_t>(s)],
                      m * static_cast<long long>(code.encoding(s).size()));
    if (d == 1 || val > out.value) {
      out.value = val;
      out.delta = element_at(g, d);
    }
  }
  return out;
}

struct AmdStrongReport {
  Rational value;
  int source = 0;
  GroupElement delta;
  std::vector<Rational> per_source;  // worst case offset against each known source
};

/// Worst-case success of an offset adversary who knows the source:
/// max over s and nonzero Delta of |X_s^Delta| / |A(s)|.
inline AmdStrongReport amd_strong_epsilon(const AmdCode& code) {
  const AbelianGroup& g = code.group();
  if (g.order() < 2) throw ValidationError("amd_strong_epsilon: trivial group has no nonzero offset");
  auto hits = adetail::amd_hit_counts(code);
  AmdStrongReport out;
  out.delta = element_at(g, 1);
  out.per_source.assign(static_cast<size_t>(code.sources()), Rational(0));
  bool first = true;
  for (long long d = 1; d < g.order(); ++d)
    for (int s = 0; s < code.sources(); ++s) {
      Rational val(hits[static_cast<size_t>(d)][static_cast<size_t>(s)],
                   static_cast<long long>(code.encoding(s).size()));
      if (val > out.per_source[static_cast<size_t>(s)]) out.per_source[static_cast<size_t>(s)] = val;
      if (first || val > out.value) {
        out.value = val;
        out.source = s;
        out.delta = element_at(g, d);
        first = false;
      }
    }
  return out;
}

enum class AmdSecurity { weak, strong };

struct ROptimalityReport {
  bool c_regular = false;
  std::optional<long long> c;        // common encoding-set size when regular
  Rational epsilon;                  // the relevant worst-case epsilon
  std::optional<Rational> bound;     // c (m-1) / (n-1), regular codes only
  std::optional<bool> r_optimal;     // epsilon == bound; absent when not c-regular
};

/// R-optimality for c-regular codes: the worst-case offset is no better than
/// the average case exactly when epsilon = c(m-1)/(n-1). Codes that are not
/// c-regular get no verdict.
inline ROptimalityReport amd_r_optimality(const AmdCode& code, AmdSecurity kind) {
  ROptimalityReport out;
  size_t c = code.encoding(0).size();
  out.c_regular = true;
  for (const auto& set : code.encodings())
    if (set.size() != c) out.c_regular = false;
  out.epsilon =
      kind == AmdSecurity::weak ? amd_weak_epsilon(code).value : amd_strong_epsilon(code).value;
  if (out.c_regular) {
    out.c = static_cast<long long>(c);
    out.bound = Rational(static_cast<long long>(c) * (code.sources() - 1), code.group().order() - 1);
    out.r_optimal = out.epsilon == *out.bound;
  }
  return out;
}

struct TightnessOptions {
  std::uint64_t seed = 0x5EED;
  long long exhaustive_cap = 10'000'000;  // max (v-1)^v strategies to enumerate
  int samples = 512;                      // random strategies when above the cap
};

struct TightnessReport {
  bool tight = false;                   // optimum equals the averaged bound
  bool all_derangements_equal = false;  // every checked sigma(t) != t strategy hits the optimum
  bool exhaustive = false;
  long long strategies_checked = 0;
  Rational probability;
  Rational bound;
};

/// Tests whether the averaged substitution bound is attained, and whether (as
/// attainment implies) every strategy avoiding fixed points performs equally.
/// Enumerates all (v-1)^v strategies below the cap, otherwise samples
/// deterministically from the seed.
inline TightnessReport bound_tightness_check(const SplittingSystem& sys,
                                             const SourceDistribution& dist,
                                             const TightnessOptions& opts = {}) {
  TightnessReport out;
  out.probability = substitution_probability(sys, dist).value;
  out.bound = averaged_substitution_bound(sys, dist);
  out.tight = out.probability == out.bound;

  auto payoff = substitution_payoff(sys, dist);
  const int v = sys.v();

  // Common denominator turns each strategy evaluation into integer sums.
  long long denom = 1;
  for (const auto& row : payoff)
    for (const auto& r : row) {
      long long g = std::gcd(denom, r.den());
      __int128 l = static_cast<__int128>(denom / g) * r.den();
      if (l > INT64_MAX) throw std::overflow_error("bound_tightness_check: denominator overflow");
      denom = static_cast<long long>(l);
    }
  std::vector<std::vector<long long>> scaled(static_cast<size_t>(v),
                                             std::vector<long long>(static_cast<size_t>(v), 0));
  for (int t = 0; t < v; ++t)
    for (int u = 0; u < v; ++u) {
      const Rational& r = payoff[static_cast<size_t>(t)][static_cast<size_t>(u)];
      scaled[static_cast<size_t>(t)][static_cast<size_t>(u)] = r.num() * (denom / r.den());
    }
  Rational target_check = out.probability * Rational(denom);
  if (!target_check.is_integer())
    throw std::overflow_error("bound_tightness_check: inconsistent denominators");
  const long long target = target_check.num();

  __int128 space = 1;
  for (int i = 0; i < v && space <= opts.exhaustive_cap; ++i) space *= (v - 1);
  out.exhaustive = space <= opts.exhaustive_cap;
  out.all_derangements_equal = true;

  if (out.exhaustive) {
    // Odometer over choices[t] in 0..v-2, mapped around the fixed point.
    std::vector<int> choice(static_cast<size_t>(v), 0);
    auto image = [&](int t, int c) { return c < t ? c : c + 1; };
    long long sum = 0;
    for (int t = 0; t < v; ++t) sum += scaled[static_cast<size_t>(t)][static_cast<size_t>(image(t, 0))];
    while (true) {
      ++out.strategies_checked;
      if (sum != target) {
        out.all_derangements_equal = false;
        break;
      }
      int t = 0;
      while (t < v && choice[static_cast<size_t>(t)] == v - 2) {
        sum -= scaled[static_cast<size_t>(t)][static_cast<size_t>(image(t, v - 2))];
        sum += scaled[static_cast<size_t>(t)][static_cast<size_t>(image(t, 0))];
        choice[static_cast<size_t>(t)] = 0;
        ++t;
      }
      if (t == v) break;
      sum -= scaled[static_cast<size_t>(t)][static_cast<size_t>(image(t, choice[static_cast<size_t>(t)]))];
      ++choice[static_cast<size_t>(t)];
      sum += scaled[static_cast<size_t>(t)][static_cast<size_t>(image(t, choice[static_cast<size_t>(t)]))];
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, v - 2);
    for (int i = 0; i < opts.samples && out.all_derangements_equal; ++i) {
      long long sum = 0;
      for (int t = 0; t < v; ++t) {
        int c = pick(rng);
        sum += scaled[static_cast<size_t>(t)][static_cast<size_t>(c < t ? c : c + 1)];
      }
      ++out.strategies_checked;
      out.all_derangements_equal = sum == target;
    }
  }
  return out;
}

}  // namespace splitdesign
