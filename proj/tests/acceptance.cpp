// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every assertion is an exact rational comparison; the stated runtime limits
// are enforced with wall-clock checks.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <splitdesign/analysis.hpp>
#include <splitdesign/constructions.hpp>
#include <splitdesign/io.hpp>
#include <splitdesign/ordering.hpp>
#include <splitdesign/verify.hpp>

using namespace splitdesign;

namespace {

class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

SplittingSystem get_system(const std::string& name) {
  return std::get<SplittingSystem>(parse_document(catalog(name)));
}

AmdCode get_amd(const std::string& name) {
  return std::get<AmdCode>(parse_document(catalog(name)));
}

SplittingSystem dev25() {
  auto bb = std::get<BaseBlocks>(parse_document(catalog("base_z25")));
  return order_development(bb.blocks, bb.group);
}

Rational exhaustive_substitution_optimum(const SplittingSystem& sys,
                                         const SourceDistribution& dist) {
  const int v = sys.v();
  std::vector<int> choice(static_cast<size_t>(v), 0);
  std::vector<int> sigma(static_cast<size_t>(v));
  Rational best(0);
  while (true) {
    for (int t = 0; t < v; ++t) {
      int c = choice[static_cast<size_t>(t)];
      sigma[static_cast<size_t>(t)] = c < t ? c : c + 1;
    }
    Rational val = strategy_success_probability(sys, dist, sigma);
    if (val > best) best = val;
    int t = 0;
    while (t < v && choice[static_cast<size_t>(t)] == v - 2) choice[static_cast<size_t>(t++)] = 0;
    if (t == v) break;
    ++choice[static_cast<size_t>(t)];
  }
  return best;
}

std::vector<SourceDistribution> sandwich_distributions(int m) {
  std::vector<SourceDistribution> dists;
  dists.push_back(SourceDistribution::uniform(m));
  {  // half the mass on the first source
    std::vector<Rational> p(static_cast<size_t>(m), Rational(1, 2 * (m - 1)));
    p[0] = Rational(1, 2);
    dists.push_back(SourceDistribution(std::move(p)));
  }
  {  // mass proportional to the source index
    std::vector<Rational> p;
    for (int j = 1; j <= m; ++j) p.push_back(Rational(2 * j, static_cast<long long>(m) * (m + 1)));
    dists.push_back(SourceDistribution(std::move(p)));
  }
  return dists;
}

struct RandomSystem {
  SplittingSystem sys;
  AbelianGroup group;
  bool equal_block_sizes;
};

std::vector<RandomSystem> random_group_generated_systems(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RandomSystem> out;
  while (static_cast<int>(out.size()) < count) {
    int v = std::uniform_int_distribution<int>(10, 40)(rng);
    int m = std::uniform_int_distribution<int>(2, 4)(rng);
    int orbits = std::uniform_int_distribution<int>(1, 2)(rng);
    AbelianGroup g({v});

    std::vector<Block> blocks;
    std::vector<long long> sizes;
    bool bad = false;
    for (int o = 0; o < orbits && !bad; ++o) {
      std::vector<int> part_sizes;
      int total = 0;
      for (int j = 0; j < m; ++j) {
        part_sizes.push_back(std::uniform_int_distribution<int>(1, 3)(rng));
        total += part_sizes.back();
      }
      std::vector<int> points(static_cast<size_t>(v));
      for (int p = 0; p < v; ++p) points[static_cast<size_t>(p)] = p;
      std::shuffle(points.begin(), points.end(), rng);
      Block base;
      int at = 0;
      for (int j = 0; j < m; ++j) {
        PointSet part(points.begin() + at,
                      points.begin() + at + part_sizes[static_cast<size_t>(j)]);
        std::sort(part.begin(), part.end());
        base.parts.push_back(std::move(part));
        at += part_sizes[static_cast<size_t>(j)];
      }
      sizes.push_back(total);
      auto [translates, repeated] = odetail::develop_translates(g, {base});
      if (repeated) {
        bad = true;
        break;
      }
      blocks.insert(blocks.end(), translates.begin(), translates.end());
    }
    if (bad) continue;
    {  // cross-orbit collisions would model repeated keys; resample instead
      auto sorted = blocks;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    }
    bool equal =
        std::all_of(sizes.begin(), sizes.end(), [&](long long s) { return s == sizes[0]; });
    out.push_back(RandomSystem{SplittingSystem(v, std::move(blocks)), std::move(g), equal});
  }
  return out;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  struct Criterion {
    int id;
    std::string title;
    std::function<void(Checker&)> body;
  };

  std::vector<Criterion> criteria;

  criteria.push_back(
      {1, "five-key code: exact substitution, impersonation and bounds", [](Checker& c) {
         auto sys = get_system("firstacode");
         c.expect(
             substitution_probability(sys, SourceDistribution::uniform(2)).value == Rational(1, 2),
             "substitution(uniform) != 1/2");
         SourceDistribution skew({Rational(3, 4), Rational(1, 4)});
         c.expect(substitution_probability(sys, skew).value == Rational(1, 2),
                  "substitution(3/4,1/4) != 1/2");
         c.expect(impersonation_probability(sys).value == Rational(4, 5), "impersonation != 4/5");
         c.expect(blundo_bound(sys) == Rational(1, 2), "max-part bound != 1/2");
         c.expect(simmons_bound(sys) == Rational(4, 5), "smallest-block bound != 4/5");
       }});

  criteria.push_back(
      {2, "9-element AMD code: epsilons, R-optimality, development", [](Checker& c) {
         auto code = get_amd("amd_z9");
         c.expect(amd_weak_epsilon(code).value == Rational(1, 4), "weak epsilon != 1/4");
         c.expect(amd_strong_epsilon(code).value == Rational(1, 2), "strong epsilon != 1/2");
         auto ropt = amd_r_optimality(code, AmdSecurity::weak);
         c.expect(ropt.c_regular && ropt.r_optimal == true, "weak R-optimality not confirmed");
         c.expect(ropt.bound == Rational(1, 4), "R-bound != 2*1/8");

         auto dev = develop_amd(code);
         c.expect(!dev.has_repeated_blocks && dev.system.b() == 9,
                  "development lacks 9 distinct blocks");
         AbelianGroup z9({9});
         auto gg = check_group_generated(dev.system, z9, translation_action(z9));
         c.expect(gg.ok, "development is not group generated");
         c.expect(perfect_secrecy(dev.system).universal, "development lacks universal secrecy");
         c.expect(substitution_probability(dev.system, SourceDistribution::uniform(2)).value ==
                      Rational(1, 4),
                  "development substitution(uniform) != 1/4");
         c.expect(substitution_probability_any_distribution(dev.system).value == Rational(1, 2),
                  "development worst-distribution substitution != 1/2");
       }});

  criteria.push_back(
      {3, "(9, 2x2, 1) fixture: lambda, closed forms, secrecy, ordering", [](Checker& c) {
         auto sys = get_system("huber9");
         auto bibd = check_splitting_bibd(sys);
         c.expect(bibd.is_bibd && bibd.lambda == 1, "not a lambda=1 splitting BIBD");
         c.expect(
             substitution_probability(sys, SourceDistribution::uniform(2)).value == Rational(1, 4),
             "substitution(uniform) != (mc-c)/(v-1) = 1/4");
         auto imp = impersonation_probability(sys).value;
         c.expect(imp == Rational(4, 9), "impersonation != mc/v = 4/9");
         c.expect(imp == simmons_bound(sys), "impersonation is not optimal");
         c.expect(perfect_secrecy(sys).universal, "universal secrecy fails");
         c.expect(check_equitably_ordered(sys).ok, "not equitably ordered");
       }});

  criteria.push_back(
      {4, "(25, 3x2, 1) development: lambda, ordering, secrecy, 1/6", [](Checker& c) {
         auto sys = dev25();
         auto bibd = check_splitting_bibd(sys);
         c.expect(bibd.is_bibd && bibd.lambda == 1, "not a lambda=1 splitting BIBD");
         auto eq = check_equitably_ordered(sys);
         c.expect(eq.ok, "not equitably ordered");
         for (const auto& row : eq.table)
           for (long long n : row) c.expect(n == 2, "a per-position count differs from 2");
         c.expect(perfect_secrecy(sys).universal, "universal secrecy fails");
         c.expect(
             substitution_probability(sys, SourceDistribution::uniform(3)).value == Rational(1, 6),
             "substitution(uniform) != 1/6");
       }});

  criteria.push_back(
      {5, "10-element AMD code: 4/9 < 1/2 gap and averaged-bound tightness", [](Checker& c) {
         auto code = get_amd("amd_z10");
         c.expect(amd_weak_epsilon(code).value == Rational(1, 2), "weak epsilon != 1/2");
         auto dev = develop_amd(code);
         auto uniform = SourceDistribution::uniform(4);
         c.expect(blundo_bound(dev.system) == Rational(4, 9), "max-part bound != 4/9");
         c.expect(averaged_substitution_bound(dev.system, uniform) == Rational(1, 2),
                  "averaged bound != 1/2");
         c.expect(substitution_probability(dev.system, uniform).value == Rational(1, 2),
                  "substitution(uniform) != 1/2");
         c.expect(blundo_bound(dev.system) < averaged_substitution_bound(dev.system, uniform),
                  "the averaged bound is not strictly tighter");
         auto tight = bound_tightness_check(dev.system, uniform);
         c.expect(tight.tight && tight.all_derangements_equal,
                  "the averaged bound is not attained with equal strategies");
       }});

  criteria.push_back(
      {6, "oracle equivalence on every fixture with v <= 6 (< 10 s)", [](Checker& c) {
         auto started = clock::now();
         AbelianGroup z6({6});
         std::vector<SplittingSystem> fixtures;
         fixtures.push_back(get_system("firstacode"));
         fixtures.push_back(SplittingSystem(2, {Block{{{0}, {1}}}}));
         fixtures.push_back(SplittingSystem(4, {Block{{{0, 1}, {2, 3}}}, Block{{{0, 2}, {1, 3}}}}));
         fixtures.push_back(
             SplittingSystem(6, odetail::develop_translates(z6, {Block{{{0, 1}, {2, 4}}}}).first));
         fixtures.push_back(
             SplittingSystem(6, odetail::develop_translates(z6, {Block{{{0}, {2, 3}}}}).first));
         for (const auto& sys : fixtures)
           for (const auto& dist : sandwich_distributions(sys.m())) {
             auto fast = substitution_probability(sys, dist);
             c.expect(fast.value == exhaustive_substitution_optimum(sys, dist),
                      "optimizer disagrees with exhaustive strategy enumeration");
             c.expect(strategy_success_probability(sys, dist, fast.strategy) == fast.value,
                      "witness strategy does not re-evaluate to the optimum");
           }
         auto secs = std::chrono::duration<double>(clock::now() - started).count();
         c.expect(secs < 10.0, "runtime " + std::to_string(secs) + "s exceeds 10s");
       }});

  criteria.push_back(
      {7, "TD(3,12) -> order -> inflate c=2 -> fill: (73, 3x2, 1) (< 60 s)", [](Checker& c) {
         auto started = clock::now();
         auto td = latin_square_td(12);
         auto og = order_gdd(td);
         std::vector<std::vector<int>> per_position(36, std::vector<int>(3, 0));
         for (const auto& blk : og.ordered_blocks())
           for (int j = 0; j < 3; ++j)
             per_position[static_cast<size_t>(blk[static_cast<size_t>(j)])]
                         [static_cast<size_t>(j)]++;
         for (const auto& row : per_position)
           for (int n : row) c.expect(n == 4, "a point misses 4 appearances in some position");

         auto sg = splitting_inflate(og, 2);
         auto filler = dev25();
         auto full = fill_groups(sg, {filler, filler, filler});
         auto bibd = check_splitting_bibd(full);
         c.expect(full.v() == 73, "wrong point count");
         c.expect(bibd.is_bibd && bibd.lambda == 1, "not a (73, 3x2, 1)-splitting BIBD");
         c.expect(check_equitably_ordered(full).ok, "result is not equitably ordered");
         auto secs = std::chrono::duration<double>(clock::now() - started).count();
         c.expect(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
       }});

  auto randomized = random_group_generated_systems(100, 0xACCE55ED);

  criteria.push_back({8,
                      "100 random group-generated systems: uniform messages, "
                      "optimal-impersonation law",
                      [&randomized](Checker& c) {
                        for (const auto& rs : randomized) {
                          auto gg =
                              check_group_generated(rs.sys, rs.group, translation_action(rs.group));
                          c.expect(gg.ok && gg.semiregular,
                                   "a development failed the group-generation check");
                          auto md = message_distribution(rs.sys,
                                                         SourceDistribution::uniform(rs.sys.m()));
                          Rational inv_v(1, rs.sys.v());
                          for (const auto& row : md.conditional)
                            for (const auto& pr : row)
                              c.expect(pr == inv_v,
                                       "a conditional message probability differs from 1/v");
                          bool optimal =
                              impersonation_probability(rs.sys).value == simmons_bound(rs.sys);
                          c.expect(optimal == rs.equal_block_sizes,
                                   "impersonation optimality does not match equal block sizes");
                          c.expect(perfect_secrecy(rs.sys).universal, "universal secrecy fails");
                          if (!c.ok()) break;
                        }
                      }});

  criteria.push_back(
      {9, "bound sandwich on fixtures and all randomized systems", [&randomized](Checker& c) {
         std::vector<SplittingSystem> systems{get_system("firstacode"), get_system("huber9"),
                                              dev25(), develop_amd(get_amd("amd_z9")).system,
                                              develop_amd(get_amd("amd_z10")).system};
         for (const auto& rs : randomized) systems.push_back(rs.sys);
         for (const auto& sys : systems) {
           auto uniform = SourceDistribution::uniform(sys.m());
           c.expect(blundo_bound(sys) <= substitution_probability(sys, uniform).value,
                    "max-part bound exceeds the substitution probability");
           c.expect(simmons_bound(sys) <= impersonation_probability(sys).value,
                    "smallest-block bound exceeds the impersonation probability");
           for (const auto& dist : sandwich_distributions(sys.m()))
             c.expect(
                 averaged_substitution_bound(sys, dist) <=
                     substitution_probability(sys, dist).value,
                 "averaged bound exceeds the substitution probability");
           if (!c.ok()) break;
         }
       }});

  criteria.push_back(
      {10, "base-block searches for (9,2,2) and (25,3,2) (< 30 s each)", [](Checker& c) {
         for (auto [v, m, cc] : {std::tuple{9, 2, 2}, std::tuple{25, 3, 2}}) {
           auto started = clock::now();
           AbelianGroup g({v});
           auto found = search_base_blocks(v, m, cc, g);
           if (!found) {
             c.expect(false, "search returned none");
             continue;
           }
           auto sys = order_development(*found, g);
           auto bibd = check_splitting_bibd(sys);
           c.expect(bibd.is_bibd && bibd.lambda == 1,
                    "development is not a lambda=1 splitting BIBD");
           c.expect(check_equitably_ordered(sys).ok, "development is not equitably ordered");
           c.expect(check_group_generated(sys, g, translation_action(g)).ok,
                    "development is not group generated");
           c.expect(perfect_secrecy(sys).universal, "development lacks universal secrecy");
           auto secs = std::chrono::duration<double>(clock::now() - started).count();
           c.expect(secs < 30.0, "runtime " + std::to_string(secs) + "s exceeds 30s");
         }
       }});

  int failed = 0;
  for (const auto& criterion : criteria) {
    Checker c;
    std::string error;
    auto started = clock::now();
    try {
      criterion.body(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    auto secs = std::chrono::duration<double>(clock::now() - started).count();
    bool pass = c.ok() && error.empty();
    std::ostringstream line;
    line << "criterion " << criterion.id << " [" << criterion.title << "] "
         << (pass ? "PASS" : "FAIL") << " (" << secs << "s)";
    if (!error.empty()) line << " exception: " << error;
    for (const auto& f : c.failures()) line << "\n    - " << f;
    std::cout << line.str() << "\n";
    if (!pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
