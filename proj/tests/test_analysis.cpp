#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <splitdesign/analysis.hpp>
#include <splitdesign/constructions.hpp>
#include <splitdesign/io.hpp>
#include <splitdesign/ordering.hpp>

using namespace splitdesign;

namespace {

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

SplittingSystem one_block() { return SplittingSystem(2, {Block{{{0}, {1}}}}); }

/// Independent oracle: maximize the defining success-probability sum over
/// every strategy with sigma(t) != t, by plain enumeration.
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

}  // namespace

TEST_CASE("substitution probability of the five-key code") {
  auto sys = get_system("firstacode");
  auto uniform = substitution_probability(sys, SourceDistribution::uniform(2));
  CHECK(uniform.value == Rational(1, 2));
  auto skewed = substitution_probability(sys, SourceDistribution({Rational(3, 4), Rational(1, 4)}));
  CHECK(skewed.value == Rational(1, 2));
  // the witness re-evaluates to the reported value under the defining formula
  CHECK(strategy_success_probability(sys, SourceDistribution::uniform(2), uniform.strategy) ==
        uniform.value);
  for (int t = 0; t < sys.v(); ++t) CHECK(uniform.strategy[static_cast<size_t>(t)] != t);
}

TEST_CASE("substitution probability of the 9-point splitting BIBD is (mc-c)/(v-1)") {
  auto sys = get_system("huber9");
  auto uniform = SourceDistribution::uniform(2);
  auto rep = substitution_probability(sys, uniform);
  CHECK(rep.value == Rational(1, 4));
  // lambda = 1 makes every fixed-point-free strategy optimal; spot-check a
  // seeded sample of them against the defining formula
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<int> pick(0, sys.v() - 2);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int> sigma(static_cast<size_t>(sys.v()));
    for (int t = 0; t < sys.v(); ++t) {
      int c = pick(rng);
      sigma[static_cast<size_t>(t)] = c < t ? c : c + 1;
    }
    REQUIRE(strategy_success_probability(sys, uniform, sigma) == Rational(1, 4));
  }
}

TEST_CASE("separable optimizer equals brute force on all small fixtures") {
  AbelianGroup z6({6});
  std::vector<std::pair<SplittingSystem, const char*>> fixtures;
  fixtures.emplace_back(get_system("firstacode"), "firstacode");
  fixtures.emplace_back(one_block(), "one_block");
  fixtures.emplace_back(
      SplittingSystem(6, odetail::develop_translates(z6, {Block{{{0, 1}, {2, 4}}}}).first),
      "dev z6 2x2");
  fixtures.emplace_back(
      SplittingSystem(6, odetail::develop_translates(z6, {Block{{{0}, {2, 3}}}}).first),
      "dev z6 mixed parts");

  for (const auto& [sys, name] : fixtures) {
    CAPTURE(name);
    std::vector<SourceDistribution> dists{SourceDistribution::uniform(sys.m()),
                                          SourceDistribution::point_mass(sys.m(), 0)};
    std::vector<Rational> skew(static_cast<size_t>(sys.m()), Rational(1, 2 * (sys.m() - 1)));
    skew[0] = Rational(1, 2);
    dists.push_back(SourceDistribution(skew));
    for (const auto& dist : dists) {
      auto rep = substitution_probability(sys, dist);
      CHECK(rep.value == exhaustive_substitution_optimum(sys, dist));
      CHECK(strategy_success_probability(sys, dist, rep.strategy) == rep.value);
    }
  }
}

TEST_CASE("worst distribution substitution") {
  auto dev9 = develop_amd(get_amd("amd_z9"));
  REQUIRE_FALSE(dev9.has_repeated_blocks);
  auto rep = substitution_probability_any_distribution(dev9.system);
  CHECK(rep.value == Rational(1, 2));

  auto first = substitution_probability_any_distribution(get_system("firstacode"));
  CHECK(first.value == Rational(1, 2));
  REQUIRE(first.per_source.has_value());
  CHECK((*first.per_source)[0] == Rational(1, 2));
  CHECK((*first.per_source)[1] == Rational(1, 2));

  CHECK(substitution_probability_any_distribution(one_block()).value == Rational(1));
}

TEST_CASE("impersonation probabilities") {
  auto first = impersonation_probability(get_system("firstacode"));
  CHECK(first.value == Rational(4, 5));
  CHECK(impersonation_probability(get_system("huber9")).value == Rational(4, 9));
  CHECK(impersonation_probability(dev25()).value == Rational(6, 25));
  CHECK(impersonation_probability(one_block()).value == Rational(1));
}

TEST_CASE("substitution lower bound (max-part form)") {
  CHECK(blundo_bound(get_system("firstacode")) == Rational(1, 2));
  auto dev10 = develop_amd(get_amd("amd_z10"));
  CHECK(blundo_bound(dev10.system) == Rational(4, 9));
  CHECK(blundo_bound(get_system("huber9")) == Rational(1, 4));
}

TEST_CASE("impersonation lower bound") {
  CHECK(simmons_bound(get_system("firstacode")) == Rational(4, 5));
  CHECK(simmons_bound(get_system("huber9")) == Rational(4, 9));
  CHECK(simmons_bound(one_block()) == Rational(1));
}

TEST_CASE("averaged substitution bound") {
  auto dev10 = develop_amd(get_amd("amd_z10"));
  auto uniform4 = SourceDistribution::uniform(4);
  CHECK(averaged_substitution_bound(dev10.system, uniform4) == Rational(1, 2));
  // strictly above the max-part bound on this non-uniform-part system
  CHECK(blundo_bound(dev10.system) < averaged_substitution_bound(dev10.system, uniform4));
  // on c-splitting systems the two bounds coincide
  auto uniform2 = SourceDistribution::uniform(2);
  CHECK(averaged_substitution_bound(get_system("huber9"), uniform2) ==
        blundo_bound(get_system("huber9")));
  CHECK(averaged_substitution_bound(get_system("firstacode"), uniform2) == Rational(1, 2));
}

TEST_CASE("message distributions") {
  auto md9 = message_distribution(get_system("huber9"), SourceDistribution::uniform(2));
  for (int j = 0; j < 2; ++j)
    for (int t = 0; t < 9; ++t)
      CHECK(md9.conditional[static_cast<size_t>(j)][static_cast<size_t>(t)] == Rational(1, 9));

  auto mdf = message_distribution(get_system("firstacode"), SourceDistribution::uniform(2));
  for (int j = 0; j < 2; ++j)
    for (int t = 0; t < 5; ++t)
      CHECK(mdf.conditional[static_cast<size_t>(j)][static_cast<size_t>(t)] == Rational(1, 5));

  auto md1 = message_distribution(one_block(), SourceDistribution::uniform(2));
  CHECK(md1.conditional[0][0] == Rational(1));
  CHECK(md1.conditional[1][0] == Rational(0));

  CHECK_THROWS_AS(message_distribution(one_block(), SourceDistribution::uniform(3)),
                  ValidationError);
}

TEST_CASE("perfect secrecy") {
  CHECK(perfect_secrecy(get_system("huber9")).universal);
  CHECK(perfect_secrecy(dev25()).universal);

  auto bad = perfect_secrecy(one_block());
  CHECK_FALSE(bad.universal);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->first == 0);
  CHECK(bad.witness->second == 0);

  // not universal, but a point mass trivially keeps Pr(s|t) = Pr(s)
  auto degenerate = perfect_secrecy(one_block(), SourceDistribution::point_mass(2, 0));
  CHECK_FALSE(degenerate.universal);
  CHECK(degenerate.holds);
  auto leaky = perfect_secrecy(one_block(), SourceDistribution::uniform(2));
  CHECK_FALSE(leaky.holds);
}

TEST_CASE("weak amd epsilon") {
  CHECK(amd_weak_epsilon(get_amd("amd_z9")).value == Rational(1, 4));
  CHECK(amd_weak_epsilon(get_amd("amd_z10")).value == Rational(1, 2));
  AbelianGroup z3({3});
  AmdCode lonely(z3, {{GroupElement{{0}}}});
  CHECK(amd_weak_epsilon(lonely).value == Rational(0));
  AbelianGroup z1({1});
  CHECK_THROWS_AS(amd_weak_epsilon(AmdCode(z1, {{GroupElement{{0}}}})), ValidationError);
}

TEST_CASE("strong amd epsilon") {
  auto z9 = amd_strong_epsilon(get_amd("amd_z9"));
  CHECK(z9.value == Rational(1, 2));
  AbelianGroup z3({3});
  AmdCode det(z3, {{GroupElement{{0}}}, {GroupElement{{1}}}});
  CHECK(amd_strong_epsilon(det).value == Rational(1));
  auto z10 = amd_strong_epsilon(get_amd("amd_z10"));
  CHECK(z10.value == Rational(1));
  CHECK(z10.source == 0);  // the singleton set A(1) = {0} is fully exposed
}

TEST_CASE("amd epsilons over a product group") {
  AbelianGroup g({2, 4});
  AmdCode code(g, {{GroupElement{{0, 0}}}, {GroupElement{{0, 1}}}});
  // only (0,1) maps source 1 into source 2, and only (0,3) the reverse
  CHECK(amd_weak_epsilon(code).value == Rational(1, 2));
  CHECK(amd_weak_epsilon(code).delta == GroupElement{{0, 1}});
  CHECK(amd_strong_epsilon(code).value == Rational(1));
}

TEST_CASE("r-optimality verdicts") {
  auto weak9 = amd_r_optimality(get_amd("amd_z9"), AmdSecurity::weak);
  CHECK(weak9.c_regular);
  CHECK(weak9.c == 2);
  CHECK(weak9.epsilon == Rational(1, 4));
  CHECK(weak9.bound == Rational(1, 4));
  CHECK(weak9.r_optimal == true);

  auto z10 = amd_r_optimality(get_amd("amd_z10"), AmdSecurity::weak);
  CHECK_FALSE(z10.c_regular);
  CHECK_FALSE(z10.r_optimal.has_value());

  AbelianGroup z3({3});
  AmdCode det(z3, {{GroupElement{{0}}}, {GroupElement{{1}}}});
  auto weak_det = amd_r_optimality(det, AmdSecurity::weak);
  CHECK(weak_det.c_regular);
  CHECK(weak_det.epsilon == Rational(1, 2));
  CHECK(weak_det.r_optimal == true);
  auto strong_det = amd_r_optimality(det, AmdSecurity::strong);
  CHECK(strong_det.epsilon == Rational(1));
  CHECK(strong_det.r_optimal == false);
}

TEST_CASE("developments inherit the code's epsilons") {
  for (const char* name : {"amd_z9", "amd_z10"}) {
    CAPTURE(name);
    auto code = get_amd(name);
    auto dev = develop_amd(code);
    REQUIRE_FALSE(dev.has_repeated_blocks);
    CHECK(amd_weak_epsilon(code).value ==
          substitution_probability(dev.system, SourceDistribution::uniform(code.sources())).value);
    auto strong = amd_strong_epsilon(code);
    auto any = substitution_probability_any_distribution(dev.system);
    CHECK(strong.value == any.value);
    REQUIRE(any.per_source.has_value());
    for (int s = 0; s < code.sources(); ++s)
      CHECK(strong.per_source[static_cast<size_t>(s)] == (*any.per_source)[static_cast<size_t>(s)]);
  }
}

TEST_CASE("tightness of the averaged bound") {
  auto uniform2 = SourceDistribution::uniform(2);

  // small enough to enumerate every strategy
  auto first = bound_tightness_check(get_system("firstacode"), uniform2);
  CHECK(first.tight);
  CHECK(first.exhaustive);
  CHECK(first.strategies_checked == 1024);  // (5-1)^5
  CHECK(first.all_derangements_equal);

  // 8^9 strategies: deterministic sampling path
  auto dev9 = develop_amd(get_amd("amd_z9"));
  auto t9 = bound_tightness_check(dev9.system, uniform2);
  CHECK(t9.tight);
  CHECK_FALSE(t9.exhaustive);
  CHECK(t9.all_derangements_equal);
  CHECK(t9.probability == Rational(1, 4));

  // skewed sources over unequal part sizes: the bound is strict
  auto dev10 = develop_amd(get_amd("amd_z10"));
  SourceDistribution skew({Rational(1, 2), Rational(1, 6), Rational(1, 6), Rational(1, 6)});
  auto t10 = bound_tightness_check(dev10.system, skew);
  CHECK_FALSE(t10.tight);
  CHECK(t10.bound == Rational(14, 27));
  // the constant-shift strategy +5 already beats the bound
  std::vector<int> shift5(10);
  for (int t = 0; t < 10; ++t) shift5[static_cast<size_t>(t)] = (t + 5) % 10;
  CHECK(strategy_success_probability(dev10.system, skew, shift5) == Rational(2, 3));
  CHECK(t10.probability >= Rational(2, 3));
}

TEST_CASE("bound sandwich on the catalog fixtures") {
  std::vector<SplittingSystem> fixtures{get_system("firstacode"), get_system("huber9"), dev25(),
                                        develop_amd(get_amd("amd_z9")).system,
                                        develop_amd(get_amd("amd_z10")).system};
  for (const auto& sys : fixtures) {
    auto uniform = SourceDistribution::uniform(sys.m());
    CHECK(blundo_bound(sys) <= substitution_probability(sys, uniform).value);
    CHECK(simmons_bound(sys) <= impersonation_probability(sys).value);
    std::vector<Rational> skew(static_cast<size_t>(sys.m()), Rational(1, 2 * (sys.m() - 1)));
    skew[0] = Rational(1, 2);
    for (const auto& dist : {uniform, SourceDistribution(skew)})
      CHECK(averaged_substitution_bound(sys, dist) <= substitution_probability(sys, dist).value);
  }
}

TEST_CASE("lambda=1 splitting BIBDs hit the closed forms") {
  struct Case {
    SplittingSystem sys;
    long long m, c;
  };
  std::vector<Case> cases;
  cases.push_back({get_system("huber9"), 2, 2});
  cases.push_back({dev25(), 3, 2});
  for (const auto& [sys, m, c] : cases) {
    auto uniform = SourceDistribution::uniform(static_cast<int>(m));
    CHECK(substitution_probability(sys, uniform).value == Rational(m * c - c, sys.v() - 1));
    CHECK(impersonation_probability(sys).value == Rational(m * c, sys.v()));
    CHECK(impersonation_probability(sys).value == simmons_bound(sys));
  }
}

TEST_CASE("witnesses re-evaluate to their reported values") {
  // impersonation: the returned message really is hit by value * b blocks
  for (const char* name : {"firstacode", "huber9"}) {
    auto sys = get_system(name);
    auto rep = impersonation_probability(sys);
    long long hits = 0;
    for (const auto& blk : sys.blocks())
      for (const auto& part : blk.parts)
        if (std::binary_search(part.begin(), part.end(), rep.message)) ++hits;
    CHECK(Rational(hits, sys.b()) == rep.value);
  }

  // amd: the returned offset really achieves epsilon
  for (const char* name : {"amd_z9", "amd_z10"}) {
    auto code = get_amd(name);
    const auto& g = code.group();
    auto eval = [&](const GroupElement& delta, int only_source) {
      Rational total = 0;
      for (int s = 0; s < code.sources(); ++s) {
        if (only_source >= 0 && s != only_source) continue;
        long long hits = 0;
        for (const auto& e : code.encoding(s)) {
          auto moved = group_add(g, e, delta);
          for (int sp = 0; sp < code.sources(); ++sp) {
            if (sp == s) continue;
            const auto& set = code.encoding(sp);
            if (std::find(set.begin(), set.end(), moved) != set.end()) ++hits;
          }
        }
        Rational share(hits, static_cast<long long>(code.encoding(s).size()));
        total += only_source >= 0 ? share : share / Rational(code.sources());
      }
      return total;
    };
    auto weak = amd_weak_epsilon(code);
    CHECK(eval(weak.delta, -1) == weak.value);
    auto strong = amd_strong_epsilon(code);
    CHECK(eval(strong.delta, strong.source) == strong.value);
  }
}

TEST_CASE("group generated: impersonation optimal iff block sizes equal") {
  AbelianGroup z9({9});
  auto orbit1 = odetail::develop_translates(z9, {Block{{{0, 1}, {2, 4}}}}).first;
  auto orbit2 = odetail::develop_translates(z9, {Block{{{0, 2}, {1, 5, 8}}}}).first;

  // equal block sizes within one orbit: optimal
  SplittingSystem even(9, orbit1);
  CHECK(impersonation_probability(even).value == simmons_bound(even));

  // two orbits with block sizes 4 and 5: strictly suboptimal
  std::vector<Block> blocks = orbit1;
  blocks.insert(blocks.end(), orbit2.begin(), orbit2.end());
  SplittingSystem uneven(9, blocks);
  CHECK(impersonation_probability(uneven).value > simmons_bound(uneven));
}
