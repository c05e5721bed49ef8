#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "splitdesign/analysis.hpp"
#include "splitdesign/constructions.hpp"
#include "splitdesign/designs.hpp"
#include "splitdesign/io.hpp"
#include "splitdesign/ordering.hpp"
#include "splitdesign/verify.hpp"

namespace splitdesign::cli {

// Exit codes: 0 = success / property holds, 1 = property fails or a search
// was exhausted, 2 = usage or schema error, 3 = budget exceeded.
inline constexpr int kOk = 0;
inline constexpr int kFails = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

namespace detail {

using nlohmann::json;

inline json rat(const Rational& r) { return r.str(); }

inline json rats(const std::vector<Rational>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(rat(r));
  return out;
}

inline json element_json(const AbelianGroup& g, const GroupElement& e) {
  if (g.rank() == 1) return element_index(g, e);
  return json(e.coords);
}

inline std::string slurp(const std::string& path, std::istream& stdin_stream) {
  if (path == "-")
    return std::string{std::istreambuf_iterator<char>(stdin_stream),
                       std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw SchemaError("$: cannot open '" + path + "'");
  return std::string{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Document load(const std::string& path, std::istream& stdin_stream) {
  return parse_document(slurp(path, stdin_stream));
}

inline json load_json(const std::string& path, std::istream& stdin_stream) {
  json j = json::parse(slurp(path, stdin_stream), nullptr, false);
  if (j.is_discarded()) throw SchemaError("$: not valid JSON in '" + path + "'");
  return j;
}

inline AbelianGroup parse_group_spec(const std::string& spec) {
  std::vector<long long> orders;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      orders.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw SchemaError("$: bad group spec '" + spec + "'");
    }
  }
  return AbelianGroup(std::move(orders));
}

inline SourceDistribution resolve_dist(const std::string& spec, int m,
                                       std::istream& stdin_stream) {
  if (spec == "uniform") return SourceDistribution::uniform(m);
  auto dist = expect_document<SourceDistribution>(load(spec, stdin_stream), "source_distribution");
  if (dist.sources() != m)
    throw ValidationError("distribution has " + std::to_string(dist.sources()) +
                          " sources but the system has " + std::to_string(m));
  return dist;
}

inline std::uint64_t parse_seed(const std::string& hex) {
  try {
    return std::stoull(hex, nullptr, 16);
  } catch (const std::exception&) {
    throw SchemaError("$: bad --seed value '" + hex + "'");
  }
}

/// Every output is a readable interchange document; plain reports and error
/// envelopes are tagged so the document reader accepts them too.
inline void emit(std::ostream& out, json j) {
  if (j.is_object() && !j.contains("kind")) j["kind"] = "report";
  out << j.dump(2) << "\n";
}

/// Step-by-step pipeline state: either an interchange document or a
/// splitting GDD that still carries its design groups.
struct PlanState {
  std::optional<Document> doc;
  std::optional<SplittingGdd> sgdd;
  std::vector<std::string> notes;

  template <class T>
  const T& want(const char* what) const {
    if (!doc) throw ValidationError(std::string("plan: step needs a ") + what + " input");
    return expect_document<T>(*doc, what);
  }
};

inline json plan_output(const PlanState& state) {
  json out;
  if (state.sgdd) {
    out = to_json(state.sgdd->to_system());
    out["design_groups"] = state.sgdd->design_groups;
  } else if (state.doc) {
    out = to_json(*state.doc);
  } else {
    throw ValidationError("plan: no steps produced a result");
  }
  if (!state.notes.empty()) out["notes"] = state.notes;
  return out;
}

inline void run_plan_step(PlanState& state, const json& step, std::istream& stdin_stream) {
  if (!step.is_object() || !step.contains("op") || !step["op"].is_string())
    throw SchemaError("$.steps: each step needs an \"op\" string");
  std::string op = step["op"].get<std::string>();
  for (auto& ch : op)
    if (ch == '-') ch = '_';
  auto intfield = [&](const char* key) {
    if (!step.contains(key) || !step[key].is_number_integer())
      throw SchemaError("$.steps: op '" + op + "' needs integer \"" + key + "\"");
    return step[key].get<long long>();
  };

  if (op == "catalog") {
    if (!step.contains("name") || !step["name"].is_string())
      throw SchemaError("$.steps: catalog needs a \"name\"");
    state.doc = parse_document(catalog(step["name"].get<std::string>()));
    state.sgdd.reset();
  } else if (op == "load") {
    if (!step.contains("path") || !step["path"].is_string())
      throw SchemaError("$.steps: load needs a \"path\"");
    state.doc = load(step["path"].get<std::string>(), stdin_stream);
    state.sgdd.reset();
  } else if (op == "develop") {
    auto dev = develop_amd(state.want<AmdCode>("amd_code"));
    if (dev.has_repeated_blocks) state.notes.push_back("development has repeated blocks");
    state.doc = std::move(dev.system);
  } else if (op == "develop_bases") {
    const auto& bb = state.want<BaseBlocks>("base_blocks");
    state.doc = order_development(bb.blocks, bb.group);
  } else if (op == "td") {
    if (step.contains("p"))
      state.doc = prime_td(static_cast<int>(intfield("k")), static_cast<int>(intfield("p")));
    else
      state.doc = latin_square_td(static_cast<int>(intfield("n")));
    state.sgdd.reset();
  } else if (op == "sts") {
    state.doc = sts(static_cast<int>(intfield("u")));
    state.sgdd.reset();
  } else if (op == "inflate") {
    int w = static_cast<int>(intfield("w"));
    const Gdd& master = state.want<Gdd>("gdd");
    if (step.contains("ingredient")) {
      Document ing = step["ingredient"].is_string()
                         ? load(step["ingredient"].get<std::string>(), stdin_stream)
                         : parse_document(step["ingredient"]);
      Gdd ingredient = expect_document<Gdd>(ing, "gdd");
      state.doc = inflate_gdd(master, w, [&](int, int) { return ingredient; });
    } else {
      state.doc = inflate_gdd(master, w);
    }
  } else if (op == "order") {
    state.doc = order_gdd(state.want<Gdd>("gdd"));
  } else if (op == "splitting_inflate") {
    state.sgdd = splitting_inflate(state.want<OrderedGdd>("ordered gdd"), static_cast<int>(intfield("c")));
    state.doc.reset();
  } else if (op == "fill") {
    if (!state.sgdd) throw ValidationError("plan: fill needs a splitting_inflate result");
    if (!step.contains("fillers") || !step["fillers"].is_array())
      throw SchemaError("$.steps: fill needs a \"fillers\" array");
    std::vector<SplittingSystem> fillers;
    for (const auto& f : step["fillers"]) {
      Document doc = f.is_string() ? load(f.get<std::string>(), stdin_stream) : parse_document(f);
      fillers.push_back(expect_document<SplittingSystem>(doc, "splitting_system"));
    }
    if (fillers.size() == 1)
      fillers.resize(state.sgdd->design_groups.size(), fillers.front());
    state.doc = fill_groups(*state.sgdd, fillers);
    state.sgdd.reset();
  } else {
    throw SchemaError("$.steps: unknown op '" + op + "'");
  }
}

}  // namespace detail

/// Runs one CLI invocation. Reads documents from files or from `in` when a
/// path is "-", writes one JSON report to `out`, and returns the exit code.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  using detail::emit;
  using nlohmann::json;

  CLI::App app{"splitting designs, authentication codes and AMD codes: "
               "construct, order, verify and attack-analyze them exactly",
               "splitdesign"};
  app.require_subcommand(1);

  std::string seed_hex = "5EED";
  bool deterministic = true;
  app.add_option("--seed", seed_hex, "seed (hex) for sampled checks")->capture_default_str();
  app.add_option("--deterministic", deterministic,
                 "return canonical witnesses under any schedule (always on in this build)");

  // verify
  auto* verify = app.add_subcommand("verify", "check design properties");
  bool v_bibd = false, v_gdd = false, v_equitable = false, v_group = false;
  std::string v_automorphism, v_input = "-", v_group_spec, v_action = "translation";
  std::vector<long long> v_necessary;
  verify->add_flag("--bibd", v_bibd, "splitting BIBD check");
  verify->add_flag("--gdd", v_gdd, "GDD check");
  verify->add_flag("--equitable", v_equitable, "equitable ordering check");
  verify->add_flag("--group-generated", v_group, "group generation check");
  verify->add_option("--automorphism", v_automorphism, "permutation file (JSON array)");
  verify->add_option("--necessary", v_necessary, "v m c: equitable-ordering congruence")
      ->expected(3);
  verify->add_option("--group", v_group_spec, "cyclic orders, e.g. 9 or 2,4");
  verify->add_option("--action", v_action, "'translation' or an action table file");
  verify->add_option("input", v_input, "document path or -");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "exact attack analysis");
  bool a_sub = false, a_any = false, a_imp = false, a_msg = false, a_sec = false;
  std::string a_dist = "uniform", a_input = "-";
  analyze->add_flag("--substitution", a_sub, "optimal substitution probability");
  analyze->add_flag("--any-distribution", a_any, "worst case over source distributions");
  analyze->add_flag("--impersonation", a_imp, "impersonation probability");
  analyze->add_flag("--message-dist", a_msg, "induced message distribution");
  analyze->add_flag("--secrecy", a_sec, "perfect secrecy");
  analyze->add_option("--dist", a_dist, "'uniform' or a source_distribution path");
  analyze->add_option("input", a_input, "document path or -");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "lower bounds vs exact probabilities");
  std::string b_dist = "uniform", b_input = "-";
  bounds->add_option("--dist", b_dist, "'uniform' or a source_distribution path");
  bounds->add_option("input", b_input, "document path or -");

  // amd
  auto* amd = app.add_subcommand("amd", "AMD code analysis");
  bool m_weak = false, m_strong = false, m_ropt = false;
  std::string m_kind = "weak", m_input = "-";
  amd->add_flag("--weak", m_weak, "weak epsilon (uniform unknown source)");
  amd->add_flag("--strong", m_strong, "strong epsilon (known source)");
  amd->add_flag("--r-optimal", m_ropt, "R-optimality for c-regular codes");
  amd->add_option("--kind", m_kind, "epsilon used by --r-optimal: weak or strong");
  amd->add_option("input", m_input, "amd_code path or -");

  // develop
  auto* develop = app.add_subcommand("develop", "development of an AMD code");
  std::string d_input = "-";
  develop->add_option("input", d_input, "amd_code path or -");

  // order
  auto* order = app.add_subcommand("order", "produce an equitable ordering");
  std::string o_method, o_input = "-";
  long long o_budget = ReorderOptions{}.max_nodes;
  double o_max_bits = ReorderOptions{}.max_bits;
  order->add_option("--method", o_method, "development | gdd-coloring | exact")->required();
  order->add_option("--budget", o_budget, "node budget for --method exact");
  order->add_option("--max-bits", o_max_bits, "search-space size guard for --method exact");
  order->add_option("input", o_input, "document path or -");

  // search
  auto* search = app.add_subcommand("search", "difference-family base block search");
  long long s_v = 0, s_m = 0, s_c = 0;
  long long s_budget = SearchOptions{}.max_nodes;
  std::string s_group;
  search->add_option("--v", s_v, "points")->required();
  search->add_option("--m", s_m, "sources")->required();
  search->add_option("--c", s_c, "encodings per source")->required();
  search->add_option("--group", s_group, "cyclic orders (default: the cyclic group of order v)");
  search->add_option("--budget", s_budget, "node budget");

  // construct
  auto* construct = app.add_subcommand("construct", "run a pipeline plan");
  std::string c_input = "-";
  construct->add_option("plan", c_input, "plan document path or -");

  // catalog
  auto* cat = app.add_subcommand("catalog", "print a transcribed fixture");
  std::string cat_name;
  bool cat_list = false;
  cat->add_option("name", cat_name, "fixture name");
  cat->add_flag("--list", cat_list, "list fixture names");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit(out, json{{"error", "usage"}, {"message", e.what()}});
    return kUsage;
  }

  try {
    std::uint64_t seed = detail::parse_seed(seed_hex);

    if (app.got_subcommand(verify)) {
      int modes = (v_bibd ? 1 : 0) + (v_gdd ? 1 : 0) + (v_equitable ? 1 : 0) + (v_group ? 1 : 0) +
                  (!v_automorphism.empty() ? 1 : 0) + (!v_necessary.empty() ? 1 : 0);
      if (modes != 1) throw SchemaError("$: verify needs exactly one mode flag");
      if (!v_necessary.empty()) {
        bool ok = equitable_necessary_condition(v_necessary[0], v_necessary[1], v_necessary[2]);
        emit(out, json{{"op", "verify.necessary"}, {"ok", ok}});
        return ok ? kOk : kFails;
      }
      Document doc = detail::load(v_input, in);
      if (v_bibd) {
        const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
        auto check = check_splitting_bibd(sys);
        json j{{"op", "verify.bibd"},
               {"is_bibd", check.is_bibd},
               {"has_repeated_blocks", check.has_repeated_blocks},
               {"report", check.report}};
        if (check.lambda) j["lambda"] = *check.lambda;
        if (check.c) j["c"] = *check.c;
        if (check.witness_pair) {
          j["witness_pair"] = *check.witness_pair;
          j["witness_count"] = *check.witness_count;
        }
        emit(out, j);
        return check.is_bibd ? kOk : kFails;
      }
      if (v_gdd) {
        const Gdd* g = std::get_if<Gdd>(&doc);
        const OrderedGdd* og = std::get_if<OrderedGdd>(&doc);
        if (!g && !og) throw SchemaError("$: expected a gdd document");
        auto check = check_gdd(og ? og->skeleton() : *g);
        json j{{"op", "verify.gdd"},
               {"is_gdd", check.is_gdd},
               {"type", check.type_str},
               {"report", check.report}};
        if (check.witness_pair) j["witness_pair"] = *check.witness_pair;
        emit(out, j);
        return check.is_gdd ? kOk : kFails;
      }
      if (v_equitable) {
        const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
        auto check = check_equitably_ordered(sys);
        json j{{"op", "verify.equitable"}, {"ok", check.ok}, {"table", check.table}};
        if (check.witness_point) j["witness_point"] = *check.witness_point;
        emit(out, j);
        return check.ok ? kOk : kFails;
      }
      if (!v_automorphism.empty()) {
        const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
        json pj = detail::load_json(v_automorphism, in);
        if (!pj.is_array()) throw SchemaError("$: permutation file must hold a JSON array");
        PointPermutation perm;
        for (const auto& x : pj) perm.push_back(x.get<int>());
        bool ok = is_automorphism(sys, perm);
        emit(out, json{{"op", "verify.automorphism"}, {"ok", ok}});
        return ok ? kOk : kFails;
      }
      // group generated
      const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
      if (v_group_spec.empty()) throw SchemaError("$: --group-generated needs --group");
      AbelianGroup g = detail::parse_group_spec(v_group_spec);
      std::vector<PointPermutation> action;
      if (v_action == "translation") {
        action = translation_action(g);
      } else {
        json aj = detail::load_json(v_action, in);
        if (!aj.is_array()) throw SchemaError("$: action file must hold an array of permutations");
        for (const auto& row : aj) {
          PointPermutation perm;
          for (const auto& x : row) perm.push_back(x.get<int>());
          action.push_back(std::move(perm));
        }
      }
      auto check = check_group_generated(sys, g, action, seed);
      json orbit_sizes = json::array();
      for (const auto& orbit : check.block_orbits) orbit_sizes.push_back(orbit.size());
      emit(out, json{{"op", "verify.group_generated"},
                     {"ok", check.ok},
                     {"homomorphism", check.homomorphism},
                     {"regular", check.regular},
                     {"all_automorphisms", check.all_automorphisms},
                     {"semiregular", check.semiregular},
                     {"orbit_sizes", orbit_sizes},
                     {"report", check.report}});
      return check.ok ? kOk : kFails;
    }

    if (app.got_subcommand(analyze)) {
      int modes = (a_sub ? 1 : 0) + (a_any ? 1 : 0) + (a_imp ? 1 : 0) + (a_msg ? 1 : 0) +
                  (a_sec ? 1 : 0);
      if (modes != 1) throw SchemaError("$: analyze needs exactly one mode flag");
      Document doc = detail::load(a_input, in);
      const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
      if (a_sub) {
        auto rep = substitution_probability(sys, detail::resolve_dist(a_dist, sys.m(), in));
        emit(out, json{{"op", "analyze.substitution"},
                       {"value", detail::rat(rep.value)},
                       {"strategy", rep.strategy}});
        return kOk;
      }
      if (a_any) {
        auto rep = substitution_probability_any_distribution(sys);
        emit(out, json{{"op", "analyze.any_distribution"},
                       {"value", detail::rat(rep.value)},
                       {"per_source", detail::rats(*rep.per_source)},
                       {"strategy", rep.strategy}});
        return kOk;
      }
      if (a_imp) {
        auto rep = impersonation_probability(sys);
        emit(out, json{{"op", "analyze.impersonation"},
                       {"value", detail::rat(rep.value)},
                       {"message", rep.message}});
        return kOk;
      }
      if (a_msg) {
        auto md = message_distribution(sys, detail::resolve_dist(a_dist, sys.m(), in));
        json cond = json::array();
        for (const auto& row : md.conditional) cond.push_back(detail::rats(row));
        emit(out, json{{"op", "analyze.message_dist"},
                       {"conditional", cond},
                       {"marginal", detail::rats(md.marginal)}});
        return kOk;
      }
      std::optional<SourceDistribution> dist;
      if (analyze->count("--dist")) dist = detail::resolve_dist(a_dist, sys.m(), in);
      auto rep = perfect_secrecy(sys, dist);
      json j{{"op", "analyze.secrecy"}, {"holds", rep.holds}, {"universal", rep.universal}};
      if (rep.witness)
        j["witness"] = json{{"source", rep.witness->first}, {"message", rep.witness->second}};
      emit(out, j);
      return rep.holds ? kOk : kFails;
    }

    if (app.got_subcommand(bounds)) {
      Document doc = detail::load(b_input, in);
      const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
      auto dist = detail::resolve_dist(b_dist, sys.m(), in);
      TightnessOptions topts;
      topts.seed = seed;
      auto tight = bound_tightness_check(sys, dist, topts);
      emit(out, json{{"op", "bounds"},
                     {"blundo", detail::rat(blundo_bound(sys))},
                     {"simmons", detail::rat(simmons_bound(sys))},
                     {"averaged", detail::rat(averaged_substitution_bound(sys, dist))},
                     {"substitution", detail::rat(tight.probability)},
                     {"impersonation", detail::rat(impersonation_probability(sys).value)},
                     {"tight", tight.tight},
                     {"all_derangements_equal", tight.all_derangements_equal},
                     {"exhaustive", tight.exhaustive},
                     {"strategies_checked", tight.strategies_checked}});
      return kOk;
    }

    if (app.got_subcommand(amd)) {
      int modes = (m_weak ? 1 : 0) + (m_strong ? 1 : 0) + (m_ropt ? 1 : 0);
      if (modes != 1) throw SchemaError("$: amd needs exactly one mode flag");
      Document doc = detail::load(m_input, in);
      const auto& code = expect_document<AmdCode>(doc, "amd_code");
      if (m_weak) {
        auto rep = amd_weak_epsilon(code);
        emit(out, json{{"op", "amd.weak"},
                       {"value", detail::rat(rep.value)},
                       {"delta", detail::element_json(code.group(), rep.delta)}});
        return kOk;
      }
      if (m_strong) {
        auto rep = amd_strong_epsilon(code);
        emit(out, json{{"op", "amd.strong"},
                       {"value", detail::rat(rep.value)},
                       {"source", rep.source},
                       {"delta", detail::element_json(code.group(), rep.delta)},
                       {"per_source", detail::rats(rep.per_source)}});
        return kOk;
      }
      if (m_kind != "weak" && m_kind != "strong")
        throw SchemaError("$: --kind must be weak or strong");
      auto rep = amd_r_optimality(
          code, m_kind == "weak" ? AmdSecurity::weak : AmdSecurity::strong);
      json j{{"op", "amd.r_optimal"},
             {"epsilon_kind", m_kind},
             {"c_regular", rep.c_regular},
             {"epsilon", detail::rat(rep.epsilon)}};
      if (rep.c) j["c"] = *rep.c;
      if (rep.bound) j["bound"] = detail::rat(*rep.bound);
      j["r_optimal"] = rep.r_optimal ? json(*rep.r_optimal) : json(nullptr);
      emit(out, j);
      return rep.r_optimal == true ? kOk : kFails;
    }

    if (app.got_subcommand(develop)) {
      Document doc = detail::load(d_input, in);
      const auto& code = expect_document<AmdCode>(doc, "amd_code");
      auto dev = develop_amd(code);
      json j = to_json(dev.system);
      if (dev.has_repeated_blocks) j["repeated_blocks"] = true;
      emit(out, j);
      return kOk;
    }

    if (app.got_subcommand(order)) {
      Document doc = detail::load(o_input, in);
      if (o_method == "development") {
        const auto& bb = expect_document<BaseBlocks>(doc, "base_blocks");
        try {
          emit(out, to_json(order_development(bb.blocks, bb.group)));
          return kOk;
        } catch (const OrbitCollision& e) {
          emit(out, json{{"error", "orbit_collision"}, {"message", e.what()}});
          return kFails;
        }
      }
      if (o_method == "gdd-coloring") {
        const auto& g = expect_document<Gdd>(doc, "gdd");
        emit(out, to_json(order_gdd(g)));
        return kOk;
      }
      if (o_method == "exact") {
        const auto& sys = expect_document<SplittingSystem>(doc, "splitting_system");
        ReorderOptions opts;
        opts.max_nodes = o_budget;
        opts.max_bits = o_max_bits;
        auto result = reorder_exact(sys, opts);
        if (!result) {
          emit(out, json{{"op", "order.exact"}, {"result", "none"}});
          return kFails;
        }
        emit(out, to_json(*result));
        return kOk;
      }
      throw SchemaError("$: unknown --method '" + o_method + "'");
    }

    if (app.got_subcommand(search)) {
      AbelianGroup g = s_group.empty() ? AbelianGroup({s_v}) : detail::parse_group_spec(s_group);
      SearchOptions opts;
      opts.max_nodes = s_budget;
      auto found = search_base_blocks(static_cast<int>(s_v), static_cast<int>(s_m),
                                      static_cast<int>(s_c), g, opts);
      if (!found) {
        emit(out, json{{"op", "search"}, {"result", "none"}});
        return kFails;
      }
      emit(out, to_json(BaseBlocks{std::move(g), std::move(*found)}));
      return kOk;
    }

    if (app.got_subcommand(construct)) {
      json plan = detail::load_json(c_input, in);
      if (!plan.is_object() || plan.value("kind", "") != "plan" || !plan.contains("steps") ||
          !plan["steps"].is_array())
        throw SchemaError("$: expected {\"kind\":\"plan\",\"steps\":[...]}");
      detail::PlanState state;
      for (const auto& step : plan["steps"]) detail::run_plan_step(state, step, in);
      emit(out, detail::plan_output(state));
      return kOk;
    }

    if (app.got_subcommand(cat)) {
      if (cat_list) {
        emit(out, json{{"op", "catalog"}, {"names", catalog_names()}});
        return kOk;
      }
      if (cat_name.empty()) throw SchemaError("$: catalog needs a name or --list");
      emit(out, catalog(cat_name));
      return kOk;
    }

    throw SchemaError("$: no subcommand");
  } catch (const BudgetExceeded& e) {
    emit(out, json{{"error", "budget_exceeded"}, {"message", e.what()}});
    return kBudget;
  } catch (const OrbitCollision& e) {
    emit(out, json{{"error", "orbit_collision"}, {"message", e.what()}});
    return kFails;
  } catch (const ValidationError& e) {
    emit(out, json{{"error", "validation"}, {"message", e.what()}});
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    emit(out, json{{"error", "internal"}, {"message", e.what()}});
    return kUsage;
  }
}

}  // namespace splitdesign::cli
