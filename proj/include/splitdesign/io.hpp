#pragma once

#include <istream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "splitdesign/designs.hpp"

namespace splitdesign {

/// Schema violation in an interchange document; the message carries a path
/// like "$.blocks[3][1]".
struct SchemaError : ValidationError {
  using ValidationError::ValidationError;
};

/// A group together with ordered base blocks over its element indices; the
/// input form for developments and the output form of base-block searches.
struct BaseBlocks {
  AbelianGroup group;
  std::vector<Block> blocks;

  friend bool operator==(const BaseBlocks&, const BaseBlocks&) = default;
};

/// A CLI report or error document; carried verbatim so that every tool
/// output stays readable by this same reader.
struct Report {
  nlohmann::json body;

  friend bool operator==(const Report&, const Report&) = default;
};

using Document =
    std::variant<SplittingSystem, AmdCode, Gdd, OrderedGdd, SourceDistribution, BaseBlocks, Report>;

namespace iodetail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& why) {
  throw SchemaError(path + ": " + why);
}

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

inline long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

inline std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(static_cast<int>(as_int(j[i], path + "[" + std::to_string(i) + "]")));
  return out;
}

inline std::vector<std::vector<int>> as_int_lists(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<std::vector<int>> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int_list(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline AbelianGroup as_group(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of cyclic orders");
  std::vector<long long> orders;
  for (size_t i = 0; i < j.size(); ++i)
    orders.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  try {
    return AbelianGroup(std::move(orders));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

inline Block as_block(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of parts");
  Block b;
  for (size_t i = 0; i < j.size(); ++i)
    b.parts.push_back(as_int_list(j[i], path + "[" + std::to_string(i) + "]"));
  return b;
}

inline std::vector<Block> as_blocks(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of blocks");
  std::vector<Block> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(as_block(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// An element is written as its enumeration index for rank-1 groups and as a
/// coordinate list otherwise; both spellings are accepted on input.
inline GroupElement as_element(const AbelianGroup& g, const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    long long idx = j.get<long long>();
    if (idx < 0 || idx >= g.order()) fail(path, "element index out of range");
    return element_at(g, idx);
  }
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != g.rank()) fail(path, "coordinate count mismatch");
    GroupElement e;
    for (size_t i = 0; i < j.size(); ++i)
      e.coords.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
    return group_normalize(g, e);
  }
  fail(path, "expected an element index or coordinate list");
}

}  // namespace iodetail

inline nlohmann::json to_json(const SplittingSystem& sys) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& blk : sys.blocks()) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : blk.parts) parts.push_back(p);
    blocks.push_back(std::move(parts));
  }
  return {{"kind", "splitting_system"}, {"v", sys.v()}, {"m", sys.m()}, {"blocks", std::move(blocks)}};
}

inline nlohmann::json to_json(const AmdCode& code) {
  nlohmann::json enc = nlohmann::json::array();
  for (const auto& set : code.encodings()) {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& e : set) {
      if (code.group().rank() == 1)
        s.push_back(element_index(code.group(), e));
      else
        s.push_back(e.coords);
    }
    enc.push_back(std::move(s));
  }
  return {{"kind", "amd_code"},
          {"group", code.group().orders()},
          {"sources", code.sources()},
          {"encodings", std::move(enc)}};
}

inline nlohmann::json to_json(const Gdd& g) {
  return {{"kind", "gdd"},
          {"points", g.points()},
          {"design_groups", g.design_groups()},
          {"k", g.block_size()},
          {"blocks", g.blocks()}};
}

inline nlohmann::json to_json(const OrderedGdd& g) {
  return {{"kind", "gdd"},
          {"points", g.points()},
          {"design_groups", g.design_groups()},
          {"k", g.block_size()},
          {"ordered_blocks", g.ordered_blocks()}};
}

inline nlohmann::json to_json(const SourceDistribution& dist) {
  nlohmann::json probs = nlohmann::json::array();
  for (const auto& p : dist.probs()) probs.push_back(p.str());
  return {{"kind", "source_distribution"}, {"probs", std::move(probs)}};
}

inline nlohmann::json to_json(const BaseBlocks& bb) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& blk : bb.blocks) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : blk.parts) parts.push_back(p);
    blocks.push_back(std::move(parts));
  }
  return {{"kind", "base_blocks"}, {"group", bb.group.orders()}, {"blocks", std::move(blocks)}};
}

inline nlohmann::json to_json(const Report& r) { return r.body; }

inline nlohmann::json to_json(const Document& doc) {
  return std::visit([](const auto& x) { return to_json(x); }, doc);
}

/// Parses any interchange document, dispatching on its "kind".
/// Unknown keys are ignored; structural violations raise SchemaError and
/// semantic violations (disjointness, ranges) raise ValidationError.
inline Document parse_document(const nlohmann::json& j) {
  using iodetail::as_blocks;
  using iodetail::as_group;
  using iodetail::as_int;
  using iodetail::as_int_lists;
  using iodetail::fail;
  using iodetail::field;

  if (!j.is_object()) fail("$", "expected an object");
  const auto& kind_j = field(j, "$", "kind");
  if (!kind_j.is_string()) fail("$.kind", "expected a string");
  std::string kind = kind_j.get<std::string>();

  if (kind == "splitting_system") {
    int v = static_cast<int>(as_int(field(j, "$", "v"), "$.v"));
    auto blocks = as_blocks(field(j, "$", "blocks"), "$.blocks");
    if (j.contains("m")) {
      long long m = as_int(j["m"], "$.m");
      for (size_t i = 0; i < blocks.size(); ++i)
        if (static_cast<long long>(blocks[i].parts.size()) != m)
          fail("$.blocks[" + std::to_string(i) + "]", "part count disagrees with m");
    }
    return SplittingSystem(v, std::move(blocks));
  }

  if (kind == "amd_code") {
    AbelianGroup g = as_group(field(j, "$", "group"), "$.group");
    const auto& enc_j = field(j, "$", "encodings");
    if (!enc_j.is_array()) fail("$.encodings", "expected an array");
    if (j.contains("sources") && as_int(j["sources"], "$.sources") != static_cast<long long>(enc_j.size()))
      fail("$.sources", "source count disagrees with encodings");
    std::vector<std::vector<GroupElement>> enc;
    for (size_t s = 0; s < enc_j.size(); ++s) {
      std::string p = "$.encodings[" + std::to_string(s) + "]";
      if (!enc_j[s].is_array()) fail(p, "expected an array of elements");
      std::vector<GroupElement> set;
      for (size_t i = 0; i < enc_j[s].size(); ++i)
        set.push_back(iodetail::as_element(g, enc_j[s][i], p + "[" + std::to_string(i) + "]"));
      enc.push_back(std::move(set));
    }
    return AmdCode(std::move(g), std::move(enc));
  }

  if (kind == "gdd") {
    int points = static_cast<int>(as_int(field(j, "$", "points"), "$.points"));
    auto groups = as_int_lists(field(j, "$", "design_groups"), "$.design_groups");
    int k = static_cast<int>(as_int(field(j, "$", "k"), "$.k"));
    if (j.contains("ordered_blocks"))
      return OrderedGdd(points, std::move(groups), k,
                        as_int_lists(j["ordered_blocks"], "$.ordered_blocks"));
    return Gdd(points, std::move(groups), k, as_int_lists(field(j, "$", "blocks"), "$.blocks"));
  }

  if (kind == "source_distribution") {
    const auto& probs_j = field(j, "$", "probs");
    if (!probs_j.is_array()) fail("$.probs", "expected an array");
    std::vector<Rational> probs;
    for (size_t i = 0; i < probs_j.size(); ++i) {
      std::string p = "$.probs[" + std::to_string(i) + "]";
      if (probs_j[i].is_string())
        probs.push_back(Rational::parse(probs_j[i].get<std::string>()));
      else if (probs_j[i].is_number_integer())
        probs.push_back(Rational(probs_j[i].get<long long>()));
      else
        fail(p, "expected a rational string like \"1/2\"");
    }
    return SourceDistribution(std::move(probs));
  }

  if (kind == "report") return Report{j};

  if (kind == "base_blocks") {
    AbelianGroup g = as_group(field(j, "$", "group"), "$.group");
    auto blocks = as_blocks(field(j, "$", "blocks"), "$.blocks");
    long long order = g.order();
    for (size_t i = 0; i < blocks.size(); ++i)
      for (const auto& part : blocks[i].parts)
        for (int p : part)
          if (p < 0 || p >= order) fail("$.blocks[" + std::to_string(i) + "]", "element index out of range");
    return BaseBlocks{std::move(g), std::move(blocks)};
  }

  fail("$.kind", "unknown document kind '" + kind + "'");
}

inline Document parse_document(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("$: not valid JSON");
  return parse_document(j);
}

inline Document load_document(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_document(text);
}

/// Convenience accessor that fails with a uniform message when the document
/// is not of the requested type.
template <class T>
const T& expect_document(const Document& doc, const char* what) {
  const T* p = std::get_if<T>(&doc);
  if (!p) throw SchemaError(std::string("$: expected a ") + what + " document");
  return *p;
}

}  // namespace splitdesign
