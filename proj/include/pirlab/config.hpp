// Copyright 2026 The pirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIRLAB_CONFIG_HPP
#define PIRLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pirlab/collusion.hpp"
#include "pirlab/errors.hpp"
#include "pirlab/linear_code.hpp"
#include "pirlab/simulator.hpp"

namespace pirlab {

/// Storage-system description as read from a JSON config file.  Server
/// indices are 1-based in the file and 0-based here; `pattern` is stored
/// normalized (sorted, absorbed).  Unknown fields are rejected on parse.
struct SystemConfig {
  std::uint32_t p = 0;
  int n = 0;
  int k = 0;
  int stripes = 1;
  int m = 0;
  std::string code_kind;                               // "grs" | "repetition"
  std::vector<std::int64_t> eval_points;               // grs only
  std::vector<std::int64_t> multipliers;               // grs only
  std::vector<std::vector<int>> pattern;               // 0-based maximal sets
  std::optional<std::vector<std::vector<std::vector<std::int64_t>>>> files;
  std::uint64_t file_seed = 0;
  std::optional<int> t;  // protection override for the tpir scheme

  PrimeField field() const { return PrimeField(p); }

  GrsSpec grs_spec() const {
    if (code_kind != "grs")
      throw ConfigError("code.kind: this scheme requires a \"grs\" code");
    PrimeField f = field();
    std::vector<FieldElement> pts, mults;
    for (std::int64_t v : eval_points) pts.push_back(f.element_signed(v));
    for (std::int64_t v : multipliers) mults.push_back(f.element_signed(v));
    try {
      return GrsSpec(f, n, k, std::move(pts), std::move(mults));
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("code: ") + err.what());
    }
  }

  LinearCode storage_code() const {
    if (code_kind == "repetition") return repetition(field(), n);
    return grs_code(grs_spec());
  }

  CollusionPattern collusion() const {
    return CollusionPattern::from_maximal(n, pattern);
  }

  StorageSystem storage_system() const {
    LinearCode code = storage_code();
    if (!files) return random_storage(code, m, stripes, file_seed);
    PrimeField f = field();
    std::vector<Matrix> mats;
    for (const auto& file : *files) {
      Matrix mat(f, k, stripes);
      for (int a = 0; a < k; ++a)
        for (int sigma = 0; sigma < stripes; ++sigma)
          mat(a, sigma) = f.element_signed(file[a][sigma]);
      mats.push_back(std::move(mat));
    }
    return encode_storage(mats, code, stripes);
  }
};

namespace cfg_detail {

inline void reject_unknown(const nlohmann::json& obj,
                           const std::vector<std::string>& allowed,
                           const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const auto& a : allowed)
      if (key == a) known = true;
    if (!known) throw ConfigError(where + key + ": unknown field");
  }
}

inline std::int64_t require_int(const nlohmann::json& obj,
                                const std::string& key,
                                const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + key + ": missing field");
  if (!obj[key].is_number_integer())
    throw ConfigError(where + key + ": expected an integer");
  return obj[key].get<std::int64_t>();
}

}  // namespace cfg_detail

/// Strict parse: every violation names the offending field path.
inline SystemConfig parse_config(const nlohmann::json& j) {
  using cfg_detail::reject_unknown;
  using cfg_detail::require_int;
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j, {"p", "n", "k", "stripes", "m", "code", "pattern", "files",
                     "file_seed", "t"},
                 "");

  SystemConfig cfg;
  std::int64_t p = require_int(j, "p", "");
  if (p < 2 || p > 0x7fffffff) throw ConfigError("p: out of range");
  cfg.p = static_cast<std::uint32_t>(p);
  try {
    (void)cfg.field();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("p: ") + err.what());
  }

  cfg.n = static_cast<int>(require_int(j, "n", ""));
  if (cfg.n < 1 || cfg.n > 64) throw ConfigError("n: must be in 1..64");
  cfg.k = static_cast<int>(require_int(j, "k", ""));
  if (cfg.k < 1 || cfg.k > cfg.n) throw ConfigError("k: must be in 1..n");
  cfg.m = static_cast<int>(require_int(j, "m", ""));
  if (cfg.m < 1) throw ConfigError("m: must be at least 1");
  if (j.contains("stripes")) {
    cfg.stripes = static_cast<int>(require_int(j, "stripes", ""));
    if (cfg.stripes < 1) throw ConfigError("stripes: must be at least 1");
  }

  if (!j.contains("code") || !j["code"].is_object())
    throw ConfigError("code: missing or not an object");
  const auto& code = j["code"];
  reject_unknown(code, {"kind", "eval_points", "multipliers"}, "code.");
  if (!code.contains("kind") || !code["kind"].is_string())
    throw ConfigError("code.kind: missing or not a string");
  cfg.code_kind = code["kind"].get<std::string>();
  if (cfg.code_kind != "grs" && cfg.code_kind != "repetition")
    throw ConfigError("code.kind: expected \"grs\" or \"repetition\"");
  if (cfg.code_kind == "repetition") {
    if (cfg.k != 1)
      throw ConfigError("k: the repetition code has dimension 1");
    if (code.contains("eval_points") || code.contains("multipliers"))
      throw ConfigError("code: repetition takes no points or multipliers");
  } else {
    auto read_list = [&](const char* key,
                         std::int64_t fallback_start) -> std::vector<std::int64_t> {
      std::vector<std::int64_t> out;
      if (!code.contains(key)) {
        for (int v = 0; v < cfg.n; ++v)
          out.push_back(fallback_start < 0 ? v : fallback_start);
        return out;
      }
      if (!code[key].is_array() ||
          static_cast<int>(code[key].size()) != cfg.n)
        throw ConfigError(std::string("code.") + key + ": expected an array of n integers");
      for (std::size_t idx = 0; idx < code[key].size(); ++idx) {
        if (!code[key][idx].is_number_integer())
          throw ConfigError(std::string("code.") + key + "[" +
                            std::to_string(idx) + "]: expected an integer");
        out.push_back(code[key][idx].get<std::int64_t>());
      }
      return out;
    };
    cfg.eval_points = read_list("eval_points", -1);   // default 0..n-1
    cfg.multipliers = read_list("multipliers", 1);    // default all ones
    (void)cfg.grs_spec();                             // deep validation
  }

  if (!j.contains("pattern") || !j["pattern"].is_array())
    throw ConfigError("pattern: missing or not an array");
  std::vector<std::vector<int>> sets;
  for (std::size_t s = 0; s < j["pattern"].size(); ++s) {
    const auto& set = j["pattern"][s];
    if (!set.is_array() || set.empty())
      throw ConfigError("pattern[" + std::to_string(s) +
                        "]: expected a nonempty array of servers");
    std::vector<int> current;
    for (std::size_t idx = 0; idx < set.size(); ++idx) {
      if (!set[idx].is_number_integer())
        throw ConfigError("pattern[" + std::to_string(s) + "][" +
                          std::to_string(idx) + "]: expected an integer");
      std::int64_t server = set[idx].get<std::int64_t>();
      if (server < 1 || server > cfg.n)
        throw ConfigError("pattern[" + std::to_string(s) + "][" +
                          std::to_string(idx) + "]: server must be in 1..n");
      current.push_back(static_cast<int>(server) - 1);
    }
    sets.push_back(std::move(current));
  }
  cfg.pattern = CollusionPattern::from_maximal(cfg.n, sets).maximal_sets();

  if (j.contains("files") && j.contains("file_seed"))
    throw ConfigError("files: give explicit files or file_seed, not both");
  if (j.contains("file_seed")) {
    if (!j["file_seed"].is_number_unsigned() &&
        !j["file_seed"].is_number_integer())
      throw ConfigError("file_seed: expected a nonnegative integer");
    std::int64_t seed = j["file_seed"].get<std::int64_t>();
    if (seed < 0) throw ConfigError("file_seed: expected a nonnegative integer");
    cfg.file_seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("files")) {
    if (!j["files"].is_array() ||
        static_cast<int>(j["files"].size()) != cfg.m)
      throw ConfigError("files: expected an array of m files");
    std::vector<std::vector<std::vector<std::int64_t>>> files;
    for (std::size_t i = 0; i < j["files"].size(); ++i) {
      const auto& file = j["files"][i];
      std::string at = "files[" + std::to_string(i) + "]";
      if (!file.is_array() || static_cast<int>(file.size()) != cfg.k)
        throw ConfigError(at + ": expected k rows");
      std::vector<std::vector<std::int64_t>> rows;
      for (std::size_t a = 0; a < file.size(); ++a) {
        const auto& row = file[a];
        if (!row.is_array() || static_cast<int>(row.size()) != cfg.stripes)
          throw ConfigError(at + "[" + std::to_string(a) +
                            "]: expected stripes values");
        std::vector<std::int64_t> vals;
        for (std::size_t sigma = 0; sigma < row.size(); ++sigma) {
          if (!row[sigma].is_number_integer())
            throw ConfigError(at + "[" + std::to_string(a) + "][" +
                              std::to_string(sigma) + "]: expected an integer");
          std::int64_t v = row[sigma].get<std::int64_t>();
          if (v < 0 || v >= static_cast<std::int64_t>(cfg.p))
            throw ConfigError(at + "[" + std::to_string(a) + "][" +
                              std::to_string(sigma) +
                              "]: symbol must be in 0..p-1");
          vals.push_back(v);
        }
        rows.push_back(std::move(vals));
      }
      files.push_back(std::move(rows));
    }
    cfg.files = std::move(files);
  }

  if (j.contains("t")) {
    cfg.t = static_cast<int>(require_int(j, "t", ""));
    if (*cfg.t < 1 || *cfg.t > cfg.n) throw ConfigError("t: must be in 1..n");
  }
  return cfg;
}

inline SystemConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("invalid JSON: ") + err.what());
  }
  return parse_config(j);
}

/// Canonical serialization: defaults materialized, pattern normalized,
/// servers 1-based.  parse -> serialize is idempotent.
inline nlohmann::json config_to_json(const SystemConfig& cfg) {
  nlohmann::json j;
  j["p"] = cfg.p;
  j["n"] = cfg.n;
  j["k"] = cfg.k;
  j["stripes"] = cfg.stripes;
  j["m"] = cfg.m;
  j["code"]["kind"] = cfg.code_kind;
  if (cfg.code_kind == "grs") {
    j["code"]["eval_points"] = cfg.eval_points;
    j["code"]["multipliers"] = cfg.multipliers;
  }
  j["pattern"] = nlohmann::json::array();
  for (const auto& set : cfg.pattern) {
    nlohmann::json s = nlohmann::json::array();
    for (int v : set) s.push_back(v + 1);
    j["pattern"].push_back(std::move(s));
  }
  if (cfg.files)
    j["files"] = *cfg.files;
  else
    j["file_seed"] = cfg.file_seed;
  if (cfg.t) j["t"] = *cfg.t;
  return j;
}

}  // namespace pirlab

#endif  // PIRLAB_CONFIG_HPP
