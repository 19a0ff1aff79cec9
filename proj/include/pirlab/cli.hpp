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

#ifndef PIRLAB_CLI_HPP
#define PIRLAB_CLI_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pirlab/config.hpp"
#include "pirlab/errors.hpp"
#include "pirlab/scheme.hpp"
#include "pirlab/simulator.hpp"
#include "pirlab/verifier.hpp"

namespace pirlab::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;       // bad flags or config
inline constexpr int kInfeasible = 2;  // no scheme for these parameters
inline constexpr int kPrivacy = 3;     // verification verdict is "leaks"
inline constexpr int kInternal = 4;    // the two verification routes disagree

struct CommandResult {
  int exit_code = kOk;
  nlohmann::json report;
  std::string text;
};

inline nlohmann::json rational_json(const Rational& r) {
  return {{"num", r.num()},
          {"den", r.den()},
          {"str", r.str()},
          {"decimal", r.to_double()}};
}

inline nlohmann::json servers_json(const std::vector<int>& zero_based) {
  nlohmann::json out = nlohmann::json::array();
  for (int v : zero_based) out.push_back(v + 1);
  return out;
}

/// Build the requested scheme kind from a config.
inline RetrievalScheme build_scheme(const SystemConfig& cfg,
                                    const std::string& kind) {
  if (kind == "tpir") {
    int t = cfg.t ? *cfg.t : cfg.collusion().max_colluding_size();
    return build_tpir_scheme(cfg.grs_spec(), t);
  }
  if (kind == "infoset")
    return build_infoset_scheme(cfg.grs_spec(), cfg.collusion());
  if (kind == "partition")
    return build_partition_scheme(cfg.storage_code(), cfg.collusion());
  if (kind == "striped")
    return build_striped_partition_scheme(cfg.storage_code(), cfg.collusion());
  throw ConfigError("scheme: expected tpir, infoset, partition or striped");
}

namespace detail {

template <typename F>
CommandResult guarded(F&& run) {
  try {
    return run();
  } catch (const ConfigError& err) {
    return {kUsage, {}, std::string("config error: ") + err.what() + "\n"};
  } catch (const InfeasibleError& err) {
    return {kInfeasible, {}, std::string("infeasible: ") + err.what() + "\n"};
  } catch (const ConsistencyError& err) {
    return {kInternal, {},
            std::string("internal consistency error: ") + err.what() + "\n"};
  } catch (const std::exception& err) {
    return {kUsage, {}, std::string("error: ") + err.what() + "\n"};
  }
}

inline void require_stripes_match(const SystemConfig& cfg,
                                  const RetrievalScheme& scheme) {
  if (cfg.stripes != scheme.blocks)
    throw ConfigError("stripes: the " +
                      std::string(scheme_kind_name(scheme.kind)) +
                      " scheme splits files into " +
                      std::to_string(scheme.blocks) +
                      " blocks; set stripes to match");
}

}  // namespace detail

/// Rate planning: candidate table, chosen plan, the naive rate, and (for
/// disconnected patterns) the repetition-scheme rates for comparison.
inline CommandResult cmd_rate(const SystemConfig& cfg) {
  return detail::guarded([&]() -> CommandResult {
    CollusionPattern pattern = cfg.collusion();
    RatePlan plan = plan_rate(pattern, cfg.k);

    nlohmann::json plan_json;
    plan_json["t"] = plan.t;
    plan_json["information_set"] = servers_json(plan.info_set);
    plan_json["retained_servers"] = servers_json(plan.retained);
    plan_json["rate"] = rational_json(plan.rate);
    plan_json["candidates"] = nlohmann::json::array();
    for (const auto& c : plan.candidates)
      plan_json["candidates"].push_back({{"t", c.t},
                                         {"itilde_size", c.itilde_size},
                                         {"rate", rational_json(c.rate)}});

    std::ostringstream text;
    text << "rate plan for [" << cfg.n << "," << cfg.k << "] over F_" << cfg.p
         << "\n";
    text << "  t  |I~_t|  rate\n";
    for (const auto& c : plan.candidates)
      text << "  " << c.t << "  " << c.itilde_size << "      " << c.rate.str()
           << (c.t == plan.t ? "   <- chosen" : "") << "\n";
    text << "chosen: t=" << plan.t << ", rate " << plan.rate.str() << " ("
         << plan.rate.to_double() << "), " << plan.retained.size()
         << " retained servers\n";

    auto naive = naive_rate(pattern, cfg.k);
    if (naive) {
      plan_json["naive"] = {{"t", pattern.max_colluding_size()},
                            {"rate", rational_json(*naive)}};
      text << "naive (t=" << pattern.max_colluding_size()
           << "): " << naive->str() << "\n";
    } else {
      plan_json["naive"] = nullptr;
      text << "naive (t=" << pattern.max_colluding_size() << "): infeasible\n";
    }

    if (pattern.is_disconnected()) {
      LinearCode storage = cfg.storage_code();
      try {
        Rational r = build_partition_scheme(storage, pattern).rate;
        plan_json["partition_rate"] = rational_json(r);
        text << "partition scheme rate: " << r.str() << "\n";
      } catch (const InfeasibleError& err) {
        plan_json["partition_rate"] = nullptr;
        text << "partition scheme rate: unavailable (" << err.what() << ")\n";
      }
      try {
        Rational r = build_striped_partition_scheme(storage, pattern).rate;
        plan_json["striping_rate"] = rational_json(r);
        text << "striping scheme rate: " << r.str() << "\n";
      } catch (const InfeasibleError& err) {
        plan_json["striping_rate"] = nullptr;
        text << "striping scheme rate: unavailable (" << err.what() << ")\n";
      }
    }

    nlohmann::json report;
    report["rate"] = rational_json(plan.rate);
    report["plan"] = std::move(plan_json);
    return {kOk, std::move(report), text.str()};
  });
}

inline nlohmann::json transcript_json(const RetrievalScheme& scheme,
                                      const Transcript& t) {
  nlohmann::json out;
  out["file_index"] = t.file_index;
  out["seed"] = t.seed;
  out["scheme"] = scheme_kind_name(scheme.kind);
  out["retained_servers"] = servers_json(scheme.retained);
  out["rounds"] = nlohmann::json::array();
  for (const auto& round : t.rounds) {
    nlohmann::json r;
    r["messages"] = nlohmann::json::array();
    for (std::size_t jj = 0; jj < round.queries.size(); ++jj) {
      nlohmann::json q;
      q["server"] = scheme.retained[jj] + 1;
      nlohmann::json vec = nlohmann::json::array();
      for (const auto& x : round.queries[jj]) vec.push_back(x.value());
      q["query"] = std::move(vec);
      q["response"] = round.responses[jj].value();
      r["messages"].push_back(std::move(q));
    }
    r["decoded"] = nlohmann::json::array();
    for (const auto& d : round.decoded)
      r["decoded"].push_back({{"block", d.block},
                              {"server", d.server + 1},
                              {"value", d.value.value()}});
    out["rounds"].push_back(std::move(r));
  }
  nlohmann::json file = nlohmann::json::array();
  for (std::size_t a = 0; a < t.reconstructed.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t sigma = 0; sigma < t.reconstructed.cols(); ++sigma)
      row.push_back(t.reconstructed(a, sigma).value());
    file.push_back(std::move(row));
  }
  out["reconstructed"] = std::move(file);
  out["downloaded"] = t.downloaded;
  out["decoded_symbols"] = t.decoded_count;
  out["match"] = t.match;
  return out;
}

/// One full retrieval; exit 0 iff the reconstruction matched the stored file.
inline CommandResult cmd_simulate(const SystemConfig& cfg,
                                  const std::string& scheme_kind,
                                  int file_index, std::uint64_t seed) {
  return detail::guarded([&]() -> CommandResult {
    RetrievalScheme scheme = build_scheme(cfg, scheme_kind);
    detail::require_stripes_match(cfg, scheme);
    if (file_index < 0 || file_index >= cfg.m)
      throw ConfigError("file-index: must be in 0..m-1");
    StorageSystem system = cfg.storage_system();
    Transcript t = run_retrieval(system, scheme, file_index, seed);

    nlohmann::json report;
    report["rate"] = rational_json(scheme_rate(scheme));
    report["transcript"] = transcript_json(scheme, t);

    std::ostringstream text;
    text << "scheme " << scheme_kind << ", rate " << scheme_rate(scheme).str()
         << ": " << t.rounds.size() << " round(s), " << t.downloaded
         << " responses, " << t.decoded_count << " decoded symbols, "
         << (t.match ? "file reconstructed exactly" : "MISMATCH") << "\n";
    return {t.match ? kOk : kInternal, std::move(report), text.str()};
  });
}

inline nlohmann::json privacy_json(const PrivacyReport& report) {
  nlohmann::json out;
  out["overall"] = report.overall;
  out["oracle_cap"] = report.cap;
  out["sets"] = nlohmann::json::array();
  for (const auto& s : report.sets) {
    nlohmann::json set;
    set["colluders"] = servers_json(s.colluders);
    set["algebraic"] = s.algebraic_ok;
    if (s.failing_round >= 0) {
      set["failing_round"] = s.failing_round;
      set["failing_block"] = s.failing_block;
    }
    set["oracle"] = oracle_verdict_name(s.oracle);
    set["oracle_states_per_round"] = s.oracle_states;
    if (!s.oracle_note.empty()) set["oracle_note"] = s.oracle_note;
    out["sets"].push_back(std::move(set));
  }
  return out;
}

/// Verify a scheme against the configured pattern both ways; exit 0 iff
/// private, 3 if it leaks, 4 if the two verification routes disagree.
inline CommandResult cmd_verify(const SystemConfig& cfg,
                                const std::string& scheme_kind,
                                std::uint64_t oracle_cap) {
  return detail::guarded([&]() -> CommandResult {
    RetrievalScheme scheme = build_scheme(cfg, scheme_kind);
    detail::require_stripes_match(cfg, scheme);
    PrivacyReport report =
        verify_scheme(scheme, cfg.collusion(), cfg.m, oracle_cap);

    nlohmann::json out;
    out["rate"] = rational_json(scheme_rate(scheme));
    out["privacy"] = privacy_json(report);

    std::ostringstream text;
    text << "scheme " << scheme_kind << " vs " << report.sets.size()
         << " maximal colluding set(s): "
         << (report.overall ? "private" : "LEAKS") << "\n";
    for (const auto& s : report.sets) {
      text << "  {";
      for (std::size_t i = 0; i < s.colluders.size(); ++i)
        text << (i ? "," : "") << s.colluders[i] + 1;
      text << "}: algebraic " << (s.algebraic_ok ? "ok" : "FAIL") << ", oracle "
           << oracle_verdict_name(s.oracle);
      if (s.oracle != OracleVerdict::Skipped)
        text << " (" << s.oracle_states << " states/round)";
      else if (!s.oracle_note.empty())
        text << " (" << s.oracle_note << ")";
      text << "\n";
    }
    return {report.overall ? kOk : kPrivacy, std::move(out), text.str()};
  });
}

struct DemoCase {
  std::string name;
  std::string config_json;
  std::string scheme;
  Rational expected_rate;
};

inline const std::vector<DemoCase>& demo_cases() {
  static const std::vector<DemoCase> cases = {
      {"two-server",
       R"({"p":5,"n":2,"k":1,"m":2,"code":{"kind":"repetition"},
           "pattern":[[1],[2]]})",
       "partition", Rational(1, 2)},
      {"grs-5-2",
       R"({"p":5,"n":5,"k":2,"stripes":2,"m":2,"code":{"kind":"grs"},
           "pattern":[[1,2],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5],[3,4,5]]})",
       "infoset", Rational(2, 5)},
      {"infoset-6-2",
       R"({"p":7,"n":6,"k":2,"stripes":2,"m":2,"code":{"kind":"grs"},
           "pattern":[[1,2],[3,4,5,6]]})",
       "infoset", Rational(2, 5)},
      {"partition-6-3",
       R"({"p":7,"n":6,"k":3,"m":2,"code":{"kind":"grs"},
           "pattern":[[1,2,3],[4,5,6]]})",
       "partition", Rational(1, 2)},
      {"stripe-9-3",
       R"({"p":11,"n":9,"k":3,"stripes":2,"m":2,"code":{"kind":"grs"},
           "pattern":[[1,2,3],[4,5,6],[7,8,9]]})",
       "striped", Rational(2, 3)},
  };
  return cases;
}

/// Run one named worked example end to end (plan where applicable, one
/// retrieval per file, full verification) and compare the scheme rate with
/// the documented value.
inline CommandResult cmd_demo(const std::string& name) {
  return detail::guarded([&]() -> CommandResult {
    std::vector<DemoCase> selected;
    for (const auto& c : demo_cases())
      if (name == "all" || c.name == name) selected.push_back(c);
    if (selected.empty())
      throw ConfigError("demo: unknown name \"" + name +
                        "\" (try two-server, grs-5-2, infoset-6-2, "
                        "partition-6-3, stripe-9-3 or all)");

    std::ostringstream text;
    bool all_ok = true;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& demo : selected) {
      SystemConfig cfg = parse_config_text(demo.config_json);
      bool ok = true;

      RetrievalScheme scheme = build_scheme(cfg, demo.scheme);
      Rational rate = scheme_rate(scheme);
      bool rate_ok = rate == demo.expected_rate;
      ok = ok && rate_ok;
      text << "[" << demo.name << "] " << demo.scheme << " rate " << rate.str()
           << " (documented " << demo.expected_rate.str() << ") "
           << (rate_ok ? "ok" : "FAIL") << "\n";

      CommandResult plan = cmd_rate(cfg);
      if (plan.exit_code == kOk)
        text << "[" << demo.name << "] planner rate "
             << plan.report["rate"]["str"].get<std::string>() << "\n";

      StorageSystem system = cfg.storage_system();
      for (int i = 0; i < cfg.m; ++i) {
        Transcript t = run_retrieval(system, scheme, i, 7 + i);
        ok = ok && t.match;
        text << "[" << demo.name << "] retrieve file " << i << ": "
             << (t.match ? "exact" : "MISMATCH") << "\n";
      }

      PrivacyReport privacy = verify_scheme(scheme, cfg.collusion(), cfg.m);
      ok = ok && privacy.overall;
      text << "[" << demo.name << "] privacy: "
           << (privacy.overall ? "private" : "LEAKS") << " ("
           << privacy.sets.size() << " sets)\n";

      if (demo.name == "two-server") {
        // The same scheme must fail once the two servers pool their queries.
        auto both = CollusionPattern::from_maximal(2, {{0, 1}});
        PrivacyReport leak = verify_scheme(scheme, both, cfg.m);
        bool exposed = !leak.overall &&
                       leak.sets[0].oracle == OracleVerdict::Differ;
        ok = ok && exposed;
        text << "[" << demo.name << "] full collusion detected: "
             << (exposed ? "yes" : "NO") << "\n";
      }

      text << "[" << demo.name << "] " << (ok ? "PASS" : "FAIL") << "\n";
      report.push_back({{"name", demo.name},
                        {"scheme", demo.scheme},
                        {"rate", rational_json(rate)},
                        {"pass", ok}});
      all_ok = all_ok && ok;
    }
    return {all_ok ? kOk : kInternal, std::move(report), text.str()};
  });
}

}  // namespace pirlab::cli

#endif  // PIRLAB_CLI_HPP
