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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pirlab/cli.hpp"

namespace {

pirlab::SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pirlab::ConfigError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return pirlab::parse_config_text(buffer.str());
}

int finish(const pirlab::cli::CommandResult& result, const std::string& out) {
  if (!result.text.empty()) std::cout << result.text;
  if (!out.empty() && !result.report.is_null()) {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "cannot write report to " << out << "\n";
      return pirlab::cli::kUsage;
    }
    file << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"private information retrieval over coded storage: rate "
               "planning, protocol simulation and privacy verification"};
  app.require_subcommand(1);

  std::string config_path, out_path, scheme = "infoset", demo_name;
  int file_index = 0;
  std::uint64_t seed = 0, oracle_cap = 1000000;

  CLI::App* rate = app.add_subcommand("rate", "optimize the retrieval rate");
  rate->add_option("--config", config_path, "JSON system config")->required();
  rate->add_option("--out", out_path, "write the JSON report here");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run one retrieval end to end");
  simulate->add_option("--config", config_path, "JSON system config")
      ->required();
  simulate->add_option("--scheme", scheme,
                       "tpir | infoset | partition | striped");
  simulate->add_option("--file-index", file_index, "file to retrieve (0-based)");
  simulate->add_option("--seed", seed, "query randomness seed");
  simulate->add_option("--out", out_path, "write the transcript JSON here");

  CLI::App* verify =
      app.add_subcommand("verify", "check privacy algebraically and by "
                                   "exhaustive distribution enumeration");
  verify->add_option("--config", config_path, "JSON system config")->required();
  verify->add_option("--scheme", scheme,
                     "tpir | infoset | partition | striped");
  verify->add_option("--oracle-cap", oracle_cap,
                     "max enumerated states per round");
  verify->add_option("--out", out_path, "write the privacy report here");

  CLI::App* demo = app.add_subcommand("demo", "run a built-in worked example");
  demo->add_option("--name", demo_name,
                   "two-server | grs-5-2 | infoset-6-2 | partition-6-3 | "
                   "stripe-9-3 | all")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (rate->parsed())
      return finish(pirlab::cli::cmd_rate(load_config(config_path)), out_path);
    if (simulate->parsed())
      return finish(pirlab::cli::cmd_simulate(load_config(config_path), scheme,
                                              file_index, seed),
                    out_path);
    if (verify->parsed())
      return finish(pirlab::cli::cmd_verify(load_config(config_path), scheme,
                                            oracle_cap),
                    out_path);
    if (demo->parsed()) return finish(pirlab::cli::cmd_demo(demo_name), "");
  } catch (const pirlab::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return pirlab::cli::kUsage;
  }
  return pirlab::cli::kUsage;
}
