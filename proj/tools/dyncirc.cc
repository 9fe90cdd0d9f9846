// Copyright 2026 The dyncirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "dyncirc/experiments.h"
#include "dyncirc/noise.h"
#include "json.hpp"

using namespace dyncirc;

namespace {

struct Common {
  std::string config;
  uint64_t seed = 0;
  uint64_t shots = 0;
  std::string out;
  bool reproducible = false;
  int threads = 0;
};

ExperimentConfig load(const Common &o, const std::string &family, CLI::App *sub) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw std::runtime_error("cannot open config " + o.config);
    j = nlohmann::json::parse(in);
  }
  if (!j.contains("family")) j["family"] = family;
  ExperimentConfig cfg = j.get<ExperimentConfig>();
  if (sub->count("--seed")) cfg.seed = o.seed;
  if (sub->count("--shots")) cfg.shots = o.shots;
  if (sub->count("--out")) cfg.out = o.out;
  if (sub->count("--threads")) cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

void emit(const ExperimentConfig &cfg, const std::string &command, const std::string &csv, bool reproducible) {
  if (cfg.out.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << csv;
  std::ofstream s(cfg.out + ".json", std::ios::binary);
  s << sidecar(cfg, command, reproducible).dump(2) << "\n";
}

void add_common(CLI::App *sub, Common &o) {
  sub->add_option("--config", o.config, "JSON config file");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--shots", o.shots, "shots per sample")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "output CSV path (sidecar gets .json)");
  sub->add_flag("--reproducible", o.reproducible, "omit the timestamp from the sidecar");
  sub->add_option("--threads", o.threads, "worker threads (0 = OpenMP default)");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"dynamic circuit simulation and error-budget tool"};
  app.require_subcommand(1);
  Common o;

  auto *verify = app.add_subcommand("verify", "noiseless equivalence suite");
  auto *cnot = app.add_subcommand("cnot-sweep", "long-range CNOT fidelity sweep");
  auto *ghz = app.add_subcommand("ghz-sweep", "GHZ fidelity sweep");
  auto *bud = app.add_subcommand("budget", "error budget for one family and size");
  auto *cross = app.add_subcommand("crossover", "crossover grid over (lambda_cnot, lambda_meas)");
  for (auto *s : {verify, cnot, ghz, bud, cross}) add_common(s, o);

  std::string family;
  int size = 0;
  bud->add_option("--family", family, "cnot_dynamic, cnot_Ia, ..., ghz_unitary, ghz_dynamic")->required();
  bud->add_option("--size", size, "n")->required();
  std::string cross_family = "ghz";
  cross->add_option("--family", cross_family, "ghz or cnot")->check(CLI::IsMember({"ghz", "cnot"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      if (o.threads > 0) omp_set_num_threads(o.threads);
      auto rows = run_verify_suite(o.threads);
      bool all = true;
      std::printf("%-28s %5s  %-22s %s\n", "family", "size", "check", "result");
      for (const auto &r : rows) {
        std::printf("%-28s %5d  %-22s %s", r.family.c_str(), r.size, r.check.c_str(), r.passed ? "PASS" : "FAIL");
        if (!r.passed) std::printf("  %s", r.detail.c_str());
        std::printf("\n");
        all = all && r.passed;
      }
      return all ? 0 : 1;
    }
    if (*cnot) {
      auto cfg = load(o, "cnot", cnot);
      emit(cfg, "cnot-sweep", to_csv(cnot_sweep(cfg)), o.reproducible);
    } else if (*ghz) {
      auto cfg = load(o, "ghz", ghz);
      emit(cfg, "ghz-sweep", to_csv(ghz_sweep(cfg)), o.reproducible);
    } else if (*bud) {
      auto cfg = load(o, "cnot", bud);
      Family f = family_from_name(family);
      nlohmann::json j = {{"family", family}, {"size", size}, {"params", cfg.noise},
                          {"budget", budget(f, size, cfg.noise)}};
      std::string text = j.dump(2) + "\n";
      if (cfg.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream(cfg.out, std::ios::binary) << text;
      }
    } else if (*cross) {
      auto cfg = load(o, cross_family, cross);
      if (cfg.lambda_cnots.empty()) cfg.lambda_cnots = {0.001, 0.002, 0.005, 0.01, 0.02};
      if (cfg.lambda_meas.empty()) cfg.lambda_meas = {0.001, 0.002, 0.003, 0.005, 0.01, 0.012, 0.02, 0.03};
      auto rows = crossover_grid(cfg.family == "ghz", cfg.noise, cfg.lambda_cnots, cfg.lambda_meas, cfg.threads);
      emit(cfg, "crossover", to_csv(rows), o.reproducible);
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
