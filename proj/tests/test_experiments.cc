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

#include <gtest/gtest.h>

#include "dyncirc/experiments.h"

using namespace dyncirc;

namespace {

ExperimentConfig small_cnot() {
  auto j = nlohmann::json::parse(R"({"family":"cnot","n_min":1,"n_max":5,"lambda_idle":0.03,
    "lambda_cnot":0.02,"lambda_meas":0.03,"mu":3.65,"m_samples":48,"shots":20,"seed":3})");
  return j.get<ExperimentConfig>();
}

}  // namespace

TEST(experiments, config_parsing_and_validation) {
  auto c = small_cnot();
  EXPECT_EQ(c.variants.size(), 5u);
  EXPECT_DOUBLE_EQ(c.noise.mu, 3.65);
  EXPECT_EQ(c.sizes().size(), 5u);
  nlohmann::json j = c;
  EXPECT_EQ(j.get<ExperimentConfig>().seed, 3u);
  EXPECT_THROW(nlohmann::json::parse(R"({"family":"toffoli"})").get<ExperimentConfig>(), std::invalid_argument);
  EXPECT_THROW(nlohmann::json::parse(R"({"n_min":5,"n_max":2})").get<ExperimentConfig>(), std::invalid_argument);
  EXPECT_THROW(nlohmann::json::parse(R"({"shots":0})").get<ExperimentConfig>(), std::invalid_argument);
  EXPECT_THROW(nlohmann::json::parse(R"({"variants":["Iz"]})").get<ExperimentConfig>(), std::invalid_argument);
  EXPECT_THROW(nlohmann::json::parse(R"({"mode":"fast"})").get<ExperimentConfig>(), std::invalid_argument);
}

TEST(experiments, verify_suite_passes) {
  for (const auto &r : run_verify_suite()) EXPECT_TRUE(r.passed) << r.family << " " << r.size << " " << r.detail;
}

TEST(experiments, io_check_catches_a_wrong_circuit) {
  Circuit c(2, "cnot_reversed");
  c.inputs = c.outputs = {0, 1};
  c.cnot(1, 0);
  c.schedule();
  std::string why;
  EXPECT_FALSE(cnot_stabilizer_io_check(c, 1, &why));
  EXPECT_FALSE(why.empty());
}

TEST(experiments, noiseless_sweep_reports_one) {
  auto c = small_cnot();
  c.mode = "noiseless";
  for (const auto &r : cnot_sweep(c)) {
    EXPECT_EQ(r.simulated_fgate, 1.0);
    EXPECT_EQ(r.model_fgate, 1.0);
  }
}

TEST(experiments, post_process_model_at_least_feed_forward) {
  auto ff = small_cnot();
  auto pp = ff;
  pp.mode = "post_process";
  for (int n : ff.sizes()) {
    EXPECT_GE(sweep_budget(pp, "dynamic", n).fidelity_lower_bound,
              sweep_budget(ff, "dynamic", n).fidelity_lower_bound);
  }
}

TEST(experiments, sweep_rows_respect_lower_bound) {
  auto c = small_cnot();
  for (const auto &r : cnot_sweep(c)) {
    EXPECT_GE(r.simulated_fgate, r.model_fgate - 3 * r.std_err) << r.variant << " n=" << r.n;
  }
  auto g = nlohmann::json::parse(R"({"family":"ghz","n_min":2,"n_max":10,"step":2,"lambda_idle":0.001,
    "lambda_cnot":0.01,"lambda_meas":0.003,"mu":3.65,"m_samples":48,"shots":20})").get<ExperimentConfig>();
  for (const auto &r : ghz_sweep(g)) {
    EXPECT_GE(r.simulated_f, r.model_bound - 3 * r.std_err) << r.method << " n=" << r.n;
    EXPECT_EQ(r.entangled, r.simulated_f - 2 * r.std_err > 0.5);
  }
}

TEST(experiments, csv_is_thread_independent) {
  auto c = small_cnot();
  c.threads = 1;
  std::string a = to_csv(cnot_sweep(c));
  c.threads = 4;
  EXPECT_EQ(a, to_csv(cnot_sweep(c)));
  EXPECT_EQ(a.substr(0, a.find("\r\n")), "n,variant,model_bound_Fproc,model_Fgate,simulated_Fgate,std_err");
}

TEST(experiments, sidecar_timestamp_only_when_not_reproducible) {
  auto c = small_cnot();
  EXPECT_FALSE(sidecar(c, "cnot-sweep", true).contains("generated_at"));
  EXPECT_TRUE(sidecar(c, "cnot-sweep", false).contains("generated_at"));
}

TEST(experiments, ghz_sweep_rejects_odd_sizes) {
  auto g = nlohmann::json::parse(R"({"family":"ghz","n_min":3,"n_max":5})").get<ExperimentConfig>();
  EXPECT_THROW(ghz_sweep(g), std::invalid_argument);
}

TEST(experiments, sweep_budget_equals_closed_form_where_defined) {
  auto c = small_cnot();
  for (int n = 2; n <= 10; n += 2) {
    for (const auto &[v, f] : {std::pair{"dynamic", Family::cnot_dynamic}, std::pair{"Ia", Family::cnot_Ia},
                               std::pair{"Ib", Family::cnot_Ib}, std::pair{"Ic", Family::cnot_Ic},
                               std::pair{"II", Family::cnot_II}}) {
      EXPECT_NEAR(sweep_budget(c, v, n).lambda_tot, budget(f, n, c.noise).lambda_tot, 1e-12) << v << n;
    }
  }
}
