// Copyright 2026 The NDQ Authors
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


#ifndef NDQ_CONFIG_HPP_
#define NDQ_CONFIG_HPP_

// Run configuration and its INI form.
//
//   [env]    name = sensor | hallway | search, plus that environment's keys
//   [model]  msg_len, rnn_hidden, encoder_hidden, posterior_hidden, mixing_embed
//   [loss]   gamma, beta, lambda, label_mode, train_cut_threshold, lr,
//            rms_alpha, rms_eps, grad_clip
//   [train]  total_env_steps, n_runners, buffer_capacity, batch_size,
//            target_update_interval, updates_per_iteration, eps_start,
//            eps_end, eps_anneal_steps, seed, early_stop_patience,
//            early_stop_min_delta, checkpoint_period
//   [eval]   period, episodes, calibration_episodes, sample_messages,
//            dump_threshold, dump_episodes, cut
//
// Unknown sections or keys are rejected.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndq/envs.hpp"
#include "ndq/losses.hpp"
#include "ndq/model.hpp"

namespace ndq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelWidths {
  int rnn_hidden = 64;
  int encoder_hidden = 64;
  int posterior_hidden = 20;
  int mixing_embed = 32;
};

struct EvalConfig {
  int64_t period = 20000;  // env steps between evaluations
  int episodes = 48;
  int calibration_episodes = 100;
  bool sample_messages = false;
  double dump_threshold = 2.0;
  int dump_episodes = 100;
  // Cut policy applied during periodic evaluation (parse_cut_policy syntax).
  std::string cut = "none";
};

struct TrainConfig {
  EnvConfig env;
  ModelWidths model;
  Hyperparams hp;
  int64_t total_env_steps = 2'000'000;
  int n_runners = 16;
  int buffer_capacity = 5000;
  int updates_per_iteration = 1;
  uint64_t seed = 0;
  // Stop once this many consecutive evaluations fail to beat the best test
  // return by more than early_stop_min_delta; 0 never stops early.
  int early_stop_patience = 0;
  double early_stop_min_delta = 0.0;
  // Env steps between intermediate checkpoints; 0 writes only the first and
  // last.
  int64_t checkpoint_period = 0;
  EvalConfig eval;

  ModelDims dims() const;
  // Throws ConfigError.
  void validate() const;
};

// Defaults for an environment: beta = 1e-3 and a 2.0 dump threshold for the
// sensor task, beta = 1e-5 elsewhere, 3.0 dump threshold for hallway.
TrainConfig default_config(const std::string& env_name);

// Overrides are "section.key=value" and apply after the file.
TrainConfig parse_config(std::istream& is,
                         const std::vector<std::string>& overrides = {});
TrainConfig load_config(const std::string& path,
                        const std::vector<std::string>& overrides = {});
TrainConfig config_from_overrides(const std::vector<std::string>& overrides);

// Canonical INI text; parse_config(to_ini(c)) reproduces c exactly.
std::string to_ini(const TrainConfig& config);

}  // namespace ndq

#endif  // NDQ_CONFIG_HPP_
