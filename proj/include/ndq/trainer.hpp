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


#ifndef NDQ_TRAINER_HPP_
#define NDQ_TRAINER_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "ndq/config.hpp"
#include "ndq/episode.hpp"
#include "ndq/losses.hpp"
#include "ndq/model.hpp"

namespace ndq {

// Ring buffer of complete episodes. Appends may come from any thread;
// sampling returns shared snapshots, so readers never see partial writes.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void add(Episode episode);
  // Uniform sampling with replacement.
  std::vector<std::shared_ptr<const Episode>> sample(int count,
                                                     std::mt19937_64& rng) const;
  int size() const;
  int capacity() const { return capacity_; }

 private:
  int capacity_;
  mutable std::mutex mu_;
  std::vector<std::shared_ptr<const Episode>> slots_;
  size_t next_ = 0;
};

// RMSprop with a global-norm gradient clip.
class RmsProp {
 public:
  RmsProp(const ParamStore& store, double lr, double alpha, double eps,
          double clip);
  // Clips `grads` in place and updates the live parameters.
  void step(ParamStore& store, Gradients& grads);

 private:
  double lr_, alpha_, eps_, clip_;
  std::vector<std::vector<Matrix>> square_avg_;
};

struct MetricsRow {
  int64_t env_steps = 0;
  double mean_test_return = 0.0;
  double test_win_rate = 0.0;
  double mean_episode_len = 0.0;
  LossReport loss;
  double eps = 0.0;
  double by_message_drop_rate = 0.0;
  double by_bit_drop_rate = 0.0;
  uint64_t seed = 0;
  // Not part of the CSV.
  double mean_step_reward = 0.0;
};

void write_metrics_csv_header(std::ostream& os);
void write_metrics_csv_row(std::ostream& os, const MetricsRow& row);
std::vector<MetricsRow> read_metrics_csv(std::istream& is);

struct TrainResult {
  ParamStore params;
  std::vector<MetricsRow> metrics;
  int64_t env_steps = 0;
  int64_t episodes = 0;
  int64_t updates = 0;
  bool stopped_early = false;
};

struct TrainHooks {
  // Called after each evaluation row; return false to stop.
  std::function<bool(const MetricsRow&)> on_eval;
};

// Full training run. With a non-empty out_dir it writes metrics.csv,
// effective_config.ini and checkpoints there. Throws std::runtime_error on a
// non-finite loss.
TrainResult train(const TrainConfig& config, const std::string& out_dir = "",
                  const TrainHooks& hooks = {});

}  // namespace ndq

#endif  // NDQ_TRAINER_HPP_
