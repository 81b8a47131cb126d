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


#ifndef NDQ_EVAL_HPP_
#define NDQ_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "ndq/checkpoint.hpp"
#include "ndq/comm.hpp"
#include "ndq/envs.hpp"
#include "ndq/episode.hpp"
#include "ndq/model.hpp"

namespace ndq {

struct EvalOptions {
  int episodes = 48;
  CutPolicy cut = CutPolicy::none();
  bool sample_messages = false;
  uint64_t seed = 0;
  // Greedy episodes pooled to calibrate a drop-rate policy.
  int calibration_episodes = 100;
};

struct EvalResult {
  double mean_return = 0.0;
  double win_rate = 0.0;
  double mean_episode_len = 0.0;
  double mean_step_reward = 0.0;
  double threshold = 0.0;  // cut threshold actually applied
  DropStats drops;
};

// Fills policy.calibrated_threshold from greedy, uncut episodes. No-op for
// other modes.
void calibrate(const ParamStore& store, const EnvConfig& env, CutPolicy& policy,
               const EvalOptions& options);

// Greedy evaluation with messages cut per options.cut (calibrated first if
// needed). Deterministic given the inputs.
EvalResult evaluate(const ParamStore& store, const EnvConfig& env,
                    const EvalOptions& options);
// Same, also returning the played episodes.
EvalResult evaluate(const ParamStore& store, const EnvConfig& env,
                    const EvalOptions& options, std::vector<Episode>* episodes);
// Throws ContractViolation if the checkpoint was trained on another spec.
EvalResult evaluate(const Checkpoint& ckpt, const EnvConfig& env,
                    const EvalOptions& options);

struct SweepRow {
  double rate = 0.0;
  RateScope scope = RateScope::kByBit;
  EvalResult result;
};

// One calibration pass, then one evaluation per rate; rows sorted by rate.
std::vector<SweepRow> sweep_drop(const ParamStore& store, const EnvConfig& env,
                                 std::vector<double> rates, RateScope scope,
                                 const EvalOptions& options);

struct ChannelSummary {
  int sender = 0;
  int recipient = 0;
  int bit = 0;
  double mean_abs_mu = 0.0;
  double frac_above_threshold = 0.0;
  int64_t count = 0;
};

// Per (i, j, bit) statistics over the records accepted by `filter` (all of
// them when empty), ordered by sender, recipient, bit. Channels with no
// accepted record report zeros.
std::vector<ChannelSummary> summarize_messages(
    const std::vector<MessageRecord>& records, int n_agents, int msg_len,
    double threshold,
    const std::function<bool(const MessageRecord&)>& filter = {});

struct MessageDump {
  std::vector<MessageRecord> records;
  std::vector<ChannelSummary> summary;
  std::vector<Episode> episodes;
};

// Greedy episodes with uncut messages; `records` flattens the message log.
MessageDump dump_messages(const ParamStore& store, const EnvConfig& env,
                          int episodes, double threshold,
                          const EvalOptions& options);

std::vector<MessageRecord> message_records(const std::vector<Episode>& episodes);

// CSV writers. Metrics rows are written by the trainer with the same header.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_summary_csv(std::ostream& os,
                       const std::vector<ChannelSummary>& summary);
std::vector<ChannelSummary> read_summary_csv(std::istream& is);

// Mean and 95% half-width (1.96 * sample std / sqrt(n)); half-width 0 for
// fewer than two values.
struct MeanCI {
  double mean = 0.0;
  double half_width = 0.0;
};
MeanCI mean_ci95(const std::vector<double>& values);

}  // namespace ndq

#endif  // NDQ_EVAL_HPP_
