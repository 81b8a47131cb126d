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

#ifndef NDQ_MODEL_HPP_
#define NDQ_MODEL_HPP_

// Trainable function approximators:
//
//   agent      obs, last action, id -> ReLU(fc1) -> GRU cell (h)
//              [h, inbox] -> linear head -> Q values
//   encoder    h_i -> 64 ReLU -> (n-1) * L message means, one L-block per
//              recipient in ascending id order (sender excluded)
//   posterior  [h_j, inbox_j] -> 20 ReLU -> 20 ReLU -> softmax over actions
//   mixer      QMIX-style; state-conditioned hypernetworks produce
//              nonnegative weights, so Q_tot is monotone in every agent Q
//
// All parameters are shared across agents. The inbox enters the agent at the
// Q head rather than the recurrent input because the encoder reads the hidden
// state of the same step.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ndq/autodiff.hpp"

namespace ndq {

struct ModelDims {
  int n_agents = 1;
  int n_actions = 1;
  int obs_dim = 1;
  int state_dim = 1;
  int msg_len = 0;
  int rnn_hidden = 64;
  int encoder_hidden = 64;
  int posterior_hidden = 20;
  int mixing_embed = 32;

  int agent_input_dim() const { return obs_dim + n_actions + n_agents; }
  int inbox_dim() const { return (n_agents - 1) * msg_len; }
  bool communicates() const { return msg_len > 0 && n_agents > 1; }
  void validate() const;

  bool operator==(const ModelDims&) const = default;
};

// Named parameter matrices with a fixed layout.
struct ParamGroup {
  std::vector<std::string> names;
  std::vector<Matrix> values;

  int add(std::string name, Matrix value);
  size_t size() const { return values.size(); }
  size_t num_scalars() const;
  bool operator==(const ParamGroup& other) const;
};

// Parameter indices per group.
namespace agent_param {
enum : int {
  kFc1W, kFc1B,
  kWir, kWiz, kWin, kBir, kBiz, kBin,
  kWhr, kWhz, kWhn, kBhr, kBhz, kBhn,
  kHeadW, kHeadB,
  kCount
};
}
namespace encoder_param {
enum : int { kW1, kB1, kW2, kB2, kCount };
}
namespace posterior_param {
enum : int { kW1, kB1, kW2, kB2, kW3, kB3, kCount };
}
namespace mixer_param {
enum : int {
  kHyperW1W, kHyperW1B, kHyperB1W, kHyperB1B,
  kHyperW2W, kHyperW2B, kV1W, kV1B, kV2W, kV2B,
  kCount
};
}

struct ParamStore {
  ModelDims dims;
  ParamGroup agent;      // theta_a
  ParamGroup encoder;    // theta_c
  ParamGroup posterior;  // xi
  ParamGroup mixer;      // theta_m
  // Target copies used for the bootstrap term.
  ParamGroup target_agent;
  ParamGroup target_encoder;
  ParamGroup target_mixer;

  // Uniform fan-in initialisation; targets start as exact copies.
  static ParamStore init(const ModelDims& dims, uint64_t seed);
  // Zero-valued store with the right shapes.
  static ParamStore zeros(const ModelDims& dims);

  void sync_target();
  bool target_in_sync() const;

  // Live trainable groups in a fixed order: agent, encoder, posterior, mixer.
  std::vector<ParamGroup*> live_groups();
  std::vector<const ParamGroup*> live_groups() const;
  size_t num_live_scalars() const;
};

// Parameters placed on a tape.
struct BoundParams {
  std::vector<ad::Var> p;
  const ad::Var& operator[](int i) const { return p[static_cast<size_t>(i)]; }
};

BoundParams bind(ad::Tape& tape, const ParamGroup& group, bool differentiable);

// Graph-level building blocks; rows are (batch, agent) pairs unless noted.
ad::Var agent_recurrent(const BoundParams& agent, const ad::Var& inputs,
                        const ad::Var& hidden);
ad::Var agent_q(const BoundParams& agent, const ModelDims& dims,
                const ad::Var& hidden, const ad::Var& inbox);
ad::Var encoder_means(const BoundParams& encoder, const ad::Var& hidden);
ad::Var posterior_log_probs(const BoundParams& posterior, const ModelDims& dims,
                            const ad::Var& hidden, const ad::Var& inbox);
// chosen_qs: B x n, state: B x state_dim -> B x 1.
ad::Var mix_q(const BoundParams& mixer, const ModelDims& dims,
              const ad::Var& chosen_qs, const ad::Var& state);

// Stacks per-agent network inputs: [obs, one_hot(last action), one_hot(id)].
// last_actions[i] < 0 means "no previous action".
Matrix agent_inputs(const Matrix& observations,
                    const std::vector<int>& last_actions, int n_actions);

// ---------------------------------------------------------------------------
// Value-level entry points.

struct AgentHidden {
  RowVector h;
  static AgentHidden zeros(const ModelDims& dims) {
    return {RowVector::Zero(dims.rnn_hidden)};
  }
};

// Per-sender Gaussian means, one row per recipient j != sender in ascending
// order, msg_len columns. Covariance is the identity and is never stored.
struct MessageMeans {
  int sender = 0;
  Matrix means;
  int recipient(int row) const { return row < sender ? row : row + 1; }
};

struct ActionDistribution {
  RowVector probs;
};

struct AgentOutput {
  RowVector q_values;
  AgentHidden hidden;
};

AgentOutput agent_forward(const ParamGroup& agent, const ModelDims& dims,
                          const RowVector& obs, int last_action, int agent_id,
                          const RowVector& inbox, const AgentHidden& hidden);
MessageMeans encode_messages(const ParamGroup& encoder, const ModelDims& dims,
                             const AgentHidden& hidden, int sender);
ActionDistribution posterior_forward(const ParamGroup& posterior,
                                     const ModelDims& dims,
                                     const AgentHidden& hidden,
                                     const RowVector& inbox);
double mix(const ParamGroup& mixer, const ModelDims& dims,
           const RowVector& chosen_qs, const RowVector& state);

struct LiveBinding {
  BoundParams agent;
  BoundParams encoder;
  BoundParams posterior;
  BoundParams mixer;
};

LiveBinding bind_live(ad::Tape& tape, const ParamStore& store,
                      bool differentiable);

struct Gradients {
  std::vector<std::vector<Matrix>> groups;  // same layout as live_groups()
  double loss = 0.0;
  double global_norm() const;
};

// Gradient of the scalar built by `loss_fn` w.r.t. every live parameter.
// Throws std::runtime_error on a non-finite loss.
Gradients grad(const ParamStore& store,
               const std::function<ad::Var(ad::Tape&, const LiveBinding&)>&
                   loss_fn);

}  // namespace ndq

#endif  // NDQ_MODEL_HPP_
