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

#ifndef NDQ_EPISODE_HPP_
#define NDQ_EPISODE_HPP_

#include <random>
#include <span>
#include <vector>

#include "ndq/autodiff.hpp"
#include "ndq/model.hpp"

namespace ndq {

// One full trajectory. Step-indexed arrays have T entries except the
// observation-like ones, which carry the final observation as entry T so a
// truncated episode can bootstrap.
struct Episode {
  int n_agents = 0;
  int n_actions = 0;
  int msg_len = 0;

  std::vector<Matrix> observations;       // T+1 x [n x obs_dim]
  std::vector<Matrix> states;             // T+1 x [1 x state_dim]
  std::vector<Matrix> available_actions;  // T+1 x [n x n_actions]
  std::vector<std::vector<int>> actions;  // T x n
  std::vector<double> rewards;            // T
  bool terminated = false;
  bool truncated = false;
  bool won = false;

  // Message record, T x [n x (n-1)*L]; row i is sender i, blocks ordered by
  // message_slot. `values` are what was delivered (zero where masked).
  std::vector<Matrix> means;
  std::vector<Matrix> values;
  std::vector<Matrix> masks;  // 0/1

  int length() const { return static_cast<int>(rewards.size()); }
  double total_reward() const;
  // Checks the shape invariants; throws ContractViolation.
  void validate() const;
};

// Episodes padded to a common length and laid out per time step with rows
// ordered (episode, agent).
struct Batch {
  int batch_size = 0;
  int max_len = 0;
  int n_agents = 0;
  int n_actions = 0;

  std::vector<Matrix> inputs;             // T+1 x [B*n x agent_input_dim]
  std::vector<Matrix> states;             // T+1 x [B x state_dim]
  std::vector<Matrix> available_actions;  // T+1 x [B*n x n_actions]
  std::vector<std::vector<int>> actions;  // T x [B*n]
  Matrix rewards;                         // B x T
  Matrix terminal;                        // B x T, 1 where the step ended the episode in a terminal state
  Matrix valid;                           // B x T, 1 where the step exists
  // Standard-normal message noise, T+1 x [B*n x (n-1)*L]. Drawn fresh for
  // every loss evaluation.
  std::vector<Matrix> noise;

  double valid_steps() const { return valid.sum(); }
};

Batch make_batch(std::span<const Episode* const> episodes, const ModelDims& dims);
void draw_noise(Batch& batch, const ModelDims& dims, std::mt19937_64& rng);

// Flat gather index mapping a [rows x (n-1)*L] sender-major means matrix
// (rows = batch * n) to the matching recipient-major inbox matrix.
std::vector<int> inbox_gather_index(int batch, int n_agents, int msg_len);

}  // namespace ndq

#endif  // NDQ_EPISODE_HPP_
