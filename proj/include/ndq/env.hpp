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

#ifndef NDQ_ENV_HPP_
#define NDQ_ENV_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "ndq/autodiff.hpp"

namespace ndq {

// Raised when a caller breaks an interface precondition (bad action index,
// stepping a finished episode, mismatched dimensions).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EnvSpec {
  int n_agents = 1;
  int n_actions = 1;
  int obs_dim = 1;
  int state_dim = 1;
  int episode_limit = 1;

  bool operator==(const EnvSpec&) const = default;
};

struct StepResult {
  Matrix observations;       // n_agents x obs_dim
  Matrix global_state;       // 1 x state_dim
  Matrix available_actions;  // n_agents x n_actions, entries 0/1
  double reward = 0.0;       // shared team reward
  bool terminated = false;   // environment reached a terminal state
  bool truncated = false;    // episode_limit reached without termination
};

// A cooperative Dec-POMDP. One instance is single-threaded; separate
// instances share nothing and may run concurrently.
class Env {
 public:
  virtual ~Env() = default;

  virtual EnvSpec info() const = 0;
  virtual std::string name() const = 0;

  StepResult reset(uint64_t seed);
  StepResult step(std::span<const int> joint_action);

  // Whether the most recent episode ended in the task's win condition.
  // Tasks without one report false.
  virtual bool won() const { return false; }

  int time_step() const { return t_; }
  bool done() const { return done_; }

 protected:
  virtual StepResult do_reset(uint64_t seed) = 0;
  // Advances the dynamics; the base class handles the time limit.
  virtual StepResult do_step(std::span<const int> joint_action) = 0;

  static Matrix all_available(const EnvSpec& spec);
  // Resets the step counter; for subclasses offering fixed-start resets.
  void begin_episode();

 private:
  int t_ = 0;
  bool done_ = true;
  bool started_ = false;
};

}  // namespace ndq

#endif  // NDQ_ENV_HPP_
