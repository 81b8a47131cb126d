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


#ifndef NDQ_ROLLOUT_HPP_
#define NDQ_ROLLOUT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "ndq/comm.hpp"
#include "ndq/env.hpp"
#include "ndq/episode.hpp"
#include "ndq/model.hpp"

namespace ndq {

// Decentralised decision maker driven one step at a time: first every agent
// emits message means, then every agent computes Q values from its inbox.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual void begin_episode() = 0;
  // [n x (n-1)*L] means, sender-major (see message_slot).
  virtual Matrix messages(const Matrix& observations,
                          const std::vector<int>& last_actions) = 0;
  // [n x n_actions] from recipient-major inboxes [n x (n-1)*L].
  virtual Matrix q_values(const Matrix& inboxes) = 0;
};

// Runs the learned networks; holds a reference to an immutable store.
class NetworkController final : public Controller {
 public:
  explicit NetworkController(const ParamStore& store);

  void begin_episode() override;
  Matrix messages(const Matrix& observations,
                  const std::vector<int>& last_actions) override;
  Matrix q_values(const Matrix& inboxes) override;

  const Matrix& hidden() const { return hidden_; }

 private:
  const ParamStore& store_;
  Matrix hidden_;
};

struct RolloutOptions {
  double epsilon = 0.0;
  CutPolicy cut = CutPolicy::none();
  // Deliver means + unit Gaussian noise; false delivers the means.
  bool sample_messages = true;
};

// Independent streams derived from the run seed.
enum class SeedStream : uint64_t {
  kTrain = 0,
  kEval = 1,
  kCalibration = 2,
  kDump = 3,
  kLearner = 4,
};
uint64_t episode_seed(uint64_t run_seed, SeedStream stream, int64_t index);

// Plays one episode. The env is reset with `seed`, and exploration and
// message noise draw from a generator seeded from it.
Episode collect_episode(Env& env, Controller& controller,
                        const RolloutOptions& options, uint64_t seed);

// Epsilon-greedy choice restricted to available actions; ties go to the
// lowest index.
int select_action(const RowVector& q, const RowVector& available,
                  double epsilon, std::mt19937_64& rng);

}  // namespace ndq

#endif  // NDQ_ROLLOUT_HPP_
