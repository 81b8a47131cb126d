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


#ifndef NDQ_LOSSES_HPP_
#define NDQ_LOSSES_HPP_

#include <cstdint>
#include <span>
#include <string>

#include "ndq/autodiff.hpp"
#include "ndq/episode.hpp"
#include "ndq/model.hpp"

namespace ndq {

// Where the expressiveness label comes from.
enum class LabelMode {
  kGreedy,    // argmax of the live Q under the uncut inbox (default)
  kExecuted,  // the action taken in the episode
  kSoftmax,   // softmax of the live Q as a soft label
};

std::string to_string(LabelMode mode);
LabelMode parse_label_mode(const std::string& s);

struct Hyperparams {
  double gamma = 0.99;
  double beta = 1e-5;
  double lambda = 0.1;
  int msg_len = 3;
  LabelMode label_mode = LabelMode::kGreedy;
  // Bitwise cut applied to the inbox on the TD path during training;
  // 0 disables it. The expressiveness label always sees the full inbox.
  double train_cut_threshold = 0.0;

  double lr = 5e-4;
  double rms_alpha = 0.99;
  double rms_eps = 1e-5;
  double grad_clip = 10.0;
  int batch_size = 32;
  int target_update_interval = 200;  // learner updates
  double eps_start = 1.0;
  double eps_end = 0.05;
  int64_t eps_anneal_steps = 50000;

  // Throws std::invalid_argument.
  void validate() const;
  double epsilon(int64_t env_step) const;
};

struct LossReport {
  double total = 0.0;
  double td = 0.0;
  double expressiveness = 0.0;
  double succinctness = 0.0;
  double grad_norm = 0.0;
};

// Graph nodes for each loss component, all 1x1.
struct LossGraph {
  ad::Var total;
  ad::Var td;
  ad::Var expressiveness;
  ad::Var succinctness;
};

// Builds every loss term on `tape`. Targets come from the store's target
// groups and carry no gradient. The batch must hold noise (draw_noise).
LossGraph build_loss_graph(ad::Tape& tape, const LiveBinding& live,
                           const ParamStore& store, const Batch& batch,
                           const Hyperparams& hp);

double td_loss(const Batch& batch, const ParamStore& store,
               const Hyperparams& hp);
double expressiveness_loss(const Batch& batch, const ParamStore& store,
                           const Hyperparams& hp);
// Mean over messages of ||mu||^2 / 2; `means` rows are messages.
double succinctness_loss(const Matrix& means);

// Total loss and its decomposition; grad_norm is the pre-clip global norm.
// Throws std::runtime_error naming the non-finite component.
LossReport total_loss(const Batch& batch, const ParamStore& store,
                      const Hyperparams& hp);
// Same, also returning the gradients.
LossReport total_loss(const Batch& batch, const ParamStore& store,
                      const Hyperparams& hp, Gradients* grads);

// Scalar helpers shared with tests.
double td_error_squared(double reward, double gamma, bool terminal,
                        double target_q_tot, double q_tot);
double cross_entropy(std::span<const double> label,
                     std::span<const double> probs);

}  // namespace ndq

#endif  // NDQ_LOSSES_HPP_
