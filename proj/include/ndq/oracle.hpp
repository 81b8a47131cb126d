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


#ifndef NDQ_ORACLE_HPP_
#define NDQ_ORACLE_HPP_

// Brute-force reference computations used to check the learning code:
// exact discrete mutual information and its variational lower bound, a
// quadrature check of the Gaussian-message rate bound, exact optima of the
// didactic tasks, and finite-difference gradient checking.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ndq/envs.hpp"
#include "ndq/episode.hpp"
#include "ndq/losses.hpp"
#include "ndq/model.hpp"

namespace ndq::oracle {

// p(c, a, m) over a context c, an action a and a message m, stored as
// [c][a][m].
struct DiscreteJoint {
  int contexts = 0;
  int actions = 0;
  int messages = 0;
  std::vector<double> p;

  double at(int c, int a, int m) const {
    return p[(static_cast<size_t>(c) * actions + a) * messages + m];
  }
  // Throws std::invalid_argument unless p >= 0 and sums to 1 within 1e-12.
  void validate() const;
};

// I(A; M | C) by summing p log p(a,m|c) / (p(a|c) p(m|c)).
double exact_mi_discrete(const DiscreteJoint& joint);
// I(A; M | C) as H(A|C) - H(A|M,C); an independent summation order.
double exact_mi_discrete_entropies(const DiscreteJoint& joint);

// Generative model behind a DiscreteJoint: a finite set of full histories
// tau, each with a context c(tau), an action law p(a|tau) and a message law
// p(m|tau); A and M are independent given tau.
struct HistoryModel {
  int contexts = 0;
  int actions = 0;
  int messages = 0;
  std::vector<double> p_history;          // [H]
  std::vector<int> context_of;            // [H]
  std::vector<std::vector<double>> p_action;   // [H][K]
  std::vector<std::vector<double>> p_message;  // [H][M]

  int histories() const { return static_cast<int>(p_history.size()); }
  DiscreteJoint joint() const;
};

// q(a | c, m) stored as [c][m][a].
using ConditionalTable = std::vector<double>;

struct BoundCheck {
  double mi = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// bound = -E_{tau, m}[ CE( p(A|tau) || q(A|c(tau), m) ) ];
// holds iff mi >= bound - tolerance.
BoundCheck theorem1_check(const HistoryModel& model, const ConditionalTable& q,
                          double tolerance = 1e-9);
// The exact posterior p(a | c, m) of the model, as a ConditionalTable.
ConditionalTable exact_posterior(const HistoryModel& model);

HistoryModel random_history_model(std::mt19937_64& rng, int histories,
                                  int contexts, int actions, int messages);
ConditionalTable random_conditional(std::mt19937_64& rng, int contexts,
                                    int messages, int actions);

// 1-D messages M | tau ~ N(mu(tau), 1).
struct RateCheck {
  double lhs = 0.0;  // I(M; T) = H(M) - H(M|T), by quadrature
  double rhs = 0.0;  // E_tau[mu(tau)^2 / 2]
  bool holds = false;
};

// Throws std::runtime_error if the quadrature fails to converge.
RateCheck eq5_check(const std::vector<double>& weights,
                    const std::vector<double>& means, double tolerance = 1e-6);

// Adaptive Simpson integration of f over [a, b] to absolute tolerance `tol`.
// Throws std::runtime_error past max_depth.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 50);

// Differential entropy of a 1-D Gaussian mixture with unit variances.
double mixture_entropy(const std::vector<double>& weights,
                       const std::vector<double>& means);

// KL( N(mu, 1) || N(0, 1) ) by quadrature.
double numeric_gaussian_kl(double mu);

// Expected per-step reward of the best full-information joint action.
double solve_sensor_optimal(const SensorConfig& config);

struct HallwaySolution {
  double win_probability = 0.0;
  double expected_length = 0.0;  // over all starts, under the optimal plan
};

// Centralised dynamic programme over joint positions: maximise the chance of
// both agents reaching g on the same step, then minimise episode length.
// Averages over the uniform start distribution unless `start` is given.
HallwaySolution solve_hallway_optimal(
    const HallwayConfig& config,
    std::optional<std::pair<int, int>> start = std::nullopt);

struct GradCheckResult {
  double max_rel_error = 0.0;
  int coordinates = 0;
  size_t worst_index = 0;
};

// Central differences on a random subsample of coordinates (all of them if
// there are fewer than `max_coordinates`), taken at steps 10, 1, 0.1 and 0.01
// times `epsilon`; each coordinate keeps its smallest error. Large steps
// suffer from curvature and from straddling a ReLU kink, small ones from
// roundoff, but a wrong gradient disagrees at every step. Relative error is
// |analytic - numeric| / max(|analytic|, |numeric|, abs_floor).
GradCheckResult fd_gradcheck(
    const std::function<double(const std::vector<double>&)>& loss,
    const std::vector<double>& x, const std::vector<double>& analytic,
    double epsilon = 1e-6, int max_coordinates = 200, uint64_t seed = 0,
    double abs_floor = 1e-7);

// Live parameters of a store flattened in live_groups() order, and back.
std::vector<double> flatten_live(const ParamStore& store);
void unflatten_live(const std::vector<double>& x, ParamStore& store);
std::vector<double> flatten(const Gradients& grads);

// Random episodes of at most `steps` steps (the last one shorter when
// steps > 1, so padding is exercised), batched with noise drawn.
Batch synthetic_batch(const ModelDims& dims, int episodes, int steps,
                      uint64_t seed);

// fd_gradcheck of total_loss on a batch whose noise is already drawn.
GradCheckResult gradcheck_total_loss(const Batch& batch, const ParamStore& store,
                                     const Hyperparams& hp,
                                     double epsilon = 1e-5,
                                     int max_coordinates = 200,
                                     uint64_t seed = 0, double abs_floor = 1e-6);

struct SuiteRow {
  std::string name;
  bool passed = false;
  std::string detail;
};

// The bound, optimum and gradient checks on fresh random instances; what the
// `oracle` subcommand prints.
std::vector<SuiteRow> run_suite(uint64_t seed, int instances = 50);

}  // namespace ndq::oracle

#endif  // NDQ_ORACLE_HPP_
