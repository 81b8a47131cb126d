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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "ndq/checkpoint.hpp"
#include "ndq/comm.hpp"
#include "ndq/config.hpp"
#include "ndq/envs.hpp"
#include "ndq/eval.hpp"
#include "ndq/oracle.hpp"
#include "ndq/trainer.hpp"

namespace py = pybind11;
using namespace ndq;

namespace {

TrainConfig make_config(const std::string& path, const std::vector<std::string>& overrides) {
  return path.empty() ? config_from_overrides(overrides) : load_config(path, overrides);
}

py::dict step_dict(const StepResult& r) {
  py::dict d;
  d["observations"] = r.observations;
  d["state"] = r.global_state;
  d["available_actions"] = r.available_actions;
  d["reward"] = r.reward;
  d["terminated"] = r.terminated;
  d["truncated"] = r.truncated;
  return d;
}

py::dict eval_dict(const EvalResult& r) {
  py::dict d;
  d["mean_return"] = r.mean_return;
  d["win_rate"] = r.win_rate;
  d["mean_episode_len"] = r.mean_episode_len;
  d["mean_step_reward"] = r.mean_step_reward;
  d["threshold"] = r.threshold;
  d["by_message_drop_rate"] = r.drops.by_message_rate;
  d["by_bit_drop_rate"] = r.drops.by_bit_rate;
  d["bits_sent_total"] = r.drops.bits_sent_total;
  return d;
}

py::dict metrics_dict(const MetricsRow& m) {
  py::dict d;
  d["env_steps"] = m.env_steps;
  d["mean_test_return"] = m.mean_test_return;
  d["test_win_rate"] = m.test_win_rate;
  d["mean_episode_len"] = m.mean_episode_len;
  d["loss_total"] = m.loss.total;
  d["loss_td"] = m.loss.td;
  d["loss_ce"] = m.loss.expressiveness;
  d["loss_kl"] = m.loss.succinctness;
  d["grad_norm"] = m.loss.grad_norm;
  d["eps"] = m.eps;
  d["by_message_drop_rate"] = m.by_message_drop_rate;
  d["by_bit_drop_rate"] = m.by_bit_drop_rate;
  d["seed"] = m.seed;
  return d;
}

EvalOptions options_for(const Checkpoint& ck, int episodes, const std::string& cut,
                        uint64_t seed) {
  EvalOptions o;
  o.episodes = episodes > 0 ? episodes : ck.config.eval.episodes;
  o.calibration_episodes = ck.config.eval.calibration_episodes;
  o.sample_messages = ck.config.eval.sample_messages;
  o.seed = seed;
  o.cut = parse_cut_policy(cut);
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nearly decomposable Q-learning with minimised communication";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

  py::class_<EnvSpec>(m, "EnvSpec")
      .def_readonly("n_agents", &EnvSpec::n_agents)
      .def_readonly("n_actions", &EnvSpec::n_actions)
      .def_readonly("obs_dim", &EnvSpec::obs_dim)
      .def_readonly("state_dim", &EnvSpec::state_dim)
      .def_readonly("episode_limit", &EnvSpec::episode_limit);

  py::class_<Env>(m, "Env")
      .def_property_readonly("spec", &Env::info)
      .def_property_readonly("name", &Env::name)
      .def_property_readonly("won", &Env::won)
      .def_property_readonly("time_step", &Env::time_step)
      .def("reset", [](Env& e, uint64_t seed) { return step_dict(e.reset(seed)); },
           py::arg("seed"))
      .def("step",
           [](Env& e, const std::vector<int>& actions) { return step_dict(e.step(actions)); },
           py::arg("actions"));

  m.def(
      "make_env",
      [](const std::vector<std::string>& overrides) {
        std::vector<std::string> all = overrides;
        return config_from_overrides(all).env.make();
      },
      py::arg("overrides") = std::vector<std::string>{},
      "Builds an environment from env.* overrides, e.g. ['env.name=hallway', 'env.m=3'].");

  m.def(
      "config_ini",
      [](const std::string& path, const std::vector<std::string>& overrides) {
        return to_ini(make_config(path, overrides));
      },
      py::arg("path") = "", py::arg("overrides") = std::vector<std::string>{},
      "Resolved configuration as canonical INI text.");

  m.def(
      "train",
      [](const std::string& path, const std::vector<std::string>& overrides,
         const std::string& out_dir,
         const std::function<bool(py::dict)>& on_eval) {
        const TrainConfig cfg = make_config(path, overrides);
        TrainHooks hooks;
        if (on_eval) {
          hooks.on_eval = [&](const MetricsRow& r) {
            py::gil_scoped_acquire gil;
            return on_eval(metrics_dict(r));
          };
        }
        TrainResult res;
        {
          py::gil_scoped_release release;
          res = train(cfg, out_dir, hooks);
        }
        py::list rows;
        for (const MetricsRow& r : res.metrics) rows.append(metrics_dict(r));
        return rows;
      },
      py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{},
      py::arg("out_dir") = "", py::arg("on_eval") = nullptr,
      "Trains a run and returns its metrics rows. on_eval may return False to stop.");

  m.def(
      "evaluate",
      [](const std::string& checkpoint, const std::string& cut, int episodes,
         uint64_t seed) {
        const Checkpoint ck = load_checkpoint(checkpoint);
        EvalResult r;
        {
          py::gil_scoped_release release;
          r = evaluate(ck, ck.config.env, options_for(ck, episodes, cut, seed));
        }
        return eval_dict(r);
      },
      py::arg("checkpoint"), py::arg("cut") = "none", py::arg("episodes") = 0,
      py::arg("seed") = 0);

  m.def(
      "sweep_drop",
      [](const std::string& checkpoint, const std::vector<double>& rates,
         const std::string& scope, int episodes, uint64_t seed) {
        const Checkpoint ck = load_checkpoint(checkpoint);
        const auto rows = sweep_drop(ck.params, ck.config.env, rates, parse_rate_scope(scope),
                                     options_for(ck, episodes, "none", seed));
        py::list out;
        for (const SweepRow& r : rows) {
          py::dict d = eval_dict(r.result);
          d["rate"] = r.rate;
          d["scope"] = to_string(r.scope);
          out.append(d);
        }
        return out;
      },
      py::arg("checkpoint"), py::arg("rates"), py::arg("scope") = "bits",
      py::arg("episodes") = 0, py::arg("seed") = 0);

  m.def(
      "dump_messages",
      [](const std::string& checkpoint, int episodes, double threshold, uint64_t seed) {
        const Checkpoint ck = load_checkpoint(checkpoint);
        const double thr = threshold >= 0.0 ? threshold : ck.config.eval.dump_threshold;
        const MessageDump d = dump_messages(
            ck.params, ck.config.env,
            episodes > 0 ? episodes : ck.config.eval.dump_episodes, thr,
            options_for(ck, 1, "none", seed));
        py::list records, summary;
        for (const MessageRecord& r : d.records) {
          py::dict x;
          x["episode"] = r.episode;
          x["t"] = r.t;
          x["i"] = r.sender;
          x["j"] = r.recipient;
          x["mu"] = r.means;
          x["mask"] = r.mask;
          x["values"] = r.values;
          records.append(x);
        }
        for (const ChannelSummary& s : d.summary) {
          py::dict x;
          x["i"] = s.sender;
          x["j"] = s.recipient;
          x["bit"] = s.bit;
          x["mean_abs_mu"] = s.mean_abs_mu;
          x["frac_above_threshold"] = s.frac_above_threshold;
          summary.append(x);
        }
        return py::make_tuple(records, summary);
      },
      py::arg("checkpoint"), py::arg("episodes") = 0, py::arg("threshold") = -1.0,
      py::arg("seed") = 0,
      "Per-exchange message records and per-channel summaries; a negative "
      "threshold selects the checkpoint's dump threshold.");

  m.def("encode_mask", py::overload_cast<const std::vector<bool>&>(&encode_mask),
        py::arg("mask"));
  m.def("decode_mask", &decode_mask, py::arg("bits"), py::arg("msg_len"));
  m.def(
      "cut",
      [](const std::vector<double>& means, const std::vector<double>& values,
         double threshold) {
        const Message msg = cut(means, values, CutPolicy::at_threshold(threshold));
        return py::make_tuple(msg.values, msg.mask);
      },
      py::arg("means"), py::arg("values"), py::arg("threshold"),
      "Bitwise cut: returns (delivered values, mask).");

  py::module_ oracle = m.def_submodule("oracle", "Reference computations");
  oracle.def(
      "solve_sensor_optimal",
      [](const std::vector<std::string>& overrides) {
        return oracle::solve_sensor_optimal(config_from_overrides(overrides).env.sensor);
      },
      py::arg("overrides") = std::vector<std::string>{});
  oracle.def(
      "solve_hallway_optimal",
      [](const std::vector<std::string>& overrides) {
        std::vector<std::string> all = {"env.name=hallway"};
        all.insert(all.end(), overrides.begin(), overrides.end());
        const auto s = oracle::solve_hallway_optimal(config_from_overrides(all).env.hallway);
        return py::make_tuple(s.win_probability, s.expected_length);
      },
      py::arg("overrides") = std::vector<std::string>{},
      "(win probability, expected episode length) under full information.");
  oracle.def("eq5_check",
             [](const std::vector<double>& w, const std::vector<double>& mu, double tol) {
               const auto r = oracle::eq5_check(w, mu, tol);
               return py::make_tuple(r.lhs, r.rhs, r.holds);
             },
             py::arg("weights"), py::arg("means"), py::arg("tolerance") = 1e-6,
             "(mutual information, rate bound, holds) for a unit-variance mixture.");
  oracle.def("numeric_gaussian_kl", &oracle::numeric_gaussian_kl, py::arg("mu"));
  oracle.def(
      "run_suite",
      [](uint64_t seed, int instances) {
        py::list out;
        for (const auto& r : oracle::run_suite(seed, instances)) {
          out.append(py::make_tuple(r.name, r.passed, r.detail));
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("instances") = 50);
}
