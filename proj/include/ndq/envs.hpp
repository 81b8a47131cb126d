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

#ifndef NDQ_ENVS_HPP_
#define NDQ_ENVS_HPP_

// The three didactic coordination tasks.

#include <array>
#include <memory>
#include <random>
#include <string>

#include "ndq/env.hpp"

namespace ndq {

// Three sensors in a row. Area 1 lies between sensors 1 and 2 (east of
// sensor 1, west of sensor 2); area 2 lies between sensors 2 and 3. The
// north and south areas never hold a target.
struct SensorConfig {
  double p_target2 = 0.5;
  double reward_t1 = 20.0;
  double reward_t2 = 30.0;
  double scan_cost = -5.0;
  int episode_limit = 10;

  void validate() const;
};

enum SensorAction : int { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3, kNoop = 4 };

class SensorEnv final : public Env {
 public:
  explicit SensorEnv(SensorConfig config);

  EnvSpec info() const override;
  std::string name() const override { return "sensor"; }

  bool target2_present() const { return target2_; }
  // Overrides the target sample for the current step (tests, dumps).
  void set_target2(bool present);

  // Team reward for a joint action given target 2's presence. Target 1 is
  // always present.
  static double reward_for(const SensorConfig& c, bool target2,
                           std::span<const int> actions);

 protected:
  StepResult do_reset(uint64_t seed) override;
  StepResult do_step(std::span<const int> joint_action) override;

 private:
  StepResult observe() const;
  void resample();

  SensorConfig config_;
  std::mt19937_64 rng_;
  bool target2_ = false;
};

// Two agents on chains a_m..a_1 -> g and b_n..b_1 -> g. Position 0 is g.
struct HallwayConfig {
  int m = 4;
  int n = 4;
  double win_reward = 10.0;
  // 0 selects the default horizon max(m, n) + 10.
  int episode_limit = 0;

  int horizon() const;
  void validate() const;
};

enum HallwayAction : int { kLeft = 0, kRight = 1, kStay = 2 };

class HallwayEnv final : public Env {
 public:
  explicit HallwayEnv(HallwayConfig config);

  EnvSpec info() const override;
  std::string name() const override { return "hallway"; }
  bool won() const override { return won_; }

  // Starts an episode from a fixed position pair (1-based chain indices).
  StepResult reset_to(int pos_a, int pos_b);
  std::array<int, 2> positions() const { return pos_; }

 protected:
  StepResult do_reset(uint64_t seed) override;
  StepResult do_step(std::span<const int> joint_action) override;

 private:
  StepResult observe() const;

  HallwayConfig config_;
  std::array<int, 2> pos_{1, 1};
  bool won_ = false;
};

struct SearchConfig {
  int room_side = 5;
  int horizon = 100;
  double step_reward = 1.0;

  void validate() const;
};

enum SearchAction : int { kUp = 0, kDown = 1, kMoveLeft = 2, kMoveRight = 3, kHold = 4 };

// Two agents, each alone in its own square room with one landmark.
class SearchEnv final : public Env {
 public:
  explicit SearchEnv(SearchConfig config);

  EnvSpec info() const override;
  std::string name() const override { return "search"; }

  struct Room {
    int agent = 0;     // cell index row * side + col
    int landmark = 0;
  };
  const std::array<Room, 2>& rooms() const { return rooms_; }
  StepResult reset_to(const std::array<Room, 2>& rooms);

 protected:
  StepResult do_reset(uint64_t seed) override;
  StepResult do_step(std::span<const int> joint_action) override;

 private:
  StepResult observe(double reward) const;

  SearchConfig config_;
  std::array<Room, 2> rooms_{};
};

std::unique_ptr<Env> make_sensor(const SensorConfig& config);
std::unique_ptr<Env> make_hallway(const HallwayConfig& config);
std::unique_ptr<Env> make_search(const SearchConfig& config);

// Environment selection by name ("sensor", "hallway", "search") plus the
// settings of each; only the selected one is used.
struct EnvConfig {
  std::string name = "sensor";
  SensorConfig sensor;
  HallwayConfig hallway;
  SearchConfig search;

  // Throws std::invalid_argument.
  void validate() const;
  std::unique_ptr<Env> make() const;
  EnvSpec spec() const;
};

}  // namespace ndq

#endif  // NDQ_ENVS_HPP_
