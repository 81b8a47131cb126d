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


#ifndef NDQ_CHECKPOINT_HPP_
#define NDQ_CHECKPOINT_HPP_

// Binary checkpoint container:
//   8-byte magic "NDQCKPT\0", uint32 format version, uint64 header length,
//   a JSON header (run config as INI text, env steps, parameter names and
//   shapes), then every parameter as little-endian IEEE doubles in header
//   order.

#include <cstdint>
#include <string>

#include "ndq/config.hpp"
#include "ndq/model.hpp"

namespace ndq {

inline constexpr uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  TrainConfig config;
  ParamStore params;
  int64_t env_steps = 0;
};

// "ckpt_<env_steps>.bin"
std::string checkpoint_name(int64_t env_steps);

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
// Throws std::runtime_error on I/O, format or shape errors.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace ndq

#endif  // NDQ_CHECKPOINT_HPP_
