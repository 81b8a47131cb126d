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

#ifndef NDQ_COMM_HPP_
#define NDQ_COMM_HPP_

// Message sampling, bitwise cut-off, the mask wire format, inbox layout and
// drop accounting.
//
// Layout conventions shared with the model and the trainer:
//   * sender i's means row holds (n-1) blocks of L bits, one per recipient
//     j != i in ascending id order (message_slot);
//   * recipient j's inbox holds (n-1) blocks of L values, one per sender
//     i != j in ascending id order (inbox_slot).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ndq/autodiff.hpp"

namespace ndq {

inline int message_slot(int sender, int recipient) {
  return recipient < sender ? recipient : recipient - 1;
}
inline int inbox_slot(int recipient, int sender) {
  return sender < recipient ? sender : sender - 1;
}

struct Message {
  int sender = 0;
  int recipient = 0;
  std::vector<double> values;  // zero wherever mask is false
  std::vector<bool> mask;      // true = bit sent
};

using Inbox = std::vector<double>;

enum class CutMode { kNone, kThreshold, kDropRate };
enum class RateScope { kByBit, kByMessage };

struct CutPolicy {
  CutMode mode = CutMode::kNone;
  double threshold = 0.0;         // on |mu|; kThreshold
  double target_drop_rate = 0.0;  // kDropRate
  RateScope scope = RateScope::kByBit;
  // Filled in by calibration for kDropRate.
  std::optional<double> calibrated_threshold;

  static CutPolicy none() { return {}; }
  static CutPolicy at_threshold(double threshold);
  static CutPolicy at_drop_rate(double rate, RateScope scope);

  // Threshold actually applied; throws if a drop-rate policy is uncalibrated.
  double effective_threshold() const;
  std::string describe() const;
};

std::string to_string(RateScope scope);
RateScope parse_rate_scope(const std::string& s);
// "none", "threshold:<x>", "rate:<r>[:bits|:messages]".
CutPolicy parse_cut_policy(const std::string& s);

// values = means + noise, bit by bit.
std::vector<double> sample_message(std::span<const double> means,
                                   std::span<const double> noise);
std::vector<double> sample_message(std::span<const double> means,
                                   std::mt19937_64& rng);

// Bit b is sent iff |means[b]| >= effective threshold; dropped bits are
// zero-filled. CutMode::kNone sends everything.
Message cut(std::span<const double> means, std::span<const double> values,
            const CutPolicy& policy, int sender = 0, int recipient = 1);

// Empirical quantile of |mu| samples at `target_drop_rate`: the returned
// threshold drops round(rate * N) of the samples. When that is every sample
// the threshold is infinite, so magnitudes never seen in calibration are cut
// too. For kByMessage the samples must be per-message max |mu| values (see
// append_calibration_magnitudes).
double calibrate_threshold(std::span<const double> magnitude_samples,
                           double target_drop_rate, RateScope scope);

// Pools |mu| from a means record shaped [n][(n-1)*L]: every bit for kByBit,
// the per-message maximum for kByMessage.
void append_calibration_magnitudes(const Matrix& means, int msg_len,
                                   RateScope scope, std::vector<double>& out);

// Bit b of the integer is mask[b]; L <= 62.
uint64_t encode_mask(std::span<const bool> mask);
uint64_t encode_mask(const std::vector<bool>& mask);
std::vector<bool> decode_mask(uint64_t bits, int msg_len);

// Concatenates the messages addressed to `recipient` in ascending sender
// order. Exactly one message per other agent is required.
Inbox assemble_inbox(std::span<const Message> messages, int recipient,
                     int n_agents, int msg_len);

// Record of one (episode, t, sender, recipient) exchange.
struct MessageRecord {
  int episode = 0;
  int t = 0;
  int sender = 0;
  int recipient = 0;
  std::vector<double> means;
  uint64_t mask = 0;
  std::vector<double> values;
};

struct DropStats {
  double by_message_rate = 0.0;
  double by_bit_rate = 0.0;
  int64_t bits_sent_total = 0;
  int64_t messages_total = 0;
  int64_t bits_total = 0;

  void finalize_rates(int64_t messages_dropped, int64_t bits_dropped);
};

DropStats drop_stats(std::span<const MessageRecord> records, int msg_len);

// Accumulates drop counts without materialising records.
class DropCounter {
 public:
  void count(const std::vector<bool>& mask);
  void merge(const DropCounter& other);
  DropStats stats() const;

 private:
  int64_t messages_ = 0;
  int64_t messages_dropped_ = 0;
  int64_t bits_ = 0;
  int64_t bits_dropped_ = 0;
};

// CSV with header "episode,t,i,j,mu_0..mu_{L-1},mask,v_0..v_{L-1}".
void write_message_csv_header(std::ostream& os, int msg_len);
void write_message_csv_row(std::ostream& os, const MessageRecord& r);
std::vector<MessageRecord> read_message_csv(std::istream& is);

}  // namespace ndq

#endif  // NDQ_COMM_HPP_
