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

#ifndef NDQ_AUTODIFF_HPP_
#define NDQ_AUTODIFF_HPP_

// Minimal reverse-mode automatic differentiation over dense row-major
// matrices. Rows are batch items throughout the library; every op below is
// written with that convention in mind (biases broadcast over rows, softmax
// is row-wise, and so on).

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace ndq {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;

namespace ad {

class Tape;

// Handle to a node on a tape. Cheap to copy; only valid while the tape lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  bool requires_grad() const;

  Tape* tape() const { return tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

// A Wengert list. With recording disabled the tape only evaluates values,
// which is what rollouts and target-network passes use.
class Tape {
 public:
  explicit Tape(bool record = true) : record_(record) { nodes_.reserve(256); }

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return record_; }

  Var constant(Matrix value);
  // A differentiable leaf (parameter). Gradients accumulate into grad(v).
  Var leaf(const Matrix& value);

  const Matrix& value(const Var& v) const { return nodes_[v.id_].value; }
  bool requires_grad(const Var& v) const {
    return nodes_[v.id_].requires_grad;
  }

  // Seeds d(out)/d(out) = 1; `out` must be 1x1.
  void backward(const Var& out);

  // Gradient of the last backward() output w.r.t. v. Zero matrix if v did not
  // participate.
  Matrix grad(const Var& v) const;

  size_t size() const { return nodes_.size(); }

  // Used by op implementations.
  using Backward = std::function<void(Tape&, int self)>;
  Var push(Matrix value, bool requires_grad, Backward backward);
  Matrix& grad_ref(int id);
  const Matrix& grad_of(int id) const { return nodes_[id].grad; }
  const Matrix& value_of(int id) const { return nodes_[id].value; }
  bool needs(int id) const { return nodes_[id].requires_grad; }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    Backward backward;
  };

  bool record_;
  std::vector<Node> nodes_;
};

// Detaches v: same value, no gradient path.
Var stop_gradient(const Var& v);

Var matmul(const Var& a, const Var& b);
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
// a (R x C) + row (1 x C), broadcast over rows.
Var add_row(const Var& a, const Var& row);
Var scale(const Var& a, double s);
Var add_scalar(const Var& a, double s);
Var linear(const Var& x, const Var& weight, const Var& bias);

Var sigmoid(const Var& a);
Var tanh(const Var& a);
Var relu(const Var& a);
Var elu(const Var& a);
Var abs(const Var& a);
Var square(const Var& a);

Var hcat(std::span<const Var> parts);
inline Var hcat(std::initializer_list<Var> parts) {
  return hcat(std::span<const Var>(parts.begin(), parts.size()));
}

// out.flat[k] = a.flat[index[k]], or 0 where index[k] < 0. Covers slicing,
// reshaping and the message-inbox layout.
Var gather(const Var& a, Eigen::Index out_rows, Eigen::Index out_cols,
           std::span<const int> index);

// Row-wise log-softmax.
Var log_softmax(const Var& a);
// out(r, 0) = a(r, index[r]).
Var pick(const Var& a, std::span<const int> index);
// Sum of all entries, as a 1x1.
Var sum(const Var& a);
// Row sums, R x 1.
Var row_sum(const Var& a);
// out(r, h) = sum_i x(r, i) * w(r, i * H + h) with H = w.cols() / x.cols().
Var row_bilinear(const Var& x, const Var& w);

}  // namespace ad
}  // namespace ndq

#endif  // NDQ_AUTODIFF_HPP_
