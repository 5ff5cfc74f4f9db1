// Copyright 2026 The WSDMS Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reverse-mode differentiation over a tape of tensor operations.
//
// A Tape records every intermediate Tensor produced during a forward pass
// together with a closure that propagates the adjoint of that node to its
// inputs. Nodes that do not depend on any differentiable input carry no
// closure and are skipped by Backward(). A tape is single-use: build it,
// call Backward() once on a scalar node, read gradients, discard.

#ifndef WSDMS_AUTODIFF_H_
#define WSDMS_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wsdms/param_store.h"
#include "wsdms/tensor.h"

namespace wsdms::ad {

class Tape;

// Handle to a tape node.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  bool valid() const { return tape_ != nullptr; }
  Tape* tape() const { return tape_; }
  int id() const { return id_; }

  const Tensor& value() const;
  std::span<const double> values() const { return value().values(); }
  double scalar() const;
  std::size_t size() const { return value().size(); }
  bool requires_grad() const;

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

class Tape {
 public:
  using BackwardFn = std::function<void(Tape&)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var Constant(Tensor value);
  // Differentiable input whose gradient is read back with grad().
  Var Input(Tensor value);
  // Leaf bound to a named parameter. Repeated calls return the same node.
  Var Parameter(const ParamStore& store, const std::string& name);

  // Records an operation result. `backward` is dropped when no input
  // requires a gradient.
  Var Record(Tensor value, bool requires_grad, BackwardFn backward);

  // Seeds d(output)/d(output) = 1 and sweeps the tape in reverse.
  void Backward(Var output);

  const Tensor& value(int id) const { return nodes_[id].value; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }
  // Adjoint buffer of a node; empty until Backward() has run.
  std::span<const double> grad(Var v) const { return nodes_[v.id()].grad; }
  std::vector<double>& mutable_grad(int id) { return nodes_[id].grad; }

  Gradients ParameterGradients() const;
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    std::vector<double> grad;
    bool requires_grad = false;
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
  std::map<std::string, int> parameters_;
};

// Elementwise arithmetic on equal-shaped operands.
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
Var Scale(Var a, double c);
Var AddConstant(Var a, double c);

// x + b where b is a single value, a vector matching x, or a vector matching
// the columns of matrix x (added to every row).
Var AddBroadcast(Var x, Var b);

// s * x for a scalar node s.
Var ScalarTimes(Var s, Var x);

Var Exp(Var a);
Var Log(Var a);
Var Tanh(Var a);

Var Sum(Var a);
Var Mean(Var a);
Var Dot(Var a, Var b);
Var SquaredNorm(Var a);
// Differentiable cosine similarity; throws DegenerateInputError on a
// zero-norm operand.
Var CosineSimilarity(Var a, Var b);

// W [r x c] times x [c] -> [r].
Var MatVec(Var w, Var x);
// A [r x k] times B [k x c] -> [r x c].
Var MatMul(Var a, Var b);
// A [r x k] times B^T for B [c x k] -> [r x c].
Var MatMulTransposed(Var a, Var b);

// Max-subtracted softmax of a vector, or of every row of a matrix.
Var Softmax(Var x);
Var SoftmaxRows(Var x);

Var Concat(Var a, Var b);
// Vectors of equal length stacked as matrix rows.
Var Stack(std::span<const Var> rows);
Var Row(Var matrix, std::size_t r);
Var Select(Var x, std::size_t i);
// Columns [begin, begin + count) of a matrix.
Var ColumnSlice(Var matrix, std::size_t begin, std::size_t count);
// Matrices with equal row counts joined side by side.
Var ConcatColumns(std::span<const Var> blocks);
// sum_i weights[i] * vectors[i].
Var WeightedSum(std::span<const Var> vectors, Var weights);
// Elementwise mean of equal-length vectors.
Var MeanOf(std::span<const Var> vectors);

}  // namespace wsdms::ad

#endif  // WSDMS_AUTODIFF_H_
