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

#include "wsdms/autodiff.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsdms/errors.h"

namespace wsdms::ad {
namespace {

Tape& TapeOf(Var a) {
  if (!a.valid()) throw Error("operation on an unbound Var");
  return *a.tape();
}

Tape& TapeOf(Var a, Var b) {
  if (!a.valid() || !b.valid()) throw Error("operation on an unbound Var");
  if (a.tape() != b.tape()) throw Error("operands live on different tapes");
  return *a.tape();
}

void RequireSameShape(Var a, Var b, const char* op) {
  if (!a.value().SameShape(b.value())) {
    throw ShapeError(std::string(op) + ": shapes " + a.value().ShapeString() +
                     " and " + b.value().ShapeString());
  }
}

void RequireMatrix(Var a, const char* op) {
  if (a.value().rank() != 2) {
    throw ShapeError(std::string(op) + ": expected a matrix, got " +
                     a.value().ShapeString());
  }
}

void RequireVector(Var a, const char* op) {
  if (a.value().rank() != 1) {
    throw ShapeError(std::string(op) + ": expected a vector, got " +
                     a.value().ShapeString());
  }
}

// Applies an elementwise function whose derivative is expressed through the
// input x and output y.
template <typename F, typename DF>
Var Elementwise(Var a, F f, DF df) {
  Tape& tape = TapeOf(a);
  Tensor out = a.value();
  for (double& v : out.values()) v = f(v);
  const int ia = a.id();
  const int io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), a.requires_grad(), [ia, io, df](Tape& t) {
    const auto& x = t.value(ia).values();
    const auto& y = t.value(io).values();
    const auto& g = t.mutable_grad(io);
    auto& ga = t.mutable_grad(ia);
    for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g[i] * df(x[i], y[i]);
  });
}

}  // namespace

const Tensor& Var::value() const { return tape_->value(id_); }

double Var::scalar() const {
  const Tensor& v = value();
  if (v.size() != 1) {
    throw ShapeError("scalar() on tensor of shape " + v.ShapeString());
  }
  return v[0];
}

bool Var::requires_grad() const { return tape_->requires_grad(id_); }

Var Tape::Constant(Tensor value) { return Record(std::move(value), false, {}); }

Var Tape::Input(Tensor value) { return Record(std::move(value), true, {}); }

Var Tape::Parameter(const ParamStore& store, const std::string& name) {
  auto it = parameters_.find(name);
  if (it != parameters_.end()) return Var(this, it->second);
  Var v = Input(store.Get(name));
  parameters_.emplace(name, v.id());
  return v;
}

Var Tape::Record(Tensor value, bool requires_grad, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  if (requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

void Tape::Backward(Var output) {
  if (output.tape() != this) throw Error("Backward on a foreign Var");
  if (output.size() != 1) {
    throw ShapeError("Backward needs a scalar output, got " +
                     output.value().ShapeString());
  }
  for (Node& node : nodes_) {
    if (node.requires_grad) node.grad.assign(node.value.size(), 0.0);
  }
  if (!nodes_[output.id()].requires_grad) return;
  nodes_[output.id()].grad[0] = 1.0;
  for (int i = output.id(); i >= 0; --i) {
    if (nodes_[i].backward) nodes_[i].backward(*this);
  }
}

Gradients Tape::ParameterGradients() const {
  Gradients grads;
  for (const auto& [name, id] : parameters_) {
    const Node& node = nodes_[id];
    Tensor g(node.value.shape());
    if (!node.grad.empty()) {
      std::copy(node.grad.begin(), node.grad.end(), g.values().begin());
    }
    grads.emplace(name, std::move(g));
  }
  return grads;
}

Var Add(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  RequireSameShape(a, b, "Add");
  Tensor out = a.value();
  auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), a.requires_grad() || b.requires_grad(),
                     [ia, ib, io](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       if (t.requires_grad(ia)) {
                         auto& ga = t.mutable_grad(ia);
                         for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
                       }
                       if (t.requires_grad(ib)) {
                         auto& gb = t.mutable_grad(ib);
                         for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
                       }
                     });
}

Var Sub(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  RequireSameShape(a, b, "Sub");
  Tensor out = a.value();
  auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), a.requires_grad() || b.requires_grad(),
                     [ia, ib, io](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       if (t.requires_grad(ia)) {
                         auto& ga = t.mutable_grad(ia);
                         for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
                       }
                       if (t.requires_grad(ib)) {
                         auto& gb = t.mutable_grad(ib);
                         for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
                       }
                     });
}

Var Mul(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  RequireSameShape(a, b, "Mul");
  Tensor out = a.value();
  auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(
      std::move(out), a.requires_grad() || b.requires_grad(),
      [ia, ib, io](Tape& t) {
        const auto& g = t.mutable_grad(io);
        const auto av = t.value(ia).values();
        const auto bv = t.value(ib).values();
        if (t.requires_grad(ia)) {
          auto& ga = t.mutable_grad(ia);
          for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
        }
        if (t.requires_grad(ib)) {
          auto& gb = t.mutable_grad(ib);
          for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
        }
      });
}

Var Scale(Var a, double c) {
  return Elementwise(
      a, [c](double x) { return c * x; },
      [c](double, double) { return c; });
}

Var AddConstant(Var a, double c) {
  return Elementwise(
      a, [c](double x) { return x + c; }, [](double, double) { return 1.0; });
}

Var AddBroadcast(Var x, Var b) {
  Tape& tape = TapeOf(x, b);
  const Tensor& xv = x.value();
  const std::size_t bn = b.size();
  std::size_t period = 0;  // index into b is i % period, or 0 when bn == 1
  if (bn == 1) {
    period = 1;
  } else if (bn == xv.size()) {
    period = bn;
  } else if (xv.rank() == 2 && bn == xv.cols()) {
    period = bn;
  } else {
    throw ShapeError("AddBroadcast: cannot broadcast " +
                     b.value().ShapeString() + " onto " + xv.ShapeString());
  }
  Tensor out = xv;
  auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i % period];
  const int ix = x.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), x.requires_grad() || b.requires_grad(),
                     [ix, ib, io, period](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       if (t.requires_grad(ix)) {
                         auto& gx = t.mutable_grad(ix);
                         for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
                       }
                       if (t.requires_grad(ib)) {
                         auto& gb = t.mutable_grad(ib);
                         for (std::size_t i = 0; i < g.size(); ++i) {
                           gb[i % period] += g[i];
                         }
                       }
                     });
}

Var ScalarTimes(Var s, Var x) {
  Tape& tape = TapeOf(s, x);
  const double c = s.scalar();
  Tensor out = x.value();
  for (double& v : out.values()) v *= c;
  const int is = s.id(), ix = x.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), s.requires_grad() || x.requires_grad(),
                     [is, ix, io](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       const auto xv = t.value(ix).values();
                       const double c = t.value(is)[0];
                       if (t.requires_grad(is)) {
                         double acc = 0.0;
                         for (std::size_t i = 0; i < g.size(); ++i) {
                           acc += g[i] * xv[i];
                         }
                         t.mutable_grad(is)[0] += acc;
                       }
                       if (t.requires_grad(ix)) {
                         auto& gx = t.mutable_grad(ix);
                         for (std::size_t i = 0; i < g.size(); ++i) {
                           gx[i] += c * g[i];
                         }
                       }
                     });
}

Var Exp(Var a) {
  return Elementwise(
      a, [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Var Log(Var a) {
  for (double v : a.values()) {
    if (!(v > 0.0)) throw DegenerateInputError("log of a non-positive value");
  }
  return Elementwise(
      a, [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Var Tanh(Var a) {
  return Elementwise(
      a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Sum(Var a) {
  Tape& tape = TapeOf(a);
  double total = 0.0;
  for (double v : a.values()) total += v;
  const int ia = a.id(), io = static_cast<int>(tape.size());
  return tape.Record(Tensor::Scalar(total), a.requires_grad(),
                     [ia, io](Tape& t) {
                       const double g = t.mutable_grad(io)[0];
                       for (double& v : t.mutable_grad(ia)) v += g;
                     });
}

Var Mean(Var a) {
  if (a.size() == 0) throw DegenerateInputError("mean of an empty tensor");
  return Scale(Sum(a), 1.0 / static_cast<double>(a.size()));
}

Var Dot(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  if (a.size() != b.size()) {
    throw ShapeError("Dot: lengths " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  const double value = wsdms::Dot(a.values(), b.values());
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(
      Tensor::Scalar(value), a.requires_grad() || b.requires_grad(),
      [ia, ib, io](Tape& t) {
        const double g = t.mutable_grad(io)[0];
        const auto av = t.value(ia).values();
        const auto bv = t.value(ib).values();
        if (t.requires_grad(ia)) {
          auto& ga = t.mutable_grad(ia);
          for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g * bv[i];
        }
        if (t.requires_grad(ib)) {
          auto& gb = t.mutable_grad(ib);
          for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g * av[i];
        }
      });
}

Var SquaredNorm(Var a) {
  Tape& tape = TapeOf(a);
  const double value = wsdms::Dot(a.values(), a.values());
  const int ia = a.id(), io = static_cast<int>(tape.size());
  return tape.Record(Tensor::Scalar(value), a.requires_grad(),
                     [ia, io](Tape& t) {
                       const double g = t.mutable_grad(io)[0];
                       const auto av = t.value(ia).values();
                       auto& ga = t.mutable_grad(ia);
                       for (std::size_t i = 0; i < ga.size(); ++i) {
                         ga[i] += 2.0 * g * av[i];
                       }
                     });
}

Var CosineSimilarity(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  if (a.size() != b.size() || a.size() == 0) {
    throw ShapeError("CosineSimilarity: lengths " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  }
  const double na = Norm(a.values());
  const double nb = Norm(b.values());
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw DegenerateInputError("cosine similarity of a zero-norm vector");
  }
  const double cos = wsdms::Dot(a.values(), b.values()) / (na * nb);
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  // d cos / d a = b / (|a||b|) - cos * a / |a|^2, symmetrically for b.
  return tape.Record(
      Tensor::Scalar(cos), a.requires_grad() || b.requires_grad(),
      [ia, ib, io, na, nb, cos](Tape& t) {
        const double g = t.mutable_grad(io)[0];
        const auto av = t.value(ia).values();
        const auto bv = t.value(ib).values();
        if (t.requires_grad(ia)) {
          auto& ga = t.mutable_grad(ia);
          for (std::size_t i = 0; i < ga.size(); ++i) {
            ga[i] += g * (bv[i] / (na * nb) - cos * av[i] / (na * na));
          }
        }
        if (t.requires_grad(ib)) {
          auto& gb = t.mutable_grad(ib);
          for (std::size_t i = 0; i < gb.size(); ++i) {
            gb[i] += g * (av[i] / (na * nb) - cos * bv[i] / (nb * nb));
          }
        }
      });
}

Var MatVec(Var w, Var x) {
  Tape& tape = TapeOf(w, x);
  RequireMatrix(w, "MatVec");
  RequireVector(x, "MatVec");
  const Tensor& wv = w.value();
  const std::size_t rows = wv.rows(), cols = wv.cols();
  if (x.size() != cols) {
    throw ShapeError("MatVec: matrix " + wv.ShapeString() + " times length " +
                     std::to_string(x.size()));
  }
  auto xv = x.values();
  Tensor out({rows});
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = wv.values().data() + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * xv[c];
    out[r] = acc;
  }
  const int iw = w.id(), ix = x.id(), io = static_cast<int>(tape.size());
  return tape.Record(
      std::move(out), w.requires_grad() || x.requires_grad(),
      [iw, ix, io, rows, cols](Tape& t) {
        const auto& g = t.mutable_grad(io);
        const auto wv = t.value(iw).values();
        const auto xv = t.value(ix).values();
        if (t.requires_grad(iw)) {
          auto& gw = t.mutable_grad(iw);
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
              gw[r * cols + c] += g[r] * xv[c];
            }
          }
        }
        if (t.requires_grad(ix)) {
          auto& gx = t.mutable_grad(ix);
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
              gx[c] += g[r] * wv[r * cols + c];
            }
          }
        }
      });
}

Var MatMul(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  RequireMatrix(a, "MatMul");
  RequireMatrix(b, "MatMul");
  const std::size_t n = a.value().rows(), k = a.value().cols();
  const std::size_t m = b.value().cols();
  if (b.value().rows() != k) {
    throw ShapeError("MatMul: " + a.value().ShapeString() + " times " +
                     b.value().ShapeString());
  }
  auto av = a.values();
  auto bv = b.values();
  Tensor out({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av[i * k + p];
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] += aip * bv[p * m + j];
    }
  }
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(
      std::move(out), a.requires_grad() || b.requires_grad(),
      [ia, ib, io, n, k, m](Tape& t) {
        const auto& g = t.mutable_grad(io);
        const auto av = t.value(ia).values();
        const auto bv = t.value(ib).values();
        if (t.requires_grad(ia)) {
          auto& ga = t.mutable_grad(ia);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t p = 0; p < k; ++p) {
              double acc = 0.0;
              for (std::size_t j = 0; j < m; ++j) {
                acc += g[i * m + j] * bv[p * m + j];
              }
              ga[i * k + p] += acc;
            }
          }
        }
        if (t.requires_grad(ib)) {
          auto& gb = t.mutable_grad(ib);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t p = 0; p < k; ++p) {
              const double aip = av[i * k + p];
              for (std::size_t j = 0; j < m; ++j) {
                gb[p * m + j] += aip * g[i * m + j];
              }
            }
          }
        }
      });
}

Var MatMulTransposed(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  RequireMatrix(a, "MatMulTransposed");
  RequireMatrix(b, "MatMulTransposed");
  const std::size_t n = a.value().rows(), k = a.value().cols();
  const std::size_t m = b.value().rows();
  if (b.value().cols() != k) {
    throw ShapeError("MatMulTransposed: " + a.value().ShapeString() +
                     " times transpose of " + b.value().ShapeString());
  }
  auto av = a.values();
  auto bv = b.values();
  Tensor out({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += av[i * k + p] * bv[j * k + p];
      out[i * m + j] = acc;
    }
  }
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(
      std::move(out), a.requires_grad() || b.requires_grad(),
      [ia, ib, io, n, k, m](Tape& t) {
        const auto& g = t.mutable_grad(io);
        const auto av = t.value(ia).values();
        const auto bv = t.value(ib).values();
        const bool need_a = t.requires_grad(ia);
        const bool need_b = t.requires_grad(ib);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            const double gij = g[i * m + j];
            if (gij == 0.0) continue;
            if (need_a) {
              auto& ga = t.mutable_grad(ia);
              for (std::size_t p = 0; p < k; ++p) ga[i * k + p] += gij * bv[j * k + p];
            }
            if (need_b) {
              auto& gb = t.mutable_grad(ib);
              for (std::size_t p = 0; p < k; ++p) gb[j * k + p] += gij * av[i * k + p];
            }
          }
        }
      });
}

namespace {

void SoftmaxInPlace(std::span<double> x) {
  double max = -INFINITY;
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw DegenerateInputError("softmax input is not finite");
    }
    max = std::max(max, v);
  }
  double total = 0.0;
  for (double& v : x) {
    v = std::exp(v - max);
    total += v;
  }
  for (double& v : x) v /= total;
}

// Row-wise softmax backward: dx = y * (g - <g, y>).
Var SoftmaxImpl(Var x, std::size_t rows, std::size_t cols) {
  Tape& tape = TapeOf(x);
  Tensor out = x.value();
  for (std::size_t r = 0; r < rows; ++r) {
    SoftmaxInPlace(out.values().subspan(r * cols, cols));
  }
  const int ix = x.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), x.requires_grad(),
                     [ix, io, rows, cols](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       const auto y = t.value(io).values();
                       auto& gx = t.mutable_grad(ix);
                       for (std::size_t r = 0; r < rows; ++r) {
                         const std::size_t base = r * cols;
                         double inner = 0.0;
                         for (std::size_t c = 0; c < cols; ++c) {
                           inner += g[base + c] * y[base + c];
                         }
                         for (std::size_t c = 0; c < cols; ++c) {
                           gx[base + c] += y[base + c] * (g[base + c] - inner);
                         }
                       }
                     });
}

}  // namespace

Var Softmax(Var x) {
  RequireVector(x, "Softmax");
  if (x.size() == 0) throw DegenerateInputError("softmax of an empty vector");
  return SoftmaxImpl(x, 1, x.size());
}

Var SoftmaxRows(Var x) {
  RequireMatrix(x, "SoftmaxRows");
  if (x.size() == 0) throw DegenerateInputError("softmax of an empty matrix");
  return SoftmaxImpl(x, x.value().rows(), x.value().cols());
}

Var Concat(Var a, Var b) {
  Tape& tape = TapeOf(a, b);
  const std::size_t na = a.size(), nb = b.size();
  std::vector<double> values(a.values().begin(), a.values().end());
  values.insert(values.end(), b.values().begin(), b.values().end());
  const int ia = a.id(), ib = b.id(), io = static_cast<int>(tape.size());
  return tape.Record(Tensor::Vector(std::move(values)),
                     a.requires_grad() || b.requires_grad(),
                     [ia, ib, io, na, nb](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       if (t.requires_grad(ia)) {
                         auto& ga = t.mutable_grad(ia);
                         for (std::size_t i = 0; i < na; ++i) ga[i] += g[i];
                       }
                       if (t.requires_grad(ib)) {
                         auto& gb = t.mutable_grad(ib);
                         for (std::size_t i = 0; i < nb; ++i) gb[i] += g[na + i];
                       }
                     });
}

Var Stack(std::span<const Var> rows) {
  if (rows.empty()) throw ShapeError("Stack of zero rows");
  Tape& tape = TapeOf(rows[0]);
  const std::size_t cols = rows[0].size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  std::vector<int> ids;
  bool needs_grad = false;
  for (const Var& r : rows) {
    if (r.tape() != &tape) throw Error("Stack: rows live on different tapes");
    if (r.size() != cols) throw ShapeError("Stack: ragged rows");
    values.insert(values.end(), r.values().begin(), r.values().end());
    ids.push_back(r.id());
    needs_grad = needs_grad || r.requires_grad();
  }
  const int io = static_cast<int>(tape.size());
  return tape.Record(Tensor::Matrix(rows.size(), cols, std::move(values)),
                     needs_grad, [ids, io, cols](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       for (std::size_t r = 0; r < ids.size(); ++r) {
                         if (!t.requires_grad(ids[r])) continue;
                         auto& gr = t.mutable_grad(ids[r]);
                         for (std::size_t c = 0; c < cols; ++c) {
                           gr[c] += g[r * cols + c];
                         }
                       }
                     });
}

Var Row(Var matrix, std::size_t r) {
  Tape& tape = TapeOf(matrix);
  RequireMatrix(matrix, "Row");
  const std::size_t cols = matrix.value().cols();
  if (r >= matrix.value().rows()) throw ShapeError("Row index out of range");
  auto src = matrix.values().subspan(r * cols, cols);
  const int im = matrix.id(), io = static_cast<int>(tape.size());
  return tape.Record(Tensor::Vector({src.begin(), src.end()}),
                     matrix.requires_grad(), [im, io, r, cols](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       auto& gm = t.mutable_grad(im);
                       for (std::size_t c = 0; c < cols; ++c) {
                         gm[r * cols + c] += g[c];
                       }
                     });
}

Var Select(Var x, std::size_t i) {
  Tape& tape = TapeOf(x);
  if (i >= x.size()) throw ShapeError("Select index out of range");
  const int ix = x.id(), io = static_cast<int>(tape.size());
  return tape.Record(Tensor::Scalar(x.values()[i]), x.requires_grad(),
                     [ix, io, i](Tape& t) {
                       t.mutable_grad(ix)[i] += t.mutable_grad(io)[0];
                     });
}

Var ColumnSlice(Var matrix, std::size_t begin, std::size_t count) {
  Tape& tape = TapeOf(matrix);
  RequireMatrix(matrix, "ColumnSlice");
  const std::size_t rows = matrix.value().rows();
  const std::size_t cols = matrix.value().cols();
  if (begin + count > cols) throw ShapeError("ColumnSlice out of range");
  Tensor out({rows, count});
  auto src = matrix.values();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < count; ++c) {
      out[r * count + c] = src[r * cols + begin + c];
    }
  }
  const int im = matrix.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), matrix.requires_grad(),
                     [im, io, rows, cols, begin, count](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       auto& gm = t.mutable_grad(im);
                       for (std::size_t r = 0; r < rows; ++r) {
                         for (std::size_t c = 0; c < count; ++c) {
                           gm[r * cols + begin + c] += g[r * count + c];
                         }
                       }
                     });
}

Var ConcatColumns(std::span<const Var> blocks) {
  if (blocks.empty()) throw ShapeError("ConcatColumns of zero blocks");
  if (blocks.size() == 1) return blocks[0];
  Tape& tape = TapeOf(blocks[0]);
  const std::size_t rows = blocks[0].value().rows();
  std::vector<int> ids;
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  bool needs_grad = false;
  for (const Var& b : blocks) {
    RequireMatrix(b, "ConcatColumns");
    if (b.value().rows() != rows) throw ShapeError("ConcatColumns: row count");
    ids.push_back(b.id());
    widths.push_back(b.value().cols());
    total += b.value().cols();
    needs_grad = needs_grad || b.requires_grad();
  }
  Tensor out({rows, total});
  std::size_t offset = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    auto src = blocks[k].values();
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < widths[k]; ++c) {
        out[r * total + offset + c] = src[r * widths[k] + c];
      }
    }
    offset += widths[k];
  }
  const int io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), needs_grad,
                     [ids, widths, io, rows, total](Tape& t) {
                       const auto& g = t.mutable_grad(io);
                       std::size_t offset = 0;
                       for (std::size_t k = 0; k < ids.size(); ++k) {
                         if (t.requires_grad(ids[k])) {
                           auto& gk = t.mutable_grad(ids[k]);
                           for (std::size_t r = 0; r < rows; ++r) {
                             for (std::size_t c = 0; c < widths[k]; ++c) {
                               gk[r * widths[k] + c] += g[r * total + offset + c];
                             }
                           }
                         }
                         offset += widths[k];
                       }
                     });
}

Var WeightedSum(std::span<const Var> vectors, Var weights) {
  if (vectors.empty()) throw ShapeError("WeightedSum of zero vectors");
  Tape& tape = TapeOf(vectors[0], weights);
  if (weights.size() != vectors.size()) {
    throw ShapeError("WeightedSum: " + std::to_string(weights.size()) +
                     " weights for " + std::to_string(vectors.size()) +
                     " vectors");
  }
  const std::size_t d = vectors[0].size();
  std::vector<int> ids;
  bool needs_grad = weights.requires_grad();
  Tensor out({d});
  auto w = weights.values();
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const Var& v = vectors[k];
    if (v.tape() != &tape) throw Error("WeightedSum: mixed tapes");
    if (v.size() != d) throw ShapeError("WeightedSum: ragged vectors");
    auto src = v.values();
    for (std::size_t i = 0; i < d; ++i) out[i] += w[k] * src[i];
    ids.push_back(v.id());
    needs_grad = needs_grad || v.requires_grad();
  }
  const int iw = weights.id(), io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), needs_grad, [ids, iw, io, d](Tape& t) {
    const auto& g = t.mutable_grad(io);
    const auto w = t.value(iw).values();
    const bool need_w = t.requires_grad(iw);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const auto src = t.value(ids[k]).values();
      if (need_w) {
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) acc += g[i] * src[i];
        t.mutable_grad(iw)[k] += acc;
      }
      if (t.requires_grad(ids[k])) {
        auto& gk = t.mutable_grad(ids[k]);
        for (std::size_t i = 0; i < d; ++i) gk[i] += w[k] * g[i];
      }
    }
  });
}

Var MeanOf(std::span<const Var> vectors) {
  if (vectors.empty()) throw ShapeError("MeanOf zero vectors");
  Tape& tape = TapeOf(vectors[0]);
  const std::size_t d = vectors[0].size();
  const double inv = 1.0 / static_cast<double>(vectors.size());
  std::vector<int> ids;
  bool needs_grad = false;
  Tensor out({d});
  for (const Var& v : vectors) {
    if (v.tape() != &tape) throw Error("MeanOf: mixed tapes");
    if (v.size() != d) throw ShapeError("MeanOf: ragged vectors");
    auto src = v.values();
    for (std::size_t i = 0; i < d; ++i) out[i] += inv * src[i];
    ids.push_back(v.id());
    needs_grad = needs_grad || v.requires_grad();
  }
  const int io = static_cast<int>(tape.size());
  return tape.Record(std::move(out), needs_grad, [ids, io, d, inv](Tape& t) {
    const auto& g = t.mutable_grad(io);
    for (int id : ids) {
      if (!t.requires_grad(id)) continue;
      auto& gk = t.mutable_grad(id);
      for (std::size_t i = 0; i < d; ++i) gk[i] += inv * g[i];
    }
  });
}

}  // namespace wsdms::ad
