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

// Randomized gradient checks for every tape operation, plus softmax and
// kernel invariants.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "wsdms/autodiff.h"
#include "wsdms/gradient_check.h"
#include "wsdms/numerics.h"
#include "wsdms/random.h"

namespace wsdms {
namespace {

constexpr int kSeeds = 100;

using Vars = std::map<std::string, ad::Var>;

struct OpCase {
  std::string name;
  // Parameter shapes keyed by name; values are drawn per seed.
  std::map<std::string, std::vector<std::size_t>> shapes;
  std::function<ad::Var(ad::Tape&, const Vars&)> build;
  bool positive = false;  // draw strictly positive values (for Log)
};

Tensor Draw(Rng& rng, const std::vector<std::size_t>& shape, bool positive) {
  std::vector<double> v = rng.NormalVector(ShapeSize(shape));
  if (positive) {
    for (double& x : v) x = 0.2 + std::abs(x);
  }
  return Tensor(shape, std::move(v));
}

// Contracts the op output with a fixed random tensor so the loss is scalar
// and every output coordinate carries gradient.
LossFn MakeLoss(const OpCase& op, const Tensor& probe) {
  return [op, probe](const ParamStore& params, Gradients* grads) {
    ad::Tape tape;
    Vars vars;
    for (const auto& [name, shape] : op.shapes) vars[name] = tape.Parameter(params, name);
    const ad::Var out = op.build(tape, vars);
    const ad::Var loss = ad::Sum(ad::Mul(out, tape.Constant(probe)));
    if (grads != nullptr) {
      tape.Backward(loss);
      *grads = tape.ParameterGradients();
    }
    return loss.scalar();
  };
}

std::vector<OpCase> Cases() {
  using V = std::vector<std::size_t>;
  std::vector<OpCase> c;
  c.push_back({"Add", {{"a", V{4}}, {"b", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Add(v.at("a"), v.at("b")); }});
  c.push_back({"Sub", {{"a", V{4}}, {"b", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Sub(v.at("a"), v.at("b")); }});
  c.push_back({"Mul", {{"a", V{2, 3}}, {"b", V{2, 3}}},
               [](ad::Tape&, const Vars& v) { return ad::Mul(v.at("a"), v.at("b")); }});
  c.push_back({"Scale", {{"a", V{3}}},
               [](ad::Tape&, const Vars& v) { return ad::Scale(v.at("a"), -1.7); }});
  c.push_back({"AddConstant", {{"a", V{3}}},
               [](ad::Tape&, const Vars& v) { return ad::AddConstant(v.at("a"), 0.4); }});
  c.push_back({"AddBroadcastScalar", {{"x", V{3}}, {"b", V{1}}},
               [](ad::Tape&, const Vars& v) { return ad::AddBroadcast(v.at("x"), v.at("b")); }});
  c.push_back({"AddBroadcastRows", {{"x", V{3, 2}}, {"b", V{2}}},
               [](ad::Tape&, const Vars& v) { return ad::AddBroadcast(v.at("x"), v.at("b")); }});
  c.push_back({"ScalarTimes", {{"s", V{1}}, {"x", V{3}}},
               [](ad::Tape&, const Vars& v) { return ad::ScalarTimes(v.at("s"), v.at("x")); }});
  c.push_back({"Exp", {{"a", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Exp(v.at("a")); }});
  c.push_back({"Log", {{"a", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Log(v.at("a")); }, true});
  c.push_back({"Tanh", {{"a", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Tanh(v.at("a")); }});
  c.push_back({"Sum", {{"a", V{2, 2}}},
               [](ad::Tape&, const Vars& v) { return ad::Sum(v.at("a")); }});
  c.push_back({"Mean", {{"a", V{5}}},
               [](ad::Tape&, const Vars& v) { return ad::Mean(v.at("a")); }});
  c.push_back({"Dot", {{"a", V{4}}, {"b", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Dot(v.at("a"), v.at("b")); }});
  c.push_back({"SquaredNorm", {{"a", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::SquaredNorm(v.at("a")); }});
  c.push_back({"CosineSimilarity", {{"a", V{4}}, {"b", V{4}}},
               [](ad::Tape&, const Vars& v) {
                 return ad::CosineSimilarity(v.at("a"), v.at("b"));
               }});
  c.push_back({"MatVec", {{"w", V{3, 4}}, {"x", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::MatVec(v.at("w"), v.at("x")); }});
  c.push_back({"MatMul", {{"a", V{2, 3}}, {"b", V{3, 4}}},
               [](ad::Tape&, const Vars& v) { return ad::MatMul(v.at("a"), v.at("b")); }});
  c.push_back({"MatMulTransposed", {{"a", V{2, 3}}, {"b", V{4, 3}}},
               [](ad::Tape&, const Vars& v) {
                 return ad::MatMulTransposed(v.at("a"), v.at("b"));
               }});
  c.push_back({"Softmax", {{"a", V{5}}},
               [](ad::Tape&, const Vars& v) { return ad::Softmax(v.at("a")); }});
  c.push_back({"SoftmaxRows", {{"a", V{3, 4}}},
               [](ad::Tape&, const Vars& v) { return ad::SoftmaxRows(v.at("a")); }});
  c.push_back({"Concat", {{"a", V{2}}, {"b", V{3}}},
               [](ad::Tape&, const Vars& v) { return ad::Concat(v.at("a"), v.at("b")); }});
  c.push_back({"Stack", {{"a", V{3}}, {"b", V{3}}},
               [](ad::Tape&, const Vars& v) {
                 const std::vector<ad::Var> rows = {v.at("a"), v.at("b"), v.at("a")};
                 return ad::Stack(rows);
               }});
  c.push_back({"Row", {{"a", V{3, 2}}},
               [](ad::Tape&, const Vars& v) { return ad::Row(v.at("a"), 1); }});
  c.push_back({"Select", {{"a", V{4}}},
               [](ad::Tape&, const Vars& v) { return ad::Select(v.at("a"), 2); }});
  c.push_back({"ColumnSlice", {{"a", V{3, 5}}},
               [](ad::Tape&, const Vars& v) { return ad::ColumnSlice(v.at("a"), 1, 3); }});
  c.push_back({"ConcatColumns", {{"a", V{2, 2}}, {"b", V{2, 3}}},
               [](ad::Tape&, const Vars& v) {
                 const std::vector<ad::Var> blocks = {v.at("a"), v.at("b")};
                 return ad::ConcatColumns(blocks);
               }});
  c.push_back({"WeightedSum", {{"a", V{3}}, {"b", V{3}}, {"w", V{2}}},
               [](ad::Tape&, const Vars& v) {
                 const std::vector<ad::Var> xs = {v.at("a"), v.at("b")};
                 return ad::WeightedSum(xs, v.at("w"));
               }});
  c.push_back({"MeanOf", {{"a", V{3}}, {"b", V{3}}},
               [](ad::Tape&, const Vars& v) {
                 const std::vector<ad::Var> xs = {v.at("a"), v.at("b")};
                 return ad::MeanOf(xs);
               }});
  // A composite that chains most of the nonlinearities used by the model.
  c.push_back({"Composite", {{"w", V{3, 4}}, {"x", V{4}}, {"t", V{3}}},
               [](ad::Tape&, const Vars& v) {
                 const ad::Var h = ad::Tanh(ad::MatVec(v.at("w"), v.at("x")));
                 const ad::Var p = ad::Softmax(ad::Mul(h, v.at("t")));
                 return ad::Scale(ad::Log(p), -1.0);
               }});
  return c;
}

class OpGradient : public ::testing::TestWithParam<OpCase> {};

TEST_P(OpGradient, MatchesCentralDifferencesAcrossSeeds) {
  const OpCase& op = GetParam();
  double worst = 0.0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed) + 1000);
    ParamStore params;
    for (const auto& [name, shape] : op.shapes) {
      params.Add(name, Draw(rng, shape, op.positive));
    }
    ad::Tape tape;
    Vars vars;
    for (const auto& [name, shape] : op.shapes) vars[name] = tape.Parameter(params, name);
    const Tensor& out = op.build(tape, vars).value();
    const Tensor probe(out.shape(), rng.NormalVector(out.size()));
    const auto r = FiniteDiffCheck(MakeLoss(op, probe), params, 1e-6);
    worst = std::max(worst, r.max_relative_error);
    ASSERT_LT(r.max_relative_error, 1e-4)
        << op.name << " seed " << seed << " parameter " << r.worst_parameter << "["
        << r.worst_index << "] analytic " << r.worst_analytic << " numeric "
        << r.worst_numeric;
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

INSTANTIATE_TEST_SUITE_P(AllOps, OpGradient, ::testing::ValuesIn(Cases()),
                         [](const auto& info) { return info.param.name; });

TEST(SoftmaxProperty, SumsToOneAndIsShiftInvariant) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const std::size_t n = 1 + rng.Below(12);
    std::vector<double> x = rng.NormalVector(n, 5.0);
    const auto p = Softmax(x);
    double total = 0.0;
    for (double v : p) {
      EXPECT_GE(v, 0.0);
      total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    const double shift = rng.Uniform(-50.0, 50.0);
    for (double& v : x) v += shift;
    const auto q = Softmax(x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(p[i], q[i], 1e-12);
  }
}

TEST(GaussianKernelProperty, MaximalAtCenterAndSymmetric) {
  const KernelBank bank = KernelBank::Default(10).WithWidth(0.3);
  Rng rng(5);
  for (int trial = 0; trial < kSeeds; ++trial) {
    const double delta = rng.Uniform(1e-3, 1.0);
    for (std::size_t k = 0; k < bank.size(); ++k) {
      const double mu = bank.means[k];
      const double at = GaussianKernelVector(mu, bank)[k];
      const double up = GaussianKernelVector(mu + delta, bank)[k];
      const double down = GaussianKernelVector(mu - delta, bank)[k];
      EXPECT_GT(at, up);
      EXPECT_GT(at, down);
      EXPECT_NEAR(up, down, 1e-15);
    }
  }
}

TEST(AdamProperty, ZeroGradientZeroMomentsIsNoOp) {
  for (int seed = 0; seed < kSeeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    ParamStore p;
    p.Add("w", Tensor::Matrix(2, 3, rng.NormalVector(6)));
    const Tensor before = p.Get("w");
    Gradients g;
    g["w"] = Tensor::Matrix(2, 3, std::vector<double>(6, 0.0));
    AdamStep(p, g, rng.Uniform(1e-4, 1.0));
    EXPECT_EQ(p.Get("w"), before);
  }
}

}  // namespace
}  // namespace wsdms
