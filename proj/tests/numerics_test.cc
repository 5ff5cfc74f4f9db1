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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "wsdms/autodiff.h"
#include "wsdms/errors.h"
#include "wsdms/gradient_check.h"
#include "wsdms/numerics.h"
#include "wsdms/param_store.h"

namespace wsdms {
namespace {

TEST(CosineSimilarity, IdenticalDirections) {
  EXPECT_DOUBLE_EQ(CosineSimilarity(std::vector<double>{1, 0}, std::vector<double>{1, 0}), 1.0);
}

TEST(CosineSimilarity, Orthogonal) {
  EXPECT_DOUBLE_EQ(CosineSimilarity(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
}

TEST(CosineSimilarity, HandArithmetic) {
  // 4 / (sqrt5 * sqrt5)
  EXPECT_NEAR(CosineSimilarity(std::vector<double>{1, 2}, std::vector<double>{2, 1}), 0.8,
              1e-15);
}

TEST(CosineSimilarity, ZeroNormIsAnError) {
  EXPECT_THROW(CosineSimilarity(std::vector<double>{0, 0}, std::vector<double>{1, 0}),
               DegenerateInputError);
  ad::Tape tape;
  const ad::Var a = tape.Input(Tensor::Vector({0.0, 0.0}));
  const ad::Var b = tape.Input(Tensor::Vector({1.0, 0.0}));
  EXPECT_THROW(ad::CosineSimilarity(a, b), DegenerateInputError);
}

TEST(CosineSimilarity, LengthMismatchIsAnError) {
  EXPECT_THROW(CosineSimilarity(std::vector<double>{1, 0}, std::vector<double>{1, 0, 0}),
               ShapeError);
}

TEST(Softmax, ConstantInputIsUniform) {
  for (double v : Softmax(std::vector<double>{3.7, 3.7, 3.7, 3.7})) {
    EXPECT_DOUBLE_EQ(v, 0.25);
  }
}

TEST(Softmax, SingleElement) {
  const auto out = Softmax(std::vector<double>{-42.0});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0], 1.0);
}

TEST(Softmax, ClosedForm) {
  const auto out = Softmax(std::vector<double>{0.0, std::log(3.0)});
  EXPECT_NEAR(out[0], 0.25, 1e-15);
  EXPECT_NEAR(out[1], 0.75, 1e-15);
}

TEST(Softmax, EmptyAndNonFiniteAreErrors) {
  EXPECT_THROW(Softmax(std::vector<double>{}), DegenerateInputError);
  EXPECT_THROW(Softmax(std::vector<double>{1.0, NAN}), DegenerateInputError);
}

TEST(Softmax, StableForHugeLogits) {
  const auto out = Softmax(std::vector<double>{1e6, 0.0});
  EXPECT_DOUBLE_EQ(out[0], 1.0);
  EXPECT_DOUBLE_EQ(out[1], 0.0);
}

TEST(GaussianKernel, CenterGivesOne) {
  const KernelBank bank = KernelBank::Default(10);
  for (std::size_t k = 0; k < bank.size(); ++k) {
    EXPECT_DOUBLE_EQ(GaussianKernelVector(bank.means[k], bank)[k], 1.0);
  }
}

TEST(GaussianKernel, ExactMatchKernelFiresAtOne) {
  const KernelBank bank = KernelBank::Default(10);
  ASSERT_DOUBLE_EQ(bank.means[0], 1.0);
  ASSERT_DOUBLE_EQ(bank.widths[0], 0.001);
  EXPECT_DOUBLE_EQ(GaussianKernelVector(1.0, bank)[0], 1.0);
}

TEST(GaussianKernel, ExactMatchKernelVanishesAtPointNine) {
  const KernelBank bank = KernelBank::Default(10);
  const double v = GaussianKernelVector(0.9, bank)[0];
  // exp(-0.01 / 2e-6) = exp(-5000), evaluated directly.
  const double oracle = std::exp(-(0.1 * 0.1) / (2.0 * 0.001 * 0.001));
  EXPECT_LT(v, 1e-100);
  EXPECT_EQ(v, oracle);
}

TEST(GaussianKernel, ComponentsInUnitInterval) {
  const KernelBank bank = KernelBank::Default(10);
  for (double m = -1.0; m <= 1.0; m += 0.05) {
    for (double v : GaussianKernelVector(m, bank)) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(GaussianKernel, NonFiniteInputIsAnError) {
  EXPECT_THROW(GaussianKernelVector(INFINITY, KernelBank::Default(3)),
               DegenerateInputError);
}

TEST(KernelBank, DefaultLayout) {
  const KernelBank bank = KernelBank::Default(10);
  ASSERT_EQ(bank.size(), 10u);
  std::size_t exact = 0;
  for (std::size_t k = 0; k < bank.size(); ++k) {
    if (bank.means[k] == 1.0 && bank.widths[k] == 0.001) ++exact;
  }
  EXPECT_EQ(exact, 1u);
  // Remaining nine means evenly spaced over [-1, 1] with width 0.01.
  for (std::size_t k = 1; k < 10; ++k) {
    EXPECT_NEAR(bank.means[k], -1.0 + 0.25 * static_cast<double>(k - 1), 1e-15);
    EXPECT_DOUBLE_EQ(bank.widths[k], 0.01);
  }
  EXPECT_THROW(KernelBank::Default(0), ConfigError);
}

ParamStore Scalar(double value) {
  ParamStore p;
  p.Add("w", Tensor::Vector({value}));
  return p;
}

TEST(Adam, ZeroGradientLeavesValuesUnchanged) {
  ParamStore p = Scalar(2.5);
  Gradients g;
  g["w"] = Tensor::Vector({0.0});
  AdamStep(p, g, 0.001);
  EXPECT_EQ(p.Get("w")[0], 2.5);
  EXPECT_EQ(p.entry("w").first_moment[0], 0.0);
  EXPECT_EQ(p.entry("w").second_moment[0], 0.0);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  ParamStore p = Scalar(1.0);
  Gradients g;
  g["w"] = Tensor::Vector({1.0});
  AdamStep(p, g, 0.001);
  // m_hat = 1, v_hat = 1, step = lr * 1 / (1 + 1e-8).
  const double oracle = 1.0 - 0.001 / (1.0 + 1e-8);
  EXPECT_NEAR(p.Get("w")[0], oracle, 1e-15);
  EXPECT_NEAR(1.0 - p.Get("w")[0], 0.001, 1e-10);
}

TEST(Adam, StepCounterCountsCalls) {
  ParamStore p = Scalar(0.0);
  Gradients g;
  g["w"] = Tensor::Vector({0.3});
  AdamStep(p, g, 0.001);
  AdamStep(p, g, 0.001);
  EXPECT_EQ(p.step(), 2);
}

TEST(Adam, ShapeMismatchIsAnError) {
  ParamStore p = Scalar(0.0);
  Gradients g;
  g["w"] = Tensor::Vector({1.0, 2.0});
  EXPECT_THROW(AdamStep(p, g, 0.001), ShapeError);
}

TEST(Adam, MomentsShareParameterShape) {
  ParamStore p;
  p.Add("m", Tensor::Matrix(2, 3, {1, 2, 3, 4, 5, 6}));
  EXPECT_TRUE(p.entry("m").first_moment.SameShape(p.Get("m")));
  EXPECT_TRUE(p.entry("m").second_moment.SameShape(p.Get("m")));
}

double Quadratic(const ParamStore& params, Gradients* grads) {
  const double p = params.Get("w")[0];
  if (grads) (*grads)["w"] = Tensor::Vector({2.0 * p});
  return p * p;
}

TEST(FiniteDiffCheck, Quadratic) {
  const GradientCheckResult r = FiniteDiffCheck(Quadratic, Scalar(3.0), 1e-5);
  EXPECT_LT(r.max_relative_error, 1e-6);
  EXPECT_EQ(r.coords_checked, 1u);
}

TEST(FiniteDiffCheck, DetectsWrongGradient) {
  const LossFn wrong = [](const ParamStore& params, Gradients* grads) {
    const double p = params.Get("w")[0];
    if (grads) (*grads)["w"] = Tensor::Vector({p});
    return p * p;
  };
  EXPECT_GT(FiniteDiffCheck(wrong, Scalar(3.0), 1e-5).max_relative_error, 0.1);
}

TEST(FiniteDiffCheck, EpsilonOutsideRangeIsAnError) {
  EXPECT_THROW(FiniteDiffCheck(Quadratic, Scalar(3.0), 1e-2), ConfigError);
  EXPECT_THROW(FiniteDiffCheck(Quadratic, Scalar(3.0), 1e-9), ConfigError);
}

TEST(FiniteDiffCheck, NondeterministicLossIsAnError) {
  int calls = 0;
  const LossFn flaky = [&calls](const ParamStore& params, Gradients*) {
    return params.Get("w")[0] + static_cast<double>(++calls);
  };
  EXPECT_THROW(FiniteDiffCheck(flaky, Scalar(1.0), 1e-5), NondeterminismError);
}

TEST(Tensor, ShapeMustMatchValues) {
  EXPECT_THROW(Tensor({2, 2}, {1.0, 2.0, 3.0}), ShapeError);
  const Tensor t({2, 3});
  EXPECT_EQ(t.size(), 6u);
}

}  // namespace
}  // namespace wsdms
