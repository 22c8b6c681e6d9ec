// Copyright 2026 The skipconv Authors. All Rights Reserved.
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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "skipconv/error.hpp"
#include "skipconv/nn/adam.hpp"
#include "test_util.hpp"

namespace skipconv::nn {
namespace {

TEST(AdamTest, FirstStepMovesByLearningRate) {
  Tensor theta({3}, std::vector<double>{0.5, -1.0, 2.0});
  for (double& g : theta.grad()) g = 1.0;
  AdamState state;
  Tensor* params[] = {&theta};
  adam_step(params, state);
  EXPECT_EQ(state.step_count, 1u);
  const double expected = 2e-4 / (1.0 + 1e-8);
  EXPECT_NEAR(theta[0], 0.5 - expected, 1e-15);
  EXPECT_NEAR(theta[1], -1.0 - expected, 1e-15);
  EXPECT_NEAR(theta[2], 2.0 - expected, 1e-15);
}

TEST(AdamTest, ZeroGradientIsParameterNoOpForAnyState) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor theta = skipconv::testing::random_tensor({5}, rng);
    AdamState state;
    Tensor* params[] = {&theta};
    // Build up nonzero moments first.
    for (int s = 0; s < 3 + trial; ++s) {
      auto g = theta.grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::sin(i + s + trial);
      adam_step(params, state);
    }
    const Tensor before = theta;
    const std::vector<double> m_before = state.m[0];
    const std::vector<double> v_before = state.v[0];
    theta.zero_grad();
    adam_step(params, state);
    EXPECT_EQ(theta, before);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_DOUBLE_EQ(state.m[0][i], 0.9 * m_before[i]);
      EXPECT_DOUBLE_EQ(state.v[0][i], 0.999 * v_before[i]);
      EXPECT_GE(state.v[0][i], 0.0);
    }
  }
}

TEST(AdamTest, NonFiniteGradientAbortsWithoutMutation) {
  Tensor a({2}, 1.0), b({2}, 1.0);
  a.grad()[0] = 0.5;
  b.grad()[1] = std::numeric_limits<double>::quiet_NaN();
  AdamState state;
  Tensor* params[] = {&a, &b};
  EXPECT_THROW(adam_step(params, state), NumericalError);
  EXPECT_EQ(a[0], 1.0);
  EXPECT_EQ(state.step_count, 0u);
}

TEST(AdamTest, StateShapeMismatch) {
  Tensor a({2}, 1.0);
  a.grad();
  AdamState state;
  state.m = {std::vector<double>(3)};
  state.v = {std::vector<double>(3)};
  Tensor* params[] = {&a};
  EXPECT_THROW(adam_step(params, state), ShapeError);
}

TEST(AdamTest, ShrinksQuadraticMonotonically) {
  // f(theta) = theta^2 from theta = 1 with default hyperparameters.
  Tensor theta({1}, 1.0);
  AdamState state;
  Tensor* params[] = {&theta};
  double previous = 1.0;
  for (int step = 0; step < 100; ++step) {
    theta.grad()[0] = 2.0 * theta[0];
    adam_step(params, state);
    EXPECT_LT(std::abs(theta[0]), previous) << "step " << step;
    previous = std::abs(theta[0]);
  }
  // Each step moves by at most lr.
  EXPECT_GE(theta[0], 1.0 - 100 * 2e-4);
  EXPECT_LT(theta[0], 0.981);
}

}  // namespace
}  // namespace skipconv::nn
