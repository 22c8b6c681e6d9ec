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

#include <random>

#include "skipconv/error.hpp"
#include "skipconv/nn/grad_check.hpp"
#include "skipconv/nn/layers.hpp"
#include "test_util.hpp"

namespace skipconv::nn {
namespace {

using skipconv::testing::random_tensor;
using skipconv::testing::random_tensor_off_kink;

TEST(ActivationTest, PointValues) {
  EXPECT_DOUBLE_EQ(leaky_relu(Tensor({1}, -1.0), 0.2)[0], -0.2);
  EXPECT_EQ(relu(Tensor({1}, -3.5))[0], 0.0);
  EXPECT_EQ(relu(Tensor({1}, 2.0))[0], 2.0);
  EXPECT_EQ(leaky_relu(Tensor({1}, 4.0), 0.2)[0], 4.0);
}

TEST(ActivationTest, BackwardMatchesFiniteDifferences) {
  for (double slope : {0.0, 0.2}) {
    std::mt19937_64 rng(31);
    Tensor x = random_tensor_off_kink({2, 3, 4, 4}, rng);
    const Tensor gy = random_tensor(x.shape(), rng);
    const Tensor gx = leaky_relu_backward(x, gy, slope);
    auto objective = [&] { return dot(gy, leaky_relu(x, slope)); };
    EXPECT_LT(finite_diff_check(objective, x.data(), gx.data(), 1e-8).max_rel_error, 1e-8);
  }
}

TEST(MseLossTest, Values) {
  std::mt19937_64 rng(8);
  const Tensor t = random_tensor({2, 1, 3, 3}, rng);
  EXPECT_EQ(mse_loss(t, t), 0.0);
  Tensor shifted = t;
  for (double& v : shifted.data()) v += 2.0;
  EXPECT_NEAR(mse_loss(shifted, t), 4.0, 1e-12);
  EXPECT_THROW(mse_loss(t, Tensor({2, 1, 3, 2})), ShapeError);
}

TEST(MseLossTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(9);
  Tensor pred = random_tensor({2, 1, 4, 4}, rng);
  const Tensor target = random_tensor(pred.shape(), rng);
  const Tensor g = mse_loss_backward(pred, target);
  for (std::size_t i = 0; i < g.numel(); ++i) {
    EXPECT_DOUBLE_EQ(g[i], 2.0 * (pred[i] - target[i]) / pred.numel());
  }
  auto objective = [&] { return mse_loss(pred, target); };
  EXPECT_LT(finite_diff_check(objective, pred.data(), g.data(), 1e-8).max_rel_error, 1e-8);
}

TEST(ChannelOpsTest, ConcatSplitRoundTrip) {
  std::mt19937_64 rng(10);
  const Tensor a = random_tensor({2, 3, 2, 2}, rng);
  const Tensor b = random_tensor({2, 1, 2, 2}, rng);
  const Tensor c = concat_channels(a, b);
  ASSERT_EQ(c.shape(), (Shape{2, 4, 2, 2}));
  EXPECT_EQ(c.at(1, 3, 1, 0), b.at(1, 0, 1, 0));
  EXPECT_EQ(c.at(1, 2, 0, 1), a.at(1, 2, 0, 1));
  auto [a2, b2] = split_channels(c, 3);
  EXPECT_EQ(a2, a);
  EXPECT_EQ(b2, b);
  EXPECT_THROW(concat_channels(a, Tensor({2, 1, 3, 2})), ShapeError);
}

}  // namespace
}  // namespace skipconv::nn
