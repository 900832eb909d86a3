// Copyright 2026 The HOT Authors
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

#ifndef HOT_TENSOR_H_
#define HOT_TENSOR_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hot/graph.h"

namespace hot {

using Shape = std::vector<std::size_t>;

// Number of entries of a tensor with the given shape, saturating at SIZE_MAX.
std::size_t ElementCount(std::span<const std::size_t> shape);

// Dense row-major K-way tensor of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);

  static Tensor FromMatrix(const Eigen::MatrixXd& m);
  // Outer product of the measures: the independent coupling.
  static Tensor Product(std::span<const Measure> marginals);

  std::size_t rank() const { return shape_.size(); }
  const Shape& shape() const { return shape_; }
  std::size_t dim(std::size_t axis) const { return shape_[axis]; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }
  std::size_t size() const { return data_.size(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  double& operator[](std::size_t linear) { return data_[linear]; }
  double operator[](std::size_t linear) const { return data_[linear]; }

  std::size_t LinearIndex(std::span<const std::size_t> index) const;
  double& at(std::span<const std::size_t> index) { return data_[LinearIndex(index)]; }
  double at(std::span<const std::size_t> index) const {
    return data_[LinearIndex(index)];
  }

  double Sum() const;
  Eigen::MatrixXd ToMatrix() const;

 private:
  Shape shape_;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

// Calls f(linear, index) for every entry in row-major order.
template <typename F>
void ForEachIndex(const Shape& shape, F&& f) {
  const std::size_t total = ElementCount(shape);
  if (total == 0) return;
  std::vector<std::size_t> index(shape.size(), 0);
  for (std::size_t linear = 0; linear < total; ++linear) {
    f(linear, static_cast<const std::vector<std::size_t>&>(index));
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++index[a] < shape[a]) break;
      index[a] = 0;
    }
  }
}

// P_k(t): sum over every axis except `axis`.
Eigen::VectorXd marginal_sum(const Tensor& t, std::size_t axis);

// P_{j,k}(t): sum over every axis except j and k; rows follow axis j.
Eigen::MatrixXd pair_marginal(const Tensor& t, std::size_t j, std::size_t k);

double Inner(const Tensor& a, const Tensor& b);
double L1Distance(const Tensor& a, const Tensor& b);

// t(v) += scale * values(v_axis)
void AddAxisTerm(Tensor& t, std::size_t axis, const Eigen::VectorXd& values,
                 double scale = 1.0);
// t(v) += scale * m(v_j, v_k)
void AddPairTerm(Tensor& t, std::size_t j, std::size_t k,
                 const Eigen::MatrixXd& m, double scale = 1.0);

}  // namespace hot

#endif  // HOT_TENSOR_H_
