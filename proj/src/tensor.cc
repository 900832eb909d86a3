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

#include "hot/tensor.h"

#include <cmath>
#include <limits>

#include "hot/errors.h"

namespace hot {

std::size_t ElementCount(std::span<const std::size_t> shape) {
  std::size_t total = 1;
  for (std::size_t d : shape) {
    if (d != 0 && total > std::numeric_limits<std::size_t>::max() / d) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= d;
  }
  return total;
}

Tensor::Tensor(Shape shape, double fill) : shape_(std::move(shape)) {
  if (shape_.empty()) throw ValidationError("tensor needs at least one axis");
  strides_.assign(shape_.size(), 1);
  for (std::size_t a = shape_.size() - 1; a-- > 0;) {
    strides_[a] = strides_[a + 1] * shape_[a + 1];
  }
  data_.assign(ElementCount(shape_), fill);
}

Tensor Tensor::FromMatrix(const Eigen::MatrixXd& m) {
  Tensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      t.data_[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
    }
  }
  return t;
}

Tensor Tensor::Product(std::span<const Measure> marginals) {
  Shape shape;
  for (const Measure& m : marginals) shape.push_back(m.size());
  Tensor t(shape, 1.0);
  for (std::size_t a = 0; a < marginals.size(); ++a) {
    const std::size_t inner = t.strides_[a];
    const std::size_t n = shape[a];
    const std::size_t outer = t.size() / (inner * n);
    double* p = t.data_.data();
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < n; ++i) {
        const double w = marginals[a][i];
        for (std::size_t r = 0; r < inner; ++r) *p++ *= w;
      }
    }
  }
  return t;
}

std::size_t Tensor::LinearIndex(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw ValidationError("tensor index has wrong arity");
  }
  std::size_t linear = 0;
  for (std::size_t a = 0; a < index.size(); ++a) {
    if (index[a] >= shape_[a]) throw ValidationError("tensor index out of range");
    linear += index[a] * strides_[a];
  }
  return linear;
}

double Tensor::Sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

Eigen::MatrixXd Tensor::ToMatrix() const {
  if (rank() != 2) throw ValidationError("ToMatrix needs a rank-2 tensor");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(shape_[0]),
                    static_cast<Eigen::Index>(shape_[1]));
  for (std::size_t r = 0; r < shape_[0]; ++r) {
    for (std::size_t c = 0; c < shape_[1]; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          data_[r * shape_[1] + c];
    }
  }
  return m;
}

Eigen::VectorXd marginal_sum(const Tensor& t, std::size_t axis) {
  if (axis >= t.rank()) throw ValidationError("marginal axis out of range");
  const std::size_t n = t.dim(axis);
  const std::size_t inner = t.stride(axis);
  const std::size_t outer = t.size() / (inner * n);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const double* p = t.data().data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t r = 0; r < inner; ++r) s += *p++;
      out[static_cast<Eigen::Index>(i)] += s;
    }
  }
  return out;
}

Eigen::MatrixXd pair_marginal(const Tensor& t, std::size_t j, std::size_t k) {
  if (j >= t.rank() || k >= t.rank() || j == k) {
    throw ValidationError("invalid pair of axes");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.dim(j)),
                                              static_cast<Eigen::Index>(t.dim(k)));
  const auto data = t.data();
  ForEachIndex(t.shape(), [&](std::size_t linear, const std::vector<std::size_t>& idx) {
    out(static_cast<Eigen::Index>(idx[j]), static_cast<Eigen::Index>(idx[k])) +=
        data[linear];
  });
  return out;
}

double Inner(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) throw ValidationError("inner product shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double L1Distance(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) throw ValidationError("L1 distance shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

void AddAxisTerm(Tensor& t, std::size_t axis, const Eigen::VectorXd& values,
                 double scale) {
  const std::size_t n = t.dim(axis);
  if (static_cast<std::size_t>(values.size()) != n) {
    throw ValidationError("axis term length mismatch");
  }
  const std::size_t inner = t.stride(axis);
  const std::size_t outer = t.size() / (inner * n);
  double* p = t.data().data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = scale * values[static_cast<Eigen::Index>(i)];
      for (std::size_t r = 0; r < inner; ++r) *p++ += v;
    }
  }
}

void AddPairTerm(Tensor& t, std::size_t j, std::size_t k,
                 const Eigen::MatrixXd& m, double scale) {
  if (static_cast<std::size_t>(m.rows()) != t.dim(j) ||
      static_cast<std::size_t>(m.cols()) != t.dim(k)) {
    throw ValidationError("pair term shape mismatch");
  }
  auto data = t.data();
  ForEachIndex(t.shape(), [&](std::size_t linear, const std::vector<std::size_t>& idx) {
    data[linear] += scale * m(static_cast<Eigen::Index>(idx[j]),
                              static_cast<Eigen::Index>(idx[k]));
  });
}

}  // namespace hot
