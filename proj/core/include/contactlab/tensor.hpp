#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "contactlab/errors.hpp"
#include "contactlab/jet.hpp"

namespace contactlab {

// Dense tensor of type (up, down) over a chart of dimension dim.  Upper
// indices come first in the flat row-major layout, so T(i, j, k) for a
// (1, 2) tensor addresses T^i_{jk}.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int up, int down, const T& fill = T())
      : dim_(dim), up_(up), down_(down), data_(count(dim, up + down), fill) {}

  int dim() const noexcept { return dim_; }
  int up() const noexcept { return up_; }
  int down() const noexcept { return down_; }
  int rank() const noexcept { return up_ + down_; }
  std::size_t size() const noexcept { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat(idx...)];
  }

  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  // Unflattens a linear position into its index tuple.
  std::vector<int> indices_of(std::size_t k) const {
    std::vector<int> idx(rank());
    for (int s = rank() - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(k % dim_);
      k /= dim_;
    }
    return idx;
  }

  std::size_t flat_index(const std::vector<int>& idx) const {
    std::size_t k = 0;
    for (int i : idx) k = k * dim_ + i;
    return k;
  }

 private:
  static std::size_t count(int dim, int rank) {
    std::size_t n = 1;
    for (int r = 0; r < rank; ++r) n *= dim;
    return n;
  }

  template <class... I>
  std::size_t flat(I... idx) const {
    std::size_t k = 0;
    ((k = k * dim_ + static_cast<std::size_t>(idx)), ...);
    return k;
  }

  int dim_ = 0;
  int up_ = 0;
  int down_ = 0;
  std::vector<T> data_;
};

using JetTensor = Tensor<Jet>;
using RealTensor = Tensor<double>;

inline RealTensor values(const JetTensor& t) {
  RealTensor out(t.dim(), t.up(), t.down(), 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = t[k].value();
  return out;
}

// Lowest truncation order among the components.
inline int min_order(const JetTensor& t) {
  int o = t.size() ? t[0].order() : 0;
  for (const auto& j : t.data()) o = std::min(o, j.order());
  return o;
}

inline JetTensor truncated(const JetTensor& t, int order) {
  JetTensor out = t;
  for (auto& j : out.data()) j = j.truncated(order);
  return out;
}

// Max-abs entry; the residual norm used throughout.
inline double max_abs(const RealTensor& t) {
  double m = 0.0;
  for (double v : t.data()) {
    if (std::isnan(v)) return v;
    m = std::max(m, std::abs(v));
  }
  return m;
}

inline RealTensor operator-(RealTensor a, const RealTensor& b) {
  if (a.size() != b.size()) throw ShapeError("tensor subtraction: shape mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

inline RealTensor operator+(RealTensor a, const RealTensor& b) {
  if (a.size() != b.size()) throw ShapeError("tensor addition: shape mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

inline RealTensor operator*(double s, RealTensor a) {
  for (double& v : a.data()) v *= s;
  return a;
}

}  // namespace contactlab
