#pragma once

// Multivariate truncated Taylor arithmetic.
//
// A Jet of order K in d variables holds the Taylor coefficients
// c[alpha] = d^alpha f(p) / alpha! for every multi-index alpha with
// |alpha| <= K.  Coefficients are stored densely, ordered by total degree
// and then lexicographically (descending) within a degree, so the indices
// of degree <= K-1 form a prefix of the order-K layout.  Truncation is
// therefore a resize.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace contactlab {

using MultiIndex = std::vector<int>;

// Shared, immutable description of the coefficient layout for a given
// (dim, order) pair, together with precomputed product and shift tables.
class JetLayout {
 public:
  struct ProductTerm {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  // Returns the cached layout for (dim, order).  Thread-safe.
  static std::shared_ptr<const JetLayout> get(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return indices_.size(); }

  const MultiIndex& index(std::size_t k) const { return indices_[k]; }
  int degree(std::size_t k) const { return degrees_[k]; }
  // alpha! for the k-th multi-index.
  double factorial(std::size_t k) const { return factorials_[k]; }
  // Number of multi-indices of total degree <= degree.
  std::size_t prefix_size(int degree) const;

  std::optional<std::size_t> find(const MultiIndex& alpha) const;

  std::span<const ProductTerm> products() const { return products_; }

  // raised(var)[k] = position of index(k) + e_var, defined for every k with
  // degree(k) < order.
  std::span<const std::uint32_t> raised(int var) const { return raised_[var]; }

  JetLayout(int dim, int order);

 private:
  int dim_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<int> degrees_;
  std::vector<double> factorials_;
  std::vector<std::size_t> prefix_;
  std::vector<ProductTerm> products_;
  std::vector<std::vector<std::uint32_t>> raised_;
};

class Jet {
 public:
  // The zero jet in zero variables, order 0.
  Jet();

  static Jet constant(double value, int dim, int order);
  // Jet of the coordinate function x_var at a point where it equals value.
  static Jet variable(double value, int var, int dim, int order);

  int dim() const noexcept { return layout_->dim(); }
  int order() const noexcept { return layout_->order(); }
  const JetLayout& layout() const noexcept { return *layout_; }

  double value() const noexcept { return coeffs_[0]; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  // Taylor-normalized coefficient c[alpha]; zero for indices above order is
  // not implied, so degree > order throws.
  double coeff(const MultiIndex& alpha) const;
  // d^alpha f(p) = alpha! * c[alpha].
  double partial(const MultiIndex& alpha) const;
  double partial(int var) const;
  double partial(int var_a, int var_b) const;

  // Jet of d f / d x_var, one order lower.
  Jet derivative(int var) const;
  Jet truncated(int order) const;

  // True when every non-constant coefficient is exactly zero.
  bool is_constant() const noexcept;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  Jet operator-() const;

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, double rhs) { return lhs -= rhs; }
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator/(Jet lhs, double rhs) { return lhs /= rhs; }
  friend Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
  friend Jet operator-(double lhs, const Jet& rhs) { return -rhs + lhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator/(double lhs, const Jet& rhs);

 private:
  Jet(std::shared_ptr<const JetLayout> layout, std::vector<double> coeffs);

  void require_same_shape(const Jet& other, const char* op) const;

  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;

  friend Jet compose(const Jet& a, std::span<const double> taylor);
};

enum class ArithOp { add, sub, mul, div };

Jet arith(ArithOp op, const Jet& a, const Jet& b);

// f(a) for f(a0 + h) = sum_k taylor[k] h^k; taylor.size() must exceed the
// order of a.
Jet compose(const Jet& a, std::span<const double> taylor);

enum class UnaryFn { exp, ln, sin, cos, sinh, cosh, tanh, sqrt };

Jet apply(UnaryFn fn, const Jet& a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet sqrt(const Jet& a);
Jet reciprocal(const Jet& a);
// a^c for a real constant c.  Integer c goes through repeated
// multiplication and accepts any base (non-zero when c < 0); other c need a
// positive constant term.
Jet pow(const Jet& a, double c);
Jet pow(const Jet& a, int n);

}  // namespace contactlab
