#include "contactlab/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>

#include "contactlab/errors.hpp"

namespace contactlab {

namespace {

// All multi-indices of length dim and total degree exactly deg, in
// descending lexicographic order.
void indices_of_degree(int dim, int deg, MultiIndex& current, int slot,
                       std::vector<MultiIndex>& out) {
  if (slot == dim - 1) {
    current[slot] = deg;
    out.push_back(current);
    return;
  }
  for (int k = deg; k >= 0; --k) {
    current[slot] = k;
    indices_of_degree(dim, deg - k, current, slot + 1, out);
  }
  current[slot] = 0;
}

std::string describe(const MultiIndex& alpha) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) os << ',';
    os << alpha[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

JetLayout::JetLayout(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 0 || order < 0) {
    throw ShapeError("jet layout needs non-negative dim and order");
  }
  prefix_.reserve(order + 1);
  if (dim == 0) {
    indices_.push_back({});
    prefix_.assign(order + 1, 1);
  } else {
    MultiIndex current(dim, 0);
    for (int deg = 0; deg <= order; ++deg) {
      indices_of_degree(dim, deg, current, 0, indices_);
      prefix_.push_back(indices_.size());
    }
  }

  std::map<MultiIndex, std::size_t> position;
  degrees_.reserve(indices_.size());
  factorials_.reserve(indices_.size());
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    int deg = 0;
    double fact = 1.0;
    for (int a : indices_[k]) {
      deg += a;
      for (int m = 2; m <= a; ++m) fact *= m;
    }
    degrees_.push_back(deg);
    factorials_.push_back(fact);
    position.emplace(indices_[k], k);
  }

  MultiIndex sum(dim);
  for (std::size_t a = 0; a < indices_.size(); ++a) {
    for (std::size_t b = 0; b < indices_.size(); ++b) {
      if (degrees_[a] + degrees_[b] > order) continue;
      for (int v = 0; v < dim; ++v) sum[v] = indices_[a][v] + indices_[b][v];
      products_.push_back({static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(position.at(sum))});
    }
  }

  raised_.resize(dim);
  const std::size_t lower = order > 0 ? prefix_[order - 1] : 0;
  for (int v = 0; v < dim; ++v) {
    raised_[v].resize(lower);
    for (std::size_t k = 0; k < lower; ++k) {
      MultiIndex up = indices_[k];
      ++up[v];
      raised_[v][k] = static_cast<std::uint32_t>(position.at(up));
    }
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{dim, order}];
  if (!slot) slot = std::make_shared<const JetLayout>(dim, order);
  return slot;
}

std::size_t JetLayout::prefix_size(int degree) const {
  if (degree < 0) return 0;
  if (degree >= order_) return indices_.size();
  return prefix_[degree];
}

std::optional<std::size_t> JetLayout::find(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) return std::nullopt;
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) return std::nullopt;
    deg += a;
  }
  if (deg > order_) return std::nullopt;
  // Binary search is not possible with the graded ordering; the layouts are
  // tiny so a scan within the degree block is fine.
  const std::size_t begin = deg == 0 ? 0 : prefix_size(deg - 1);
  const std::size_t end = prefix_size(deg);
  for (std::size_t k = begin; k < end; ++k) {
    if (indices_[k] == alpha) return k;
  }
  return std::nullopt;
}

Jet::Jet() : Jet(JetLayout::get(0, 0), {0.0}) {}

Jet::Jet(std::shared_ptr<const JetLayout> layout, std::vector<double> coeffs)
    : layout_(std::move(layout)), coeffs_(std::move(coeffs)) {}

Jet Jet::constant(double value, int dim, int order) {
  auto layout = JetLayout::get(dim, order);
  std::vector<double> c(layout->size(), 0.0);
  c[0] = value;
  return Jet(std::move(layout), std::move(c));
}

Jet Jet::variable(double value, int var, int dim, int order) {
  if (var < 0 || var >= dim) {
    throw ShapeError("variable index " + std::to_string(var) +
                     " out of range for dimension " + std::to_string(dim));
  }
  if (order < 1) {
    throw OrderError("coordinate jets need order >= 1");
  }
  Jet j = constant(value, dim, order);
  // Degree-one block follows the constant term: e_0, e_1, ... in order.
  j.coeffs_[1 + var] = 1.0;
  return j;
}

double Jet::coeff(const MultiIndex& alpha) const {
  auto k = layout_->find(alpha);
  if (!k) {
    throw OrderError("multi-index " + describe(alpha) +
                     " is not stored in a jet of dim " + std::to_string(dim()) +
                     ", order " + std::to_string(order()));
  }
  return coeffs_[*k];
}

double Jet::partial(const MultiIndex& alpha) const {
  auto k = layout_->find(alpha);
  if (!k) {
    throw OrderError("partial " + describe(alpha) +
                     " exceeds jet order " + std::to_string(order()));
  }
  return coeffs_[*k] * layout_->factorial(*k);
}

double Jet::partial(int var) const {
  MultiIndex alpha(dim(), 0);
  if (var < 0 || var >= dim()) throw ShapeError("partial: variable out of range");
  alpha[var] = 1;
  return partial(alpha);
}

double Jet::partial(int var_a, int var_b) const {
  MultiIndex alpha(dim(), 0);
  if (var_a < 0 || var_a >= dim() || var_b < 0 || var_b >= dim()) {
    throw ShapeError("partial: variable out of range");
  }
  ++alpha[var_a];
  ++alpha[var_b];
  return partial(alpha);
}

Jet Jet::derivative(int var) const {
  if (var < 0 || var >= dim()) throw ShapeError("derivative: variable out of range");
  if (order() < 1) throw OrderError("cannot differentiate an order-0 jet");
  auto lower = JetLayout::get(dim(), order() - 1);
  std::vector<double> c(lower->size());
  auto up = layout_->raised(var);
  for (std::size_t k = 0; k < c.size(); ++k) {
    // d/dx_v of c[alpha + e_v] x^(alpha + e_v) contributes (alpha_v + 1).
    c[k] = (lower->index(k)[var] + 1) * coeffs_[up[k]];
  }
  return Jet(std::move(lower), std::move(c));
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order()) {
    throw OrderError("cannot raise jet order from " + std::to_string(order()) +
                     " to " + std::to_string(new_order));
  }
  if (new_order == order()) return *this;
  auto lower = JetLayout::get(dim(), new_order);
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + lower->size());
  return Jet(std::move(lower), std::move(c));
}

bool Jet::is_constant() const noexcept {
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0.0) return false;
  }
  return true;
}

void Jet::require_same_shape(const Jet& other, const char* op) const {
  if (layout_ != other.layout_) {
    throw ShapeError(std::string("jet ") + op + ": operands differ in shape (dim " +
                     std::to_string(dim()) + " order " + std::to_string(order()) +
                     " vs dim " + std::to_string(other.dim()) + " order " +
                     std::to_string(other.order()) + ")");
  }
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_shape(rhs, "add");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_shape(rhs, "sub");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) {
  coeffs_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  coeffs_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& c : coeffs_) c *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) throw DomainError("jet divided by zero scalar");
  for (double& c : coeffs_) c /= rhs;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  lhs.require_same_shape(rhs, "mul");
  std::vector<double> c(lhs.coeffs_.size(), 0.0);
  for (const auto& t : lhs.layout_->products()) {
    c[t.out] += lhs.coeffs_[t.lhs] * rhs.coeffs_[t.rhs];
  }
  return Jet(lhs.layout_, std::move(c));
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
  lhs.require_same_shape(rhs, "div");
  return lhs * reciprocal(rhs);
}

Jet operator/(double lhs, const Jet& rhs) { return reciprocal(rhs) * lhs; }

Jet arith(ArithOp op, const Jet& a, const Jet& b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw ShapeError("unknown arithmetic operation");
}

Jet compose(const Jet& a, std::span<const double> taylor) {
  const int order = a.order();
  if (static_cast<int>(taylor.size()) < order + 1) {
    throw OrderError("composition needs " + std::to_string(order + 1) +
                     " Taylor coefficients");
  }
  // h = a - a(p) has no constant term, so h^k starts at degree k and the
  // Horner scheme below truncates exactly.
  Jet h = a;
  h.coeffs_[0] = 0.0;
  Jet result = Jet::constant(taylor[order], a.dim(), order);
  for (int k = order - 1; k >= 0; --k) {
    result = result * h;
    result.coeffs_[0] += taylor[k];
  }
  return result;
}

namespace {

double inverse_factorial(int k) {
  double f = 1.0;
  for (int m = 2; m <= k; ++m) f *= m;
  return 1.0 / f;
}

std::string value_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Jet exp(const Jet& a) {
  const int order = a.order();
  const double e = std::exp(a.value());
  std::vector<double> t(order + 1);
  for (int k = 0; k <= order; ++k) t[k] = e * inverse_factorial(k);
  return compose(a, t);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) {
    throw DomainError("ln of non-positive value " + value_text(a0));
  }
  const int order = a.order();
  std::vector<double> t(order + 1);
  t[0] = std::log(a0);
  double power = 1.0;
  for (int k = 1; k <= order; ++k) {
    power *= a0;
    t[k] = ((k % 2) ? 1.0 : -1.0) / (k * power);
  }
  return compose(a, t);
}

Jet sin(const Jet& a) {
  const int order = a.order();
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(order + 1);
  for (int k = 0; k <= order; ++k) t[k] = cycle[k % 4] * inverse_factorial(k);
  return compose(a, t);
}

Jet cos(const Jet& a) {
  const int order = a.order();
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> t(order + 1);
  for (int k = 0; k <= order; ++k) t[k] = cycle[k % 4] * inverse_factorial(k);
  return compose(a, t);
}

Jet sinh(const Jet& a) {
  const int order = a.order();
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  std::vector<double> t(order + 1);
  for (int k = 0; k <= order; ++k) t[k] = ((k % 2) ? c : s) * inverse_factorial(k);
  return compose(a, t);
}

Jet cosh(const Jet& a) {
  const int order = a.order();
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  std::vector<double> t(order + 1);
  for (int k = 0; k <= order; ++k) t[k] = ((k % 2) ? s : c) * inverse_factorial(k);
  return compose(a, t);
}

Jet tanh(const Jet& a) { return sinh(a) / cosh(a); }

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) {
    throw DomainError("sqrt of non-positive value " + value_text(a.value()));
  }
  return pow(a, 0.5);
}

Jet reciprocal(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0) {
    throw DomainError("division by a jet with zero constant term");
  }
  const int order = a.order();
  std::vector<double> t(order + 1);
  // 1/(a0 + h) = sum_k (-1)^k h^k / a0^(k+1)
  double term = 1.0 / a0;
  for (int k = 0; k <= order; ++k) {
    t[k] = term;
    term *= -1.0 / a0;
  }
  return compose(a, t);
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return reciprocal(pow(a, -n));
  Jet result = Jet::constant(1.0, a.dim(), a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Jet pow(const Jet& a, double c) {
  if (std::nearbyint(c) == c && std::abs(c) <= 1024.0) {
    return pow(a, static_cast<int>(c));
  }
  const double a0 = a.value();
  if (!(a0 > 0.0)) {
    throw DomainError("non-integer power " + value_text(c) +
                      " of non-positive value " + value_text(a0));
  }
  const int order = a.order();
  std::vector<double> t(order + 1);
  // binom(c, k) a0^(c - k)
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    t[k] = binom * std::pow(a0, c - k);
    binom *= (c - k) / (k + 1);
  }
  return compose(a, t);
}

Jet apply(UnaryFn fn, const Jet& a) {
  switch (fn) {
    case UnaryFn::exp: return exp(a);
    case UnaryFn::ln: return log(a);
    case UnaryFn::sin: return sin(a);
    case UnaryFn::cos: return cos(a);
    case UnaryFn::sinh: return sinh(a);
    case UnaryFn::cosh: return cosh(a);
    case UnaryFn::tanh: return tanh(a);
    case UnaryFn::sqrt: return sqrt(a);
  }
  throw DomainError("unknown function");
}

}  // namespace contactlab
