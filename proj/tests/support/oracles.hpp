#pragma once

// Independent reference computations used as test oracles.  Nothing here
// goes through jet arithmetic: expressions are evaluated in plain doubles by
// walking the syntax tree, and derivatives come from central differences.

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "contactlab/expr.hpp"
#include "contactlab/manifold.hpp"

namespace oracle {

using contactlab::ExprNode;

inline double eval_node(const ExprNode& n, std::span<const double> x, const contactlab::ParamTable& p) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::constant: return n.value;
    case K::coordinate: return x[n.index];
    case K::parameter: return p.at(n.name);
    case K::name: throw std::logic_error("unbound name " + n.name);
    case K::negate: return -eval_node(*n.lhs, x, p);
    case K::add: return eval_node(*n.lhs, x, p) + eval_node(*n.rhs, x, p);
    case K::sub: return eval_node(*n.lhs, x, p) - eval_node(*n.rhs, x, p);
    case K::mul: return eval_node(*n.lhs, x, p) * eval_node(*n.rhs, x, p);
    case K::div: return eval_node(*n.lhs, x, p) / eval_node(*n.rhs, x, p);
    case K::pow: return std::pow(eval_node(*n.lhs, x, p), eval_node(*n.rhs, x, p));
    case K::call: {
      const double a = eval_node(*n.lhs, x, p);
      switch (n.fn) {
        case contactlab::UnaryFn::exp: return std::exp(a);
        case contactlab::UnaryFn::ln: return std::log(a);
        case contactlab::UnaryFn::sin: return std::sin(a);
        case contactlab::UnaryFn::cos: return std::cos(a);
        case contactlab::UnaryFn::sinh: return std::sinh(a);
        case contactlab::UnaryFn::cosh: return std::cosh(a);
        case contactlab::UnaryFn::tanh: return std::tanh(a);
        case contactlab::UnaryFn::sqrt: return std::sqrt(a);
      }
    }
  }
  throw std::logic_error("unhandled node");
}

inline double eval(const contactlab::Expr& e, std::span<const double> x,
                   const contactlab::ParamTable& p = {}) {
  return eval_node(e.root(), x, p);
}

using Field = std::function<double(std::span<const double>)>;

// Five-point central difference of f along coordinate i.
inline double d1(const Field& f, std::vector<double> x, int i, double h = 1e-4) {
  const double x0 = x[i];
  auto at = [&](double s) {
    x[i] = x0 + s * h;
    return f(x);
  };
  return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

// Central second difference d_i d_j f.
inline double d2(const Field& f, std::vector<double> x, int i, int j, double h = 1e-4) {
  if (i == j) {
    const double x0 = x[i];
    const double f0 = f(x);
    x[i] = x0 + h;
    const double fp = f(x);
    x[i] = x0 - h;
    const double fm = f(x);
    return (fp - 2.0 * f0 + fm) / (h * h);
  }
  auto shifted = [&](double si, double sj) {
    std::vector<double> y = x;
    y[i] += si * h;
    y[j] += sj * h;
    return f(y);
  };
  return (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4.0 * h * h);
}

inline Field field_of(const contactlab::Expr& e, const contactlab::ParamTable& p) {
  return [e, p](std::span<const double> x) { return eval(e, x, p); };
}

// Metric matrix (row-major) from the spec, evaluated in doubles.
inline std::vector<double> metric(const contactlab::ManifoldSpec& m, std::span<const double> x) {
  std::vector<double> g(m.dim * m.dim);
  for (int k = 0; k < m.dim * m.dim; ++k) g[k] = eval(m.metric[k], x, m.params);
  return g;
}

// Dense inverse by Gauss-Jordan with partial pivoting.
inline std::vector<double> inverse(std::vector<double> a, int n) {
  std::vector<double> inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    }
    for (int k = 0; k < n; ++k) {
      std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(inv[c * n + k], inv[piv * n + k]);
    }
    const double d = a[c * n + c];
    for (int k = 0; k < n; ++k) {
      a[c * n + k] /= d;
      inv[c * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r * n + c];
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[c * n + k];
        inv[r * n + k] -= f * inv[c * n + k];
      }
    }
  }
  return inv;
}

// Christoffel symbols Gamma^k_ij (flat index (k * n + i) * n + j) from
// finite differences of the metric.
inline std::vector<double> christoffel_fd(const contactlab::ManifoldSpec& m,
                                          const std::vector<double>& x, double h = 1e-4) {
  const int n = m.dim;
  const std::vector<double> ginv = inverse(metric(m, x), n);
  // dg[(a * n + b) * n + c] = d_c g_ab
  std::vector<double> dg(n * n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Field f = field_of(m.metric[a * n + b], m.params);
      for (int c = 0; c < n; ++c) dg[(a * n + b) * n + c] = d1(f, x, c, h);
    }
  }
  std::vector<double> gamma(n * n * n, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += ginv[k * n + l] *
               (dg[(j * n + l) * n + i] + dg[(i * n + l) * n + j] - dg[(i * n + j) * n + l]);
        }
        gamma[(k * n + i) * n + j] = 0.5 * s;
      }
    }
  }
  return gamma;
}

}  // namespace oracle
