#include "contactlab/manifold.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "contactlab/errors.hpp"

namespace contactlab {

SymbolTable ManifoldSpec::symbols() const {
  SymbolTable s;
  s.coordinates = coords;
  for (const auto& [name, value] : params) s.parameters.push_back(name);
  return s;
}

JetTensor metric_at(const ManifoldSpec& m, std::span<const double> p, int order) {
  if (static_cast<int>(p.size()) != m.dim) {
    throw ShapeError("point has " + std::to_string(p.size()) + " coordinates, chart has " +
                     std::to_string(m.dim));
  }
  JetTensor g(m.dim, 0, 2, Jet::constant(0.0, m.dim, order));
  for (int i = 0; i < m.dim; ++i) {
    for (int j = i; j < m.dim; ++j) {
      Jet v = evaluate(m.metric[i * m.dim + j], p, m.params, order);
      g(i, j) = v;
      g(j, i) = std::move(v);
    }
  }
  return g;
}

double determinant(const RealTensor& a) {
  const int n = a.dim();
  std::vector<double> lu(a.data());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(lu[r * n + c]) > std::abs(lu[pivot * n + c])) pivot = r;
    }
    if (lu[pivot * n + c] == 0.0) return 0.0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(lu[c * n + k], lu[pivot * n + k]);
      det = -det;
    }
    det *= lu[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = lu[r * n + c] / lu[c * n + c];
      for (int k = c; k < n; ++k) lu[r * n + k] -= f * lu[c * n + k];
    }
  }
  return det;
}

JetTensor inverse_metric_at(const JetTensor& g) {
  const int n = g.dim();
  if (g.rank() != 2) throw ShapeError("inverse_metric_at expects a rank-2 tensor");
  const double det = determinant(values(g));
  if (!(std::abs(det) > kDeterminantThreshold)) {
    std::ostringstream os;
    os << "singular metric: |det g| = " << std::abs(det) << " <= " << kDeterminantThreshold;
    throw GeometryError(os.str());
  }
  const int dim = g[0].dim();
  const int order = min_order(g);
  std::vector<Jet> a;
  a.reserve(g.size());
  for (const auto& j : g.data()) a.push_back(j.truncated(order));
  std::vector<Jet> b(g.size(), Jet::constant(0.0, dim, order));
  for (int i = 0; i < n; ++i) b[i * n + i] = Jet::constant(1.0, dim, order);

  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c].value()) > std::abs(a[pivot * n + c].value())) pivot = r;
    }
    if (pivot != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(a[c * n + k], a[pivot * n + k]);
        std::swap(b[c * n + k], b[pivot * n + k]);
      }
    }
    const Jet inv = reciprocal(a[c * n + c]);
    for (int k = 0; k < n; ++k) {
      a[c * n + k] = a[c * n + k] * inv;
      b[c * n + k] = b[c * n + k] * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const Jet f = a[r * n + c];
      if (f.value() == 0.0 && f.is_constant()) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[c * n + k];
        b[r * n + k] -= f * b[c * n + k];
      }
    }
  }
  JetTensor out(n, 2, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = b[i * n + j];
  }
  // Mirror to remove round-off asymmetry; the exact inverse is symmetric.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Jet avg = (out(i, j) + out(j, i)) * 0.5;
      out(i, j) = avg;
      out(j, i) = std::move(avg);
    }
  }
  return out;
}

namespace {

JetTensor evaluate_components(const std::vector<Expr>& components, const ManifoldSpec& m,
                              std::span<const double> p, int order, int up, int down) {
  if (static_cast<int>(components.size()) != m.dim) {
    throw ShapeError("field has " + std::to_string(components.size()) +
                     " components, chart has " + std::to_string(m.dim));
  }
  JetTensor t(m.dim, up, down);
  for (int i = 0; i < m.dim; ++i) t(i) = evaluate(components[i], p, m.params, order);
  return t;
}

}  // namespace

JetTensor evaluate_vector(const std::vector<Expr>& components, const ManifoldSpec& m,
                          std::span<const double> p, int order) {
  return evaluate_components(components, m, p, order, 1, 0);
}

JetTensor evaluate_covector(const std::vector<Expr>& components, const ManifoldSpec& m,
                            std::span<const double> p, int order) {
  return evaluate_components(components, m, p, order, 0, 1);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<Point> sample_points(std::span<const Interval> domain, std::size_t count,
                                 std::uint64_t seed) {
  if (domain.empty()) throw GeometryError("sampling domain has no coordinates");
  for (std::size_t k = 0; k < domain.size(); ++k) {
    if (!(domain[k].lo <= domain[k].hi)) {
      throw GeometryError("empty sampling interval for coordinate " + std::to_string(k));
    }
  }
  SplitMix64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Point p(domain.size());
    for (std::size_t k = 0; k < domain.size(); ++k) {
      const double margin = 0.01 * (domain[k].hi - domain[k].lo);
      p[k] = rng.uniform(domain[k].lo + margin, domain[k].hi - margin);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace contactlab
