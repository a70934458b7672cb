#include "contactlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contactlab/errors.hpp"

namespace contactlab {

namespace {

int jet_dim(const JetTensor& t) { return t.size() ? t[0].dim() : t.dim(); }

Jet zero_jet(int dim, int order) { return Jet::constant(0.0, dim, order); }

}  // namespace

JetTensor christoffel(const JetTensor& g, const JetTensor& ginv) {
  const int n = g.dim();
  const int order = min_order(g) - 1;
  if (order < 0) throw OrderError("Christoffel symbols need metric jets of order >= 1");
  const int vars = jet_dim(g);
  const JetTensor inv = truncated(ginv, order);

  // dg(i, j, l) = d_l g_ij
  JetTensor dg(n, 0, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) dg(i, j, l) = g(i, j).derivative(l);
    }
  }
  JetTensor gamma(n, 1, 2, zero_jet(vars, order));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Jet sum = zero_jet(vars, order);
        for (int l = 0; l < n; ++l) {
          sum += inv(k, l) * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
        }
        sum *= 0.5;
        gamma(k, i, j) = sum;
        gamma(k, j, i) = std::move(sum);
      }
    }
  }
  return gamma;
}

JetTensor riemann(const JetTensor& gamma) {
  const int n = gamma.dim();
  const int order = min_order(gamma) - 1;
  if (order < 0) throw OrderError("curvature needs Christoffel jets of order >= 1");
  const int vars = jet_dim(gamma);
  const JetTensor low = truncated(gamma, order);

  // dgamma(l, j, k, i) = d_i Gamma^l_jk
  JetTensor dgamma(n, 1, 3);
  for (std::size_t q = 0; q < gamma.size(); ++q) {
    for (int i = 0; i < n; ++i) dgamma[q * n + i] = gamma[q].derivative(i);
  }
  JetTensor r(n, 1, 3, zero_jet(vars, order));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          Jet v = dgamma(l, j, k, i) - dgamma(l, i, k, j);
          for (int m = 0; m < n; ++m) {
            v += low(l, i, m) * low(m, j, k) - low(l, j, m) * low(m, i, k);
          }
          r(l, j, i, k) = -v;
          r(l, i, j, k) = std::move(v);
        }
      }
    }
  }
  return r;
}

RicciData ricci(const JetTensor& riem, const JetTensor& ginv) {
  const int n = riem.dim();
  const int order = min_order(riem);
  const int vars = jet_dim(riem);
  const JetTensor inv = truncated(ginv, order);
  RicciData out;
  out.ricci = JetTensor(n, 0, 2, zero_jet(vars, order));
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      Jet s = zero_jet(vars, order);
      for (int l = 0; l < n; ++l) s += riem(l, l, j, k);
      // S is symmetric analytically; average the two contractions.
      if (k != j) {
        Jet t = zero_jet(vars, order);
        for (int l = 0; l < n; ++l) t += riem(l, l, k, j);
        s = (s + t) * 0.5;
      }
      out.ricci(j, k) = s;
      out.ricci(k, j) = std::move(s);
    }
  }
  out.ricci_operator = JetTensor(n, 1, 1, zero_jet(vars, order));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet q = zero_jet(vars, order);
      for (int k = 0; k < n; ++k) q += inv(i, k) * out.ricci(k, j);
      out.ricci_operator(i, j) = std::move(q);
    }
  }
  out.scalar = zero_jet(vars, order);
  for (int i = 0; i < n; ++i) out.scalar += out.ricci_operator(i, i);
  return out;
}

PointGeometry compute_geometry(const ManifoldSpec& m, std::span<const double> p, int order) {
  if (order < 2) throw OrderError("geometry needs jet order >= 2, got " + std::to_string(order));
  PointGeometry geo;
  geo.point.assign(p.begin(), p.end());
  geo.order = order;
  geo.metric = metric_at(m, p, order);
  try {
    geo.inverse_metric = inverse_metric_at(geo.metric);
  } catch (const GeometryError& err) {
    std::string where;
    for (std::size_t k = 0; k < p.size(); ++k) {
      where += (k ? ", " : "") + std::to_string(p[k]);
    }
    throw GeometryError(std::string(err.what()) + " at point (" + where + ")");
  }
  geo.christoffel = christoffel(geo.metric, geo.inverse_metric);
  geo.riemann = riemann(geo.christoffel);
  RicciData rd = ricci(geo.riemann, geo.inverse_metric);
  geo.ricci = std::move(rd.ricci);
  geo.ricci_operator = std::move(rd.ricci_operator);
  geo.scalar = std::move(rd.scalar);
  return geo;
}

RealTensor lowered_riemann(const PointGeometry& geo) {
  const int n = geo.dim();
  const RealTensor r = values(geo.riemann);
  const RealTensor g = values(geo.metric);
  RealTensor out(n, 0, 4, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += r(m, i, j, k) * g(m, l);
          out(i, j, k, l) = s;
        }
      }
    }
  }
  return out;
}

std::vector<double> curvature_apply(const PointGeometry& geo, std::span<const double> x,
                                    std::span<const double> y, std::span<const double> z) {
  const int n = geo.dim();
  std::vector<double> out(n, 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (y[j] == 0.0) continue;
        for (int k = 0; k < n; ++k) s += x[i] * y[j] * z[k] * geo.riemann(l, i, j, k).value();
      }
    }
    out[l] = s;
  }
  return out;
}

double inner(const PointGeometry& geo, std::span<const double> x, std::span<const double> y) {
  const int n = geo.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += geo.metric(i, j).value() * x[i] * y[j];
  }
  return s;
}

double sectional(const PointGeometry& geo, std::span<const double> x, std::span<const double> y) {
  const double gram = inner(geo, x, x) * inner(geo, y, y) - inner(geo, x, y) * inner(geo, x, y);
  if (!(std::abs(gram) >= 1e-12)) {
    throw GeometryError("degenerate plane: Gram determinant " + std::to_string(gram));
  }
  const auto ryy = curvature_apply(geo, x, y, y);
  return inner(geo, ryy, x) / gram;
}

JetTensor covariant_derivative(const JetTensor& t, const JetTensor& gamma) {
  const int n = t.dim();
  const int up = t.up();
  const int down = t.down();
  const int t_order = min_order(t);
  if (t_order < 1) throw OrderError("covariant derivative needs tensor jets of order >= 1");
  const int order = std::min(t_order - 1, min_order(gamma));
  const int vars = jet_dim(gamma);
  const JetTensor tl = truncated(t, order);
  const JetTensor gl = truncated(gamma, order);

  JetTensor out(n, up, down + 1, zero_jet(vars, order));
  std::vector<int> src(up + down);
  for (std::size_t q = 0; q < out.size(); ++q) {
    const std::vector<int> idx = out.indices_of(q);
    const int m = idx[up];
    for (int s = 0; s < up; ++s) src[s] = idx[s];
    for (int s = 0; s < down; ++s) src[up + s] = idx[up + 1 + s];

    Jet v = t[t.flat_index(src)].truncated(order + 1).derivative(m);
    for (int s = 0; s < up; ++s) {
      const int keep = src[s];
      for (int p = 0; p < n; ++p) {
        src[s] = p;
        v += gl(keep, m, p) * tl[t.flat_index(src)];
      }
      src[s] = keep;
    }
    for (int s = 0; s < down; ++s) {
      const int keep = src[up + s];
      for (int p = 0; p < n; ++p) {
        src[up + s] = p;
        v -= gl(p, m, keep) * tl[t.flat_index(src)];
      }
      src[up + s] = keep;
    }
    out[q] = std::move(v);
  }
  return out;
}

namespace {

// (nabla V)(k, i) = nabla_i V^k
JetTensor nabla_vector(const PointGeometry& geo, const JetTensor& v) {
  if (v.up() != 1 || v.down() != 0) throw ShapeError("expected a vector field");
  return covariant_derivative(v, geo.christoffel);
}

}  // namespace

JetTensor lie_derivative_metric(const PointGeometry& geo, const JetTensor& v) {
  const int n = geo.dim();
  const JetTensor dv = nabla_vector(geo, v);
  const int order = min_order(dv);
  const JetTensor g = truncated(geo.metric, order);
  const int vars = jet_dim(g);
  JetTensor out(n, 0, 2, zero_jet(vars, order));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet s = zero_jet(vars, order);
      for (int k = 0; k < n; ++k) s += g(j, k) * dv(k, i) + g(i, k) * dv(k, j);
      out(i, j) = s;
      out(j, i) = std::move(s);
    }
  }
  return out;
}

JetTensor lie_derivative_connection(const PointGeometry& geo, const JetTensor& v) {
  const int n = geo.dim();
  const JetTensor dv = nabla_vector(geo, v);
  // d2v(k, i, j) = (nabla_i nabla V)^k_j = nabla^2 V (d_i, d_j)
  const JetTensor d2v = covariant_derivative(dv, geo.christoffel);
  const int order = std::min(min_order(d2v), min_order(geo.riemann));
  const JetTensor vl = truncated(v, order);
  const JetTensor rl = truncated(geo.riemann, order);
  const int vars = jet_dim(rl);
  JetTensor out(n, 1, 2, zero_jet(vars, order));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Jet s = d2v(k, i, j).truncated(order);
        for (int m = 0; m < n; ++m) s += vl(m) * rl(k, m, i, j);
        out(k, i, j) = std::move(s);
      }
    }
  }
  return out;
}

JetTensor lie_derivative_curvature(const PointGeometry& geo, const JetTensor& v) {
  const JetTensor lc = lie_derivative_connection(geo, v);
  if (min_order(lc) < 1) {
    throw OrderError("Lie derivative of curvature needs jet order >= 3");
  }
  const int n = geo.dim();
  // dl(l, m, i, j) = (nabla_m L_V nabla)^l_{ij}
  const JetTensor dl = covariant_derivative(lc, geo.christoffel);
  const int order = min_order(dl);
  const int vars = jet_dim(dl);
  JetTensor out(n, 1, 3, zero_jet(vars, order));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) out(l, i, j, k) = dl(l, i, j, k) - dl(l, j, i, k);
      }
    }
  }
  return out;
}

GradientHessian gradient_hessian(const PointGeometry& geo, const Jet& f) {
  const int n = geo.dim();
  if (f.order() < 2) throw OrderError("Hessian needs a potential jet of order >= 2");
  const int order1 = f.order() - 1;
  const int vars = f.dim();
  GradientHessian out;
  std::vector<Jet> df;
  for (int i = 0; i < n; ++i) df.push_back(f.derivative(i));

  const int g_order = std::min(order1, min_order(geo.inverse_metric));
  out.gradient = JetTensor(n, 1, 0, zero_jet(vars, g_order));
  for (int i = 0; i < n; ++i) {
    Jet s = zero_jet(vars, g_order);
    for (int j = 0; j < n; ++j) {
      s += geo.inverse_metric(i, j).truncated(g_order) * df[j].truncated(g_order);
    }
    out.gradient(i) = std::move(s);
  }

  const int h_order = std::min(order1 - 1, min_order(geo.christoffel));
  out.hessian = JetTensor(n, 0, 2, zero_jet(vars, h_order));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet s = df[j].derivative(i).truncated(h_order);
      for (int k = 0; k < n; ++k) {
        s -= geo.christoffel(k, i, j).truncated(h_order) * df[k].truncated(h_order);
      }
      out.hessian(i, j) = s;
      out.hessian(j, i) = std::move(s);
    }
  }
  return out;
}

double div_q_residual(const PointGeometry& geo) {
  const int n = geo.dim();
  const JetTensor dq = covariant_derivative(geo.ricci_operator, geo.christoffel);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double div = 0.0;
    for (int i = 0; i < n; ++i) div += dq(i, i, j).value();
    worst = std::max(worst, std::abs(div - 0.5 * geo.scalar.partial(j)));
  }
  return worst;
}

double metric_compatibility_residual(const PointGeometry& geo) {
  return max_abs(values(covariant_derivative(geo.metric, geo.christoffel)));
}

}  // namespace contactlab
