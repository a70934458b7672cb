#pragma once

// Riemannian quantities in a chart, computed exactly in jet arithmetic.
//
// Index conventions:
//   christoffel(k, i, j)  = Gamma^k_{ij}
//   riemann(l, i, j, k)   = R^l_{ijk}, where R(d_i, d_j) d_k = R^l_{ijk} d_l and
//                           R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]
//   ricci(j, k)           = S_{jk} = R^l_{ljk}
//   ricci_operator(i, j)  = Q^i_j = g^{ik} S_{kj}
//
// A covariant derivative adds one lower index placed directly after the
// upper indices: for a (1,1) tensor T, (nabla T)(i, m, j) = (nabla_m T)^i_j.

#include <span>

#include "contactlab/manifold.hpp"
#include "contactlab/tensor.hpp"

namespace contactlab {

struct PointGeometry {
  Point point;
  int order = 0;             // jet order of the metric
  JetTensor metric;          // order K
  JetTensor inverse_metric;  // order K
  JetTensor christoffel;     // order K - 1
  JetTensor riemann;         // order K - 2
  JetTensor ricci;           // order K - 2
  JetTensor ricci_operator;  // order K - 2
  Jet scalar;                // order K - 2

  int dim() const noexcept { return metric.dim(); }
};

// Requires order >= 2 (curvature needs second derivatives of g).
PointGeometry compute_geometry(const ManifoldSpec& m, std::span<const double> p, int order);

JetTensor christoffel(const JetTensor& g, const JetTensor& ginv);
JetTensor riemann(const JetTensor& gamma);

struct RicciData {
  JetTensor ricci;
  JetTensor ricci_operator;
  Jet scalar;
};

RicciData ricci(const JetTensor& riemann, const JetTensor& ginv);

// g(R(d_i, d_j) d_k, d_l) at the point.
RealTensor lowered_riemann(const PointGeometry& geo);

// R(X, Y) Z at the point.
std::vector<double> curvature_apply(const PointGeometry& geo, std::span<const double> x,
                                    std::span<const double> y, std::span<const double> z);

double inner(const PointGeometry& geo, std::span<const double> x, std::span<const double> y);

// Sectional curvature of span{X, Y}; throws GeometryError when the Gram
// determinant is below 1e-12.
double sectional(const PointGeometry& geo, std::span<const double> x, std::span<const double> y);

// Covariant derivative of a jet tensor field of any type.  The result is
// truncated to min(order(t) - 1, order(gamma)).
JetTensor covariant_derivative(const JetTensor& t, const JetTensor& gamma);

// (L_V g)(X, Y) = g(nabla_X V, Y) + g(X, nabla_Y V).
JetTensor lie_derivative_metric(const PointGeometry& geo, const JetTensor& v);

// (L_V nabla)(X, Y) = nabla_X nabla_Y V - nabla_{nabla_X Y} V + R(V, X) Y,
// returned as L(k, i, j) = ((L_V nabla)(d_i, d_j))^k.
JetTensor lie_derivative_connection(const PointGeometry& geo, const JetTensor& v);

// (L_V R)(X, Y) Z = (nabla_X L_V nabla)(Y, Z) - (nabla_Y L_V nabla)(X, Z),
// returned with the layout of riemann.  Needs V and g at jet order >= 3.
JetTensor lie_derivative_curvature(const PointGeometry& geo, const JetTensor& v);

struct GradientHessian {
  JetTensor gradient;  // (Df)^i = g^{ij} d_j f
  JetTensor hessian;   // d_i d_j f - Gamma^k_{ij} d_k f
};

GradientHessian gradient_hessian(const PointGeometry& geo, const Jet& f);

// Max over j of |(nabla_i Q)^i_j - 1/2 d_j r|.
double div_q_residual(const PointGeometry& geo);

// Max |nabla_k g_ij|.
double metric_compatibility_residual(const PointGeometry& geo);

}  // namespace contactlab
