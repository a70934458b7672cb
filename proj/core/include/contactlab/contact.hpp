#pragma once

#include <span>
#include <string>
#include <vector>

#include "contactlab/curvature.hpp"
#include "contactlab/manifold.hpp"

namespace contactlab {

// (phi, xi, eta) evaluated as jets at one point.  phi(i, j) = phi^i_j.
struct StructureEval {
  JetTensor phi;  // (1,1)
  JetTensor xi;   // (1,0)
  JetTensor eta;  // (0,1)
  int n = 0;      // dim = 2n + 1
};

// Throws GeometryError when the spec carries no structure block.
StructureEval evaluate_structure(const ManifoldSpec& m, std::span<const double> p, int order);

struct AlmostContactResiduals {
  double phi_squared = 0.0;    // phi^2 + I - eta (x) xi
  double eta_xi = 0.0;         // eta(xi) - 1
  double phi_xi = 0.0;         // phi xi
  double eta_phi = 0.0;        // eta o phi
  double compatibility = 0.0;  // g(phi., phi.) - g + eta (x) eta
  double eta_dual = 0.0;       // eta_i - g_ij xi^j

  double max() const;
};

AlmostContactResiduals check_almost_contact(const PointGeometry& geo, const StructureEval& st);

// Max over basis pairs of |(nabla_i phi) d_j - g(phi d_i, d_j) xi + eta_j phi d_i|.
double check_kenmotsu(const PointGeometry& geo, const StructureEval& st);

// Largest of the almost contact metric residuals and the Kenmotsu residual:
// the structure is Kenmotsu at the point when this is within tolerance.
double kenmotsu_defect(const PointGeometry& geo, const StructureEval& st);

// Identities every Kenmotsu manifold satisfies.
enum class KenmotsuIdentity {
  nabla_xi,                  // nabla_X xi = X - eta(X) xi
  curvature_xi,              // R(X, Y) xi = eta(X) Y - eta(Y) X
  ricci_xi,                  // S(X, xi) = -2n eta(X)
  lie_xi_metric,             // L_xi g = 2 (g - eta (x) eta)
  nabla_q_xi,                // (nabla_X Q) xi = -QX - 2n X
  nabla_xi_q,                // (nabla_xi Q) X = -2 QX - 4n X
  phi_curvature_commutator,  // R(X,Y) phi Z - phi R(X,Y) Z expansion
  phi_phi_curvature,         // R(phi X, phi Y) Z expansion
};

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

std::string_view identity_name(KenmotsuIdentity id);
// The identities involving nabla Q need geometry computed at order >= 3.
int identity_min_order(KenmotsuIdentity id);

double identity_residual(KenmotsuIdentity id, const PointGeometry& geo, const StructureEval& st);

// Every identity the geometry's jet order supports.
std::vector<NamedResidual> kenmotsu_identity_suite(const PointGeometry& geo, const StructureEval& st);

enum class StarRicciMethod { trace, closed_form };

// trace:       S*(X, Y) = 1/2 trace(Z -> R(X, phi Y) phi Z)
// closed_form: S + (2n - 1) g + eta (x) eta, refused (GeometryError) unless
//              kenmotsu_defect at the point is <= kenmotsu_tol.
RealTensor star_ricci(const PointGeometry& geo, const StructureEval& st, StarRicciMethod method,
                      double kenmotsu_tol = 1e-9);

struct EtaEinsteinFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;      // ||S - alpha g - beta eta (x) eta||_inf
  double sum_defect = 0.0;    // |alpha + beta + 2n|
  double alpha_defect = 0.0;  // |alpha - (r / 2n + 1)|
  double beta_defect = 0.0;   // |beta + (r / 2n + 2n + 1)|
};

// Unit-weight least squares of S against {g, eta (x) eta} over the
// dim (dim + 1) / 2 independent entries.
EtaEinsteinFit eta_einstein_fit(const PointGeometry& geo, const StructureEval& st);

}  // namespace contactlab
