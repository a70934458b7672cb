#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contactlab/contact.hpp"
#include "contactlab/curvature.hpp"
#include "contactlab/manifold.hpp"

namespace contactlab {

// Soliton data evaluated at one point.  For the gradient kind, field holds
// Df and potential holds the jet of f.
struct SolitonEval {
  SolitonSpec::Kind kind = SolitonSpec::Kind::vector_field;
  JetTensor field;
  std::optional<Jet> potential;
  std::optional<Jet> lambda;  // absent when lambda is "unknown"
};

SolitonEval evaluate_soliton(const ManifoldSpec& m, const PointGeometry& geo, int order);

// The *-Ricci tensor the soliton equations use: the closed form when the
// point passes the Kenmotsu check at kenmotsu_tol, the trace definition
// otherwise.
RealTensor soliton_star_ricci(const PointGeometry& geo, const StructureEval& st, double kenmotsu_tol);

// L_V g + 2 S* + 2 lambda g
RealTensor star_soliton_residual(const PointGeometry& geo, const StructureEval& st,
                                 const JetTensor& v, double lambda, double kenmotsu_tol = 1e-9);

// Hess f + S* + lambda g
RealTensor gradient_star_soliton_residual(const PointGeometry& geo, const StructureEval& st,
                                          const Jet& f, double lambda, double kenmotsu_tol = 1e-9);

// Least-squares lambda at one point in the g-weighted Frobenius norm:
// -trace_g(L_V g + 2 S*) / (2 dim) or -trace_g(Hess f + S*) / dim.
double recover_lambda_at(const PointGeometry& geo, const StructureEval& st, const SolitonEval& sol,
                         double kenmotsu_tol = 1e-9);

struct LambdaRecovery {
  std::vector<double> values;
  double spread = 0.0;  // max - min
};

// Throws GeometryError for an empty point set or missing soliton/structure.
LambdaRecovery recover_lambda(const ManifoldSpec& m, std::span<const Point> points, int order = 3,
                              double kenmotsu_tol = 1e-9);

// Pointwise consequences of the soliton equations and of the Kenmotsu
// condition that can be evaluated from jets.
enum class Relation {
  yano_commutation,         // (nabla_X L_V g)(Y,Z) = g((L_V nabla)(X,Y),Z) + g((L_V nabla)(X,Z),Y)
  lie_connection_symmetry,  // (L_V nabla)(X,Y) = (L_V nabla)(Y,X)
  lie_connection_xi,        // (L_V nabla)(X, xi) = 2QX + 4nX
  lie_curvature_xi,         // (L_V R)(X,Y) xi expansion
  lie_curvature_xi_xi,      // (L_V R)(X, xi) xi = 0
  lie_metric_xi,            // (L_V g)(X, xi) = -2 lambda eta(X)
  eta_lie_xi,               // eta(L_V xi) = lambda
  lie_ricci_xi,             // (L_V S)(X, xi) = -X(r) + xi(r) eta(X)
  xi_scalar,                // xi(r) = -2 (r + 2n(2n+1))
  collinear_constant,       // a = eta(V):  da(X) + da(xi) eta(X) = 0
  hessian_two_routes,       // coordinate Hessian = nabla(df)
  curvature_gradient,       // R(X,Y)Df in terms of nabla Q and d lambda
  f_lambda_exact,           // d(f + lambda) = xi(f + lambda) eta
  gradient_eta_einstein,    // S = (xi(f+l) - 2n - 1) g + (1 - xi(f+l)) eta (x) eta
  xi_f_lambda,              // xi(f + lambda) = r / 2n + 2n + 2
  dr_wedge_eta,             // dr ^ eta = 0
  gradient_scalar,          // Dr = -2 (r + 2n(2n+1)) xi
  scalar_gradient_xi,       // Dr = xi(r) xi
};

struct RelationInfo {
  std::string_view name;
  int min_order;
  bool needs_vector_field;  // vector-field soliton kind
  bool needs_gradient;      // gradient kind
  bool needs_soliton;       // either kind
  bool needs_lambda_field;  // lambda given as an expression (derivatives used)
};

RelationInfo relation_info(Relation r);
std::span<const Relation> all_relations();

struct RelationInput {
  const PointGeometry& geo;
  const StructureEval& st;
  const SolitonEval* soliton = nullptr;
  double lambda = 0.0;  // value used where the relation involves lambda
};

double relation_residual(Relation r, const RelationInput& in);

// Max residual of every relation applicable to the spec's data over the
// points.  Applicability is structural only; whether the hypotheses hold is
// the caller's concern.
std::vector<NamedResidual> scalar_relation_checks(const ManifoldSpec& m, std::span<const Point> points,
                                                  int order = 3, double kenmotsu_tol = 1e-9);

// ||X - eta(X) xi||_g for the point's structure.
double collinearity_defect(const PointGeometry& geo, const StructureEval& st,
                           std::span<const double> x);

struct SectionalSummary {
  std::size_t planes = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double spread() const { return max - min; }
};

// Sectional curvature over planes_per_point random planes at every point,
// drawn from SplitMix64(seed).
SectionalSummary sample_sectional(const std::vector<PointGeometry>& geos, std::size_t planes_per_point,
                                  std::uint64_t seed);

struct ClassifyOptions {
  int order = 3;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t planes_per_point = 50;
  double curvature_spread_tol = 1e-7;
  double collinearity_rel_tol = 1e-8;
};

struct ClassificationReport {
  bool has_structure = false;
  bool kenmotsu = false;
  double kenmotsu_residual = 0.0;

  bool einstein = false;
  double einstein_residual = 0.0;  // max ||S - (r / dim) g||_inf
  double einstein_constant = 0.0;  // mean r / dim
  double einstein_spread = 0.0;    // spread of r / dim over points
  bool ricci_flat = false;
  double ricci_norm = 0.0;
  std::optional<double> kenmotsu_einstein_residual;  // max ||S + 2n g||_inf

  struct EtaEinstein {
    bool holds = false;
    double residual = 0.0;
    double alpha_min = 0.0, alpha_max = 0.0;
    double beta_min = 0.0, beta_max = 0.0;
    double sum_defect = 0.0;
  };
  std::optional<EtaEinstein> eta_einstein;

  SectionalSummary sectional;
  bool constant_curvature = false;
  double curvature = 0.0;  // kappa when constant

  struct Soliton {
    SolitonSpec::Kind kind = SolitonSpec::Kind::vector_field;
    double residual = 0.0;              // with the given lambda, else recovered
    std::vector<double> lambda_hat;     // per point
    double lambda_spread = 0.0;
    std::string label;                  // shrinking / steady / expanding / non-constant
    std::vector<double> collinearity;   // ||V - eta(V) xi||_g per point
    std::vector<double> field_norm;     // ||V||_g per point
    bool collinear = false;
  };
  std::optional<Soliton> soliton;
};

ClassificationReport classify(const ManifoldSpec& m, std::span<const Point> points,
                              const ClassifyOptions& options = {});

}  // namespace contactlab
