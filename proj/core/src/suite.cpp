#include "contactlab/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "contactlab/contact.hpp"
#include "contactlab/curvature.hpp"
#include "contactlab/errors.hpp"

namespace contactlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kPlanesPerPoint = 50;

struct PointData {
  PointGeometry geo;
  std::optional<StructureEval> st;
  AlmostContactResiduals axioms;
  double kenmotsu = kNaN;
  std::optional<EtaEinsteinFit> fit;
  std::optional<SolitonEval> sol;
  double lambda_hat = kNaN;
  double lambda = kNaN;  // given value, else recovered
  double soliton_residual = kNaN;
  std::uint64_t plane_seed = 0;
};

struct Context {
  const ManifoldSpec& m;
  const RunOptions& opt;
  std::vector<PointData> pts;
  bool kenmotsu = false;
  bool soliton = false;
  bool eta_einstein = false;
  bool collinear = false;
};

enum Needs : unsigned {
  kNone = 0,
  kStructure = 1u << 0,
  kVector = 1u << 1,
  kGradient = 1u << 2,
  kSoliton = 1u << 3,
  kLambdaField = 1u << 4,
};

// When a check is asserted rather than only reported.
enum class Gate {
  always,
  kenmotsu,              // Kenmotsu at every point
  kenmotsu_eta_einstein,  // ... and eta-Einstein
  scalar_gradient,       // ... eta-Einstein and dim > 3
  kenmotsu_soliton,      // Kenmotsu and the soliton equation holds
  soliton,               // soliton equation holds
  einstein_conclusion,      // Kenmotsu, soliton, eta-Einstein, dim > 3
  three_dim,             // Kenmotsu, soliton, dim = 3
  collinear,             // Kenmotsu, soliton, V parallel to xi
};

using Residual = std::function<double(const PointData&, const Context&)>;

struct CheckDef {
  std::string_view name;
  std::string_view tag;
  int min_order;
  unsigned needs;
  Gate gate;
  Residual residual;
};

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

double einstein_defect(const PointData& pd) {
  const double two_n = 2.0 * pd.st->n;
  return max_abs(values(pd.geo.ricci) + two_n * values(pd.geo.metric));
}

double field_defect(const PointData& pd) {
  const std::vector<double> x = values(pd.sol->field).data();
  return collinearity_defect(pd.geo, *pd.st, x);
}

// ||V - xi||_g
double xi_distance(const PointData& pd) {
  const int n = pd.geo.dim();
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = pd.sol->field(i).value() - pd.st->xi(i).value();
  return std::sqrt(std::max(0.0, inner(pd.geo, d, d)));
}

// Max |K + 1| over random planes at the point.
double minus_one_curvature_defect(const PointData& pd) {
  const SectionalSummary s = sample_sectional({pd.geo}, kPlanesPerPoint, pd.plane_seed);
  return std::max(std::abs(s.min + 1.0), std::abs(s.max + 1.0));
}

Residual identity(KenmotsuIdentity id) {
  return [id](const PointData& pd, const Context&) { return identity_residual(id, pd.geo, *pd.st); };
}

Residual relation(Relation r) {
  return [r](const PointData& pd, const Context&) {
    const RelationInput in{pd.geo, *pd.st, pd.sol ? &*pd.sol : nullptr, pd.lambda};
    return relation_residual(r, in);
  };
}

double star_ricci_crosscheck(const PointData& pd) {
  const RealTensor trace = star_ricci(pd.geo, *pd.st, StarRicciMethod::trace);
  // The closed form written out, so non-Kenmotsu inputs still get a number.
  const int n = pd.geo.dim();
  const RealTensor s = values(pd.geo.ricci);
  const RealTensor g = values(pd.geo.metric);
  const RealTensor eta = values(pd.st->eta);
  RealTensor closed(n, 0, 2, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      closed(i, j) = s(i, j) + (2.0 * pd.st->n - 1.0) * g(i, j) + eta(i) * eta(j);
    }
  }
  return max_abs(trace - closed);
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> d;
    auto add = [&d](std::string_view name, std::string_view tag, int order, unsigned needs, Gate gate,
                    Residual fn) { d.push_back({name, tag, order, needs, gate, std::move(fn)}); };

    // Riemannian sanity, no structure needed.
    add("metric_inverse", "Sec 2", 2, kNone, Gate::always, [](const PointData& pd, const Context&) {
      const int n = pd.geo.dim();
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) {
            s += pd.geo.metric(i, k).value() * pd.geo.inverse_metric(k, j).value();
          }
          worst = std::max(worst, std::abs(s - delta(i, j)));
        }
      }
      return worst;
    });
    add("metric_compatibility", "Sec 2", 2, kNone, Gate::always,
        [](const PointData& pd, const Context&) { return metric_compatibility_residual(pd.geo); });
    add("riemann_symmetries", "Sec 2", 2, kNone, Gate::always,
        [](const PointData& pd, const Context&) {
          const RealTensor r = lowered_riemann(pd.geo);
          const int n = pd.geo.dim();
          double worst = 0.0;
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                  const double v = r(i, j, k, l);
                  worst = std::max({worst, std::abs(v + r(j, i, k, l)), std::abs(v + r(i, j, l, k)),
                                    std::abs(v - r(k, l, i, j))});
                }
              }
            }
          }
          return worst;
        });
    add("first_bianchi", "Sec 2", 2, kNone, Gate::always, [](const PointData& pd, const Context&) {
      const RealTensor r = values(pd.geo.riemann);
      const int n = pd.geo.dim();
      double worst = 0.0;
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
              worst = std::max(worst, std::abs(r(l, i, j, k) + r(l, j, k, i) + r(l, k, i, j)));
            }
          }
        }
      }
      return worst;
    });
    add("contracted_bianchi", "Lemma 3.3", 3, kNone, Gate::always,
        [](const PointData& pd, const Context&) { return div_q_residual(pd.geo); });

    // Structure axioms: asserted whenever a structure is declared.
    add("almost_contact", "Eq 2.1", 2, kStructure, Gate::always,
        [](const PointData& pd, const Context&) {
          const auto& a = pd.axioms;
          return std::max({a.phi_squared, a.eta_xi, a.phi_xi, a.eta_phi});
        });
    add("compatible_metric", "Eq 2.2", 2, kStructure, Gate::always,
        [](const PointData& pd, const Context&) {
          return std::max(pd.axioms.compatibility, pd.axioms.eta_dual);
        });
    add("kenmotsu", "Eq 2.3", 2, kStructure, Gate::always,
        [](const PointData& pd, const Context&) { return pd.kenmotsu; });

    // Consequences of the Kenmotsu condition.
    add("nabla_xi", "Eq 2.4", 2, kStructure, Gate::kenmotsu, identity(KenmotsuIdentity::nabla_xi));
    add("curvature_xi", "Eq 2.5", 2, kStructure, Gate::kenmotsu,
        identity(KenmotsuIdentity::curvature_xi));
    add("ricci_xi", "Eq 2.6", 2, kStructure, Gate::kenmotsu, identity(KenmotsuIdentity::ricci_xi));
    add("lie_xi_metric", "Eq 2.7", 2, kStructure, Gate::kenmotsu,
        identity(KenmotsuIdentity::lie_xi_metric));
    add("eta_einstein_sum", "Eq 2.9", 2, kStructure, Gate::kenmotsu_eta_einstein,
        [](const PointData& pd, const Context&) { return pd.fit ? pd.fit->sum_defect : kNaN; });
    add("eta_einstein_coefficients", "Eq 2.10", 2, kStructure, Gate::kenmotsu_eta_einstein,
        [](const PointData& pd, const Context&) {
          return pd.fit ? std::max(pd.fit->alpha_defect, pd.fit->beta_defect) : kNaN;
        });
    add("nabla_q_xi", "Eq 3.1", 3, kStructure, Gate::kenmotsu,
        identity(KenmotsuIdentity::nabla_q_xi));
    add("nabla_xi_q", "Eq 3.2", 3, kStructure, Gate::kenmotsu,
        identity(KenmotsuIdentity::nabla_xi_q));
    add("star_ricci_crosscheck", "Eq 3.5", 2, kStructure, Gate::kenmotsu,
        [](const PointData& pd, const Context&) { return star_ricci_crosscheck(pd); });
    add("star_ricci_symmetry", "Sec 1", 2, kStructure, Gate::kenmotsu,
        [](const PointData& pd, const Context&) {
          const RealTensor s = star_ricci(pd.geo, *pd.st, StarRicciMethod::trace);
          const int n = pd.geo.dim();
          double worst = 0.0;
          for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(s(i, j) - s(j, i)));
          }
          return worst;
        });
    add("phi_curvature_commutator", "Eq 3.6", 2, kStructure, Gate::kenmotsu,
        identity(KenmotsuIdentity::phi_curvature_commutator));
    add("phi_phi_curvature", "Eq 3.7", 2, kStructure, Gate::kenmotsu,
        identity(KenmotsuIdentity::phi_phi_curvature));
    add("scalar_gradient_xi", "Eq 3.17", 3, kStructure, Gate::scalar_gradient,
        relation(Relation::scalar_gradient_xi));

    // *-Ricci soliton with a potential vector field.
    const unsigned vec = kStructure | kSoliton | kVector;
    add("star_soliton", "Eq 1.3", 2, vec, Gate::always,
        [](const PointData& pd, const Context&) { return pd.soliton_residual; });
    add("lambda_constant", "Eq 1.3", 2, vec, Gate::always,
        [](const PointData& pd, const Context& ctx) {
          return std::abs(pd.lambda - ctx.pts.front().lambda);
        });
    add("yano_commutation", "Eq 3.12", 2, vec, Gate::always, relation(Relation::yano_commutation));
    add("lie_connection_symmetry", "Eq 3.12", 2, vec, Gate::always,
        relation(Relation::lie_connection_symmetry));
    add("lie_connection_xi", "Thm 3.1", 2, vec, Gate::kenmotsu_soliton,
        relation(Relation::lie_connection_xi));
    add("lie_curvature_xi", "Eq 3.14", 3, vec, Gate::kenmotsu_soliton,
        relation(Relation::lie_curvature_xi));
    add("lie_curvature_xi_xi", "Eq 3.16", 3, vec, Gate::kenmotsu_soliton,
        relation(Relation::lie_curvature_xi_xi));
    add("lie_metric_xi", "Thm 3.1", 2, vec, Gate::kenmotsu_soliton,
        relation(Relation::lie_metric_xi));
    add("eta_lie_xi", "Thm 3.1", 2, vec, Gate::kenmotsu_soliton, relation(Relation::eta_lie_xi));
    add("lambda_zero", "Thm 3.1", 2, vec, Gate::kenmotsu_soliton,
        [](const PointData& pd, const Context&) { return std::abs(pd.lambda); });
    add("lie_ricci_xi", "Lemma 3.3", 3, vec, Gate::kenmotsu_soliton,
        relation(Relation::lie_ricci_xi));
    add("xi_scalar", "Eq 3.21", 3, vec, Gate::kenmotsu_soliton, relation(Relation::xi_scalar));
    add("theorem_3_2", "Thm 3.2", 2, vec, Gate::einstein_conclusion,
        [](const PointData& pd, const Context&) { return einstein_defect(pd); });
    add("theorem_3_3", "Thm 3.3", 2, vec, Gate::three_dim,
        [](const PointData& pd, const Context&) { return minus_one_curvature_defect(pd); });
    add("collinear_constant", "Eq 3.28", 2, vec, Gate::collinear,
        relation(Relation::collinear_constant));
    add("theorem_3_4", "Thm 3.4", 2, vec, Gate::collinear,
        [](const PointData& pd, const Context&) {
          return std::max(einstein_defect(pd), xi_distance(pd));
        });

    // Gradient almost *-Ricci soliton.
    const unsigned grad = kStructure | kSoliton | kGradient;
    add("gradient_star_soliton", "Eq 1.4", 2, grad, Gate::always,
        [](const PointData& pd, const Context&) { return pd.soliton_residual; });
    add("hessian_two_routes", "Eq 1.4", 2, grad, Gate::always,
        relation(Relation::hessian_two_routes));
    add("lambda_consistency", "Eq 1.4", 2, grad | kLambdaField, Gate::soliton,
        [](const PointData& pd, const Context&) { return std::abs(pd.lambda_hat - pd.lambda); });
    add("curvature_gradient", "Eq 4.1", 3, grad | kLambdaField, Gate::kenmotsu_soliton,
        relation(Relation::curvature_gradient));
    add("f_lambda_exact", "Eq 4.3", 2, grad | kLambdaField, Gate::kenmotsu_soliton,
        relation(Relation::f_lambda_exact));
    add("eta_einstein_gradient", "Eq 4.5", 2, grad | kLambdaField, Gate::kenmotsu_soliton,
        relation(Relation::gradient_eta_einstein));
    add("xi_f_lambda", "Eq 4.6", 2, grad | kLambdaField, Gate::kenmotsu_soliton,
        relation(Relation::xi_f_lambda));
    add("xi_scalar", "Eq 4.9", 3, grad, Gate::kenmotsu_soliton, relation(Relation::xi_scalar));
    add("dr_wedge_eta", "Sec 4", 3, grad, Gate::kenmotsu_soliton, relation(Relation::dr_wedge_eta));
    add("gradient_scalar", "Eq 4.10", 3, grad, Gate::kenmotsu_soliton,
        relation(Relation::gradient_scalar));
    add("theorem_4_1", "Thm 4.1", 2, grad, Gate::kenmotsu_soliton,
        [](const PointData& pd, const Context&) {
          return std::min(einstein_defect(pd), field_defect(pd));
        });
    add("corollary_4_1", "Cor 4.1", 2, grad, Gate::three_dim,
        [](const PointData& pd, const Context&) {
          return std::min(minus_one_curvature_defect(pd), field_defect(pd));
        });
    return d;
  }();
  return defs;
}

// Reason a check cannot run on this spec, or empty when it can.
std::string missing(const CheckDef& def, const ManifoldSpec& m, int order) {
  if ((def.needs & kStructure) && !m.structure) return "structure absent";
  if ((def.needs & kSoliton) && !m.soliton) return "no soliton data";
  if ((def.needs & kVector) && m.soliton->kind != SolitonSpec::Kind::vector_field) return "kind";
  if ((def.needs & kGradient) && m.soliton->kind != SolitonSpec::Kind::gradient) return "kind";
  if ((def.needs & kLambdaField) && !m.soliton->lambda) return "lambda unknown";
  if (order < def.min_order) return "needs jet order >= " + std::to_string(def.min_order);
  return {};
}

bool gate_holds(Gate gate, const Context& ctx) {
  const int dim = ctx.m.dim;
  switch (gate) {
    case Gate::always: return true;
    case Gate::kenmotsu: return ctx.kenmotsu;
    case Gate::kenmotsu_eta_einstein: return ctx.kenmotsu && ctx.eta_einstein;
    case Gate::scalar_gradient: return ctx.kenmotsu && ctx.eta_einstein && dim > 3;
    case Gate::kenmotsu_soliton: return ctx.kenmotsu && ctx.soliton;
    case Gate::soliton: return ctx.soliton;
    case Gate::einstein_conclusion: return ctx.kenmotsu && ctx.soliton && ctx.eta_einstein && dim > 3;
    case Gate::three_dim: return ctx.kenmotsu && ctx.soliton && dim == 3;
    case Gate::collinear: return ctx.kenmotsu && ctx.soliton && ctx.collinear;
  }
  return false;
}

PointData evaluate_point(const ManifoldSpec& m, const Point& p, const RunOptions& opt) {
  PointData pd;
  pd.geo = compute_geometry(m, p, opt.order);
  if (!m.structure) return pd;
  pd.st = evaluate_structure(m, p, opt.order);
  pd.axioms = check_almost_contact(pd.geo, *pd.st);
  pd.kenmotsu = check_kenmotsu(pd.geo, *pd.st);
  try {
    pd.fit = eta_einstein_fit(pd.geo, *pd.st);
  } catch (const GeometryError&) {
    pd.fit.reset();
  }
  if (!m.soliton) return pd;
  pd.sol = evaluate_soliton(m, pd.geo, opt.order);
  pd.lambda_hat = recover_lambda_at(pd.geo, *pd.st, *pd.sol, opt.tol);
  pd.lambda = pd.sol->lambda ? pd.sol->lambda->value() : pd.lambda_hat;
  const RealTensor res =
      pd.sol->kind == SolitonSpec::Kind::vector_field
          ? star_soliton_residual(pd.geo, *pd.st, pd.sol->field, pd.lambda, opt.tol)
          : gradient_star_soliton_residual(pd.geo, *pd.st, *pd.sol->potential, pd.lambda, opt.tol);
  pd.soliton_residual = max_abs(res);
  return pd;
}

void derive_hypotheses(Context& ctx) {
  const double tol = ctx.opt.tol;
  const auto all = [&ctx](auto pred) { return std::all_of(ctx.pts.begin(), ctx.pts.end(), pred); };
  if (!ctx.m.structure || ctx.pts.empty()) return;
  ctx.kenmotsu = all([tol](const PointData& pd) {
    return pd.axioms.max() <= tol && pd.kenmotsu <= tol;
  });
  ctx.eta_einstein = all([tol](const PointData& pd) { return pd.fit && pd.fit->residual <= tol; });
  if (!ctx.m.soliton) return;
  const double lambda0 = ctx.pts.front().lambda;
  const bool vector = ctx.m.soliton->kind == SolitonSpec::Kind::vector_field;
  ctx.soliton = all([&](const PointData& pd) {
    return pd.soliton_residual <= tol && (!vector || std::abs(pd.lambda - lambda0) <= tol);
  });
  ctx.collinear = all([](const PointData& pd) {
    const std::vector<double> x = values(pd.sol->field).data();
    const double norm = std::sqrt(std::max(0.0, inner(pd.geo, x, x)));
    return norm > 0.0 && collinearity_defect(pd.geo, *pd.st, x) <= 1e-8 * norm;
  });
}

}  // namespace

std::string SuiteResult::verdict() const {
  if (checks.empty()) return "no-checks";
  return exit_code() == 0 ? "pass" : "fail";
}

int SuiteResult::exit_code() const {
  for (const auto& c : checks) {
    if (c.asserted && !c.pass) return 2;
  }
  return 0;
}

const CheckRecord* SuiteResult::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& def : registry()) {
    if (std::find(out.begin(), out.end(), def.name) == out.end()) out.emplace_back(def.name);
  }
  return out;
}

SuiteResult run_suite(const ManifoldSpec& m, const RunOptions& options) {
  const std::vector<std::string> known = check_names();
  for (const auto& name : options.checks) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw Error("unknown check '" + name + "'");
    }
  }
  const std::set<std::string, std::less<>> wanted(options.checks.begin(), options.checks.end());
  auto selected = [&wanted](std::string_view name) {
    return wanted.empty() || wanted.count(name) > 0;
  };

  SuiteResult result;
  result.manifold = m.name;
  result.digest = config_digest(m.source);
  result.options = options;

  const std::vector<Point> points = sample_points(m.domain, options.points, options.seed);
  Context ctx{m, options, {}, false, false, false, false};
  if (!points.empty()) {
    SplitMix64 plane_rng(options.seed ^ 0x6a09e667f3bcc909ULL);
    for (const auto& p : points) {
      ctx.pts.push_back(evaluate_point(m, p, options));
      ctx.pts.back().plane_seed = plane_rng.next();
    }
    derive_hypotheses(ctx);
  }

  std::set<std::string, std::less<>> seen_skips;
  for (const auto& def : registry()) {
    if (!selected(def.name)) continue;
    const std::string why = missing(def, m, options.order);
    const std::string reason = why.empty() && points.empty() ? "no sample points" : why;
    if (!reason.empty()) {
      if (reason == "kind") continue;
      if (seen_skips.insert(std::string(def.name)).second) {
        result.skipped.push_back({std::string(def.name), reason});
      }
      continue;
    }
    CheckRecord rec;
    rec.name = def.name;
    rec.tag = def.tag;
    rec.points = ctx.pts.size();
    rec.tolerance = options.tol;
    rec.asserted = gate_holds(def.gate, ctx);
    for (const auto& pd : ctx.pts) {
      const double r = def.residual(pd, ctx);
      rec.residuals.push_back(r);
      if (std::isnan(r) || std::isnan(rec.max_residual)) {
        rec.max_residual = kNaN;
      } else {
        rec.max_residual = std::max(rec.max_residual, r);
      }
    }
    rec.pass = rec.max_residual <= rec.tolerance;
    result.checks.push_back(std::move(rec));
  }
  // A check skipped for one soliton kind may run under its other definition.
  std::erase_if(result.skipped, [&result](const SkippedCheck& s) { return result.find(s.name); });

  if (!points.empty()) {
    ClassifyOptions co;
    co.order = options.order;
    co.tol = options.tol;
    co.seed = options.seed;
    result.classification = classify(m, points, co);
  }
  return result;
}

}  // namespace contactlab
