#include "contactlab/soliton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "contactlab/errors.hpp"

namespace contactlab {

namespace {

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// g^{ij} A_ij
double trace_g(const PointGeometry& geo, const RealTensor& a) {
  const int n = geo.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += geo.inverse_metric(i, j).value() * a(i, j);
  }
  return s;
}

RealTensor scaled_metric(const PointGeometry& geo, double s) { return s * values(geo.metric); }

const SolitonSpec& require_soliton(const ManifoldSpec& m) {
  if (!m.soliton) throw GeometryError("manifold '" + m.name + "' declares no soliton data");
  if (!m.structure) throw GeometryError("soliton data needs an almost contact structure");
  return *m.soliton;
}

// Partials of a jet at the base point as a plain vector.
std::vector<double> gradient_of(const Jet& f, int n) {
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = f.partial(i);
  return d;
}

double along(std::span<const double> x, std::span<const double> df) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * df[i];
  return s;
}

// Values and first partials of a jet tensor's components: d(q, m) = d_m t[q].
struct Partials {
  RealTensor value;
  std::vector<double> d;
  int n = 0;

  explicit Partials(const JetTensor& t) : value(values(t)), n(t.dim()) {
    d.resize(t.size() * n);
    for (std::size_t q = 0; q < t.size(); ++q) {
      for (int m = 0; m < n; ++m) d[q * n + m] = t[q].partial(m);
    }
  }
  double operator()(std::size_t q, int m) const { return d[q * n + m]; }
};

// Shared real-valued views for the relation residuals.
struct View {
  const RelationInput& in;
  int n;
  double two_n;
  RealTensor g, ginv, xi, eta, q, s;
  double r;
  std::vector<double> dr;
  std::vector<double> xi_vec;

  explicit View(const RelationInput& input)
      : in(input), n(input.geo.dim()), two_n(2.0 * input.st.n), g(values(input.geo.metric)),
        ginv(values(input.geo.inverse_metric)), xi(values(input.st.xi)), eta(values(input.st.eta)),
        q(values(input.geo.ricci_operator)), s(values(input.geo.ricci)),
        r(input.geo.scalar.value()) {
    xi_vec = xi.data();
    if (input.geo.scalar.order() >= 1) dr = gradient_of(input.geo.scalar, n);
  }

  double xi_r() const { return along(xi_vec, dr); }
  double scalar_defect() const { return r + two_n * (two_n + 1.0); }

  const SolitonEval& soliton() const {
    if (!in.soliton) throw GeometryError("relation needs soliton data");
    return *in.soliton;
  }
  const Jet& lambda_field() const {
    const auto& sol = soliton();
    if (!sol.lambda) throw GeometryError("relation needs lambda given as an expression");
    return *sol.lambda;
  }
  const Jet& potential() const {
    const auto& sol = soliton();
    if (!sol.potential) throw GeometryError("relation needs a potential function");
    return *sol.potential;
  }
  // (nabla_m Q)^l_j as dq(l, m, j)
  RealTensor nabla_q() const {
    return values(covariant_derivative(in.geo.ricci_operator, in.geo.christoffel));
  }
};

constexpr std::array<Relation, 18> kRelations = {
    Relation::yano_commutation,   Relation::lie_connection_symmetry,
    Relation::lie_connection_xi,  Relation::lie_curvature_xi,
    Relation::lie_curvature_xi_xi, Relation::lie_metric_xi,
    Relation::eta_lie_xi,         Relation::lie_ricci_xi,
    Relation::xi_scalar,          Relation::collinear_constant,
    Relation::hessian_two_routes, Relation::curvature_gradient,
    Relation::f_lambda_exact,     Relation::gradient_eta_einstein,
    Relation::xi_f_lambda,        Relation::dr_wedge_eta,
    Relation::gradient_scalar,    Relation::scalar_gradient_xi,
};

}  // namespace

SolitonEval evaluate_soliton(const ManifoldSpec& m, const PointGeometry& geo, int order) {
  const SolitonSpec& spec = require_soliton(m);
  const std::span<const double> p(geo.point);
  SolitonEval out;
  out.kind = spec.kind;
  if (spec.kind == SolitonSpec::Kind::vector_field) {
    out.field = evaluate_vector(spec.vector_field, m, p, order);
  } else {
    out.potential = evaluate(spec.potential, p, m.params, order);
    out.field = gradient_hessian(geo, *out.potential).gradient;
  }
  if (spec.lambda) out.lambda = evaluate(*spec.lambda, p, m.params, order);
  return out;
}

RealTensor soliton_star_ricci(const PointGeometry& geo, const StructureEval& st, double kenmotsu_tol) {
  const bool kenmotsu = kenmotsu_defect(geo, st) <= kenmotsu_tol;
  return star_ricci(geo, st, kenmotsu ? StarRicciMethod::closed_form : StarRicciMethod::trace,
                    kenmotsu_tol);
}

RealTensor star_soliton_residual(const PointGeometry& geo, const StructureEval& st, const JetTensor& v,
                                 double lambda, double kenmotsu_tol) {
  const RealTensor lg = values(lie_derivative_metric(geo, v));
  return lg + 2.0 * soliton_star_ricci(geo, st, kenmotsu_tol) + scaled_metric(geo, 2.0 * lambda);
}

RealTensor gradient_star_soliton_residual(const PointGeometry& geo, const StructureEval& st,
                                          const Jet& f, double lambda, double kenmotsu_tol) {
  const RealTensor hess = values(gradient_hessian(geo, f).hessian);
  return hess + soliton_star_ricci(geo, st, kenmotsu_tol) + scaled_metric(geo, lambda);
}

double recover_lambda_at(const PointGeometry& geo, const StructureEval& st, const SolitonEval& sol,
                         double kenmotsu_tol) {
  const double dim = geo.dim();
  if (sol.kind == SolitonSpec::Kind::vector_field) {
    return -trace_g(geo, star_soliton_residual(geo, st, sol.field, 0.0, kenmotsu_tol)) / (2.0 * dim);
  }
  if (!sol.potential) throw GeometryError("gradient soliton without a potential");
  return -trace_g(geo, gradient_star_soliton_residual(geo, st, *sol.potential, 0.0, kenmotsu_tol)) /
         dim;
}

LambdaRecovery recover_lambda(const ManifoldSpec& m, std::span<const Point> points, int order,
                              double kenmotsu_tol) {
  require_soliton(m);
  if (points.empty()) throw GeometryError("lambda recovery needs at least one point");
  LambdaRecovery out;
  for (const auto& p : points) {
    const PointGeometry geo = compute_geometry(m, p, order);
    const StructureEval st = evaluate_structure(m, p, order);
    const SolitonEval sol = evaluate_soliton(m, geo, order);
    out.values.push_back(recover_lambda_at(geo, st, sol, kenmotsu_tol));
  }
  const auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
  out.spread = *hi - *lo;
  return out;
}

std::span<const Relation> all_relations() { return kRelations; }

RelationInfo relation_info(Relation r) {
  // name, min order, vector kind, gradient kind, any soliton, lambda field
  switch (r) {
    case Relation::yano_commutation: return {"yano_commutation", 2, true, false, true, false};
    case Relation::lie_connection_symmetry:
      return {"lie_connection_symmetry", 2, true, false, true, false};
    case Relation::lie_connection_xi: return {"lie_connection_xi", 2, true, false, true, false};
    case Relation::lie_curvature_xi: return {"lie_curvature_xi", 3, true, false, true, false};
    case Relation::lie_curvature_xi_xi: return {"lie_curvature_xi_xi", 3, true, false, true, false};
    case Relation::lie_metric_xi: return {"lie_metric_xi", 2, true, false, true, false};
    case Relation::eta_lie_xi: return {"eta_lie_xi", 2, true, false, true, false};
    case Relation::lie_ricci_xi: return {"lie_ricci_xi", 3, true, false, true, false};
    case Relation::xi_scalar: return {"xi_scalar", 3, false, false, true, false};
    case Relation::collinear_constant: return {"collinear_constant", 2, true, false, true, false};
    case Relation::hessian_two_routes: return {"hessian_two_routes", 2, false, true, true, false};
    case Relation::curvature_gradient: return {"curvature_gradient", 3, false, true, true, true};
    case Relation::f_lambda_exact: return {"f_lambda_exact", 2, false, true, true, true};
    case Relation::gradient_eta_einstein:
      return {"gradient_eta_einstein", 2, false, true, true, true};
    case Relation::xi_f_lambda: return {"xi_f_lambda", 2, false, true, true, true};
    case Relation::dr_wedge_eta: return {"dr_wedge_eta", 3, false, true, true, false};
    case Relation::gradient_scalar: return {"gradient_scalar", 3, false, true, true, false};
    case Relation::scalar_gradient_xi: return {"scalar_gradient_xi", 3, false, false, false, false};
  }
  return {"?", 0, false, false, false, false};
}

double relation_residual(Relation rel, const RelationInput& in) {
  const RelationInfo info = relation_info(rel);
  if (in.geo.order < info.min_order) {
    throw OrderError(std::string(info.name) + " needs jet order >= " +
                     std::to_string(info.min_order));
  }
  const View v(in);
  const int n = v.n;
  const PointGeometry& geo = in.geo;
  double worst = 0.0;
  auto track = [&worst](double x) {
    if (std::isnan(x) || std::isnan(worst)) {
      worst = std::numeric_limits<double>::quiet_NaN();
    } else {
      worst = std::max(worst, std::abs(x));
    }
  };

  switch (rel) {
    case Relation::yano_commutation: {
      const JetTensor& field = v.soliton().field;
      // dlg(m, i, j) = (nabla_m L_V g)_ij
      const RealTensor dlg =
          values(covariant_derivative(lie_derivative_metric(geo, field), geo.christoffel));
      const RealTensor lc = values(lie_derivative_connection(geo, field));
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          for (int z = 0; z < n; ++z) {
            double rhs = 0.0;
            for (int k = 0; k < n; ++k) rhs += v.g(k, z) * lc(k, x, y) + v.g(k, y) * lc(k, x, z);
            track(dlg(x, y, z) - rhs);
          }
        }
      }
      break;
    }
    case Relation::lie_connection_symmetry: {
      const RealTensor lc = values(lie_derivative_connection(geo, v.soliton().field));
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) track(lc(k, i, j) - lc(k, j, i));
        }
      }
      break;
    }
    case Relation::lie_connection_xi: {
      const RealTensor lc = values(lie_derivative_connection(geo, v.soliton().field));
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          double s = 0.0;
          for (int j = 0; j < n; ++j) s += lc(k, i, j) * v.xi(j);
          track(s - 2.0 * v.q(k, i) - 2.0 * v.two_n * delta(k, i));
        }
      }
      break;
    }
    case Relation::lie_curvature_xi:
    case Relation::lie_curvature_xi_xi: {
      const RealTensor lr = values(lie_derivative_curvature(geo, v.soliton().field));
      if (rel == Relation::lie_curvature_xi_xi) {
        for (int l = 0; l < n; ++l) {
          for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
              for (int k = 0; k < n; ++k) s += lr(l, i, j, k) * v.xi(j) * v.xi(k);
            }
            track(s);
          }
        }
        break;
      }
      const RealTensor dq = v.nabla_q();
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += lr(l, i, j, k) * v.xi(k);
            const double rhs = 2.0 * v.eta(i) * (v.q(l, j) + v.two_n * delta(l, j)) -
                               2.0 * v.eta(j) * (v.q(l, i) + v.two_n * delta(l, i)) +
                               2.0 * (dq(l, i, j) - dq(l, j, i));
            track(s - rhs);
          }
        }
      }
      break;
    }
    case Relation::lie_metric_xi: {
      const RealTensor lg = values(lie_derivative_metric(geo, v.soliton().field));
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += lg(i, j) * v.xi(j);
        track(s + 2.0 * in.lambda * v.eta(i));
      }
      break;
    }
    case Relation::eta_lie_xi: {
      const Partials vf(v.soliton().field);
      const Partials xf(in.st.xi);
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        double bracket = 0.0;
        for (int m = 0; m < n; ++m) bracket += vf.value(m) * xf(k, m) - xf.value(m) * vf(k, m);
        s += v.eta(k) * bracket;
      }
      track(s - in.lambda);
      break;
    }
    case Relation::lie_ricci_xi: {
      const Partials vf(v.soliton().field);
      const Partials sf(geo.ricci);
      const double xr = v.xi_r();
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          double ls = 0.0;
          for (int m = 0; m < n; ++m) {
            ls += vf.value(m) * sf(static_cast<std::size_t>(i * n + j), m) +
                  v.s(m, j) * vf(m, i) + v.s(i, m) * vf(m, j);
          }
          s += ls * v.xi(j);
        }
        track(s + v.dr[i] - xr * v.eta(i));
      }
      break;
    }
    case Relation::xi_scalar:
      track(v.xi_r() + 2.0 * v.scalar_defect());
      break;
    case Relation::collinear_constant: {
      const JetTensor& field = v.soliton().field;
      Jet a = Jet::constant(0.0, field[0].dim(), field[0].order());
      for (int i = 0; i < n; ++i) a += in.st.eta(i).truncated(a.order()) * field(i);
      const std::vector<double> da = gradient_of(a, n);
      const double xa = along(v.xi_vec, da);
      for (int i = 0; i < n; ++i) track(da[i] - xa * v.eta(i));
      break;
    }
    case Relation::hessian_two_routes: {
      const Jet& f = v.potential();
      const RealTensor h = values(gradient_hessian(geo, f).hessian);
      JetTensor df(n, 0, 1);
      for (int i = 0; i < n; ++i) df(i) = f.derivative(i);
      // (m, j) = (nabla_m df)_j
      const RealTensor ndf = values(covariant_derivative(df, geo.christoffel));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) track(h(i, j) - ndf(i, j));
      }
      break;
    }
    case Relation::curvature_gradient: {
      const RealTensor grad = values(v.soliton().field);
      const std::vector<double> dl = gradient_of(v.lambda_field(), n);
      const RealTensor dq = v.nabla_q();
      const RealTensor riem = values(geo.riemann);
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double lhs = 0.0;
            for (int k = 0; k < n; ++k) lhs += riem(l, i, j, k) * grad(k);
            const double rhs = dq(l, j, i) - dq(l, i, j) + dl[j] * delta(l, i) -
                               dl[i] * delta(l, j) + v.eta(i) * delta(l, j) -
                               v.eta(j) * delta(l, i);
            track(lhs - rhs);
          }
        }
      }
      break;
    }
    case Relation::f_lambda_exact:
    case Relation::gradient_eta_einstein:
    case Relation::xi_f_lambda: {
      const Jet& f = v.potential();
      const Jet& lam = v.lambda_field();
      const int o = std::min(f.order(), lam.order());
      const std::vector<double> dh = gradient_of(f.truncated(o) + lam.truncated(o), n);
      const double t = along(v.xi_vec, dh);
      if (rel == Relation::f_lambda_exact) {
        for (int i = 0; i < n; ++i) track(dh[i] - t * v.eta(i));
      } else if (rel == Relation::gradient_eta_einstein) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            track(v.s(i, j) - (t - v.two_n - 1.0) * v.g(i, j) - (1.0 - t) * v.eta(i) * v.eta(j));
          }
        }
      } else {
        track(t - (v.r / v.two_n + v.two_n + 2.0));
      }
      break;
    }
    case Relation::dr_wedge_eta:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) track(v.dr[i] * v.eta(j) - v.dr[j] * v.eta(i));
      }
      break;
    case Relation::gradient_scalar:
    case Relation::scalar_gradient_xi: {
      const double xr = v.xi_r();
      for (int i = 0; i < n; ++i) {
        double grad_r = 0.0;
        for (int j = 0; j < n; ++j) grad_r += v.ginv(i, j) * v.dr[j];
        const double expected =
            rel == Relation::gradient_scalar ? -2.0 * v.scalar_defect() * v.xi(i) : xr * v.xi(i);
        track(grad_r - expected);
      }
      break;
    }
  }
  return worst;
}

namespace {

bool relation_applies(const RelationInfo& info, const ManifoldSpec& m, int order) {
  if (order < info.min_order) return false;
  const bool has = m.soliton.has_value();
  if (info.needs_soliton && !has) return false;
  if (info.needs_vector_field && (!has || m.soliton->kind != SolitonSpec::Kind::vector_field)) {
    return false;
  }
  if (info.needs_gradient && (!has || m.soliton->kind != SolitonSpec::Kind::gradient)) return false;
  if (info.needs_lambda_field && (!has || !m.soliton->lambda)) return false;
  return true;
}

}  // namespace

std::vector<NamedResidual> scalar_relation_checks(const ManifoldSpec& m, std::span<const Point> points,
                                                  int order, double kenmotsu_tol) {
  if (!m.structure) throw GeometryError("scalar relations need an almost contact structure");
  std::vector<Relation> active;
  for (Relation r : kRelations) {
    if (relation_applies(relation_info(r), m, order)) active.push_back(r);
  }
  std::vector<NamedResidual> out;
  for (Relation r : active) out.push_back({std::string(relation_info(r).name), 0.0});

  for (const auto& p : points) {
    const PointGeometry geo = compute_geometry(m, p, order);
    const StructureEval st = evaluate_structure(m, p, order);
    std::optional<SolitonEval> sol;
    double lambda = 0.0;
    if (m.soliton) {
      sol = evaluate_soliton(m, geo, order);
      lambda = sol->lambda ? sol->lambda->value() : recover_lambda_at(geo, st, *sol, kenmotsu_tol);
    }
    const RelationInput in{geo, st, sol ? &*sol : nullptr, lambda};
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double res = relation_residual(active[k], in);
      out[k].value = std::isnan(res) ? res : std::max(out[k].value, res);
    }
  }
  return out;
}

double collinearity_defect(const PointGeometry& geo, const StructureEval& st,
                           std::span<const double> x) {
  const int n = geo.dim();
  double ex = 0.0;
  for (int i = 0; i < n; ++i) ex += st.eta(i).value() * x[i];
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = x[i] - ex * st.xi(i).value();
  return std::sqrt(std::max(0.0, inner(geo, d, d)));
}

SectionalSummary sample_sectional(const std::vector<PointGeometry>& geos, std::size_t planes_per_point,
                                  std::uint64_t seed) {
  SectionalSummary out;
  SplitMix64 rng(seed);
  double sum = 0.0;
  for (const auto& geo : geos) {
    const int n = geo.dim();
    if (n < 2) continue;
    std::vector<double> x(n), y(n);
    for (std::size_t k = 0; k < planes_per_point; ++k) {
      double kappa = 0.0;
      for (int attempt = 0;; ++attempt) {
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < n; ++i) y[i] = rng.uniform(-1.0, 1.0);
        try {
          kappa = sectional(geo, x, y);
          break;
        } catch (const GeometryError&) {
          if (attempt > 100) throw;
        }
      }
      if (out.planes == 0) {
        out.min = out.max = kappa;
      } else {
        out.min = std::min(out.min, kappa);
        out.max = std::max(out.max, kappa);
      }
      sum += kappa;
      ++out.planes;
    }
  }
  if (out.planes) out.mean = sum / static_cast<double>(out.planes);
  return out;
}

ClassificationReport classify(const ManifoldSpec& m, std::span<const Point> points,
                              const ClassifyOptions& options) {
  if (points.empty()) throw GeometryError("classification needs at least one point");
  const int n = m.dim;
  ClassificationReport rep;
  std::vector<PointGeometry> geos;
  geos.reserve(points.size());
  for (const auto& p : points) geos.push_back(compute_geometry(m, p, options.order));

  double e_lo = std::numeric_limits<double>::infinity();
  double e_hi = -e_lo;
  double e_sum = 0.0;
  for (const auto& geo : geos) {
    const RealTensor s = values(geo.ricci);
    const RealTensor g = values(geo.metric);
    const double c = geo.scalar.value() / n;
    rep.einstein_residual = std::max(rep.einstein_residual, max_abs(s - c * g));
    rep.ricci_norm = std::max(rep.ricci_norm, max_abs(s));
    e_lo = std::min(e_lo, c);
    e_hi = std::max(e_hi, c);
    e_sum += c;
  }
  rep.einstein_constant = e_sum / static_cast<double>(geos.size());
  rep.einstein_spread = e_hi - e_lo;
  rep.einstein = rep.einstein_residual <= options.tol && rep.einstein_spread <= options.tol;
  rep.ricci_flat = rep.ricci_norm <= options.tol;

  rep.sectional = sample_sectional(geos, options.planes_per_point, options.seed);
  rep.constant_curvature =
      rep.sectional.planes > 0 && rep.sectional.spread() <= options.curvature_spread_tol;
  rep.curvature = rep.sectional.mean;

  if (!m.structure) return rep;
  rep.has_structure = true;

  std::vector<StructureEval> sts;
  double ke_res = 0.0;
  ClassificationReport::EtaEinstein eta{};
  bool fit_ok = true;
  for (std::size_t k = 0; k < geos.size(); ++k) {
    const auto& geo = geos[k];
    sts.push_back(evaluate_structure(m, points[k], options.order));
    const StructureEval& st = sts.back();
    rep.kenmotsu_residual = std::max(rep.kenmotsu_residual, kenmotsu_defect(geo, st));
    const RealTensor g = values(geo.metric);
    ke_res = std::max(ke_res, max_abs(values(geo.ricci) + (2.0 * st.n) * g));
    if (!fit_ok) continue;
    try {
      const EtaEinsteinFit fit = eta_einstein_fit(geo, st);
      if (k == 0) {
        eta.alpha_min = eta.alpha_max = fit.alpha;
        eta.beta_min = eta.beta_max = fit.beta;
      }
      eta.alpha_min = std::min(eta.alpha_min, fit.alpha);
      eta.alpha_max = std::max(eta.alpha_max, fit.alpha);
      eta.beta_min = std::min(eta.beta_min, fit.beta);
      eta.beta_max = std::max(eta.beta_max, fit.beta);
      eta.residual = std::max(eta.residual, fit.residual);
      eta.sum_defect = std::max(eta.sum_defect, fit.sum_defect);
    } catch (const GeometryError&) {
      fit_ok = false;
    }
  }
  rep.kenmotsu = rep.kenmotsu_residual <= options.tol;
  rep.kenmotsu_einstein_residual = ke_res;
  if (fit_ok) {
    eta.holds = eta.residual <= options.tol;
    rep.eta_einstein = eta;
  }

  if (!m.soliton) return rep;
  ClassificationReport::Soliton sol_rep;
  sol_rep.kind = m.soliton->kind;
  for (std::size_t k = 0; k < geos.size(); ++k) {
    const auto& geo = geos[k];
    const auto& st = sts[k];
    const SolitonEval sol = evaluate_soliton(m, geo, options.order);
    const double hat = recover_lambda_at(geo, st, sol, options.tol);
    sol_rep.lambda_hat.push_back(hat);
    const double lambda = sol.lambda ? sol.lambda->value() : hat;
    const RealTensor res =
        sol.kind == SolitonSpec::Kind::vector_field
            ? star_soliton_residual(geo, st, sol.field, lambda, options.tol)
            : gradient_star_soliton_residual(geo, st, *sol.potential, lambda, options.tol);
    sol_rep.residual = std::max(sol_rep.residual, max_abs(res));
    const std::vector<double> x = values(sol.field).data();
    sol_rep.collinearity.push_back(collinearity_defect(geo, st, x));
    sol_rep.field_norm.push_back(std::sqrt(std::max(0.0, inner(geo, x, x))));
  }
  const auto [lo, hi] = std::minmax_element(sol_rep.lambda_hat.begin(), sol_rep.lambda_hat.end());
  sol_rep.lambda_spread = *hi - *lo;
  if (sol_rep.lambda_spread > options.tol) {
    sol_rep.label = "non-constant";
  } else {
    const double mid = 0.5 * (*hi + *lo);
    sol_rep.label = std::abs(mid) <= options.tol ? "steady" : (mid < 0.0 ? "shrinking" : "expanding");
  }
  sol_rep.collinear = true;
  for (std::size_t k = 0; k < sol_rep.collinearity.size(); ++k) {
    if (!(sol_rep.collinearity[k] <= options.collinearity_rel_tol * sol_rep.field_norm[k])) {
      sol_rep.collinear = false;
    }
  }
  rep.soliton = std::move(sol_rep);
  return rep;
}

}  // namespace contactlab
