#include "contactlab/contact.hpp"

#include <algorithm>
#include <cmath>

#include "contactlab/errors.hpp"

namespace contactlab {

namespace {

double delta(int i, int j) { return i == j ? 1.0 : 0.0; }

// Real-valued views shared by the residual computations.
struct Frame {
  int n = 0;
  int half = 0;  // contact n
  RealTensor g, phi, xi, eta;

  Frame(const PointGeometry& geo, const StructureEval& st)
      : n(geo.dim()), half(st.n), g(values(geo.metric)), phi(values(st.phi)),
        xi(values(st.xi)), eta(values(st.eta)) {}

  // g(phi d_i, d_j)
  double g_phi_first(int i, int j) const {
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += phi(a, i) * g(a, j);
    return s;
  }
  // g(d_i, phi d_k)
  double g_phi_second(int i, int k) const { return g_phi_first(k, i); }
};

}  // namespace

StructureEval evaluate_structure(const ManifoldSpec& m, std::span<const double> p, int order) {
  if (!m.structure) {
    throw GeometryError("manifold '" + m.name + "' declares no almost contact structure");
  }
  const auto& s = *m.structure;
  StructureEval out;
  out.n = m.contact_n();
  out.xi = evaluate_vector(s.xi, m, p, order);
  out.eta = evaluate_covector(s.eta, m, p, order);
  out.phi = JetTensor(m.dim, 1, 1);
  for (int i = 0; i < m.dim; ++i) {
    for (int j = 0; j < m.dim; ++j) {
      out.phi(i, j) = evaluate(s.phi[i * m.dim + j], p, m.params, order);
    }
  }
  return out;
}

double AlmostContactResiduals::max() const {
  return std::max({phi_squared, eta_xi, phi_xi, eta_phi, compatibility, eta_dual});
}

AlmostContactResiduals check_almost_contact(const PointGeometry& geo, const StructureEval& st) {
  const Frame f(geo, st);
  const int n = f.n;
  AlmostContactResiduals r;
  double exi = 0.0;
  for (int i = 0; i < n; ++i) exi += f.eta(i) * f.xi(i);
  r.eta_xi = std::abs(exi - 1.0);
  for (int i = 0; i < n; ++i) {
    double pxi = 0.0;
    double ephi = 0.0;
    double dual = f.eta(i);
    for (int k = 0; k < n; ++k) {
      pxi += f.phi(i, k) * f.xi(k);
      ephi += f.eta(k) * f.phi(k, i);
      dual -= f.g(i, k) * f.xi(k);
    }
    r.phi_xi = std::max(r.phi_xi, std::abs(pxi));
    r.eta_phi = std::max(r.eta_phi, std::abs(ephi));
    r.eta_dual = std::max(r.eta_dual, std::abs(dual));
    for (int j = 0; j < n; ++j) {
      double sq = delta(i, j) - f.xi(i) * f.eta(j);
      double comp = -f.g(i, j) + f.eta(i) * f.eta(j);
      for (int k = 0; k < n; ++k) {
        sq += f.phi(i, k) * f.phi(k, j);
        for (int l = 0; l < n; ++l) comp += f.g(k, l) * f.phi(k, i) * f.phi(l, j);
      }
      r.phi_squared = std::max(r.phi_squared, std::abs(sq));
      r.compatibility = std::max(r.compatibility, std::abs(comp));
    }
  }
  return r;
}

double check_kenmotsu(const PointGeometry& geo, const StructureEval& st) {
  const Frame f(geo, st);
  const int n = f.n;
  // dphi(k, i, j) = ((nabla_i phi) d_j)^k
  const RealTensor dphi = values(covariant_derivative(st.phi, geo.christoffel));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double gpij = f.g_phi_first(i, j);
      for (int k = 0; k < n; ++k) {
        const double r = dphi(k, i, j) - gpij * f.xi(k) + f.eta(j) * f.phi(k, i);
        worst = std::max(worst, std::abs(r));
      }
    }
  }
  return worst;
}

std::string_view identity_name(KenmotsuIdentity id) {
  switch (id) {
    case KenmotsuIdentity::nabla_xi: return "nabla_xi";
    case KenmotsuIdentity::curvature_xi: return "curvature_xi";
    case KenmotsuIdentity::ricci_xi: return "ricci_xi";
    case KenmotsuIdentity::lie_xi_metric: return "lie_xi_metric";
    case KenmotsuIdentity::nabla_q_xi: return "nabla_q_xi";
    case KenmotsuIdentity::nabla_xi_q: return "nabla_xi_q";
    case KenmotsuIdentity::phi_curvature_commutator: return "phi_curvature_commutator";
    case KenmotsuIdentity::phi_phi_curvature: return "phi_phi_curvature";
  }
  return "?";
}

int identity_min_order(KenmotsuIdentity id) {
  return (id == KenmotsuIdentity::nabla_q_xi || id == KenmotsuIdentity::nabla_xi_q) ? 3 : 2;
}

double identity_residual(KenmotsuIdentity id, const PointGeometry& geo, const StructureEval& st) {
  const Frame f(geo, st);
  const int n = f.n;
  const double two_n = 2.0 * f.half;
  double worst = 0.0;
  auto track = [&worst](double v) { worst = std::max(worst, std::abs(v)); };

  switch (id) {
    case KenmotsuIdentity::nabla_xi: {
      const RealTensor dxi = values(covariant_derivative(st.xi, geo.christoffel));
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) track(dxi(k, i) - (delta(k, i) - f.eta(i) * f.xi(k)));
      }
      break;
    }
    case KenmotsuIdentity::curvature_xi: {
      const RealTensor r = values(geo.riemann);
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += r(l, i, j, k) * f.xi(k);
            track(s - (f.eta(i) * delta(l, j) - f.eta(j) * delta(l, i)));
          }
        }
      }
      break;
    }
    case KenmotsuIdentity::ricci_xi: {
      const RealTensor s = values(geo.ricci);
      for (int i = 0; i < n; ++i) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += s(i, k) * f.xi(k);
        track(v + two_n * f.eta(i));
      }
      break;
    }
    case KenmotsuIdentity::lie_xi_metric: {
      const RealTensor lg = values(lie_derivative_metric(geo, st.xi));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) track(lg(i, j) - 2.0 * (f.g(i, j) - f.eta(i) * f.eta(j)));
      }
      break;
    }
    case KenmotsuIdentity::nabla_q_xi:
    case KenmotsuIdentity::nabla_xi_q: {
      const RealTensor q = values(geo.ricci_operator);
      // dq(k, m, j) = (nabla_m Q)^k_j
      const RealTensor dq = values(covariant_derivative(geo.ricci_operator, geo.christoffel));
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          double v = 0.0;
          if (id == KenmotsuIdentity::nabla_q_xi) {
            for (int j = 0; j < n; ++j) v += dq(k, i, j) * f.xi(j);
            v += q(k, i) + two_n * delta(k, i);
          } else {
            for (int m = 0; m < n; ++m) v += f.xi(m) * dq(k, m, i);
            v += 2.0 * q(k, i) + 2.0 * two_n * delta(k, i);
          }
          track(v);
        }
      }
      break;
    }
    case KenmotsuIdentity::phi_curvature_commutator: {
      const RealTensor r = values(geo.riemann);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
              double lhs = 0.0;
              for (int m = 0; m < n; ++m) {
                lhs += r(l, i, j, m) * f.phi(m, k) - f.phi(l, m) * r(m, i, j, k);
              }
              const double rhs = f.g(j, k) * f.phi(l, i) - f.g(i, k) * f.phi(l, j) +
                                 f.g_phi_second(i, k) * delta(l, j) -
                                 f.g_phi_second(j, k) * delta(l, i);
              track(lhs - rhs);
            }
          }
        }
      }
      break;
    }
    case KenmotsuIdentity::phi_phi_curvature: {
      const RealTensor r = values(geo.riemann);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
              double lhs = 0.0;
              for (int a = 0; a < n; ++a) {
                if (f.phi(a, i) == 0.0) continue;
                for (int b = 0; b < n; ++b) lhs += f.phi(a, i) * f.phi(b, j) * r(l, a, b, k);
              }
              const double rhs = r(l, i, j, k) + f.g(j, k) * delta(l, i) -
                                 f.g(i, k) * delta(l, j) + f.g_phi_second(j, k) * f.phi(l, i) -
                                 f.g_phi_second(i, k) * f.phi(l, j);
              track(lhs - rhs);
            }
          }
        }
      }
      break;
    }
  }
  return worst;
}

std::vector<NamedResidual> kenmotsu_identity_suite(const PointGeometry& geo, const StructureEval& st) {
  static constexpr KenmotsuIdentity kAll[] = {
      KenmotsuIdentity::nabla_xi,   KenmotsuIdentity::curvature_xi,
      KenmotsuIdentity::ricci_xi,   KenmotsuIdentity::lie_xi_metric,
      KenmotsuIdentity::nabla_q_xi, KenmotsuIdentity::nabla_xi_q,
      KenmotsuIdentity::phi_curvature_commutator, KenmotsuIdentity::phi_phi_curvature,
  };
  std::vector<NamedResidual> out;
  for (auto id : kAll) {
    if (geo.order < identity_min_order(id)) continue;
    out.push_back({std::string(identity_name(id)), identity_residual(id, geo, st)});
  }
  return out;
}

double kenmotsu_defect(const PointGeometry& geo, const StructureEval& st) {
  return std::max(check_almost_contact(geo, st).max(), check_kenmotsu(geo, st));
}

RealTensor star_ricci(const PointGeometry& geo, const StructureEval& st, StarRicciMethod method,
                      double kenmotsu_tol) {
  const Frame f(geo, st);
  const int n = f.n;
  RealTensor out(n, 0, 2, 0.0);
  if (method == StarRicciMethod::closed_form) {
    const double residual = kenmotsu_defect(geo, st);
    if (!(residual <= kenmotsu_tol)) {
      throw GeometryError("closed-form *-Ricci tensor refused: Kenmotsu residual " +
                          std::to_string(residual) + " exceeds " + std::to_string(kenmotsu_tol));
    }
    const RealTensor s = values(geo.ricci);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        out(i, j) = s(i, j) + (2.0 * f.half - 1.0) * f.g(i, j) + f.eta(i) * f.eta(j);
      }
    }
    return out;
  }
  // Z = d_c maps to R(d_i, phi d_j) phi d_c = phi^b_j phi^m_c R^l_{ibm} d_l;
  // the endomorphism trace sets l = c.
  const RealTensor r = values(geo.riemann);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int b = 0; b < n; ++b) {
        if (f.phi(b, j) == 0.0) continue;
        for (int m = 0; m < n; ++m) {
          for (int c = 0; c < n; ++c) s += f.phi(b, j) * f.phi(m, c) * r(c, i, b, m);
        }
      }
      out(i, j) = 0.5 * s;
    }
  }
  return out;
}

EtaEinsteinFit eta_einstein_fit(const PointGeometry& geo, const StructureEval& st) {
  const Frame f(geo, st);
  const int n = f.n;
  const RealTensor s = values(geo.ricci);
  double gg = 0.0, ge = 0.0, ee = 0.0, sg = 0.0, se = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double gij = f.g(i, j);
      const double eij = f.eta(i) * f.eta(j);
      gg += gij * gij;
      ge += gij * eij;
      ee += eij * eij;
      sg += s(i, j) * gij;
      se += s(i, j) * eij;
    }
  }
  const double det = gg * ee - ge * ge;
  if (!(det > 1e-14 * gg * ee)) {
    throw GeometryError("eta-Einstein fit: g and eta (x) eta are linearly dependent");
  }
  EtaEinsteinFit fit;
  fit.alpha = (sg * ee - se * ge) / det;
  fit.beta = (se * gg - sg * ge) / det;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      fit.residual = std::max(
          fit.residual, std::abs(s(i, j) - fit.alpha * f.g(i, j) - fit.beta * f.eta(i) * f.eta(j)));
    }
  }
  const double two_n = 2.0 * f.half;
  const double r = geo.scalar.value();
  fit.sum_defect = std::abs(fit.alpha + fit.beta + two_n);
  fit.alpha_defect = std::abs(fit.alpha - (r / two_n + 1.0));
  fit.beta_defect = std::abs(fit.beta + (r / two_n + two_n + 1.0));
  return fit;
}

}  // namespace contactlab
