#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "contactlab/contact.hpp"
#include "contactlab/errors.hpp"
#include "extra_fixtures.hpp"

namespace contactlab {
namespace {

struct At {
  PointGeometry geo;
  StructureEval st;
};

At at(const ManifoldSpec& m, const Point& p, int order = 3) {
  return {compute_geometry(m, p, order), evaluate_structure(m, p, order)};
}

std::vector<ManifoldSpec> kenmotsu_specs() {
  return {testfx::builtin("kenmotsu3"), testfx::builtin("kenmotsu5-warped"),
          load_manifold(testfx::kWarpedSphere), load_manifold(testfx::kWarpedSphereProduct)};
}

// Trace definition evaluated through R(X, Y) Z on basis vectors:
// S*(i, j) = 1/2 sum_b [R(d_i, phi d_j) phi d_b]^b.
RealTensor star_ricci_oracle(const At& a) {
  const int n = a.geo.dim();
  const RealTensor phi = values(a.st.phi);
  auto column = [&](int j) {
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = phi(i, j);
    return c;
  };
  RealTensor out(n, 0, 2, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> x(n, 0.0);
    x[i] = 1.0;
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int b = 0; b < n; ++b) s += curvature_apply(a.geo, x, column(j), column(b))[b];
      out(i, j) = 0.5 * s;
    }
  }
  return out;
}

// Normal equations of min ||S - alpha g - beta eta (x) eta|| over the upper
// triangle, unit weights.
std::pair<double, double> fit_oracle(const At& a) {
  const int n = a.geo.dim();
  const RealTensor g = values(a.geo.metric), s = values(a.geo.ricci), eta = values(a.st.eta);
  double gg = 0, ge = 0, ee = 0, gs = 0, es = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double e = eta[i] * eta[j];
      gg += g(i, j) * g(i, j);
      ge += g(i, j) * e;
      ee += e * e;
      gs += g(i, j) * s(i, j);
      es += e * s(i, j);
    }
  const double det = gg * ee - ge * ge;
  return {(gs * ee - es * ge) / det, (gg * es - ge * gs) / det};
}

TEST(AlmostContact, AxiomsHoldOnConstructedStructures) {
  std::vector<ManifoldSpec> specs = kenmotsu_specs();
  specs.push_back(testfx::builtin("flat-control"));
  specs.push_back(load_manifold(testfx::kSasakian));
  for (const auto& m : specs) {
    for (const auto& p : sample_points(m.domain, 10, 42)) {
      const At a = at(m, p, 2);
      EXPECT_LE(check_almost_contact(a.geo, a.st).max(), 1e-12) << m.name;
    }
  }
}

TEST(AlmostContact, IdentityPhiIsRejected) {
  const ManifoldSpec m = load_manifold(testfx::kenmotsu3_phi("phi_1_1 = 1\nphi_2_2 = 1\nphi_3_3 = 1\n"));
  const Point p = {0.1, 0.2, 0.3};
  const At a = at(m, p, 2);
  // phi^2 + I - eta (x) xi = 2I - eta (x) xi
  EXPECT_DOUBLE_EQ(check_almost_contact(a.geo, a.st).phi_squared, 2.0);
}

TEST(AlmostContact, StructureAbsentIsRefused) {
  const ManifoldSpec m = testfx::builtin("sphere2-control");
  const Point p = {1.0, 1.0};
  EXPECT_THROW(evaluate_structure(m, p, 2), GeometryError);
}

TEST(Kenmotsu, HoldsOnKenmotsuFixtures) {
  for (const auto& m : kenmotsu_specs()) {
    for (const auto& p : sample_points(m.domain, 10, 42)) {
      const At a = at(m, p, 2);
      EXPECT_LE(check_kenmotsu(a.geo, a.st), 1e-11) << m.name;
    }
  }
}

TEST(Kenmotsu, NablaPhiExample) {
  const ManifoldSpec m = testfx::builtin("kenmotsu3");
  const Point p = {0.4, -0.3, 0.6};
  const At a = at(m, p, 2);
  const RealTensor dphi = values(covariant_derivative(a.st.phi, a.geo.christoffel));
  // (nabla_{d_x} phi) d_y = e^{2z} d_z
  EXPECT_NEAR(dphi(0, 0, 1), 0.0, 1e-13);
  EXPECT_NEAR(dphi(1, 0, 1), 0.0, 1e-13);
  EXPECT_NEAR(dphi(2, 0, 1), std::exp(2 * p[2]), 1e-13);
}

TEST(Kenmotsu, NegativeControlsFail) {
  const ManifoldSpec flat = testfx::builtin("flat-control");
  const ManifoldSpec sas = load_manifold(testfx::kSasakian);
  for (const auto& p : sample_points(flat.domain, 10, 42)) {
    const At a = at(flat, p, 2);
    EXPECT_GT(check_kenmotsu(a.geo, a.st), 0.9);
  }
  for (const auto& p : sample_points(sas.domain, 10, 42)) {
    const At a = at(sas, p, 2);
    EXPECT_GT(check_kenmotsu(a.geo, a.st), 0.1);
  }
}

TEST(IdentitySuite, AllIdentitiesOnKenmotsuFixtures) {
  for (const auto& m : kenmotsu_specs()) {
    for (const auto& p : sample_points(m.domain, 10, 42)) {
      const At a = at(m, p, 3);
      const auto suite = kenmotsu_identity_suite(a.geo, a.st);
      EXPECT_EQ(suite.size(), 8u);
      for (const auto& r : suite) EXPECT_LE(r.value, 1e-10) << m.name << " " << r.name;
    }
  }
}

TEST(IdentitySuite, OrderTwoOmitsNablaQ) {
  const ManifoldSpec m = testfx::builtin("kenmotsu3");
  const Point p = {0.1, 0.1, 0.1};
  const At a = at(m, p, 2);
  const auto suite = kenmotsu_identity_suite(a.geo, a.st);
  EXPECT_EQ(suite.size(), 6u);
  EXPECT_EQ(identity_min_order(KenmotsuIdentity::nabla_q_xi), 3);
}

TEST(IdentitySuite, CurvatureXiByDirectEvaluation) {
  for (const auto& m : kenmotsu_specs()) {
    const int n = m.dim;
    for (const auto& p : sample_points(m.domain, 5, 7)) {
      const At a = at(m, p, 2);
      const RealTensor xi = values(a.st.xi), eta = values(a.st.eta);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<double> x(n, 0.0), y(n, 0.0);
          x[i] = 1;
          y[j] = 1;
          const auto r = curvature_apply(a.geo, x, y, xi.data());
          for (int l = 0; l < n; ++l) EXPECT_NEAR(r[l], eta[i] * y[l] - eta[j] * x[l], 1e-10);
        }
    }
  }
  const ManifoldSpec k3 = testfx::builtin("kenmotsu3");
  const Point p = {0.2, 0.2, 0.2};
  const At a = at(k3, p, 2);
  const double dx[] = {1, 0, 0}, dz[] = {0, 0, 1};
  const auto r = curvature_apply(a.geo, dx, dz, dz);
  EXPECT_NEAR(r[0], -1.0, 1e-12);
}

TEST(IdentitySuite, SasakianViolatesKenmotsuIdentities) {
  const ManifoldSpec m = load_manifold(testfx::kSasakian);
  const Point p = {0.1, 0.2, 0.3};
  const At a = at(m, p, 3);
  EXPECT_GT(identity_residual(KenmotsuIdentity::nabla_xi, a.geo, a.st), 0.1);
  EXPECT_GT(identity_residual(KenmotsuIdentity::curvature_xi, a.geo, a.st), 0.1);
  EXPECT_GT(identity_residual(KenmotsuIdentity::lie_xi_metric, a.geo, a.st), 0.1);
}

TEST(StarRicci, Kenmotsu3BothMethods) {
  const ManifoldSpec m = testfx::builtin("kenmotsu3");
  for (const auto& p : sample_points(m.domain, 20, 42)) {
    const At a = at(m, p, 2);
    RealTensor expect = -1.0 * values(a.geo.metric);
    expect(2, 2) += 1.0;
    EXPECT_LE(max_abs(star_ricci(a.geo, a.st, StarRicciMethod::trace) - expect), 1e-10);
    EXPECT_LE(max_abs(star_ricci(a.geo, a.st, StarRicciMethod::closed_form) - expect), 1e-10);
    EXPECT_NEAR(star_ricci(a.geo, a.st, StarRicciMethod::trace)(0, 0), -std::exp(2 * p[2]), 1e-10);
  }
}

TEST(StarRicci, Kenmotsu5IsMinusGPlusEtaEta) {
  const ManifoldSpec m = testfx::builtin("kenmotsu5-warped");
  for (const auto& p : sample_points(m.domain, 10, 42)) {
    const At a = at(m, p, 2);
    RealTensor expect = -1.0 * values(a.geo.metric);
    expect(4, 4) += 1.0;
    EXPECT_LE(max_abs(star_ricci(a.geo, a.st, StarRicciMethod::trace) - expect), 1e-10);
  }
}

TEST(StarRicci, TraceMatchesDirectEvaluation) {
  std::vector<ManifoldSpec> specs = kenmotsu_specs();
  specs.push_back(load_manifold(testfx::kSasakian));
  for (const auto& m : specs) {
    for (const auto& p : sample_points(m.domain, 5, 3)) {
      const At a = at(m, p, 2);
      EXPECT_LE(max_abs(star_ricci(a.geo, a.st, StarRicciMethod::trace) - star_ricci_oracle(a)), 1e-11)
          << m.name;
    }
  }
}

TEST(StarRicci, TraceAgreesWithClosedFormAndIsSymmetric) {
  for (const auto& m : kenmotsu_specs()) {
    for (const auto& p : sample_points(m.domain, 10, 42)) {
      const At a = at(m, p, 2);
      const RealTensor t = star_ricci(a.geo, a.st, StarRicciMethod::trace);
      EXPECT_LE(max_abs(t - star_ricci(a.geo, a.st, StarRicciMethod::closed_form)), 1e-9) << m.name;
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) EXPECT_NEAR(t(i, j), t(j, i), 1e-10);
    }
  }
}

TEST(StarRicci, ZeroPhiGivesZero) {
  const ManifoldSpec m = load_manifold(testfx::kenmotsu3_phi(""));
  const Point p = {0.1, 0.2, 0.3};
  const At a = at(m, p, 2);
  EXPECT_EQ(max_abs(star_ricci(a.geo, a.st, StarRicciMethod::trace)), 0.0);
}

TEST(StarRicci, ClosedFormRefusedOffKenmotsu) {
  const ManifoldSpec m = testfx::builtin("flat-control");
  const Point p = {0.1, 0.2, 0.3};
  const At a = at(m, p, 2);
  EXPECT_THROW(star_ricci(a.geo, a.st, StarRicciMethod::closed_form), GeometryError);
  EXPECT_NO_THROW(star_ricci(a.geo, a.st, StarRicciMethod::trace));
}

TEST(StarRicci, ClosedFormNeedsAlmostContactAxioms) {
  // phi = 0 makes the Kenmotsu equation trivially true, but phi^2 = -I + eta (x) xi fails.
  const ManifoldSpec m = load_manifold(testfx::kenmotsu3_phi(""));
  const Point p = {0.1, 0.2, 0.3};
  const At a = at(m, p, 2);
  EXPECT_EQ(check_kenmotsu(a.geo, a.st), 0.0);
  EXPECT_GE(kenmotsu_defect(a.geo, a.st), 1.0);
  EXPECT_THROW(star_ricci(a.geo, a.st, StarRicciMethod::closed_form), GeometryError);
}

TEST(EtaEinsteinFit, EinsteinFixtures) {
  const ManifoldSpec k3 = testfx::builtin("kenmotsu3");
  const Point p = {0.3, 0.3, 0.3};
  const At a = at(k3, p, 2);
  const EtaEinsteinFit f = eta_einstein_fit(a.geo, a.st);
  EXPECT_NEAR(f.alpha, -2.0, 1e-11);
  EXPECT_NEAR(f.beta, 0.0, 1e-11);
  EXPECT_LE(f.residual, 1e-11);
  EXPECT_LE(f.sum_defect, 1e-11);

  const ManifoldSpec k5 = testfx::builtin("kenmotsu5-warped");
  const Point q = {0.1, 0.2, 0.3, 0.4, 0.1};
  const At b = at(k5, q, 2);
  const EtaEinsteinFit f5 = eta_einstein_fit(b.geo, b.st);
  EXPECT_NEAR(f5.alpha, -4.0, 1e-10);
  EXPECT_NEAR(f5.beta, 0.0, 1e-10);
  EXPECT_LE(f5.sum_defect, 1e-10);
}

TEST(EtaEinsteinFit, WarpedSphereIsEtaEinsteinNotEinstein) {
  for (const auto& text : {testfx::kWarpedSphere, testfx::kWarpedSphereProduct}) {
    const ManifoldSpec m = load_manifold(text);
    const double n2 = m.dim - 1;
    for (const auto& p : sample_points(m.domain, 10, 42)) {
      const At a = at(m, p, 2);
      const EtaEinsteinFit f = eta_einstein_fit(a.geo, a.st);
      const double e = std::exp(-2 * p.back());
      // alpha = e^{-2t} - (2n), beta = -e^{-2t} for R x_{e^t} (unit Kahler-Einstein)
      EXPECT_NEAR(f.alpha, e - n2, 1e-10);
      EXPECT_NEAR(f.beta, -e, 1e-10);
      EXPECT_LE(f.residual, 1e-10);
      EXPECT_LE(f.sum_defect, 1e-9);
      EXPECT_LE(f.alpha_defect, 1e-9);
      EXPECT_LE(f.beta_defect, 1e-9);
    }
  }
}

TEST(EtaEinsteinFit, MatchesNormalEquationsOffKenmotsu) {
  const ManifoldSpec m = load_manifold(testfx::kSasakian);
  for (const auto& p : sample_points(m.domain, 5, 42)) {
    const At a = at(m, p, 2);
    const EtaEinsteinFit f = eta_einstein_fit(a.geo, a.st);
    const auto [alpha, beta] = fit_oracle(a);
    EXPECT_NEAR(f.alpha, alpha, 1e-10);
    EXPECT_NEAR(f.beta, beta, 1e-10);
  }
}

}  // namespace
}  // namespace contactlab
