#pragma once

// Manifolds used only by the tests.  Each one exercises a branch the
// built-in fixtures cannot reach.

#include <random>
#include <string>
#include <string_view>

#include "contactlab/fixtures.hpp"
#include "contactlab/manifold.hpp"

namespace testfx {

// R x_{e^t} S^2: Kenmotsu, eta-Einstein but not Einstein.
// alpha = e^{-2t} - 2, beta = -e^{-2t}, r = 2 e^{-2t} - 6.
inline constexpr std::string_view kWarpedSphere = R"([manifold]
name = warped-sphere
dim = 3
coords = u, v, t

[domain]
u = 0.5 .. 2.5
v = 0 .. 6
t = -0.5 .. 0.5

[metric]
g_1_1 = exp(2*t)
g_2_2 = exp(2*t)*sin(u)^2
g_3_3 = 1

[structure]
phi_2_1 = 1/sin(u)
phi_1_2 = -sin(u)
xi = 0, 0, 1
eta = 0, 0, 1
)";

// R x_{e^t} (S^2 x S^2): five-dimensional, eta-Einstein, r = 4 e^{-2t} - 20.
inline constexpr std::string_view kWarpedSphereProduct = R"([manifold]
name = warped-sphere-product
dim = 5
coords = u1, v1, u2, v2, t

[domain]
u1 = 0.5 .. 2.5
v1 = 0 .. 6
u2 = 0.5 .. 2.5
v2 = 0 .. 6
t = -0.5 .. 0.5

[metric]
g_1_1 = exp(2*t)
g_2_2 = exp(2*t)*sin(u1)^2
g_3_3 = exp(2*t)
g_4_4 = exp(2*t)*sin(u2)^2
g_5_5 = 1

[structure]
phi_2_1 = 1/sin(u1)
phi_1_2 = -sin(u1)
phi_4_3 = 1/sin(u2)
phi_3_4 = -sin(u2)
xi = 0, 0, 0, 0, 1
eta = 0, 0, 0, 0, 1
)";

// Standard contact structure on R^3 with its Sasakian metric: a valid
// almost contact metric structure that is not Kenmotsu.
inline constexpr std::string_view kSasakian = R"([manifold]
name = sasakian-r3
dim = 3
coords = x, y, z

[domain]
x = -1 .. 1
y = -1 .. 1
z = -1 .. 1

[metric]
g_1_1 = 1/4 + y^2/4
g_1_3 = -y/4
g_2_2 = 1/4
g_3_3 = 1/4

[structure]
phi_2_1 = -1
phi_1_2 = 1
phi_3_2 = y
xi = 0, 0, 2
eta = -y/2, 0, 1/2
)";

// kenmotsu3 with the soliton field replaced by a multiple of xi.
inline std::string kenmotsu3_with(std::string_view v_line, std::string_view lambda_line = "lambda = 0") {
  std::string text(contactlab::find_fixture("kenmotsu3")->config);
  const auto v = text.find("V = ");
  text.replace(v, text.find('\n', v) - v, v_line);
  const auto l = text.find("lambda = ");
  text.replace(l, text.find('\n', l) - l, lambda_line);
  return text;
}

// kenmotsu3 with the parameter a of the soliton field set to value.
inline std::string kenmotsu3_a(std::string_view value) {
  std::string text(contactlab::find_fixture("kenmotsu3")->config);
  const auto at = text.find("a = 0.5");
  text.replace(at, 7, "a = " + std::string(value));
  return text;
}

// kenmotsu3 metric and xi/eta with a replaced phi block.
inline std::string kenmotsu3_phi(std::string_view phi_lines) {
  std::string text(contactlab::find_fixture("kenmotsu3")->config);
  const auto from = text.find("phi_2_1");
  const auto to = text.find("xi = ");
  text.replace(from, to - from, std::string(phi_lines));
  return text;
}

// Diagonal 3-metric with seeded random coefficients; generic, not Einstein.
inline contactlab::ManifoldSpec random_diagonal(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto c = [&] { return std::to_string(u(rng)); };
  std::string text = "[manifold]\nname = random-diagonal\ndim = 3\ncoords = x, y, z\n\n"
                     "[domain]\nx = -1 .. 1\ny = -1 .. 1\nz = -1 .. 1\n\n[metric]\n";
  text += "g_1_1 = exp(" + c() + "*x + " + c() + "*y*z + " + c() + "*z^2)\n";
  text += "g_2_2 = 2 + sin(" + c() + "*x + " + c() + "*y) + " + c() + "*z^2\n";
  text += "g_3_3 = cosh(" + c() + "*x*y) + " + c() + "*x^2 + 1\n";
  return contactlab::load_manifold(text);
}

inline contactlab::ManifoldSpec builtin(std::string_view name) {
  return contactlab::load_manifold(contactlab::find_fixture(name)->config);
}

}  // namespace testfx
