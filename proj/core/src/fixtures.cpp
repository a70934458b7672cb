#include "contactlab/fixtures.hpp"

#include <array>

namespace contactlab {

namespace {

constexpr std::string_view kKenmotsu3 = R"(# Kenmotsu 3-manifold N x I with a *-Ricci soliton
[manifold]
name = kenmotsu3
dim = 3
coords = x, y, z

[params]
a = 0.5

[domain]
x = -2 .. 2
y = -2 .. 2
z = -1 .. 1

[metric]
g_1_1 = exp(2*z)
g_2_2 = exp(2*z)
g_3_3 = 1

[structure]
phi_2_1 = 1
phi_1_2 = -1
xi = 0, 0, 1
eta = 0, 0, 1

[soliton]
V = (1 - a)*x, (1 - a)*y, a
lambda = 0
)";

constexpr std::string_view kKenmotsu3Gradient = R"(# The same Kenmotsu structure with a gradient almost *-Ricci soliton
[manifold]
name = kenmotsu3-gradient
dim = 3
coords = x, y, z

[domain]
x = -2 .. 2
y = -2 .. 2
z = -1 .. 1

[metric]
g_1_1 = exp(2*z)
g_2_2 = exp(2*z)
g_3_3 = 1

[structure]
phi_2_1 = 1
phi_1_2 = -1
xi = 0, 0, 1
eta = 0, 0, 1

[soliton]
f = -x*exp(z) + z
lambda = x*exp(z)
)";

constexpr std::string_view kKenmotsu5 = R"(# Warped product R x_{c e^t} R^4, Kenmotsu of dimension 5
[manifold]
name = kenmotsu5-warped
dim = 5
coords = x1, y1, x2, y2, t

[params]
c = 1
a = 2

[domain]
x1 = -1 .. 1
y1 = -1 .. 1
x2 = -1 .. 1
y2 = -1 .. 1
t = -0.5 .. 0.5

[metric]
g_1_1 = c^2*exp(2*t)
g_2_2 = c^2*exp(2*t)
g_3_3 = c^2*exp(2*t)
g_4_4 = c^2*exp(2*t)
g_5_5 = 1

[structure]
phi_2_1 = 1
phi_1_2 = -1
phi_4_3 = 1
phi_3_4 = -1
xi = 0, 0, 0, 0, 1
eta = 0, 0, 0, 0, 1

[soliton]
V = (1 - a)*x1, (1 - a)*y1, (1 - a)*x2, (1 - a)*y2, a
lambda = 0
)";

constexpr std::string_view kFlat = R"(# Euclidean R^3 carrying the Kenmotsu (phi, xi, eta) of kenmotsu3; not Kenmotsu
[manifold]
name = flat-control
dim = 3
coords = x, y, z

[domain]
x = -2 .. 2
y = -2 .. 2
z = -1 .. 1

[metric]
g_1_1 = 1
g_2_2 = 1
g_3_3 = 1

[structure]
phi_2_1 = 1
phi_1_2 = -1
xi = 0, 0, 1
eta = 0, 0, 1
)";

constexpr std::string_view kSphere = R"(# Round unit 2-sphere, no contact structure
[manifold]
name = sphere2-control
dim = 2
coords = th, ph

[domain]
th = 0.3 .. 2.8
ph = 0 .. 6

[metric]
g_1_1 = 1
g_2_2 = sin(th)^2
)";

constexpr std::array<Fixture, 5> kFixtures = {{
    {"kenmotsu3", "3-dim Kenmotsu warped product with a *-Ricci soliton, lambda = 0", kKenmotsu3},
    {"kenmotsu3-gradient", "3-dim Kenmotsu with f = -x e^z + z, lambda = x e^z",
     kKenmotsu3Gradient},
    {"kenmotsu5-warped", "5-dim Kenmotsu warped product with a *-Ricci soliton", kKenmotsu5},
    {"flat-control", "flat R^3 with a non-Kenmotsu structure (negative control)", kFlat},
    {"sphere2-control", "unit 2-sphere without structure (curvature +1 control)", kSphere},
}};

}  // namespace

std::span<const Fixture> builtin_fixtures() { return kFixtures; }

const Fixture* find_fixture(std::string_view name) {
  for (const auto& f : kFixtures) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace contactlab
