#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contactlab/expr.hpp"
#include "contactlab/tensor.hpp"

namespace contactlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using Point = std::vector<double>;

// Almost contact data given componentwise.  phi is row-major: phi[i * dim + j]
// is phi^i_j, so column j holds the components of phi(d_j).
struct StructureSpec {
  std::vector<Expr> phi;
  std::vector<Expr> xi;
  std::vector<Expr> eta;
};

struct SolitonSpec {
  enum class Kind { vector_field, gradient };

  Kind kind = Kind::vector_field;
  std::vector<Expr> vector_field;  // kind == vector_field
  Expr potential;                  // kind == gradient
  std::optional<Expr> lambda;      // nullopt: "unknown", recovered numerically
};

struct ManifoldSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<Expr> metric;  // dim * dim, symmetric
  std::optional<StructureSpec> structure;
  std::optional<SolitonSpec> soliton;
  ParamTable params;
  std::vector<Interval> domain;
  std::string source;  // config text the spec was loaded from

  // n for dim = 2n + 1.
  int contact_n() const { return (dim - 1) / 2; }
  SymbolTable symbols() const;
};

// Minimum |det g| accepted at a point.
inline constexpr double kDeterminantThreshold = 1e-12;

// Jet-valued metric components (a (0,2) tensor), mirrored from the upper
// triangle.
JetTensor metric_at(const ManifoldSpec& m, std::span<const double> p, int order);

// Jet-valued inverse (a (2,0) tensor) by Gauss-Jordan elimination in jet
// arithmetic.  Throws GeometryError when |det g(p)| <= 1e-12.
JetTensor inverse_metric_at(const JetTensor& g);

// Determinant of the constant part of a square (0,2) or (2,0) tensor.
double determinant(const RealTensor& a);

// Vector / covector / scalar field evaluation helpers.
JetTensor evaluate_vector(const std::vector<Expr>& components, const ManifoldSpec& m,
                          std::span<const double> p, int order);
JetTensor evaluate_covector(const std::vector<Expr>& components, const ManifoldSpec& m,
                            std::span<const double> p, int order);

// SplitMix64 (Steele, Lea, Flood 2014).  next() advances the state by the
// golden-ratio increment 0x9e3779b97f4a7c15 and returns the mixed value.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Deterministic uniform samples in the domain box, each interval shrunk by
// 1% at both ends.  Coordinates are drawn in order, point after point.
std::vector<Point> sample_points(std::span<const Interval> domain, std::size_t count,
                                 std::uint64_t seed);

// Parses and validates the sectioned key/value config format.
ManifoldSpec load_manifold(std::string_view text);
ManifoldSpec load_manifold_file(const std::string& path);

}  // namespace contactlab
