#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "contactlab/suite.hpp"

namespace contactlab {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann's object type is an ordered std::map, so keys come out sorted.
void emit(const json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        emit(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        emit(j[k], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

json sectional_json(const SectionalSummary& s, bool constant, double kappa) {
  return {{"planes", s.planes}, {"min", s.min},           {"max", s.max},
          {"mean", s.mean},     {"spread", s.spread()},   {"constant", constant},
          {"kappa", constant ? json(kappa) : json(nullptr)}};
}

json classification_json(const ClassificationReport& c) {
  json out;
  out["einstein"] = {{"flag", c.einstein},
                     {"residual", c.einstein_residual},
                     {"constant", c.einstein_constant},
                     {"spread", c.einstein_spread}};
  out["ricci_flat"] = {{"flag", c.ricci_flat}, {"residual", c.ricci_norm}};
  out["sectional"] = sectional_json(c.sectional, c.constant_curvature, c.curvature);
  out["structure"] = c.has_structure;
  if (c.has_structure) {
    out["kenmotsu"] = {{"flag", c.kenmotsu}, {"residual", c.kenmotsu_residual}};
    out["kenmotsu_einstein_residual"] = c.kenmotsu_einstein_residual.value_or(NAN);
  }
  if (c.eta_einstein) {
    const auto& e = *c.eta_einstein;
    out["eta_einstein"] = {{"flag", e.holds},          {"residual", e.residual},
                           {"alpha_min", e.alpha_min}, {"alpha_max", e.alpha_max},
                           {"beta_min", e.beta_min},   {"beta_max", e.beta_max},
                           {"sum_defect", e.sum_defect}};
  }
  if (c.soliton) {
    const auto& s = *c.soliton;
    out["soliton"] = {
        {"kind", s.kind == SolitonSpec::Kind::vector_field ? "vector_field" : "gradient"},
        {"residual", s.residual},
        {"lambda_hat", s.lambda_hat},
        {"lambda_spread", s.lambda_spread},
        {"label", s.label},
        {"collinearity_defect", s.collinearity},
        {"field_norm", s.field_norm},
        {"collinear", s.collinear}};
  }
  return out;
}

}  // namespace

std::string config_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string report_json(const SuiteResult& r) {
  json root;
  root["version"] = std::string(kVersion);
  root["manifold"] = r.manifold;
  root["digest"] = r.digest;
  root["seed"] = r.options.seed;
  root["points"] = r.options.points;
  root["tol"] = r.options.tol;
  root["order"] = r.options.order;
  root["verdict"] = r.verdict();
  root["checks"] = json::array();
  for (const auto& c : r.checks) {
    root["checks"].push_back({{"name", c.name},
                              {"tag", c.tag},
                              {"points", c.points},
                              {"max_residual", c.max_residual},
                              {"tolerance", c.tolerance},
                              {"asserted", c.asserted},
                              {"pass", c.pass}});
  }
  root["skipped"] = json::array();
  for (const auto& s : r.skipped) root["skipped"].push_back({{"name", s.name}, {"reason", s.reason}});
  if (r.classification) root["classification"] = classification_json(*r.classification);
  std::string out;
  emit(root, out, 0);
  out += '\n';
  return out;
}

std::string summary_text(const SuiteResult& r) {
  std::ostringstream os;
  char line[256];
  os << "manifold " << r.manifold << "  digest " << r.digest << "  points " << r.options.points
     << "  seed " << r.options.seed << "  order " << r.options.order << "\n";
  for (const auto& c : r.checks) {
    const char* status = c.asserted ? (c.pass ? "PASS" : "FAIL") : (c.pass ? "holds (reported)"
                                                                            : "fails (reported)");
    std::snprintf(line, sizeof line, "%-10s %-26s max %-9.2e tol %.0e  %s\n", c.tag.c_str(),
                  c.name.c_str(), c.max_residual, c.tolerance, status);
    os << line;
  }
  // Skipped checks grouped by reason, in first-seen order.
  std::vector<std::pair<std::string, std::string>> groups;
  for (const auto& s : r.skipped) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&s](const auto& g) { return g.first == s.reason; });
    if (it == groups.end()) {
      groups.emplace_back(s.reason, s.name);
    } else {
      it->second += ", " + s.name;
    }
  }
  for (const auto& [reason, names] : groups) os << "skipped (" << reason << "): " << names << "\n";
  if (r.classification) {
    const auto& c = *r.classification;
    std::snprintf(line, sizeof line, "Einstein %s (S - (r/dim) g: %.2e, r/dim = %.6g)\n",
                  c.einstein ? "yes" : "no", c.einstein_residual, c.einstein_constant);
    os << line;
    if (c.ricci_flat) os << "Ricci-flat\n";
    if (c.constant_curvature) {
      std::snprintf(line, sizeof line, "constant sectional curvature %.9g (spread %.2e over %zu planes)\n",
                    c.curvature, c.sectional.spread(), c.sectional.planes);
    } else {
      std::snprintf(line, sizeof line, "sectional curvature in [%.6g, %.6g] over %zu planes\n",
                    c.sectional.min, c.sectional.max, c.sectional.planes);
    }
    os << line;
    if (c.has_structure) {
      std::snprintf(line, sizeof line, "Kenmotsu %s (residual %.2e)\n", c.kenmotsu ? "yes" : "no",
                    c.kenmotsu_residual);
      os << line;
    }
    if (c.soliton) {
      std::snprintf(line, sizeof line, "soliton residual %.2e, lambda spread %.2e (%s), V %s xi\n",
                    c.soliton->residual, c.soliton->lambda_spread, c.soliton->label.c_str(),
                    c.soliton->collinear ? "parallel to" : "not parallel to");
      os << line;
    }
  }
  os << "verdict " << r.verdict() << "\n";
  return os.str();
}

}  // namespace contactlab
