#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "contactlab/errors.hpp"
#include "contactlab/manifold.hpp"

namespace contactlab {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  int line = 0;
  std::vector<Entry> entries;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

class Loader {
 public:
  explicit Loader(std::string_view text) : text_(text) {}

  ManifoldSpec load() {
    read_sections();
    for (const auto& [name, sec] : sections_) {
      static const std::set<std::string> known = {"manifold", "params", "domain",
                                                  "metric",   "structure", "soliton"};
      if (!known.count(name)) throw ConfigError("unknown section [" + name + "]", sec.line);
    }
    spec_.source = std::string(text_);
    load_manifold_section();
    load_params();
    load_domain();
    load_metric();
    load_structure();
    load_soliton();
    return std::move(spec_);
  }

 private:
  void read_sections() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    int line = 0;
    Section* current = nullptr;
    std::set<std::string> keys;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find('#');
      std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError("malformed section header", line);
        std::string name = trim(s.substr(1, s.size() - 2));
        if (sections_.count(name)) throw ConfigError("duplicate section [" + name + "]", line);
        current = &sections_[name];
        current->line = line;
        current_name_ = name;
        continue;
      }
      if (!current) throw ConfigError("key/value pair outside of a section", line);
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
      Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
      if (e.key.empty()) throw ConfigError("empty key", line);
      if (e.value.empty()) throw ConfigError("empty value for '" + e.key + "'", line);
      for (const auto& prev : current->entries) {
        if (prev.key == e.key) throw ConfigError("duplicate key '" + e.key + "'", line);
      }
      current->entries.push_back(std::move(e));
    }
  }

  const Section* section(const std::string& name) const {
    auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
  }

  Expr expression(const Entry& e, const SymbolTable& symbols) const {
    try {
      return compile(e.value, symbols);
    } catch (const ParseError& err) {
      throw ConfigError("in '" + e.key + "': " + err.what(), e.line);
    }
  }

  std::vector<Expr> expression_list(const Entry& e, const SymbolTable& symbols) const {
    try {
      auto list = parse_list(tokenize(e.value), e.value);
      for (auto& x : list) x = bind(x, symbols);
      return list;
    } catch (const ParseError& err) {
      throw ConfigError("in '" + e.key + "': " + err.what(), e.line);
    }
  }

  double constant_value(const Entry& e, std::string_view text) const {
    SymbolTable symbols;
    for (const auto& [name, v] : spec_.params) symbols.parameters.push_back(name);
    Expr x;
    try {
      x = compile(text, symbols);
    } catch (const ParseError& err) {
      throw ConfigError("in '" + e.key + "': " + err.what(), e.line);
    }
    try {
      return evaluate(x, {}, spec_.params, 0).value();
    } catch (const Error& err) {
      throw ConfigError("in '" + e.key + "': " + err.what(), e.line);
    }
  }

  void load_manifold_section() {
    const Section* sec = section("manifold");
    if (!sec) throw ConfigError("missing [manifold] section", 0);
    int dim = -1;
    int dim_line = sec->line;
    bool have_coords = false;
    for (const auto& e : sec->entries) {
      if (e.key == "name") {
        spec_.name = e.value;
      } else if (e.key == "dim") {
        try {
          std::size_t used = 0;
          dim = std::stoi(e.value, &used);
          if (used != e.value.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw ConfigError("dim must be an integer", e.line);
        }
        if (dim < 1) throw ConfigError("dim must be positive", e.line);
        dim_line = e.line;
      } else if (e.key == "coords") {
        have_coords = true;
        spec_.coords = split_names(e.value);
        std::set<std::string> seen;
        for (const auto& c : spec_.coords) {
          if (!valid_identifier(c)) throw ConfigError("invalid coordinate name '" + c + "'", e.line);
          if (is_reserved_name(c)) {
            throw ConfigError("coordinate '" + c + "' shadows a reserved name", e.line);
          }
          if (!seen.insert(c).second) throw ConfigError("duplicate coordinate '" + c + "'", e.line);
        }
        coords_line_ = e.line;
      } else {
        throw ConfigError("unknown key '" + e.key + "' in [manifold]", e.line);
      }
    }
    if (!have_coords) throw ConfigError("[manifold] needs 'coords'", sec->line);
    if (dim < 0) dim = static_cast<int>(spec_.coords.size());
    if (dim != static_cast<int>(spec_.coords.size())) {
      throw ConfigError("dim " + std::to_string(dim) + " does not match " +
                            std::to_string(spec_.coords.size()) + " coordinates",
                        dim_line);
    }
    spec_.dim = dim;
  }

  void load_params() {
    const Section* sec = section("params");
    if (!sec) return;
    for (const auto& e : sec->entries) {
      if (!valid_identifier(e.key)) throw ConfigError("invalid parameter name '" + e.key + "'", e.line);
      if (is_reserved_name(e.key)) {
        throw ConfigError("parameter '" + e.key + "' shadows a reserved name", e.line);
      }
      for (const auto& c : spec_.coords) {
        if (c == e.key) throw ConfigError("parameter '" + e.key + "' shadows a coordinate", e.line);
      }
      const double v = constant_value(e, e.value);
      spec_.params[e.key] = v;
    }
  }

  int coordinate_index(const Entry& e) const {
    for (int k = 0; k < spec_.dim; ++k) {
      if (spec_.coords[k] == e.key) return k;
    }
    throw ConfigError("unknown coordinate '" + e.key + "' in [domain]", e.line);
  }

  void load_domain() {
    const Section* sec = section("domain");
    const int line = sec ? sec->line : 0;
    std::vector<bool> seen(spec_.dim, false);
    spec_.domain.assign(spec_.dim, Interval{});
    if (sec) {
      for (const auto& e : sec->entries) {
        const int k = coordinate_index(e);
        const auto dots = e.value.find("..");
        if (dots == std::string::npos) throw ConfigError("domain must read 'lo .. hi'", e.line);
        const double lo = constant_value(e, trim(std::string_view(e.value).substr(0, dots)));
        const double hi = constant_value(e, trim(std::string_view(e.value).substr(dots + 2)));
        if (!(lo <= hi)) throw ConfigError("empty interval for '" + e.key + "'", e.line);
        spec_.domain[k] = {lo, hi};
        seen[k] = true;
      }
    }
    for (int k = 0; k < spec_.dim; ++k) {
      if (!seen[k]) throw ConfigError("no domain given for coordinate '" + spec_.coords[k] + "'", line);
    }
  }

  // Parses "<prefix>_i_j" with 1-based indices.
  std::pair<int, int> matrix_key(const Entry& e, const std::string& prefix) const {
    const std::string head = prefix + "_";
    if (e.key.rfind(head, 0) != 0) {
      throw ConfigError("unknown key '" + e.key + "'", e.line);
    }
    const std::string rest = e.key.substr(head.size());
    const auto sep = rest.find('_');
    int i = 0;
    int j = 0;
    try {
      if (sep == std::string::npos) throw std::invalid_argument("no separator");
      std::size_t ui = 0;
      std::size_t uj = 0;
      i = std::stoi(rest.substr(0, sep), &ui);
      j = std::stoi(rest.substr(sep + 1), &uj);
      if (ui != sep || uj != rest.size() - sep - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("malformed component key '" + e.key + "' (expected " + prefix + "_i_j)", e.line);
    }
    if (i < 1 || j < 1 || i > spec_.dim || j > spec_.dim) {
      throw ConfigError("component index out of range in '" + e.key + "'", e.line);
    }
    return {i - 1, j - 1};
  }

  void load_metric() {
    const Section* sec = section("metric");
    if (!sec) throw ConfigError("missing [metric] section", 0);
    const int n = spec_.dim;
    const SymbolTable symbols = spec_.symbols();
    std::vector<std::optional<Expr>> given(n * n);
    std::vector<int> lines(n * n, 0);
    for (const auto& e : sec->entries) {
      auto [i, j] = matrix_key(e, "g");
      if (given[i * n + j]) throw ConfigError("duplicate metric component '" + e.key + "'", e.line);
      given[i * n + j] = expression(e, symbols);
      lines[i * n + j] = e.line;
    }
    spec_.metric.assign(n * n, Expr::constant(0.0));
    for (int i = 0; i < n; ++i) {
      if (!given[i * n + i]) {
        throw ConfigError("missing diagonal metric entry g_" + std::to_string(i + 1) + "_" +
                              std::to_string(i + 1),
                          sec->line);
      }
      for (int j = i; j < n; ++j) {
        const auto& upper = given[i * n + j];
        const auto& lower = given[j * n + i];
        if (upper && lower && i != j && !structurally_equal(*upper, *lower)) {
          throw ConfigError("g_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                " and its mirror differ",
                            lines[j * n + i]);
        }
        const Expr chosen = upper ? *upper : (lower ? *lower : Expr::constant(0.0));
        spec_.metric[i * n + j] = chosen;
        spec_.metric[j * n + i] = chosen;
      }
    }
  }

  void load_structure() {
    const Section* sec = section("structure");
    if (!sec) return;
    const int n = spec_.dim;
    if (n % 2 == 0 || n < 3) {
      throw ConfigError("a contact structure needs odd dimension 2n+1 >= 3, chart has dim " +
                            std::to_string(n),
                        sec->line);
    }
    const SymbolTable symbols = spec_.symbols();
    StructureSpec st;
    st.phi.assign(n * n, Expr::constant(0.0));
    for (const auto& e : sec->entries) {
      if (e.key == "xi" || e.key == "eta") {
        auto list = expression_list(e, symbols);
        if (static_cast<int>(list.size()) != n) {
          throw ConfigError("'" + e.key + "' needs " + std::to_string(n) + " components", e.line);
        }
        (e.key == "xi" ? st.xi : st.eta) = std::move(list);
      } else {
        auto [i, j] = matrix_key(e, "phi");
        st.phi[i * n + j] = expression(e, symbols);
      }
    }
    if (st.xi.empty()) throw ConfigError("[structure] needs 'xi'", sec->line);
    if (st.eta.empty()) throw ConfigError("[structure] needs 'eta'", sec->line);
    spec_.structure = std::move(st);
  }

  void load_soliton() {
    const Section* sec = section("soliton");
    if (!sec) return;
    if (!spec_.structure) {
      throw ConfigError("[soliton] needs a [structure] block (S* is defined by phi)", sec->line);
    }
    const SymbolTable symbols = spec_.symbols();
    SolitonSpec sol;
    bool have_v = false;
    bool have_f = false;
    for (const auto& e : sec->entries) {
      if (e.key == "V") {
        sol.vector_field = expression_list(e, symbols);
        if (static_cast<int>(sol.vector_field.size()) != spec_.dim) {
          throw ConfigError("'V' needs " + std::to_string(spec_.dim) + " components", e.line);
        }
        have_v = true;
      } else if (e.key == "f") {
        sol.potential = expression(e, symbols);
        have_f = true;
      } else if (e.key == "lambda") {
        if (e.value != "unknown") sol.lambda = expression(e, symbols);
      } else {
        throw ConfigError("unknown key '" + e.key + "' in [soliton]", e.line);
      }
    }
    if (have_v == have_f) {
      throw ConfigError("[soliton] needs exactly one of 'V' or 'f'", sec->line);
    }
    sol.kind = have_v ? SolitonSpec::Kind::vector_field : SolitonSpec::Kind::gradient;
    spec_.soliton = std::move(sol);
  }

  std::string_view text_;
  std::map<std::string, Section> sections_;
  std::string current_name_;
  int coords_line_ = 0;
  ManifoldSpec spec_;
};

}  // namespace

ManifoldSpec load_manifold(std::string_view text) { return Loader(text).load(); }

ManifoldSpec load_manifold_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_manifold(ss.str());
}

}  // namespace contactlab
