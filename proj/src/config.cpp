#include "isolab/config.hpp"

#include <algorithm>
#include <fstream>

#include "isolab/analytic.hpp"
#include "isolab/expr.hpp"
#include "json.hpp"

namespace isolab {

using nlohmann::json;

const char* transform_kind_name(TransformKind k) {
  switch (k) {
    case TransformKind::christoffel: return "christoffel";
    case TransformKind::goursat: return "goursat";
    case TransformKind::darboux: return "darboux";
    case TransformKind::minimal_darboux: return "minimal-darboux";
    case TransformKind::verify_bianchi: return "verify-bianchi";
    case TransformKind::verify_main: return "verify-main";
    case TransformKind::curved_flat: return "curved-flat";
  }
  return "?";
}

MobiusMap MobiusSpec::build() const {
  if (use_iota) return iota();
  if (inversion_center) return MobiusMap::inversion(*inversion_center);
  if (coefficients)
    return {(*coefficients)[0], (*coefficients)[1], (*coefficients)[2], (*coefficients)[3]};
  throw ValidationError("mu: one of \"iota\", \"inversion_center\", \"coefficients\" required");
}

namespace {

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (known) continue;
    std::string best;
    int best_d = 1000;
    for (const char* k : allowed) {
      int d = edit_distance(it.key(), k);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    std::string msg = where + ": unknown key \"" + it.key() + "\"";
    if (best_d <= 3) msg += " (did you mean \"" + best + "\"?)";
    msg += "; valid keys:";
    for (const char* k : allowed) msg += std::string(" ") + k;
    throw ValidationError(msg);
  }
}

double get_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  if (!obj[key].is_number()) throw ValidationError(where + ": \"" + key + "\" must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  if (!obj[key].is_number_integer())
    throw ValidationError(where + ": \"" + key + "\" must be an integer");
  return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  if (!obj[key].is_string()) throw ValidationError(where + ": \"" + key + "\" must be a string");
  return obj[key].get<std::string>();
}

// Complex values come in as [re, im], quaternions as [w, x, y, z].
Complex get_complex(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  const json& a = obj[key];
  if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
    throw ValidationError(where + ": \"" + key + "\" must be [re, im]");
  return {a[0].get<double>(), a[1].get<double>()};
}

ImPoint get_point(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  const json& a = obj[key];
  if (!a.is_array() || a.size() != 3)
    throw ValidationError(where + ": \"" + key + "\" must be [x, y, z]");
  for (const auto& e : a)
    if (!e.is_number()) throw ValidationError(where + ": \"" + key + "\" must be numeric");
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

Quaternion get_quaternion(const json& a, const std::string& where) {
  if (!a.is_array() || a.size() != 4)
    throw ValidationError(where + ": quaternion must be [w, x, y, z]");
  for (const auto& e : a)
    if (!e.is_number()) throw ValidationError(where + ": quaternion must be numeric");
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>()};
}

SurfaceSpec parse_surface(const json& j) {
  if (!j.is_object()) throw ValidationError("surface: must be an object");
  check_keys(j, "surface", {"catalog", "weierstrass"});
  SurfaceSpec s;
  if (j.contains("catalog") == j.contains("weierstrass"))
    throw ValidationError("surface: exactly one of \"catalog\" or \"weierstrass\" required");
  if (j.contains("catalog")) {
    s.catalog = get_string(j, "surface", "catalog");
    catalog_surface(s.catalog);  // validates the name
  } else {
    const json& w = j["weierstrass"];
    if (!w.is_object()) throw ValidationError("surface.weierstrass: must be an object");
    check_keys(w, "surface.weierstrass", {"g", "h"});
    s.g = get_string(w, "surface.weierstrass", "g");
    s.h = get_string(w, "surface.weierstrass", "h");
    parse_expr(s.g);  // surface errors early, with positions
    parse_expr(s.h);
  }
  return s;
}

ConformalGrid parse_grid(const json& j) {
  if (!j.is_object()) throw ValidationError("grid: must be an object");
  check_keys(j, "grid", {"u0", "v0", "du", "dv", "nu", "nv"});
  ConformalGrid g;
  g.u0 = get_number(j, "grid", "u0");
  g.v0 = get_number(j, "grid", "v0");
  g.du = get_number(j, "grid", "du");
  g.dv = get_number(j, "grid", "dv");
  g.nu = get_int(j, "grid", "nu");
  g.nv = get_int(j, "grid", "nv");
  if (g.nu < 3 || g.nv < 3) throw ValidationError("grid: \"nu\" and \"nv\" must be >= 3");
  if (g.du <= 0 || g.dv <= 0) throw ValidationError("grid: \"du\" and \"dv\" must be positive");
  return g;
}

MobiusSpec parse_mobius(const json& j) {
  if (!j.is_object()) throw ValidationError("transform.mu: must be an object");
  check_keys(j, "transform.mu", {"iota", "inversion_center", "coefficients"});
  MobiusSpec m;
  int given = 0;
  if (j.contains("iota")) {
    if (!j["iota"].is_boolean()) throw ValidationError("transform.mu: \"iota\" must be boolean");
    m.use_iota = j["iota"].get<bool>();
    if (m.use_iota) ++given;
  }
  if (j.contains("inversion_center")) {
    m.inversion_center = get_point(j, "transform.mu", "inversion_center");
    ++given;
  }
  if (j.contains("coefficients")) {
    const json& c = j["coefficients"];
    if (!c.is_array() || c.size() != 4)
      throw ValidationError("transform.mu: \"coefficients\" must be four quaternions");
    std::array<Quaternion, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = get_quaternion(c[i], "transform.mu.coefficients");
    m.coefficients = q;
    ++given;
  }
  if (given != 1)
    throw ValidationError(
        "transform.mu: exactly one of \"iota\", \"inversion_center\", \"coefficients\" required");
  return m;
}

TransformSpec parse_transform(const json& j) {
  if (!j.is_object()) throw ValidationError("transform: must be an object");
  check_keys(j, "transform", {"kind", "t", "seed", "g_hat_seed", "mu"});
  TransformSpec t;
  std::string kind = get_string(j, "transform", "kind");
  static const std::pair<const char*, TransformKind> kinds[] = {
      {"christoffel", TransformKind::christoffel},
      {"goursat", TransformKind::goursat},
      {"darboux", TransformKind::darboux},
      {"minimal-darboux", TransformKind::minimal_darboux},
      {"verify-bianchi", TransformKind::verify_bianchi},
      {"verify-main", TransformKind::verify_main},
      {"curved-flat", TransformKind::curved_flat}};
  bool found = false;
  for (const auto& [name, k] : kinds)
    if (kind == name) {
      t.kind = k;
      found = true;
    }
  if (!found) {
    std::string msg = "transform: unknown kind \"" + kind + "\"; valid kinds:";
    for (const auto& [name, k] : kinds) msg += std::string(" ") + name;
    throw ValidationError(msg);
  }

  bool needs_t = t.kind != TransformKind::christoffel && t.kind != TransformKind::goursat;
  if (needs_t) {
    t.t = get_number(j, "transform", "t");
    if (t.t == 0.0) throw ValidationError("transform: \"t\" must be nonzero");
  } else if (j.contains("t")) {
    throw ValidationError("transform: \"t\" does not apply to kind \"" + kind + "\"");
  }

  bool needs_mu = t.kind == TransformKind::goursat || t.kind == TransformKind::verify_main;
  if (needs_mu) {
    if (!j.contains("mu")) throw ValidationError("transform: missing \"mu\"");
    t.mu = parse_mobius(j["mu"]);
  } else if (j.contains("mu")) {
    throw ValidationError("transform: \"mu\" does not apply to kind \"" + kind + "\"");
  }

  bool needs_seed = t.kind == TransformKind::darboux || t.kind == TransformKind::verify_bianchi ||
                    t.kind == TransformKind::verify_main;
  if (needs_seed) t.seed = get_point(j, "transform", "seed");
  else if (j.contains("seed"))
    throw ValidationError("transform: \"seed\" does not apply to kind \"" + kind + "\"");

  bool needs_ghat = t.kind == TransformKind::minimal_darboux ||
                    t.kind == TransformKind::curved_flat;
  if (needs_ghat) t.g_hat_seed = get_complex(j, "transform", "g_hat_seed");
  else if (j.contains("g_hat_seed"))
    throw ValidationError("transform: \"g_hat_seed\" does not apply to kind \"" + kind + "\"");
  return t;
}

OutputSpec parse_output(const json& j) {
  if (!j.is_object()) throw ValidationError("output: must be an object");
  check_keys(j, "output", {"obj", "csv"});
  OutputSpec o;
  if (j.contains("obj")) o.obj = get_string(j, "output", "obj");
  if (j.contains("csv")) o.csv = get_string(j, "output", "csv");
  return o;
}

NumericSpec parse_numeric(const json& j) {
  if (!j.is_object()) throw ValidationError("numeric: must be an object");
  check_keys(j, "numeric", {"refine", "substeps", "tolerances"});
  NumericSpec n;
  if (j.contains("refine")) {
    n.refine = get_int(j, "numeric", "refine");
    if (n.refine < 0 || n.refine > 4)
      throw ValidationError("numeric: \"refine\" must be in [0, 4]");
  }
  if (j.contains("substeps")) {
    n.substeps = get_int(j, "numeric", "substeps");
    if (n.substeps < 0) throw ValidationError("numeric: \"substeps\" must be >= 0");
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ValidationError("numeric.tolerances: must be an object");
    check_keys(t, "numeric.tolerances", {"fd", "ode", "algebraic"});
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!it.value().is_number())
        throw ValidationError("numeric.tolerances: values must be numbers");
      n.tolerances[it.key()] = it.value().get<double>();
    }
  }
  return n;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");
  check_keys(j, "config", {"surface", "grid", "transform", "output", "numeric"});
  RunConfig c;
  if (!j.contains("surface")) throw ValidationError("config: missing \"surface\"");
  c.surface = parse_surface(j["surface"]);
  if (!j.contains("grid")) throw ValidationError("config: missing \"grid\"");
  c.grid = parse_grid(j["grid"]);
  if (!j.contains("transform")) throw ValidationError("config: missing \"transform\"");
  c.transform = parse_transform(j["transform"]);
  if (j.contains("output")) c.output = parse_output(j["output"]);
  if (j.contains("numeric")) c.numeric = parse_numeric(j["numeric"]);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

}  // namespace isolab
