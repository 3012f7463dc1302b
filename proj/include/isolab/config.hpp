#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "isolab/grid.hpp"
#include "isolab/quaternion.hpp"

namespace isolab {

enum class TransformKind {
  christoffel,
  goursat,
  darboux,
  minimal_darboux,
  verify_bianchi,
  verify_main,
  curved_flat,
};

const char* transform_kind_name(TransformKind k);

struct SurfaceSpec {
  std::string catalog;              // catalog surface name, or
  std::string g, h;                 // Weierstrass expression strings
  bool is_weierstrass() const { return catalog.empty(); }
};

struct MobiusSpec {
  bool use_iota = false;
  std::optional<ImPoint> inversion_center;
  std::optional<std::array<Quaternion, 4>> coefficients;

  MobiusMap build() const;
};

struct TransformSpec {
  TransformKind kind = TransformKind::christoffel;
  double t = 0;
  ImPoint seed;
  Complex g_hat_seed;
  MobiusSpec mu;
};

struct OutputSpec {
  std::string obj;  // base path; per-surface suffixes are appended
  std::string csv;
};

struct NumericSpec {
  int refine = 0;                         // extra half-spacing reruns
  int substeps = 0;                       // 0 = automatic (step <= 0.01)
  std::map<std::string, double> tolerances;  // per-class overrides
};

struct RunConfig {
  SurfaceSpec surface;
  ConformalGrid grid;
  TransformSpec transform;
  OutputSpec output;
  NumericSpec numeric;
};

// Strict JSON: unknown keys are rejected with a suggestion list; invariant
// violations name the offending field.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace isolab
