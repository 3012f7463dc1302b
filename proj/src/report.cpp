#include "isolab/report.hpp"

#include <cmath>
#include <limits>

#include "isolab/errors.hpp"

namespace isolab {

const char* tol_class_name(TolClass c) {
  switch (c) {
    case TolClass::fd: return "fd";
    case TolClass::ode: return "ode";
    case TolClass::algebraic: return "algebraic";
  }
  return "fd";
}

TolClass tol_class_from_name(const std::string& name) {
  if (name == "fd") return TolClass::fd;
  if (name == "ode") return TolClass::ode;
  if (name == "algebraic") return TolClass::algebraic;
  throw ValidationError("unknown tolerance class '" + name + "'");
}

ResidualReport make_report(std::string name, std::span<const double> values, double spacing,
                           TolClass cls) {
  ResidualReport r;
  r.name = std::move(name);
  r.spacing = spacing;
  r.tol_class = cls;
  double sum = 0;
  for (double v : values) {
    double a = std::abs(v);
    r.max = std::max(r.max, a);
    sum += a;
  }
  r.mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  return r;
}

double order_from_pair(double coarse, double fine) {
  if (fine <= 0 || coarse <= 0) return std::numeric_limits<double>::quiet_NaN();
  return std::log2(coarse / fine);
}

}  // namespace isolab
