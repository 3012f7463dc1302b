#include "isolab/obj_io.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace isolab {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void export_obj(const SampledField<ImPoint>& field, const std::string& path) {
  const ConformalGrid& g = field.grid;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  for (int q = 0; q < g.nv; ++q)
    for (int p = 0; p < g.nu; ++p) {
      const ImPoint& v = field.at(p, q);
      os << "v " << format_g17(v.x1) << ' ' << format_g17(v.x2) << ' ' << format_g17(v.x3)
         << '\n';
    }
  for (int q = 0; q + 1 < g.nv; ++q)
    for (int p = 0; p + 1 < g.nu; ++p) {
      int a = g.index(p, q) + 1;
      int b = g.index(p + 1, q) + 1;
      int c = g.index(p + 1, q + 1) + 1;
      int d = g.index(p, q + 1) + 1;
      os << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
    }
  if (!os) throw Error("write failure on '" + path + "'");
}

ObjData import_obj(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  ObjData data;
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) {
      ImPoint p;
      if (std::sscanf(line.c_str() + 2, "%lf %lf %lf", &p.x1, &p.x2, &p.x3) != 3)
        throw Error("malformed vertex line in '" + path + "'");
      data.vertices.push_back(p);
    } else if (line.rfind("f ", 0) == 0) {
      std::array<int, 4> f{};
      if (std::sscanf(line.c_str() + 2, "%d %d %d %d", &f[0], &f[1], &f[2], &f[3]) != 4)
        throw Error("malformed face line in '" + path + "'");
      data.quads.push_back(f);
    }
  }
  return data;
}

void write_report_csv(const std::vector<ResidualReport>& reports, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << "name,class,max,mean,spacing,order_estimate\n";
  for (const ResidualReport& r : reports) {
    os << r.name << ',' << tol_class_name(r.tol_class) << ',' << format_g17(r.max) << ','
       << format_g17(r.mean) << ',' << format_g17(r.spacing) << ',';
    if (r.order_estimate) os << format_g17(*r.order_estimate);
    os << '\n';
  }
}

std::vector<ResidualReport> read_report_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(is, line) || line != "name,class,max,mean,spacing,order_estimate")
    throw Error("unexpected report CSV header in '" + path + "'");
  std::vector<ResidualReport> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name, cls, maxs, means, spacings, orders;
    std::getline(ls, name, ',');
    std::getline(ls, cls, ',');
    std::getline(ls, maxs, ',');
    std::getline(ls, means, ',');
    std::getline(ls, spacings, ',');
    std::getline(ls, orders, ',');
    ResidualReport r;
    r.name = name;
    r.tol_class = tol_class_from_name(cls);
    r.max = std::strtod(maxs.c_str(), nullptr);
    r.mean = std::strtod(means.c_str(), nullptr);
    r.spacing = std::strtod(spacings.c_str(), nullptr);
    if (!orders.empty()) r.order_estimate = std::strtod(orders.c_str(), nullptr);
    out.push_back(r);
  }
  return out;
}

}  // namespace isolab
