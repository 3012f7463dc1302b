#pragma once

#include <array>
#include <string>
#include <vector>

#include "isolab/grid.hpp"
#include "isolab/report.hpp"

namespace isolab {

// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_g17(double x);

// Vertices in row-major node order, quad faces over grid cells, LF endings.
void export_obj(const SampledField<ImPoint>& field, const std::string& path);

struct ObjData {
  std::vector<ImPoint> vertices;
  std::vector<std::array<int, 4>> quads;  // 1-based indices as written
};
ObjData import_obj(const std::string& path);

// Report CSV: name,class,max,mean,spacing,order_estimate (order blank when
// no refinement ran).
void write_report_csv(const std::vector<ResidualReport>& reports, const std::string& path);
std::vector<ResidualReport> read_report_csv(const std::string& path);

}  // namespace isolab
