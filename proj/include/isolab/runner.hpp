#pragma once

#include <string>
#include <vector>

#include "isolab/config.hpp"
#include "isolab/grid.hpp"
#include "isolab/report.hpp"

namespace isolab {

struct RunArtifacts {
  std::vector<std::pair<std::string, SampledField<ImPoint>>> surfaces;
  std::vector<ResidualReport> reports;
};

// One pipeline execution at the given resolution; no file output.
RunArtifacts execute(const RunConfig& config, const ConformalGrid& grid);

struct RunOutcome {
  RunArtifacts artifacts;
  bool ok = false;
  std::vector<std::string> lines;  // per-report summary
};

// Full run: base execution, refinement reruns for order estimates, OBJ/CSV
// export, tolerance verdict (exit status contract: ok iff every report is
// within its class tolerance).
RunOutcome run(const RunConfig& config);

double default_tolerance(TolClass cls);
double tolerance_for(const RunConfig& config, TolClass cls);

}  // namespace isolab
