#pragma once

#include <string>
#include <vector>

namespace hspin::selftest {

struct CheckResult {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Runs the cross-module invariant suite. quick trims spins and seed counts
// to stay under a few seconds. quantizer_fault_scale != 1 corrupts the
// H-quantizer coefficients for the duration of the run (test hook; the
// round-trip check is expected to catch it).
std::vector<CheckResult> run(bool quick, double quantizer_fault_scale = 1.0);

}  // namespace hspin::selftest
