#pragma once

#include <string>
#include <vector>

namespace ellipsurf::cli {

/// One row of the quadform1 comparison.
struct Quadform1Row {
  std::vector<double> q;
  double alpha = 0.0;
  double reference = 0.0;  // sqrt_qform_moment
  double corrected = 0.0;
  double as_printed = 0.0;
  bool as_printed_divergent = false;
  std::string note;
};

/// q in {(1), (1,1), (1,2)} with alpha = default_alpha(q) and half of it.
std::vector<Quadform1Row> quadform1_rows();

/// Markdown report comparing both alpha representations as printed against
/// the corrected forms. Output is deterministic.
std::string discrepancy_report();

}  // namespace ellipsurf::cli
