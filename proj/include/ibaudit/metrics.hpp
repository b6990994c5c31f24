#pragma once

#include <optional>
#include <vector>

namespace ibaudit {

// Per-class F1 with the exact macro identity: macro_f1 is computed as
// (f1_depressed + f1_control) / 2, never separately.
struct ClassF1 {
  double macro_f1 = 0.0;
  double f1_depressed = 0.0;
  double f1_control = 0.0;
};

// gold/pred hold class indices (0 = Depressed, 1 = Control). A class with
// no predicted or no actual members contributes F1 = 0. Throws
// ValidationError on length mismatch or empty input.
ClassF1 f1_scores(const std::vector<int>& gold, const std::vector<int>& pred);

// Dev/test scores of one trained variant; `test` is absent when the split
// has no test portion, `fold_dev` holds per-fold dev scores in k-fold mode
// and `dev` is then their per-class average.
struct F1Report {
  ClassF1 dev;
  std::optional<ClassF1> test;
  std::vector<ClassF1> fold_dev;
};

// Per-class mean of fold scores; the macro is re-derived from the averaged
// class scores so the macro identity stays exact.
ClassF1 average_f1(const std::vector<ClassF1>& parts);

}  // namespace ibaudit
