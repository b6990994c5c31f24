#include "ibaudit/metrics.hpp"

#include "ibaudit/errors.hpp"
#include "ibaudit/gcn.hpp"

namespace ibaudit {

ClassF1 f1_scores(const std::vector<int>& gold, const std::vector<int>& pred) {
  if (gold.size() != pred.size()) throw ValidationError("f1_scores: length mismatch");
  if (gold.empty()) throw ValidationError("f1_scores: empty input");

  // confusion[g][p]
  long long confusion[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if ((gold[i] != 0 && gold[i] != 1) || (pred[i] != 0 && pred[i] != 1)) {
      throw ValidationError("f1_scores: class index out of range");
    }
    ++confusion[gold[i]][pred[i]];
  }

  const auto f1_of = [&](int cls) {
    const long long tp = confusion[cls][cls];
    const long long fp = confusion[1 - cls][cls];
    const long long fn = confusion[cls][1 - cls];
    if (tp + fp == 0 || tp + fn == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
  };

  ClassF1 out;
  out.f1_depressed = f1_of(kClassDepressed);
  out.f1_control = f1_of(kClassControl);
  out.macro_f1 = (out.f1_depressed + out.f1_control) / 2.0;
  return out;
}

ClassF1 average_f1(const std::vector<ClassF1>& parts) {
  if (parts.empty()) throw ValidationError("average_f1: no scores to average");
  ClassF1 out;
  for (const auto& p : parts) {
    out.f1_depressed += p.f1_depressed;
    out.f1_control += p.f1_control;
  }
  out.f1_depressed /= static_cast<double>(parts.size());
  out.f1_control /= static_cast<double>(parts.size());
  out.macro_f1 = (out.f1_depressed + out.f1_control) / 2.0;
  return out;
}

}  // namespace ibaudit
