#include "ibaudit/interval.hpp"

#include <algorithm>
#include <sstream>

#include "ibaudit/errors.hpp"

namespace ibaudit {

void validate_interval(const TimeInterval& iv) {
  if (!(iv.start >= 0.0) || !(iv.start < iv.end)) {
    std::ostringstream msg;
    msg << "invalid interval [" << iv.start << ", " << iv.end
        << "]: need 0 <= start < end";
    throw ValidationError(msg.str());
  }
}

std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> ivs) {
  for (const auto& iv : ivs) validate_interval(iv);
  std::sort(ivs.begin(), ivs.end(), [](const TimeInterval& a, const TimeInterval& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  std::vector<TimeInterval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, iv.end);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

std::vector<TimeInterval> derive_interviewer_intervals(const std::vector<TimeInterval>& participant,
                                                       double duration) {
  if (!(duration > 0.0)) {
    throw ValidationError("derive_interviewer_intervals: duration must be positive");
  }
  for (const auto& iv : participant) {
    validate_interval(iv);
    if (iv.end > duration) {
      std::ostringstream msg;
      msg << "participant interval [" << iv.start << ", " << iv.end
          << "] exceeds session duration " << duration;
      throw ValidationError(msg.str());
    }
  }

  const auto merged = merge_intervals(participant);
  std::vector<TimeInterval> gaps;
  double cursor = 0.0;
  for (const auto& iv : merged) {
    if (iv.start > cursor) gaps.push_back({cursor, iv.start});
    cursor = iv.end;
  }
  if (cursor < duration) gaps.push_back({cursor, duration});
  return gaps;
}

}  // namespace ibaudit
