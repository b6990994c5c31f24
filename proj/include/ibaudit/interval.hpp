#pragma once

#include <vector>

namespace ibaudit {

// Closed-open is not meaningful at this resolution; intervals are treated as
// [start, end] spans of seconds with start strictly less than end.
struct TimeInterval {
  double start = 0.0;
  double end = 0.0;
};

// Throws ValidationError unless start >= 0 and start < end.
void validate_interval(const TimeInterval& iv);

// Sorts by start and merges overlapping or touching intervals into maximal
// disjoint ones.
std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> ivs);

// Complement of the union of `participant` within [0, duration], as maximal
// disjoint intervals sorted by start. Inputs are merged first, so overlapping
// participant segments (common in ASR output) are accepted; the result is
// always non-overlapping. Throws ValidationError if duration <= 0 or an
// input interval falls outside [0, duration].
std::vector<TimeInterval> derive_interviewer_intervals(const std::vector<TimeInterval>& participant,
                                                       double duration);

}  // namespace ibaudit
