#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ibaudit/corpus.hpp"

namespace ibaudit {

enum class Split { Train, Dev, Test };

const char* to_string(Split s);

struct SplitSpec {
  enum class Mode { Fixed, KFold };
  Mode mode = Mode::Fixed;
  double dev_frac = 0.2;   // fixed mode
  double test_frac = 0.2;  // fixed mode
  int k = 5;               // kfold mode
};

// Every session appears exactly once. In fixed mode `fixed` is populated;
// in kfold mode `fold` maps each session to its held-out fold index.
struct SplitAssignment {
  SplitSpec::Mode mode = SplitSpec::Mode::Fixed;
  int k = 0;
  std::map<std::string, Split> fixed;
  std::map<std::string, int> fold;
};

// Label-stratified, deterministic per seed. Fixed mode rounds per-class dev
// and test counts to the nearest integer (class proportions preserved within
// one item per split); kfold deals classes round-robin after a seeded
// shuffle, so fold sizes per class differ by at most one. Throws
// ValidationError on bad fractions, k < 2, or a class with fewer items than
// folds.
SplitAssignment assign_splits(const std::vector<Interview>& corpus, const SplitSpec& spec,
                              std::uint64_t seed);

void save_splits(const std::filesystem::path& path, const SplitAssignment& sa);
SplitAssignment load_splits(const std::filesystem::path& path);

}  // namespace ibaudit
