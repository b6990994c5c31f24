#include "ibaudit/splits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ibaudit/errors.hpp"
#include "ibaudit/rng.hpp"

namespace ibaudit {

using nlohmann::json;

const char* to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    default: return "test";
  }
}

SplitAssignment assign_splits(const std::vector<Interview>& corpus, const SplitSpec& spec,
                              std::uint64_t seed) {
  if (corpus.empty()) throw ValidationError("assign_splits: empty corpus");

  // Stratify: bucket session ids per class, in sorted order so the shuffle
  // below is the only source of permutation.
  std::vector<std::string> by_class[2];
  for (const auto& iv : corpus) {
    by_class[iv.label == Label::Depressed ? 0 : 1].push_back(iv.session_id);
  }
  for (auto& bucket : by_class) {
    std::sort(bucket.begin(), bucket.end());
    const auto dup = std::adjacent_find(bucket.begin(), bucket.end());
    if (dup != bucket.end()) {
      throw ValidationError("assign_splits: duplicate session_id '" + *dup + "'");
    }
  }

  Rng rng(seed);
  SplitAssignment sa;
  sa.mode = spec.mode;

  if (spec.mode == SplitSpec::Mode::Fixed) {
    if (!(spec.dev_frac > 0.0 && spec.dev_frac < 1.0) ||
        !(spec.test_frac > 0.0 && spec.test_frac < 1.0) ||
        !(spec.dev_frac + spec.test_frac < 1.0)) {
      throw ValidationError("assign_splits: fractions must lie in (0,1) and sum below 1");
    }
    for (auto& bucket : by_class) {
      rng.shuffle(bucket);
      const auto n = static_cast<long long>(bucket.size());
      const auto n_dev = static_cast<long long>(std::llround(spec.dev_frac * n));
      const auto n_test = static_cast<long long>(std::llround(spec.test_frac * n));
      if (n_dev + n_test > n) throw ValidationError("assign_splits: class too small for fractions");
      for (long long i = 0; i < n; ++i) {
        Split s = i < n_dev ? Split::Dev : (i < n_dev + n_test ? Split::Test : Split::Train);
        sa.fixed[bucket[static_cast<std::size_t>(i)]] = s;
      }
    }
  } else {
    if (spec.k < 2) throw ValidationError("assign_splits: k must be at least 2");
    sa.k = spec.k;
    for (auto& bucket : by_class) {
      if (!bucket.empty() && static_cast<int>(bucket.size()) < spec.k) {
        throw ValidationError("assign_splits: class has fewer items than folds");
      }
      rng.shuffle(bucket);
      for (std::size_t i = 0; i < bucket.size(); ++i) {
        sa.fold[bucket[i]] = static_cast<int>(i % static_cast<std::size_t>(spec.k));
      }
    }
  }
  return sa;
}

void save_splits(const std::filesystem::path& path, const SplitAssignment& sa) {
  json j;
  j["mode"] = sa.mode == SplitSpec::Mode::Fixed ? "fixed" : "kfold";
  json assignments = json::object();
  if (sa.mode == SplitSpec::Mode::Fixed) {
    for (const auto& [sid, split] : sa.fixed) assignments[sid] = to_string(split);
  } else {
    j["k"] = sa.k;
    for (const auto& [sid, fold] : sa.fold) assignments[sid] = fold;
  }
  j["assignments"] = std::move(assignments);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EngineError("cannot write split file: " + path.string());
  out << j.dump(2) << "\n";
}

SplitAssignment load_splits(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open split file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed split file " + path.string() + ": " + e.what());
  }

  SplitAssignment sa;
  try {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "fixed") {
      sa.mode = SplitSpec::Mode::Fixed;
      for (const auto& [sid, v] : j.at("assignments").items()) {
        const auto s = v.get<std::string>();
        if (s == "train") sa.fixed[sid] = Split::Train;
        else if (s == "dev") sa.fixed[sid] = Split::Dev;
        else if (s == "test") sa.fixed[sid] = Split::Test;
        else throw ValidationError("split file: unknown split '" + s + "' for " + sid);
      }
    } else if (mode == "kfold") {
      sa.mode = SplitSpec::Mode::KFold;
      int max_fold = -1;
      for (const auto& [sid, v] : j.at("assignments").items()) {
        sa.fold[sid] = v.get<int>();
        max_fold = std::max(max_fold, sa.fold[sid]);
      }
      sa.k = j.contains("k") ? j.at("k").get<int>() : max_fold + 1;
    } else {
      throw ValidationError("split file: unknown mode '" + mode + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError("malformed split file " + path.string() + ": " + e.what());
  }
  return sa;
}

}  // namespace ibaudit
