#include "ibaudit/vocab.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ibaudit/errors.hpp"

namespace ibaudit {

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& w : words) {
    for (const char ch : w) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 0x100000001b3ULL;
  }
  return h;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const GraphConfig& config) {
  if (docs.empty()) throw ValidationError("build_vocabulary: no documents");
  if (config.min_word_freq < 1) throw ValidationError("build_vocabulary: min_word_freq must be >= 1");

  // std::map keeps words ordered, which both the index assignment and the
  // top-k tie rule rely on.
  std::map<std::string, long long> total;
  std::map<std::string, int> df;
  for (const auto& doc : docs) {
    std::set<std::string> seen;
    for (const auto& tok : doc) {
      ++total[tok];
      seen.insert(tok);
    }
    for (const auto& tok : seen) ++df[tok];
  }

  std::vector<std::string> kept;
  for (const auto& [word, freq] : total) {
    if (freq >= config.min_word_freq) kept.push_back(word);
  }
  if (config.vocab_top_k > 0 && static_cast<int>(kept.size()) > config.vocab_top_k) {
    // Highest total frequency first; lexicographic among equals (kept is
    // already sorted, stable_sort preserves that order).
    std::stable_sort(kept.begin(), kept.end(), [&](const std::string& a, const std::string& b) {
      return total[a] > total[b];
    });
    kept.resize(static_cast<std::size_t>(config.vocab_top_k));
    std::sort(kept.begin(), kept.end());
  }
  if (kept.empty()) throw ValidationError("build_vocabulary: vocabulary empty after filtering");

  Vocabulary v;
  v.words = std::move(kept);
  v.doc_freq.resize(v.words.size());
  v.total_freq.resize(v.words.size());
  for (int i = 0; i < v.size(); ++i) {
    const auto& w = v.words[static_cast<std::size_t>(i)];
    v.index.emplace(w, i);
    v.doc_freq[static_cast<std::size_t>(i)] = df[w];
    v.total_freq[static_cast<std::size_t>(i)] = total[w];
  }
  return v;
}

}  // namespace ibaudit
