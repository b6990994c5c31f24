#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace ibaudit {

struct GraphConfig {
  int min_word_freq = 2;     // tokens below this total corpus frequency are dropped
  int pmi_window = 10;       // sliding window width in tokens, >= 2
  int vocab_top_k = 0;       // keep only the k most frequent words; 0 keeps all
  bool learnable_node_weights = false;  // uniform vs trainable per-node weights
  double self_loop_weight = 1.0;        // sigma in D^{-1/2}(A + sigma I)D^{-1/2}
};

// Word <-> index bijection over the filtered corpus vocabulary. Indices are
// assigned in lexicographic word order, so identical docs and config always
// produce the identical mapping.
struct Vocabulary {
  std::vector<std::string> words;                // index -> word
  std::unordered_map<std::string, int> index;    // word -> index
  std::vector<int> doc_freq;                     // documents containing the word
  std::vector<long long> total_freq;             // total corpus occurrences

  int size() const { return static_cast<int>(words.size()); }

  // FNV-1a over the word list; checkpoints refuse to load across a mismatch.
  std::uint64_t hash() const;
};

// Builds the vocabulary from tokenized documents. Words with total corpus
// frequency below min_word_freq are removed; vocab_top_k > 0 then keeps the
// k highest-total-frequency words, ties broken lexicographically. Throws
// ValidationError if docs are empty or filtering empties the vocabulary.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const GraphConfig& config);

}  // namespace ibaudit
