#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ibaudit/linalg.hpp"
#include "ibaudit/vocab.hpp"

namespace ibaudit {

// Heterogeneous word/document graph. Node order: documents first (indices
// 0..n_docs-1), then vocabulary words. `adjacency` holds the off-diagonal
// edges (doc-word TF-IDF and word-word positive PMI; never doc-doc) with
// both triangles stored and bitwise-identical mirrored values. `normalized`
// is D^{-1/2}(A + sigma I)D^{-1/2} with D the degree of (A + sigma I); it
// includes the diagonal, so isolated nodes (e.g. documents emptied by
// speaker projection) keep a self-loop entry.
struct CorpusGraph {
  int n_docs = 0;
  int n_words = 0;
  double self_loop_weight = 1.0;
  bool learnable_node_weights = false;
  Csr adjacency;
  Csr normalized;

  int n_nodes() const { return n_docs + n_words; }
  int word_node(int word_index) const { return n_docs + word_index; }
};

// Per-node positive weights (the trainable node-weighting handle). All ones
// reproduces the plain normalized propagation exactly.
using NodeWeights = std::vector<double>;

// entry(d, w) = count(w in d) * ln(n_docs / df(w)); zero entries (a word in
// every document) are omitted.
Csr tf_idf(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab);

// Positive pointwise mutual information over sliding token windows pooled
// across the corpus (stride 1; a non-empty document shorter than the window
// contributes a single window; empty documents contribute none). Window
// counts are presence-based. Only entries with pmi > 0 are stored, both
// triangles, never the diagonal.
Csr pmi(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab, int window);

// Assembles the block-symmetric adjacency and its normalization. tfidf is
// n_docs x V, pmi_mat is V x V symmetric.
CorpusGraph build_adjacency(const Csr& tfidf, const Csr& pmi_mat, const GraphConfig& config);

// tf_idf + pmi + build_adjacency in one call.
CorpusGraph build_corpus_graph(const std::vector<std::vector<std::string>>& docs,
                               const Vocabulary& vocab, const GraphConfig& config);

// normalized * diag(omega): column j scaled by omega[j], so node j's
// outgoing contribution is weighted. omega of all ones returns
// graph.normalized bit for bit. Throws on length mismatch or non-positive
// entries.
Csr apply_node_weights(const CorpusGraph& graph, const NodeWeights& omega);

// Debug/golden-test dump: node list with roles, adjacency triplets, config.
void dump_graph_json(const std::filesystem::path& path, const CorpusGraph& graph,
                     const std::vector<std::string>& doc_ids, const Vocabulary& vocab,
                     const GraphConfig& config);

}  // namespace ibaudit
