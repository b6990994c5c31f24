#include "ibaudit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "ibaudit/errors.hpp"

namespace ibaudit {

Csr tf_idf(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab) {
  const int n_docs = static_cast<int>(docs.size());
  const int n_words = vocab.size();

  std::vector<std::vector<Triplet>> per_doc(docs.size());
#pragma omp parallel for schedule(static)
  for (int d = 0; d < n_docs; ++d) {
    std::unordered_map<int, int> counts;
    for (const auto& tok : docs[static_cast<std::size_t>(d)]) {
      const auto it = vocab.index.find(tok);
      if (it != vocab.index.end()) ++counts[it->second];
    }
    auto& out = per_doc[static_cast<std::size_t>(d)];
    out.reserve(counts.size());
    for (const auto& [w, c] : counts) {
      const double idf =
          std::log(static_cast<double>(n_docs) / vocab.doc_freq[static_cast<std::size_t>(w)]);
      if (idf > 0.0) out.push_back({d, w, static_cast<double>(c) * idf});
    }
  }

  std::vector<Triplet> triplets;
  for (const auto& chunk : per_doc) triplets.insert(triplets.end(), chunk.begin(), chunk.end());
  return Csr::from_triplets(n_docs, n_words, std::move(triplets));
}

Csr pmi(const std::vector<std::vector<std::string>>& docs, const Vocabulary& vocab, int window) {
  if (window < 2) throw ValidationError("pmi: window must be >= 2");
  const int n_words = vocab.size();
  const int n_docs = static_cast<int>(docs.size());

  // Per-document window statistics; integer counts merge associatively, so
  // the parallel pass is deterministic.
  struct DocCounts {
    long long windows = 0;
    std::unordered_map<int, long long> single;
    std::unordered_map<std::uint64_t, long long> pair;  // key = lo * n_words + hi
  };
  std::vector<DocCounts> per_doc(docs.size());

#pragma omp parallel for schedule(static)
  for (int d = 0; d < n_docs; ++d) {
    const auto& doc = docs[static_cast<std::size_t>(d)];
    auto& dc = per_doc[static_cast<std::size_t>(d)];
    if (doc.empty()) continue;

    std::vector<int> ids(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto it = vocab.index.find(doc[i]);
      ids[i] = it == vocab.index.end() ? -1 : it->second;
    }

    const std::size_t w = static_cast<std::size_t>(window);
    const std::size_t n_windows = doc.size() <= w ? 1 : doc.size() - w + 1;
    dc.windows = static_cast<long long>(n_windows);
    std::vector<int> present;
    for (std::size_t p = 0; p < n_windows; ++p) {
      present.clear();
      const std::size_t hi = std::min(p + w, doc.size());
      for (std::size_t q = p; q < hi; ++q) {
        if (ids[q] >= 0) present.push_back(ids[q]);
      }
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (std::size_t a = 0; a < present.size(); ++a) {
        ++dc.single[present[a]];
        for (std::size_t b = a + 1; b < present.size(); ++b) {
          const std::uint64_t key = static_cast<std::uint64_t>(present[a]) *
                                        static_cast<std::uint64_t>(n_words) +
                                    static_cast<std::uint64_t>(present[b]);
          ++dc.pair[key];
        }
      }
    }
  }

  long long total_windows = 0;
  std::vector<long long> single(static_cast<std::size_t>(n_words), 0);
  std::unordered_map<std::uint64_t, long long> pair;
  for (const auto& dc : per_doc) {
    total_windows += dc.windows;
    for (const auto& [w, c] : dc.single) single[static_cast<std::size_t>(w)] += c;
    for (const auto& [k, c] : dc.pair) pair[k] += c;
  }

  std::vector<Triplet> triplets;
  if (total_windows > 0) {
    for (const auto& [key, both] : pair) {
      const int lo = static_cast<int>(key / static_cast<std::uint64_t>(n_words));
      const int hi = static_cast<int>(key % static_cast<std::uint64_t>(n_words));
      // ln(p(a,b) / (p(a) p(b))) with the window total folded in:
      // p(a,b)/(p(a)p(b)) = both * W / (single_a * single_b).
      const double value = std::log(static_cast<double>(both) * static_cast<double>(total_windows) /
                                    (static_cast<double>(single[static_cast<std::size_t>(lo)]) *
                                     static_cast<double>(single[static_cast<std::size_t>(hi)])));
      if (value > 0.0) {
        triplets.push_back({lo, hi, value});
        triplets.push_back({hi, lo, value});
      }
    }
  }
  return Csr::from_triplets(n_words, n_words, std::move(triplets));
}

CorpusGraph build_adjacency(const Csr& tfidf, const Csr& pmi_mat, const GraphConfig& config) {
  if (tfidf.cols != pmi_mat.rows || pmi_mat.rows != pmi_mat.cols) {
    throw EngineError("build_adjacency: dimension mismatch between tf-idf and pmi blocks");
  }
  if (!(config.self_loop_weight > 0.0)) {
    throw ValidationError("build_adjacency: self_loop_weight must be positive");
  }

  CorpusGraph g;
  g.n_docs = tfidf.rows;
  g.n_words = tfidf.cols;
  g.self_loop_weight = config.self_loop_weight;
  g.learnable_node_weights = config.learnable_node_weights;
  const int n = g.n_nodes();

  std::vector<Triplet> triplets;
  triplets.reserve(2 * tfidf.nnz() + pmi_mat.nnz());
  for (int d = 0; d < tfidf.rows; ++d) {
    for (int k = tfidf.row_ptr[d]; k < tfidf.row_ptr[static_cast<std::size_t>(d) + 1]; ++k) {
      const int wn = g.word_node(tfidf.col_idx[k]);
      triplets.push_back({d, wn, tfidf.vals[k]});
      triplets.push_back({wn, d, tfidf.vals[k]});
    }
  }
  for (int i = 0; i < pmi_mat.rows; ++i) {
    for (int k = pmi_mat.row_ptr[i]; k < pmi_mat.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      triplets.push_back({g.word_node(i), g.word_node(pmi_mat.col_idx[k]), pmi_mat.vals[k]});
    }
  }
  g.adjacency = Csr::from_triplets(n, n, std::move(triplets));

  // Degrees of A + sigma I.
  std::vector<double> inv_sqrt_deg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double deg = config.self_loop_weight;
    for (int k = g.adjacency.row_ptr[i]; k < g.adjacency.row_ptr[static_cast<std::size_t>(i) + 1];
         ++k) {
      deg += g.adjacency.vals[k];
    }
    inv_sqrt_deg[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(deg);
  }

  // Each off-diagonal value is computed once per unordered pair and
  // mirrored, so the normalized matrix is bitwise symmetric.
  std::vector<Triplet> norm;
  norm.reserve(g.adjacency.nnz() + static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double di = inv_sqrt_deg[static_cast<std::size_t>(i)];
    norm.push_back({i, i, config.self_loop_weight * di * di});
    for (int k = g.adjacency.row_ptr[i]; k < g.adjacency.row_ptr[static_cast<std::size_t>(i) + 1];
         ++k) {
      const int j = g.adjacency.col_idx[k];
      if (j <= i) continue;
      const double v = g.adjacency.vals[k] * di * inv_sqrt_deg[static_cast<std::size_t>(j)];
      norm.push_back({i, j, v});
      norm.push_back({j, i, v});
    }
  }
  g.normalized = Csr::from_triplets(n, n, std::move(norm));
  return g;
}

CorpusGraph build_corpus_graph(const std::vector<std::vector<std::string>>& docs,
                               const Vocabulary& vocab, const GraphConfig& config) {
  return build_adjacency(tf_idf(docs, vocab), pmi(docs, vocab, config.pmi_window), config);
}

Csr apply_node_weights(const CorpusGraph& graph, const NodeWeights& omega) {
  if (omega.size() != static_cast<std::size_t>(graph.n_nodes())) {
    throw ValidationError("apply_node_weights: omega length does not match node count");
  }
  for (const double w : omega) {
    if (!(w > 0.0)) throw ValidationError("apply_node_weights: omega entries must be positive");
  }
  Csr out = graph.normalized;
  for (std::size_t k = 0; k < out.vals.size(); ++k) {
    out.vals[k] *= omega[static_cast<std::size_t>(out.col_idx[k])];
  }
  return out;
}

void dump_graph_json(const std::filesystem::path& path, const CorpusGraph& graph,
                     const std::vector<std::string>& doc_ids, const Vocabulary& vocab,
                     const GraphConfig& config) {
  nlohmann::json j;
  j["config"] = {{"min_word_freq", config.min_word_freq},
                 {"pmi_window", config.pmi_window},
                 {"vocab_top_k", config.vocab_top_k},
                 {"learnable_node_weights", config.learnable_node_weights},
                 {"self_loop_weight", config.self_loop_weight}};
  nlohmann::json nodes = nlohmann::json::array();
  for (int d = 0; d < graph.n_docs; ++d) {
    nodes.push_back({{"id", d},
                     {"role", "document"},
                     {"name", d < static_cast<int>(doc_ids.size())
                                  ? doc_ids[static_cast<std::size_t>(d)]
                                  : std::to_string(d)}});
  }
  for (int w = 0; w < graph.n_words; ++w) {
    nodes.push_back(
        {{"id", graph.word_node(w)}, {"role", "word"}, {"name", vocab.words[static_cast<std::size_t>(w)]}});
  }
  j["nodes"] = std::move(nodes);
  nlohmann::json edges = nlohmann::json::array();
  for (int i = 0; i < graph.adjacency.rows; ++i) {
    for (int k = graph.adjacency.row_ptr[i];
         k < graph.adjacency.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      if (graph.adjacency.col_idx[k] < i) continue;  // emit each edge once
      edges.push_back({i, graph.adjacency.col_idx[k], graph.adjacency.vals[k]});
    }
  }
  j["edges"] = std::move(edges);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw EngineError("cannot write graph dump: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace ibaudit
