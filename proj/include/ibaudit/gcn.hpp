#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ibaudit/graph.hpp"
#include "ibaudit/linalg.hpp"

namespace ibaudit {

// Class index convention used throughout: column 0 = Depressed, column 1 =
// Control.
inline constexpr int kClassDepressed = 0;
inline constexpr int kClassControl = 1;
inline constexpr int kNumClasses = 2;

// Two-layer graph convolution with an implicit one-hot input: the first
// propagation reads rows of w1 directly, so the identity feature matrix is
// never materialized.
//
//   h1     = relu(Ahat * w1)           Ahat = normalized * diag(omega)
//   logits = Ahat * h1 * w2
//   probs  = row-softmax(logits)
//
// Words and documents share the final layer, which is what makes word-level
// class probabilities available as the interpretability handle.
struct GcnParams {
  Matrix w1;          // n_nodes x hidden_dim
  Matrix w2;          // hidden_dim x 2
  NodeWeights omega;  // n_nodes, all ones in uniform mode
  bool learnable_omega = false;
};

struct ForwardTrace {
  Matrix h1;      // n_nodes x hidden_dim, post-ReLU
  Matrix logits;  // n_nodes x 2
  Matrix probs;   // n_nodes x 2, rows sum to 1
};

struct TrainConfig {
  int hidden_dim = 64;
  double learning_rate = 0.02;
  int epochs = 400;
  double weight_decay = 1e-4;  // on w1 only
  std::uint64_t seed = 0;
  int early_stop_patience = 50;  // epochs without dev macro-F1 improvement
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_macro_f1 = 0.0;
};

struct Gradients {
  Matrix w1;
  Matrix w2;
  NodeWeights omega;  // empty unless learnable
};

ForwardTrace forward(const CorpusGraph& graph, const GcnParams& params);

// Mean over masked document nodes of -ln probs[node, label], plus
// weight_decay * ||w1||_F^2 / 2. labels[d] indexes the class of document
// node d. Throws on an empty mask.
double masked_loss(const ForwardTrace& trace, const std::vector<int>& labels,
                   const std::vector<int>& mask, double weight_decay, const Matrix& w1);

// Analytic gradients of masked_loss at `trace` (which must come from
// forward() with these params). omega gradient is filled only in learnable
// mode.
Gradients backward(const CorpusGraph& graph, const GcnParams& params, const ForwardTrace& trace,
                   const std::vector<int>& labels, const std::vector<int>& mask,
                   double weight_decay);

struct TrainResult {
  GcnParams params;  // snapshot with the best dev macro-F1 (earliest on ties)
  std::vector<EpochStats> stats;
  int best_epoch = 0;
  double best_dev_macro_f1 = 0.0;
};

// Full-batch gradient descent with fixed learning rate from a seeded
// uniform(-0.05, 0.05) initialization (w1 drawn first, then w2, both
// row-major; omega starts at 1). Deterministic per seed. Aborts with
// EngineError if the loss turns non-finite, reporting the epoch.
TrainResult train(const CorpusGraph& graph, const std::vector<int>& labels,
                  const std::vector<int>& train_nodes, const std::vector<int>& dev_nodes,
                  const TrainConfig& config);

struct Prediction {
  int class_index = kClassControl;
  double prob_depressed = 0.0;
};

// Argmax over the class probabilities of each requested document node. An
// exact 0.5/0.5 tie resolves to Control.
std::vector<Prediction> predict(const CorpusGraph& graph, const GcnParams& params,
                                const std::vector<int>& doc_nodes);
std::vector<Prediction> predict_from_trace(const ForwardTrace& trace,
                                           const std::vector<int>& doc_nodes);

// Final-layer class probabilities of every word node, indexed like the
// vocabulary. These are rows of the same forward pass predict() uses.
std::vector<std::array<double, 2>> word_class_probs(const CorpusGraph& graph,
                                                    const GcnParams& params);

// Versioned JSON checkpoint with a config echo and the vocabulary hash;
// loading refuses a mismatched hash.
void save_checkpoint(const std::filesystem::path& path, const GcnParams& params,
                     const TrainConfig& config, std::uint64_t vocab_hash);
GcnParams load_checkpoint(const std::filesystem::path& path, std::uint64_t expected_vocab_hash,
                          TrainConfig* config_out = nullptr);

}  // namespace ibaudit
