#include "ibaudit/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ibaudit/errors.hpp"
#include "ibaudit/kernels.hpp"
#include "ibaudit/metrics.hpp"
#include "ibaudit/rng.hpp"

namespace ibaudit {

namespace {

void check_dims(const CorpusGraph& graph, const GcnParams& params) {
  const int n = graph.n_nodes();
  if (params.w1.rows != n) throw EngineError("gcn: w1 rows do not match node count");
  if (params.w1.cols < 2) throw EngineError("gcn: hidden_dim must be >= 2");
  if (params.w2.rows != params.w1.cols || params.w2.cols != kNumClasses) {
    throw EngineError("gcn: w2 shape mismatch");
  }
  if (params.omega.size() != static_cast<std::size_t>(n)) {
    throw EngineError("gcn: omega length does not match node count");
  }
  for (const double w : params.omega) {
    if (!(w > 0.0)) throw ValidationError("gcn: omega entries must be positive");
  }
}

void row_softmax(const Matrix& logits, Matrix& probs) {
  probs = Matrix(logits.rows, logits.cols);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < logits.rows; ++i) {
    const double* in = logits.row(i);
    double* out = probs.row(i);
    double mx = in[0];
    for (int c = 1; c < logits.cols; ++c) mx = std::max(mx, in[c]);
    double sum = 0.0;
    for (int c = 0; c < logits.cols; ++c) {
      out[c] = std::exp(in[c] - mx);
      sum += out[c];
    }
    for (int c = 0; c < logits.cols; ++c) out[c] /= sum;
  }
}

}  // namespace

ForwardTrace forward(const CorpusGraph& graph, const GcnParams& params) {
  check_dims(graph, params);
  ForwardTrace t;

  // z1 = Ahat * w1; the one-hot input makes the pre-propagation product a
  // row selection of w1, so it is skipped.
  Matrix z1;
  kernels::spmm_colscaled(graph.normalized, params.omega, params.w1, z1);
  t.h1 = std::move(z1);
  for (double& v : t.h1.data) v = v > 0.0 ? v : 0.0;  // ReLU

  Matrix z2;
  kernels::spmm_colscaled(graph.normalized, params.omega, t.h1, z2);
  kernels::gemm(z2, params.w2, t.logits);
  row_softmax(t.logits, t.probs);
  return t;
}

double masked_loss(const ForwardTrace& trace, const std::vector<int>& labels,
                   const std::vector<int>& mask, double weight_decay, const Matrix& w1) {
  if (mask.empty()) throw ValidationError("masked_loss: empty training mask");
  double sum = 0.0;
  for (const int node : mask) {
    const int label = labels[static_cast<std::size_t>(node)];
    sum += -std::log(trace.probs(node, label));
  }
  double loss = sum / static_cast<double>(mask.size());
  if (weight_decay != 0.0) {
    double fro2 = 0.0;
    for (const double v : w1.data) fro2 += v * v;
    loss += weight_decay * fro2 / 2.0;
  }
  return loss;
}

Gradients backward(const CorpusGraph& graph, const GcnParams& params, const ForwardTrace& trace,
                   const std::vector<int>& labels, const std::vector<int>& mask,
                   double weight_decay) {
  check_dims(graph, params);
  if (mask.empty()) throw ValidationError("backward: empty training mask");
  const int n = graph.n_nodes();
  const int hidden = params.w1.cols;

  // Softmax cross-entropy gradient at the logits, masked and averaged.
  Matrix dlogits(n, kNumClasses);
  const double inv_m = 1.0 / static_cast<double>(mask.size());
  for (const int node : mask) {
    const int label = labels[static_cast<std::size_t>(node)];
    for (int c = 0; c < kNumClasses; ++c) {
      dlogits(node, c) = (trace.probs(node, c) - (c == label ? 1.0 : 0.0)) * inv_m;
    }
  }

  // z2 = Ahat * h1 is cheap to recompute and keeps the trace lean.
  Matrix z2;
  kernels::spmm_colscaled(graph.normalized, params.omega, trace.h1, z2);

  Gradients g;
  kernels::gemm_at_b(z2, dlogits, g.w2);  // dW2 = z2^T dlogits

  Matrix dz2;
  kernels::gemm_a_bt(dlogits, params.w2, dz2);  // dz2 = dlogits w2^T

  // Ahat^T g = diag(omega) N g since N is symmetric.
  Matrix dh1;
  kernels::spmm(graph.normalized, dz2, dh1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double* row = dh1.row(i);
    const double w = params.omega[static_cast<std::size_t>(i)];
    const double* h1row = trace.h1.row(i);
    for (int c = 0; c < hidden; ++c) {
      // ReLU subgradient: h1 > 0 iff the pre-activation was > 0.
      row[c] = h1row[c] > 0.0 ? row[c] * w : 0.0;
    }
  }
  const Matrix& dz1 = dh1;  // after masking, dh1 is the gradient at z1

  kernels::spmm(graph.normalized, dz1, g.w1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double* row = g.w1.row(i);
    const double w = params.omega[static_cast<std::size_t>(i)];
    const double* w1row = params.w1.row(i);
    for (int c = 0; c < hidden; ++c) row[c] = row[c] * w + weight_decay * w1row[c];
  }

  if (params.learnable_omega) {
    g.omega.assign(static_cast<std::size_t>(n), 0.0);
    // d loss / d omega_j = sum_i N_ij (dz1[i].w1[j] + dz2[i].h1[j]); the
    // column of N is read through row j, valid because the normalized
    // matrix is stored bitwise symmetric.
    const Csr& nm = graph.normalized;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
      const double* w1row = params.w1.row(j);
      const double* h1row = trace.h1.row(j);
      double acc = 0.0;
      for (int k = nm.row_ptr[j]; k < nm.row_ptr[static_cast<std::size_t>(j) + 1]; ++k) {
        const int i = nm.col_idx[k];
        const double* dz1row = dz1.row(i);
        const double* dz2row = dz2.row(i);
        double dot = 0.0;
        for (int c = 0; c < hidden; ++c) dot += dz1row[c] * w1row[c] + dz2row[c] * h1row[c];
        acc += nm.vals[k] * dot;
      }
      g.omega[static_cast<std::size_t>(j)] = acc;
    }
  }
  return g;
}

std::vector<Prediction> predict_from_trace(const ForwardTrace& trace,
                                           const std::vector<int>& doc_nodes) {
  std::vector<Prediction> out;
  out.reserve(doc_nodes.size());
  for (const int node : doc_nodes) {
    Prediction p;
    p.prob_depressed = trace.probs(node, kClassDepressed);
    // Exact tie goes to Control.
    p.class_index = p.prob_depressed > trace.probs(node, kClassControl) ? kClassDepressed
                                                                        : kClassControl;
    out.push_back(p);
  }
  return out;
}

std::vector<Prediction> predict(const CorpusGraph& graph, const GcnParams& params,
                                const std::vector<int>& doc_nodes) {
  return predict_from_trace(forward(graph, params), doc_nodes);
}

std::vector<std::array<double, 2>> word_class_probs(const CorpusGraph& graph,
                                                    const GcnParams& params) {
  const ForwardTrace trace = forward(graph, params);
  std::vector<std::array<double, 2>> out(static_cast<std::size_t>(graph.n_words));
  for (int w = 0; w < graph.n_words; ++w) {
    const int node = graph.word_node(w);
    out[static_cast<std::size_t>(w)] = {trace.probs(node, kClassDepressed),
                                        trace.probs(node, kClassControl)};
  }
  return out;
}

namespace {

GcnParams init_params(int n_nodes, const TrainConfig& config, bool learnable_omega) {
  Rng rng(config.seed);
  GcnParams p;
  p.w1 = Matrix(n_nodes, config.hidden_dim);
  p.w2 = Matrix(config.hidden_dim, kNumClasses);
  for (double& v : p.w1.data) v = rng.uniform(-0.05, 0.05);
  for (double& v : p.w2.data) v = rng.uniform(-0.05, 0.05);
  p.omega.assign(static_cast<std::size_t>(n_nodes), 1.0);
  p.learnable_omega = learnable_omega;
  return p;
}

ClassF1 dev_f1(const ForwardTrace& trace, const std::vector<int>& labels,
               const std::vector<int>& dev_nodes) {
  std::vector<int> gold, pred;
  gold.reserve(dev_nodes.size());
  pred.reserve(dev_nodes.size());
  const auto predictions = predict_from_trace(trace, dev_nodes);
  for (std::size_t i = 0; i < dev_nodes.size(); ++i) {
    gold.push_back(labels[static_cast<std::size_t>(dev_nodes[i])]);
    pred.push_back(predictions[i].class_index);
  }
  return f1_scores(gold, pred);
}

void require_both_classes(const std::vector<int>& labels, const std::vector<int>& nodes,
                          const char* which) {
  bool has[2] = {false, false};
  for (const int n : nodes) has[labels[static_cast<std::size_t>(n)]] = true;
  if (!has[0] || !has[1]) {
    throw ValidationError(std::string("train: ") + which +
                          " split must contain both classes");
  }
}

}  // namespace

TrainResult train(const CorpusGraph& graph, const std::vector<int>& labels,
                  const std::vector<int>& train_nodes, const std::vector<int>& dev_nodes,
                  const TrainConfig& config) {
  if (config.epochs < 1) throw ValidationError("train: epochs must be >= 1");
  if (!(config.learning_rate >= 0.0)) throw ValidationError("train: negative learning rate");
  if (labels.size() < static_cast<std::size_t>(graph.n_docs)) {
    throw EngineError("train: labels shorter than document count");
  }
  require_both_classes(labels, train_nodes, "train");
  require_both_classes(labels, dev_nodes, "dev");

  GcnParams params = init_params(graph.n_nodes(), config, graph.learnable_node_weights);

  TrainResult result;
  result.best_dev_macro_f1 = -1.0;
  int since_improve = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const ForwardTrace trace = forward(graph, params);
    const double loss = masked_loss(trace, labels, train_nodes, config.weight_decay, params.w1);
    if (!std::isfinite(loss)) {
      std::ostringstream msg;
      msg << "train: non-finite loss " << loss << " at epoch " << epoch;
      throw EngineError(msg.str());
    }
    const ClassF1 dev = dev_f1(trace, labels, dev_nodes);
    result.stats.push_back({epoch, loss, dev.macro_f1});

    if (dev.macro_f1 > result.best_dev_macro_f1) {
      result.best_dev_macro_f1 = dev.macro_f1;
      result.best_epoch = epoch;
      result.params = params;  // snapshot before this epoch's update
      since_improve = 0;
    } else if (++since_improve >= config.early_stop_patience && config.early_stop_patience > 0) {
      break;
    }

    const Gradients g = backward(graph, params, trace, labels, train_nodes, config.weight_decay);
    const double lr = config.learning_rate;
    for (std::size_t i = 0; i < params.w1.data.size(); ++i) params.w1.data[i] -= lr * g.w1.data[i];
    for (std::size_t i = 0; i < params.w2.data.size(); ++i) params.w2.data[i] -= lr * g.w2.data[i];
    if (params.learnable_omega) {
      for (std::size_t i = 0; i < params.omega.size(); ++i) {
        // Keep omega in its positive domain; 1e-6 floor.
        params.omega[i] = std::max(1e-6, params.omega[i] - lr * g.omega[i]);
      }
    }
  }
  return result;
}

void save_checkpoint(const std::filesystem::path& path, const GcnParams& params,
                     const TrainConfig& config, std::uint64_t vocab_hash) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["vocab_hash"] = vocab_hash;
  j["config"] = {{"hidden_dim", config.hidden_dim},
                 {"learning_rate", config.learning_rate},
                 {"epochs", config.epochs},
                 {"weight_decay", config.weight_decay},
                 {"seed", config.seed},
                 {"early_stop_patience", config.early_stop_patience}};
  j["n_nodes"] = params.w1.rows;
  j["hidden_dim"] = params.w1.cols;
  j["learnable_omega"] = params.learnable_omega;
  j["w1"] = params.w1.data;
  j["w2"] = params.w2.data;
  j["omega"] = params.omega;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EngineError("cannot write checkpoint: " + path.string());
  out << j.dump() << "\n";
}

GcnParams load_checkpoint(const std::filesystem::path& path, std::uint64_t expected_vocab_hash,
                          TrainConfig* config_out) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open checkpoint: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed checkpoint " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw ValidationError("checkpoint " + path.string() + ": unsupported format version");
    }
    if (j.at("vocab_hash").get<std::uint64_t>() != expected_vocab_hash) {
      throw ValidationError("checkpoint " + path.string() +
                            ": vocabulary hash mismatch (model was trained on a different "
                            "vocabulary)");
    }
    GcnParams p;
    const int n = j.at("n_nodes").get<int>();
    const int hidden = j.at("hidden_dim").get<int>();
    p.w1 = Matrix(n, hidden);
    p.w2 = Matrix(hidden, kNumClasses);
    p.w1.data = j.at("w1").get<std::vector<double>>();
    p.w2.data = j.at("w2").get<std::vector<double>>();
    p.omega = j.at("omega").get<std::vector<double>>();
    p.learnable_omega = j.at("learnable_omega").get<bool>();
    if (p.w1.data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(hidden) ||
        p.w2.data.size() != static_cast<std::size_t>(hidden) * kNumClasses ||
        p.omega.size() != static_cast<std::size_t>(n)) {
      throw ValidationError("checkpoint " + path.string() + ": inconsistent tensor sizes");
    }
    if (config_out) {
      config_out->hidden_dim = j.at("config").at("hidden_dim").get<int>();
      config_out->learning_rate = j.at("config").at("learning_rate").get<double>();
      config_out->epochs = j.at("config").at("epochs").get<int>();
      config_out->weight_decay = j.at("config").at("weight_decay").get<double>();
      config_out->seed = j.at("config").at("seed").get<std::uint64_t>();
      config_out->early_stop_patience = j.at("config").at("early_stop_patience").get<int>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace ibaudit
