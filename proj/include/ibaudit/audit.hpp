#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ibaudit/corpus.hpp"
#include "ibaudit/gcn.hpp"
#include "ibaudit/graph.hpp"
#include "ibaudit/metrics.hpp"
#include "ibaudit/splits.hpp"
#include "ibaudit/vocab.hpp"

namespace ibaudit {

enum class KeywordClass { Depressed, Control };

struct KeywordOccurrence {
  std::string session_id;
  double position = 0.0;  // normalized turn midpoint in [0, 1]
  Label cohort = Label::Control;
};

// A vocabulary word the model uses as decision evidence, with its
// final-layer Depressed probability and (after localization) every place it
// occurs in the audited speaker's turns.
struct KeywordRecord {
  std::string word;
  double depressed_prob = 0.0;
  std::vector<KeywordOccurrence> occurrences;
};

// Keyword-evidence counts over the normalized timeline. Columns are
// interviews, Depressed cohort first, each cohort sorted by session_id;
// rows are timeline bins from 0% to 100%.
struct Heatmap {
  SpeakerView view = SpeakerView::P;
  int bins = 0;
  bool density = false;
  int n_depressed = 0;  // columns [0, n_depressed) are the Depressed cohort
  std::vector<std::string> columns;
  std::vector<std::vector<double>> cells;  // [column][bin]

  double total_mass() const;
};

struct AuditConfig {
  GraphConfig graph;
  TrainConfig train;
  double keyword_tau = 0.5;        // keep words with class probability > tau
  int keyword_top_k = 10;          // truncate after sorting; 0 keeps all
  bool control_keywords = false;   // audit Control-side keywords instead
  int heatmap_bins = 50;
  bool heatmap_density = false;
  double bias_margin = 0.0;             // I may trail P by this much and still flag
  double concentration_threshold = 0.6; // minimum I-side concentration to flag
};

// One trained speaker-restricted variant. The graph and vocabulary are built
// from the projected text only, so nothing of the other speaker leaks in.
struct TrainedVariant {
  SpeakerView view = SpeakerView::P;
  Vocabulary vocab;
  CorpusGraph graph;
  GcnParams params;
  F1Report report;
  std::vector<EpochStats> stats;
  std::vector<std::string> doc_sessions;  // node d <-> corpus[d]
  std::vector<int> doc_labels;
};

// Projects every interview, rebuilds vocabulary and graph from the projected
// text, trains and evaluates. Fixed splits give dev and test scores; k-fold
// gives per-fold dev scores, their average, and the fold-0 model for the
// keyword pipeline. Both variants of an audit call this with identical
// splits and seeds.
TrainedVariant train_variant(const std::vector<Interview>& corpus, SpeakerView view,
                             const GraphConfig& graph_config, const TrainConfig& train_config,
                             const SplitAssignment& splits);

// Words whose audited-class probability exceeds tau, sorted by that
// probability descending (ties lexicographic); top_k > 0 truncates after
// sorting. Occurrences are left empty.
std::vector<KeywordRecord> extract_keywords(const GcnParams& params, const CorpusGraph& graph,
                                            const Vocabulary& vocab, double tau, int top_k,
                                            KeywordClass cls = KeywordClass::Depressed);

// Fills in occurrences: every token occurrence of a keyword inside a turn of
// the audited speaker, positioned at the turn midpoint. Other-speaker turns
// are never scanned.
void localize_keywords(std::vector<KeywordRecord>& keywords,
                       const std::vector<Interview>& corpus, SpeakerView view);

Heatmap build_heatmap(const std::vector<KeywordRecord>& keywords,
                      const std::vector<Interview>& corpus, SpeakerView view, int bins,
                      bool density = false);

// Entropy-based band sharpness: bins are pooled across columns, normalized,
// and scored as 1 - H/ln(bins). 1 means all evidence in one timeline bin,
// 0 means uniform spread. Throws EngineError when the heatmap holds no
// evidence at all.
double concentration(const Heatmap& heatmap);

struct VariantAudit {
  TrainedVariant trained;
  std::vector<KeywordRecord> keywords;  // localized
  Heatmap heatmap;
  double concentration_score = 0.0;
};

struct AuditOutcome {
  VariantAudit p;
  VariantAudit i;
  bool bias_flag = false;
  AuditConfig config;
  std::uint64_t seed = 0;  // shared training seed
};

// The P-vs-I experiment end to end: trains both variants on identical splits
// and seeds, extracts and localizes keywords per view, builds both heatmaps
// and concentrations, and sets
//   bias_flag = (dev macro-F1 of I >= dev macro-F1 of P - margin)
//               and (I concentration >= concentration_threshold).
// A failure in either view aborts with the view named in the error.
AuditOutcome audit(const std::vector<Interview>& corpus, const AuditConfig& config,
                   const SplitAssignment& splits);

// Transcript rendering with every keyword token in the audited speaker's
// turns wrapped in [[..]] (text) or <mark>..</mark> (HTML). The other
// speaker's text is rendered untouched.
std::string render_annotated_text(const Interview& iv,
                                  const std::vector<KeywordRecord>& keywords, SpeakerView view);
std::string render_annotated_html(const Interview& iv,
                                  const std::vector<KeywordRecord>& keywords, SpeakerView view);

}  // namespace ibaudit
