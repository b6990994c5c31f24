#include "ibaudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "ibaudit/errors.hpp"
#include "ibaudit/tokenizer.hpp"

namespace ibaudit {

double Heatmap::total_mass() const {
  double total = 0.0;
  for (const auto& column : cells) {
    for (const double v : column) total += v;
  }
  return total;
}

namespace {

std::vector<int> split_doc_nodes(const std::vector<std::string>& doc_sessions,
                                 const SplitAssignment& sa, Split which) {
  std::vector<int> nodes;
  for (std::size_t d = 0; d < doc_sessions.size(); ++d) {
    const auto it = sa.fixed.find(doc_sessions[d]);
    if (it == sa.fixed.end()) {
      throw ValidationError("session " + doc_sessions[d] + " missing from split assignment");
    }
    if (it->second == which) nodes.push_back(static_cast<int>(d));
  }
  return nodes;
}

ClassF1 eval_nodes(const CorpusGraph& graph, const GcnParams& params,
                   const std::vector<int>& labels, const std::vector<int>& nodes) {
  const auto predictions = predict(graph, params, nodes);
  std::vector<int> gold, pred;
  gold.reserve(nodes.size());
  pred.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    gold.push_back(labels[static_cast<std::size_t>(nodes[i])]);
    pred.push_back(predictions[i].class_index);
  }
  return f1_scores(gold, pred);
}

}  // namespace

TrainedVariant train_variant(const std::vector<Interview>& corpus, SpeakerView view,
                             const GraphConfig& graph_config, const TrainConfig& train_config,
                             const SplitAssignment& splits) {
  if (corpus.empty()) throw ValidationError("train_variant: empty corpus");

  TrainedVariant tv;
  tv.view = view;

  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.size());
  for (const auto& iv : corpus) {
    docs.push_back(tokenize(document_text(project_view(iv, view))));
    tv.doc_sessions.push_back(iv.session_id);
    tv.doc_labels.push_back(iv.label == Label::Depressed ? kClassDepressed : kClassControl);
  }

  tv.vocab = build_vocabulary(docs, graph_config);
  tv.graph = build_corpus_graph(docs, tv.vocab, graph_config);

  if (splits.mode == SplitSpec::Mode::Fixed) {
    const auto train_nodes = split_doc_nodes(tv.doc_sessions, splits, Split::Train);
    const auto dev_nodes = split_doc_nodes(tv.doc_sessions, splits, Split::Dev);
    const auto test_nodes = split_doc_nodes(tv.doc_sessions, splits, Split::Test);

    TrainResult res = train(tv.graph, tv.doc_labels, train_nodes, dev_nodes, train_config);
    tv.params = std::move(res.params);
    tv.stats = std::move(res.stats);
    tv.report.dev = eval_nodes(tv.graph, tv.params, tv.doc_labels, dev_nodes);
    if (!test_nodes.empty()) {
      tv.report.test = eval_nodes(tv.graph, tv.params, tv.doc_labels, test_nodes);
    }
  } else {
    // K-fold: fold f held out as dev, the rest train. The fold-0 model feeds
    // the keyword pipeline; F1 is the per-class fold average.
    for (int f = 0; f < splits.k; ++f) {
      std::vector<int> train_nodes, dev_nodes;
      for (std::size_t d = 0; d < tv.doc_sessions.size(); ++d) {
        const auto it = splits.fold.find(tv.doc_sessions[d]);
        if (it == splits.fold.end()) {
          throw ValidationError("session " + tv.doc_sessions[d] + " missing from fold assignment");
        }
        (it->second == f ? dev_nodes : train_nodes).push_back(static_cast<int>(d));
      }
      TrainResult res = train(tv.graph, tv.doc_labels, train_nodes, dev_nodes, train_config);
      tv.report.fold_dev.push_back(eval_nodes(tv.graph, res.params, tv.doc_labels, dev_nodes));
      if (f == 0) {
        tv.params = std::move(res.params);
        tv.stats = std::move(res.stats);
      }
    }
    tv.report.dev = average_f1(tv.report.fold_dev);
  }
  return tv;
}

std::vector<KeywordRecord> extract_keywords(const GcnParams& params, const CorpusGraph& graph,
                                            const Vocabulary& vocab, double tau, int top_k,
                                            KeywordClass cls) {
  if (tau < 0.0 || tau > 1.0) throw ValidationError("extract_keywords: tau must be in [0, 1]");
  const auto probs = word_class_probs(graph, params);

  std::vector<KeywordRecord> out;
  for (int w = 0; w < vocab.size(); ++w) {
    const double class_prob = cls == KeywordClass::Depressed
                                  ? probs[static_cast<std::size_t>(w)][kClassDepressed]
                                  : probs[static_cast<std::size_t>(w)][kClassControl];
    if (class_prob > tau) {
      KeywordRecord rec;
      rec.word = vocab.words[static_cast<std::size_t>(w)];
      rec.depressed_prob = probs[static_cast<std::size_t>(w)][kClassDepressed];
      out.push_back(std::move(rec));
    }
  }
  const auto sort_prob = [cls](const KeywordRecord& r) {
    return cls == KeywordClass::Depressed ? r.depressed_prob : 1.0 - r.depressed_prob;
  };
  std::sort(out.begin(), out.end(), [&](const KeywordRecord& a, const KeywordRecord& b) {
    const double pa = sort_prob(a), pb = sort_prob(b);
    return pa != pb ? pa > pb : a.word < b.word;
  });
  if (top_k > 0 && static_cast<int>(out.size()) > top_k) {
    out.resize(static_cast<std::size_t>(top_k));
  }
  return out;
}

void localize_keywords(std::vector<KeywordRecord>& keywords,
                       const std::vector<Interview>& corpus, SpeakerView view) {
  std::unordered_map<std::string, std::size_t> by_word;
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    keywords[i].occurrences.clear();
    by_word[keywords[i].word] = i;
  }
  const Speaker audited = view == SpeakerView::P ? Speaker::Participant : Speaker::Interviewer;
  for (const auto& iv : corpus) {
    for (const auto& turn : iv.turns) {
      if (turn.speaker != audited) continue;
      const double pos = normalized_position(turn, iv.duration);
      for (const auto& tok : tokenize(turn.text)) {
        const auto it = by_word.find(tok);
        if (it == by_word.end()) continue;
        keywords[it->second].occurrences.push_back({iv.session_id, pos, iv.label});
      }
    }
  }
}

Heatmap build_heatmap(const std::vector<KeywordRecord>& keywords,
                      const std::vector<Interview>& corpus, SpeakerView view, int bins,
                      bool density) {
  if (bins < 2) throw ValidationError("build_heatmap: bins must be >= 2");

  Heatmap hm;
  hm.view = view;
  hm.bins = bins;
  hm.density = density;

  std::vector<std::string> depressed, control;
  for (const auto& iv : corpus) {
    (iv.label == Label::Depressed ? depressed : control).push_back(iv.session_id);
  }
  std::sort(depressed.begin(), depressed.end());
  std::sort(control.begin(), control.end());
  hm.n_depressed = static_cast<int>(depressed.size());
  hm.columns = std::move(depressed);
  hm.columns.insert(hm.columns.end(), control.begin(), control.end());

  std::unordered_map<std::string, std::size_t> col_of;
  for (std::size_t c = 0; c < hm.columns.size(); ++c) col_of[hm.columns[c]] = c;

  hm.cells.assign(hm.columns.size(), std::vector<double>(static_cast<std::size_t>(bins), 0.0));
  for (const auto& kw : keywords) {
    for (const auto& occ : kw.occurrences) {
      const auto it = col_of.find(occ.session_id);
      if (it == col_of.end()) continue;
      int bin = static_cast<int>(std::floor(occ.position * bins));
      bin = std::clamp(bin, 0, bins - 1);  // p = 1.0 lands in the last bin
      hm.cells[it->second][static_cast<std::size_t>(bin)] += 1.0;
    }
  }

  if (density) {
    for (auto& column : hm.cells) {
      double sum = 0.0;
      for (const double v : column) sum += v;
      if (sum > 0.0) {
        for (double& v : column) v /= sum;
      }
    }
  }
  return hm;
}

double concentration(const Heatmap& heatmap) {
  std::vector<double> pooled(static_cast<std::size_t>(heatmap.bins), 0.0);
  double total = 0.0;
  for (const auto& column : heatmap.cells) {
    for (std::size_t b = 0; b < column.size(); ++b) {
      pooled[b] += column[b];
      total += column[b];
    }
  }
  if (!(total > 0.0)) {
    throw EngineError("concentration: no evidence extracted (heatmap mass is zero)");
  }
  double entropy = 0.0;
  for (const double mass : pooled) {
    if (mass > 0.0) {
      const double q = mass / total;
      entropy -= q * std::log(q);
    }
  }
  return 1.0 - entropy / std::log(static_cast<double>(heatmap.bins));
}

namespace {

VariantAudit run_variant(const std::vector<Interview>& corpus, SpeakerView view,
                         const AuditConfig& config, const SplitAssignment& splits) {
  VariantAudit va;
  va.trained = train_variant(corpus, view, config.graph, config.train, splits);
  va.keywords = extract_keywords(
      va.trained.params, va.trained.graph, va.trained.vocab, config.keyword_tau,
      config.keyword_top_k,
      config.control_keywords ? KeywordClass::Control : KeywordClass::Depressed);
  localize_keywords(va.keywords, corpus, view);
  va.heatmap = build_heatmap(va.keywords, corpus, view, config.heatmap_bins,
                             config.heatmap_density);
  va.concentration_score = concentration(va.heatmap);
  return va;
}

}  // namespace

AuditOutcome audit(const std::vector<Interview>& corpus, const AuditConfig& config,
                   const SplitAssignment& splits) {
  AuditOutcome out;
  out.config = config;
  out.seed = config.train.seed;
  try {
    out.p = run_variant(corpus, SpeakerView::P, config, splits);
  } catch (const std::exception& e) {
    throw EngineError(std::string("audit: participant-only variant failed: ") + e.what());
  }
  try {
    out.i = run_variant(corpus, SpeakerView::I, config, splits);
  } catch (const std::exception& e) {
    throw EngineError(std::string("audit: interviewer-only variant failed: ") + e.what());
  }
  const double p_macro = out.p.trained.report.dev.macro_f1;
  const double i_macro = out.i.trained.report.dev.macro_f1;
  out.bias_flag = i_macro >= p_macro - config.bias_margin &&
                  out.i.concentration_score >= config.concentration_threshold;
  return out;
}

namespace {

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Wraps each keyword token span, leaving everything between spans intact.
// escape, when set, HTML-escapes the surrounding fragments.
std::string mark_keywords(const std::string& text, const std::set<std::string>& words,
                          const std::string& open, const std::string& close, bool escape) {
  std::string out;
  std::size_t cursor = 0;
  for (const auto& span : tokenize_spans(text)) {
    if (words.count(span.token) == 0) continue;
    const std::string before = text.substr(cursor, span.begin - cursor);
    const std::string token = text.substr(span.begin, span.end - span.begin);
    out += escape ? escape_html(before) : before;
    out += open;
    out += escape ? escape_html(token) : token;
    out += close;
    cursor = span.end;
  }
  const std::string tail = text.substr(cursor);
  out += escape ? escape_html(tail) : tail;
  return out;
}

std::set<std::string> keyword_set(const std::vector<KeywordRecord>& keywords) {
  std::set<std::string> words;
  for (const auto& kw : keywords) words.insert(kw.word);
  return words;
}

std::string format_time(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  return buf;
}

}  // namespace

std::string render_annotated_text(const Interview& iv,
                                  const std::vector<KeywordRecord>& keywords, SpeakerView view) {
  const auto words = keyword_set(keywords);
  const Speaker audited = view == SpeakerView::P ? Speaker::Participant : Speaker::Interviewer;
  std::string out;
  out += "# session " + iv.session_id + "  label " + to_string(iv.label) + "  view " +
         to_string(view) + "\n";
  for (const auto& turn : iv.turns) {
    out += "[" + format_time(turn.interval.start) + "-" + format_time(turn.interval.end) + "] ";
    out += to_string(turn.speaker);
    out += ": ";
    out += turn.speaker == audited ? mark_keywords(turn.text, words, "[[", "]]", false)
                                   : turn.text;
    out += "\n";
  }
  return out;
}

std::string render_annotated_html(const Interview& iv,
                                  const std::vector<KeywordRecord>& keywords, SpeakerView view) {
  const auto words = keyword_set(keywords);
  const Speaker audited = view == SpeakerView::P ? Speaker::Participant : Speaker::Interviewer;
  std::string out;
  out += "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>";
  out += escape_html(iv.session_id);
  out += "</title></head>\n<body>\n<h1>session " + escape_html(iv.session_id) + " (label " +
         to_string(iv.label) + ", view " + to_string(view) + ")</h1>\n<dl>\n";
  for (const auto& turn : iv.turns) {
    out += "<dt>" + std::string(to_string(turn.speaker)) + " [" +
           format_time(turn.interval.start) + "-" + format_time(turn.interval.end) + "]</dt>\n";
    out += "<dd>";
    out += turn.speaker == audited ? mark_keywords(turn.text, words, "<mark>", "</mark>", true)
                                   : escape_html(turn.text);
    out += "</dd>\n";
  }
  out += "</dl>\n</body></html>\n";
  return out;
}

}  // namespace ibaudit
