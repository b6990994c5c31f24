#include "ibaudit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ibaudit/errors.hpp"

namespace ibaudit {

using nlohmann::json;

const char* to_string(Speaker s) { return s == Speaker::Participant ? "P" : "I"; }
const char* to_string(Label l) { return l == Label::Depressed ? "D" : "C"; }
const char* to_string(SpeakerView v) { return v == SpeakerView::P ? "P" : "I"; }

SpeakerView parse_view(const std::string& s) {
  if (s == "P" || s == "p") return SpeakerView::P;
  if (s == "I" || s == "i") return SpeakerView::I;
  throw ValidationError("unknown speaker view '" + s + "' (expected P or I)");
}

namespace {

Label parse_label(const std::string& s, const std::string& session_id) {
  if (s == "D") return Label::Depressed;
  if (s == "C") return Label::Control;
  throw ValidationError("session " + session_id + ": unknown label '" + s + "' (expected D or C)");
}

Speaker parse_speaker(const std::string& s, const std::string& session_id) {
  if (s == "P") return Speaker::Participant;
  if (s == "I") return Speaker::Interviewer;
  throw ValidationError("session " + session_id + ": unknown speaker '" + s +
                        "' (expected P or I)");
}

}  // namespace

void validate_interview(const Interview& iv) {
  if (iv.session_id.empty()) throw ValidationError("session with empty session_id");
  if (!(iv.duration > 0.0)) {
    throw ValidationError("session " + iv.session_id + ": duration must be positive");
  }
  for (const auto& t : iv.turns) {
    if (!(t.interval.start >= 0.0) || !(t.interval.start < t.interval.end)) {
      std::ostringstream msg;
      msg << "session " << iv.session_id << ": turn interval [" << t.interval.start << ", "
          << t.interval.end << "] violates 0 <= start < end";
      throw ValidationError(msg.str());
    }
    if (t.interval.end > iv.duration) {
      std::ostringstream msg;
      msg << "session " << iv.session_id << ": turn ends at " << t.interval.end
          << " past duration " << iv.duration;
      throw ValidationError(msg.str());
    }
  }
  for (std::size_t i = 1; i < iv.turns.size(); ++i) {
    if (iv.turns[i].interval.start < iv.turns[i - 1].interval.start) {
      throw ValidationError("session " + iv.session_id + ": turns not sorted by start time");
    }
  }
  // Same-speaker overlap check: within one speaker stream, each turn must
  // start at or after the previous one ends.
  for (Speaker sp : {Speaker::Participant, Speaker::Interviewer}) {
    double prev_end = -1.0;
    for (const auto& t : iv.turns) {
      if (t.speaker != sp) continue;
      if (prev_end > t.interval.start) {
        std::ostringstream msg;
        msg << "session " << iv.session_id << ": overlapping " << to_string(sp)
            << " turns at t=" << t.interval.start;
        throw ValidationError(msg.str());
      }
      prev_end = std::max(prev_end, t.interval.end);
    }
  }
}

std::vector<Interview> parse_corpus(const std::filesystem::path& path, CorpusFormat format) {
  if (format != CorpusFormat::Jsonl) throw ValidationError("unsupported corpus format");
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file: " + path.string());

  std::vector<Interview> corpus;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": malformed record: " << e.what();
      throw ValidationError(msg.str());
    }

    Interview iv;
    try {
      iv.session_id = rec.at("session_id").get<std::string>();
      iv.label = parse_label(rec.at("label").get<std::string>(), iv.session_id);
      for (const auto& jt : rec.at("turns")) {
        Turn t;
        t.speaker = parse_speaker(jt.at("speaker").get<std::string>(), iv.session_id);
        t.interval.start = jt.at("start_s").get<double>();
        t.interval.end = jt.at("end_s").get<double>();
        t.text = jt.at("text").get<std::string>();
        iv.turns.push_back(std::move(t));
      }
      if (rec.contains("duration_s")) {
        iv.duration = rec.at("duration_s").get<double>();
      } else {
        // Fallback when metadata lacks a total: the latest turn end.
        double max_end = 0.0;
        for (const auto& t : iv.turns) max_end = std::max(max_end, t.interval.end);
        iv.duration = max_end;
      }
    } catch (const json::exception& e) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": malformed record: " << e.what();
      throw ValidationError(msg.str());
    }

    std::stable_sort(iv.turns.begin(), iv.turns.end(), [](const Turn& a, const Turn& b) {
      return a.interval.start < b.interval.start;
    });
    validate_interview(iv);
    corpus.push_back(std::move(iv));
  }
  return corpus;
}

std::string session_to_jsonl(const Interview& iv) {
  json rec;
  rec["session_id"] = iv.session_id;
  rec["label"] = to_string(iv.label);
  rec["duration_s"] = iv.duration;
  json turns = json::array();
  for (const auto& t : iv.turns) {
    turns.push_back({{"speaker", to_string(t.speaker)},
                     {"start_s", t.interval.start},
                     {"end_s", t.interval.end},
                     {"text", t.text}});
  }
  rec["turns"] = std::move(turns);
  return rec.dump();
}

void write_corpus(const std::filesystem::path& path, const std::vector<Interview>& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EngineError("cannot write corpus file: " + path.string());
  for (const auto& iv : corpus) out << session_to_jsonl(iv) << "\n";
}

Interview project_view(const Interview& iv, SpeakerView view) {
  const Speaker keep = view == SpeakerView::P ? Speaker::Participant : Speaker::Interviewer;
  Interview out;
  out.session_id = iv.session_id;
  out.label = iv.label;
  out.duration = iv.duration;
  for (const auto& t : iv.turns) {
    if (t.speaker == keep) out.turns.push_back(t);
  }
  return out;
}

double normalized_position(const Turn& turn, double duration) {
  if (!(duration > 0.0)) throw ValidationError("normalized_position: duration must be positive");
  if (turn.interval.start < 0.0 || turn.interval.end > duration) {
    throw ValidationError("normalized_position: turn outside [0, duration]");
  }
  return (turn.interval.start + turn.interval.end) / (2.0 * duration);
}

std::string document_text(const Interview& iv) {
  std::string out;
  for (const auto& t : iv.turns) {
    if (t.text.empty()) continue;
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

}  // namespace ibaudit
