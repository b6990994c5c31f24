#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ibaudit/interval.hpp"

namespace ibaudit {

enum class Speaker { Participant, Interviewer };
enum class Label { Depressed, Control };
enum class SpeakerView { P, I };  // participant-only / interviewer-only projection

const char* to_string(Speaker s);
const char* to_string(Label l);
const char* to_string(SpeakerView v);
SpeakerView parse_view(const std::string& s);  // "P" or "I"

struct Turn {
  Speaker speaker = Speaker::Participant;
  TimeInterval interval;
  std::string text;  // may be empty (interviewer back-channels)
};

// One labeled session. Invariants (enforced by validate_interview):
//   - turns sorted ascending by interval.start
//   - turns of the same speaker pairwise non-overlapping
//   - every turn inside [0, duration]
struct Interview {
  std::string session_id;
  Label label = Label::Control;
  double duration = 0.0;  // seconds
  std::vector<Turn> turns;
};

void validate_interview(const Interview& iv);

enum class CorpusFormat { Jsonl };

// Reads one session record per line. Malformed JSON raises ValidationError
// naming the line number; invariant violations name the session_id. Turns
// are re-sorted by start time before validation. A missing "duration_s"
// falls back to the maximum turn end.
std::vector<Interview> parse_corpus(const std::filesystem::path& path,
                                    CorpusFormat format = CorpusFormat::Jsonl);

void write_corpus(const std::filesystem::path& path, const std::vector<Interview>& corpus);

// One JSONL line for a session (no trailing newline). write_corpus emits
// exactly these lines, so generator determinism is byte-level.
std::string session_to_jsonl(const Interview& iv);

// Keeps only the turns of the selected speaker; session_id, label and
// duration are unchanged. An empty projection is legal.
Interview project_view(const Interview& iv, SpeakerView view);

// Timeline fraction of a turn: midpoint of its interval over the duration.
double normalized_position(const Turn& turn, double duration);

// Concatenated turn texts in timeline order, single-space separated.
// Empty-text turns contribute nothing.
std::string document_text(const Interview& iv);

}  // namespace ibaudit
