#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ibaudit {

// Lowercased word token plus the byte span it came from in the original
// text, for transcript annotation.
struct TokenSpan {
  std::string token;
  std::size_t begin = 0;  // byte offset of first byte
  std::size_t end = 0;    // one past last byte
};

// Splits text into lowercased word tokens on non-letter/digit boundaries.
// UTF-8 aware: ASCII, Latin-1 supplement, Latin Extended, Greek and Cyrillic
// letters count as word characters and Latin letters are case-folded;
// apostrophes, punctuation and symbols separate ("po'" -> "po"). Invalid
// UTF-8 bytes act as separators. Deterministic; empty text gives an empty
// list.
std::vector<std::string> tokenize(std::string_view text);

// Same segmentation, with byte spans. The token sequence is identical to
// tokenize(text).
std::vector<TokenSpan> tokenize_spans(std::string_view text);

}  // namespace ibaudit
