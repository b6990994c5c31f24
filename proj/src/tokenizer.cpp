#include "ibaudit/tokenizer.hpp"

#include <cstdint>

namespace ibaudit {

namespace {

// Decodes one UTF-8 code point at byte offset i; advances i past it.
// Returns 0xFFFD for malformed or truncated sequences (consuming one byte).
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  std::size_t extra;
  std::uint32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + extra >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k <= extra; ++k) {
    const unsigned char bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += extra + 1;
  return cp;
}

// Letter/digit classification covering the scripts this toolkit meets in
// practice (English and Italian transcripts, plus Greek/Cyrillic for
// robustness). Everything else is a separator.
bool is_word_cp(std::uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
  }
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;  // Latin-1 letters
  if (cp >= 0x100 && cp <= 0x24F) return true;                    // Latin Extended-A/B
  if (cp >= 0x370 && cp <= 0x3FF) return cp != 0x37E;             // Greek
  if (cp >= 0x400 && cp <= 0x4FF) return true;                    // Cyrillic
  return false;
}

// ASCII, Latin-1 and Latin Extended-A case folding; other letters pass
// through unchanged.
std::uint32_t lower_cp(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E && cp % 2 == 1) return cp + 1;
  return cp;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  TokenSpan current;
  bool in_token = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t cp_begin = i;
    const std::uint32_t cp = decode_utf8(text, i);
    if (is_word_cp(cp)) {
      if (!in_token) {
        in_token = true;
        current = TokenSpan{};
        current.begin = cp_begin;
      }
      append_utf8(current.token, lower_cp(cp));
      current.end = i;
    } else if (in_token) {
      out.push_back(std::move(current));
      in_token = false;
    }
  }
  if (in_token) out.push_back(std::move(current));
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  out.reserve(16);
  for (auto& span : tokenize_spans(text)) out.push_back(std::move(span.token));
  return out;
}

}  // namespace ibaudit
