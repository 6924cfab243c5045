#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace codelex {

namespace detail {

// Decodes one UTF-8 scalar starting at s[i]. Malformed bytes decode as
// U+FFFD with length 1 so the scanner always makes progress.
inline char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t* len) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t off) {
    return i + off < s.size() &&
           (static_cast<unsigned char>(s[i + off]) & 0xC0) == 0x80;
  };
  auto bits = [&](std::size_t off) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i + off]) & 0x3F);
  };
  if (b0 < 0x80) {
    *len = 1;
    return b0;
  }
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    *len = 2;
    return (static_cast<char32_t>(b0 & 0x1F) << 6) | bits(1);
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    *len = 3;
    return (static_cast<char32_t>(b0 & 0x0F) << 12) | (bits(1) << 6) | bits(2);
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    *len = 4;
    return (static_cast<char32_t>(b0 & 0x07) << 18) | (bits(1) << 12) |
           (bits(2) << 6) | bits(3);
  }
  *len = 1;
  return 0xFFFD;
}

inline bool is_space_cp(char32_t cp) {
  if (cp < 0x80) return std::isspace(static_cast<int>(cp)) != 0;
  switch (cp) {
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200B;
  }
}

inline bool is_emoji_cp(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // emoticons, transport, symbols
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // stars, arrows
         cp == 0x2139;
}

// Joiners that glue an emoji sequence together.
inline bool is_emoji_joiner(char32_t cp) {
  return cp == 0x200D || cp == 0xFE0F || cp == 0xFE0E;
}

inline bool is_word_cp(char32_t cp) {
  if (cp < 0x80)
    return std::isalnum(static_cast<int>(cp)) != 0 || cp == '_';
  return !is_space_cp(cp) && !is_emoji_cp(cp) && !is_emoji_joiner(cp);
}

inline bool ascii_iprefix(std::string_view s, std::size_t i, std::string_view p) {
  if (s.size() - i < p.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(s[i + k])) != p[k]) return false;
  }
  return true;
}

}  // namespace detail

// Rule-based tweet-style tokenizer: lowercases, rewrites @mentions to
// "user_mention" and URLs to "url", keeps hashtags and emoji as tokens,
// drops other punctuation. Idempotent on its own output.
inline std::vector<std::string> tokenize(std::string_view text) {
  using namespace detail;
  std::vector<std::string> tokens;
  std::size_t i = 0;
  bool prev_word = false;  // previous scalar belonged to a word

  auto scan_word = [&](std::size_t pos, std::string* out) {
    while (pos < text.size()) {
      std::size_t len = 0;
      char32_t cp = decode_utf8(text, pos, &len);
      if (cp == '\'') {
        // keep apostrophes only between word characters
        std::size_t len2 = 0;
        if (out->empty() || pos + len >= text.size()) break;
        char32_t next = decode_utf8(text, pos + len, &len2);
        if (!is_word_cp(next)) break;
        out->push_back('\'');
        pos += len;
        continue;
      }
      if (!is_word_cp(cp)) break;
      if (cp < 0x80)
        out->push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
      else
        out->append(text.substr(pos, len));
      pos += len;
    }
    return pos;
  };

  while (i < text.size()) {
    std::size_t len = 0;
    char32_t cp = decode_utf8(text, i, &len);

    if (is_space_cp(cp)) {
      prev_word = false;
      i += len;
      continue;
    }

    if (!prev_word && (ascii_iprefix(text, i, "http://") ||
                       ascii_iprefix(text, i, "https://") ||
                       ascii_iprefix(text, i, "www."))) {
      while (i < text.size()) {
        std::size_t l2 = 0;
        if (is_space_cp(decode_utf8(text, i, &l2))) break;
        i += l2;
      }
      tokens.emplace_back("url");
      prev_word = true;
      continue;
    }

    if (cp == '@' && !prev_word && i + len < text.size()) {
      std::size_t l2 = 0;
      char32_t next = decode_utf8(text, i + len, &l2);
      if (is_word_cp(next)) {
        std::string dummy;
        i = scan_word(i + len, &dummy);
        tokens.emplace_back("user_mention");
        prev_word = true;
        continue;
      }
    }

    if (cp == '#' && i + len < text.size()) {
      std::size_t l2 = 0;
      char32_t next = decode_utf8(text, i + len, &l2);
      if (is_word_cp(next)) {
        std::string tag = "#";
        i = scan_word(i + len, &tag);
        tokens.push_back(std::move(tag));
        prev_word = true;
        continue;
      }
    }

    if (is_emoji_cp(cp)) {
      std::size_t start = i;
      i += len;
      // swallow joiner sequences (skin tones, ZWJ families) into one token
      while (i < text.size()) {
        std::size_t l2 = 0;
        char32_t nxt = decode_utf8(text, i, &l2);
        if (is_emoji_joiner(nxt)) {
          i += l2;
          std::size_t l3 = 0;
          if (i < text.size() && is_emoji_cp(decode_utf8(text, i, &l3))) i += l3;
          continue;
        }
        break;
      }
      tokens.emplace_back(text.substr(start, i - start));
      prev_word = false;
      continue;
    }

    if (is_word_cp(cp)) {
      std::string word;
      i = scan_word(i, &word);
      tokens.push_back(std::move(word));
      prev_word = true;
      continue;
    }

    // punctuation and anything else separates tokens
    prev_word = false;
    i += len;
  }
  return tokens;
}

}  // namespace codelex
