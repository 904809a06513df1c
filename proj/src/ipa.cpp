#include "accentgen/ipa.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>

namespace accentgen {
namespace unicode {

namespace {

constexpr char32_t kTieAbove = 0x0361;
constexpr char32_t kTieBelow = 0x035C;

const icu::Normalizer2& nfd_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error("ICU NFD normalizer unavailable");
  }
  return *n;
}

icu::UnicodeString to_icu(std::u32string_view text) {
  return icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(text.data()),
                                       static_cast<int32_t>(text.size()));
}

std::u32string from_icu(const icu::UnicodeString& s) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

}  // namespace

CharClass classify(char32_t c) {
  if (c == kTieAbove || c == kTieBelow) return CharClass::Tie;
  const auto cp = static_cast<UChar32>(c);
  switch (u_charType(cp)) {
    case U_NON_SPACING_MARK:
    case U_COMBINING_SPACING_MARK:
    case U_ENCLOSING_MARK:
      return CharClass::Combining;
    case U_MODIFIER_LETTER:
    case U_MODIFIER_SYMBOL:
      return CharClass::Modifier;
    case U_LOWERCASE_LETTER:
    case U_OTHER_LETTER: {
      UErrorCode status = U_ZERO_ERROR;
      UScriptCode script = uscript_getScript(cp, &status);
      if (U_SUCCESS(status) && (script == USCRIPT_LATIN || script == USCRIPT_GREEK)) {
        return CharClass::Base;
      }
      return CharClass::Other;
    }
    default:
      return CharClass::Other;
  }
}

std::u32string decode_utf8(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  return from_icu(s);
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 2);
  for (char32_t c : text) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

std::u32string nfd(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfd_instance().normalize(to_icu(text), status);
  if (U_FAILURE(status)) throw std::runtime_error("NFD normalization failed");
  return from_icu(normalized);
}

std::string nfd_utf8(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfd_instance().normalize(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(text.data(), static_cast<int32_t>(text.size()))),
      status);
  if (U_FAILURE(status)) throw std::runtime_error("NFD normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace unicode

namespace {

std::string describe(char32_t c) {
  static const char* hex = "0123456789ABCDEF";
  std::string code = "U+";
  for (int shift = (c > 0xFFFF ? 20 : 12); shift >= 0; shift -= 4) code += hex[(c >> shift) & 0xF];
  return code;
}

}  // namespace

PhoneSeq tokenize(std::string_view text) {
  using unicode::CharClass;
  const std::u32string chars = unicode::nfd(unicode::decode_utf8(text));
  PhoneSeq out;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const char32_t c = chars[i];
    switch (unicode::classify(c)) {
      case CharClass::Base:
        out.emplace_back(std::u32string(1, c));
        break;
      case CharClass::Tie: {
        if (out.empty()) {
          throw IpaError(IpaError::Kind::LeadingModifier, i,
                         "tie bar " + describe(c) + " at position " + std::to_string(i) +
                             " has no preceding base");
        }
        if (i + 1 >= chars.size() || unicode::classify(chars[i + 1]) != CharClass::Base) {
          throw IpaError(IpaError::Kind::DanglingTie, i,
                         "tie bar at position " + std::to_string(i) + " is not followed by a base");
        }
        // Marks already attached to the first half stay inside the base span so
        // rendering reproduces the original order.
        Phone& p = out.back();
        p.base += p.modifiers;
        p.modifiers.clear();
        p.base += c;
        p.base += chars[++i];
        break;
      }
      case CharClass::Modifier:
      case CharClass::Combining: {
        if (out.empty()) {
          throw IpaError(IpaError::Kind::LeadingModifier, i,
                         "mark " + describe(c) + " at position " + std::to_string(i) +
                             " has no preceding base");
        }
        Phone& p = out.back();
        if (p.has_modifier(c)) {
          throw IpaError(IpaError::Kind::DuplicateModifier, i,
                         "mark " + describe(c) + " repeated at position " + std::to_string(i));
        }
        p.modifiers += c;
        break;
      }
      case CharClass::Other:
        throw IpaError(IpaError::Kind::UnknownSymbol, i,
                       "unknown symbol " + describe(c) + " at position " + std::to_string(i));
    }
  }
  return out;
}

Phone parse_phone(std::string_view text) {
  PhoneSeq seq = tokenize(text);
  if (seq.size() != 1) {
    throw IpaError(IpaError::Kind::UnknownSymbol, 0,
                   "expected exactly one phone in '" + std::string(text) + "'");
  }
  return std::move(seq.front());
}

std::string render(const Phone& phone) {
  std::u32string s = phone.base;
  s += phone.modifiers;
  return unicode::encode_utf8(s);
}

std::string render(const PhoneSeq& seq) {
  std::u32string s;
  for (const Phone& p : seq) {
    s += p.base;
    s += p.modifiers;
  }
  return unicode::encode_utf8(s);
}

std::size_t hash_value(const Phone& phone) {
  std::size_t h = std::hash<std::u32string>{}(phone.base);
  h ^= std::hash<std::u32string>{}(phone.modifiers) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace accentgen
