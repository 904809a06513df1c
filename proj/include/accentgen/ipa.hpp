#pragma once

// IPA phones and phone sequences.
//
// A Phone is one base symbol followed by the modifier letters and combining
// marks attached to it.  Affricates and diphthongs written with a tie bar
// (t͡ʃ, o͡ʊ) are a single phone whose base spans both letters.

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace accentgen {

struct Phone {
  std::u32string base;
  std::u32string modifiers;

  Phone() = default;
  explicit Phone(std::u32string b, std::u32string m = {})
      : base(std::move(b)), modifiers(std::move(m)) {}

  bool has_modifier(char32_t mark) const {
    return modifiers.find(mark) != std::u32string::npos;
  }

  auto operator<=>(const Phone&) const = default;
  bool operator==(const Phone&) const = default;
};

using PhoneSeq = std::vector<Phone>;

class IpaError : public std::runtime_error {
 public:
  enum class Kind { UnknownSymbol, LeadingModifier, DuplicateModifier, DanglingTie };

  IpaError(Kind kind, std::size_t position, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position) {}

  Kind kind() const { return kind_; }
  // Offset in code points into the normalized input.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

namespace unicode {

enum class CharClass { Base, Modifier, Combining, Tie, Other };

CharClass classify(char32_t c);

std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

// Canonical decomposition (NFD).
std::u32string nfd(std::u32string_view text);
std::string nfd_utf8(std::string_view text);

}  // namespace unicode

// Splits an IPA word into phones.  Input is NFD-normalized first.
PhoneSeq tokenize(std::string_view text);

// Same as tokenize, for a single phone; throws unless exactly one phone.
Phone parse_phone(std::string_view text);

std::string render(const Phone& phone);
std::string render(const PhoneSeq& seq);

std::size_t hash_value(const Phone& phone);

}  // namespace accentgen

template <>
struct std::hash<accentgen::Phone> {
  std::size_t operator()(const accentgen::Phone& p) const noexcept {
    return accentgen::hash_value(p);
  }
};
