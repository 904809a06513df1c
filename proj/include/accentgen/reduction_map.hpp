#pragma once

// Reduction dictionary: maps rich transcription symbols onto a small target
// inventory (the 39 CMU sounds in the shipped asset).
//
// File format, UTF-8, one rule per line:
//
//   !inventory p b t d ...        (must precede every rule)
//   <source> TAB <target phones>  (target may be empty: the phone vanishes)
//   ◌<mark> TAB                   (drop this mark from any phone)
//   # comment

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "accentgen/ipa.hpp"

namespace accentgen {

class MapFormatError : public std::runtime_error {
 public:
  MapFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnmappedPhone : public std::runtime_error {
 public:
  UnmappedPhone(Phone phone, std::size_t position)
      : std::runtime_error("phone '" + render(phone) + "' at position " +
                           std::to_string(position) + " is neither mapped nor in the inventory"),
        phone_(std::move(phone)),
        position_(position) {}
  const Phone& phone() const { return phone_; }
  std::size_t position() const { return position_; }

 private:
  Phone phone_;
  std::size_t position_;
};

class ReductionMap {
 public:
  ReductionMap() = default;

  static ReductionMap parse(std::istream& in);
  static ReductionMap load(const std::filesystem::path& path);

  void add_inventory(Phone sound);
  // Throws std::invalid_argument when the target leaves the inventory or the
  // source is itself an inventory sound.
  void add_rule(Phone source, PhoneSeq target);
  void add_dropped_mark(char32_t mark);

  const std::set<Phone>& inventory() const { return inventory_; }
  const std::map<Phone, PhoneSeq>& rules() const { return rules_; }
  const std::set<char32_t>& dropped_marks() const { return dropped_marks_; }
  bool in_inventory(const Phone& p) const { return inventory_.count(p) != 0; }

  // Target for one phone; nullopt when the phone cannot be resolved.
  std::optional<PhoneSeq> resolve(const Phone& p) const;

 private:
  std::set<Phone> inventory_;
  std::map<Phone, PhoneSeq> rules_;
  std::set<char32_t> dropped_marks_;
};

// Throws UnmappedPhone for the first phone outside both map and inventory.
PhoneSeq simplify(const PhoneSeq& seq, const ReductionMap& map);

}  // namespace accentgen
