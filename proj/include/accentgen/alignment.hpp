#pragma once

// Unit-cost edit scripts between a reference (GAE) phone sequence and an
// accented one.
//
// align() returns elementary operations (one phone per Replace/Insert/Delete,
// Equal runs coalesced).  merge_ops() fuses each maximal run of adjacent
// non-Equal operations, turning e.g. "p→ə, +b" into the single replacement
// p→bə.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "accentgen/ipa.hpp"

namespace accentgen {

class AlignmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OpKind { Equal, Replace, Insert, Delete };
enum class AnchorSide { Before, After };

struct EditOp {
  OpKind kind = OpKind::Equal;
  PhoneSeq src;  // GAE side
  PhoneSeq dst;  // accented side
  std::size_t src_pos = 0;  // offset of src (or insertion point) in the GAE sequence
  std::size_t dst_pos = 0;

  // Insert only.  A run before the first GAE phone is "before" phone 0;
  // every other run is "after" the GAE phone preceding it.
  std::size_t anchor = 0;
  AnchorSide side = AnchorSide::After;

  bool operator==(const EditOp&) const = default;
};

struct EditScript {
  std::vector<EditOp> ops;
  int cost = 0;

  bool operator==(const EditScript&) const = default;
};

// Throws AlignmentError when either side is empty.  Backtrace ties are
// broken Replace/Equal first, then Delete, then Insert.
EditScript align(const PhoneSeq& gae, const PhoneSeq& accented);

EditScript merge_ops(const EditScript& script);

inline EditScript align_merged(const PhoneSeq& gae, const PhoneSeq& accented) {
  return merge_ops(align(gae, accented));
}

// Minimal unit edit cost only.
int edit_distance(const PhoneSeq& a, const PhoneSeq& b);

// One op per line: "= liz", "~ p → bə", "+ ə", "- k".
std::string format_script(const EditScript& script);

}  // namespace accentgen
