#include <doctest.h>

#include <random>

#include "accentgen/alignment.hpp"
#include "oracles.hpp"

using namespace accentgen;
using oracle::ipa;

namespace {

EditOp op(OpKind k, const char* src, const char* dst, std::size_t sp, std::size_t dp) {
  EditOp o;
  o.kind = k;
  o.src = ipa(src);
  o.dst = ipa(dst);
  o.src_pos = sp;
  o.dst_pos = dp;
  return o;
}

EditOp insert_op(const char* dst, std::size_t sp, std::size_t dp) {
  EditOp o = op(OpKind::Insert, "", dst, sp, dp);
  o.side = sp == 0 ? AnchorSide::Before : AnchorSide::After;
  o.anchor = sp == 0 ? 0 : sp - 1;
  return o;
}

}  // namespace

TEST_CASE("pliz vs bəliz merges to one replacement") {
  const EditScript raw = align(ipa("pliz"), ipa("bəliz"));
  CHECK(raw.cost == 2);
  const EditScript merged = merge_ops(raw);
  REQUIRE(merged.ops.size() == 2);
  CHECK(merged.ops[0] == op(OpKind::Replace, "p", "bə", 0, 0));
  CHECK(merged.ops[1] == op(OpKind::Equal, "liz", "liz", 1, 2));
  CHECK(merged.cost == 2);
  CHECK(format_script(merged) == "~ p → bə\n= liz\n");
}

TEST_CASE("identity alignment is one Equal op") {
  const EditScript s = align(ipa("mɪlk"), ipa("mɪlk"));
  REQUIRE(s.ops.size() == 1);
  CHECK(s.ops[0] == op(OpKind::Equal, "mɪlk", "mɪlk", 0, 0));
  CHECK(s.cost == 0);
}

TEST_CASE("mɪlk vs mil") {
  const EditScript s = align(ipa("mɪlk"), ipa("mil"));
  CHECK(s.cost == 2);
  CHECK(oracle::brute_force_cost(ipa("mɪlk"), ipa("mil")) == 2);
  REQUIRE(s.ops.size() == 4);
  CHECK(s.ops[0] == op(OpKind::Equal, "m", "m", 0, 0));
  CHECK(s.ops[1] == op(OpKind::Replace, "ɪ", "i", 1, 1));
  CHECK(s.ops[2] == op(OpKind::Equal, "l", "l", 2, 2));
  CHECK(s.ops[3] == op(OpKind::Delete, "k", "", 3, 3));
}

TEST_CASE("word-initial deletions fuse into one multi-phone deletion") {
  const EditScript merged = align_merged(ipa("stɛla"), ipa("ɛla"));
  REQUIRE(merged.ops.size() == 2);
  CHECK(merged.ops[0] == op(OpKind::Delete, "st", "", 0, 0));
  std::string why;
  CHECK_MESSAGE(oracle::replay(merged, ipa("stɛla"), ipa("ɛla"), &why), why);
}

TEST_CASE("insertions are anchored before the first phone or after the previous one") {
  const EditScript a = align(ipa("stɔɹ"), ipa("ɪstɔɹ"));
  REQUIRE(a.ops.size() == 2);
  CHECK(a.ops[0] == insert_op("ɪ", 0, 0));
  CHECK(a.ops[0].side == AnchorSide::Before);

  const EditScript b = align_merged(ipa("θɪŋz"), ipa("θɪŋɡz"));
  REQUIRE(b.ops.size() == 3);
  CHECK(b.ops[1] == insert_op("ɡ", 3, 3));
  CHECK(b.ops[1].anchor == 2);
}

TEST_CASE("merge leaves isolated ops alone") {
  const EditScript s = align(ipa("mɪlk"), ipa("mil"));
  CHECK(merge_ops(s) == s);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(align(PhoneSeq{}, ipa("a")), AlignmentError);
  CHECK_THROWS_AS(align(ipa("a"), PhoneSeq{}), AlignmentError);
}

TEST_CASE("property: minimal cost, reconstruction and symmetry on random pairs") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 400; ++trial) {
    const PhoneSeq a = oracle::random_seq(rng, 1, 7, 5);
    const PhoneSeq b = oracle::random_seq(rng, 1, 7, 5);
    const EditScript s = align(a, b);
    const int best = oracle::brute_force_cost(a, b);
    CHECK(s.cost == best);
    CHECK(edit_distance(a, b) == best);
    CHECK(align(b, a).cost == best);

    int elementary = 0;
    for (const EditOp& o : s.ops) {
      if (o.kind != OpKind::Equal) {
        ++elementary;
        CHECK(std::max(o.src.size(), o.dst.size()) == 1);
      }
    }
    CHECK(elementary == s.cost);
    for (std::size_t i = 1; i < s.ops.size(); ++i) {
      CHECK_FALSE((s.ops[i].kind == OpKind::Equal && s.ops[i - 1].kind == OpKind::Equal));
    }

    std::string why;
    CHECK_MESSAGE(oracle::replay(s, a, b, &why), why);
    const EditScript m = merge_ops(s);
    CHECK(m.cost == s.cost);
    CHECK_MESSAGE(oracle::replay(m, a, b, &why), why);
    for (std::size_t i = 1; i < m.ops.size(); ++i) {
      CHECK((m.ops[i].kind == OpKind::Equal || m.ops[i - 1].kind == OpKind::Equal));
    }
    CHECK(align(a, b) == s);
  }
}
