#include "accentgen/alignment.hpp"

#include <algorithm>

namespace accentgen {

namespace {

void set_anchor(EditOp& op) {
  if (op.src_pos == 0) {
    op.anchor = 0;
    op.side = AnchorSide::Before;
  } else {
    op.anchor = op.src_pos - 1;
    op.side = AnchorSide::After;
  }
}

// Appends one elementary op, extending the previous Equal run if possible.
void push(std::vector<EditOp>& ops, EditOp op) {
  if (op.kind == OpKind::Equal && !ops.empty() && ops.back().kind == OpKind::Equal) {
    EditOp& last = ops.back();
    last.src.insert(last.src.end(), op.src.begin(), op.src.end());
    last.dst.insert(last.dst.end(), op.dst.begin(), op.dst.end());
    return;
  }
  if (op.kind == OpKind::Insert) set_anchor(op);
  ops.push_back(std::move(op));
}

}  // namespace

EditScript align(const PhoneSeq& gae, const PhoneSeq& accented) {
  if (gae.empty() || accented.empty()) {
    throw AlignmentError("align: both sequences must be non-empty");
  }
  const std::size_t n = gae.size();
  const std::size_t m = accented.size();
  const std::size_t w = m + 1;
  std::vector<int> d((n + 1) * w);
  for (std::size_t i = 0; i <= n; ++i) d[i * w] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = d[(i - 1) * w + j - 1] + (gae[i - 1] == accented[j - 1] ? 0 : 1);
      d[i * w + j] = std::min({sub, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
    }
  }

  // Backtrace from the end; collected in reverse.
  std::vector<EditOp> rev;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const int here = d[i * w + j];
    EditOp op;
    if (i > 0 && j > 0) {
      const bool same = gae[i - 1] == accented[j - 1];
      if (here == d[(i - 1) * w + j - 1] + (same ? 0 : 1)) {
        op.kind = same ? OpKind::Equal : OpKind::Replace;
        op.src = {gae[i - 1]};
        op.dst = {accented[j - 1]};
        op.src_pos = --i;
        op.dst_pos = --j;
        rev.push_back(std::move(op));
        continue;
      }
    }
    if (i > 0 && here == d[(i - 1) * w + j] + 1) {
      op.kind = OpKind::Delete;
      op.src = {gae[i - 1]};
      op.src_pos = --i;
      op.dst_pos = j;
    } else {
      op.kind = OpKind::Insert;
      op.dst = {accented[j - 1]};
      op.src_pos = i;
      op.dst_pos = --j;
    }
    rev.push_back(std::move(op));
  }

  EditScript script;
  script.cost = d[n * w + m];
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) push(script.ops, std::move(*it));
  return script;
}

EditScript merge_ops(const EditScript& script) {
  EditScript out;
  out.cost = script.cost;
  for (const EditOp& op : script.ops) {
    if (op.kind == OpKind::Equal) {
      push(out.ops, op);
      continue;
    }
    if (out.ops.empty() || out.ops.back().kind == OpKind::Equal) {
      out.ops.push_back(op);
      continue;
    }
    EditOp& run = out.ops.back();
    run.src.insert(run.src.end(), op.src.begin(), op.src.end());
    run.dst.insert(run.dst.end(), op.dst.begin(), op.dst.end());
    if (run.src.empty()) {
      run.kind = OpKind::Insert;
    } else if (run.dst.empty()) {
      run.kind = OpKind::Delete;
    } else {
      run.kind = OpKind::Replace;
    }
  }
  for (EditOp& op : out.ops) {
    if (op.kind == OpKind::Insert) {
      set_anchor(op);
    } else {
      op.anchor = 0;  // a fused run that began with an insertion keeps no anchor
      op.side = AnchorSide::After;
    }
  }
  return out;
}

int edit_distance(const PhoneSeq& a, const PhoneSeq& b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({diag + (a[i - 1] == b[j - 1] ? 0 : 1), up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string format_script(const EditScript& script) {
  std::string out;
  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case OpKind::Equal:
        out += "= " + render(op.src);
        break;
      case OpKind::Replace:
        out += "~ " + render(op.src) + " → " + render(op.dst);
        break;
      case OpKind::Insert:
        out += "+ " + render(op.dst);
        break;
      case OpKind::Delete:
        out += "- " + render(op.src);
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace accentgen
