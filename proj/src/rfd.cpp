#include "bratteli/rfd.hpp"

#include "bratteli/error.hpp"
#include "bratteli/limits.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

namespace bratteli {

namespace {

MultiplicityMatrix sub_block(const MultiplicityMatrix& a, std::size_t r0, std::size_t r1,
                             std::size_t c0, std::size_t c1) {
  MultiplicityMatrix out(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i) {
    for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = a(i, j);
  }
  return out;
}

MultiplicityMatrix permuted(const MultiplicityMatrix& a, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) {
  MultiplicityMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  }
  return out;
}

std::vector<std::size_t> complete_order(const std::vector<std::size_t>& persistent,
                                        std::size_t width) {
  std::vector<std::size_t> order = persistent;
  std::vector<bool> used(width, false);
  for (auto v : persistent) used[v] = true;
  for (std::size_t v = 0; v < width; ++v) {
    if (!used[v]) order.push_back(v);
  }
  return order;
}

/// Calls `visit` on every k-subset of `items` in lexicographic order until it
/// returns true.
bool for_each_subset(const std::vector<std::size_t>& items, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > items.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::size_t> subset(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = items[idx[i]];
    if (visit(subset)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

const char* block_name(bool middle_row, bool persistent_col) {
  if (middle_row) return persistent_col ? "A^(2,1)" : "A^(2,2)";
  return persistent_col ? "A^(3,1)" : "A^(3,2)";
}

class Search {
 public:
  Search(const BratteliPrefix& prefix, RfdMode mode, bool ji)
      : prefix_(prefix), mode_(mode), ji_(ji), chosen_(prefix.depth()) {}

  bool run() {
    const std::size_t m0 = prefix_.width(0);
    std::vector<std::size_t> all(m0);
    for (std::size_t v = 0; v < m0; ++v) all[v] = v;
    for (std::size_t r0 = 1; r0 <= m0; ++r0) {
      if (mode_ == RfdMode::Strict) {
        std::vector<std::size_t> p(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r0));
        if (from_level(0, p)) return true;
      } else if (for_each_subset(all, r0, [&](const auto& p) { return from_level(0, p); })) {
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<std::size_t>>& chosen() const { return chosen_; }
  const std::optional<std::pair<std::size_t, std::string>>& first_reason() const {
    return first_reason_;
  }

 private:
  void fail(std::size_t step, std::string why) {
    if (!first_reason_) first_reason_.emplace(step, std::move(why));
  }

  bool from_level(std::size_t n, const std::vector<std::size_t>& persistent) {
    if (n + 1 == prefix_.depth()) {
      chosen_[n] = persistent;
      return true;
    }
    std::vector<std::size_t> key = persistent;
    std::sort(key.begin(), key.end());
    if (failed_.count({n, key})) return false;

    std::vector<std::size_t> successors;
    std::vector<bool> used(prefix_.width(n + 1), false);
    bool ok = assign_successors(n, persistent, 0, successors, used);
    if (ok) chosen_[n] = persistent;
    else failed_.insert({n, std::move(key)});
    return ok;
  }

  bool row_is_unit(const MultiplicityMatrix& a, std::size_t row, std::size_t p) const {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(row, j) != (j == p ? 1 : 0)) return false;
    }
    return true;
  }

  bool assign_successors(std::size_t n, const std::vector<std::size_t>& persistent,
                         std::size_t idx, std::vector<std::size_t>& successors,
                         std::vector<bool>& used) {
    const auto& a = prefix_.matrices[n];
    const auto& lo = prefix_.levels[n];
    const auto& hi = prefix_.levels[n + 1];
    if (idx == persistent.size()) return choose_new_lines(n, persistent, successors, used);

    const std::size_t p = persistent[idx];
    if (mode_ == RfdMode::Strict) {
      if (p >= a.rows()) {
        fail(n, "r_n = " + std::to_string(persistent.size()) + " exceeds m_{n+1} = " +
                    std::to_string(a.rows()));
        return false;
      }
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const bool in_left = j < persistent.size();
        if (a(p, j) != (j == p ? 1 : 0)) {
          fail(n, in_left ? "top-left block of A is not the identity (row " + std::to_string(p) + ")"
                          : "top-right block of A is non-zero (row " + std::to_string(p) + ")");
          return false;
        }
      }
      if (hi[p] != lo[p]) {
        fail(n, "u-stability fails for line " + std::to_string(p) + ": " + lo[p].get_str() +
                    " -> " + hi[p].get_str());
        return false;
      }
      successors.push_back(p);
      used[p] = true;
      bool ok = assign_successors(n, persistent, idx + 1, successors, used);
      successors.pop_back();
      used[p] = false;
      return ok;
    }

    bool any = false;
    for (std::size_t s = 0; s < a.rows(); ++s) {
      if (used[s] || !row_is_unit(a, s, p) || hi[s] != lo[p]) continue;
      any = true;
      successors.push_back(s);
      used[s] = true;
      bool ok = assign_successors(n, persistent, idx + 1, successors, used);
      successors.pop_back();
      used[s] = false;
      if (ok) return true;
    }
    if (!any) {
      fail(n, "vertex " + std::to_string(p) +
                  " has no successor with a single multiplicity-1 edge and equal size");
    }
    return false;
  }

  bool choose_new_lines(std::size_t n, const std::vector<std::size_t>& persistent,
                        const std::vector<std::size_t>& successors,
                        const std::vector<bool>& used) {
    const auto& a = prefix_.matrices[n];
    std::vector<bool> is_persistent(a.cols(), false);
    for (auto p : persistent) is_persistent[p] = true;
    std::vector<std::size_t> other_cols;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!is_persistent[c]) other_cols.push_back(c);
    }
    std::vector<std::size_t> rest;
    for (std::size_t s = 0; s < a.rows(); ++s) {
      if (!used[s]) rest.push_back(s);
    }

    if (rest.empty()) {
      // Only an identity step may keep r constant.
      if (!other_cols.empty()) {
        fail(n, "r cannot increase: no rows left for new lines");
        return false;
      }
      return from_level(n + 1, successors);
    }

    auto try_new = [&](const std::vector<std::size_t>& fresh) {
      std::vector<bool> is_fresh(a.rows(), false);
      for (auto s : fresh) is_fresh[s] = true;
      for (auto c : other_cols) {
        bool nonzero = false;
        for (auto s : fresh) nonzero |= a(s, c) != 0;
        if (!nonzero) {
          fail(n, "zero column in A^(2,2) (column " + std::to_string(c) + ")");
          return false;
        }
      }
      if (ji_) {
        for (auto s : rest) {
          for (std::size_t c = 0; c < a.cols(); ++c) {
            if (a(s, c) == 0) {
              fail(n, std::string("zero entry in ") + block_name(is_fresh[s], is_persistent[c]) +
                          " (row " + std::to_string(s) + ", column " + std::to_string(c) + ")");
              return false;
            }
          }
        }
      }
      std::vector<std::size_t> next = successors;
      next.insert(next.end(), fresh.begin(), fresh.end());
      return from_level(n + 1, next);
    };

    for (std::size_t count = 1; count <= rest.size(); ++count) {
      if (mode_ == RfdMode::Strict) {
        std::vector<std::size_t> fresh(rest.begin(),
                                       rest.begin() + static_cast<std::ptrdiff_t>(count));
        if (try_new(fresh)) return true;
      } else if (for_each_subset(rest, count, try_new)) {
        return true;
      }
    }
    return false;
  }

  const BratteliPrefix& prefix_;
  RfdMode mode_;
  bool ji_;
  std::vector<std::vector<std::size_t>> chosen_;
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> failed_;
  std::optional<std::pair<std::size_t, std::string>> first_reason_;
};

RfdWitness build_witness(const BratteliPrefix& prefix,
                         const std::vector<std::vector<std::size_t>>& chosen) {
  RfdWitness w;
  const std::size_t depth = prefix.depth();
  for (std::size_t n = 0; n < depth; ++n) {
    w.r.push_back(chosen[n].size());
    w.order.push_back(complete_order(chosen[n], prefix.width(n)));
  }
  for (std::size_t n = 0; n + 1 < depth; ++n) {
    const auto a = permuted(prefix.matrices[n], w.order[n + 1], w.order[n]);
    const std::size_t rn = w.r[n], rn1 = w.r[n + 1];
    const std::size_t mn = a.cols(), mn1 = a.rows();
    RfdBlocks b{sub_block(a, 0, rn, 0, rn),     sub_block(a, 0, rn, rn, mn),
                sub_block(a, rn, rn1, 0, rn),   sub_block(a, rn, rn1, rn, mn),
                sub_block(a, rn1, mn1, 0, rn),  sub_block(a, rn1, mn1, rn, mn)};
    w.blocks.push_back(std::move(b));
  }
  const auto& last = prefix.levels.back();
  for (std::size_t j = 0; j < w.r.back(); ++j) w.kseq.push_back(last[w.order.back()[j]]);
  return w;
}

RfdVerdict check(const BratteliPrefix& prefix, RfdMode mode, bool ji) {
  require_valid(prefix);
  if (prefix.depth() < 2) {
    throw Error(ErrorCode::InsufficientPrefix, "insufficient prefix: RFD check needs >= 2 levels");
  }
  if (mode == RfdMode::UpToPermutation) {
    const std::size_t cap = max_enumeration_width();
    for (std::size_t n = 0; n < prefix.depth(); ++n) {
      if (prefix.width(n) > cap) {
        throw Error(ErrorCode::CapExceeded, "width cap exceeded: level " + std::to_string(n) +
                                                " has " + std::to_string(prefix.width(n)) +
                                                " vertices (cap " + std::to_string(cap) + ")");
      }
    }
  }
  {
    Search search(prefix, mode, ji);
    if (search.run()) return build_witness(prefix, search.chosen());
  }
  // Locate the shortest inconsistent truncation.
  for (std::size_t d = 2; d <= prefix.depth(); ++d) {
    const auto sub = prefix.truncated(d);
    Search search(sub, mode, ji);
    if (!search.run()) {
      RfdViolation v;
      v.level = d - 2;
      if (search.first_reason()) {
        v.reason_level = search.first_reason()->first;
        v.reason = search.first_reason()->second;
      } else {
        v.reason_level = d - 2;
        v.reason = "no admissible r";
      }
      return v;
    }
  }
  throw Error(ErrorCode::Precondition, "RFD search is inconsistent with its truncations");
}

}  // namespace

MultiplicityMatrix RfdBlocks::reassemble() const {
  const std::size_t left = top_left.cols();
  const std::size_t right = top_right.cols();
  const std::size_t rows = top_left.rows() + middle_left.rows() + bottom_left.rows();
  MultiplicityMatrix out(rows, left + right);
  std::size_t row0 = 0;
  for (const auto* pair : {&top_left, &middle_left, &bottom_left}) {
    for (std::size_t i = 0; i < pair->rows(); ++i) {
      for (std::size_t j = 0; j < left; ++j) out(row0 + i, j) = (*pair)(i, j);
    }
    row0 += pair->rows();
  }
  row0 = 0;
  for (const auto* pair : {&top_right, &middle_right, &bottom_right}) {
    for (std::size_t i = 0; i < pair->rows(); ++i) {
      for (std::size_t j = 0; j < right; ++j) out(row0 + i, left + j) = (*pair)(i, j);
    }
    row0 += pair->rows();
  }
  return out;
}

std::size_t RfdWitness::first_level_of_line(std::size_t j) const {
  for (std::size_t n = 0; n < r.size(); ++n) {
    if (j < r[n]) return n;
  }
  throw Error(ErrorCode::OutOfRange, "line " + std::to_string(j) + " does not exist in the prefix");
}

RfdVerdict check_rfd(const BratteliPrefix& prefix, RfdMode mode) {
  return check(prefix, mode, false);
}

RfdVerdict check_rfd_ji(const BratteliPrefix& prefix, RfdMode mode) {
  return check(prefix, mode, true);
}

std::optional<std::string> verify_witness(const BratteliPrefix& prefix, const RfdWitness& w,
                                          bool just_infinite) {
  const std::size_t depth = prefix.depth();
  if (w.r.size() != depth || w.order.size() != depth || w.blocks.size() + 1 != depth) {
    return "witness length does not match prefix depth";
  }
  for (std::size_t n = 0; n < depth; ++n) {
    auto sorted = w.order[n];
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t v = 0; v < sorted.size(); ++v) {
      if (sorted[v] != v || sorted.size() != prefix.width(n)) {
        return "order at level " + std::to_string(n) + " is not a permutation";
      }
    }
    if (w.r[n] < 1 || w.r[n] > prefix.width(n)) {
      return "r out of range at level " + std::to_string(n);
    }
  }
  for (std::size_t n = 0; n + 1 < depth; ++n) {
    const auto a = permuted(prefix.matrices[n], w.order[n + 1], w.order[n]);
    const std::size_t rn = w.r[n], rn1 = w.r[n + 1];
    const bool identity_step = rn == a.cols() && rn1 == rn && a.is_identity();
    if (rn1 <= rn && !identity_step) return "r not strictly increasing at level " + std::to_string(n);
    if (rn1 > a.rows()) return "r exceeds level width at level " + std::to_string(n + 1);
    const std::string at = " at step " + std::to_string(n);
    for (std::size_t i = 0; i < rn; ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(i, j) != (i == j ? 1 : 0)) {
          return (j < rn ? "top-left block is not the identity" : "top-right block is non-zero") + at;
        }
      }
      if (prefix.levels[n + 1][w.order[n + 1][i]] != prefix.levels[n][w.order[n][i]]) {
        return "u-stability fails for line " + std::to_string(i) + at;
      }
    }
    for (std::size_t j = rn; j < a.cols(); ++j) {
      bool nonzero = false;
      for (std::size_t i = rn; i < rn1; ++i) nonzero |= a(i, j) != 0;
      if (!nonzero) return "zero column in A^(2,2)" + at;
    }
    if (just_infinite) {
      for (std::size_t i = rn; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
          if (a(i, j) == 0) return std::string("zero entry in ") + block_name(i < rn1, j < rn) + at;
        }
      }
    }
    if (!(w.blocks[n].reassemble() == a)) return "blocks do not reassemble A" + at;
  }
  return std::nullopt;
}

bool check_all_positive(const BratteliPrefix& prefix) {
  for (const auto& a : prefix.matrices) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(i, j) < 1) return false;
      }
    }
  }
  return true;
}

}  // namespace bratteli
