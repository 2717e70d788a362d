#pragma once

#include "bratteli/diagram.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bratteli {

enum class RfdMode { Strict, UpToPermutation };

/// A_n split along m_{n+1} = r_n + (r_{n+1} - r_n) + (m_{n+1} - r_{n+1}) rows and
/// m_n = r_n + (m_n - r_n) columns, after the witness reordering.
struct RfdBlocks {
  MultiplicityMatrix top_left;      // I_{r_n}
  MultiplicityMatrix top_right;     // 0
  MultiplicityMatrix middle_left;   // A^(2,1)
  MultiplicityMatrix middle_right;  // A^(2,2)
  MultiplicityMatrix bottom_left;   // A^(3,1)
  MultiplicityMatrix bottom_right;  // A^(3,2)

  MultiplicityMatrix reassemble() const;
};

struct RfdWitness {
  /// r_n for every level of the prefix.
  std::vector<std::size_t> r;
  /// order[n][p] is the original index of the vertex placed at position p on
  /// level n. The first r[n] positions are the persistent lines. Identity in
  /// strict mode.
  std::vector<std::vector<std::size_t>> order;
  /// One block decomposition per step.
  std::vector<RfdBlocks> blocks;
  /// Stable sizes k_j of the persistent lines present at the last level.
  std::vector<Integer> kseq;

  /// Level at which persistent line j first appears.
  std::size_t first_level_of_line(std::size_t j) const;
  /// Original vertex index of line j at `level` (requires j < r[level]).
  std::size_t vertex_of_line(std::size_t j, std::size_t level) const { return order[level][j]; }
};

struct RfdViolation {
  /// Smallest step L such that the prefix truncated to levels 0..L+1 is already
  /// inconsistent. Extensions of the prefix fail at the same step.
  std::size_t level = 0;
  /// Step at which the first reported obstruction was found.
  std::size_t reason_level = 0;
  std::string reason;
};

class RfdVerdict {
 public:
  RfdVerdict(RfdWitness w) : value_(std::move(w)) {}
  RfdVerdict(RfdViolation v) : value_(std::move(v)) {}

  bool consistent() const { return std::holds_alternative<RfdWitness>(value_); }
  const RfdWitness& witness() const { return std::get<RfdWitness>(value_); }
  const RfdViolation& violation() const { return std::get<RfdViolation>(value_); }

 private:
  std::variant<RfdWitness, RfdViolation> value_;
};

/// Prefix-level test of the (RFD) block form. Requires a valid prefix with at
/// least two levels. The witness has the lexicographically smallest r.
RfdVerdict check_rfd(const BratteliPrefix& prefix, RfdMode mode = RfdMode::Strict);

/// As check_rfd, additionally requiring every entry of the blocks
/// A^(2,1), A^(2,2), A^(3,1), A^(3,2) to be non-zero.
RfdVerdict check_rfd_ji(const BratteliPrefix& prefix, RfdMode mode = RfdMode::Strict);

/// Re-checks a witness against the prefix; returns the first failed condition.
std::optional<std::string> verify_witness(const BratteliPrefix& prefix, const RfdWitness& witness,
                                          bool just_infinite);

/// Every entry of every A_n is >= 1. Simplicity evidence only.
bool check_all_positive(const BratteliPrefix& prefix);

}  // namespace bratteli
