#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/rfd.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bratteli {

/// Per-level vertex sets T_n of a closed two-sided ideal. Sets are kept sorted.
struct IdealProfile {
  std::vector<std::vector<std::size_t>> T;

  static IdealProfile zero(const BratteliPrefix& prefix);
  static IdealProfile full(const BratteliPrefix& prefix);
  /// Sorts and deduplicates each level.
  static IdealProfile from_sets(std::vector<std::vector<std::size_t>> sets);

  bool contains(std::size_t level, std::size_t vertex) const;
  bool is_zero() const;
  /// Some level keeps a vertex outside T.
  bool is_proper(const BratteliPrefix& prefix) const;
  /// F_n, the vertices outside T_n.
  std::vector<std::size_t> complement(const BratteliPrefix& prefix, std::size_t level) const;

  std::string to_string() const;

  friend bool operator==(const IdealProfile&, const IdealProfile&) = default;
  friend auto operator<=>(const IdealProfile&, const IdealProfile&) = default;
};

using Seed = std::pair<std::size_t, std::size_t>;  // (level, vertex)

/// First failed rule, or nothing when the profile is directed and hereditary
/// (hereditary checked at every level but the last).
std::optional<std::string> check_profile(const BratteliPrefix& prefix, const IdealProfile& profile);

/// Least profile containing the seeds (and `base`, when given).
IdealProfile close(const BratteliPrefix& prefix, const std::vector<Seed>& seeds);
IdealProfile close(const BratteliPrefix& prefix, const IdealProfile& base,
                   const std::vector<Seed>& seeds);

/// Diagram over the complements F_n. Throws Precondition for a full profile.
BratteliPrefix quotient(const BratteliPrefix& prefix, const IdealProfile& profile);

/// Some level n0 <= N-2 whose set T_{n0} generates the whole profile. The last level is
/// excluded: seeding all of it would make every profile trivially compact.
std::optional<std::size_t> compact_generating_level(const BratteliPrefix& prefix,
                                                    const IdealProfile& profile);
bool is_compact(const BratteliPrefix& prefix, const IdealProfile& profile);

/// All profiles of the prefix in canonical order. Throws CapExceeded when a level is
/// wider than max_enumeration_width().
std::vector<IdealProfile> enumerate_ideals(const BratteliPrefix& prefix);

struct PrimitiveProfile {
  std::size_t line = 0;        // persistent line j
  Integer k = 0;               // k_j, the size of the quotient M_{k_j}
  std::size_t first_level = 0; // level where line j appears
  IdealProfile profile;        // ker(pi_j)
};

/// ker(pi_j) for every persistent line j present at the last level. Throws
/// Precondition unless the witness is an RFD-JI witness for the prefix.
std::vector<PrimitiveProfile> primitive_profiles(const BratteliPrefix& prefix,
                                                 const RfdWitness& witness);

/// Smallest level s such that every quotient step from s on is an identity matrix.
std::size_t stabilization_level(const BratteliPrefix& quotient_prefix);

struct SeedEvidence {
  Seed seed;
  bool full = false;                       // quotient is zero
  std::optional<std::size_t> stabilizes_at;
  bool pass = false;
};

struct JustInfiniteReport {
  std::size_t depth = 0;
  bool vacuous = false;
  bool pass = true;
  std::vector<SeedEvidence> seeds;
};

/// For each single-vertex seed (n, v): its quotient must stabilize by level n+1.
JustInfiniteReport just_infinite_evidence(const BratteliPrefix& prefix, const RfdWitness& witness);

/// The prefix has rows 0..m_n-1 of each A_n equal to the identity, with equal sizes.
bool has_full_persistence_shape(const BratteliPrefix& prefix);

/// Some line l of the quotient persists with row e_l from some level on. Requires the
/// full-persistence shape and a proper compact profile.
bool has_findim_quotient_line(const BratteliPrefix& prefix, const IdealProfile& profile);

}  // namespace bratteli
