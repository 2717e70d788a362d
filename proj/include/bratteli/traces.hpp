#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/rfd.hpp"
#include "bratteli/simplex.hpp"
#include "bratteli/stationary.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace bratteli {

/// ζ^(n) = (m_j^(n) k_j / k_{n+1})_{j<=n}: image of the new vertex at level n+1.
SimplexPoint zeta(const TriangularSpec& spec, std::size_t n);

/// Trace map of step n of a unital prefix (level n+1 traces to level n traces).
StochasticAffineMap trace_map(const BratteliPrefix& prefix, std::size_t n);

/// Pushes a point at level `from` down to level `to` <= from.
SimplexPoint push_point(const BratteliPrefix& prefix, const SimplexPoint& point, std::size_t from,
                        std::size_t to);

/// Restriction of the limit trace to level n: the normalized weights t_0..t_n.
/// Throws if t vanishes on 0..n.
SimplexPoint limit_trace_restriction(const StationarySpec& t, std::size_t n);

struct TraceLabel {
  enum class Kind { TypeI, TypeII1Candidate, Unclassified };
  Kind kind = Kind::Unclassified;
  /// Matrix size for TypeI.
  Integer k = 0;
  std::string reason;

  std::string to_string() const;
};

/// Persistent line index (position in the witness ordering).
struct LineDescriptor {
  std::size_t line = 0;
};

/// Explicit finite family ξ^(0..L) with ξ^(n) at level n of the context.
struct FamilyDescriptor {
  std::vector<SimplexPoint> points;
};

/// Family generated by a stationary rule, evaluated on every level of the context.
struct StationaryDescriptor {
  StationarySpec t;
};

using TraceDescriptor = std::variant<LineDescriptor, FamilyDescriptor, StationaryDescriptor>;

/// Labels a trace of an RFD-JI-consistent prefix. Lines give TypeI(k_j). An explicit
/// family gives TypeI when its last point is a persistent vertex and Unclassified
/// otherwise, since finite data cannot rule out a later vertex. A stationary rule
/// with one atom at a persistent line gives TypeI, any other rule TypeII1-candidate.
/// Throws Precondition for an incoherent family.
TraceLabel label_trace(const BratteliPrefix& prefix, const RfdWitness& witness,
                       const TraceDescriptor& descriptor);

}  // namespace bratteli
