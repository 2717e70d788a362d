#include "bratteli/traces.hpp"

#include "bratteli/error.hpp"

namespace bratteli {

SimplexPoint zeta(const TriangularSpec& spec, std::size_t n) {
  const auto k = characteristic_sequence(spec, n + 1);
  std::vector<Rational> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    c[j] = Rational(spec.mvectors[n][j] * k[j], k[n + 1]);
    c[j].canonicalize();
  }
  return SimplexPoint(std::move(c));
}

StochasticAffineMap trace_map(const BratteliPrefix& prefix, std::size_t n) {
  if (n + 1 >= prefix.depth()) {
    throw Error(ErrorCode::InsufficientPrefix, "no step " + std::to_string(n) + " in prefix");
  }
  return induced_trace_map(prefix.matrices[n], prefix.levels[n], prefix.levels[n + 1]);
}

SimplexPoint push_point(const BratteliPrefix& prefix, const SimplexPoint& point, std::size_t from,
                        std::size_t to) {
  if (from >= prefix.depth() || to > from) {
    throw Error(ErrorCode::OutOfRange, "cannot push from level " + std::to_string(from) +
                                           " to level " + std::to_string(to));
  }
  if (point.size() != prefix.width(from)) {
    throw Error(ErrorCode::ShapeMismatch, "point has " + std::to_string(point.size()) +
                                              " coordinates, level has " +
                                              std::to_string(prefix.width(from)) + " vertices");
  }
  SimplexPoint x = point;
  for (std::size_t n = from; n > to; --n) x = trace_map(prefix, n - 1).apply(x);
  return x;
}

SimplexPoint limit_trace_restriction(const StationarySpec& t, std::size_t n) {
  std::vector<Rational> w(n + 1);
  for (std::size_t j = 0; j <= n; ++j) w[j] = t.t(j);
  bool nonzero = false;
  for (const auto& x : w) nonzero |= x != 0;
  if (!nonzero) {
    throw Error(ErrorCode::InvalidInput, "t vanishes on indices 0.." + std::to_string(n));
  }
  return SimplexPoint::normalized(w);
}

std::string TraceLabel::to_string() const {
  switch (kind) {
    case Kind::TypeI: return "TypeI(" + k.get_str() + ")";
    case Kind::TypeII1Candidate: return "TypeII1-candidate";
    case Kind::Unclassified: return "Unclassified";
  }
  return "?";
}

namespace {

/// Position of `vertex` in the witness order at `level`, when it is a persistent line.
std::optional<std::size_t> line_at(const RfdWitness& w, std::size_t level, std::size_t vertex) {
  for (std::size_t p = 0; p < w.r[level]; ++p) {
    if (w.order[level][p] == vertex) return p;
  }
  return std::nullopt;
}

void require_coherent(const BratteliPrefix& prefix, const std::vector<SimplexPoint>& pts,
                      std::size_t first) {
  for (std::size_t n = first; n + 1 < pts.size(); ++n) {
    if (trace_map(prefix, n).apply(pts[n + 1]) != pts[n]) {
      throw Error(ErrorCode::Precondition,
                  "incoherent family: f_" + std::to_string(n) + "(xi^(" + std::to_string(n + 1) +
                      ")) != xi^(" + std::to_string(n) + ")");
    }
  }
}

}  // namespace

TraceLabel label_trace(const BratteliPrefix& prefix, const RfdWitness& witness,
                       const TraceDescriptor& descriptor) {
  if (witness.r.size() != prefix.depth()) {
    throw Error(ErrorCode::Precondition, "witness does not match prefix depth");
  }
  TraceLabel label;
  const std::size_t last = prefix.depth() - 1;

  if (const auto* line = std::get_if<LineDescriptor>(&descriptor)) {
    if (line->line >= witness.r[last]) {
      throw Error(ErrorCode::OutOfRange, "line " + std::to_string(line->line) + " not present");
    }
    label.kind = TraceLabel::Kind::TypeI;
    label.k = witness.kseq[line->line];
    label.reason = "persistent line " + std::to_string(line->line);
    return label;
  }

  if (const auto* fam = std::get_if<FamilyDescriptor>(&descriptor)) {
    const auto& pts = fam->points;
    if (pts.size() > prefix.depth()) {
      throw Error(ErrorCode::InsufficientPrefix, "family is longer than the prefix");
    }
    for (std::size_t n = 0; n < pts.size(); ++n) {
      if (pts[n].size() != prefix.width(n)) {
        throw Error(ErrorCode::ShapeMismatch, "family point " + std::to_string(n) +
                                                  " does not match level width");
      }
    }
    require_coherent(prefix, pts, 0);
    if (pts.size() < 2) {
      label.reason = "family too short";
      return label;
    }
    const std::size_t top = pts.size() - 1;
    if (auto v = pts[top].as_vertex()) {
      if (auto p = line_at(witness, top, *v)) {
        label.kind = TraceLabel::Kind::TypeI;
        label.k = prefix.levels[top][*v];
        label.reason = "family reaches persistent line " + std::to_string(*p);
        return label;
      }
      label.reason = "family ends at a non-persistent vertex";
      return label;
    }
    label.reason = "family ends off the vertices; a later vertex is not excluded";
    return label;
  }

  const auto& t = std::get<StationaryDescriptor>(descriptor).t;
  std::vector<SimplexPoint> pts;
  for (std::size_t n = 0; n <= last; ++n) {
    SimplexPoint x = stationary_targets(t, n);
    if (x.size() != prefix.width(n)) {
      throw Error(ErrorCode::ShapeMismatch, "stationary family needs n+1 vertices at level n");
    }
    pts.push_back(std::move(x));
  }
  const std::size_t n0 = t.n0();
  require_coherent(prefix, pts, std::min(n0, last));
  const auto cls = classify_stationary(t, last + 1);
  if (cls.kind == SimplexClass::Degenerate && *cls.atom <= last) {
    if (auto p = line_at(witness, last, *cls.atom)) {
      label.kind = TraceLabel::Kind::TypeI;
      label.k = prefix.levels[last][*cls.atom];
      label.reason = "single atom at persistent line " + std::to_string(*p);
      return label;
    }
  }
  if (cls.kind == SimplexClass::Degenerate) {
    label.reason = "single atom outside the persistent lines of the prefix";
    return label;
  }
  label.kind = TraceLabel::Kind::TypeII1Candidate;
  label.reason = "stationary family with several atoms (" + to_string(cls.kind) + ")";
  return label;
}

}  // namespace bratteli
