#include "bratteli/intertwine.hpp"

#include "bratteli/error.hpp"

namespace bratteli {

std::size_t MapSequence::dim(std::size_t level) const {
  if (maps.empty()) throw Error(ErrorCode::InsufficientPrefix, "empty map sequence");
  if (level > maps.size()) throw Error(ErrorCode::OutOfRange, "level beyond map sequence");
  return level < maps.size() ? maps[level].rows() : maps.back().cols();
}

void MapSequence::check() const {
  for (std::size_t j = 0; j + 1 < maps.size(); ++j) {
    if (maps[j].cols() != maps[j + 1].rows()) {
      throw Error(ErrorCode::ShapeMismatch, "maps f_" + std::to_string(j) + " and f_" +
                                                std::to_string(j + 1) + " do not chain");
    }
  }
}

Rational TailBound::at(std::size_t n) const { return scale * power(ratio, n); }

Rational TailBound::sum_from(std::size_t from) const {
  if (ratio < 0 || ratio >= 1) {
    throw Error(ErrorCode::InvalidInput, "tail ratio must lie in [0,1) for a finite certificate");
  }
  return at(from) / (Rational(1) - ratio);
}

void IntertwiningData::check() const {
  top.check();
  bottom.check();
  if (top.size() != bottom.size()) {
    throw Error(ErrorCode::ShapeMismatch, "top and bottom sequences differ in length");
  }
  if (rho.has_value() != rho_prime.has_value()) {
    throw Error(ErrorCode::InvalidInput, "cross maps come in pairs");
  }
  if (!rho) {
    for (std::size_t j = 0; j <= top.size() && !top.maps.empty(); ++j) {
      if (top.dim(j) != bottom.dim(j)) {
        throw Error(ErrorCode::ShapeMismatch, "levels " + std::to_string(j) + " differ in size");
      }
    }
    return;
  }
  const std::size_t n = top.size();
  if (rho->size() < n || rho_prime->size() < n + 1) {
    throw Error(ErrorCode::InsufficientPrefix, "need rho_0..rho_{N-1} and rho'_0..rho'_N");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& r = (*rho)[j];
    if (r.cols() != top.dim(j + 1) || r.rows() != bottom.dim(j)) {
      throw Error(ErrorCode::ShapeMismatch, "rho_" + std::to_string(j) + " has the wrong shape");
    }
  }
  for (std::size_t j = 0; j <= n; ++j) {
    const auto& r = (*rho_prime)[j];
    if (r.cols() != bottom.dim(j) || r.rows() != top.dim(j)) {
      throw Error(ErrorCode::ShapeMismatch, "rho'_" + std::to_string(j) + " has the wrong shape");
    }
  }
}

Rational map_distance(const StochasticAffineMap& f, const StochasticAffineMap& g, Metric metric) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "maps have different shapes");
  }
  Rational best = 0;
  for (std::size_t v = 0; v < f.cols(); ++v) {
    Rational d = point_distance(f.column(v).coords(), g.column(v).coords(), metric);
    if (d > best) best = d;
  }
  return best;
}

GapSeries gap_series(const IntertwiningData& data, std::size_t n) {
  data.check();
  if (n > data.top.size()) {
    throw Error(ErrorCode::InsufficientPrefix, "only " + std::to_string(data.top.size()) +
                                                   " steps available");
  }
  GapSeries out;
  Rational running = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational g;
    if (data.full_form()) {
      g = map_distance((*data.rho_prime)[j].compose((*data.rho)[j]), data.top.maps[j], data.metric);
      Rational gp = map_distance((*data.rho)[j].compose((*data.rho_prime)[j + 1]),
                                 data.bottom.maps[j], data.metric);
      out.gaps_prime.push_back(gp);
      running += gp;
    } else {
      g = map_distance(data.top.maps[j], data.bottom.maps[j], data.metric);
    }
    running += g;
    out.gaps.push_back(g);
    out.partial_sums.push_back(running);
  }
  if (!data.tail) return out;

  const auto& tail = *data.tail;
  const std::size_t series = data.full_form() ? 2 : 1;
  auto respects = [&](const Rational& gap, std::size_t j) {
    Rational b = tail.at(j);
    return data.metric == Metric::L1 ? gap <= b : gap <= b * b;
  };
  for (std::size_t j = 0; j < n; ++j) {
    out.bound_respected = out.bound_respected && respects(out.gaps[j], j);
    if (data.full_form()) out.bound_respected = out.bound_respected && respects(out.gaps_prime[j], j);
  }
  if (data.metric == Metric::L1) {
    out.certificate = running + Rational(series) * tail.sum_from(n);
  } else if (out.bound_respected) {
    // Summing square roots is not exact; sum the per-level bounds instead.
    out.certificate = Rational(series) * tail.sum_from(0);
  }
  return out;
}

StochasticAffineMap compose_range(const MapSequence& seq, std::size_t i, std::size_t j) {
  if (i >= j || j > seq.size()) {
    throw Error(ErrorCode::OutOfRange, "bad range f_{" + std::to_string(j) + "," +
                                           std::to_string(i) + "}");
  }
  StochasticAffineMap out = seq.maps[i];
  for (std::size_t m = i + 1; m < j; ++m) out = out.compose(seq.maps[m]);
  return out;
}

namespace {

/// Image of the persistent top vertex e_v at `level`.
SimplexPoint top_vertex_at(const MapSequence& top, std::size_t v, std::size_t level) {
  std::size_t home = level;
  while (home <= top.size() && v >= top.dim(home)) ++home;
  if (home > top.size()) {
    throw Error(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " never appears");
  }
  for (std::size_t m = home; m < top.size(); ++m) {
    if (top.maps[m].column(v) != SimplexPoint::vertex(top.dim(m), v)) {
      throw Error(ErrorCode::Precondition,
                  "vertex " + std::to_string(v) + " is not persistent at step " + std::to_string(m));
    }
  }
  SimplexPoint x = SimplexPoint::vertex(top.dim(home), v);
  for (std::size_t m = home; m > level; --m) x = top.maps[m - 1].apply(x);
  return x;
}

}  // namespace

VertexEstimate limit_vertex_estimate(const IntertwiningData& data, std::size_t i, std::size_t v,
                                     std::size_t j) {
  data.check();
  const std::size_t n = data.top.size();
  if (i > j || j >= n) {
    throw Error(ErrorCode::OutOfRange, "need i <= j < " + std::to_string(n));
  }
  const SimplexPoint x = top_vertex_at(data.top, v, j + 1);
  SimplexPoint y = data.full_form() ? (*data.rho)[j].apply(x) : data.top.maps[j].apply(x);
  for (std::size_t m = j; m > i; --m) y = data.bottom.maps[m - 1].apply(y);

  VertexEstimate out{std::move(y), std::nullopt};
  if (!data.tail || data.metric != Metric::L1) return out;
  const auto gaps = gap_series(data, n);
  Rational bound = 0;
  for (std::size_t m = j; m < n; ++m) {
    bound += gaps.gaps[m];
    if (data.full_form()) {
      // est_m - est_{m+1} is bounded by d(rho_m rho'_{m+1}, f'_m) + d(rho'_{m+1} rho_{m+1}, f_{m+1}).
      bound += gaps.gaps_prime[m];
    }
  }
  bound += Rational(data.full_form() ? 2 : 1) * data.tail->sum_from(n);
  out.error_bound = bound;
  return out;
}

}  // namespace bratteli
