#include "bratteli/synthesis.hpp"

#include "bratteli/error.hpp"

#include <algorithm>
#include <numeric>

namespace bratteli {

TargetSequence TargetSequence::stationary(StationarySpec t) {
  const std::size_t n0 = t.n0();
  TargetSequence seq("stationary:" + t.name(),
                     [t = std::move(t)](std::size_t n) { return stationary_targets(t, n); });
  seq.n0_ = n0;
  return seq;
}

TargetSequence TargetSequence::explicit_list(std::vector<SimplexPoint> points) {
  for (std::size_t n = 0; n < points.size(); ++n) {
    if (points[n].size() != n + 1) {
      throw Error(ErrorCode::ShapeMismatch, "target " + std::to_string(n) + " has " +
                                                std::to_string(points[n].size()) +
                                                " coordinates, expected " + std::to_string(n + 1));
    }
  }
  const std::size_t count = points.size();
  return TargetSequence(
      "explicit",
      [points = std::move(points)](std::size_t n) {
        if (n >= points.size()) {
          throw Error(ErrorCode::InsufficientPrefix,
                      "target list has only " + std::to_string(points.size()) + " levels");
        }
        return points[n];
      },
      count);
}

SimplexPoint TargetSequence::at(std::size_t n) const {
  SimplexPoint x = producer_(n);
  if (x.size() != n + 1) {
    throw Error(ErrorCode::ShapeMismatch, "target " + std::to_string(n) + " is not in Δ_n");
  }
  return x;
}

Rational level_tolerance(std::size_t n) {
  Rational e(Integer(1), Integer(n + 1) << static_cast<mp_bitcnt_t>(n));
  e.canonicalize();
  return e;
}

Approximation approximate_on_simplex(const SimplexPoint& xi, const Rational& eps, ApproxMode mode,
                                     std::size_t cap) {
  if (eps <= 0) throw Error(ErrorCode::InvalidInput, "tolerance must be positive");
  const std::size_t dim = xi.size();
  const Integer q = lcm_of_denominators(xi.coords());
  std::vector<Integer> p(dim);
  for (std::size_t j = 0; j < dim; ++j) p[j] = xi[j].get_num() * (q / xi[j].get_den());

  if (mode == ApproxMode::Exact) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (p[j] == 0) {
        throw Error(ErrorCode::InvalidInput, "exact mode needs positive coordinates (coordinate " +
                                                 std::to_string(j) + " is 0)");
      }
    }
    return {p, Rational(0)};
  }

  // |ℓ_j/D - p_j/q| < a/b  <=>  |ℓ_j q - p_j D| * b < a D q
  const Integer a = eps.get_num(), b = eps.get_den();
  std::vector<Integer> ell(dim);
  for (std::size_t d = dim; d <= cap; ++d) {
    const Integer big_d(static_cast<unsigned long>(d));
    Integer sum = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      mpz_fdiv_q(ell[j].get_mpz_t(), Integer(p[j] * big_d).get_mpz_t(), q.get_mpz_t());
      if (ell[j] < 1) ell[j] = 1;
      sum += ell[j];
    }
    // Largest-remainder fix-up, ties to the lower index.
    while (sum < big_d) {
      std::size_t best = 0;
      Integer best_r = p[0] * big_d - ell[0] * q;
      for (std::size_t j = 1; j < dim; ++j) {
        Integer r = p[j] * big_d - ell[j] * q;
        if (r > best_r) best = j, best_r = r;
      }
      ++ell[best];
      ++sum;
    }
    while (sum > big_d) {
      std::optional<std::size_t> best;
      Integer best_r;
      for (std::size_t j = 0; j < dim; ++j) {
        if (ell[j] <= 1) continue;
        Integer r = p[j] * big_d - ell[j] * q;
        if (!best || r < best_r) best = j, best_r = r;
      }
      --ell[*best];
      --sum;
    }
    bool ok = true;
    Integer worst = 0;
    for (std::size_t j = 0; j < dim && ok; ++j) {
      Integer dev = abs(Integer(ell[j] * q - p[j] * big_d));
      ok = dev * b < a * big_d * q;
      worst = std::max(worst, dev);
    }
    if (ok) {
      Rational err(worst, big_d * q);
      err.canonicalize();
      return {ell, err};
    }
  }
  throw Error(ErrorCode::CapExceeded, "not found within cap: no denominator <= " +
                                          std::to_string(cap) + " reaches tolerance " +
                                          to_fraction_string(eps));
}

LevelSynthesis synthesize_level(const std::vector<Integer>& kprefix, const SimplexPoint& xi,
                                const Rational& eps, const SynthesisOptions& options) {
  if (kprefix.size() != xi.size()) {
    throw Error(ErrorCode::ShapeMismatch, "k prefix and target differ in length");
  }
  for (const auto& k : kprefix) {
    if (k < 1) throw Error(ErrorCode::InvalidInput, "k entries must be positive");
  }
  LevelSynthesis out;
  ApproxMode mode = options.mode;
  if (mode == ApproxMode::Exact &&
      std::any_of(xi.coords().begin(), xi.coords().end(), [](const Rational& c) { return c == 0; })) {
    mode = ApproxMode::Approximate;
    out.fallback = true;
  }
  out.ell = approximate_on_simplex(xi, eps, mode, options.cap).ell;

  Integer mult = 1;
  if (options.reduced) {
    Integer g = 0;
    for (const auto& l : out.ell) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), l.get_mpz_t());
    for (auto& l : out.ell) l /= g;
    for (std::size_t j = 0; j < kprefix.size(); ++j) {
      Integer gj;
      mpz_gcd(gj.get_mpz_t(), kprefix[j].get_mpz_t(), out.ell[j].get_mpz_t());
      Integer need = kprefix[j] / gj;
      mpz_lcm(mult.get_mpz_t(), mult.get_mpz_t(), need.get_mpz_t());
    }
  } else {
    for (const auto& k : kprefix) mult *= k;
  }
  Integer total = 0;
  for (std::size_t j = 0; j < kprefix.size(); ++j) {
    out.m.push_back(mult * out.ell[j] / kprefix[j]);
    total += out.ell[j];
  }
  out.k_next = mult * total;
  std::vector<Rational> z;
  for (const auto& l : out.ell) {
    Rational c(l, total);
    c.canonicalize();
    z.push_back(c);
  }
  out.zeta = SimplexPoint(std::move(z));
  return out;
}

bool SynthesisCertificate::all_certified() const {
  for (const auto& l : levels) {
    Rational bound(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(l.n));
    if (!(l.gap_l1 < bound) || !(l.gap_l2_squared < bound * bound)) return false;
  }
  return true;
}

SynthesisResult synthesize(const TargetSequence& targets, std::size_t n,
                           const SynthesisOptions& options) {
  if (options.k0 < 1) throw Error(ErrorCode::InvalidInput, "k0 must be positive");
  if (targets.available() && *targets.available() < n) {
    throw Error(ErrorCode::InsufficientPrefix, "targets cover " +
                                                   std::to_string(*targets.available()) +
                                                   " levels, " + std::to_string(n) + " requested");
  }
  SynthesisResult out;
  out.spec.k0 = options.k0;
  std::vector<Integer> k{options.k0};
  for (std::size_t level = 0; level < n; ++level) {
    CertificateLevel c;
    c.n = level;
    c.xi = targets.at(level);
    c.eps = level_tolerance(level);
    auto s = synthesize_level(k, c.xi, c.eps, options);
    c.ell = s.ell;
    c.m = s.m;
    c.k_next = s.k_next;
    c.zeta = s.zeta;
    c.fallback = s.fallback;
    c.gap_l1 = point_distance(c.xi.coords(), c.zeta.coords(), Metric::L1);
    c.gap_l2_squared = point_distance(c.xi.coords(), c.zeta.coords(), Metric::L2);
    out.spec.mvectors.push_back(s.m);
    k.push_back(s.k_next);
    out.certificate.levels.push_back(std::move(c));
  }
  return out;
}

GConsistencyReport verify_g_consistency(const TargetSequence& targets, std::size_t n0,
                                        std::size_t levels, std::size_t vertex_budget) {
  GConsistencyReport report;
  report.levels = levels;
  report.vertex_budget = vertex_budget;
  std::vector<SimplexPoint> xi;
  for (std::size_t n = 0; n < levels; ++n) xi.push_back(targets.at(n));

  // g_n(e_j) = e_j^(n) for j <= n, ξ^(n) otherwise (including e_∞).
  auto g = [&](std::size_t n, std::size_t j) {
    return j != kInfinityVertex && j <= n ? SimplexPoint::vertex(n + 1, j) : xi[n];
  };
  std::vector<std::size_t> vertices;
  for (std::size_t j = 0; j <= vertex_budget; ++j) vertices.push_back(j);
  vertices.push_back(kInfinityVertex);

  std::vector<std::size_t> failing_levels;
  for (std::size_t n = n0; n + 1 < levels; ++n) {
    const auto f = target_map(xi[n]);
    bool level_failed = false;
    for (auto j : vertices) {
      if (f.apply(g(n + 1, j)) != g(n, j)) {
        report.failures.emplace_back(n, j);
        level_failed = true;
      }
    }
    if (level_failed) failing_levels.push_back(n);
  }
  report.pass = report.failures.empty();
  if (!report.pass) {
    // Check n involves ξ^(n) and ξ^(n+1).
    for (std::size_t cand = failing_levels.front(); cand <= failing_levels.front() + 1; ++cand) {
      bool explains = std::all_of(failing_levels.begin(), failing_levels.end(),
                                  [&](std::size_t n) { return n == cand || n + 1 == cand; });
      if (explains) {
        report.located_level = cand;
        break;
      }
    }
    if (!report.located_level) report.located_level = failing_levels.front();
  }
  return report;
}

GConsistencyReport verify_g_consistency(const StationarySpec& t, std::size_t levels,
                                        std::size_t vertex_budget) {
  return verify_g_consistency(TargetSequence::stationary(t), t.n0(), levels, vertex_budget);
}

DiagramGenerator stationary_generator(const StationarySpec& t, SynthesisOptions options) {
  options.mode = ApproxMode::Exact;
  auto targets = TargetSequence::stationary(t);
  return DiagramGenerator(DiagramGenerator::Kind::Stationary,
                          [targets, options](std::size_t steps) {
                            return synthesize(targets, steps, options).spec;
                          });
}

DiagramGenerator synthesized_generator(TargetSequence targets, SynthesisOptions options) {
  return DiagramGenerator(DiagramGenerator::Kind::Synthesized,
                          [targets = std::move(targets), options](std::size_t steps) {
                            return synthesize(targets, steps, options).spec;
                          });
}

}  // namespace bratteli
