#include "bratteli/error.hpp"
#include "bratteli/intertwine.hpp"
#include "bratteli/io.hpp"
#include "bratteli/k0.hpp"
#include "bratteli/rfd.hpp"
#include "bratteli/stationary.hpp"
#include "bratteli/synthesis.hpp"
#include "bratteli/traces.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bratteli;

namespace {

TriangularSpec all_ones(std::size_t steps) {
  TriangularSpec s;
  for (std::size_t n = 0; n < steps; ++n) s.mvectors.emplace_back(n + 1, Integer(1));
  return s;
}

Rational inverse_square(std::size_t j) { return Rational(1, (j + 1) * (j + 1)); }

}  // namespace

TEST(Stationary, ClassifierVerdicts) {
  EXPECT_EQ(classify_stationary(StationarySpec::parse("equal-to-k"), 8).kind, SimplexClass::Bauer);
  const auto g = classify_stationary(StationarySpec::parse("geometric:1/2"), 4);
  ASSERT_EQ(g.kind, SimplexClass::NonBauer);
  EXPECT_EQ(g.coefficients, (std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 8),
                                                   Rational(1, 16)}));
  const auto d = classify_stationary(StationarySpec::parse("atoms:1"), 4);
  EXPECT_EQ(d.kind, SimplexClass::Degenerate);
  EXPECT_EQ(d.atom, std::optional<std::size_t>(0));
  const auto c = classify_stationary(StationarySpec::parse("inverse-square"), 4);
  EXPECT_EQ(c.kind, SimplexClass::Inconclusive);
  EXPECT_EQ(c.partial_sums.size(), 4u);
}

TEST(Stationary, FinitelySupportedIsNonBauer) {
  const auto c = classify_stationary(StationarySpec::atoms({1, 0, 1}), 4);
  ASSERT_EQ(c.kind, SimplexClass::NonBauer);
  EXPECT_EQ(c.coefficients[0], Rational(1, 2));
  EXPECT_EQ(c.coefficients[2], Rational(1, 2));
}

TEST(Stationary, ParseRejectsGarbage) {
  EXPECT_THROW(StationarySpec::parse("geometric:x"), Error);
  EXPECT_THROW(StationarySpec::parse("nope"), Error);
  EXPECT_THROW(StationarySpec::parse("atoms:0,0"), Error);
}

TEST(Traces, LimitTraceRestriction) {
  const auto x = limit_trace_restriction(StationarySpec::parse("equal-to-k"), 5);
  EXPECT_EQ(format_common_denominator(x.coords()), "(1/32,1/32,2/32,4/32,8/32,16/32)");
  EXPECT_THROW(limit_trace_restriction(StationarySpec::atoms({0, 1}), 0), Error);
}

TEST(Traces, LabelsOnEx43) {
  const auto p = to_prefix(parse_diagram(fixture("ex43")), 8);
  const auto v = check_rfd_ji(p);
  ASSERT_TRUE(v.consistent());
  const auto& w = v.witness();
  EXPECT_EQ(label_trace(p, w, LineDescriptor{3}).to_string(), "TypeI(4)");
  EXPECT_EQ(label_trace(p, w, StationaryDescriptor{StationarySpec::parse("equal-to-k")}).kind,
            TraceLabel::Kind::TypeII1Candidate);
  EXPECT_THROW(label_trace(p, w, StationaryDescriptor{StationarySpec::parse("geometric:1/2")}), Error);
  EXPECT_EQ(label_trace(p, w, StationaryDescriptor{StationarySpec::atoms({0, 1})}).kind,
            TraceLabel::Kind::TypeI);
}

TEST(Synthesis, ExactModeReproducesStationaryTargets) {
  const auto t = StationarySpec::parse("geometric:1/2");
  SynthesisOptions opt;
  opt.mode = ApproxMode::Exact;
  const auto r = synthesize(TargetSequence::stationary(t), 8, opt);
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_EQ(zeta(r.spec, n), stationary_targets(t, n)) << n;
  }
}

TEST(Synthesis, ApproximationRespectsTolerance) {
  const SimplexPoint xi({Rational(1, 3), Rational(1, 7), Rational(11, 21)});
  const Rational eps(1, 50);
  const auto a = approximate_on_simplex(xi, eps, ApproxMode::Approximate);
  EXPECT_LT(a.error, eps);
  for (const auto& l : a.ell) EXPECT_GT(l, 0);
  const auto e = approximate_on_simplex(xi, eps, ApproxMode::Exact);
  EXPECT_EQ(e.error, 0);
  EXPECT_EQ(e.ell, (std::vector<Integer>{7, 3, 11}));
}

TEST(Synthesis, CapIsReported) {
  const SimplexPoint xi({Rational(1, 1000003), Rational(1000002, 1000003)});
  try {
    approximate_on_simplex(xi, Rational(1, 100000000), ApproxMode::Approximate, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(Synthesis, ReducedModeKeepsRecurrence) {
  SynthesisOptions opt;
  opt.reduced = true;
  const auto targets = TargetSequence("inverse-square", [](std::size_t n) {
    std::vector<Rational> w;
    for (std::size_t j = 0; j <= n; ++j) w.push_back(inverse_square(j));
    return SimplexPoint::normalized(w);
  });
  const auto r = synthesize(targets, 6, opt);
  EXPECT_TRUE(r.certificate.all_certified());
  const auto k = characteristic_sequence(r.spec, 6);
  for (const auto& l : r.certificate.levels) EXPECT_EQ(l.k_next, k[l.n + 1]);
}

TEST(Synthesis, GConsistencyPassesForStationary) {
  const auto rep = verify_g_consistency(StationarySpec::parse("geometric:1/3"), 6, 4);
  EXPECT_TRUE(rep.pass);
}

TEST(Synthesis, GConsistencyLocatesBrokenTarget) {
  const auto good = StationarySpec::parse("geometric:1/2");
  const TargetSequence broken("broken", [good](std::size_t n) {
    if (n == 3) return SimplexPoint::barycenter(4);
    return stationary_targets(good, n);
  });
  const auto rep = verify_g_consistency(broken, 0, 6, 4);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.located_level, std::optional<std::size_t>(3));
}

TEST(Intertwine, IdenticalSystemsHaveZeroGaps) {
  const auto spec = all_ones(6);
  const auto p = embed_triangular(spec, 6);
  IntertwiningData d;
  for (std::size_t n = 0; n < 6; ++n) {
    d.top.maps.push_back(trace_map(p, n));
    d.bottom.maps.push_back(target_map(zeta(spec, n)));
  }
  d.tail = TailBound{Rational(1, 2), 1};
  const auto g = gap_series(d, 6);
  for (const auto& x : g.gaps) EXPECT_EQ(x, 0);
  ASSERT_TRUE(g.certificate.has_value());
  EXPECT_EQ(*g.certificate, Rational(1, 32));
}

TEST(Intertwine, ShapeMismatchThrows) {
  IntertwiningData d;
  d.top.maps.push_back(StochasticAffineMap::identity(2));
  d.bottom.maps.push_back(StochasticAffineMap::identity(3));
  EXPECT_THROW(gap_series(d, 1), Error);
}

TEST(Intertwine, TailBoundSums) {
  const TailBound t{Rational(1, 2), 2};
  EXPECT_EQ(t.at(3), Rational(1, 4));
  EXPECT_EQ(t.sum_from(3), Rational(1, 2));
  EXPECT_THROW((TailBound{Rational(1), 1}.sum_from(0)), Error);
}

TEST(K0, RecurrenceExamples) {
  const auto spec = all_ones(5);
  EXPECT_EQ(recurrence_check(spec, characteristic_sequence(spec, 5)), std::optional<std::size_t>(0));
  EXPECT_EQ(recurrence_check(spec, std::vector<Integer>(6, 0)), std::optional<std::size_t>(0));
  EXPECT_EQ(recurrence_check(spec, {1, 0, 1, 2, 4, 8}), std::optional<std::size_t>(1));
  EXPECT_EQ(recurrence_check(spec, {1, 1, 2, 4, 8, 9}), std::nullopt);
  EXPECT_THROW(recurrence_check(all_ones(2), {1, 1, 2, 4}), Error);
}

TEST(K0, WitnessesProjectOntoBasis) {
  const auto spec = all_ones(6);
  const auto ws = nondegeneracy_witness(spec, {1, 3}, 6);
  ASSERT_EQ(ws.size(), 2u);
  for (const auto& w : ws) {
    EXPECT_TRUE(recurrence_check(spec, w.element.prefix).has_value());
    for (std::size_t i : {1, 3}) EXPECT_EQ(w.element.prefix[i], i == w.coordinate ? 1 : 0);
  }
}

TEST(K0, Positivity) {
  EXPECT_TRUE(positivity_check(K0Element{{1, 1, 2}, 0}));
  EXPECT_FALSE(positivity_check(K0Element{{1, -1, 0}, std::nullopt}));
  EXPECT_TRUE(positivity_check(K0Element{{0, 0}, 0}));
}

TEST(K0, SmallLatticeIsGeneratedByWitnesses) {
  const auto spec = all_ones(5);
  const auto ws = nondegeneracy_witness(spec, {0, 1}, 5);
  ASSERT_EQ(ws.size(), 2u);
  std::set<std::pair<long, long>> reached;
  for (long a = -2; a <= 2; ++a) {
    for (long b = -2; b <= 2; ++b) {
      std::vector<Integer> x(ws[0].element.prefix.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = a * ws[0].element.prefix[i] + b * ws[1].element.prefix[i];
      ASSERT_TRUE(recurrence_check(spec, x).has_value());
      reached.emplace(x[0].get_si(), x[1].get_si());
    }
  }
  EXPECT_EQ(reached.size(), 25u);
}
