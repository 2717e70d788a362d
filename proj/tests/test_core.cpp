#include "bratteli/diagram.hpp"
#include "bratteli/error.hpp"
#include "bratteli/rational.hpp"
#include "bratteli/simplex.hpp"
#include "bratteli/traces.hpp"

#include <gtest/gtest.h>

using namespace bratteli;

namespace {

TriangularSpec all_ones(std::size_t steps, long k0 = 1) {
  TriangularSpec s;
  s.k0 = k0;
  for (std::size_t n = 0; n < steps; ++n) s.mvectors.emplace_back(n + 1, Integer(1));
  return s;
}

std::vector<Rational> q(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.push_back(parse_rational(x));
  return out;
}

}  // namespace

TEST(Rational, FractionStrings) {
  EXPECT_EQ(to_fraction_string(Rational(3, 6)), "1/2");
  EXPECT_EQ(to_fraction_string(Rational(4)), "4/1");
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  const auto c = q({"1/16", "1/16", "1/8", "1/4", "1/2"});
  EXPECT_EQ(format_common_denominator(c), "(1/16,1/16,2/16,4/16,8/16)");
}

TEST(Diagram, CharacteristicSequenceAllOnes) {
  const auto k = characteristic_sequence(all_ones(5), 5);
  std::vector<Integer> expect{1, 1, 2, 4, 8, 16};
  EXPECT_EQ(k, expect);
}

TEST(Diagram, CharacteristicSequenceScalesWithK0) {
  const auto k = characteristic_sequence(all_ones(3, 3), 3);
  std::vector<Integer> expect{3, 3, 6, 12};
  EXPECT_EQ(k, expect);
}

TEST(Diagram, CharacteristicSequenceNeedsPrefix) {
  try {
    characteristic_sequence(all_ones(2), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientPrefix);
  }
}

TEST(Diagram, ValidationRejectsBadMultiplicityVector) {
  TriangularSpec s;
  s.mvectors = {{Integer(1)}, {Integer(0), Integer(0)}};
  EXPECT_FALSE(validate(s).ok());
  s.mvectors = {{Integer(1), Integer(1)}};
  EXPECT_FALSE(validate(s).ok());
}

TEST(Diagram, EmbedTriangularShape) {
  const auto p = embed_triangular(all_ones(3), 3);
  ASSERT_EQ(p.depth(), 4u);
  EXPECT_TRUE(validate(p).ok());
  EXPECT_EQ(p.matrices[1], (MultiplicityMatrix{{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(p.levels[3], (DimensionVector{1, 1, 2, 4}));
}

TEST(Diagram, ValidateDetectsDimensionMismatch) {
  BratteliPrefix p;
  p.levels = {DimensionVector{1}, DimensionVector{1, 2}};
  p.matrices = {MultiplicityMatrix{{1}, {1}}};
  EXPECT_FALSE(validate(p).ok());
  p.levels[1] = DimensionVector{1, 1};
  EXPECT_TRUE(validate(p).ok());
}

TEST(Diagram, GeneratorPrefixesAreConsistent) {
  auto g = DiagramGenerator::constant_ones();
  const auto a = g.prefix(4), b = g.prefix(6);
  for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(a.mvectors[n], b.mvectors[n]);
}

TEST(Simplex, PointValidation) {
  EXPECT_THROW(SimplexPoint(q({"1/2", "1/3"})), Error);
  EXPECT_THROW(SimplexPoint(q({"3/2", "-1/2"})), Error);
  EXPECT_EQ(SimplexPoint::vertex(3, 1).as_vertex(), std::optional<std::size_t>(1));
  EXPECT_FALSE(SimplexPoint::barycenter(2).as_vertex().has_value());
}

TEST(Simplex, Distances) {
  const auto x = q({"1", "0"}), y = q({"1/2", "1/2"});
  EXPECT_EQ(point_distance(x, y, Metric::L1), Rational(1));
  EXPECT_EQ(point_distance(x, y, Metric::L2), Rational(1, 2));
}

TEST(Simplex, StochasticMapRejectsBadColumns) {
  EXPECT_THROW(StochasticAffineMap(2, 1, q({"1/2", "1/3"})), Error);
  EXPECT_NO_THROW(StochasticAffineMap(2, 1, q({"1/2", "1/2"})));
}

TEST(Simplex, InducedTraceMapEntries) {
  // A = [[1,0],[1,1],[0,2]], u = (1,2) -> (1,3,4).
  MultiplicityMatrix a{{1, 0}, {1, 1}, {0, 2}};
  const auto f = induced_trace_map(a, DimensionVector{1, 2}, DimensionVector{1, 3, 4});
  EXPECT_EQ(f(0, 0), Rational(1));
  EXPECT_EQ(f(0, 1), Rational(1, 3));
  EXPECT_EQ(f(1, 1), Rational(2, 3));
  EXPECT_EQ(f(1, 2), Rational(1));
}

TEST(Simplex, InducedTraceMapNeedsUnital) {
  MultiplicityMatrix a{{1}, {1}};
  try {
    induced_trace_map(a, DimensionVector{1}, DimensionVector{1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnital);
  }
}

TEST(Simplex, TargetMapFixesOldVertices) {
  const SimplexPoint xi(q({"1/3", "2/3"}));
  const auto f = target_map(xi);
  EXPECT_EQ(f.apply(SimplexPoint::vertex(3, 0)), SimplexPoint::vertex(2, 0));
  EXPECT_EQ(f.apply(SimplexPoint::vertex(3, 2)), xi);
}

TEST(Simplex, ComposeMatchesSequentialApplication) {
  const auto f = target_map(SimplexPoint(q({"1/3", "2/3"})));
  const auto g = target_map(SimplexPoint(q({"1/4", "1/4", "1/2"})));
  const SimplexPoint x(q({"1/10", "2/10", "3/10", "4/10"}));
  EXPECT_EQ(f.compose(g).apply(x), f.apply(g.apply(x)));
}

TEST(Traces, ZetaAllOnes) {
  const auto z = zeta(all_ones(5), 3);
  EXPECT_EQ(format_common_denominator(z.coords()), "(1/8,1/8,2/8,4/8)");
}

TEST(Traces, TriangularTraceMapIsTargetMapOfZeta) {
  const auto spec = all_ones(6);
  const auto p = embed_triangular(spec, 6);
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(trace_map(p, n), target_map(zeta(spec, n)));
}

TEST(Traces, PushPointComposes) {
  const auto p = embed_triangular(all_ones(5), 5);
  const auto x = SimplexPoint::vertex(6, 5);
  const auto direct = push_point(p, x, 5, 1);
  const auto staged = push_point(p, push_point(p, x, 5, 3), 3, 1);
  EXPECT_EQ(direct, staged);
  EXPECT_THROW(push_point(p, x, 2, 4), Error);
}
