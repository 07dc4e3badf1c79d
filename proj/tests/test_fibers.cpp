#include <gtest/gtest.h>

#include <random>
#include <set>

#include "frobdyn/fibers.hpp"
#include "oracles.hpp"

namespace frobdyn {
namespace {

std::set<ProjPoint> embed_all(const std::vector<ProjPoint>& pts, const FieldPtr& f) {
  std::set<ProjPoint> out;
  for (const ProjPoint& p : pts) out.insert(p.embed_into(f));
  return out;
}

// Points of the line over `f`, minus the base point (which has no image).
std::set<ProjPoint> line_points_over(const LineFiber& line, const FieldPtr& f) {
  const ProjPoint through = line.through.embed_into(f), other = line.other.embed_into(f);
  std::set<ProjPoint> out{other};
  for (const FieldElement& s : all_elements(f)) {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = through.coords()[i] + s * other.coords()[i];
    out.insert(ProjPoint(c));
  }
  out.erase(ProjPoint::base_point(f));
  return out;
}

TEST(Fibers, WorkedFourPointFiber) {
  const FieldPtr f = BinaryField::gf2();
  const ThetaConstants ones = ThetaConstants::ones(f);
  const FiberResult r = preimage(ones, ProjPoint::of(f, 1, 0, 0, 1));
  ASSERT_STREQ(fiber_kind(r), "four");
  EXPECT_TRUE(extension_used(r));
  const auto& four = std::get<GenericFour>(r);
  const FieldPtr ext = four.points[0].field();
  EXPECT_EQ(ext->degree(), 2U);
  // (0 : w : w^2 : 0) in the tower GF(2)[u]/(u^2+u+1), bitwise equal to flat GF(4).
  const ProjPoint expected = ProjPoint::of(ext, 0, 2, 3, 0);
  EXPECT_EQ(std::count(four.points.begin(), four.points.end(), expected), 1);
  EXPECT_EQ(embed_all({four.points.begin(), four.points.end()}, ext).size(), 4U);
  EXPECT_TRUE(verify_fiber(ones, ProjPoint::of(f, 1, 0, 0, 1), r));
}

TEST(Fibers, WorkedEmptyAndLine) {
  const FieldPtr f = BinaryField::gf2();
  const ThetaConstants ones = ThetaConstants::ones(f);
  const FiberResult empty = preimage(ones, ProjPoint::of(f, 0, 1, 1, 1));
  ASSERT_STREQ(fiber_kind(empty), "empty");
  EXPECT_TRUE(std::get<EmptyFiber>(empty).obstruction.is_one());
  EXPECT_TRUE(verify_fiber(ones, ProjPoint::of(f, 0, 1, 1, 1), empty));

  const FiberResult line = preimage(ones, ProjPoint::of(f, 0, 0, 0, 1));
  ASSERT_STREQ(fiber_kind(line), "line");
  const auto& l = std::get<LineFiber>(line);
  EXPECT_TRUE(l.through.is_base_point());
  // The line (s : t : t : s).
  const std::vector<ProjPoint> pts = l.rational_points();
  const std::set<ProjPoint> expected{ProjPoint::of(f, 1, 0, 0, 1), ProjPoint::of(f, 0, 1, 1, 0),
                                     ProjPoint::of(f, 1, 1, 1, 1)};
  EXPECT_EQ(std::set<ProjPoint>(pts.begin(), pts.end()), expected);
  EXPECT_TRUE(verify_fiber(ones, ProjPoint::of(f, 0, 0, 0, 1), line));
}

TEST(Fibers, VerifyFiberRejectsMutatedPoint) {
  std::mt19937_64 rng(3);
  const FieldPtr f = BinaryField::make_default(8);
  const ThetaConstants lam = ThetaConstants::random(f, rng);
  const ProjPoint a = ProjPoint::of(f, 1, 0x35, 0x7, 0xa1);
  FiberResult r = preimage(lam, a);
  ASSERT_STREQ(fiber_kind(r), "four");
  ASSERT_TRUE(verify_fiber(lam, a, r));
  auto& four = std::get<GenericFour>(r);
  Coords c = four.points[2].coords();
  c[3] += FieldElement::one(c[3].field());
  four.points[2] = ProjPoint(c);
  EXPECT_FALSE(verify_fiber(lam, a, r));
  // Duplicated points are rejected too.
  four.points[2] = four.points[1];
  EXPECT_FALSE(verify_fiber(lam, a, r));
  // A claimed-empty fiber over a point off H is rejected.
  EXPECT_FALSE(verify_fiber(lam, a, FiberResult{EmptyFiber{FieldElement::one(f)}}));
}

// Every target over F against the forward table over the quadratic extension.
void compare_with_brute_force(const ThetaConstants& lam, const FieldPtr& f) {
  const FieldPtr ext = quadratic_extension(f);
  const auto table = oracle::forward_table(lam, ext);
  std::size_t counts[3] = {0, 0, 0};
  for (const ProjPoint& a : all_points(f)) {
    const FiberResult r = preimage(lam, a);
    ++counts[r.index()];
    const auto it = table.find(a.embed_into(ext));
    const std::set<ProjPoint> brute = it == table.end() ? std::set<ProjPoint>{}
                                                        : std::set<ProjPoint>(it->second.begin(), it->second.end());
    const bool on_conic = conic_eval(lam, a).is_zero();
    if (const auto* four = std::get_if<GenericFour>(&r)) {
      EXPECT_FALSE(a[g00].is_zero());
      EXPECT_EQ(embed_all({four->points.begin(), four->points.end()}, ext), brute) << a.to_string();
      EXPECT_EQ(brute.size(), 4U);
    } else if (const auto* line = std::get_if<LineFiber>(&r)) {
      EXPECT_TRUE(on_H(a) && on_conic) << a.to_string();
      EXPECT_TRUE(line->through.is_base_point());
      EXPECT_EQ(line_points_over(*line, ext), brute) << a.to_string();
    } else {
      EXPECT_TRUE(on_H(a) && !on_conic) << a.to_string();
      EXPECT_TRUE(brute.empty()) << a.to_string();
    }
    EXPECT_TRUE(verify_fiber(lam, a, r)) << a.to_string();
  }
  EXPECT_GT(counts[0], 0U);
  EXPECT_GT(counts[1] + counts[2], 0U);
}

TEST(Fibers, MatchesBruteForceOverGf2) { compare_with_brute_force(ThetaConstants::ones(BinaryField::gf2()), BinaryField::gf2()); }

TEST(Fibers, MatchesBruteForceOverGf4) {
  const FieldPtr f = BinaryField::make_default(2);
  compare_with_brute_force(ThetaConstants::ones(f), f);
  std::mt19937_64 rng(12);
  compare_with_brute_force(ThetaConstants::random(f, rng), f);
}

TEST(Fibers, GenericFiberRoundTrip) {
  std::mt19937_64 rng(21);
  for (unsigned n : {3U, 4U, 16U, 64U}) {
    const FieldPtr f = BinaryField::make_default(n);
    for (int i = 0; i < 30; ++i) {
      const ThetaConstants lam = ThetaConstants::random(f, rng);
      const ProjPoint a(Coords{FieldElement::random_nonzero(f, rng), FieldElement::random(f, rng),
                               FieldElement::random(f, rng), FieldElement::random(f, rng)});
      const FiberResult r = preimage(lam, a);
      ASSERT_STREQ(fiber_kind(r), "four");
      for (const ProjPoint& x : std::get<GenericFour>(r).points) {
        EXPECT_EQ(*verschiebung(lam.embed_into(x.field()), x), a.embed_into(x.field()));
      }
      EXPECT_TRUE(verify_fiber(lam, a, r));
    }
  }
}

TEST(Fibers, LineFibersOverLargerField) {
  std::mt19937_64 rng(5);
  const FieldPtr f = BinaryField::make_default(16);
  const ThetaConstants lam = ThetaConstants::random(f, rng);
  // Points of H on the conic: take a preimage image of H1.
  for (int i = 0; i < 20; ++i) {
    const ProjPoint x(Coords{FieldElement::random(f, rng), FieldElement::random(f, rng), FieldElement::random(f, rng),
                             FieldElement::one(f)});
    Coords h1 = x.coords();
    h1[0] = h1[1] + h1[2] + h1[3];
    const auto p = ProjPoint::try_make(h1);
    if (!p || p->is_base_point()) continue;
    const ProjPoint a = *verschiebung(lam, *p);
    const FiberResult r = preimage(lam, a);
    ASSERT_STREQ(fiber_kind(r), "line");
    EXPECT_TRUE(verify_fiber(lam, a, r, 7));
  }
}

TEST(Fibers, SurjectivityWitness) {
  const FieldPtr f = BinaryField::gf2();
  const ThetaConstants ones = ThetaConstants::ones(f);
  const SurjectivityWitness w = surjectivity_witness(ones, ProjPoint::of(f, 0, 1, 1, 1));
  EXPECT_EQ(w.shift, g01);
  EXPECT_EQ(w.translated, ProjPoint::of(f, 1, 0, 1, 1));
  EXPECT_STREQ(fiber_kind(w.fiber), "four");
  for (unsigned n : {1U, 2U}) {
    const FieldPtr fn = BinaryField::make_default(n);
    const ThetaConstants lam = ThetaConstants::ones(fn);
    for (const ProjPoint& y : all_points(fn)) {
      const SurjectivityWitness s = surjectivity_witness(lam, y);
      EXPECT_STREQ(fiber_kind(s.fiber), "four") << y.to_string();
      EXPECT_EQ(s.translated, translate(s.shift, y));
      EXPECT_TRUE(verify_fiber(lam, s.translated, s.fiber));
    }
  }
}

}  // namespace
}  // namespace frobdyn
