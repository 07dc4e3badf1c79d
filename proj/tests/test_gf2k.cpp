#include <gtest/gtest.h>

#include <random>

#include "frobdyn/gf2k.hpp"
#include "oracles.hpp"

namespace frobdyn {
namespace {

FieldElement el(const FieldPtr& f, std::uint64_t v) { return FieldElement::from_uint(f, v); }

class Gf4 : public ::testing::Test {
 protected:
  FieldPtr f = BinaryField::make_default(2);
  FieldElement w = el(f, 2), w2 = el(f, 3), one = el(f, 1), zero = el(f, 0);
};

TEST_F(Gf4, DefaultModulusIsOmegaSquaredPlusOmegaPlusOne) {
  EXPECT_EQ(f->modulus_hex(), "7");
  EXPECT_EQ(w * w, w2);
}

TEST_F(Gf4, Add) {
  EXPECT_TRUE((w + w).is_zero());
  EXPECT_EQ(one + zero, one);
  EXPECT_EQ(w + w2, one);
}

TEST_F(Gf4, MulInvTrace) {
  EXPECT_EQ(w * w2, one);
  EXPECT_EQ(one.inv(), one);
  EXPECT_EQ(w.inv(), w2);
  EXPECT_EQ(w.trace(), one);
  EXPECT_EQ(one.trace(), zero);
}

TEST_F(Gf4, ArtinSchreierRoots) {
  const auto r = artin_schreier_roots(one, one);
  ASSERT_EQ(r.size(), 2U);
  EXPECT_EQ(r[0], w);
  EXPECT_EQ(r[1], w2);
}

TEST(Gf2, Basics) {
  const FieldPtr f = BinaryField::gf2();
  const FieldElement one = el(f, 1), zero = el(f, 0);
  EXPECT_EQ(one.trace(), one);
  EXPECT_TRUE(zero.trace().is_zero());
  EXPECT_TRUE(artin_schreier_roots(one, one).empty());
  const auto r = artin_schreier_roots(one, zero);
  ASSERT_EQ(r.size(), 2U);
  EXPECT_EQ(r[0], zero);
  EXPECT_EQ(r[1], one);
  EXPECT_EQ(zero.sqrt(), zero);
  EXPECT_EQ(one.sqrt(), one);
}

TEST(Field, Errors) {
  const FieldPtr f4 = BinaryField::make_default(4);
  const FieldPtr f8 = BinaryField::make_default(8);
  EXPECT_THROW(el(f4, 1) + el(f8, 1), FieldMismatch);
  EXPECT_THROW(el(f4, 0).inv(), std::domain_error);
  EXPECT_THROW(BinaryField::make(4, 0x1), std::invalid_argument);  // t^4 + 1 = (t+1)^4
  EXPECT_THROW(BinaryField::make(0, 0x1), std::invalid_argument);
  EXPECT_THROW(BinaryField::make(65, 0x1), std::invalid_argument);
  EXPECT_THROW(el(f4, 16), std::invalid_argument);
  EXPECT_THROW(FieldElement::from_hex(f4, "xz"), std::invalid_argument);
  EXPECT_FALSE(el(f4, 1) == el(f8, 1));
}

TEST(Field, ModulusFromHex) {
  const FieldPtr f = BinaryField::from_modulus_hex("0x1002b");
  EXPECT_EQ(f->degree(), 16U);
  EXPECT_TRUE(f->same_as(*BinaryField::make_default(16)));
  EXPECT_EQ(BinaryField::make_default(64)->modulus_hex(), "1000000000000001b");
  EXPECT_THROW(BinaryField::from_modulus_hex("11"), std::invalid_argument);  // t^4 + 1
}

// The table holds the smallest irreducible of each degree.
TEST(Field, DefaultTableIsLexFirstIrreducible) {
  for (unsigned n = 1; n <= 20; ++n) {
    const std::uint64_t low = detail::kDefaultModulusLow[n - 1];
    EXPECT_TRUE(oracle::irreducible_by_trial_division(n, low)) << n;
    for (std::uint64_t smaller = 0; smaller < low; ++smaller) {
      EXPECT_FALSE(oracle::irreducible_by_trial_division(n, smaller)) << n << " " << smaller;
    }
  }
  for (unsigned n = 1; n <= 64; ++n) EXPECT_TRUE(detail::is_irreducible(n, detail::kDefaultModulusLow[n - 1])) << n;
}

TEST(Field, RabinTestAgreesWithTrialDivision) {
  for (unsigned n = 1; n <= 10; ++n) {
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << n); ++low) {
      EXPECT_EQ(detail::is_irreducible(n, low), oracle::irreducible_by_trial_division(n, low)) << n << " " << low;
    }
  }
}

TEST(Field, MulAgreesWithShiftAndAdd) {
  std::mt19937_64 rng(11);
  for (unsigned n : {1U, 3U, 8U, 16U, 31U, 32U, 63U, 64U}) {
    const FieldPtr f = BinaryField::make_default(n);
    for (int i = 0; i < 2000; ++i) {
      const FieldElement a = FieldElement::random(f, rng), b = FieldElement::random(f, rng);
      EXPECT_EQ((a * b).bits().low_word(),
                oracle::peasant_mul(a.bits().low_word(), b.bits().low_word(), n, f->modulus_low()));
    }
  }
}

TEST(Field, HexRoundTrip) {
  std::mt19937_64 rng(5);
  for (const FieldPtr& f : {BinaryField::make_default(64), quadratic_extension(quadratic_extension(BinaryField::make_default(64)))}) {
    for (int i = 0; i < 200; ++i) {
      const FieldElement a = FieldElement::random(f, rng);
      EXPECT_EQ(FieldElement::from_hex(f, a.to_hex()), a);
    }
  }
}

// Properties over every element for n <= 4, flat and as towers.
TEST(Field, ExhaustiveSmallFieldLaws) {
  std::vector<FieldPtr> fields;
  for (unsigned n = 1; n <= 4; ++n) fields.push_back(BinaryField::make_default(n));
  fields.push_back(quadratic_extension(BinaryField::gf2()));
  fields.push_back(quadratic_extension(quadratic_extension(BinaryField::gf2())));
  fields.push_back(quadratic_extension(BinaryField::make_default(2)));
  for (const FieldPtr& f : fields) {
    const auto elems = all_elements(f);
    const unsigned n = f->degree();
    for (const auto& a : elems) {
      EXPECT_EQ(a.sqrt().square(), a);
      EXPECT_EQ(a.square().sqrt(), a);
      EXPECT_EQ(a.frobenius(n), a);
      EXPECT_EQ(a.pow(std::uint64_t{1} << n), a);
      EXPECT_TRUE((a.square() + a).trace().is_zero());
      if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
      for (const auto& b : elems) {
        EXPECT_EQ((a + b).square(), a.square() + b.square());
        EXPECT_EQ((a * b).square(), a.square() * b.square());
        EXPECT_EQ((a + b).trace(), a.trace() + b.trace());
      }
    }
  }
}

TEST(Field, ExhaustiveArtinSchreierAgainstSearch) {
  for (unsigned n = 1; n <= 4; ++n) {
    const FieldPtr f = BinaryField::make_default(n);
    const FieldPtr ext = quadratic_extension(f);
    for (const auto& c : all_elements(f)) {
      for (const auto& d : all_elements(f)) {
        const auto roots = artin_schreier_roots(c, d);
        EXPECT_EQ(roots, oracle::roots_by_search(c, d));
        for (const auto& r : roots) EXPECT_TRUE((r * r + c * r + d).is_zero());
        if (!c.is_zero()) {
          EXPECT_EQ(roots.size() == 2, !(d / c.square()).trace_bit());
          if (roots.empty()) EXPECT_EQ(artin_schreier_roots(c.embed_into(ext), d.embed_into(ext)).size(), 2U);
        } else {
          EXPECT_EQ(roots.size(), 1U);
        }
      }
    }
  }
}

TEST(Field, SampledLawsOnLargeFields) {
  std::mt19937_64 rng(2024);
  for (unsigned n : {8U, 16U, 32U}) {
    const FieldPtr f = BinaryField::make_default(n);
    const FieldPtr ext = quadratic_extension(f);
    for (int i = 0; i < 10000; ++i) {
      const FieldElement a = FieldElement::random(f, rng), b = FieldElement::random(f, rng);
      ASSERT_EQ(a.sqrt().square(), a);
      const auto roots = artin_schreier_roots(a, b);
      for (const auto& r : roots) ASSERT_TRUE((r * r + a * r + b).is_zero());
      if (!a.is_zero()) {
        ASSERT_EQ(roots.size() == 2, !(b / a.square()).trace_bit());
        ASSERT_EQ(artin_schreier_roots(a.embed_into(ext), b.embed_into(ext)).size(), 2U);
      }
      ASSERT_EQ(a.embed_into(ext) * b.embed_into(ext), (a * b).embed_into(ext));
      ASSERT_EQ(a.embed_into(ext) + b.embed_into(ext), (a + b).embed_into(ext));
    }
  }
}

TEST(Extension, EmbeddingAndDefiningRelation) {
  std::mt19937_64 rng(3);
  for (unsigned n : {1U, 2U, 5U, 16U}) {
    const FieldPtr f = BinaryField::make_default(n);
    const FieldPtr ext = quadratic_extension(f);
    EXPECT_EQ(ext->degree(), 2 * n);
    EXPECT_EQ(ext->tower_depth(), 1U);
    EXPECT_TRUE(ext->parent()->same_as(*f));
    EXPECT_TRUE(FieldElement::zero(f).embed_into(ext).is_zero());
    const FieldElement w(f, ext->tower_constant());
    EXPECT_TRUE(w.trace_bit());
    Bits ub;
    ub.set(n);
    const FieldElement u(ext, ub);
    const auto roots = artin_schreier_roots(FieldElement::one(ext), w.embed_into(ext));
    ASSERT_EQ(roots.size(), 2U);
    EXPECT_EQ(roots[0], u);
    EXPECT_EQ(roots[1], u + FieldElement::one(ext));
    // u is not in the base field; embedded elements are.
    EXPECT_FALSE(u.restrict_to(f).has_value());
    const FieldElement a = FieldElement::random(f, rng);
    EXPECT_EQ(*a.embed_into(ext).restrict_to(f), a);
    EXPECT_TRUE(u.frobenius(n) == u + FieldElement::one(ext));
  }
}

TEST(Extension, TowerOverGf2MatchesFlatGf4) {
  const FieldPtr flat = BinaryField::make_default(2);
  const FieldPtr tower = quadratic_extension(BinaryField::gf2());
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) {
      EXPECT_EQ((el(flat, a) * el(flat, b)).bits(), (el(tower, a) * el(tower, b)).bits());
    }
  }
}

TEST(Extension, DeepTowerInverse) {
  std::mt19937_64 rng(8);
  FieldPtr f = BinaryField::make_default(16);
  for (int level = 0; level < 4; ++level) f = quadratic_extension(f);
  EXPECT_EQ(f->degree(), 256U);
  for (int i = 0; i < 50; ++i) {
    const FieldElement a = FieldElement::random_nonzero(f, rng);
    EXPECT_TRUE((a * a.inv()).is_one());
    EXPECT_EQ(a.sqrt().square(), a);
  }
  EXPECT_THROW(quadratic_extension(quadratic_extension(f)), std::length_error);
}

TEST(Extension, StructurallyEqualExtensionsInteroperate) {
  const FieldPtr f = BinaryField::make_default(3);
  const FieldPtr e1 = quadratic_extension(f), e2 = quadratic_extension(f);
  EXPECT_TRUE(e1->same_as(*e2));
  EXPECT_EQ(el(e1, 9) * el(e1, 7), el(e2, 9) * el(e2, 7));
}

}  // namespace
}  // namespace frobdyn
