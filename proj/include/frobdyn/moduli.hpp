// Points of P^3 in theta coordinates, the quadrics P_g, the Verschiebung and
// absolute Frobenius maps, the Kummer quartic, and the odd-degree projection.
#ifndef FROBDYN_MODULI_HPP
#define FROBDYN_MODULI_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobdyn/gf2k.hpp"
#include "frobdyn/group.hpp"
#include "frobdyn/polyring.hpp"

namespace frobdyn {

using Coords = std::array<FieldElement, 4>;

// The larger of two tower-related fields.
inline FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a->contains(*b)) return a;
  if (b->contains(*a)) return b;
  throw FieldMismatch();
}

namespace detail {

inline FieldPtr coords_field(const auto& coords) {
  FieldPtr f = coords[0].field();
  if (!f) throw std::invalid_argument("uninitialized coordinate");
  for (const auto& c : coords) {
    if (!c.field() || !c.field()->same_as(*f)) throw FieldMismatch();
  }
  return f;
}

// Scale so the first nonzero coordinate is 1. Returns false for the zero vector.
template <std::size_t N>
bool normalize(std::array<FieldElement, N>& c) {
  for (std::size_t i = 0; i < N; ++i) {
    if (c[i].is_zero()) continue;
    const FieldElement s = c[i].inv();
    for (std::size_t j = i; j < N; ++j) c[j] *= s;
    return true;
  }
  return false;
}

}  // namespace detail

class ProjPoint {
 public:
  // Normalizes; throws on the zero vector or mixed fields.
  explicit ProjPoint(Coords c) : coords_(std::move(c)) {
    detail::coords_field(coords_);
    if (!detail::normalize(coords_)) throw std::invalid_argument("all projective coordinates are zero");
  }

  static std::optional<ProjPoint> try_make(Coords c) {
    detail::coords_field(c);
    if (!detail::normalize(c)) return std::nullopt;
    return ProjPoint(std::move(c), Normalized{});
  }

  static ProjPoint of(const FieldPtr& f, std::uint64_t x00, std::uint64_t x01, std::uint64_t x10, std::uint64_t x11) {
    return ProjPoint(Coords{FieldElement::from_uint(f, x00), FieldElement::from_uint(f, x01),
                            FieldElement::from_uint(f, x10), FieldElement::from_uint(f, x11)});
  }

  static ProjPoint base_point(const FieldPtr& f) { return of(f, 1, 1, 1, 1); }

  const FieldElement& operator[](GroupElement g) const { return coords_[g.index()]; }
  const Coords& coords() const { return coords_; }
  const FieldPtr& field() const { return coords_[0].field(); }

  bool is_base_point() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const FieldElement& c) { return c.is_one(); });
  }

  ProjPoint embed_into(const FieldPtr& ext) const {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = coords_[i].embed_into(ext);
    return ProjPoint(std::move(c), Normalized{});
  }

  std::optional<ProjPoint> restrict_to(const FieldPtr& sub) const {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) {
      auto r = coords_[i].restrict_to(sub);
      if (!r) return std::nullopt;
      c[i] = *r;
    }
    return ProjPoint(std::move(c), Normalized{});
  }

  // Coordinatewise squaring (the Frobenius twist of the coordinates).
  ProjPoint squared() const {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = coords_[i].square();
    return ProjPoint(std::move(c), Normalized{});
  }
  ProjPoint sqrt() const {
    Coords c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = coords_[i].sqrt();
    return ProjPoint(std::move(c), Normalized{});
  }

  // "(1:0:0:1)" with hex coordinates.
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != 0) s += ':';
      s += coords_[i].to_hex();
    }
    return s + ")";
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (auto c = a.coords_[i] <=> b.coords_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  struct Normalized {};
  ProjPoint(Coords c, Normalized) : coords_(std::move(c)) {}

  Coords coords_;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const {
    std::size_t h = 0;
    for (const auto& c : p.coords()) {
      for (std::size_t i = 0; i < kMaxLimbs; ++i) h = h * 1000003U ^ std::hash<std::uint64_t>{}(c.bits().limb(i));
    }
    return h;
  }
};

// Every point of P^3(F), normalized, in a fixed order: grouped by the
// position of the leading 1, then by the trailing coordinates as integers.
inline std::vector<ProjPoint> all_points(const FieldPtr& f) {
  const std::vector<FieldElement> elems = all_elements(f);
  const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
  std::vector<ProjPoint> out;
  for (std::size_t lead = 4; lead-- > 0;) {
    const std::size_t free = 3 - lead;
    std::size_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= elems.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      Coords c{zero, zero, zero, zero};
      c[lead] = one;
      std::size_t rest = idx;
      for (std::size_t j = 4; j-- > lead + 1;) {
        c[j] = elems[rest % elems.size()];
        rest /= elems.size();
      }
      out.emplace_back(std::move(c));
    }
  }
  return out;
}

inline std::uint64_t projective_point_count(unsigned degree) {
  const std::uint64_t q = std::uint64_t{1} << degree;
  return ((q * q * q * q) - 1) / (q - 1);
}

class ThetaConstants {
 public:
  explicit ThetaConstants(std::array<FieldElement, 4> lam) : lam_(std::move(lam)) {
    detail::coords_field(lam_);
    for (const auto& l : lam_) {
      if (l.is_zero()) throw std::invalid_argument("theta constants must all be nonzero");
    }
  }

  static ThetaConstants ones(const FieldPtr& f) {
    const FieldElement one = FieldElement::one(f);
    return ThetaConstants({one, one, one, one});
  }

  static ThetaConstants random(const FieldPtr& f, std::mt19937_64& rng) {
    return ThetaConstants({FieldElement::random_nonzero(f, rng), FieldElement::random_nonzero(f, rng),
                           FieldElement::random_nonzero(f, rng), FieldElement::random_nonzero(f, rng)});
  }

  const FieldElement& operator[](GroupElement g) const { return lam_[g.index()]; }
  const std::array<FieldElement, 4>& values() const { return lam_; }
  const FieldPtr& field() const { return lam_[0].field(); }

  ThetaConstants squared() const {
    return ThetaConstants({lam_[0].square(), lam_[1].square(), lam_[2].square(), lam_[3].square()});
  }
  ThetaConstants embed_into(const FieldPtr& ext) const {
    return ThetaConstants({lam_[0].embed_into(ext), lam_[1].embed_into(ext), lam_[2].embed_into(ext),
                           lam_[3].embed_into(ext)});
  }

  friend bool operator==(const ThetaConstants&, const ThetaConstants&) = default;

 private:
  std::array<FieldElement, 4> lam_;
};

// ---- quadrics and maps ----

// P_00 = (sum x_g)^2, P_01 = x01 x00 + x11 x10, P_10 = x10 x00 + x11 x01,
// P_11 = x11 x00 + x10 x01.
inline FieldElement quadric_eval(GroupElement g, const Coords& x) {
  switch (g.index()) {
    case 0: return (x[0] + x[1] + x[2] + x[3]).square();
    case 1: return x[1] * x[0] + x[3] * x[2];
    case 2: return x[2] * x[0] + x[3] * x[1];
    default: return x[3] * x[0] + x[2] * x[1];
  }
}
inline FieldElement quadric_eval(GroupElement g, const ProjPoint& x) { return quadric_eval(g, x.coords()); }

// (lambda_g P_g(x))_g as an affine vector, with lambda and x in a common field.
inline Coords verschiebung_affine(const ThetaConstants& lam, const Coords& x) {
  const FieldPtr f = common_field(lam.field(), detail::coords_field(x));
  Coords y;
  for (GroupElement g : kGroup) {
    Coords xe;
    for (std::size_t i = 0; i < 4; ++i) xe[i] = x[i].embed_into(f);
    y[g.index()] = lam[g].embed_into(f) * quadric_eval(g, xe);
  }
  return y;
}

// Empty exactly on the base locus, where all four quadrics vanish.
inline std::optional<ProjPoint> verschiebung(const ThetaConstants& lam, const ProjPoint& x) {
  return ProjPoint::try_make(verschiebung_affine(lam, x.coords()));
}

// x -> (lambda_g P_g(x)^2)_g, the Verschiebung applied after squaring the
// coordinates.
inline std::optional<ProjPoint> absolute_frobenius(const ThetaConstants& lam, const ProjPoint& x) {
  const FieldPtr f = common_field(lam.field(), x.field());
  const ProjPoint xe = x.embed_into(f);
  Coords y;
  for (GroupElement g : kGroup) y[g.index()] = lam[g].embed_into(f) * quadric_eval(g, xe).square();
  return ProjPoint::try_make(std::move(y));
}

// Denominator-cleared Kummer quartic:
//   l00 [l10^2 Q10 + l01^2 Q01 + l11^2 Q11] + l10 l01 l11 R
// with Q10 = x00^2 x10^2 + x01^2 x11^2, Q01 = x00^2 x01^2 + x10^2 x11^2,
// Q11 = x00^2 x11^2 + x01^2 x10^2, R = x00 x01 x10 x11.
inline FieldElement kummer_eval(const ThetaConstants& lam, const ProjPoint& p) {
  const FieldPtr f = common_field(lam.field(), p.field());
  const ProjPoint x = p.embed_into(f);
  const ThetaConstants l = lam.embed_into(f);
  const auto s = [&](GroupElement g) { return x[g].square(); };
  const FieldElement q10 = s(g00) * s(g10) + s(g01) * s(g11);
  const FieldElement q01 = s(g00) * s(g01) + s(g10) * s(g11);
  const FieldElement q11 = s(g00) * s(g11) + s(g01) * s(g10);
  const FieldElement r = x[g00] * x[g01] * x[g10] * x[g11];
  return l[g00] * (l[g10].square() * q10 + l[g01].square() * q01 + l[g11].square() * q11) +
         l[g10] * l[g01] * l[g11] * r;
}

// The source Kummer surface: every lambda coefficient squared.
inline FieldElement kummer1_eval(const ThetaConstants& lam, const ProjPoint& x) {
  return kummer_eval(lam.squared(), x);
}

inline bool on_H(const ProjPoint& x) { return x[g00].is_zero(); }
inline bool on_H1(const ProjPoint& x) { return (x[g00] + x[g01] + x[g10] + x[g11]).is_zero(); }

// l10 x01 x11 + l01 x10 x11 + l11 x01 x10
inline FieldElement conic_eval(const ThetaConstants& lam, const ProjPoint& p) {
  const FieldPtr f = common_field(lam.field(), p.field());
  const ProjPoint x = p.embed_into(f);
  const ThetaConstants l = lam.embed_into(f);
  return l[g10] * x[g01] * x[g11] + l[g01] * x[g10] * x[g11] + l[g11] * x[g01] * x[g10];
}

// y_g = x_{g+a}
inline ProjPoint translate(GroupElement a, const ProjPoint& x) {
  Coords c;
  for (GroupElement g : kGroup) c[g.index()] = x[g + a];
  return ProjPoint(std::move(c));
}

// ---- odd-degree projection from the Pluecker quadric ----

class PluckerPoint {
 public:
  explicit PluckerPoint(std::array<FieldElement, 6> z) : z_(std::move(z)) {
    detail::coords_field(z_);
    if (!detail::normalize(z_)) throw std::invalid_argument("all Pluecker coordinates are zero");
  }

  static PluckerPoint random(const FieldPtr& f, std::mt19937_64& rng) {
    for (;;) {
      std::array<FieldElement, 6> z;
      for (auto& c : z) c = FieldElement::random(f, rng);
      if (std::any_of(z.begin(), z.end(), [](const FieldElement& c) { return !c.is_zero(); })) return PluckerPoint(z);
    }
  }

  // 1-based, matching z1..z6.
  const FieldElement& z(std::size_t i) const { return z_.at(i - 1); }
  const std::array<FieldElement, 6>& coords() const { return z_; }
  const FieldPtr& field() const { return z_[0].field(); }

 private:
  std::array<FieldElement, 6> z_;
};

// z1 z4 + z2 z5 + z3 z6
inline FieldElement grassmann_eval(const PluckerPoint& p) {
  return p.z(1) * p.z(4) + p.z(2) * p.z(5) + p.z(3) * p.z(6);
}

inline bool in_projection_center(const PluckerPoint& p) {
  return (p.z(1) + p.z(4)).is_zero() && (p.z(2) + p.z(5)).is_zero() && (p.z(3) + p.z(6)).is_zero();
}

// (0 : z1+z4 : z2+z5 : z3+z6); empty on the center.
inline std::optional<ProjPoint> odd_projection(const PluckerPoint& p) {
  return ProjPoint::try_make(
      Coords{FieldElement::zero(p.field()), p.z(1) + p.z(4), p.z(2) + p.z(5), p.z(3) + p.z(6)});
}

// ---- symbolic forms in x with numeric lambda ----

namespace symbolic {

inline SparsePoly kummer(const ThetaConstants& lam) {
  const FieldPtr& f = lam.field();
  const auto sq = [&](GroupElement g) { return x(f, g).pow(2); };
  const SparsePoly q10 = sq(g00) * sq(g10) + sq(g01) * sq(g11);
  const SparsePoly q01 = sq(g00) * sq(g01) + sq(g10) * sq(g11);
  const SparsePoly q11 = sq(g00) * sq(g11) + sq(g01) * sq(g10);
  const SparsePoly r = x(f, g00) * x(f, g01) * x(f, g10) * x(f, g11);
  return (q10.scaled(lam[g10].square()) + q01.scaled(lam[g01].square()) + q11.scaled(lam[g11].square()))
             .scaled(lam[g00]) +
         r.scaled(lam[g10] * lam[g01] * lam[g11]);
}

inline SparsePoly kummer1(const ThetaConstants& lam) { return kummer(lam.squared()); }

inline SparsePoly conic(const ThetaConstants& lam) {
  const FieldPtr& f = lam.field();
  return (x(f, g01) * x(f, g11)).scaled(lam[g10]) + (x(f, g10) * x(f, g11)).scaled(lam[g01]) +
         (x(f, g01) * x(f, g10)).scaled(lam[g11]);
}

// x_g -> lambda_g P_g
inline std::map<Var, SparsePoly> verschiebung_assignment(const ThetaConstants& lam) {
  std::map<Var, SparsePoly> a;
  for (GroupElement g : kGroup) a.emplace(theta_var(g), quadric(lam.field(), g).scaled(lam[g]));
  return a;
}

// x_g -> x_{g+a}
inline std::map<Var, SparsePoly> translation_assignment(const FieldPtr& f, GroupElement a) {
  std::map<Var, SparsePoly> m;
  for (GroupElement g : kGroup) m.emplace(theta_var(g), x(f, g + a));
  return m;
}

}  // namespace symbolic

// l00 * conic^2 == K|_{x00 = 0}
inline bool verify_conic_square(const ThetaConstants& lam) {
  const FieldPtr& f = lam.field();
  const SparsePoly restricted =
      symbolic::kummer(lam).substitute({{Var::x00, SparsePoly(f)}});
  return symbolic::conic(lam).pow(2).scaled(lam[g00]) == restricted;
}

// The scalar mu with K(lambda P(x)) = mu * K1(x) * (sum x_g)^4, if the
// factorization holds.
inline std::optional<FieldElement> pullback_factor(const ThetaConstants& lam) {
  const SparsePoly pulled = symbolic::kummer(lam).substitute(symbolic::verschiebung_assignment(lam));
  const SparsePoly expected = symbolic::kummer1(lam) * symbolic::hyperplane_sum(lam.field()).pow(4);
  return proportional(pulled, expected);
}

// K(x_{g+a}) == K(x); the quartics Q_g and R are each invariant under every
// translation, so no relabelling of lambda is involved.
inline bool verify_translation_invariance(const ThetaConstants& lam, GroupElement a) {
  const SparsePoly k = symbolic::kummer(lam);
  return k.substitute(symbolic::translation_assignment(lam.field(), a)) == k;
}

// Every choice of coset representatives yields the same P_g.
inline bool verify_coset_rep_independence() {
  const FieldPtr f = BinaryField::gf2();
  for (GroupElement g : kGroup) {
    if (g.is_identity()) continue;
    const SparsePoly ref = symbolic::quadric(f, g);
    for (GroupElement r : kGroup) {
      if (r == g00 || r == g) continue;
      for (GroupElement r0 : {g00, g}) {
        for (GroupElement r1 : {r, r + g}) {
          if (symbolic::quadric_with_reps(f, g, {r0, r1}) != ref) return false;
        }
      }
    }
  }
  return true;
}

// Points of P^3(F) where all four quadrics vanish.
inline std::vector<ProjPoint> base_locus(const FieldPtr& f) {
  std::vector<ProjPoint> out;
  for (const ProjPoint& p : all_points(f)) {
    if (std::all_of(kGroup.begin(), kGroup.end(), [&](GroupElement g) { return quadric_eval(g, p).is_zero(); })) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace frobdyn

#endif  // FROBDYN_MODULI_HPP
