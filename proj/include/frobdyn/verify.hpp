// Point samplers and the identity/invariant suite behind `frobdyn verify`.
#ifndef FROBDYN_VERIFY_HPP
#define FROBDYN_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/fibers.hpp"
#include "frobdyn/moduli.hpp"
#include "frobdyn/polyring.hpp"

namespace frobdyn {

// A random point of the plane H1 = {sum x_g = 0}, never (1:1:1:1).
inline ProjPoint sample_h1_point(const FieldPtr& f, std::mt19937_64& rng) {
  for (;;) {
    const FieldElement a = FieldElement::random(f, rng), b = FieldElement::random(f, rng),
                       c = FieldElement::random(f, rng);
    auto p = ProjPoint::try_make(Coords{a + b + c, a, b, c});
    if (p && !p->is_base_point()) return *p;
  }
}

// A random point on the Kummer quartic K(lambda, x) = 0: draw x00, x01, x10
// and solve the quadratic in x11,
//   l00 (l10^2 x01^2 + l01^2 x10^2 + l11^2 x00^2) x11^2 + l10 l01 l11 x00 x01 x10 x11
//     + l00 (l10^2 x00^2 x10^2 + l01^2 x00^2 x01^2 + l11^2 x01^2 x10^2) = 0,
// with the Artin-Schreier solver; redraw when it has no root in the field.
inline ProjPoint sample_kummer_point(const ThetaConstants& lam, std::mt19937_64& rng) {
  const FieldPtr& f = lam.field();
  const FieldElement l00 = lam[g00], l01 = lam[g01], l10 = lam[g10], l11 = lam[g11];
  for (;;) {
    const FieldElement x00 = FieldElement::random(f, rng), x01 = FieldElement::random(f, rng),
                       x10 = FieldElement::random(f, rng);
    const FieldElement a = l00 * (l10.square() * x01.square() + l01.square() * x10.square() + l11.square() * x00.square());
    if (a.is_zero()) continue;
    const FieldElement b = l10 * l01 * l11 * x00 * x01 * x10;
    const FieldElement c = l00 * (l10.square() * x00.square() * x10.square() + l01.square() * x00.square() * x01.square() +
                                  l11.square() * x01.square() * x10.square());
    const auto roots = artin_schreier_roots(b / a, c / a);
    if (roots.empty()) continue;
    const FieldElement& x11 = roots[rng() % roots.size()];
    if (auto p = ProjPoint::try_make(Coords{x00, x01, x10, x11})) return *p;
  }
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t symbolic_samples = 25;
  std::size_t point_samples = 200;
  unsigned sample_field_degree = 16;
  // Fields up to this degree are checked exhaustively instead of sampled.
  unsigned exhaustive_max_degree = 4;
};

inline std::vector<CheckResult> run_verify_suite(const ThetaConstants& lam, const VerifyOptions& opt = {}) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opt.seed);
  const FieldPtr& f = lam.field();
  const bool exhaustive = f->degree() <= opt.exhaustive_max_degree;

  for (GroupElement g : {g01, g10, g11}) {
    const auto [lhs, rhs] = symbolic::subgroup_identity_sides(BinaryField::gf2(), g);
    out.push_back({"subgroup_identity[" + g.name() + "]", lhs == rhs, lhs.to_string() + " = " + rhs.to_string()});
  }
  out.push_back({"p0_square", verify_p0_square(), symbolic::quadric(BinaryField::gf2(), g00).to_string()});
  out.push_back({"coset_representatives", verify_coset_rep_independence(), "all representative choices agree"});

  out.push_back({"conic_square", verify_conic_square(lam), symbolic::conic(lam).to_string()});
  {
    const auto mu = pullback_factor(lam);
    out.push_back({"pullback_factorization", mu.has_value(), mu ? "mu=" + mu->to_hex() : "not proportional"});
  }
  {
    const FieldPtr big = BinaryField::make_default(opt.sample_field_degree);
    std::size_t conic_ok = 0, pull_ok = 0;
    std::string scalars;
    for (std::size_t i = 0; i < opt.symbolic_samples; ++i) {
      const ThetaConstants r = ThetaConstants::random(big, rng);
      conic_ok += verify_conic_square(r) ? 1 : 0;
      if (const auto mu = pullback_factor(r)) {
        ++pull_ok;
        scalars += (scalars.empty() ? "" : ",") + mu->to_hex();
      }
    }
    const std::string tag = "[random GF(2^" + std::to_string(opt.sample_field_degree) + ")]";
    out.push_back({"conic_square" + tag, conic_ok == opt.symbolic_samples,
                   std::to_string(conic_ok) + "/" + std::to_string(opt.symbolic_samples)});
    out.push_back({"pullback_factorization" + tag, pull_ok == opt.symbolic_samples,
                   std::to_string(pull_ok) + "/" + std::to_string(opt.symbolic_samples) + " mu=" + scalars});
  }
  for (GroupElement a : kGroup) {
    out.push_back({"translation_invariance[" + a.name() + "]", verify_translation_invariance(lam, a),
                   "K(x_{g+" + a.name() + "}) = K(x)"});
  }
  for (unsigned n = 1; n <= 4; ++n) {
    const auto locus = base_locus(BinaryField::make_default(n));
    const bool ok = locus.size() == 1 && locus[0].is_base_point();
    out.push_back({"base_locus_exact[GF(2^" + std::to_string(n) + ")]", ok,
                   std::to_string(locus.size()) + " common zero(s)"});
  }

  std::vector<ProjPoint> targets;
  if (exhaustive) {
    targets = all_points(f);
  } else {
    for (std::size_t i = 0; i < opt.point_samples; ++i) {
      std::optional<ProjPoint> p;
      while (!p) {
        p = ProjPoint::try_make(Coords{FieldElement::random(f, rng), FieldElement::random(f, rng),
                                       FieldElement::random(f, rng), FieldElement::random(f, rng)});
      }
      targets.push_back(*p);
    }
  }
  const std::string scope = exhaustive ? "exhaustive" : "sampled";

  {
    std::size_t checked = 0, bad = 0;
    auto check = [&](const ProjPoint& x) {
      ++checked;
      const auto y = verschiebung(lam, x);
      if (!y || !on_H(*y) || !conic_eval(lam, *y).is_zero()) ++bad;
    };
    if (exhaustive) {
      for (const auto& x : targets) {
        if (on_H1(x) && !x.is_base_point()) check(x);
      }
    } else {
      for (std::size_t i = 0; i < opt.point_samples; ++i) check(sample_h1_point(f, rng));
    }
    out.push_back({"h1_contraction", bad == 0, scope + " " + std::to_string(checked) + " points, " +
                                                   std::to_string(bad) + " failures"});
  }
  {
    std::size_t checked = 0, bad = 0;
    auto check = [&](const ProjPoint& x) {
      ++checked;
      const auto y = absolute_frobenius(lam, x);
      if (!y || !kummer_eval(lam, *y).is_zero()) ++bad;
      const auto v = verschiebung(lam, x);
      if (kummer1_eval(lam, x).is_zero() && (!v || !kummer_eval(lam, *v).is_zero())) ++bad;
    };
    if (exhaustive) {
      for (const auto& x : targets) {
        if (kummer_eval(lam, x).is_zero()) check(x);
      }
    } else {
      for (std::size_t i = 0; i < opt.point_samples; ++i) check(sample_kummer_point(lam, rng));
    }
    out.push_back({"kummer_forward_invariance", bad == 0, scope + " " + std::to_string(checked) + " points, " +
                                                              std::to_string(bad) + " failures"});
  }
  {
    std::size_t four = 0, empty = 0, line = 0, bad = 0;
    for (const auto& a : targets) {
      const FiberResult r = preimage(lam, a);
      four += r.index() == 0;
      empty += r.index() == 1;
      line += r.index() == 2;
      const bool expected_kind = on_H(a) ? r.index() != 0 : r.index() == 0;
      if (!expected_kind || !verify_fiber(lam, a, r, opt.seed)) ++bad;
    }
    out.push_back({"fiber_classification", bad == 0,
                   scope + " four=" + std::to_string(four) + " empty=" + std::to_string(empty) +
                       " line=" + std::to_string(line) + " failures=" + std::to_string(bad)});
  }
  {
    std::size_t bad = 0;
    for (const auto& y : targets) {
      const SurjectivityWitness w = surjectivity_witness(lam, y);
      if (w.fiber.index() != 0 || !verify_fiber(lam, w.translated, w.fiber)) ++bad;
    }
    out.push_back({"surjectivity_witness", bad == 0,
                   scope + " " + std::to_string(targets.size()) + " targets, " + std::to_string(bad) + " failures"});
  }
  {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < opt.point_samples; ++i) {
      const PluckerPoint z = PluckerPoint::random(f, rng);
      const auto img = odd_projection(z);
      if (img.has_value() == in_projection_center(z) || (img && !on_H(*img))) ++bad;
    }
    out.push_back({"odd_projection", bad == 0,
                   std::to_string(opt.point_samples) + " Pluecker points, " + std::to_string(bad) + " failures"});
  }
  return out;
}

}  // namespace frobdyn

#endif  // FROBDYN_VERIFY_HPP
