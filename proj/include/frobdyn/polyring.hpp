// Sparse multivariate polynomials over a binary field, used to check the
// theta-coordinate identities symbolically.
#ifndef FROBDYN_POLYRING_HPP
#define FROBDYN_POLYRING_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobdyn/gf2k.hpp"
#include "frobdyn/group.hpp"

namespace frobdyn {

// Variables in their fixed monomial order.
enum class Var : std::uint8_t {
  x00, x01, x10, x11,
  l00, l01, l10, l11,
  z1, z2, z3, z4, z5, z6,
  s, t,
};
inline constexpr std::size_t kNumVars = 16;

inline std::string_view var_name(Var v) {
  static constexpr std::array<std::string_view, kNumVars> kNames = {
      "x00", "x01", "x10", "x11", "l00", "l01", "l10", "l11",
      "z1",  "z2",  "z3",  "z4",  "z5",  "z6",  "s",   "t"};
  return kNames[static_cast<std::size_t>(v)];
}

inline Var parse_var(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (var_name(static_cast<Var>(i)) == name) return static_cast<Var>(i);
  }
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

inline Var theta_var(GroupElement g) { return static_cast<Var>(g.index()); }
inline Var lambda_var(GroupElement g) { return static_cast<Var>(4 + g.index()); }

class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Var v, unsigned e = 1) {
    Monomial m;
    m.set(v, e);
    return m;
  }

  unsigned exponent(Var v) const { return exps_[static_cast<std::size_t>(v)]; }
  void set(Var v, unsigned e) {
    if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
    exps_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e);
  }
  unsigned degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0U); }
  bool is_one() const { return degree() == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      const unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
      if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
      m.exps_[i] = static_cast<std::uint8_t>(e);
    }
    return m;
  }

  // Graded lexicographic: higher total degree first, then larger exponent of
  // the earlier variable.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] <=> b.exps_[i];
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  // "l10^2*x00^2*x10^2", or "1" for the empty monomial. Variables are listed
  // alphabetically by name.
  std::string to_string() const {
    static const std::array<Var, kNumVars> kAlpha = [] {
      std::array<Var, kNumVars> v{};
      for (std::size_t i = 0; i < kNumVars; ++i) v[i] = static_cast<Var>(i);
      std::sort(v.begin(), v.end(), [](Var a, Var b) { return var_name(a) < var_name(b); });
      return v;
    }();
    std::string s;
    for (Var v : kAlpha) {
      const unsigned e = exponent(v);
      if (e == 0) continue;
      if (!s.empty()) s += '*';
      s += var_name(v);
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }

 private:
  std::array<std::uint8_t, kNumVars> exps_{};
};

class SparsePoly {
 public:
  using TermMap = std::map<Monomial, FieldElement, std::greater<>>;

  explicit SparsePoly(FieldPtr field) : field_(std::move(field)) {}

  static SparsePoly constant(const FieldElement& c) {
    SparsePoly p(c.field());
    p.add_term(Monomial{}, c);
    return p;
  }
  static SparsePoly variable(const FieldPtr& f, Var v) {
    SparsePoly p(f);
    p.add_term(Monomial::of(v), FieldElement::one(f));
    return p;
  }
  static SparsePoly monomial(const FieldElement& c, const Monomial& m) {
    SparsePoly p(c.field());
    p.add_term(m, c);
    return p;
  }

  const FieldPtr& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

  // Largest term in graded lex order.
  const std::pair<const Monomial, FieldElement>& leading() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return *terms_.begin();
  }

  FieldElement coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? FieldElement::zero(field_) : it->second;
  }

  void add_term(const Monomial& m, const FieldElement& c) {
    if (!c.field()->same_as(*field_)) throw FieldMismatch();
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a += b; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.check(b);
    SparsePoly r(a.field_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    }
    return r;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  SparsePoly scaled(const FieldElement& c) const {
    SparsePoly r(field_);
    for (const auto& [m, k] : terms_) r.add_term(m, k * c);
    return r;
  }

  SparsePoly pow(unsigned e) const {
    SparsePoly result = constant(FieldElement::one(field_));
    SparsePoly base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      e >>= 1;
      if (e != 0) base *= base;
    }
    return result;
  }

  // Same polynomial with coefficients viewed in a tower extension.
  SparsePoly embed_into(const FieldPtr& ext) const {
    SparsePoly r(ext);
    for (const auto& [m, c] : terms_) r.add_term(m, c.embed_into(ext));
    return r;
  }

  // Composition: each assigned variable is replaced by its polynomial;
  // unassigned variables stay as they are.
  SparsePoly substitute(const std::map<Var, SparsePoly>& assignment) const {
    for (const auto& [v, q] : assignment) check(q);
    std::map<std::pair<Var, unsigned>, SparsePoly> powers;
    auto power = [&](Var v, unsigned e) -> const SparsePoly& {
      auto it = powers.find({v, e});
      if (it == powers.end()) it = powers.emplace(std::pair{v, e}, assignment.at(v).pow(e)).first;
      return it->second;
    };
    SparsePoly r(field_);
    for (const auto& [m, c] : terms_) {
      Monomial kept;
      SparsePoly term = constant(c);
      for (std::size_t i = 0; i < kNumVars; ++i) {
        const auto v = static_cast<Var>(i);
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        if (assignment.contains(v)) {
          term *= power(v, e);
        } else {
          kept.set(v, e);
        }
      }
      if (!kept.is_one()) term *= monomial(FieldElement::one(field_), kept);
      r += term;
    }
    return r;
  }

  // Value at a point; every occurring variable must be assigned.
  FieldElement evaluate(const std::map<Var, FieldElement>& point) const {
    FieldElement acc = FieldElement::zero(field_);
    for (const auto& [m, c] : terms_) {
      FieldElement t = c;
      for (std::size_t i = 0; i < kNumVars; ++i) {
        const auto v = static_cast<Var>(i);
        if (const unsigned e = m.exponent(v); e != 0) t *= point.at(v).pow(e);
      }
      acc += t;
    }
    return acc;
  }

  // Leading term first; coefficient 1 omitted, others written as "[hex]*".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      if (c.is_one()) {
        s += m.to_string();
      } else {
        s += '[' + c.to_hex() + ']';
        if (!m.is_one()) s += '*' + m.to_string();
      }
    }
    return s;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.field_->same_as(*b.field_) && a.terms_ == b.terms_;
  }

 private:
  void check(const SparsePoly& o) const {
    if (!field_->same_as(*o.field_)) throw FieldMismatch();
  }

  FieldPtr field_;
  TermMap terms_;
};

// mu != 0 with p = mu * q, if one exists.
inline std::optional<FieldElement> proportional(const SparsePoly& p, const SparsePoly& q) {
  if (!p.field()->same_as(*q.field())) throw FieldMismatch();
  if (p.is_zero() || q.is_zero() || p.size() != q.size()) return std::nullopt;
  const auto& [mp, cp] = p.leading();
  const auto& [mq, cq] = q.leading();
  if (!(mp == mq)) return std::nullopt;
  const FieldElement mu = cp / cq;
  auto ip = p.terms().begin();
  for (auto iq = q.terms().begin(); iq != q.terms().end(); ++iq, ++ip) {
    if (!(ip->first == iq->first) || !(ip->second == mu * iq->second)) return std::nullopt;
  }
  return mu;
}

namespace symbolic {

inline SparsePoly x(const FieldPtr& f, GroupElement g) { return SparsePoly::variable(f, theta_var(g)); }

// Sum of the theta coordinates.
inline SparsePoly hyperplane_sum(const FieldPtr& f) {
  SparsePoly h(f);
  for (GroupElement g : kGroup) h += x(f, g);
  return h;
}

// P_g = sum over h in G/<g> of x_{g+h} x_h, for an explicit choice of coset
// representatives. For g = 0 every element is its own coset.
inline SparsePoly quadric_with_reps(const FieldPtr& f, GroupElement g, const std::vector<GroupElement>& reps) {
  SparsePoly p(f);
  for (GroupElement h : reps) p += x(f, g + h) * x(f, h);
  return p;
}

// Representatives {00, smallest element outside <g>}, or all of G for g = 0.
inline std::vector<GroupElement> default_coset_reps(GroupElement g) {
  if (g.is_identity()) return {kGroup.begin(), kGroup.end()};
  for (GroupElement h : kGroup) {
    if (h != g && !h.is_identity()) return {g00, h};
  }
  throw std::logic_error("unreachable");
}

inline SparsePoly quadric(const FieldPtr& f, GroupElement g) {
  return quadric_with_reps(f, g, default_coset_reps(g));
}

// Both sides of (sum_{h in G_g} x_h)(sum_{h not in G_g} x_h) = sum_{h not in G_g} P_h
// for the index-2 subgroup G_g = {0, g}, g != 0.
inline std::pair<SparsePoly, SparsePoly> subgroup_identity_sides(const FieldPtr& f, GroupElement g) {
  if (g.is_identity()) throw std::invalid_argument("subgroup generator must be nonzero");
  SparsePoly inside(f), outside(f), rhs(f);
  for (GroupElement h : kGroup) {
    if (h.is_identity() || h == g) {
      inside += x(f, h);
    } else {
      outside += x(f, h);
      rhs += quadric(f, h);
    }
  }
  return {inside * outside, rhs};
}

}  // namespace symbolic

inline bool verify_subgroup_identity(GroupElement g) {
  const auto [lhs, rhs] = symbolic::subgroup_identity_sides(BinaryField::gf2(), g);
  return lhs == rhs;
}

inline bool verify_subgroup_identity() {
  return verify_subgroup_identity(g01) && verify_subgroup_identity(g10) && verify_subgroup_identity(g11);
}

// P_00 = (sum x_g)^2 in GF(2)[x].
inline bool verify_p0_square() {
  const FieldPtr f = BinaryField::gf2();
  return symbolic::quadric(f, g00) == symbolic::hyperplane_sum(f).pow(2);
}

}  // namespace frobdyn

#endif  // FROBDYN_POLYRING_HPP
