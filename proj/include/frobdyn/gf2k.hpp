// Exact arithmetic in binary fields GF(2^n) and their quadratic towers.
//
// A base field is GF(2)[t]/(f) with deg f = n <= 64. A tower field is
// K[u]/(u^2 + u + w) over a parent K, with Tr_K(w) = 1. Tower elements are
// stored as bit vectors a0 | a1 << (deg K), meaning a0 + a1*u, so embedding a
// parent element into its extension leaves the bits unchanged.
#ifndef FROBDYN_GF2K_HPP
#define FROBDYN_GF2K_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frobdyn {

inline constexpr unsigned kMaxBaseDegree = 64;
inline constexpr std::size_t kMaxLimbs = 8;
inline constexpr unsigned kMaxFieldBits = 64 * kMaxLimbs;

class FieldMismatch : public std::invalid_argument {
 public:
  FieldMismatch() : std::invalid_argument("operands belong to different fields") {}
};

// Fixed-capacity GF(2) coefficient vector. Ordered as an unsigned integer.
class Bits {
 public:
  constexpr Bits() = default;
  constexpr explicit Bits(std::uint64_t low) { limbs_[0] = low; }

  bool test(unsigned i) const { return (limbs_[i / 64] >> (i % 64)) & 1U; }
  void set(unsigned i) { limbs_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(unsigned i) { limbs_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  bool is_zero() const {
    return std::all_of(limbs_.begin(), limbs_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::uint64_t low_word() const { return limbs_[0]; }
  std::uint64_t limb(std::size_t i) const { return limbs_[i]; }
  void set_limb(std::size_t i, std::uint64_t v) { limbs_[i] = v; }

  // Index of the highest set bit, or -1 for zero.
  int top_bit() const {
    for (std::size_t i = kMaxLimbs; i-- > 0;) {
      if (limbs_[i] != 0) return static_cast<int>(64 * i + 63 - std::countl_zero(limbs_[i]));
    }
    return -1;
  }

  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < kMaxLimbs; ++i) limbs_[i] ^= o.limbs_[i];
    return *this;
  }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  // Bits [offset, offset + len) moved down to position 0.
  Bits slice(unsigned offset, unsigned len) const {
    Bits out;
    const unsigned q = offset / 64, r = offset % 64;
    for (std::size_t i = 0; i + q < kMaxLimbs; ++i) {
      std::uint64_t v = limbs_[i + q] >> r;
      if (r != 0 && i + q + 1 < kMaxLimbs) v |= limbs_[i + q + 1] << (64 - r);
      out.limbs_[i] = v;
    }
    out.truncate(len);
    return out;
  }

  // Shift left by `offset` bits; bits pushed past capacity are dropped.
  Bits shifted(unsigned offset) const {
    Bits out;
    const unsigned q = offset / 64, r = offset % 64;
    for (std::size_t i = kMaxLimbs; i-- > q;) {
      std::uint64_t v = limbs_[i - q] << r;
      if (r != 0 && i - q >= 1) v |= limbs_[i - q - 1] >> (64 - r);
      out.limbs_[i] = v;
    }
    return out;
  }

  void truncate(unsigned len) {
    for (std::size_t i = 0; i < kMaxLimbs; ++i) {
      if (64 * i >= len) {
        limbs_[i] = 0;
      } else if (64 * (i + 1) > len) {
        limbs_[i] &= (std::uint64_t{1} << (len - 64 * i)) - 1;
      }
    }
  }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    for (std::size_t i = kMaxLimbs; i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
  }

  // Lowercase hex, bit i = coefficient of t^i, no prefix, at least one digit.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const int top = top_bit();
    if (top < 0) return "0";
    std::string s;
    for (int nib = top / 4; nib >= 0; --nib) {
      const unsigned shift = static_cast<unsigned>(nib) * 4;
      const unsigned v = static_cast<unsigned>((limbs_[shift / 64] >> (shift % 64)) & 0xF);
      s.push_back(kDigits[v]);
    }
    return s;
  }

  static Bits from_hex(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    if (s.empty()) throw std::invalid_argument("empty hex string");
    if (s.size() > kMaxFieldBits / 4) throw std::invalid_argument("hex string too long");
    Bits out;
    unsigned pos = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it, pos += 4) {
      const char c = *it;
      unsigned v;
      if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
      else throw std::invalid_argument("invalid hex digit in '" + std::string(s) + "'");
      out.limbs_[pos / 64] |= std::uint64_t{v} << (pos % 64);
    }
    return out;
  }

 private:
  std::array<std::uint64_t, kMaxLimbs> limbs_{};
};

namespace detail {

using u128 = unsigned __int128;

inline u128 clmul(std::uint64_t a, std::uint64_t b) {
  u128 r = 0;
  u128 aa = a;
  while (b != 0) {
    if (b & 1U) r ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return r;
}

inline int degree_of(u128 p) {
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  const auto lo = static_cast<std::uint64_t>(p);
  if (hi != 0) return 127 - std::countl_zero(hi);
  if (lo != 0) return 63 - std::countl_zero(lo);
  return -1;
}

inline u128 poly_mod(u128 a, u128 f) {
  const int df = degree_of(f);
  for (int da = degree_of(a); da >= df; da = degree_of(a)) a ^= f << (da - df);
  return a;
}

inline u128 poly_gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// x*y mod f with deg f = n <= 64 and deg x, deg y < n.
inline std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, u128 f, unsigned n) {
  u128 p = clmul(x, y);
  for (int i = 2 * static_cast<int>(n) - 2; i >= static_cast<int>(n); --i) {
    if ((p >> i) & 1U) p ^= f << (i - static_cast<int>(n));
  }
  return static_cast<std::uint64_t>(p);
}

// Rabin's test: f of degree n is irreducible iff t^(2^n) = t mod f and
// gcd(t^(2^(n/p)) - t, f) = 1 for every prime p dividing n.
inline bool is_irreducible(unsigned n, std::uint64_t low) {
  if (n == 0 || n > kMaxBaseDegree) return false;
  const u128 f = (u128{1} << n) | low;
  const std::uint64_t t = n == 1 ? static_cast<std::uint64_t>(poly_mod(2, f)) : 2;
  auto t_pow2k = [&](unsigned k) {
    std::uint64_t x = t;
    for (unsigned i = 0; i < k; ++i) x = mulmod(x, x, f, n);
    return x;
  };
  if (t_pow2k(n) != t) return false;
  unsigned m = n;
  for (unsigned p = 2; p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    const std::uint64_t h = t_pow2k(n / p) ^ t;
    if (degree_of(poly_gcd(f, h)) != 0) return false;
  }
  return true;
}

// Lexicographically first irreducible polynomial of each degree (smallest
// integer encoding), leading coefficient omitted.
inline constexpr std::array<std::uint64_t, kMaxBaseDegree> kDefaultModulusLow = {
    0x0ULL,  0x3ULL,  0x3ULL,  0x3ULL,  0x5ULL,  0x3ULL,  0x3ULL,  0x1bULL,
    0x3ULL,  0x9ULL,  0x5ULL,  0x9ULL,  0x1bULL, 0x21ULL, 0x3ULL,  0x2bULL,
    0x9ULL,  0x9ULL,  0x27ULL, 0x9ULL,  0x5ULL,  0x3ULL,  0x21ULL, 0x1bULL,
    0x9ULL,  0x1bULL, 0x27ULL, 0x3ULL,  0x5ULL,  0x3ULL,  0x9ULL,  0x8dULL,
    0x4bULL, 0x1bULL, 0x5ULL,  0x35ULL, 0x3fULL, 0x63ULL, 0x11ULL, 0x39ULL,
    0x9ULL,  0x27ULL, 0x59ULL, 0x21ULL, 0x1bULL, 0x3ULL,  0x21ULL, 0x2dULL,
    0x71ULL, 0x1dULL, 0x4bULL, 0x9ULL,  0x47ULL, 0x7dULL, 0x47ULL, 0x95ULL,
    0x11ULL, 0x63ULL, 0x7bULL, 0x3ULL,  0x27ULL, 0x69ULL, 0x3ULL,  0x1bULL,
};

}  // namespace detail

class BinaryField;
using FieldPtr = std::shared_ptr<const BinaryField>;

class BinaryField {
 public:
  // GF(2)[t]/(t^degree + modulus_low). Throws if the polynomial is reducible.
  static FieldPtr make(unsigned degree, std::uint64_t modulus_low) {
    if (degree == 0 || degree > kMaxBaseDegree) {
      throw std::invalid_argument("field degree must be in [1, 64], got " + std::to_string(degree));
    }
    if (degree < 64 && (modulus_low >> degree) != 0) {
      throw std::invalid_argument("modulus has terms above its degree");
    }
    if (!detail::is_irreducible(degree, modulus_low)) {
      throw std::invalid_argument("modulus is reducible over GF(2)");
    }
    return FieldPtr(new BinaryField(degree, modulus_low));
  }

  static FieldPtr make_default(unsigned degree) {
    if (degree == 0 || degree > kMaxBaseDegree) {
      throw std::invalid_argument("field degree must be in [1, 64], got " + std::to_string(degree));
    }
    return make(degree, detail::kDefaultModulusLow[degree - 1]);
  }

  // Full modulus in hex including the leading term, e.g. "13" for t^4+t+1.
  static FieldPtr from_modulus_hex(std::string_view hex) {
    const Bits b = Bits::from_hex(hex);
    const int top = b.top_bit();
    if (top < 1 || top > static_cast<int>(kMaxBaseDegree)) {
      throw std::invalid_argument("modulus degree must be in [1, 64]");
    }
    const auto n = static_cast<unsigned>(top);
    return make(n, n == 64 ? b.low_word() : b.slice(0, n).low_word());
  }

  static FieldPtr gf2() { return make_default(1); }

  unsigned degree() const { return degree_; }
  unsigned base_degree() const { return base_degree_; }
  unsigned tower_depth() const { return depth_; }
  const FieldPtr& parent() const { return parent_; }
  std::uint64_t modulus_low() const { return modulus_low_; }
  // Tower constant w of u^2 + u + w, as bits of the parent field.
  const Bits& tower_constant() const { return w_; }

  // Base modulus including the leading term.
  std::string modulus_hex() const {
    Bits b(modulus_low_);
    b = b ^ Bits(1).shifted(base_degree_);
    return b.to_hex();
  }

  // Tower constants from the bottom level up.
  std::vector<std::string> tower_hex() const {
    std::vector<std::string> out;
    for (const BinaryField* f = this; f->parent_; f = f->parent_.get()) out.push_back(f->w_.to_hex());
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::string describe() const {
    std::string s = "GF(2^" + std::to_string(degree_) + ")";
    if (depth_ > 0) s += " tower depth " + std::to_string(depth_) + " over GF(2^" + std::to_string(base_degree_) + ")";
    return s;
  }

  bool same_as(const BinaryField& o) const {
    if (this == &o) return true;
    if (degree_ != o.degree_ || base_degree_ != o.base_degree_ || modulus_low_ != o.modulus_low_) return false;
    if (depth_ == 0) return true;
    return w_ == o.w_ && parent_->same_as(*o.parent_);
  }

  // True when `sub` is this field or one of its tower ancestors.
  bool contains(const BinaryField& sub) const {
    for (const BinaryField* f = this; f != nullptr; f = f->parent_.get()) {
      if (f->same_as(sub)) return true;
    }
    return false;
  }

  std::uint64_t order_bits_mask() const { return degree_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << degree_) - 1; }

  // ---- raw arithmetic on reduced bit vectors ----

  Bits mul(const Bits& a, const Bits& b) const {
    if (depth_ == 0) return Bits(detail::mulmod(a.low_word(), b.low_word(), full_modulus(), base_degree_));
    const unsigned h = degree_ / 2;
    const BinaryField& p = *parent_;
    const Bits a0 = a.slice(0, h), a1 = a.slice(h, h), b0 = b.slice(0, h), b1 = b.slice(h, h);
    const Bits t0 = p.mul(a0, b0);
    const Bits t1 = p.mul(a1, b1);
    const Bits t2 = p.mul(a0 ^ a1, b0 ^ b1);
    const Bits c0 = t0 ^ p.mul(t1, w_);
    const Bits c1 = t2 ^ t0;
    return c0 ^ c1.shifted(h);
  }

  Bits square(const Bits& a) const {
    if (depth_ == 0) return mul(a, a);
    const unsigned h = degree_ / 2;
    const BinaryField& p = *parent_;
    const Bits s0 = p.square(a.slice(0, h));
    const Bits s1 = p.square(a.slice(h, h));
    return (s0 ^ p.mul(s1, w_)) ^ s1.shifted(h);
  }

  Bits pow(Bits a, std::uint64_t e) const {
    Bits r(1);
    while (e != 0) {
      if (e & 1U) r = mul(r, a);
      a = square(a);
      e >>= 1;
    }
    return r;
  }

  // a^(2^k)
  Bits frobenius(Bits a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a = square(a);
    return a;
  }

  Bits inv(const Bits& a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    if (depth_ == 0) {
      // a^(2^n - 2)
      const std::uint64_t e = base_degree_ == 64 ? ~std::uint64_t{0} - 1 : (std::uint64_t{1} << base_degree_) - 2;
      return pow(a, e);
    }
    // (a0 + a1 u)^-1 = (a0 + a1 + a1 u) / (a0^2 + a0 a1 + a1^2 w)
    const unsigned h = degree_ / 2;
    const BinaryField& p = *parent_;
    const Bits a0 = a.slice(0, h), a1 = a.slice(h, h);
    const Bits norm = p.mul(a0, a0 ^ a1) ^ p.mul(p.square(a1), w_);
    const Bits ninv = p.inv(norm);
    return p.mul(a0 ^ a1, ninv) ^ p.mul(a1, ninv).shifted(h);
  }

  // Absolute trace to GF(2); returns 0 or 1.
  Bits trace(const Bits& a) const {
    Bits acc, x = a;
    for (unsigned i = 0; i < degree_; ++i) {
      acc ^= x;
      x = square(x);
    }
    return acc;
  }

  Bits sqrt(const Bits& a) const { return frobenius(a, degree_ - 1); }

  // One solution of s^2 + s = e, found by GF(2)-linear elimination over the
  // coefficient basis. Solutions come in pairs {s, s+1}; the smaller is
  // returned.
  std::optional<Bits> solve_artin_schreier(const Bits& e) const {
    struct Row {
      Bits image;
      Bits combo;
      bool used = false;
    };
    std::vector<Row> basis(degree_);
    auto reduce = [&](Bits v, Bits combo) -> std::pair<Bits, Bits> {
      for (int top = v.top_bit(); top >= 0 && basis[static_cast<unsigned>(top)].used; top = v.top_bit()) {
        v ^= basis[static_cast<unsigned>(top)].image;
        combo ^= basis[static_cast<unsigned>(top)].combo;
      }
      return {v, combo};
    };
    for (unsigned i = 0; i < degree_; ++i) {
      Bits ei;
      ei.set(i);
      auto [v, combo] = reduce(square(ei) ^ ei, ei);
      if (!v.is_zero()) basis[static_cast<unsigned>(v.top_bit())] = Row{v, combo, true};
    }
    auto [rest, sol] = reduce(e, Bits{});
    if (!rest.is_zero()) return std::nullopt;
    Bits other = sol;
    other.flip(0);
    return std::min(sol, other);
  }

 private:
  friend FieldPtr quadratic_extension(const FieldPtr& base);

  BinaryField(unsigned degree, std::uint64_t low) : degree_(degree), base_degree_(degree), modulus_low_(low) {}
  BinaryField(FieldPtr parent, Bits w)
      : degree_(2 * parent->degree_),
        base_degree_(parent->base_degree_),
        depth_(parent->depth_ + 1),
        modulus_low_(parent->modulus_low_),
        parent_(std::move(parent)),
        w_(w) {}

  detail::u128 full_modulus() const { return (detail::u128{1} << base_degree_) | modulus_low_; }

  unsigned degree_;
  unsigned base_degree_;
  unsigned depth_ = 0;
  std::uint64_t modulus_low_;
  FieldPtr parent_;
  Bits w_;
};

// K[u]/(u^2 + u + w) where w is the smallest element (as an integer) of K
// with trace 1.
inline FieldPtr quadratic_extension(const FieldPtr& base) {
  if (2 * base->degree() > kMaxFieldBits) {
    throw std::length_error("quadratic extension exceeds " + std::to_string(kMaxFieldBits) + " bits");
  }
  // Trace is linear, so the smallest integer with trace 1 is the lowest basis
  // bit with trace 1.
  for (unsigned i = 0; i < base->degree(); ++i) {
    Bits w;
    w.set(i);
    if (base->trace(w).test(0)) return FieldPtr(new BinaryField(base, w));
  }
  throw std::logic_error("no trace-one element found in scan");
}

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, Bits bits) : field_(std::move(field)), bits_(bits) {
    if (!field_) throw std::invalid_argument("null field");
    if (bits_.top_bit() >= static_cast<int>(field_->degree())) {
      throw std::invalid_argument("bit vector not reduced for " + field_->describe());
    }
  }

  static FieldElement zero(const FieldPtr& f) { return {f, Bits{}}; }
  static FieldElement one(const FieldPtr& f) { return {f, Bits(1)}; }
  static FieldElement from_uint(const FieldPtr& f, std::uint64_t v) { return {f, Bits(v)}; }
  static FieldElement from_hex(const FieldPtr& f, std::string_view hex) { return {f, Bits::from_hex(hex)}; }

  static FieldElement random(const FieldPtr& f, std::mt19937_64& rng) {
    Bits b;
    for (std::size_t i = 0; i * 64 < f->degree(); ++i) b.set_limb(i, rng());
    b.truncate(f->degree());
    return {f, b};
  }
  static FieldElement random_nonzero(const FieldPtr& f, std::mt19937_64& rng) {
    for (;;) {
      FieldElement x = random(f, rng);
      if (!x.is_zero()) return x;
    }
  }

  const FieldPtr& field() const { return field_; }
  const Bits& bits() const { return bits_; }
  bool is_zero() const { return bits_.is_zero(); }
  bool is_one() const { return bits_ == Bits(1); }
  std::string to_hex() const { return bits_.to_hex(); }

  FieldElement& operator+=(const FieldElement& o) {
    check(o);
    bits_ ^= o.bits_;
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) { return *this += o; }
  FieldElement& operator*=(const FieldElement& o) {
    check(o);
    bits_ = field_->mul(bits_, o.bits_);
    return *this;
  }
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inv(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const { return *this; }

  FieldElement square() const { return {field_, field_->square(bits_)}; }
  FieldElement sqrt() const { return {field_, field_->sqrt(bits_)}; }
  FieldElement inv() const { return {field_, field_->inv(bits_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(bits_, e)}; }
  FieldElement frobenius(unsigned k) const { return {field_, field_->frobenius(bits_, k)}; }
  FieldElement trace() const { return {field_, field_->trace(bits_)}; }
  bool trace_bit() const { return field_->trace(bits_).test(0); }

  // Natural inclusion into a tower extension of this element's field.
  FieldElement embed_into(const FieldPtr& ext) const {
    if (!ext->contains(*field_)) throw FieldMismatch();
    return {ext, bits_};
  }

  // The same element viewed in a tower subfield, if it lies there.
  std::optional<FieldElement> restrict_to(const FieldPtr& sub) const {
    if (!field_->contains(*sub)) throw FieldMismatch();
    if (bits_.top_bit() >= static_cast<int>(sub->degree())) return std::nullopt;
    return FieldElement(sub, bits_);
  }

  // Equality requires the same field.
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.bits_ == b.bits_ && a.same_field(b);
  }
  // Total order on elements of one field: the integer value of the bits.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    a.check(b);
    return a.bits_ <=> b.bits_;
  }

  bool same_field(const FieldElement& o) const {
    return field_ == o.field_ || (field_ && o.field_ && field_->same_as(*o.field_));
  }

 private:
  void check(const FieldElement& o) const {
    if (!same_field(o)) throw FieldMismatch();
  }

  FieldPtr field_;
  Bits bits_;
};

inline FieldElement embed(const FieldPtr& ext, const FieldElement& a) { return a.embed_into(ext); }

// Solutions of s^2 + s = e in the field of e, smaller first.
inline std::vector<FieldElement> artin_schreier_solutions(const FieldElement& e) {
  const auto s = e.field()->solve_artin_schreier(e.bits());
  if (!s) return {};
  Bits other = *s;
  other.flip(0);
  return {FieldElement(e.field(), *s), FieldElement(e.field(), other)};
}

// All roots of t^2 + c t + d in the common field of c and d, in increasing
// order. With c = 0 the unique root is sqrt(d); otherwise t = c s reduces
// to s^2 + s = d / c^2, solvable iff Tr(d / c^2) = 0.
inline std::vector<FieldElement> artin_schreier_roots(const FieldElement& c, const FieldElement& d) {
  if (!c.same_field(d)) throw FieldMismatch();
  if (c.is_zero()) return {d.sqrt()};
  std::vector<FieldElement> roots;
  for (const auto& s : artin_schreier_solutions(d / c.square())) roots.push_back(c * s);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Every element of a field small enough to enumerate, in integer order.
inline std::vector<FieldElement> all_elements(const FieldPtr& f) {
  if (f->degree() > 20) throw std::length_error("field too large to enumerate");
  std::vector<FieldElement> out;
  out.reserve(std::size_t{1} << f->degree());
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << f->degree()); ++v) out.push_back(FieldElement::from_uint(f, v));
  return out;
}

}  // namespace frobdyn

#endif  // FROBDYN_GF2K_HPP
