// The 2-torsion index group G = (Z/2Z)^2 labelling theta coordinates.
#ifndef FROBDYN_GROUP_HPP
#define FROBDYN_GROUP_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frobdyn {

// g = (b1, b2) stored as the integer 2*b1 + b2, so "01" is 1 and "10" is 2.
class GroupElement {
 public:
  constexpr GroupElement() = default;
  constexpr explicit GroupElement(unsigned index) : index_(static_cast<std::uint8_t>(index)) {
    if (index > 3) throw std::out_of_range("group index must be in [0, 3]");
  }

  static GroupElement parse(std::string_view name) {
    if (name.size() != 2 || (name[0] != '0' && name[0] != '1') || (name[1] != '0' && name[1] != '1')) {
      throw std::invalid_argument("group element must be one of 00, 01, 10, 11");
    }
    return GroupElement(static_cast<unsigned>((name[0] - '0') * 2 + (name[1] - '0')));
  }

  constexpr unsigned index() const { return index_; }
  constexpr bool is_identity() const { return index_ == 0; }
  std::string name() const { return {static_cast<char>('0' + (index_ >> 1)), static_cast<char>('0' + (index_ & 1))}; }

  friend constexpr GroupElement operator+(GroupElement a, GroupElement b) {
    return GroupElement(static_cast<unsigned>(a.index_ ^ b.index_));
  }
  friend constexpr bool operator==(GroupElement, GroupElement) = default;
  friend constexpr auto operator<=>(GroupElement, GroupElement) = default;

 private:
  std::uint8_t index_ = 0;
};

inline constexpr GroupElement g00{0}, g01{1}, g10{2}, g11{3};
inline constexpr std::array<GroupElement, 4> kGroup = {g00, g01, g10, g11};

}  // namespace frobdyn

#endif  // FROBDYN_GROUP_HPP
