#pragma once

#include <numeric>

#include "relcc/core.hpp"

namespace relcc {

// Exact ratio of two counts, stored reduced. A zero denominator before
// reduction yields the distinguished Undefined value, so quotients over empty
// denominators never silently become 0 or NaN. Defined values lie in [0, 1].
class Coefficient {
public:
  constexpr Coefficient() = default;

  static Coefficient undefined() { return {}; }

  // den == 0 yields Undefined. Otherwise requires num <= den.
  static Coefficient ratio(Count num, Count den) {
    if (den == 0) return {};
    if (num > den)
      throw InvalidParamsError("coefficient ratio " + std::to_string(num) + "/" +
                               std::to_string(den) + " exceeds 1");
    const Count g = std::gcd(num, den);
    Coefficient c;
    c.num_ = num / (g == 0 ? 1 : g);
    c.den_ = den / (g == 0 ? 1 : g);
    return c;
  }

  bool defined() const { return den_ != 0; }
  Count numerator() const { return num_; }
  Count denominator() const { return den_; }

  double value() const {
    if (!defined()) throw InvalidParamsError("undefined coefficient has no numeric value");
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

private:
  Count num_ = 0;
  Count den_ = 0;
};

namespace detail {

inline unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    const unsigned __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Adds add_num/add_den into the running sum num/den, keeping the sum exact.
// Throws OverflowError when the reduced sum no longer fits in 64 bits.
inline void add_fraction(Count& num, Count& den, Count add_num, Count add_den) {
  using u128 = unsigned __int128;
  const Count g = std::gcd(den, add_den);
  u128 wide_den = static_cast<u128>(den / g) * add_den;
  u128 wide_num =
      static_cast<u128>(num) * (add_den / g) + static_cast<u128>(add_num) * (den / g);
  const u128 reduce = gcd128(wide_num == 0 ? wide_den : wide_num, wide_den);
  if (reduce > 1) {
    wide_num /= reduce;
    wide_den /= reduce;
  }
  if (wide_den > std::numeric_limits<Count>::max() ||
      wide_num > std::numeric_limits<Count>::max())
    throw OverflowError("fraction accumulator overflow");
  num = static_cast<Count>(wide_num);
  den = static_cast<Count>(wide_den);
}

}  // namespace detail
}  // namespace relcc
