#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace theta {

/// Conway polynomials over GF(2) for degrees 1..16. Bit i is the coefficient of x^i.
inline constexpr std::array<std::uint64_t, 17> kConwayPolynomials = {
    0x0,                                        //
    0x3,     0x7,     0xb,     0x13,    0x25,   // x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1
    0x5b,    0x83,    0x11d,   0x211,   0x46f,  // x^6+x^4+x^3+x+1, ...
    0x805,   0x10eb,  0x201b,  0x40a9,  0x8035,  //
    0x1002d,                                    //
};

inline constexpr unsigned kMaxConwayDegree = 16;

inline std::optional<std::uint64_t> conway_polynomial(unsigned degree) {
  if (degree == 0 || degree > kMaxConwayDegree) return std::nullopt;
  return kConwayPolynomials[degree];
}

}  // namespace theta
