#pragma once

// Points of the projective line P^1(GF(2^t)) = GF(2^t) u {inf}, with the
// conventions 0^-1 = 0, inf^-1 = inf, |0| = |inf| = 1, Tr(0) = Tr(inf) = 0.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "theta/gf2.hpp"

namespace theta {

/// Dense vertex index: field elements map to their encoding, inf to 2^t.
using Vertex = std::uint32_t;

class ProjPoint {
 public:
  enum class Kind : std::uint8_t { Zero, Unit, Infinity };

  static ProjPoint zero() { return {Kind::Zero, 0}; }
  static ProjPoint infinity() { return {Kind::Infinity, 0}; }
  static ProjPoint unit(Word x) {
    if (x == 0) throw std::invalid_argument("ProjPoint::unit needs a nonzero element");
    return {Kind::Unit, x};
  }
  /// Field element as a point; 0 becomes Zero.
  static ProjPoint from_word(Word x) { return x == 0 ? zero() : ProjPoint{Kind::Unit, x}; }
  static ProjPoint from_vertex(Vertex v, unsigned t) {
    if (v == (Vertex{1} << t)) return infinity();
    return from_word(v);
  }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_unit() const { return kind_ == Kind::Unit; }
  /// Field value; 0 for Zero. Meaningless for infinity.
  Word value() const {
    if (kind_ == Kind::Infinity) throw std::logic_error("infinity has no field value");
    return value_;
  }
  Vertex vertex(unsigned t) const { return kind_ == Kind::Infinity ? (Vertex{1} << t) : value_; }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

  std::string to_string() const {
    switch (kind_) {
      case Kind::Zero: return "0";
      case Kind::Infinity: return "inf";
      default: return "0x" + to_hex(value_);
    }
  }

 private:
  ProjPoint(Kind k, Word v) : kind_(k), value_(v) {}
  Kind kind_;
  Word value_;
};

inline ProjPoint proj_inverse(const FieldSpec& f, const ProjPoint& p) {
  return p.is_unit() ? ProjPoint::unit(f.inv(p.value())) : p;
}

inline unsigned proj_trace(const FieldSpec& f, const ProjPoint& p) { return p.is_unit() ? f.trace(p.value()) : 0; }

inline std::uint64_t proj_order(const FieldSpec& f, const ProjPoint& p) { return p.is_unit() ? f.order(p.value()) : 1; }

/// theta(x) = x + x^-1, theta(0) = theta(inf) = inf.
inline ProjPoint theta(const FieldSpec& f, const ProjPoint& p) {
  if (!p.is_unit()) return ProjPoint::infinity();
  if (!f.contains(p.value())) throw field_mismatch();
  return ProjPoint::from_word(p.value() ^ f.inv(p.value()));
}

/// theta on dense vertex indices.
inline Vertex theta_vertex(const FieldSpec& f, Vertex v) {
  const Vertex inf = Vertex{1} << f.degree();
  if (v == 0 || v == inf) return inf;
  return v ^ f.inv(v);
}

}  // namespace theta
