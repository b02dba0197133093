#pragma once

// Arithmetic in GF(2^t), t <= 31, polynomial basis packed little-endian in a
// 32-bit word: bit i is the coefficient of x^i.

#include <bit>
#include <cstdint>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "theta/conway.hpp"
#include "theta/factorize.hpp"

namespace theta {

using Word = std::uint32_t;

inline constexpr unsigned kDefaultMaxDegree = 24;
inline constexpr unsigned kHardMaxDegree = 31;

class field_mismatch : public std::logic_error {
 public:
  field_mismatch() : std::logic_error("operands belong to different fields") {}
};

namespace poly2 {

// Carry-less polynomial helpers over GF(2)[x] on 64-bit words.

inline int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

inline std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
  return a;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Operands must already be reduced mod m with deg(m) <= 31.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return mod(clmul(a, b), m); }

/// Rabin's test: f of degree t is irreducible iff x^(2^t) = x mod f and
/// gcd(x^(2^(t/p)) - x, f) = 1 for every prime p | t.
inline bool is_irreducible(std::uint64_t f) {
  const int t = degree(f);
  if (t < 1) return false;
  if (t == 1) return true;
  auto x_pow_2k = [&](unsigned k) {
    std::uint64_t y = mod(2, f);
    for (unsigned i = 0; i < k; ++i) y = mulmod(y, y, f);
    return y;
  };
  if (x_pow_2k(static_cast<unsigned>(t)) != mod(2, f)) return false;
  for (const auto& pp : factorize(static_cast<std::uint64_t>(t)).primes) {
    const std::uint64_t y = x_pow_2k(static_cast<unsigned>(t / pp.prime)) ^ mod(2, f);
    if (degree(gcd(f, y)) != 0) return false;
  }
  return true;
}

}  // namespace poly2

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

/// Value-type element bound to one FieldSpec. Holds a non-owning pointer:
/// the Field handle must outlive its elements.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldSpec* spec, Word bits) : spec_(spec), bits_(bits) {}

  const FieldSpec* spec() const { return spec_; }
  Word bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == 1; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.spec_ == b.spec_ && a.bits_ == b.bits_;
  }

 private:
  const FieldSpec* spec_ = nullptr;
  Word bits_ = 0;
};

class FieldSpec {
 public:
  struct Params {
    unsigned degree;
    std::uint64_t modulus;
    std::optional<Word> generator;
  };

  explicit FieldSpec(const Params& p) : t_(p.degree), modulus_(p.modulus) {
    r_ = static_cast<unsigned>(std::countr_zero(t_));
    s_ = t_ >> r_;
    mask_ = static_cast<Word>((std::uint64_t{1} << t_) - 1);
    fact_minus_ = factorize(group_order());
    fact_plus_ = factorize(size() + 1);
    trace_mask_ = 0;
    for (unsigned i = 0; i < t_; ++i) {
      const Word xi = reduce(std::uint64_t{1} << i);
      if (trace_by_conjugates(xi)) trace_mask_ |= Word{1} << i;
    }
    if (p.generator) {
      generator_ = *p.generator;
      if (generator_ == 0 || (generator_ & ~mask_) || order(generator_) != group_order())
        throw std::invalid_argument("supplied generator is not primitive");
    } else {
      generator_ = find_generator();
    }
  }

  unsigned degree() const { return t_; }
  /// t = 2^r * s with s odd.
  unsigned two_adic() const { return r_; }
  unsigned odd_part() const { return s_; }
  std::uint64_t modulus() const { return modulus_; }
  Word generator() const { return generator_; }
  std::uint64_t size() const { return std::uint64_t{1} << t_; }
  std::uint64_t group_order() const { return size() - 1; }
  const Factorization& fact_minus() const { return fact_minus_; }
  const Factorization& fact_plus() const { return fact_plus_; }
  bool contains(Word a) const { return (a & ~mask_) == 0; }

  // ---- raw kernels on packed words ----

  static Word add(Word a, Word b) { return a ^ b; }

  Word mul(Word a, Word b) const { return reduce(poly2::clmul(a, b)); }
  Word sqr(Word a) const { return mul(a, a); }

  /// Binary extended Euclid; a != 0.
  Word inv(Word a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    std::uint64_t u = a, v = modulus_, g1 = 1, g2 = 0;
    while (u != 1) {
      int j = poly2::degree(u) - poly2::degree(v);
      if (j < 0) {
        std::swap(u, v);
        std::swap(g1, g2);
        j = -j;
      }
      u ^= v << j;
      g1 ^= g2 << j;
    }
    return reduce(g1);
  }

  Word pow(Word a, std::uint64_t e) const {
    Word r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = sqr(a);
      e >>= 1;
    }
    return r;
  }

  /// a^(2^k)
  Word frobenius(Word a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a = sqr(a);
    return a;
  }

  /// Absolute trace via the precomputed linear functional.
  unsigned trace(Word a) const { return static_cast<unsigned>(std::popcount(a & trace_mask_) & 1); }

  /// Absolute trace as the sum of the t Frobenius conjugates.
  unsigned trace_by_conjugates(Word a) const {
    Word acc = 0, c = a;
    for (unsigned i = 0; i < t_; ++i) {
      acc ^= c;
      c = sqr(c);
    }
    if (acc > 1) throw std::logic_error("trace left GF(2)");
    return acc;
  }

  bool in_subfield(Word a, unsigned d) const { return t_ % d == 0 && frobenius(a, d) == a; }

  /// Tr_d(a) for a in the subfield GF(2^d). Calling it outside the subfield is a contract violation.
  unsigned subfield_trace(Word a, unsigned d) const {
    if (!in_subfield(a, d)) throw std::logic_error("subfield_trace: element not in GF(2^" + std::to_string(d) + ")");
    Word acc = 0, c = a;
    for (unsigned i = 0; i < d; ++i) {
      acc ^= c;
      c = sqr(c);
    }
    if (acc > 1) throw std::logic_error("subfield trace left GF(2)");
    return acc;
  }

  /// Exact multiplicative order by prime-by-prime reduction of 2^t - 1.
  std::uint64_t order(Word a) const {
    if (a == 0) throw std::domain_error("order of zero");
    std::uint64_t o = group_order();
    for (const auto& pp : fact_minus_.primes) {
      for (unsigned e = 0; e < pp.exponent; ++e) {
        if (pow(a, o / pp.prime) != 1) break;
        o /= pp.prime;
      }
    }
    return o;
  }

  /// Degree of the minimal polynomial over GF(2): least d | t with a^(2^d) = a.
  unsigned degree_of(Word a) const {
    for (unsigned d = 1; d <= t_; ++d)
      if (t_ % d == 0 && frobenius(a, d) == a) return d;
    throw std::logic_error("degree_of: no dividing degree found");
  }

  /// All elements whose order divides k, as successive powers of g^((2^t-1)/k).
  std::vector<Word> subgroup(std::uint64_t k) const {
    if (k == 0 || group_order() % k != 0) throw std::invalid_argument("subgroup order must divide 2^t - 1");
    const Word h = pow(generator_, group_order() / k);
    std::vector<Word> out;
    out.reserve(k);
    Word x = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
      out.push_back(x);
      x = mul(x, h);
    }
    return out;
  }

  // ---- checked element interface ----

  FieldElement element(Word bits) const {
    if (!contains(bits)) throw std::out_of_range("element has bits beyond degree " + std::to_string(t_));
    return {this, bits};
  }
  FieldElement zero() const { return {this, 0}; }
  FieldElement one() const { return {this, 1}; }
  FieldElement gen() const { return {this, generator_}; }

 private:
  Word reduce(std::uint64_t p) const {
    for (int d = poly2::degree(p); d >= static_cast<int>(t_); d = poly2::degree(p)) p ^= modulus_ << (d - t_);
    return static_cast<Word>(p);
  }

  Word find_generator() const {
    if (auto c = conway_polynomial(t_); c && *c == modulus_) {
      const Word x = reduce(2);
      if (order(x) != group_order()) throw std::logic_error("Conway polynomial root is not primitive");
      return x;
    }
    for (std::uint64_t c = 1; c < size(); ++c)
      if (order(static_cast<Word>(c)) == group_order()) return static_cast<Word>(c);
    throw std::logic_error("no primitive element found");
  }

  unsigned t_;
  unsigned r_ = 0;
  unsigned s_ = 1;
  std::uint64_t modulus_;
  Word mask_ = 0;
  Word generator_ = 0;
  Word trace_mask_ = 0;
  Factorization fact_minus_;
  Factorization fact_plus_;
};

/// Builds GF(2^t). Without a modulus: the Conway polynomial for t <= 16, else
/// the least irreducible polynomial of degree t (ordered by its bit encoding).
inline Field make_field(unsigned t, std::optional<std::uint64_t> modulus = std::nullopt,
                        unsigned max_degree = kDefaultMaxDegree) {
  if (t < 1 || t > max_degree || t > kHardMaxDegree)
    throw std::out_of_range("field degree " + std::to_string(t) + " outside 1.." +
                            std::to_string(std::min(max_degree, kHardMaxDegree)));
  std::uint64_t m = 0;
  if (modulus) {
    m = *modulus;
    if (poly2::degree(m) != static_cast<int>(t)) throw std::invalid_argument("modulus degree differs from t");
    if (!poly2::is_irreducible(m)) throw std::invalid_argument("modulus is reducible");
  } else if (auto c = conway_polynomial(t)) {
    m = *c;
  } else {
    for (std::uint64_t low = 1; low < (std::uint64_t{1} << t); low += 2) {
      if (poly2::is_irreducible((std::uint64_t{1} << t) | low)) {
        m = (std::uint64_t{1} << t) | low;
        break;
      }
    }
  }
  return std::make_shared<const FieldSpec>(FieldSpec::Params{t, m, std::nullopt});
}

// ---- free functions on checked elements ----

namespace detail {
inline const FieldSpec& same_field(const FieldElement& a, const FieldElement& b) {
  if (a.spec() == nullptr || a.spec() != b.spec()) throw field_mismatch();
  return *a.spec();
}
inline const FieldSpec& field_of(const FieldElement& a) {
  if (a.spec() == nullptr) throw std::logic_error("unbound field element");
  return *a.spec();
}
}  // namespace detail

inline FieldElement add(const FieldElement& a, const FieldElement& b) {
  const auto& f = detail::same_field(a, b);
  return {&f, FieldSpec::add(a.bits(), b.bits())};
}
inline FieldElement mul(const FieldElement& a, const FieldElement& b) {
  const auto& f = detail::same_field(a, b);
  return {&f, f.mul(a.bits(), b.bits())};
}
inline FieldElement inv(const FieldElement& a) {
  const auto& f = detail::field_of(a);
  return {&f, f.inv(a.bits())};
}
inline FieldElement pow(const FieldElement& a, std::uint64_t e) {
  const auto& f = detail::field_of(a);
  return {&f, f.pow(a.bits(), e)};
}
inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

inline unsigned trace(const FieldElement& a) { return detail::field_of(a).trace(a.bits()); }
inline std::uint64_t order(const FieldElement& a) { return detail::field_of(a).order(a.bits()); }
inline unsigned degree(const FieldElement& a) { return detail::field_of(a).degree_of(a.bits()); }

// ---- text record: "t=<int> modulus=<hex> generator=<hex>" ----

inline std::string to_hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

inline std::string to_record(const FieldSpec& f) {
  return "t=" + std::to_string(f.degree()) + " modulus=" + to_hex(f.modulus()) + " generator=" + to_hex(f.generator());
}

inline Field parse_record(const std::string& record, unsigned max_degree = kDefaultMaxDegree) {
  std::istringstream in(record);
  std::string tok;
  std::optional<unsigned> t;
  std::optional<std::uint64_t> modulus, generator;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed field record token: " + tok);
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    std::size_t used = 0;
    try {
      if (key == "t")
        t = static_cast<unsigned>(std::stoul(val, &used, 10));
      else if (key == "modulus")
        modulus = std::stoull(val, &used, 16);
      else if (key == "generator")
        generator = std::stoull(val, &used, 16);
      else
        throw std::invalid_argument("unknown field record key: " + key);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed field record value: " + tok);
    }
    if (used != val.size()) throw std::invalid_argument("malformed field record value: " + tok);
  }
  if (!t || !modulus || !generator) throw std::invalid_argument("field record needs t, modulus and generator");
  if (*t < 1 || *t > max_degree || *t > kHardMaxDegree) throw std::out_of_range("field record degree out of range");
  if (poly2::degree(*modulus) != static_cast<int>(*t) || !poly2::is_irreducible(*modulus))
    throw std::invalid_argument("field record modulus is not irreducible of degree t");
  return std::make_shared<const FieldSpec>(FieldSpec::Params{*t, *modulus, static_cast<Word>(*generator)});
}

/// Explicit embedding GF(2^d) -> GF(2^t) for d | t, sending x to the first root
/// of the small modulus found among successive powers of the subfield generator.
class Embedding {
 public:
  Embedding(Field small, Field big) : small_(std::move(small)), big_(std::move(big)) {
    const unsigned d = small_->degree(), t = big_->degree();
    if (t % d != 0) throw std::invalid_argument("embedding requires d | t");
    const Word h = big_->pow(big_->generator(), big_->group_order() / small_->group_order());
    Word c = 1;
    std::optional<Word> root;
    for (std::uint64_t j = 0; j < small_->group_order() && !root; ++j, c = big_->mul(c, h)) {
      Word acc = 0;
      for (int i = static_cast<int>(d); i >= 0; --i) {
        acc = big_->mul(acc, c);
        if ((small_->modulus() >> i) & 1) acc ^= 1;
      }
      if (acc == 0) root = c;
    }
    if (!root) throw std::logic_error("embedding: no root of the small modulus in the subfield");
    basis_.resize(d);
    Word p = 1;
    for (unsigned i = 0; i < d; ++i, p = big_->mul(p, *root)) basis_[i] = p;
    // Row-reduced copy of the basis images, each tagged with its source combination.
    for (unsigned i = 0; i < d; ++i) {
      Word v = basis_[i], comb = Word{1} << i;
      for (const auto& [row, rc] : echelon_) {
        if (v & std::bit_floor(row)) {
          v ^= row;
          comb ^= rc;
        }
      }
      if (v == 0) throw std::logic_error("embedding basis is dependent");
      echelon_.emplace_back(v, comb);
      // keep rows sorted by decreasing leading bit
      for (std::size_t k = echelon_.size() - 1; k > 0 && std::bit_floor(echelon_[k].first) > std::bit_floor(echelon_[k - 1].first); --k)
        std::swap(echelon_[k], echelon_[k - 1]);
    }
  }

  const Field& small() const { return small_; }
  const Field& big() const { return big_; }

  Word map(Word x) const {
    Word y = 0;
    for (unsigned i = 0; x; ++i, x >>= 1)
      if (x & 1) y ^= basis_[i];
    return y;
  }

  /// Inverse image, or nullopt when y lies outside the subfield.
  std::optional<Word> preimage(Word y) const {
    Word comb = 0;
    for (const auto& [row, rc] : echelon_) {
      if (y & std::bit_floor(row)) {
        y ^= row;
        comb ^= rc;
      }
    }
    if (y != 0) return std::nullopt;
    return comb;
  }

 private:
  Field small_, big_;
  std::vector<Word> basis_;
  std::vector<std::pair<Word, Word>> echelon_;
};

}  // namespace theta
