#pragma once

// Integer factorization for group-order reasoning: trial division up to 10^6,
// then Miller-Rabin + Pollard rho (Brent) for the remaining cofactor.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace theta {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Complete prime factorization of `value`. `primes` is strictly increasing.
struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> primes;

  /// Product of the prime powers, computed in 128-bit to detect overflow.
  std::uint64_t product() const {
    unsigned __int128 acc = 1;
    for (const auto& pp : primes)
      for (unsigned e = 0; e < pp.exponent; ++e) acc *= pp.prime;
    if (acc > UINT64_MAX) throw std::overflow_error("factorization product overflows 64 bits");
    return static_cast<std::uint64_t>(acc);
  }

  std::uint64_t least_prime() const { return primes.empty() ? 0 : primes.front().prime; }

  /// All positive divisors in increasing order.
  std::vector<std::uint64_t> divisors() const {
    std::vector<std::uint64_t> out{1};
    for (const auto& pp : primes) {
      const std::size_t base = out.size();
      std::uint64_t pk = 1;
      for (unsigned e = 1; e <= pp.exponent; ++e) {
        pk *= pp.prime;
        for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string() const {
    if (primes.empty()) return "1";
    std::string s;
    for (const auto& pp : primes) {
      if (!s.empty()) s += " * ";
      s += std::to_string(pp.prime);
      if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
    }
    return s;
  }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit inputs with this witness set.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant; n is odd, composite, and free of factors below the trial bound.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBlock = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBlock;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_cofactor(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  split_cofactor(d, out);
  split_cofactor(n / d, out);
}

}  // namespace detail

inline constexpr std::uint64_t kTrialDivisionBound = 1000000;

inline Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.value = n;
  std::vector<std::uint64_t> found;
  for (std::uint64_t p = 2; p <= kTrialDivisionBound && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      found.push_back(p);
      n /= p;
    }
  }
  if (n > 1) detail::split_cofactor(n, found);
  std::sort(found.begin(), found.end());
  for (auto p : found) {
    if (!f.primes.empty() && f.primes.back().prime == p)
      ++f.primes.back().exponent;
    else
      f.primes.push_back({p, 1});
  }
  return f;
}

}  // namespace theta
