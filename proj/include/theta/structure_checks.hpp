#pragma once

// Exhaustive checks of the arithmetic facts the graph structure rests on, and
// of the statements linking G_q to the order-(q+1) subgroup of GF(q^2).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "theta/gf2.hpp"
#include "theta/report.hpp"
#include "theta/theta_graph.hpp"

namespace theta {

inline constexpr unsigned kExhaustiveFieldFacts = 16;

inline CheckReport verify_field_facts(const FieldSpec& f, std::uint64_t seed = 1, unsigned random_pairs = 1000) {
  CheckReport rep;
  const unsigned t = f.degree();
  const std::uint64_t qm = f.group_order(), qp = f.size() + 1;

  bool coprime = f.fact_minus().product() == qm && f.fact_plus().product() == qp;
  for (const auto& a : f.fact_minus().primes)
    for (const auto& b : f.fact_plus().primes) coprime = coprime && a.prime != b.prime;
  if (2 * t < 64) coprime = coprime && std::gcd(qp, (std::uint64_t{1} << (2 * t)) + 1) == 1;
  rep.add("coprime-group-orders", coprime, "2^t-1 = " + f.fact_minus().to_string() + ", 2^t+1 = " + f.fact_plus().to_string());

  CheckTally congruence("fermat-divisor-congruence");
  const std::uint64_t mod = std::uint64_t{1} << (f.two_adic() + 1);
  for (auto d : f.fact_plus().divisors())
    congruence.expect(d % mod == 1, [&] { return "divisor " + std::to_string(d); });
  rep << congruence;

  if (t <= kExhaustiveFieldFacts) {
    CheckTally excl("order-excludes-plus-divisors");
    CheckTally dich("degree-dichotomy");
    for (std::uint64_t x = 1; x < f.size(); ++x) {
      const Word w = static_cast<Word>(x);
      if (w != 1) excl.expect(qp % f.order(w) != 0, [&] { return "0x" + to_hex(w); });
      if (f.degree_of(w) == t) {
        const unsigned db = f.degree_of(w ^ f.inv(w));
        dich.expect(db == t || (t % 2 == 0 && db == t / 2), [&] { return "0x" + to_hex(w) + " -> degree " + std::to_string(db); });
      }
    }
    rep << excl << dich;
  }

  CheckTally prod("coprime-order-product");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, qm - 1);
  for (unsigned k = 0; k < random_pairs; ++k) {
    const Word a = f.pow(f.generator(), pick(rng)), b = f.pow(f.generator(), pick(rng));
    const std::uint64_t oa = f.order(a), ob = f.order(b);
    if (std::gcd(oa, ob) != 1) continue;
    prod.expect(f.order(f.mul(a, b)) == oa * ob, [&] { return "0x" + to_hex(a) + " * 0x" + to_hex(b); });
  }
  rep << prod;
  return rep;
}

/// Omega / Omega-bar, lifts of leaves into GF(q^2), and iterate degrees of A-leaves.
/// Statements needing GF(2^{2t}) are skipped when 2t exceeds max_degree.
inline CheckReport verify_graph_extras(const ThetaGraph& g, unsigned max_degree = kDefaultMaxDegree) {
  const FieldSpec& f = g.spec();
  const unsigned t = f.degree();
  const std::uint64_t half = f.size() / 2;
  CheckReport rep;
  const auto om = omega_sets(f);
  rep.add("omega-counts", om.omega.size() == half - 1 && om.omega_bar.size() == half,
          std::to_string(om.omega.size()) + " / " + std::to_string(om.omega_bar.size()));

  {
    std::vector<Word> img;
    Word a = f.generator();
    for (std::uint64_t i = 1; i + 1 <= half; ++i) {
      const Word x = f.pow(a, i);
      img.push_back(x ^ f.inv(x));
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    rep.add("omega-primitive-image", img == om.omega, std::to_string(img.size()) + " images");
  }

  if (2 * t <= std::min(max_degree, kHardMaxDegree)) {
    const Field big = make_field(2 * t, std::nullopt, max_degree);
    const FieldSpec& bf = *big;
    const Embedding emb(g.field(), big);
    const auto norm_one = bf.subgroup(f.size() + 1);
    const Word beta = norm_one.size() > 1 ? norm_one[1] : 1;  // canonical generator of C_{2^t+1}

    std::vector<Word> first_half, all_img;
    CheckTally sums("beta-power-sums");
    Word bk = 1;
    for (std::uint64_t k = 1; k <= f.size(); ++k) {
      bk = bf.mul(bk, beta);
      const auto pre = emb.preimage(bk ^ bf.inv(bk));
      sums.expect(pre && *pre != 0, [&] { return "k=" + std::to_string(k); });
      if (pre && k <= half) first_half.push_back(*pre);
    }
    rep << sums;
    for (Word gm : norm_one) {
      if (gm == 1) continue;
      if (auto pre = emb.preimage(gm ^ bf.inv(gm))) all_img.push_back(*pre);
    }
    for (auto* v : {&first_half, &all_img}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    rep.add("omega-bar-beta-image", first_half == om.omega_bar, std::to_string(first_half.size()) + " images");
    rep.add("omega-bar-theta-image", all_img == om.omega_bar, std::to_string(all_img.size()) + " images");

    CheckTally lifts("a-leaf-lift-traces");
    for (std::uint64_t x = 1; x < bf.size(); ++x) {
      const Word gm = static_cast<Word>(x);
      const Word gi = bf.inv(gm);
      const auto pre = emb.preimage(gm ^ gi);
      if (!pre || *pre == 0) continue;
      const Vertex v = *pre;
      if (g.in_degree(v) != 0 || g.trace_class(v) != TraceClass::A) continue;
      lifts.expect(bf.trace(gm) == 1 && bf.trace(gi) == 1, [&] { return "gamma=0x" + to_hex(gm); });
    }
    rep << lifts;
  }

  if (t % 2 == 0) {
    const unsigned r = f.two_adic(), th = t / 2;
    CheckTally iter("a-leaf-iterate-degrees");
    for (Vertex v : leaves(g)) {
      if (g.trace_class(v) != TraceClass::A) continue;
      const unsigned d = f.degree_of(v);
      const Vertex w = g.succ(v);
      if (w == 0 || w == g.infinity() || f.degree_of(w) != d) continue;
      // orbit until it closes
      std::vector<Vertex> orbit{v};
      for (Vertex x = w; std::find(orbit.begin(), orbit.end(), x) == orbit.end(); x = g.succ(x)) orbit.push_back(x);
      bool all_same = true;
      for (Vertex x : orbit) all_same = all_same && x != 0 && x != g.infinity() && f.degree_of(x) == d;
      bool drops = true;
      for (std::size_t i = 1; i < orbit.size(); ++i) {
        const Vertex x = orbit[i];
        if (i <= r) {
          drops = drops && x != 0 && x != g.infinity() && f.degree_of(x) == d;
        } else {
          drops = drops && x != 0 && x != g.infinity() && f.in_subfield(x, th) &&
                  f.subfield_trace(x, th) != f.subfield_trace(f.inv(x), th);
        }
      }
      iter.expect(all_same || drops, [&] { return vertex_name(g, v); });
    }
    rep << iter;
  }
  return rep;
}

}  // namespace theta
