#pragma once

// Dickson polynomials D_m (first kind, parameter 1) over GF(q), q = 2^n, their
// root sets S_m / T_m, the Kloosterman sum K, and point counts of the Koblitz
// curve y^2 + xy = x^3 + 1, cross-checked against the leaves of G_q.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta/gf2.hpp"
#include "theta/parallel.hpp"
#include "theta/report.hpp"
#include "theta/theta_graph.hpp"

namespace theta {

/// D_0 = 0, D_1 = x, D_k = x D_{k-1} + D_{k-2} (characteristic 2).
inline Word dickson_eval(const FieldSpec& f, std::uint64_t m, Word x) {
  if (m == 0) throw std::invalid_argument("dickson_eval: degree must be positive");
  Word prev = 0, cur = x;
  for (std::uint64_t k = 1; k < m; ++k) {
    const Word next = f.mul(x, cur) ^ prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline FieldElement dickson_eval(std::uint64_t m, const FieldElement& x) {
  const auto& f = detail::field_of(x);
  return {&f, dickson_eval(f, m, x.bits())};
}

struct RootSets {
  std::vector<Word> S;  // D_m(a) = D_m(a^-1) = 0
  std::vector<Word> T;  // D_m(a) = 0, D_m(a^-1) != 0
  /// For m = q+1, I = {gamma + gamma^-1 : gamma in GF(q^2)**, |gamma| | q+1}.
  /// image_is_roots: I = S u T.  s_is_paired_image: S = {a in I : a^-1 in I}.
  std::optional<bool> image_is_roots, s_is_paired_image;
};

/// {gamma + gamma^-1 : gamma != 1, gamma^(q+1) = 1}, pulled back into f. Needs GF(q^2) within max_degree.
inline std::vector<Word> theta_image_of_norm_one(const Field& f, unsigned max_degree = kDefaultMaxDegree) {
  const Field big = make_field(2 * f->degree(), std::nullopt, std::max(max_degree, 2 * f->degree()));
  const Embedding emb(f, big);
  std::vector<Word> out;
  for (Word g : big->subgroup(f->size() + 1)) {
    if (g == 1) continue;
    const auto pre = emb.preimage(g ^ big->inv(g));
    if (!pre) throw std::logic_error("theta image of the norm-one subgroup left GF(q)");
    out.push_back(*pre);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline RootSets root_sets(const Field& f, std::uint64_t m, unsigned workers = 1,
                          unsigned max_degree = kDefaultMaxDegree) {
  const std::uint64_t q = f->size();
  if (m <= 1) throw std::invalid_argument("root_sets: m must exceed 1");
  if ((q + 1) % m != 0) throw std::invalid_argument("root_sets: m must divide q+1");
  std::vector<std::uint8_t> is_root(q, 0);
  parallel_for(workers, q - 1, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const Word x = static_cast<Word>(i + 1);
      is_root[x] = dickson_eval(*f, m, x) == 0;
    }
  });
  RootSets out;
  for (std::uint64_t x = 1; x < q; ++x) {
    if (!is_root[x]) continue;
    const Word w = static_cast<Word>(x);
    (is_root[f->inv(w)] ? out.S : out.T).push_back(w);
  }
  if (m == q + 1 && 2 * f->degree() <= std::min(max_degree, kHardMaxDegree)) {
    const auto img = theta_image_of_norm_one(f, max_degree);
    std::vector<Word> roots, paired;
    std::merge(out.S.begin(), out.S.end(), out.T.begin(), out.T.end(), std::back_inserter(roots));
    for (Word a : img)
      if (std::binary_search(img.begin(), img.end(), f->inv(a))) paired.push_back(a);
    out.image_is_roots = img == roots;
    out.s_is_paired_image = paired == out.S;
  }
  return out;
}

/// K = sum over x in GF(q)* of (-1)^Tr(x + x^-1), with |K| <= 2 sqrt(q) asserted.
inline std::int64_t kloosterman(const FieldSpec& f) {
  std::int64_t k = 0;
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    const Word w = static_cast<Word>(x);
    k += f.trace(w ^ f.inv(w)) ? -1 : 1;
  }
  if (static_cast<std::uint64_t>(k * k) > 4 * f.size()) throw std::logic_error("Kloosterman sum violates the Weil bound");
  return k;
}

struct NCount {
  std::int64_t N = 0;
  bool matches = false;
};

inline NCount count_N(const FieldSpec& f, std::int64_t K, std::size_t s_size) {
  const std::int64_t num = static_cast<std::int64_t>(f.size()) + 1 + K;
  if (num % 4 != 0) throw std::logic_error("q + 1 + K is not divisible by 4");
  return {num / 4, static_cast<std::size_t>(num / 4) == s_size};
}

inline NCount count_N(const Field& f, unsigned workers = 1) {
  const auto rs = root_sets(f, f->size() + 1, workers, 0);
  return count_N(*f, kloosterman(*f), rs.S.size());
}

/// |E(GF(q))| = 2 |{x != 0 : Tr(x) = Tr(x^-1)}| + 2 for y^2 + xy = x^3 + 1.
inline std::uint64_t curve_point_count(const FieldSpec& f) {
  std::uint64_t a = 0;
  for (std::uint64_t x = 1; x < f.size(); ++x) {
    const Word w = static_cast<Word>(x);
    if (f.trace(w) == f.trace(f.inv(w))) ++a;
  }
  const std::uint64_t e = 2 * a + 2;
  const std::int64_t dev = static_cast<std::int64_t>(e) - static_cast<std::int64_t>(f.size()) - 1;
  if (static_cast<std::uint64_t>(dev * dev) > 4 * f.size())
    throw std::logic_error("curve point count violates the Hasse bound");
  if ((e - 2) / 2 != a) throw std::logic_error("A-count identity failed");
  return e;
}

/// S_{q+1} equals the A-leaves of G_q; T_{q+1} equals the B-leaves (nonempty for n > 2, empty otherwise).
inline CheckReport leaf_set_equalities(const Field& f, const ThetaGraph& g, const RootSets& rs) {
  if (g.field().get() != f.get()) throw field_mismatch();
  std::vector<Word> la, lb;
  for (Vertex v : leaves(g)) (g.trace_class(v) == TraceClass::A ? la : lb).push_back(v);
  CheckReport rep;
  rep.add("leaf-a-equals-s", !la.empty() && la == rs.S,
          std::to_string(la.size()) + " A-leaves, |S| = " + std::to_string(rs.S.size()));
  if (f->degree() > 2)
    rep.add("leaf-b-equals-t", !lb.empty() && lb == rs.T,
            std::to_string(lb.size()) + " B-leaves, |T| = " + std::to_string(rs.T.size()));
  else
    rep.add("t-empty-small-q", rs.T.empty() && lb.empty(),
            "|T| = " + std::to_string(rs.T.size()) + ", B-leaves " + std::to_string(lb.size()));
  return rep;
}

inline CheckReport leaf_set_equalities(const Field& f, const ThetaGraph& g) {
  return leaf_set_equalities(f, g, root_sets(f, f->size() + 1, 1, 0));
}

struct RootSetReport {
  unsigned n = 0;
  std::uint64_t q = 0;
  std::uint64_t m = 0;
  std::vector<Word> S, T;
  std::int64_t K = 0;
  std::int64_t N_pred = 0;
  std::uint64_t E_count = 0;
  CheckReport checks;
};

struct DicksonOptions {
  unsigned workers = 1;
  std::uint64_t seed = 1;
  unsigned max_degree = kDefaultMaxDegree;
  unsigned identity_samples = 100;
};

/// Full Dickson/Kloosterman/curve run for GF(q), m = q+1.
inline RootSetReport dickson_report(const Field& f, const DicksonOptions& opt = {}) {
  const FieldSpec& fs = *f;
  RootSetReport rep;
  rep.n = fs.degree();
  rep.q = fs.size();
  rep.m = rep.q + 1;
  const auto rs = root_sets(f, rep.m, opt.workers, opt.max_degree);
  rep.S = rs.S;
  rep.T = rs.T;
  rep.K = kloosterman(fs);
  rep.checks.add("weil-bound", static_cast<std::uint64_t>(rep.K * rep.K) <= 4 * rep.q, "K = " + std::to_string(rep.K));
  const auto nc = count_N(fs, rep.K, rs.S.size());
  rep.N_pred = nc.N;
  rep.checks.add("n-formula", nc.matches,
                 "(q+1+K)/4 = " + std::to_string(nc.N) + ", |S| = " + std::to_string(rs.S.size()));
  rep.checks.add("n-positive", nc.N >= 1, std::to_string(nc.N));
  if (rs.image_is_roots) rep.checks.add("roots-theta-image", *rs.image_is_roots, "|S u T| = " + std::to_string(rs.S.size() + rs.T.size()));
  if (rs.s_is_paired_image) rep.checks.add("s-paired-theta-image", *rs.s_is_paired_image, {});

  auto in = [](const std::vector<Word>& v, Word x) { return std::binary_search(v.begin(), v.end(), x); };
  CheckTally s_inv("s-inverse-closed"), t_inv("t-inverse-excluded"), t_tr("t-trace-law");
  for (Word a : rs.S) s_inv.expect(in(rs.S, fs.inv(a)), [&] { return "0x" + to_hex(a); });
  for (Word a : rs.T) {
    t_inv.expect(!in(rs.T, fs.inv(a)), [&] { return "0x" + to_hex(a); });
    t_tr.expect(fs.trace(a) == 0 && fs.trace(fs.inv(a)) == 1, [&] { return "0x" + to_hex(a); });
  }
  rep.checks << s_inv << t_inv << t_tr;
  rep.checks.add("t-exception-cases", rep.q <= 4 ? rs.T.empty() : !rs.T.empty(),
                 "|T| = " + std::to_string(rs.T.size()));

  rep.E_count = curve_point_count(fs);
  const std::int64_t dev = static_cast<std::int64_t>(rep.E_count) - static_cast<std::int64_t>(rep.q) - 1;
  rep.checks.add("hasse-bound", rep.E_count >= 4 && static_cast<std::uint64_t>(dev * dev) <= 4 * rep.q,
                 "|E| = " + std::to_string(rep.E_count));

  const ThetaGraph g(f, opt.workers);
  rep.checks.merge(leaf_set_equalities(f, g, rs));

  // Functional identity and root characterisation, evaluated inside GF(q^2).
  if (2 * fs.degree() <= std::min(opt.max_degree, kHardMaxDegree)) {
    const Field big = make_field(2 * fs.degree(), std::nullopt, opt.max_degree);
    const FieldSpec& bf = *big;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, bf.group_order());
    std::uniform_int_distribution<std::uint64_t> deg(1, rep.q + 1);
    CheckTally ident("dickson-identity");
    auto identity_case = [&](Word g, std::uint64_t m) {
      const Word gi = bf.inv(g);
      ident.expect(dickson_eval(bf, m, g ^ gi) == (bf.pow(g, m) ^ bf.pow(gi, m)),
                   [&] { return "gamma=0x" + to_hex(g) + " m=" + std::to_string(m); });
    };
    if (rep.q <= 16) {
      for (std::uint64_t g = 1; g < bf.size(); ++g)
        for (std::uint64_t m = 1; m <= rep.q + 1; ++m) identity_case(static_cast<Word>(g), m);
    }
    for (unsigned k = 0; k < opt.identity_samples; ++k) identity_case(static_cast<Word>(pick(rng)), deg(rng));
    rep.checks << ident;

    if (rep.q <= 64) {
      const Embedding emb(f, big);
      std::vector<std::vector<Word>> lifts(rep.q);  // alpha -> gammas with gamma + gamma^-1 = alpha
      for (std::uint64_t g = 1; g < bf.size(); ++g) {
        const Word w = static_cast<Word>(g);
        if (auto pre = emb.preimage(w ^ bf.inv(w))) lifts[*pre].push_back(w);
      }
      CheckTally roots("dickson-root-characterization");
      for (std::uint64_t m = 1; m <= rep.q + 1; ++m) {
        for (std::uint64_t a = 0; a < rep.q; ++a) {
          const bool root = dickson_eval(fs, m, static_cast<Word>(a)) == 0;
          bool lifted = false;
          for (Word g : lifts[a]) lifted = lifted || bf.pow(g, m) == 1;
          roots.expect(root == lifted, [&] { return "alpha=0x" + to_hex(a) + " m=" + std::to_string(m); });
        }
      }
      rep.checks << roots;
    }
  }
  return rep;
}

}  // namespace theta
