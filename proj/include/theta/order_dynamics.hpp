#pragma once

// Orders and traces of theta-iterates of gamma in C_{q^2+1} \ {1} inside
// GF(q^4), q = 2^n, n = 2^l * m. All arithmetic happens in one ambient field
// GF(2^{4n}); subfields are recognised by the Frobenius fixed-point test.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta/gf2.hpp"
#include "theta/parallel.hpp"
#include "theta/proj_point.hpp"
#include "theta/report.hpp"
#include "theta/theta_graph.hpp"

namespace theta {

struct TowerSpec {
  unsigned n = 0;
  unsigned l = 0;
  unsigned m = 0;
  std::uint64_t q = 0;
  Field ambient;  // GF(2^{4n})
  Field base;     // GF(2^n), own basis
  Field middle;   // GF(2^{2n}), own basis
  std::shared_ptr<const Embedding> base_in_ambient;
  std::shared_ptr<const Embedding> middle_in_ambient;

  std::uint64_t q_plus() const { return q + 1; }
  std::uint64_t q_minus() const { return q - 1; }
  std::uint64_t h_order() const { return q * q + 1; }
  /// Number of recorded iterates: indices 0..l+4.
  unsigned steps() const { return l + 5; }
};

inline TowerSpec make_tower(unsigned n, unsigned max_degree = kDefaultMaxDegree) {
  if (n < 1 || 4 * n > std::min(max_degree, kHardMaxDegree))
    throw std::out_of_range("tower degree n=" + std::to_string(n) + " outside 1.." +
                            std::to_string(std::min(max_degree, kHardMaxDegree) / 4));
  TowerSpec tw;
  tw.n = n;
  tw.l = static_cast<unsigned>(std::countr_zero(n));
  tw.m = n >> tw.l;
  tw.q = std::uint64_t{1} << n;
  tw.ambient = make_field(4 * n, std::nullopt, max_degree);
  tw.base = make_field(n, std::nullopt, max_degree);
  tw.middle = make_field(2 * n, std::nullopt, max_degree);
  tw.base_in_ambient = std::make_shared<const Embedding>(tw.base, tw.ambient);
  tw.middle_in_ambient = std::make_shared<const Embedding>(tw.middle, tw.ambient);
  return tw;
}

/// Elements of order dividing k in GF(q^4)*, as consecutive powers of the canonical generator of C_k.
inline std::vector<Word> subgroup(const TowerSpec& tw, std::uint64_t k) { return tw.ambient->subgroup(k); }

enum class HClass : std::uint8_t { H1 = 1, H2 = 2, H3 = 3 };

inline const char* to_string(HClass h) {
  switch (h) {
    case HClass::H1: return "H1";
    case HClass::H2: return "H2";
    default: return "H3";
  }
}

struct StepRecord {
  ProjPoint point = ProjPoint::zero();
  std::uint64_t order = 1;
  std::uint64_t d_part = 1;  // gcd(order, q+1)
  std::uint64_t e_part = 1;  // gcd(order, q-1)
  unsigned field_degree = 0;  // least of n, 2n, 4n whose field contains the point
  unsigned tr = 0;
  unsigned tr_inv = 0;
};

struct OrderProfile {
  Word gamma = 0;
  std::uint64_t exponent = 0;  // gamma = h^exponent, h the canonical generator of C_{q^2+1}; 0 if unknown
  std::vector<StepRecord> steps;
  HClass h_class = HClass::H1;
  int case_id = 1;
};

/// Trace of x over GF(2^d); replaceable for fault-injection runs.
using TraceRule = std::function<unsigned(const FieldSpec&, Word, unsigned)>;

inline TraceRule standard_trace_rule() {
  return [](const FieldSpec& f, Word x, unsigned d) { return f.subfield_trace(x, d); };
}

namespace detail {
inline bool divides(std::uint64_t a, std::uint64_t b) { return a != 0 && b % a == 0; }
}  // namespace detail

inline OrderProfile classify_H(const TowerSpec& tw, Word gamma, const TraceRule& rule = standard_trace_rule()) {
  const FieldSpec& f = *tw.ambient;
  if (gamma == 1) throw std::invalid_argument("classify_H: gamma = 1 is not in H");
  if (gamma == 0 || !f.contains(gamma) || f.pow(gamma, tw.h_order()) != 1)
    throw std::invalid_argument("classify_H: gamma is not in C_{q^2+1}");
  OrderProfile prof;
  prof.gamma = gamma;
  ProjPoint p = ProjPoint::unit(gamma);
  for (unsigned i = 0; i < tw.steps(); ++i) {
    StepRecord st;
    st.point = p;
    st.order = proj_order(f, p);
    st.d_part = std::gcd(st.order, tw.q_plus());
    st.e_part = std::gcd(st.order, tw.q_minus());
    if (p.is_unit()) {
      const Word x = p.value();
      st.field_degree = f.in_subfield(x, tw.n) ? tw.n : f.in_subfield(x, 2 * tw.n) ? 2 * tw.n : 4 * tw.n;
      st.tr = rule(f, x, st.field_degree);
      st.tr_inv = rule(f, f.inv(x), st.field_degree);
    } else {
      st.field_degree = tw.n;
    }
    prof.steps.push_back(st);
    p = theta(f, p);
  }
  if (detail::divides(prof.steps[1].order, tw.q_plus()))
    prof.h_class = HClass::H1;
  else if (detail::divides(prof.steps[tw.l + 2].order, tw.q_plus()))
    prof.h_class = HClass::H2;
  else
    prof.h_class = HClass::H3;
  prof.case_id = static_cast<int>(prof.h_class);
  return prof;
}

/// Profiles for every gamma in H, ordered by exponent of the canonical generator.
inline std::vector<OrderProfile> all_profiles(const TowerSpec& tw, unsigned workers = 1,
                                              const TraceRule& rule = standard_trace_rule()) {
  const auto group = subgroup(tw, tw.h_order());
  std::vector<OrderProfile> out(group.size() - 1);
  parallel_for(workers, out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      out[i] = classify_H(tw, group[i + 1], rule);
      out[i].exponent = i + 1;
    }
  });
  return out;
}

// ---- long-form characterisations ----

namespace detail {

inline bool split_parts(const StepRecord& s) {
  return s.d_part > 1 && s.e_part > 1 && s.d_part * s.e_part == s.order;
}

inline bool long_form_h1(const TowerSpec& tw, const OrderProfile& p) {
  if (!divides(p.steps[1].order, tw.q_plus())) return false;
  for (unsigned i = 2; i < tw.steps(); ++i)
    if (!divides(p.steps[i].order, tw.q_minus())) return false;
  return true;
}

inline bool long_form_h2(const TowerSpec& tw, const OrderProfile& p) {
  for (unsigned i = 1; i <= tw.l + 1; ++i)
    if (!split_parts(p.steps[i])) return false;
  if (!divides(p.steps[tw.l + 2].order, tw.q_plus())) return false;
  for (unsigned i = tw.l + 3; i < tw.steps(); ++i)
    if (!divides(p.steps[i].order, tw.q_minus())) return false;
  return true;
}

inline bool long_form_h3(const TowerSpec& tw, const OrderProfile& p) {
  for (unsigned i = 1; i < tw.steps(); ++i)
    if (!split_parts(p.steps[i])) return false;
  return true;
}

inline std::string gamma_name(const OrderProfile& p) {
  return "gamma=0x" + to_hex(p.gamma) + (p.exponent ? " (h^" + std::to_string(p.exponent) + ")" : "");
}

}  // namespace detail

/// Exactly one long-form class predicate holds, and it is the assigned class.
inline Check characterization_check(const TowerSpec& tw, const OrderProfile& p) {
  const std::array<bool, 3> holds = {detail::long_form_h1(tw, p), detail::long_form_h2(tw, p),
                                     detail::long_form_h3(tw, p)};
  const int count = holds[0] + holds[1] + holds[2];
  const bool ok = count == 1 && holds[static_cast<int>(p.h_class) - 1];
  std::string msg;
  if (!ok) {
    msg = detail::gamma_name(p) + " assigned " + to_string(p.h_class) + ", long forms hold: ";
    for (int k = 0; k < 3; ++k)
      if (holds[k]) msg += "H" + std::to_string(k + 1) + " ";
  }
  return {"h-partition", ok, msg};
}

/// (gcd(o, q+1), gcd(o, q-1)) multiplies back to o whenever o | q^2 - 1.
inline Check decomposition_check(const TowerSpec& tw, const OrderProfile& p) {
  const std::uint64_t q2m1 = tw.q_plus() * tw.q_minus();
  for (unsigned i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    if (detail::divides(s.order, q2m1) && s.d_part * s.e_part != s.order)
      return {"order-split", false, detail::gamma_name(p) + " step " + std::to_string(i)};
  }
  return {"order-split", true, {}};
}

/// Iterates past index l+4 until the orbit closes; the class's tail law must hold on all of them.
inline Check orbit_tail_check(const TowerSpec& tw, const OrderProfile& p) {
  const FieldSpec& f = *tw.ambient;
  std::vector<Vertex> seen;
  ProjPoint x = p.steps.back().point;
  const unsigned t = f.degree();
  for (std::size_t i = tw.steps() - 1;; ++i) {
    const Vertex v = x.vertex(t);
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) break;
    seen.push_back(v);
    const std::uint64_t o = proj_order(f, x);
    bool ok = true;
    switch (p.h_class) {
      case HClass::H1:
        ok = detail::divides(o, tw.q_minus());
        break;
      case HClass::H2:
        ok = detail::divides(o, tw.q_minus()) && x.is_unit() && f.subfield_trace(x.value(), tw.n) == 1 &&
             f.subfield_trace(f.inv(x.value()), tw.n) == 0;
        break;
      case HClass::H3: {
        const std::uint64_t d = std::gcd(o, tw.q_plus()), e = std::gcd(o, tw.q_minus());
        ok = d > 1 && e > 1 && d * e == o;
        break;
      }
    }
    if (!ok) return {"orbit-tail", false, detail::gamma_name(p) + " iterate " + std::to_string(i) + " = " + x.to_string()};
    x = theta(f, x);
  }
  return {"orbit-tail", true, {}};
}

// ---- trace patterns ----

struct TraceExpectation {
  unsigned field_degree;
  unsigned tr;
  unsigned tr_inv;
};

/// Expected (field, Tr, Tr of inverse) per iterate index for the profile's case.
inline std::vector<TraceExpectation> expected_trace_rows(const TowerSpec& tw, int case_id) {
  const unsigned n = tw.n, l = tw.l;
  std::vector<TraceExpectation> rows(tw.steps());
  rows[0] = {4 * n, 1, 1};
  rows[1] = {2 * n, 1, 1};
  switch (case_id) {
    case 1:
      rows[2] = {n, 1, 1};
      for (unsigned i = 3; i <= l + 4; ++i) rows[i] = {n, 0, 0};
      break;
    case 2:
      for (unsigned i = 2; i <= l + 2; ++i) rows[i] = {2 * n, 0, 0};
      rows[l + 3] = {n, 0, 1};
      rows[l + 4] = {n, 1, 0};
      break;
    default:
      for (unsigned i = 2; i <= l + 4; ++i) rows[i] = {2 * n, 0, 0};
      break;
  }
  return rows;
}

/// Per-class trace laws (H1: iterate 2 has traces 1,1, later ones 0,0;
/// H2: iterate l+3 has 0,1 and iterate l+4 has 1,0) plus the full case-table rows.
inline CheckReport trace_profile_check(const TowerSpec& tw, const OrderProfile& p) {
  CheckReport rep;
  const unsigned n = tw.n, l = tw.l;
  auto at = [&](unsigned i, unsigned deg, unsigned tr, unsigned tri) {
    const auto& s = p.steps[i];
    return s.field_degree == deg && s.tr == tr && s.tr_inv == tri;
  };
  bool cor = true;
  std::string where;
  if (p.h_class == HClass::H1) {
    cor = at(2, n, 1, 1);
    if (!cor) where = "iterate 2";
    for (unsigned i = 3; cor && i <= l + 4; ++i)
      if (!at(i, n, 0, 0)) cor = false, where = "iterate " + std::to_string(i);
  } else if (p.h_class == HClass::H2) {
    cor = at(l + 3, n, 0, 1) && at(l + 4, n, 1, 0);
    if (!cor) where = "iterates l+3, l+4";
  }
  rep.add("class-traces", cor, cor ? "" : detail::gamma_name(p) + " at " + where);

  const auto rows = expected_trace_rows(tw, p.case_id);
  bool table = true;
  for (unsigned i = 0; table && i < rows.size(); ++i) {
    if (!at(i, rows[i].field_degree, rows[i].tr, rows[i].tr_inv)) {
      table = false;
      where = "iterate " + std::to_string(i) + " (level " + std::to_string(l + 4 - i) + ")";
    }
  }
  rep.add("table-traces", table, table ? "" : detail::gamma_name(p) + " case " + std::to_string(p.case_id) + " at " + where);
  return rep;
}

/// Level/order/trace table in the three-case layout; levels run from l+4 down to 0.
inline std::string case_table(const TowerSpec& tw, const OrderProfile& p) {
  const std::uint64_t qp = tw.q_plus(), qm = tw.q_minus();
  const unsigned l = tw.l;
  std::ostringstream os;
  switch (p.case_id) {
    case 1: os << "Case 1: d_1 | (q+1)"; break;
    case 2: os << "Case 2: d_1 !| (q+1), d_{l+2} | (q+1)"; break;
    default: os << "Case 3: d_1 !| (q+1), d_{l+2} !| (q+1)"; break;
  }
  os << "   [n=" << tw.n << " l=" << l << " q=" << tw.q << " gamma=0x" << to_hex(p.gamma) << "]\n";

  auto relation = [&](unsigned i) -> std::string {
    const auto o = p.steps[i].order;
    const std::string d = i == 0 ? "d" : "d_" + std::to_string(i);
    if (i == 0) return d + " = " + std::to_string(o) + " | (q^2+1)";
    std::string rel = d + " = " + std::to_string(o);
    if (detail::divides(o, qp)) return rel + " | (q+1)";
    if (detail::divides(o, qm)) return rel + " | (q-1)";
    if (detail::divides(o, qp * qm)) return rel + " | (q^2-1), " + d + " !| (q +- 1)";
    return rel;
  };
  auto trace_cell = [&](unsigned i) {
    const auto& s = p.steps[i];
    const std::string deg = s.field_degree == tw.n ? "n" : s.field_degree == 2 * tw.n ? "2n" : "4n";
    const std::string g = i == 0 ? "gamma" : "gamma_" + std::to_string(i);
    std::string cell = "Tr_" + deg + "(" + g + ") = " + std::to_string(s.tr) + ", Tr_" + deg + "(" + g + "^-1) = " +
                       std::to_string(s.tr_inv);
    if (!s.point.is_unit()) cell += "  [" + g + " = " + s.point.to_string() + "]";
    return cell;
  };

  std::vector<std::array<std::string, 3>> rows;
  rows.push_back({"Level", "Order", "Trace"});
  for (unsigned i = 0; i < tw.steps(); ++i) rows.push_back({std::to_string(l + 4 - i), relation(i), trace_cell(i)});
  std::array<std::size_t, 3> w{};
  for (const auto& r : rows)
    for (int c = 0; c < 3; ++c) w[c] = std::max(w[c], r[c].size());
  auto rule = [&] {
    os << '+';
    for (int c = 0; c < 3; ++c) os << std::string(w[c] + 2, '-') << '+';
    os << '\n';
  };
  rule();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    os << '|';
    for (int c = 0; c < 3; ++c) os << ' ' << std::left << std::setw(static_cast<int>(w[c])) << rows[k][c] << " |";
    os << '\n';
    if (k == 0) rule();
  }
  rule();
  return os.str();
}

// ---- Case 1 sub-cases (l >= 1) ----

struct SubcaseReport {
  int subcase = 0;
  CheckReport checks;
};

inline SubcaseReport case1_subcase(const TowerSpec& tw, const OrderProfile& p) {
  if (tw.l == 0) throw std::invalid_argument("case1_subcase needs l >= 1");
  if (p.case_id != 1) throw std::invalid_argument("case1_subcase needs a Case 1 profile");
  const std::uint64_t qt = std::uint64_t{1} << (tw.n / 2);
  const std::uint64_t qtp = qt + 1, qtm = qt - 1;
  auto ord = [&](unsigned i) { return p.steps[i].order; };
  SubcaseReport out;
  const auto who = detail::gamma_name(p);
  if (!detail::divides(ord(2), qtp)) {
    out.subcase = 1;
    bool ok = true;
    for (unsigned i = 2; i <= tw.l + 1; ++i)
      if (detail::divides(ord(i), qtp) || detail::divides(ord(i), qtm)) ok = false;
    out.checks.add("subcase1-orders", ok, ok ? "" : who);
    // shifted parameters: gamma_1 lies in C_{q~^2+1} \ {1} and lands in Case 2 or 3
    const bool reseed = ord(1) > 1 && detail::divides(ord(1), qt * qt + 1) && !detail::divides(ord(2), qtp);
    out.checks.add("subcase1-reseed", reseed, reseed ? "" : who);
  } else {
    out.subcase = 2;
    bool ok = true;
    for (unsigned i = 3; i < tw.steps(); ++i)
      if (!detail::divides(ord(i), qtm)) ok = false;
    out.checks.add("subcase2-orders", ok, ok ? "" : who);
    const bool reseed = ord(1) > 1 && detail::divides(ord(1), qt * qt + 1) && detail::divides(ord(2), qtp);
    out.checks.add("subcase2-reseed", reseed, reseed ? "" : who);
  }
  return out;
}

// ---- order lower bound for Cases 2/3 ----

inline Check check_order_bound(const TowerSpec& tw, const OrderProfile& p) {
  if (p.case_id == 1) throw std::invalid_argument("check_order_bound needs a Case 2 or Case 3 profile");
  if (tw.q_minus() == 1) return {"order-bound", true, "vacuous: q-1 = 1 has no prime factor"};
  const std::uint64_t p1 = factorize(tw.q_plus()).least_prime();
  const std::uint64_t p2 = factorize(tw.q_minus()).least_prime();
  if (p1 < 1 + (std::uint64_t{1} << (tw.l + 1)))
    return {"order-bound", false, "least prime of q+1 is " + std::to_string(p1)};
  unsigned last = tw.l + 1;
  if (!detail::divides(p.steps[tw.l + 2].order, tw.q_plus())) last = tw.l + 4;
  for (unsigned i = 1; i <= last; ++i)
    if (p.steps[i].order < p1 * p2)
      return {"order-bound", false,
              detail::gamma_name(p) + " iterate " + std::to_string(i) + " has order " +
                  std::to_string(p.steps[i].order) + " < " + std::to_string(p1 * p2)};
  return {"order-bound", true, "bound " + std::to_string(p1 * p2)};
}

// ---- set-level statements ----

namespace detail {
inline void sort_unique(std::vector<Vertex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}
inline std::vector<Vertex> iterate_set(const FieldSpec& f, const std::vector<Word>& seeds, unsigned k) {
  std::vector<Vertex> out;
  out.reserve(seeds.size());
  for (Word s : seeds) {
    ProjPoint x = ProjPoint::from_word(s);
    for (unsigned i = 0; i < k; ++i) x = theta(f, x);
    out.push_back(x.vertex(f.degree()));
  }
  sort_unique(out);
  return out;
}
inline bool contains(const std::vector<Vertex>& sorted, Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); }
}  // namespace detail

/// C_{q+1} inside theta(C_{q^2+1}) u theta^{l+2}(C_{q^2+1}), and every non-identity
/// alpha in C_{q+1} sits at level l+3 or 2 of G_{q^2} with all same-level vertices of its component of order | q+1.
inline CheckReport verify_cq1_inclusion(const TowerSpec& tw) {
  const FieldSpec& f = *tw.ambient;
  const auto big = subgroup(tw, tw.h_order());
  const auto small = subgroup(tw, tw.q_plus());
  const auto img1 = detail::iterate_set(f, big, 1);
  const auto img2 = detail::iterate_set(f, big, tw.l + 2);
  CheckReport rep;
  CheckTally incl("cq1-inclusion");
  for (Word a : small)
    incl.expect(detail::contains(img1, a) || detail::contains(img2, a), [&] { return "alpha=0x" + to_hex(a); });
  rep << incl;

  const ThetaGraph g(tw.middle);
  const FieldSpec& mf = *tw.middle;
  CheckTally lv("cq1-levels");
  for (Word a : small) {
    if (a == 1) continue;
    const auto pre = tw.middle_in_ambient->preimage(a);
    if (!pre) {
      lv.expect(false, [&] { return "alpha=0x" + to_hex(a) + " outside GF(q^2)"; });
      continue;
    }
    const unsigned lvl = g.level(*pre);
    bool ok = lvl == tw.l + 3 || lvl == 2;
    if (ok) {
      const auto& comp = g.components()[g.component_of(*pre)];
      for (const auto& tr : comp.trees)
        if (tr.levels.size() > lvl)
          for (Vertex v : tr.levels[lvl]) ok = ok && v != 0 && detail::divides(mf.order(v), tw.q_plus());
    }
    lv.expect(ok, [&] { return "alpha=0x" + to_hex(a) + " at level " + std::to_string(lvl); });
  }
  rep << lv;
  return rep;
}

struct QuadrantReport {
  std::size_t a1 = 0, a0 = 0, b01 = 0, b10 = 0;
  CheckReport checks;
};

/// A_{n1}, A_{n0}, B_{n01}, B_{n10} in GF(q)*: by trace definition in spec_n and as theta-images of seed sets.
inline QuadrantReport trace_quadrants(const Field& spec_n, const TowerSpec& tw) {
  if (spec_n->degree() != tw.n) throw std::invalid_argument("trace_quadrants: spec_n must have degree n");
  const Embedding emb(spec_n, tw.ambient);
  const FieldSpec& fn = *spec_n;
  const FieldSpec& f = *tw.ambient;
  std::array<std::vector<Vertex>, 4> by_trace;  // a1, a0, b01, b10
  for (std::uint64_t x = 1; x < fn.size(); ++x) {
    const Word w = static_cast<Word>(x);
    const unsigned a = fn.trace(w), b = fn.trace(fn.inv(w));
    const int slot = (a == 1 && b == 1) ? 0 : (a == 0 && b == 0) ? 1 : (a == 0) ? 2 : 3;
    by_trace[slot].push_back(emb.map(w));
  }
  for (auto& s : by_trace) detail::sort_unique(s);

  std::vector<Word> seeds1, seeds2;
  for (Word g : subgroup(tw, tw.h_order())) {
    if (g == 1) continue;
    ProjPoint x = ProjPoint::unit(g);
    std::vector<ProjPoint> it{x};
    for (unsigned i = 0; i < tw.l + 2; ++i) it.push_back(x = theta(f, x));
    if (detail::divides(proj_order(f, it[1]), tw.q_plus())) seeds1.push_back(g);
    if (detail::divides(proj_order(f, it[tw.l + 2]), tw.q_plus())) seeds2.push_back(g);
  }
  const Vertex inf = Vertex{1} << f.degree();
  auto units_only = [&](std::vector<Vertex> v) {
    std::erase_if(v, [&](Vertex x) { return x == 0 || x == inf; });
    return v;
  };
  std::array<std::vector<Vertex>, 4> by_image;
  by_image[0] = units_only(detail::iterate_set(f, seeds1, 2));
  for (unsigned i = 3; i <= tw.l + 4; ++i) {
    auto s = detail::iterate_set(f, seeds1, i);
    by_image[1].insert(by_image[1].end(), s.begin(), s.end());
  }
  by_image[1] = units_only(by_image[1]);
  detail::sort_unique(by_image[1]);
  by_image[2] = units_only(detail::iterate_set(f, seeds2, tw.l + 3));
  by_image[3] = units_only(detail::iterate_set(f, seeds2, tw.l + 4));

  QuadrantReport rep;
  rep.a1 = by_trace[0].size();
  rep.a0 = by_trace[1].size();
  rep.b01 = by_trace[2].size();
  rep.b10 = by_trace[3].size();
  const std::array<const char*, 4> names = {"quadrant-a1", "quadrant-a0", "quadrant-b01", "quadrant-b10"};
  for (int k = 0; k < 4; ++k) {
    const bool eq = by_trace[k] == by_image[k];
    rep.checks.add(names[k], eq,
                   std::to_string(by_trace[k].size()) + " by traces, " + std::to_string(by_image[k].size()) +
                       " by theta-images");
  }
  const std::size_t total = rep.a1 + rep.a0 + rep.b01 + rep.b10;
  rep.checks.add("quadrant-cover", total == fn.group_order(), std::to_string(total) + " elements");
  return rep;
}

/// theta permutes P = theta^{l+4}(H).
inline Check verify_theta_permutation(const TowerSpec& tw) {
  const FieldSpec& f = *tw.ambient;
  auto h = subgroup(tw, tw.h_order());
  h.erase(h.begin());
  const auto P = detail::iterate_set(f, h, tw.l + 4);
  std::vector<Vertex> image;
  image.reserve(P.size());
  for (Vertex v : P) image.push_back(theta_vertex(f, v));
  auto sorted = image;
  detail::sort_unique(sorted);
  const bool injective = sorted.size() == image.size();
  const bool closed = sorted == P;
  return {"theta-permutation", injective && closed,
          "|P| = " + std::to_string(P.size()) + (injective ? "" : ", not injective") + (closed ? "" : ", not closed")};
}

// ---- aggregate run ----

struct OrderReport {
  unsigned n = 0, l = 0, m = 0;
  std::uint64_t q = 0;
  std::array<std::size_t, 3> counts{};
  std::vector<OrderProfile> profiles;
  CheckReport checks;
};

inline OrderReport verify_orders(const TowerSpec& tw, unsigned workers = 1,
                                 const TraceRule& rule = standard_trace_rule()) {
  OrderReport rep;
  rep.n = tw.n;
  rep.l = tw.l;
  rep.m = tw.m;
  rep.q = tw.q;
  rep.profiles = all_profiles(tw, workers, rule);
  for (const auto& p : rep.profiles) ++rep.counts[static_cast<int>(p.h_class) - 1];

  struct PerProfile {
    std::vector<Check> checks;
  };
  std::vector<PerProfile> per(rep.profiles.size());
  parallel_for(workers, per.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto& p = rep.profiles[i];
      auto& out = per[i].checks;
      out.push_back(characterization_check(tw, p));
      out.push_back(decomposition_check(tw, p));
      out.push_back(orbit_tail_check(tw, p));
      const CheckReport traces = trace_profile_check(tw, p);
      out.insert(out.end(), traces.checks().begin(), traces.checks().end());
      if (p.case_id == 1 && tw.l >= 1) {
        const SubcaseReport sub = case1_subcase(tw, p);
        out.insert(out.end(), sub.checks.checks().begin(), sub.checks.checks().end());
      }
      if (p.case_id != 1) out.push_back(check_order_bound(tw, p));
    }
  });

  // tally per check name in first-seen order
  std::vector<CheckTally> tallies;
  auto tally_for = [&](const std::string& name) -> CheckTally& {
    for (std::size_t k = 0; k < tallies.size(); ++k)
      if (tallies[k].name() == name) return tallies[k];
    tallies.emplace_back(name);
    return tallies.back();
  };
  for (const char* name : {"h-partition", "order-split", "orbit-tail", "class-traces", "table-traces"})
    tally_for(name);
  for (const auto& pp : per)
    for (const auto& c : pp.checks) tally_for(c.name).expect(c.pass, [&] { return c.detail; });
  for (const auto& t : tallies) rep.checks << t;

  rep.checks.merge(verify_cq1_inclusion(tw));
  rep.checks.merge(trace_quadrants(tw.base, tw).checks);
  rep.checks.add(verify_theta_permutation(tw));
  return rep;
}

}  // namespace theta
