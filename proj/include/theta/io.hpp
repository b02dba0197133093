#pragma once

// DOT / JSON / CSV / text renderings of graphs and reports.
// Vertex labels are discrete logs to the field generator; "'0'" is zero and "inf" is infinity.

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "theta/dickson_curve.hpp"
#include "theta/gf2.hpp"
#include "theta/order_dynamics.hpp"
#include "theta/report.hpp"
#include "theta/theta_graph.hpp"

namespace theta {

class DiscreteLogTable {
 public:
  explicit DiscreteLogTable(const FieldSpec& f) : log_(f.size(), 0) {
    Word x = 1;
    for (std::uint64_t i = 0; i < f.group_order(); ++i) {
      log_[x] = static_cast<std::uint32_t>(i);
      x = f.mul(x, f.generator());
    }
  }
  std::uint32_t log(Word x) const { return log_.at(x); }

 private:
  std::vector<std::uint32_t> log_;
};

inline std::string vertex_label(const ThetaGraph& g, const DiscreteLogTable& logs, Vertex v) {
  if (v == g.infinity()) return "inf";
  if (v == 0) return "'0'";
  return std::to_string(logs.log(v));
}

inline void write_dot(std::ostream& os, const ThetaGraph& g) {
  const DiscreteLogTable logs(g.spec());
  const auto q = [&](Vertex v) { return "\"" + vertex_label(g, logs, v) + "\""; };
  const auto& comps = g.components();
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& c = comps[ci];
    os << "digraph \"G_" << g.spec().size() << "_c" << ci << "\" {\n";
    os << "  label=\"" << to_record(g.spec()) << " class " << to_string(c.trace_class) << " depth " << c.depth
       << "\";\n";
    for (Vertex v : c.cycle) os << "  " << q(v) << " -> " << q(g.succ(v)) << ";\n";
    for (const auto& tr : c.trees)
      for (std::size_t k = 1; k < tr.levels.size(); ++k)
        for (Vertex v : tr.levels[k]) os << "  " << q(v) << " -> " << q(g.succ(v)) << ";\n";
    os << "}\n";
  }
}

inline nlohmann::json graph_json(const ThetaGraph& g) {
  const DiscreteLogTable logs(g.spec());
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : g.components()) {
    nlohmann::json cyc = nlohmann::json::array();
    for (Vertex v : c.cycle) cyc.push_back(vertex_label(g, logs, v));
    nlohmann::json levels = nlohmann::json::object();
    for (unsigned k = 1; k <= c.depth; ++k) {
      std::vector<Vertex> at;
      for (const auto& tr : c.trees)
        if (k < tr.levels.size()) at.insert(at.end(), tr.levels[k].begin(), tr.levels[k].end());
      std::sort(at.begin(), at.end());
      nlohmann::json labels = nlohmann::json::array();
      for (Vertex v : at) labels.push_back(vertex_label(g, logs, v));
      levels[std::to_string(k)] = labels;
    }
    comps.push_back({{"cycle", cyc}, {"depth", c.depth}, {"class", to_string(c.trace_class)}, {"levels", levels}});
  }
  return {{"t", g.spec().degree()},
          {"modulus", to_hex(g.spec().modulus())},
          {"generator", to_hex(g.spec().generator())},
          {"components", comps}};
}

inline nlohmann::json checks_json(const CheckReport& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : r.checks()) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return arr;
}

inline void write_checks_text(std::ostream& os, const CheckReport& r, const std::string& indent = "  ") {
  for (const auto& c : r.checks())
    os << indent << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
}

inline nlohmann::json profile_json(const OrderProfile& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    steps.push_back({{"i", i},
                     {"point", s.point.to_string()},
                     {"order", s.order},
                     {"d", s.d_part},
                     {"e", s.e_part},
                     {"field", s.field_degree},
                     {"tr", s.tr},
                     {"tr_inv", s.tr_inv}});
  }
  return {{"gamma", to_hex(p.gamma)},
          {"exponent", p.exponent},
          {"class", to_string(p.h_class)},
          {"case", p.case_id},
          {"steps", steps}};
}

inline nlohmann::json order_report_json(const OrderReport& r, const TowerSpec& tw) {
  nlohmann::json profiles = nlohmann::json::array();
  for (const auto& p : r.profiles) profiles.push_back(profile_json(p));
  return {{"n", r.n},
          {"l", r.l},
          {"m", r.m},
          {"q", r.q},
          {"modulus", to_hex(tw.ambient->modulus())},
          {"counts", {{"H1", r.counts[0]}, {"H2", r.counts[1]}, {"H3", r.counts[2]}}},
          {"profiles", profiles},
          {"checks", checks_json(r.checks)}};
}

inline nlohmann::json dickson_json(const RootSetReport& r, const FieldSpec& f) {
  return {{"n", r.n},
          {"q", r.q},
          {"m", r.m},
          {"modulus", to_hex(f.modulus())},
          {"K", r.K},
          {"N_pred", r.N_pred},
          {"S_size", r.S.size()},
          {"T_size", r.T.size()},
          {"E_count", r.E_count},
          {"checks", checks_json(r.checks)}};
}

inline constexpr const char* kDicksonCsvHeader = "n,q,m,K,N_pred,S_size,T_size,E_count,pass";

inline std::string dickson_csv_row(const RootSetReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.q << ',' << r.m << ',' << r.K << ',' << r.N_pred << ',' << r.S.size() << ',' << r.T.size()
     << ',' << r.E_count << ',' << (r.checks.passed() ? "true" : "false");
  return os.str();
}

}  // namespace theta
