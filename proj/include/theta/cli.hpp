#pragma once

// Command dispatch behind the `theta` executable. Exit codes: 0 all checks
// pass, 1 at least one verification failure (report still written), 2 usage error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "theta/dickson_curve.hpp"
#include "theta/io.hpp"
#include "theta/order_dynamics.hpp"
#include "theta/structure_checks.hpp"
#include "theta/theta_graph.hpp"

namespace theta {

enum class Command { Graph, VerifyStructure, VerifyOrders, VerifyDickson, Sweep };
enum class Format { Default, Dot, Json, Csv, Text };

struct Range {
  unsigned lo = 0, hi = 0;
};

/// "A" or "A..B".
inline Range parse_range(const std::string& s) {
  auto num = [&](const std::string& part) {
    unsigned v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size())
      throw std::invalid_argument("bad range: " + s);
    return v;
  };
  const auto dots = s.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = num(s);
  } else {
    r.lo = num(s.substr(0, dots));
    r.hi = num(s.substr(dots + 2));
  }
  if (r.lo > r.hi) throw std::invalid_argument("empty range: " + s);
  return r;
}

struct RunConfig {
  Command command = Command::Graph;
  std::optional<std::string> t, n, range;
  Format format = Format::Default;
  std::optional<std::string> out;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  unsigned max_degree = kDefaultMaxDegree;
  bool flip_traces = false;  // fault injection for exercising the failure path
};

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace cli_detail {

inline Range bounded(const std::optional<std::string>& a, const std::optional<std::string>& b, const char* what,
                     unsigned cap) {
  const auto& src = a ? a : b;
  if (!src) throw usage_error(std::string("missing --") + what + " (or --range)");
  Range r;
  try {
    r = parse_range(*src);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  if (r.lo < 1 || r.hi > cap)
    throw usage_error(std::string(what) + " range must lie within 1.." + std::to_string(cap));
  return r;
}

inline int graph(const RunConfig& c, std::ostream& os) {
  const Range r = bounded(c.t, c.range, "t", c.max_degree);
  if (r.lo != r.hi) throw usage_error("graph takes a single --t");
  const ThetaGraph g(make_field(r.lo, std::nullopt, c.max_degree), c.workers);
  switch (c.format) {
    case Format::Json: os << graph_json(g).dump(2) << "\n"; break;
    case Format::Default:
    case Format::Dot: write_dot(os, g); break;
    case Format::Text: {
      const DiscreteLogTable logs(g.spec());
      os << to_record(g.spec()) << "\n";
      for (const auto& comp : g.components()) {
        os << "component class " << to_string(comp.trace_class) << " depth " << comp.depth << " cycle";
        for (Vertex v : comp.cycle) os << ' ' << vertex_label(g, logs, v);
        os << "\n";
      }
      break;
    }
    default: throw usage_error("graph supports dot, json or text");
  }
  return 0;
}

inline int verify_structure(const RunConfig& c, std::ostream& os) {
  const Range r = bounded(c.t, c.range, "t", c.max_degree);
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  for (unsigned t = r.lo; t <= r.hi; ++t) {
    const Field f = make_field(t, std::nullopt, c.max_degree);
    const ThetaGraph g(f, c.workers);
    CheckReport rep = theta::verify_structure(g);
    rep.merge(verify_graph_extras(g, c.max_degree));
    rep.merge(verify_field_facts(*f, c.seed));
    ok = ok && rep.passed();
    if (c.format == Format::Json) {
      all.push_back({{"t", t}, {"modulus", to_hex(f->modulus())}, {"pass", rep.passed()}, {"checks", checks_json(rep)}});
    } else if (c.format == Format::Default || c.format == Format::Text) {
      os << to_record(*f) << (rep.passed() ? "  PASS" : "  FAIL") << "\n";
      write_checks_text(os, rep);
    } else {
      throw usage_error("verify-structure supports text or json");
    }
  }
  if (c.format == Format::Json) os << all.dump(2) << "\n";
  return ok ? 0 : 1;
}

inline int verify_orders(const RunConfig& c, std::ostream& os) {
  const Range r = bounded(c.n, c.range, "n", std::min(c.max_degree, kHardMaxDegree) / 4);
  if (c.format != Format::Default && c.format != Format::Text && c.format != Format::Json)
    throw usage_error("verify-orders supports text or json");
  TraceRule rule = standard_trace_rule();
  if (c.flip_traces) rule = [](const FieldSpec& f, Word x, unsigned d) { return 1u - f.subfield_trace(x, d); };
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  for (unsigned n = r.lo; n <= r.hi; ++n) {
    const TowerSpec tw = make_tower(n, c.max_degree);
    const OrderReport rep = theta::verify_orders(tw, c.workers, rule);
    ok = ok && rep.checks.passed();
    if (c.format == Format::Json) {
      all.push_back(order_report_json(rep, tw));
      continue;
    }
    os << "n=" << n << " l=" << tw.l << " m=" << tw.m << " q=" << tw.q << " ambient " << to_record(*tw.ambient)
       << (rep.checks.passed() ? "  PASS" : "  FAIL") << "\n";
    os << "  |H1|=" << rep.counts[0] << " |H2|=" << rep.counts[1] << " |H3|=" << rep.counts[2] << "\n";
    write_checks_text(os, rep.checks);
    for (int cs = 1; cs <= 3; ++cs) {
      for (const auto& p : rep.profiles) {
        if (p.case_id != cs) continue;
        os << case_table(tw, p);
        break;
      }
    }
  }
  if (c.format == Format::Json) os << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
  return ok ? 0 : 1;
}

inline int dickson(const RunConfig& c, std::ostream& os, Format fallback) {
  const Range r = bounded(c.n, c.range, "n", std::min(c.max_degree, kHardMaxDegree) / 2);
  const Format fmt = c.format == Format::Default ? fallback : c.format;
  if (fmt == Format::Dot) throw usage_error("dot output is only available for graph");
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  if (fmt == Format::Csv) os << kDicksonCsvHeader << "\n";
  for (unsigned n = r.lo; n <= r.hi; ++n) {
    const Field f = make_field(n, std::nullopt, c.max_degree);
    DicksonOptions opt;
    opt.workers = c.workers;
    opt.seed = c.seed;
    opt.max_degree = c.max_degree;
    const RootSetReport rep = dickson_report(f, opt);
    ok = ok && rep.checks.passed();
    switch (fmt) {
      case Format::Csv: os << dickson_csv_row(rep) << "\n"; break;
      case Format::Json: all.push_back(dickson_json(rep, *f)); break;
      default:
        os << "n=" << n << " q=" << rep.q << " m=" << rep.m << " K=" << rep.K << " N_pred=" << rep.N_pred
           << " |S|=" << rep.S.size() << " |T|=" << rep.T.size() << " |E|=" << rep.E_count
           << (rep.checks.passed() ? "  PASS" : "  FAIL") << "\n";
        write_checks_text(os, rep.checks);
    }
  }
  if (fmt == Format::Json) os << (all.size() == 1 && c.command != Command::Sweep ? all[0] : all).dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace cli_detail

inline int run(const RunConfig& c, std::ostream& os) {
  switch (c.command) {
    case Command::Graph: return cli_detail::graph(c, os);
    case Command::VerifyStructure: return cli_detail::verify_structure(c, os);
    case Command::VerifyOrders: return cli_detail::verify_orders(c, os);
    case Command::VerifyDickson: return cli_detail::dickson(c, os, Format::Text);
    case Command::Sweep: return cli_detail::dickson(c, os, Format::Csv);
  }
  return 2;
}

/// Runs the command, writing to c.out or `fallback`. Usage problems go to `err` with exit code 2.
inline int run_to(const RunConfig& c, std::ostream& fallback, std::ostream& err) {
  try {
    std::ostringstream buf;
    const int code = run(c, buf);
    if (c.out) {
      std::ofstream file(*c.out, std::ios::binary);
      if (!file) throw usage_error("cannot write " + *c.out);
      file << buf.str();
      if (!file) throw usage_error("cannot write " + *c.out);
    } else {
      fallback << buf.str();
    }
    return code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace theta
