#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "theta/cli.hpp"

int main(int argc, char** argv) {
  theta::RunConfig cfg;
  if (const char* env = std::getenv("THETA_MAX_T")) {
    try {
      cfg.max_degree = std::min<unsigned>(static_cast<unsigned>(std::stoul(env)), theta::kHardMaxDegree);
    } catch (const std::exception&) {
      std::cerr << "error: THETA_MAX_T must be an integer\n";
      return 2;
    }
  }

  CLI::App app{"Dynamics of x -> x + 1/x over GF(2^t): graphs, order classes, Dickson roots"};
  app.require_subcommand(1);
  std::string format = "default";
  const std::map<std::string, theta::Format> formats = {{"default", theta::Format::Default}, {"dot", theta::Format::Dot},
                                                        {"json", theta::Format::Json},       {"csv", theta::Format::Csv},
                                                        {"text", theta::Format::Text}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "dot|json|csv|text")->check(CLI::IsMember({"default", "dot", "json", "csv", "text"}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", cfg.seed, "seed for randomized property checks");
    sub->add_option("--range", cfg.range, "A..B");
  };

  auto* graph = app.add_subcommand("graph", "functional graph of theta (DOT or JSON)");
  graph->add_option("--t", cfg.t, "extension degree");
  common(graph);

  auto* vs = app.add_subcommand("verify-structure", "structural checks on G_q for t or A..B");
  vs->add_option("--t", cfg.t, "extension degree or range A..B");
  common(vs);

  auto* vo = app.add_subcommand("verify-orders", "order classes of C_{q^2+1} in GF(q^4)");
  vo->add_option("--n", cfg.n, "q = 2^n, or range A..B");
  std::string fault;
  vo->add_option("--fault", fault, "corrupt traces to exercise the failure path")
      ->check(CLI::IsMember({"flip-trace"}))
      ->group("");
  common(vo);

  auto* vd = app.add_subcommand("verify-dickson", "Dickson roots, Kloosterman count, curve points");
  vd->add_option("--n", cfg.n, "q = 2^n, or range A..B");
  common(vd);

  auto* sw = app.add_subcommand("sweep", "CSV rows of the Dickson report over a range of n");
  sw->add_option("--n", cfg.n, "range A..B");
  common(sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (graph->parsed()) cfg.command = theta::Command::Graph;
  if (vs->parsed()) cfg.command = theta::Command::VerifyStructure;
  if (vo->parsed()) cfg.command = theta::Command::VerifyOrders;
  if (vd->parsed()) cfg.command = theta::Command::VerifyDickson;
  if (sw->parsed()) cfg.command = theta::Command::Sweep;
  cfg.format = formats.at(format);
  cfg.flip_traces = fault == "flip-trace";
  return theta::run_to(cfg, std::cout, std::cerr);
}
