// nkg: build, verify, census and homology reports for N(KG_{3,k}), N(S_{3,k})
// and N(SG_{3,k}).

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "report.hpp"

int main(int argc, char** argv) {
  using namespace nkg::cli;
  CLI::App app{"Neighbourhood complexes of 3-subset Kneser graphs: matchings, censuses, homology"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig config;
  std::string kind = "kg", format = "json", depth = "acyclicity", out_path;
  app.add_option("--k", config.k, "Parameter k (ground set [k+6])")->check(CLI::NonNegativeNumber);
  app.add_option("--kind", kind, "Graph family")->check(CLI::IsMember({"kg", "s", "sg"}, CLI::ignore_case));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--depth", depth, "Verification depth")
      ->check(CLI::IsMember({"counts", "acyclicity", "full-snf"}));
  app.add_option("--seed", config.seed, "Seed for sampled checks");
  app.add_flag("--allow-large", config.allow_large, "Lift the default k caps");
  app.add_flag("--timing", config.timing, "Report elapsed_ms (otherwise null)");
  app.add_option("--threads", config.threads, "Worker threads (0: all cores)");
  app.add_option("--out", out_path, "Write to a file instead of stdout");

  app.add_subcommand("build", "Graph and complex summary");
  auto* verify = app.add_subcommand("verify", "Check a theorem or a single lemma");
  verify->add_option("target", config.target, "theorem2 | theorem3 | lemma | all")
      ->required()
      ->check(CLI::IsMember({"theorem2", "theorem3", "lemma", "all"}));
  verify->add_option("--lemma", config.lemma, "Lemma name for `verify lemma`");
  auto* betti = app.add_subcommand("betti", "Reduced Betti numbers by Smith normal form");
  betti->add_option("--max-dim", config.dim, "Highest dimension (default k+1)");
  app.add_subcommand("census", "Critical cells of every P and Q fibre");
  auto* exp = app.add_subcommand("export", "Dump edges, faces, boundary matrices or the matching");
  exp->add_option("what", config.what, "edges | maximal | faces | boundary | matching")
      ->required()
      ->check(CLI::IsMember({"edges", "maximal", "faces", "boundary", "matching"}));
  exp->add_option("--dim", config.dim, "Dimension for faces/boundary");

  CLI11_PARSE(app, argc, argv);
  config.command = app.get_subcommands().front()->get_name();
  config.kind = nkg::parse_graph_kind(kind);
  config.format = parse_format(format);
  config.depth = parse_depth(depth);
  if (config.command == "verify" && config.target == "lemma" && config.lemma.empty()) {
    std::cerr << "verify lemma needs --lemma NAME; known:";
    for (const auto& n : lemma_names()) std::cerr << "\n  " << n;
    std::cerr << '\n';
    return 2;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << '\n';
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  try {
    if (config.command == "export") {
      run_export(config, out);
      return 0;
    }
    const Report report = run(config);
    write_report(report, config.format, out);
    if (!report.passed() && !out_path.empty()) {
      std::cerr << "FAIL";
      const auto names = report.failures();
      for (std::size_t i = 0; i < names.size(); ++i) std::cerr << (i ? ", " : ": ") << names[i];
      std::cerr << '\n';
    }
    return report.passed() ? 0 : 1;
  } catch (const Refusal& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
