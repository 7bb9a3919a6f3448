// reglab: invariants of products of powers of monomial ideals.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reglab/cli.hpp"

namespace {

reglab::MultiExponent parse_csv_exponent(const std::string& text) {
  reglab::MultiExponent a;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - pos);
    if (piece.empty()) throw CLI::ValidationError("empty exponent entry");
    a.push_back(std::stoll(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return a;
}

unsigned threads_from_env() {
  const char* env = std::getenv("REGLAB_THREADS");
  if (!env || !*env) return 0;
  long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants of products of powers of monomial ideals"};
  app.require_subcommand(1);

  reglab::RunConfig config;
  config.threads = threads_from_env();
  std::string origin_text, exp_text;
  int j_flag = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", config.input_path, "ideal family file")->required();
    cmd->add_option("--output", config.output, "output format: text, json, csv")
        ->default_val("text");
  };

  CLI::App* gens = app.add_subcommand("gens", "minimal generators of I^a");
  add_common(gens);
  gens->add_option("--exp", exp_text, "exponent vector a1,a2,...");

  CLI::App* betti = app.add_subcommand("betti", "multigraded Betti table of I^a");
  add_common(betti);
  betti->add_option("--exp", exp_text, "exponent vector a1,a2,...");

  CLI::App* table = app.add_subcommand("table", "tabulate an invariant over the grid");
  add_common(table);
  table->add_option("--grid", config.grid_max, "grid upper bound")->default_val(6);
  table->add_option("--kind", config.kind, "invariant: t or reg")->default_val("reg");
  CLI::Option* table_j = table->add_option("--j", j_flag, "homological index for kind=t");

  CLI::App* fit = app.add_subcommand("fit", "fit the invariant as a max of linear forms");
  add_common(fit);
  fit->add_option("--grid", config.grid_max, "grid upper bound")->default_val(6);
  fit->add_option("--kind", config.kind, "invariant: t or reg")->default_val("reg");
  CLI::Option* fit_j = fit->add_option("--j", j_flag, "homological index for kind=t");
  fit->add_option("--origin", origin_text, "fit region origin o1,o2,... (default all ones)");

  CLI::App* pd = app.add_subcommand("pd", "projective-dimension stability report");
  add_common(pd);
  pd->add_option("--grid", config.grid_max, "grid upper bound")->default_val(6);

  CLI::App* hilbert = app.add_subcommand("hilbert-check",
                                         "compare a series decomposition to Betti strands");
  add_common(hilbert);
  hilbert->add_option("--grid", config.grid_max, "grid upper bound")->default_val(6);
  hilbert->add_option("--series", config.series_path, "series fixture file")->required();
  CLI::Option* hilbert_j = hilbert->add_option("--j", j_flag, "homology index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  config.command = active->get_name();
  try {
    if (!exp_text.empty()) config.exp = parse_csv_exponent(exp_text);
    if (!origin_text.empty()) config.origin = parse_csv_exponent(origin_text);
  } catch (const std::exception& e) {
    std::cerr << "invalid exponent list: " << e.what() << "\n";
    return 2;
  }
  if ((table_j && table_j->count()) || (fit_j && fit_j->count()) ||
      (hilbert_j && hilbert_j->count()))
    config.j = j_flag;

  return reglab::run(config, std::cout, std::cerr);
}
