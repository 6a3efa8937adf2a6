#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "hsp/commands.hpp"

int main(int argc, char** argv) {
  hsp::ExperimentConfig cfg;
  CLI::App app{"Hidden subgroup sampling simulator and verifier"};
  app.set_version_flag("--version", std::string(hsp::kToolVersion));
  app.require_subcommand(1);

  const std::map<std::string, hsp::OutputFormat> formats{{"json", hsp::OutputFormat::Json},
                                                         {"csv", hsp::OutputFormat::Csv}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group_spec, "z<n> | d<n> | s<n> | q8 | prod:<spec>,... | file:<path>")
        ->capture_default_str();
    sub->add_option("--subgroup", cfg.subgroup_gens, "generator element indices")->delimiter(',');
    sub->add_option("--n", cfg.n, "number of sampled irreps");
    sub->add_option("--trials", cfg.trials)->capture_default_str();
    sub->add_option("--seed", cfg.seed)->capture_default_str();
    sub->add_option("--epsilon", cfg.epsilon);
    sub->add_option("--output", cfg.output)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--tolerance", cfg.tolerance)->capture_default_str();
  };

  auto* dist = app.add_subcommand("distribution", "exact law of the measured irrep");
  common(dist);
  dist->add_flag("--character-table", cfg.character_table, "embed the character table");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of the success probability");
  common(sim);
  sim->add_option("--workers", cfg.workers, "worker threads, 0 = hardware concurrency")->capture_default_str();
  sim->add_flag("--martingale", cfg.martingale, "add conditional-mean diagnostics");

  auto* ver = app.add_subcommand("verify", "run the identity suite on a group");
  common(ver);
  ver->add_option("--subgroup-cap", cfg.subgroup_cap, "largest order for full subgroup enumeration")
      ->capture_default_str();

  auto* bnd = app.add_subcommand("bounds", "success-probability bounds and the normal-order sieve");
  common(bnd);
  bnd->add_option("--order", cfg.order, "group order |G|");
  bnd->add_flag("--n-from-corollary", cfg.n_from_corollary, "n = ceil(4 (1 + eps) log log |G|)");
  bnd->add_flag("--n-from-theorem", cfg.n_from_theorem, "n = ceil(4 log2 |G|)");
  bnd->add_option("--target", cfg.target, "smallest n whose bound reaches this value");
  bnd->add_option("--sieve", cfg.sieve_limit, "normal-order fraction up to LIMIT");
  bnd->add_flag("--allow-large-sieve", cfg.allow_large_sieve, "lift the memory budget up to 10^9");
  bnd->add_option("--max-violations", cfg.max_violations)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (dist->parsed()) return hsp::cmd_distribution(cfg, std::cout, std::cerr);
  if (sim->parsed()) return hsp::cmd_simulate(cfg, std::cout, std::cerr);
  if (ver->parsed()) return hsp::cmd_verify(cfg, std::cout, std::cerr);
  return hsp::cmd_bounds(cfg, std::cout, std::cerr);
}
