// heegrank: command-line front end. Prints one canonical JSON report per run.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heegrank/commands.hpp"

using namespace heegrank;

int main(int argc, char** argv) {
  CLI::App app{"Desk verification of infinite-rank constructions for elliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::string catalog_path;
  std::string out_path;
  app.add_option("--catalog", catalog_path, "JSON-lines curve catalog (default: bundled)");
  app.add_option("--out", out_path, "also write the report to this file");

  ApOptions ap;
  auto* ap_cmd = app.add_subcommand("ap", "Hecke eigenvalues a_p with a CSV cache");
  ap_cmd->add_option("curve", ap.label)->required();
  ap_cmd->add_option("--max-prime", ap.max_prime);
  ap_cmd->add_option("--cache", ap.cache);

  WitnessOptions wit;
  auto* wit_cmd = app.add_subcommand("witness", "Quadratic-point witness family");
  wit_cmd->add_option("curve", wit.label)->required();
  wit_cmd->add_option("--count", wit.count)->check(CLI::PositiveNumber);
  wit_cmd->add_option("--bound", wit.bound);
  wit_cmd->add_option("--start", wit.start);

  ClassFieldOptions cf;
  std::vector<std::int64_t> inert_step;
  auto* cf_cmd = app.add_subcommand("classfield", "Ring class field degrees");
  cf_cmd->add_option("--fund-disc", cf.fund_disc)->required();
  cf_cmd->add_option("--conductor", cf.conductor);
  cf_cmd->add_option("--prime", cf.prime);
  cf_cmd->add_option("--nmax", cf.nmax);
  cf_cmd->add_option("--level", cf.level);
  cf_cmd->add_option("--inert-step", inert_step)->expected(2);

  HeegnerOptions hg;
  auto* hg_cmd = app.add_subcommand("heegner", "Heegner points and norm relations");
  hg_cmd->add_option("curve", hg.label)->required();
  hg_cmd->add_option("--fund-disc", hg.fund_disc)->required();
  auto* vi = hg_cmd->add_option("--verify-inert", hg.verify_inert);
  auto* vt = hg_cmd->add_option("--verify-tower", hg.verify_tower);
  vi->excludes(vt);
  hg_cmd->add_option("--precision", hg.precision)->check(CLI::Range(10u, 500u));
  hg_cmd->add_option("--tolerance", hg.tolerance);

  PrimeSearchOptions ps;
  auto* ps_cmd = app.add_subcommand("primesearch", "Inert auxiliary prime search");
  ps_cmd->add_option("curve", ps.label)->required();
  ps_cmd->add_option("--fund-disc", ps.fund_disc)->required();
  ps_cmd->add_option("--p", ps.p)->required();
  ps_cmd->add_option("--bound", ps.bound);

  RecurrenceOptions rc;
  auto* rc_cmd = app.add_subcommand("recurrence", "p c_{n+1} = a_p c_n - c_{n-1}");
  rc_cmd->add_option("--p", rc.p)->required();
  rc_cmd->add_option("--ap", rc.ap)->required();
  rc_cmd->add_option("--c0", rc.c0);
  rc_cmd->add_option("--c1", rc.c1);
  rc_cmd->add_option("--steps", rc.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CommandResult result;
  try {
    const Catalog loaded = catalog_path.empty() ? Catalog() : Catalog::load(catalog_path);
    const Catalog& catalog = catalog_path.empty() ? Catalog::bundled() : loaded;
    if (*ap_cmd) {
      result = cmd_ap(catalog, ap);
    } else if (*wit_cmd) {
      result = cmd_witness(catalog, wit);
    } else if (*cf_cmd) {
      if (!inert_step.empty()) cf.inert_step = std::make_pair(inert_step[0], inert_step[1]);
      result = cmd_classfield(cf);
    } else if (*hg_cmd) {
      result = cmd_heegner(catalog, hg);
    } else if (*ps_cmd) {
      result = cmd_primesearch(catalog, ps);
    } else {
      result = cmd_recurrence(rc);
    }
  } catch (const Error& err) {
    std::cerr << "heegrank: " << err.what() << "\n";
    return 2;
  }

  const std::string bytes = serialize(result.report);
  std::cout << bytes;
  if (!out_path.empty()) {
    try {
      write_file(out_path, bytes);
    } catch (const Error& err) {
      std::cerr << "heegrank: " << err.what() << "\n";
      return 2;
    }
  }
  if (result.exit_code != 0 && result.report["results"].contains("error"))
    std::cerr << "heegrank: " << result.report["results"]["error"]["message"].get<std::string>()
              << "\n";
  return result.exit_code;
}
