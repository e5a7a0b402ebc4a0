// Command line front end: root datum construction, Bernstein map evaluation,
// the named verification suite, classification of simple supersingular
// modules, Satake checks on cyclic modules, and table emission.
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "prophecke/verify.hpp"

using namespace prophecke;

namespace {

std::string resolve_group(const std::string& group, int rank) {
  if (rank <= 0) return group;
  return group + std::to_string(rank);
}

struct CommonArgs {
  std::string group = "SL2";
  int rank = 0;
  int q = 3;
  std::string mode = "generic";
};

std::shared_ptr<const ExtendedGroup> build_group(const CommonArgs& a) {
  auto grp = std::make_shared<ExtendedGroup>(
      std::make_shared<AffineWeyl>(RootDatum::build(resolve_group(a.group, a.rank), a.q)));
  if (const char* dir = std::getenv("PROP_HECKE_CACHE_DIR")) {
    if (!sync_cocycle_cache(*grp, dir))
      throw std::runtime_error("stale cocycle cache under PROP_HECKE_CACHE_DIR");
  }
  return grp;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in pro-p Iwahori-Hecke algebras"};
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", common.group,
                    "group label (SL2..SL4, GL1..GL4, PGL2..PGL4, B2, C2, G2, SL2xSL2) "
                    "or a family name combined with --rank");
    cmd->add_option("--rank", common.rank, "rank appended to a family name");
    cmd->add_option("--q", common.q, "residue field size, a prime power");
  };

  auto* datum_cmd = app.add_subcommand("datum", "print the root datum as JSON");
  add_common(datum_cmd);

  std::string facet_text, sign_text = "+", lambda_text = "0", torus_text;
  auto* bern_cmd = app.add_subcommand("bernstein", "evaluate an integral Bernstein map");
  add_common(bern_cmd);
  bern_cmd->add_option("--facet", facet_text,
                       "facet as simple root indices: \"\", \"1\", \"1,2\", or x0");
  bern_cmd->add_option("--sign", sign_text, "+ or -");
  bern_cmd->add_option("--lambda", lambda_text, "coweight coordinates, e.g. 1 or 1,0");
  bern_cmd->add_option("--t", torus_text, "torus tuple (discrete logs)");
  bern_cmd->add_option("--mode", common.mode, "generic or charp");

  SuiteConfig cfg;
  std::vector<std::string> check_args;
  auto* verify_cmd = app.add_subcommand("verify", "run the identity verification suite");
  add_common(verify_cmd);
  verify_cmd->add_option("checks", check_args, "check names (default: all)");
  verify_cmd->add_option("--only", cfg.checks, "check names")->delimiter(',');
  verify_cmd->add_option("--mode", cfg.mode, "generic, charp or both");
  verify_cmd->add_option("--max-len", cfg.max_len, "length bound for enumerations");
  verify_cmd->add_option("--seed", cfg.seed, "random seed");
  verify_cmd->add_option("--format", cfg.format, "pretty, json or tsv");
  verify_cmd->add_option("--jobs", cfg.jobs, "concurrent checks");
  verify_cmd->add_option("--out", cfg.out_dir, "output directory");
  verify_cmd->add_option("--pi-scalar", cfg.pi_scalars, "uniformizer scalars as discrete logs")
      ->delimiter(',');
  verify_cmd->add_option("--inject-fault", cfg.inject_fault,
                         "test hook: corrupt a relation (quadratic)");

  std::vector<int> pi_scalars{0};
  auto* classify_cmd =
      app.add_subcommand("classify", "classify the simple supersingular modules");
  add_common(classify_cmd);
  classify_cmd->add_option("--pi-scalar", pi_scalars, "uniformizer scalars as discrete logs")
      ->delimiter(',');

  std::string chi_text = ":", sat_lambda = "1";
  auto* satake_cmd = app.add_subcommand(
      "satake", "compare the central and Bernstein actions on a cyclic module");
  add_common(satake_cmd);
  satake_cmd->add_option("--chi", chi_text,
                         "weight character as \"t1,t2:i,j\" (torus tuple : facet indices)");
  satake_cmd->add_option("--lambda", sat_lambda, "dominant coweight");

  SuiteConfig tables_cfg;
  std::vector<std::string> table_kinds{"ztable", "bernstein", "classification"};
  auto* tables_cmd = app.add_subcommand("tables", "emit z, basis and classification tables");
  add_common(tables_cmd);
  tables_cmd->add_option("--kinds", table_kinds, "table kinds to write (empty: none)")
      ->delimiter(',')
      ->expected(0, 3);
  tables_cmd->add_option("--out", tables_cfg.out_dir, "output directory");
  tables_cmd->add_option("--max-len", tables_cfg.max_len, "length bound");
  tables_cmd->add_option("--pi-scalar", tables_cfg.pi_scalars,
                         "uniformizer scalars as discrete logs")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (datum_cmd->parsed()) {
      auto d = RootDatum::build(resolve_group(common.group, common.rank), common.q);
      std::cout << datum_to_json(*d).dump(2) << "\n";
      return 0;
    }
    if (bern_cmd->parsed()) {
      auto grp = build_group(common);
      auto gen = std::make_shared<HeckeGen>(grp, RingGeneric{});
      auto ops = std::make_shared<HeckeOps>(gen);
      Bernstein bern(ops);
      Facet f = parse_facet(facet_text, grp->datum());
      Sign sg = sign_text == "-" ? Sign::Minus : Sign::Plus;
      XtCoweight lt{parse_coord(lambda_text, grp->datum().rank()),
                    grp->torus_reduce(parse_coord(torus_text, grp->datum().rank()))};
      HEltGen b = bern.map(f, sg, lt);
      if (common.mode == "charp") {
        int p, s;
        factor_prime_power(common.q, p, s);
        GF field(p, s);
        HeckeP chp(grp, RingCharP{&field});
        std::cout << hecke_to_json(chp, specialize(*gen, chp, b)).dump(2) << "\n";
      } else {
        std::cout << hecke_to_json(*gen, b).dump(2) << "\n";
      }
      return 0;
    }
    if (verify_cmd->parsed()) {
      cfg.group = resolve_group(common.group, common.rank);
      cfg.q = common.q;
      for (const std::string& name : check_args) cfg.checks.push_back(name);
      VerificationReport report = run_suite(cfg);
      if (cfg.format == "json")
        std::cout << report_json(report) << "\n";
      else if (cfg.format == "tsv")
        std::cout << report_tsv(report);
      else
        std::cout << report_pretty(report);
      return report.all_pass() ? 0 : 1;
    }
    if (classify_cmd->parsed()) {
      auto grp = build_group(common);
      auto gen = std::make_shared<HeckeGen>(grp, RingGeneric{});
      auto ops = std::make_shared<HeckeOps>(gen);
      auto bern = std::make_shared<Bernstein>(ops);
      auto theory = std::make_shared<CharacterTheory>(grp);
      auto field = classification_field(*grp);
      ClassifyOptions opts;
      long long mu = std::max(1, grp->modulus());
      for (int i = 0; i < grp->aw().n_free(); ++i) {
        int e = pi_scalars[i % pi_scalars.size()];
        opts.pi_scalars.push_back(
            field->gpow(static_cast<long long>(e) * ((field->q() - 1) / mu)));
      }
      auto mods = classify(theory, field, bern, opts);
      std::cout << classification_to_json(*grp, *field, mods).dump(2) << "\n";
      return 0;
    }
    if (satake_cmd->parsed()) {
      auto grp = build_group(common);
      int p, s;
      factor_prime_power(common.q, p, s);
      GF field(p, s);
      auto gen = std::make_shared<HeckeGen>(grp, RingGeneric{});
      auto chp = std::make_shared<HeckeP>(grp, RingCharP{&field});
      auto ops = std::make_shared<HeckeOps>(gen);
      Bernstein bern(ops);
      auto colon = chi_text.find(':');
      std::string tpart = chi_text.substr(0, colon);
      std::string fpart = colon == std::string::npos ? "" : chi_text.substr(colon + 1);
      WeightChar chi{TorusChar{grp->torus_reduce(parse_coord(tpart, grp->datum().rank()))},
                     parse_facet(fpart, grp->datum()).mask};
      WeightModule m(chp, chi);
      Coord lam = parse_coord(sat_lambda, grp->datum().rank());
      if (!grp->datum().dominant(lam)) throw std::runtime_error("lambda must be dominant");
      HEltP z = bern.central_p(*chp, XtCoweight{lam, coord_zero()});
      HEltP b = specialize(*gen, *chp, bern.map(m.facet(), Sign::Plus, lam));
      auto lhs = m.act(m.generator(), z);
      auto rhs = m.act(m.generator(), b);
      HEltP lhs_elt(lhs.begin(), lhs.end()), rhs_elt(rhs.begin(), rhs.end());
      Json out;
      out["z_side"] = hecke_to_json(*chp, lhs_elt);
      out["bernstein_side"] = hecke_to_json(*chp, rhs_elt);
      out["equal"] = (lhs == rhs);
      std::cout << out.dump(2) << "\n";
      std::cout << (lhs == rhs ? "PASS" : "FAIL") << "\n";
      return lhs == rhs ? 0 : 1;
    }
    if (tables_cmd->parsed()) {
      tables_cfg.group = resolve_group(common.group, common.rank);
      tables_cfg.q = common.q;
      for (const std::string& path : emit_tables(tables_cfg, table_kinds))
        std::cout << path << "\n";
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
