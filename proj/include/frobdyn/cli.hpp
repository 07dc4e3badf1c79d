// Command-line front end. `run_cli` is the whole program; tools/frobdyn.cpp
// only forwards argv and the terminal check.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error.
#ifndef FROBDYN_CLI_HPP
#define FROBDYN_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/fibers.hpp"
#include "frobdyn/io.hpp"
#include "frobdyn/moduli.hpp"
#include "frobdyn/verify.hpp"

namespace frobdyn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  unsigned field_degree = 0;
  std::string modulus;
  std::string lambda;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::size_t max_steps = 0;
  std::size_t depth = 1;
  unsigned threads = 1;
  std::string convention = "fixed";
  std::string output;
  bool pretty = false;
  bool compact = false;

  FieldPtr field() const {
    if (!modulus.empty()) {
      FieldPtr f = BinaryField::from_modulus_hex(modulus);
      if (field_degree != 0 && f->degree() != field_degree) {
        throw std::invalid_argument("--field-degree " + std::to_string(field_degree) +
                                    " does not match the modulus degree " + std::to_string(f->degree()));
      }
      return f;
    }
    return BinaryField::make_default(field_degree == 0 ? 1 : field_degree);
  }

  ThetaConstants theta(const FieldPtr& f) const {
    return lambda.empty() ? ThetaConstants::ones(f) : parse_lambda(f, lambda);
  }

  FrobeniusConvention frobenius_convention() const {
    if (convention == "fixed") return FrobeniusConvention::kFixed;
    if (convention == "twisted") return FrobeniusConvention::kTwisted;
    throw std::invalid_argument("--convention must be 'fixed' or 'twisted'");
  }
};

inline Json field_header(const FieldPtr& f, const ThetaConstants& lam, const RunConfig& cfg) {
  return {{"field", to_json(*f)}, {"lambda", to_json(lam)}, {"seed", cfg.seed}, {"version", std::string(kVersion)}};
}

// `stdout_is_terminal` selects pretty JSON unless --compact/--pretty override.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   bool stdout_is_terminal = false) {
  CLI::App app{"Frobenius and Verschiebung maps on P^3 over binary fields", "frobdyn"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Configuration file (key = value); command-line flags take precedence");
  RunConfig cfg;
  app.add_option("--field-degree", cfg.field_degree, "Degree n of GF(2^n); default modulus when --modulus is absent")
      ->check(CLI::Range(1, 64));
  app.add_option("--modulus", cfg.modulus, "Field modulus in hex including the leading term, e.g. 13");
  app.add_option("--lambda", cfg.lambda, "Theta constants l00,l01,l10,l11 in hex (default 1,1,1,1)");
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-steps", cfg.max_steps, "Orbit step limit (default: |P^3(F)| + 1)");
  app.add_option("--depth", cfg.depth, "Preimage tower depth")->check(CLI::Range(1, 16));
  app.add_option("--threads", cfg.threads, "Census worker threads")->check(CLI::Range(1, 256));
  app.add_option("--convention", cfg.convention, "Lambda under iteration")->check(CLI::IsMember({"fixed", "twisted"}));
  app.add_option("--output", cfg.output, "Write output to this file instead of stdout");
  app.add_flag("--pretty", cfg.pretty, "Indented JSON");
  app.add_flag("--compact", cfg.compact, "Single-line JSON");

  std::string point_arg, which = "verschiebung";
  auto* map_cmd = app.add_subcommand("map", "Apply the Verschiebung or the absolute Frobenius to a point");
  map_cmd->add_option("point", point_arg, "Point, e.g. 1,0,0,1 or (1:0:0:1)")->required();
  map_cmd->add_option("--which", which, "Map to apply")->check(CLI::IsMember({"verschiebung", "frobenius"}));
  auto* pre_cmd = app.add_subcommand("preimage", "Fiber of the Verschiebung over a point");
  pre_cmd->add_option("point", point_arg, "Target point")->required();
  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate the absolute Frobenius from a point");
  orbit_cmd->add_option("point", point_arg, "Start point")->required();
  auto* census_cmd = app.add_subcommand("census", "Classify every point of P^3(F)");
  auto* tower_cmd = app.add_subcommand("tower", "Absolute-Frobenius preimage tower over a point");
  tower_cmd->add_option("point", point_arg, "Start point")->required();
  auto* verify_cmd = app.add_subcommand("verify", "Run the identity and invariant suite");
  auto* witness_cmd = app.add_subcommand("witness", "Surjectivity witness with varying determinant");
  witness_cmd->add_option("point", point_arg, "Target point")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::Success& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::string text;
  int status = kExitOk;
  try {
    const FieldPtr f = cfg.field();
    const ThetaConstants lam = cfg.theta(f);
    const FrobeniusConvention convention = cfg.frobenius_convention();
    const bool pretty = cfg.pretty || (!cfg.compact && stdout_is_terminal && cfg.output.empty());
    auto dump = [&](const Json& j) { return (pretty ? j.dump(2) : j.dump()) + "\n"; };

    if (map_cmd->parsed()) {
      const ProjPoint x = parse_point(f, point_arg);
      const auto y = which == "frobenius" ? absolute_frobenius(lam, x) : verschiebung(lam, x);
      Json j = {{"input", to_json(x)}, {"output", to_json(y)}, {"which", which}, {"status", y ? "OK" : "BASE_LOCUS"}};
      text = dump(j);
    } else if (pre_cmd->parsed()) {
      const ProjPoint a = parse_point(f, point_arg);
      Json j = field_header(f, lam, cfg);
      j["target"] = to_json(a);
      j["fiber"] = to_json(preimage(lam, a));
      text = dump(j);
    } else if (orbit_cmd->parsed()) {
      const ProjPoint x = parse_point(f, point_arg);
      std::size_t steps = cfg.max_steps;
      if (steps == 0) {
        steps = f->degree() <= 16 ? projective_point_count(f->degree()) + 1 : 1000000;
        if (convention == FrobeniusConvention::kTwisted) steps *= f->degree();
      }
      Json j = field_header(f, lam, cfg);
      j["convention"] = to_string(convention);
      j["orbit"] = to_json(iterate_orbit(lam, x, steps, convention));
      text = dump(j);
    } else if (census_cmd->parsed()) {
      const CensusTable t = census(lam, f, cfg.threads, convention);
      text = cfg.format == "csv" ? to_csv(t) : dump(to_json(t, cfg.seed));
    } else if (tower_cmd->parsed()) {
      const ProjPoint x = parse_point(f, point_arg);
      Json j = field_header(f, lam, cfg);
      j["start"] = to_json(x);
      j["tower"] = to_json(preimage_tower(lam, x, cfg.depth));
      text = dump(j);
    } else if (witness_cmd->parsed()) {
      const ProjPoint y = parse_point(f, point_arg);
      const SurjectivityWitness w = surjectivity_witness(lam, y);
      Json j = field_header(f, lam, cfg);
      j["target"] = to_json(y);
      j["shift"] = w.shift.name();
      j["translated"] = to_json(w.translated);
      j["fiber"] = to_json(w.fiber);
      j["verified"] = verify_fiber(lam, w.translated, w.fiber, cfg.seed);
      text = dump(j);
    } else if (verify_cmd->parsed()) {
      VerifyOptions opt;
      opt.seed = cfg.seed;
      const auto results = run_verify_suite(lam, opt);
      std::size_t failed = 0;
      text = "# frobdyn " + std::string(kVersion) + " verify over " + f->describe() + " modulus " + f->modulus_hex() +
             " lambda " + to_json(lam).dump() + " seed " + std::to_string(cfg.seed) + "\n";
      for (const CheckResult& r : results) {
        failed += r.pass ? 0 : 1;
        text += std::string(r.pass ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
      }
      text += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " checks passed\n";
      if (failed != 0) status = kExitVerifyFailed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output << " for writing\n";
      return kExitUsage;
    }
    file << text;
  }
  return status;
}

}  // namespace frobdyn

#endif  // FROBDYN_CLI_HPP
