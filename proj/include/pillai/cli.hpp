#ifndef PILLAI_CLI_HPP
#define PILLAI_CLI_HPP

// Command-line front end. Exit codes: 0 all checks pass, 1 verification
// mismatch or failed reduction, 2 precision failure, 3 invalid arguments.

#include "pillai/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace pillai {

enum ExitCode : int { kExitPass = 0, kExitMismatch = 1, kExitPrecision = 2, kExitUsage = 3 };

namespace detail {

inline void add_run_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--digits", cfg.digits, "decimal digits of working precision")->envname("PILLAI_DIGITS");
  sub->add_option("--n-max", cfg.n_max, "largest index n1 of the small-solution search")->envname("PILLAI_N_MAX");
  sub->add_option("--rounds", cfg.rounds, "maximum number of reduction rounds")->envname("PILLAI_ROUNDS");
  sub->add_option("--lll-delta", cfg.lll_delta, "LLL Lovasz parameter")->envname("PILLAI_LLL_DELTA");
  sub->add_option("--c-growth", cfg.c_growth, "factor applied to C on each LLL retry")->envname("PILLAI_C_GROWTH");
  sub->add_option("--max-retries", cfg.max_retries, "LLL attempts per instance")->envname("PILLAI_MAX_RETRIES");
  sub->add_option("--format", cfg.output_format, "json or md")
      ->envname("PILLAI_FORMAT")
      ->check(CLI::IsMember({"json", "md"}));
  sub->add_option("--out", cfg.output_path, "write the report here instead of stdout")->envname("PILLAI_OUT");
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path);
  if (!f) throw InvalidArgument("cannot write " + cfg.output_path);
  f << text;
}

inline int exit_code(const VerificationReport& rep) {
  if (rep.precision_failure) return kExitPrecision;
  return rep.passed() ? kExitPass : kExitMismatch;
}

struct Session {
  RunConfig cfg;
  PrecisionContext ctx;
  std::optional<AlgebraicConstants> consts;

  const AlgebraicConstants& constants() {
    if (!consts) consts = compute_constants(ctx);
    return *consts;
  }
};

inline void do_constants(Session& s, VerificationReport& rep) {
  rep.constants = constants_section(s.constants());
  rep.verdict.push_back(verdict_constants(*rep.constants));
}

inline void do_audit(Session& s, VerificationReport& rep) {
  rep.audits = audit_section(audit_constants(s.constants()));
  rep.verdict.push_back(verdict_audits(rep.audits));
}

inline void do_small_solutions(Session& s, VerificationReport& rep, const std::string& csv_path) {
  const auto records = find_representations(s.cfg.n_max);
  rep.small_solutions = records;
  rep.multi_solution_groups = group_section(detect_multi_solutions(records));
  for (auto& v : verdict_small_solutions(s.cfg.n_max, records, rep.multi_solution_groups)) {
    rep.verdict.push_back(std::move(v));
  }
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw InvalidArgument("cannot write " + csv_path);
    write_csv(f, records);
  }
}

inline void do_initial_bound(Session& s, VerificationReport& rep) {
  ScopedPrecision guard(s.ctx);
  const Real bound = compute_initial_bound(s.constants(), s.ctx);
  rep.initial_bound = format_sci(bound, 3);
  rep.verdict.push_back(verdict_initial_bound(bound));
}

inline void do_reduce(Session& s, VerificationReport& rep) {
  ScopedPrecision guard(s.ctx);
  const ReductionRun run = run_reduction(s.cfg.rounds, s.constants(), s.ctx, reduction_options(s.cfg));
  add_reduction(rep, run);
}

}  // namespace detail

/// Runs one subcommand; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Verification of the Pillai-type bounds for Tribonacci numbers", "pillai"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::string csv_path;
  auto* constants = app.add_subcommand("constants", "compute alpha, a and the conjugates; check the norms");
  auto* audit = app.add_subcommand("audit", "recompute the constants C100..C107");
  auto* small = app.add_subcommand("small-solutions", "exhaustive search for n1 <= n-max");
  auto* initial = app.add_subcommand("initial-bound", "solve n = C107 (log n)^8");
  auto* reduce = app.add_subcommand("reduce", "reduction rounds A..D");
  auto* verify = app.add_subcommand("verify-all", "every stage, with the full verification report");
  for (auto* sub : {constants, audit, small, initial, reduce, verify}) detail::add_run_options(sub, cfg);
  small->add_option("--csv", csv_path, "also write the records as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    validate(cfg);
    detail::Session s{cfg, make_context(cfg.digits), std::nullopt};
    ScopedPrecision guard(s.ctx);
    VerificationReport rep;
    rep.config = cfg;

    if (*constants) {
      detail::do_constants(s, rep);
    } else if (*audit) {
      detail::do_audit(s, rep);
    } else if (*small) {
      detail::do_small_solutions(s, rep, csv_path);
      if (cfg.output_format == "json") {
        detail::emit(cfg, records_to_json(*rep.small_solutions).dump(2) + "\n", out);
        return detail::exit_code(rep);
      }
    } else if (*initial) {
      detail::do_initial_bound(s, rep);
    } else if (*reduce) {
      detail::do_reduce(s, rep);
    } else if (*verify) {
      detail::do_constants(s, rep);
      detail::do_audit(s, rep);
      detail::do_small_solutions(s, rep, csv_path);
      detail::do_reduce(s, rep);
    }
    detail::emit(cfg, render_report(rep, cfg.output_format), out);
    if (rep.failure) err << "run stopped: " << *rep.failure << "\n";
    return detail::exit_code(rep);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const PrecisionFailure& e) {
    err << "precision failure: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const ReductionFailure& e) {
    err << "reduction failure: " << e.what() << "\n";
    return kExitMismatch;
  }
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace pillai

#endif  // PILLAI_CLI_HPP
