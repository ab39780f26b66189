// hadkernel: subsampled-Hadamard kernel witness experiments.
//
// Subcommands: verify (invariant suites), sweep (CSV phase-transition scan),
// witness (single-trial JSON report), moments (second-moment JSON report).
// Exit codes: 0 all-pass, 1 suite failure, 2 configuration error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hadkernel/cli.hpp"

namespace {

int emit(const std::string& out_path, const std::function<int(std::ostream&)>& writer) {
  if (out_path.empty()) return writer(std::cout);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: out: cannot open '" << out_path << "' for writing\n";
    return 2;
  }
  return writer(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subsampled-Hadamard kernel witness experiments"};
  app.require_subcommand(1);

  // verify
  hadkernel::cli::VerifyConfig vc;
  std::string verify_out;
  std::string verify_format = "json";
  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite and report pass/fail");
  verify->add_option("--suite", vc.suite,
                     "lemma-ortho | grassmannian | intersection-range | covariance | t-bound | "
                     "moments | all");
  verify->add_option("--n-max", vc.n_max, "exhaustive range for the small-n suites");
  verify->add_option("--n", vc.n, "instance n for t-bound / moments");
  verify->add_option("--k", vc.k, "instance k for t-bound / moments");
  verify->add_option("--p-hat", vc.p_hat, "row-inclusion probability for moments");
  verify->add_option("--c", vc.c, "bound constant");
  verify->add_option("--seed", vc.seed, "seed for the randomized spot checks");
  verify->add_option("--out", verify_out, "output path (default stdout)");
  verify->add_option("--format", verify_format, "json");

  // sweep
  hadkernel::cli::SweepConfig sc;
  std::string sweep_out;
  std::string grid_text;
  double sweep_p_hat = -1.0;
  CLI::App* sweep = app.add_subcommand("sweep", "scan a p-hat grid, one CSV row per point");
  sweep->add_option("--n", sc.n, "exponent of N = 2^n")->required();
  sweep->add_option("--k", sc.k, "exponent of K = 2^k")->required();
  sweep->add_option("--p-hat-grid", grid_text, "lo:hi:points[,log|,lin]");
  sweep->add_option("--p-hat", sweep_p_hat, "single grid point");
  sweep->add_option("--trials", sc.trials, "Monte-Carlo trials per grid point")->required();
  sweep->add_option("--seed", sc.seed, "base seed");
  sweep->add_option("--c", sc.c, "bound constant");
  sweep->add_option("--threads", sc.threads, "worker threads (output is thread-count invariant)");
  sweep->add_option("--variance-mode", sc.variance_mode, "auto | exact | bound");
  sweep->add_option("--format", sc.format, "csv | json");
  sweep->add_option("--out", sweep_out, "output path (default stdout)");

  // witness
  hadkernel::cli::WitnessConfig wc;
  std::string witness_out;
  std::string witness_format = "json";
  CLI::App* witness = app.add_subcommand("witness", "sample one Q, search, and emit JSON");
  witness->add_option("--n", wc.n, "exponent of N = 2^n")->required();
  witness->add_option("--k", wc.k, "exponent of K = 2^k")->required();
  witness->add_option("--p-hat", wc.p_hat, "row-inclusion probability")->required();
  witness->add_option("--c", wc.c, "bound constant");
  witness->add_option("--seed", wc.seed, "seed");
  witness->add_option("--trial-index", wc.trial_index, "trial counter");
  witness->add_flag("--split", wc.split, "also search at k+1 and emit the y/z split");
  witness->add_flag("--exact-count", wc.exact_count, "count all witnesses exactly");
  witness->add_option("--budget", wc.budget, "enumeration budget for --exact-count");
  witness->add_option("--out", witness_out, "output path (default stdout)");
  witness->add_option("--format", witness_format, "json");

  // moments
  hadkernel::cli::MomentsConfig mc;
  std::string moments_out;
  std::string moments_format = "json";
  CLI::App* moments = app.add_subcommand("moments", "closed-form moment report as JSON");
  moments->add_option("--n", mc.n, "exponent of N = 2^n")->required();
  moments->add_option("--k", mc.k, "exponent of K = 2^k")->required();
  moments->add_option("--p-hat", mc.p_hat, "row-inclusion probability")->required();
  moments->add_option("--c", mc.c, "bound constant");
  moments->add_option("--variance-mode", mc.variance_mode, "auto | exact | bound");
  moments->add_option("--out", moments_out, "output path (default stdout)");
  moments->add_option("--format", moments_format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      if (verify_format != "json")
        throw hadkernel::cli::config_error("format: verify reports are json only");
      return emit(verify_out, [&](std::ostream& os) { return hadkernel::cli::run_verify(vc, os); });
    }
    if (*sweep) {
      if (!grid_text.empty() && sweep_p_hat >= 0.0)
        throw hadkernel::cli::config_error("p-hat: give either --p-hat or --p-hat-grid, not both");
      if (!grid_text.empty()) {
        sc.grid = hadkernel::cli::parse_grid(grid_text);
      } else if (sweep_p_hat >= 0.0) {
        sc.grid = hadkernel::cli::GridSpec{sweep_p_hat, sweep_p_hat, 1, false};
      } else {
        throw hadkernel::cli::config_error("p-hat-grid: required (or a single --p-hat)");
      }
      return emit(sweep_out, [&](std::ostream& os) { return hadkernel::cli::run_sweep(sc, os); });
    }
    if (*witness) {
      if (witness_format != "json")
        throw hadkernel::cli::config_error("format: witness reports are json only");
      return emit(witness_out, [&](std::ostream& os) { return hadkernel::cli::run_witness(wc, os); });
    }
    if (*moments) {
      if (moments_format != "json")
        throw hadkernel::cli::config_error("format: moments reports are json only");
      return emit(moments_out, [&](std::ostream& os) { return hadkernel::cli::run_moments(mc, os); });
    }
  } catch (const hadkernel::cli::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hadkernel::dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hadkernel::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
