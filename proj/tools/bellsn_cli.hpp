// Copyright 2026 The bellsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 ok, 1 verification failure,
// 2 usage error, 3 resource limit, 4 I/O error.

#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bellsn/bellsn.hpp"

namespace bellsn::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResourceLimit = 3, kIoError = 4 };

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline SquareMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_matrix_text(in);
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell inequalities with n settings per side: LHV bounds, singlet values, optimizers", "bellsn"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 1;
  app.add_option("--threads", threads, "Cap on worker threads for enumeration and restarts")
      ->check(CLI::PositiveNumber);

  auto* bound = app.add_subcommand("bound", "Local-hidden-variable bound of the n-setting inequality");
  std::size_t bound_n = 0;
  std::string bound_method = "closed";
  std::string bound_coeffs;
  bool bound_csv = false;
  bound->add_option("n", bound_n, "Number of settings per side");
  bound->add_option("--method", bound_method, "closed | fast | brute")
      ->check(CLI::IsMember({"closed", "fast", "brute"}));
  bound->add_option("--coeffs", bound_coeffs, "Coefficient matrix file (text format) instead of the sign pattern");
  bound->add_flag("--csv", bound_csv, "Print the result as n,value,method,a_encoding,b_encoding");

  auto* qmax = app.add_subcommand("qmax", "Closed-form singlet maximum and the value at the optimal settings");
  std::size_t qmax_n = 0;
  qmax->add_option("n", qmax_n, "Number of settings per side (>= 2)")->required();

  auto* sweep = app.add_subcommand("sweep", "CSV table of violation ratios over a range of n");
  std::size_t sweep_lo = 0;
  std::size_t sweep_hi = 0;
  std::string sweep_out;
  sweep->add_option("n_min", sweep_lo)->required();
  sweep->add_option("n_max", sweep_hi)->required();
  sweep->add_option("-o,--output", sweep_out, "Output CSV path (default: stdout)");

  auto* optimize = app.add_subcommand("optimize", "Numerically maximize the singlet value");
  std::size_t opt_n = 0;
  std::string opt_mode = "coplanar";
  std::size_t opt_d = 3;
  OptimizerConfig cfg;
  optimize->add_option("n", opt_n, "Number of settings per side")->required();
  optimize->add_option("--mode", opt_mode, "coplanar | seesaw")->check(CLI::IsMember({"coplanar", "seesaw"}));
  optimize->add_option("--d", opt_d, "Bloch-vector dimension for seesaw");
  optimize->add_option("--seed", cfg.seed);
  optimize->add_option("--restarts", cfg.restarts);
  optimize->add_option("--max-iterations", cfg.max_iterations);
  optimize->add_option("--tolerance", cfg.value_tolerance);
  optimize->add_option("--step", cfg.initial_step, "Initial gradient step (radians)");

  auto* verify_cmd = app.add_subcommand("verify", "Run every cross-check up to n_max; exit 1 on any failure");
  std::size_t verify_n = 0;
  VerifyOptions vopt;
  verify_cmd->add_option("n_max", verify_n)->required();
  verify_cmd->add_option("--seed", vopt.optimizer.seed, "Optimizer seed");
  verify_cmd->add_option("--restarts", vopt.optimizer.restarts);

  auto* matrix = app.add_subcommand("matrix", "Print the n-setting sign pattern in matrix text format");
  std::size_t matrix_n = 0;
  matrix->add_option("n", matrix_n)->required();

  auto* eval = app.add_subcommand("evaluate", "Value of a Bell expression on a correlation matrix file");
  std::string eval_corr;
  std::string eval_coeffs;
  eval->add_option("corr", eval_corr, "Correlation matrix file (text format)")->required();
  eval->add_option("--coeffs", eval_coeffs, "Coefficient matrix file (default: sign pattern)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  EnumerationOptions enumeration;
  enumeration.threads = threads;
  cfg.threads = threads;
  vopt.optimizer.threads = threads;
  vopt.enumeration.threads = threads;

  try {
    if (*bound) {
      std::optional<BellCoefficients> coeffs;
      if (!bound_coeffs.empty()) {
        if (bound_method == "closed") {
          throw detail::UsageError("--method closed applies only to the sign pattern; use fast or brute");
        }
        coeffs.emplace(detail::load_matrix(bound_coeffs));
      } else {
        if (bound_n < 1) throw detail::UsageError("bound: n must be a positive integer");
        coeffs.emplace(sn_sign_matrix(bound_n));
      }
      LhvResult r;
      if (bound_method == "closed") r = lhv_result_closed_form(bound_n);
      else if (bound_method == "fast") r = lhv_bound_fast(*coeffs, enumeration);
      else r = lhv_bound_bruteforce(*coeffs, enumeration);
      if (bound_csv) {
        out << to_csv_row(r) << '\n';
      } else {
        out << format_sig15(r.value) << '\n';
        if (r.method != LhvMethod::ClosedForm) {
          out << "witness a=" << r.witness.a_encoding() << " b=" << r.witness.b_encoding() << '\n';
        }
      }
    } else if (*qmax) {
      if (qmax_n < 2) throw detail::UsageError("qmax: n must be at least 2");
      const double closed = quantum_max_closed_form(qmax_n);
      const double at = quantum_value_coplanar(sn_sign_matrix(qmax_n), paper_settings(qmax_n));
      out << "closed_form " << format_sig15(closed) << '\n'
          << "paper_settings " << format_sig15(at) << '\n'
          << "difference " << format_sig15(at - closed) << '\n';
    } else if (*sweep) {
      if (sweep_lo < 2 || sweep_hi < sweep_lo) {
        throw detail::UsageError("sweep: need 2 <= n_min <= n_max");
      }
      std::ostringstream csv;
      csv << kSweepCsvHeader << '\n';
      for (std::size_t n = sweep_lo; n <= sweep_hi; ++n) csv << to_csv_row(violation_ratio(n)) << '\n';
      if (sweep_out.empty()) {
        out << csv.str();
      } else {
        std::ofstream file(sweep_out, std::ios::binary);
        if (!file || !(file << csv.str()) || !file.flush()) {
          throw detail::IoError("cannot write '" + sweep_out + "'");
        }
      }
    } else if (*optimize) {
      if (opt_n < 1) throw detail::UsageError("optimize: n must be a positive integer");
      if (opt_mode == "seesaw" && opt_d < 1) throw detail::UsageError("optimize: --d must be at least 1");
      const auto coeffs = sn_sign_matrix(opt_n);
      const auto r = opt_mode == "coplanar" ? optimize_coplanar(coeffs, cfg) : seesaw(coeffs, opt_d, cfg);
      const double reference =
          opt_n >= 2 ? quantum_max_closed_form(opt_n) : std::numeric_limits<double>::quiet_NaN();
      out << kOptimizationCsvHeader << '\n' << to_csv_row(r, reference) << '\n';
    } else if (*verify_cmd) {
      if (verify_n < 2) throw detail::UsageError("verify: n_max must be at least 2");
      vopt.n_max = verify_n;
      const bool ok = run_verification(vopt, [&](const CheckResult& c) { out << c.label << '\n' << std::flush; });
      out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
      return ok ? kOk : kVerifyFailed;
    } else if (*matrix) {
      if (matrix_n < 1) throw detail::UsageError("matrix: n must be a positive integer");
      write_matrix_text(out, sn_sign_matrix(matrix_n).matrix());
    } else if (*eval) {
      const CorrelationMatrix corr(detail::load_matrix(eval_corr));
      const BellCoefficients coeffs = eval_coeffs.empty() ? sn_sign_matrix(corr.settings())
                                                          : BellCoefficients(detail::load_matrix(eval_coeffs));
      out << format_sig15(evaluate(coeffs, corr)) << '\n';
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const detail::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}

}  // namespace bellsn::cli
