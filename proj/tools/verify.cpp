// verify: batch verification of the subadjoint-variety structure results.
//
//   verify --case B3 --checks all
//   verify --case all --checks weights --seed 7 --format json
//   verify --case E8 --checks prolong,spencer --heavy --mode modp-certify

#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "liegrade/error.hpp"
#include "liegrade/verifier.hpp"

namespace {

constexpr int kUsageError = 3;

void print_registry(const liegrade::RegistryConfig& config) {
  for (const auto& d : liegrade::list_cases(config)) {
    std::cout << d.case_id;
    if (d.excluded) {
      std::cout << "  EXCLUDED (" << d.reason << ")  " << d.notes << "\n";
      continue;
    }
    std::cout << "  dim V=" << d.dim_V << " dim l=" << d.dim_l << " dim l1=" << d.dim_l1 << " g=(";
    for (std::size_t i = 0; i < d.g_dims.size(); ++i) std::cout << (i ? "," : "") << d.g_dims[i];
    std::cout << ") I={";
    for (std::size_t i = 0; i < d.marked_roots.size(); ++i) std::cout << (i ? "," : "") << d.marked_roots[i];
    std::cout << "}  " << d.notes << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of graded Lie algebra structure for subadjoint varieties"};
  app.set_version_flag("--version", liegrade::library_version());

  std::string case_arg = "all";
  std::string checks_arg = "all";
  std::string mode_arg;
  std::string format_arg = "text";
  std::string out_path;
  bool heavy = false;
  bool list = false;
  bool timings = false;
  std::uint64_t seed = 0;
  int rank_ceiling = 8;
  int kmin = -7;
  unsigned jobs = 1;

  app.add_option("--case", case_arg, "case id (B3, D5, F4, E7, ...) or 'all'");
  app.add_option("--checks", checks_arg,
                 "comma-separated groups: jacobi,forms,xvv,gstructure,prolong,spencer,weights or 'all'");
  app.add_flag("--heavy", heavy, "run the E-series prolongation and Spencer solvers");
  app.add_option("--mode", mode_arg, "exact | modp | modp-certify (default: exact for B/D/F4, modp-certify for E)")
      ->check(CLI::IsMember({"exact", "modp", "modp-certify"}));
  app.add_option("--seed", seed, "seed for sampling and prime selection");
  app.add_option("--rank-ceiling", rank_ceiling, "largest rank of the B and D series for --case all")
      ->check(CLI::Range(4, 64));
  app.add_option("--kmin", kmin, "lowest degree k for the Spencer and weight tables")->check(CLI::Range(-64, -1));
  app.add_option("--format", format_arg, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_flag("--list", list, "print the case registry and exit");
  app.add_option("--jobs", jobs, "worker threads for --case all")->check(CLI::Range(1u, 256u));
  app.add_flag("--timings", timings, "record per-check wall time (output is no longer reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  liegrade::RegistryConfig config;
  config.rank_ceiling = rank_ceiling;
  if (list) {
    print_registry(config);
    return 0;
  }

  std::vector<liegrade::VerificationReport> reports;
  try {
    const auto checks = liegrade::parse_check_set(checks_arg);
    liegrade::VerifyOptions options;
    if (!mode_arg.empty()) options.mode = liegrade::parse_solve_mode(mode_arg);
    options.heavy = heavy;
    options.seed = seed;
    options.kmin = kmin;
    options.timings = timings;

    const auto ids = case_arg == "all" ? liegrade::active_case_ids(config) : std::vector<std::string>{case_arg};
    reports = liegrade::run_many(ids, checks, options, jobs);
  } catch (const liegrade::ExcludedCase& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsageError;
  } catch (const liegrade::InvalidLabel& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsageError;
  } catch (const liegrade::Error& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string doc = liegrade::emit(reports, liegrade::parse_format(format_arg));
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "verify: cannot write " << out_path << "\n";
      return kUsageError;
    }
    out << doc;
  }
  return liegrade::exit_code(reports);
}
