// Copyright 2026 The ccauchy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end. All inputs are JSON files, outputs are CSV or
// canonical JSON on stdout (or --output). Exit codes: 0 success, 1 a
// verification or closure test failed, 2 parse error, 3 invalid parameter,
// 4 dimension mismatch.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccauchy/cauchy.hpp"
#include "ccauchy/errors.hpp"
#include "ccauchy/io.hpp"
#include "ccauchy/mobius.hpp"
#include "ccauchy/stats.hpp"
#include "ccauchy/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalidParameter = 3;
constexpr int kExitDimensionMismatch = 4;

struct RunConfig {
  std::string dist_path;
  std::string map_path;
  std::string points_path;
  std::string output_path;
  std::string only;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::uint64_t verify_seed = 17;
  double alpha = 0.01;
  std::size_t permutations = 499;
};

// Wraps a parse failure of an input file so main can map it to exit code 2.
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseFailure("malformed JSON in '" + path + "': " + e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ccauchy::InvalidArgument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_sample(const RunConfig& cfg) {
  const ccauchy::ComplexCauchy d = ccauchy::dist_from_json(parse_json_file(cfg.dist_path));
  if (cfg.n < 1) throw ccauchy::InvalidArgument("sample: --n must be at least 1");
  Output out(cfg.output_path);
  ccauchy::write_samples_csv(out.stream(), ccauchy::sample(d, cfg.n, cfg.seed), d.p());
  return kExitOk;
}

int cmd_density(const RunConfig& cfg) {
  const ccauchy::ComplexCauchy d = ccauchy::dist_from_json(parse_json_file(cfg.dist_path));
  std::vector<ccauchy::CVec> points;
  if (cfg.points_path.empty()) {
    points = ccauchy::read_points_csv(std::cin, d.p());
  } else {
    std::ifstream in(cfg.points_path);
    if (!in) throw ParseFailure("cannot open '" + cfg.points_path + "'");
    points = ccauchy::read_points_csv(in, d.p());
  }
  Output out(cfg.output_path);
  out.stream() << ccauchy::samples_csv_header(d.p()) << ",log_density\n";
  for (const ccauchy::CVec& z : points) {
    for (std::size_t j = 0; j < d.p(); ++j) {
      if (j) out.stream() << ",";
      out.stream() << ccauchy::format_double(z[j].real()) << ","
                   << ccauchy::format_double(z[j].imag());
    }
    out.stream() << "," << ccauchy::format_double(ccauchy::log_density(d, z)) << "\n";
  }
  return kExitOk;
}

int cmd_pushforward(const RunConfig& cfg) {
  const ccauchy::ComplexCauchy d = ccauchy::dist_from_json(parse_json_file(cfg.dist_path));
  const ccauchy::MobiusMap m = ccauchy::map_from_json(parse_json_file(cfg.map_path));
  if (m.p() != d.p()) {
    throw ccauchy::DimensionMismatch("pushforward: distribution has p=" + std::to_string(d.p()) +
                                     " but map has p=" + std::to_string(m.p()));
  }
  Output out(cfg.output_path);
  out.stream() << ccauchy::dist_to_json(ccauchy::pushforward(d, m)) << "\n";
  return kExitOk;
}

int cmd_embed(const RunConfig& cfg) {
  const ccauchy::ComplexCauchy d = ccauchy::dist_from_json(parse_json_file(cfg.dist_path));
  Output out(cfg.output_path);
  out.stream() << ccauchy::t2_to_json(ccauchy::real_embedding(d)) << "\n";
  return kExitOk;
}

int cmd_closure_test(const RunConfig& cfg) {
  const ccauchy::ComplexCauchy d = ccauchy::dist_from_json(parse_json_file(cfg.dist_path));
  const ccauchy::MobiusMap m = ccauchy::map_from_json(parse_json_file(cfg.map_path));
  if (m.p() != d.p()) {
    throw ccauchy::DimensionMismatch("closure-test: distribution has p=" + std::to_string(d.p()) +
                                     " but map has p=" + std::to_string(m.p()));
  }
  const ccauchy::GofReport report =
      ccauchy::closure_experiment(d, m, cfg.n, cfg.seed, cfg.alpha, cfg.permutations);
  Output out(cfg.output_path);
  out.stream() << ccauchy::gof_report_to_json(report) << "\n";
  return report.passed ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const RunConfig& cfg) {
  ccauchy::VerifyOptions opt;
  opt.only = cfg.only;
  opt.seed = cfg.verify_seed;
  opt.alpha = cfg.alpha;
  const std::vector<ccauchy::CheckRow> rows = ccauchy::run_verification(opt);
  Output out(cfg.output_path);
  out.stream() << ccauchy::verification_csv(rows);
  bool all_passed = !rows.empty();
  for (const ccauchy::CheckRow& r : rows) all_passed = all_passed && r.passed;
  return all_passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy distributions on complex p-space: sampling, densities, "
               "fractional-linear pushforwards, and statistical verification"};
  app.require_subcommand(1);

  RunConfig cfg;

  CLI::App* sample = app.add_subcommand("sample", "draw seeded samples as CSV");
  sample->add_option("--dist", cfg.dist_path, "distribution JSON file")->required();
  sample->add_option("--n", cfg.n, "number of draws");
  sample->add_option("--seed", cfg.seed, "RNG seed");
  sample->add_option("--output", cfg.output_path, "output file (default stdout)");

  CLI::App* density = app.add_subcommand("density", "evaluate log-density at CSV points");
  density->add_option("--dist", cfg.dist_path, "distribution JSON file")->required();
  density->add_option("--points", cfg.points_path, "points CSV (default stdin)");
  density->add_option("--output", cfg.output_path, "output file (default stdout)");

  CLI::App* pushforward = app.add_subcommand("pushforward",
                                             "parameters of the mapped distribution as JSON");
  pushforward->add_option("--dist", cfg.dist_path, "distribution JSON file")->required();
  pushforward->add_option("--map", cfg.map_path, "map JSON file")->required();
  pushforward->add_option("--output", cfg.output_path, "output file (default stdout)");

  CLI::App* embed = app.add_subcommand("embed", "real t2 embedding as JSON");
  embed->add_option("--dist", cfg.dist_path, "distribution JSON file")->required();
  embed->add_option("--output", cfg.output_path, "output file (default stdout)");

  CLI::App* closure = app.add_subcommand("closure-test",
                                         "two-sample check that mapping commutes with pushforward");
  closure->add_option("--dist", cfg.dist_path, "distribution JSON file")->required();
  closure->add_option("--map", cfg.map_path, "map JSON file")->required();
  closure->add_option("--n", cfg.n, "draws per side (>= 500)");
  closure->add_option("--seed", cfg.seed, "RNG seed");
  closure->add_option("--alpha", cfg.alpha, "test level")->check(CLI::Range(1e-9, 0.999999999));
  closure->add_option("--permutations", cfg.permutations, "permutation count (>= 199)");
  closure->add_option("--output", cfg.output_path, "output file (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite, emit summary CSV");
  verify->add_option("--only", cfg.only, "restrict to groups whose name contains this string");
  verify->add_option("--seed", cfg.verify_seed, "master seed")->capture_default_str();
  verify->add_option("--alpha", cfg.alpha, "test level")->check(CLI::Range(1e-9, 0.999999999));
  verify->add_option("--output", cfg.output_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (sample->parsed()) return cmd_sample(cfg);
    if (density->parsed()) return cmd_density(cfg);
    if (pushforward->parsed()) return cmd_pushforward(cfg);
    if (embed->parsed()) return cmd_embed(cfg);
    if (closure->parsed()) return cmd_closure_test(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ccauchy::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimensionMismatch;
  } catch (const ccauchy::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidParameter;
  }
  return kExitOk;
}
