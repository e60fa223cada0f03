// reconlab: command-line front end.
//
// Exit codes: 0 when every check passes, 1 when a check fails or is
// inconclusive, 2 on bad input or usage. Failures print a JSON error object.

#include "reconlab/error.hpp"
#include "reconlab/geometry_suite.hpp"
#include "reconlab/graph6.hpp"
#include "reconlab/hypomorphism.hpp"
#include "reconlab/json_io.hpp"
#include "reconlab/verifiers.hpp"
#include "reconlab/version.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace reconlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string pair_path;
  std::string matrix_path;
  std::string cone_path;
  std::string graph6_path;
  std::string out;
  std::string format = "json";
  std::string grid_lambda;
  std::string grid_t;
  std::string tau;
  std::int64_t samples = 1000000;
  std::uint64_t seed = kDefaultSeed;
  int t_samples = 10;
  int count = 200;
  bool deterministic = false;
  bool monte_carlo = false;
  VerifyOptions verify;
  GeometrySuiteOptions geometry;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "lo:hi:count", evenly spaced; empty means the default 9-point grid.
std::vector<double> parse_grid(const std::string& text, const char* flag) {
  if (text.empty()) return default_grid();
  double lo = 0, hi = 0;
  int count = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &tail) != 3 || count < 1 ||
      (count > 1 && !(lo < hi))) {
    throw UsageError(std::string(flag) + " expects lo:hi:count, got \"" + text + "\"");
  }
  return linspace(lo, hi, count);
}

Permutation parse_permutation(const std::string& text) {
  std::vector<int> image;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      image.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--tau expects comma-separated integers, got \"" + text + "\"");
    }
  }
  return Permutation(std::move(image));
}

class Report {
 public:
  Report(const Options& o, std::string command)
      : opts_(o), start_(std::chrono::steady_clock::now()) {
    body_["command"] = std::move(command);
    body_["version"] = std::string(kVersion);
  }

  void input(const char* role, const std::string& path, const Json& parsed) {
    body_["inputs"][role] = {{"path", path}, {"hash", content_hash(parsed)}};
  }
  void input_text(const char* role, const std::string& path, const std::string& text) {
    body_["inputs"][role] = {{"path", path}, {"hash", content_hash(Json(text))}};
  }
  Json& operator[](const char* key) { return body_[key]; }

  std::string finish(bool pass) {
    body_["pass"] = pass;
    if (!opts_.deterministic) {
      body_["generated_at"] = utc_now();
      body_["elapsed_ms"] = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start_)
                                .count();
    }
    return dump_json(body_);
  }

 private:
  const Options& opts_;
  std::chrono::steady_clock::time_point start_;
  Json body_;
};

Json verify_tolerances(const VerifyOptions& v) {
  return {{"hypomorphism", v.hypomorphism_tol}, {"det", v.det_tol},     {"t", v.t_tol},
          {"eig", v.eig_tol},                  {"gap", v.gap_tol},     {"align", v.align_tol}};
}

void require_json_format(const Options& o, const char* command) {
  if (o.format != "json") {
    throw UsageError(std::string(command) + " only writes json");
  }
}

// Uses the pair's sigma when present, otherwise searches for one.
Hypomorphism resolve_sigma(const PairFile& p, const Options& o) {
  if (p.sigma) return *p.sigma;
  if (auto found = find_hypomorphism(p.a, p.b, o.verify.hypomorphism_tol)) return *found;
  if (o.verify.force) return Hypomorphism::identity(p.a.n());
  throw Error(ErrorKind::NotHypomorphic, "pair has no sigma and none exists");
}

PairFile load_pair(const Options& o, Report& report) {
  if (o.pair_path.empty()) throw UsageError("--pair is required");
  const Json j = read_json_file(o.pair_path);
  report.input("pair", o.pair_path, j);
  return pair_from_json(j);
}

int cmd_angle(const Options& o) {
  if (o.cone_path.empty()) throw UsageError("--cone is required");
  Report report(o, "angle");
  const Json j = read_json_file(o.cone_path);
  report.input("cone", o.cone_path, j);
  const Cone cone = cone_from_json(j);
  const SolidAngleEstimate e = o.monte_carlo ? monte_carlo_fraction(cone, o.samples, o.seed)
                                             : angle_fraction(cone, o.samples, o.seed);
  if (o.format == "csv") {
    emit(o, "fraction,abs_norm,std_error,samples,method,ambient_dim,seed\n" +
                dump_json(Json(e.fraction), -1) + ',' + dump_json(Json(e.abs_norm), -1) + ',' +
                dump_json(Json(e.std_error), -1) + ',' + std::to_string(e.samples) + ',' +
                std::string(to_string(e.method)) + ',' + std::to_string(e.ambient_dim) + ',' +
                std::to_string(e.seed) + '\n');
    return kExitPass;
  }
  report["seed"] = o.seed;
  report["samples"] = o.samples;
  report["result"] = to_json(e);
  emit(o, report.finish(true));
  return kExitPass;
}

int cmd_deck(const Options& o) {
  require_json_format(o, "deck");
  if (o.matrix_path.empty()) throw UsageError("--matrix is required");
  Report report(o, "deck");
  const Json j = read_json_file(o.matrix_path);
  report.input("matrix", o.matrix_path, j);
  const SymmetricMatrix a = matrix_from_json(j);
  Json cards = Json::array();
  for (const auto& card : deck(a)) cards.push_back(to_json(card));
  report["result"] = {{"deck", std::move(cards)}, {"majors", majors_multiset(a)}};
  emit(o, report.finish(true));
  return kExitPass;
}

int cmd_gen_pair(const Options& o) {
  require_json_format(o, "gen-pair");
  if (o.graph6_path.empty()) throw UsageError("--graph6 is required");
  Report report(o, "gen-pair");
  const std::string text = read_text(o.graph6_path);
  report.input_text("graph6", o.graph6_path, text);
  const auto lines = graph6_read_lines(text);
  if (lines.empty()) throw Error(ErrorKind::ParseError, "no graph6 records in " + o.graph6_path);
  const Graph6Record& g = lines.front().record;
  const Permutation tau = o.tau.empty() ? Permutation::rotation(g.n) : parse_permutation(o.tau);
  const GeneratedPair pair = gen_pair(g, tau);
  report["tau"] = to_json(tau);
  report["result"] = to_json(PairFile{pair.a, pair.b, pair.sigma});
  emit(o, report.finish(pair.hypomorphic()));
  return pair.hypomorphic() ? kExitPass : kExitFail;
}

int cmd_verify_tutte(const Options& o) {
  Report report(o, "verify-tutte");
  const PairFile p = load_pair(o, report);
  const Hypomorphism sigma = resolve_sigma(p, o);
  const auto lambdas = parse_grid(o.grid_lambda, "--grid-lambda");
  const auto ts = parse_grid(o.grid_t, "--grid-t");
  const TutteReport tutte = verify_tutte_identity(p.a, p.b, sigma, lambdas, ts, o.verify);
  const ConstancyReport constancy = verify_lambda_constancy(p.a, p.b, sigma, lambdas, ts, o.verify);
  const bool pass = tutte.pass && constancy.pass;
  if (o.format == "csv") {
    emit(o, grid_to_csv(tutte.grid));
    return pass ? kExitPass : kExitFail;
  }
  report["tolerances"] = verify_tolerances(o.verify);
  report["forced"] = o.verify.force;
  report["lambda_grid"] = lambdas;
  report["t_grid"] = ts;
  report["sigma"] = to_json(sigma);
  report["result"] = {{"tutte", to_json(tutte)}, {"lambda_constancy", to_json(constancy)}};
  emit(o, report.finish(pass));
  return pass ? kExitPass : kExitFail;
}

int cmd_verify_main(const Options& o) {
  Report report(o, "verify-main");
  const PairFile p = load_pair(o, report);
  const Hypomorphism sigma = resolve_sigma(p, o);
  const EigenspaceReport main = verify_lowest_eigenspaces(p.a, p.b, sigma, o.t_samples, o.verify);
  Json agreement = Json::array();
  bool t_pass = true;
  if (!main.interval_collapsed) {
    for (double lambda : {main.lambda0, main.lambda0 + 1.0, 4.0 * main.lambda0}) {
      const TAgreementReport t = verify_t_agreement(p.a, p.b, sigma, lambda, o.verify);
      t_pass = t_pass && t.pass;
      agreement.push_back(to_json(t));
    }
  }
  const bool pass = main.pass && main.coherence_pass && t_pass && !main.interval_collapsed;
  if (o.format == "csv") {
    emit(o, samples_to_csv(main.samples));
    return pass ? kExitPass : kExitFail;
  }
  report["tolerances"] = verify_tolerances(o.verify);
  report["forced"] = o.verify.force;
  report["t_samples"] = o.t_samples;
  report["sigma"] = to_json(sigma);
  report["result"] = {{"eigenspaces", to_json(main)}, {"t_agreement", std::move(agreement)}};
  emit(o, report.finish(pass));
  return pass ? kExitPass : kExitFail;
}

int cmd_verify_geometry(const Options& o) {
  require_json_format(o, "verify-geometry");
  Report report(o, "verify-geometry");
  const GeometrySuiteReport r = run_geometry_suite(o.seed, o.count, o.geometry);
  report["seed"] = o.seed;
  report["tolerances"] = {{"residual", o.geometry.residual_tol}, {"eig", o.geometry.eig_tol}};
  report["result"] = to_json(r);
  emit(o, report.finish(r.pass));
  return r.pass ? kExitPass : kExitFail;
}

int cmd_ingest(const Options& o) {
  require_json_format(o, "ingest");
  if (o.graph6_path.empty()) throw UsageError("--graph6 is required");
  const std::string text = read_text(o.graph6_path);
  const auto lines = graph6_read_lines(text);
  Json summary = Json::array();
  Json matrices = Json::array();
  if (!o.out.empty()) fs::create_directories(o.out);
  for (const auto& line : lines) {
    const Json m = to_json(line.record.adjacency);
    if (o.out.empty()) {
      matrices.push_back(m);
      continue;
    }
    char name[32];
    std::snprintf(name, sizeof name, "line%05d.json", line.line_number);
    const fs::path path = fs::path(o.out) / name;
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path.string());
    f << dump_json(m) << '\n';
    summary.push_back({{"line", line.line_number}, {"n", line.record.n}, {"file", path.string()}});
  }
  Json report = {{"command", "ingest"},
                 {"version", std::string(kVersion)},
                 {"inputs", {{"graph6", {{"path", o.graph6_path}, {"hash", content_hash(Json(text))}}}}},
                 {"records", lines.size()}};
  if (o.out.empty()) {
    report["matrices"] = std::move(matrices);
  } else {
    report["files"] = std::move(summary);
  }
  report["pass"] = true;
  std::cout << dump_json(report) << '\n';
  return kExitPass;
}

void print_error(std::string_view kind, const std::string& message,
                 std::optional<long> offset = std::nullopt, const char* offset_name = "offset") {
  Json err = {{"kind", std::string(kind)}, {"message", message}};
  if (offset) err[offset_name] = *offset;
  std::cout << dump_json(Json{{"error", std::move(err)}}) << '\n';
}

void add_pair_flags(CLI::App* sub, Options& o) {
  sub->add_option("--pair", o.pair_path, "Pair JSON {A, B, sigma}")->required();
  sub->add_option("--tol-hypomorphism", o.verify.hypomorphism_tol, "Relabeling residual tolerance")
      ->check(CLI::NonNegativeNumber);
  sub->add_flag("--force", o.verify.force, "Run even when sigma is not a valid hypomorphism");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for hypomorphic symmetric matrices and solid angles", "reconlab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--out", o.out, "Write the report here instead of stdout (a directory for ingest)");
  app.add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--deterministic", o.deterministic, "Omit timestamps so reports are byte-identical");

  auto* angle = app.add_subcommand("angle", "Solid-angle fraction of a cone");
  angle->add_option("--cone", o.cone_path, "Cone JSON")->required();
  angle->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  angle->add_option("--seed", o.seed, "Sampling seed");
  angle->add_flag("--monte-carlo", o.monte_carlo, "Sample even when a closed form exists");

  auto* deck_cmd = app.add_subcommand("deck", "Deck and majors of a matrix");
  deck_cmd->add_option("--matrix", o.matrix_path, "Matrix JSON")->required();

  auto* gen = app.add_subcommand("gen-pair", "Relabel the first graph6 record into a pair");
  gen->add_option("--graph6", o.graph6_path, "graph6 file")->required();
  gen->add_option("--tau", o.tau, "Relabeling as comma-separated images (default: rotation)");

  auto* tutte = app.add_subcommand("verify-tutte", "Shifted-determinant identity and lambda constancy");
  add_pair_flags(tutte, o);
  tutte->add_option("--grid-lambda", o.grid_lambda, "lo:hi:count (default -4:4:9)");
  tutte->add_option("--grid-t", o.grid_t, "lo:hi:count (default -4:4:9)");
  tutte->add_option("--tol-det", o.verify.det_tol, "Relative determinant tolerance")
      ->check(CLI::NonNegativeNumber);

  auto* main_cmd = app.add_subcommand("verify-main", "Lowest eigenspaces of A + tJ and B + tJ");
  add_pair_flags(main_cmd, o);
  main_cmd->add_option("--t-samples", o.t_samples, "Sampled t values")->check(CLI::PositiveNumber);
  main_cmd->add_option("--tol-eig", o.verify.eig_tol, "Eigenvalue tolerance (times scale)")
      ->check(CLI::NonNegativeNumber);
  main_cmd->add_option("--tol-gap", o.verify.gap_tol, "Eigengap floor (times scale)")
      ->check(CLI::NonNegativeNumber);
  main_cmd->add_option("--tol-align", o.verify.align_tol, "1 - |cos| tolerance")
      ->check(CLI::NonNegativeNumber);
  main_cmd->add_option("--tol-t", o.verify.t_tol, "t(lambda) agreement tolerance")
      ->check(CLI::NonNegativeNumber);

  auto* geometry = app.add_subcommand("verify-geometry", "Seeded presentation and solid-angle invariants");
  geometry->add_option("--count", o.count, "Random instances")->check(CLI::PositiveNumber);
  geometry->add_option("--seed", o.seed, "Suite seed");
  geometry->add_option("--tol-eig", o.geometry.eig_tol, "Definiteness-boundary tolerance")
      ->check(CLI::NonNegativeNumber);
  geometry->add_option("--tol-residual", o.geometry.residual_tol, "Scale-relative residual tolerance")
      ->check(CLI::NonNegativeNumber);

  auto* ingest = app.add_subcommand("ingest", "Convert graph6 lines to matrix JSON");
  ingest->add_option("--graph6", o.graph6_path, "graph6 file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("Usage", e.what());
    return kExitInput;
  }

  try {
    if (*angle) return cmd_angle(o);
    if (*deck_cmd) return cmd_deck(o);
    if (*gen) return cmd_gen_pair(o);
    if (*tutte) return cmd_verify_tutte(o);
    if (*main_cmd) return cmd_verify_main(o);
    if (*geometry) return cmd_verify_geometry(o);
    if (*ingest) return cmd_ingest(o);
  } catch (const UsageError& e) {
    print_error("Usage", e.what());
    return kExitInput;
  } catch (const Error& e) {
    // Line-oriented readers report line numbers in offset().
    const bool by_line = e.kind() == ErrorKind::ParseError && !o.graph6_path.empty();
    print_error(to_string(e.kind()), e.what(), e.offset(), by_line ? "line" : "offset");
    return kExitInput;
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return kExitInput;
  }
  return kExitInput;
}
