#include "reconlab/json_io.hpp"

#include "reconlab/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace reconlab {

namespace {

void write_real(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        write(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line so matrices read as rows.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_structured();
      });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_real(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_input(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double real(const Json& j) {
  if (!j.is_number()) bad_input("expected a number, got " + j.dump());
  return j.get<double>();
}

Matrix rows_to_matrix(const Json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) bad_input(std::string(what) + " must be a non-empty array");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows[0].is_array() ? rows[0].size() : 0);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      bad_input(std::string(what) + " rows must be arrays of equal length");
    }
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = real(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json grid_json(const std::vector<GridPoint>& points) {
  Json out = Json::array();
  for (const auto& p : points) {
    out.push_back({{"lambda", p.lambda}, {"t", p.t}, {"det_a", p.det_a},
                   {"det_b", p.det_b}, {"residual", p.residual}});
  }
  return out;
}

std::string csv_real(double v) {
  std::string s;
  write_real(s, v);
  return s;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::string content_hash(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_json(j, -1)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what(), static_cast<long>(e.byte));
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) bad_input("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = real(j[k]);
  return v;
}

Json to_json(const SymmetricMatrix& m) {
  return {{"n", m.n()}, {"entries", matrix_rows(m.entries())}};
}

SymmetricMatrix matrix_from_json(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer()) bad_input("\"n\" must be an integer");
  Matrix m = rows_to_matrix(field(j, "entries"), "entries");
  if (m.rows() != n.get<long>() || m.cols() != m.rows()) {
    bad_input("entries are not " + n.dump() + "x" + n.dump());
  }
  return SymmetricMatrix(std::move(m));
}

Json to_json(const Permutation& p) { return Json(p.image()); }

Json to_json(const Hypomorphism& h) {
  Json out = Json::array();
  for (const auto& s : h.sigmas) out.push_back(to_json(s));
  return out;
}

Hypomorphism hypomorphism_from_json(const Json& j) {
  if (!j.is_array()) bad_input("sigma must be an array of permutations");
  Hypomorphism h;
  for (const auto& p : j) {
    if (!p.is_array()) bad_input("each sigma_i must be an array");
    std::vector<int> image;
    for (const auto& e : p) {
      if (!e.is_number_integer()) bad_input("permutation entries must be integers");
      image.push_back(e.get<int>());
    }
    h.sigmas.emplace_back(std::move(image));
  }
  return h;
}

Json to_json(const PairFile& p) {
  return {{"A", to_json(p.a)},
          {"B", to_json(p.b)},
          {"sigma", p.sigma ? to_json(*p.sigma) : Json(nullptr)}};
}

PairFile pair_from_json(const Json& j) {
  PairFile p{matrix_from_json(field(j, "A")), matrix_from_json(field(j, "B")), std::nullopt};
  if (j.contains("sigma") && !j.at("sigma").is_null()) {
    p.sigma = hypomorphism_from_json(j.at("sigma"));
  }
  return p;
}

Json to_json(const Presentation& u) {
  return {{"n", u.n()}, {"columns", matrix_rows(u.columns().transpose())}};
}

Presentation presentation_from_json(const Json& j) {
  const Json& n = field(j, "n");
  Matrix cols = rows_to_matrix(field(j, "columns"), "columns");
  if (!n.is_number_integer() || cols.rows() != n.get<long>()) {
    bad_input("\"columns\" must hold n vectors");
  }
  return Presentation(cols.transpose());
}

Json to_json(const Cone& c) {
  return {{"apex", vector_to_json(c.apex)},
          {"generators", matrix_rows(c.generators.transpose())},
          {"ambient_dim", c.ambient_dim ? Json(*c.ambient_dim) : Json(nullptr)}};
}

Cone cone_from_json(const Json& j) {
  Cone c;
  c.apex = vector_from_json(field(j, "apex"));
  c.generators = rows_to_matrix(field(j, "generators"), "generators").transpose();
  if (c.generators.rows() != c.apex.size()) {
    bad_input("generators and apex have different dimensions");
  }
  if (j.contains("ambient_dim") && !j.at("ambient_dim").is_null()) {
    if (!j.at("ambient_dim").is_number_integer()) bad_input("ambient_dim must be an integer");
    c.ambient_dim = j.at("ambient_dim").get<int>();
  }
  return c;
}

Json to_json(const HypomorphyCertificate& c) {
  return {{"valid", c.valid},
          {"worst_residual", c.worst_residual},
          {"failing_index", c.failing_index ? Json(*c.failing_index) : Json(nullptr)}};
}

Json to_json(const SolidAngleEstimate& e) {
  return {{"fraction", e.fraction},
          {"abs_norm", e.abs_norm},
          {"std_error", e.std_error},
          {"samples", e.samples},
          {"seed", e.seed},
          {"method", std::string(to_string(e.method))},
          {"ambient_dim", e.ambient_dim}};
}

Json to_json(const GoodPositionReport& r) {
  const char* reason = r.reason == GoodPositionReason::Good              ? "Good"
                       : r.reason == GoodPositionReason::KernelSignMixed ? "KernelSignMixed"
                                                                         : "RankNotNMinus1";
  return {{"rank", r.rank},
          {"kernel_vector", r.kernel_vector ? vector_to_json(*r.kernel_vector) : Json(nullptr)},
          {"is_good", r.is_good},
          {"reason", reason}};
}

Json to_json(const ConstancyReport& r) {
  return {{"pass", r.pass},
          {"max_residual", r.max_residual},
          {"scale", r.scale},
          {"points", grid_json(r.points)}};
}

Json to_json(const TutteReport& r) {
  return {{"pass", r.pass},
          {"max_abs_diff", r.max_abs_diff},
          {"scale", r.scale},
          {"grid", grid_json(r.grid)}};
}

Json to_json(const KernelReport& r) {
  return {{"pass", r.pass},
          {"kernel_a", vector_to_json(r.kernel_a)},
          {"kernel_b", vector_to_json(r.kernel_b)},
          {"alignment", r.alignment},
          {"volume_alignment", r.volume_alignment}};
}

Json to_json(const TAgreementReport& r) {
  return {{"pass", r.pass},     {"lambda", r.lambda}, {"lambda0_a", r.lambda0_a},
          {"lambda0_b", r.lambda0_b}, {"t_a", r.t_a},   {"t_b", r.t_b},
          {"diff", r.diff}};
}

Json to_json(const EigenspaceReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"t", s.t},
                       {"lambda_n_a", s.lambda_n_a},
                       {"lambda_n_b", s.lambda_n_b},
                       {"eigengap_a", s.eigengap_a},
                       {"eigengap_b", s.eigengap_b},
                       {"eigvec_alignment", s.eigvec_alignment},
                       {"scale", s.scale},
                       {"pass", s.pass}});
  }
  Json coherence = Json::array();
  for (const auto& c : r.coherence) {
    coherence.push_back({{"lambda", c.lambda}, {"t", c.t}, {"lowest_a", c.lowest_a},
                         {"lowest_b", c.lowest_b}, {"good_a", c.good_a},
                         {"good_b", c.good_b}, {"pass", c.pass}});
  }
  return {{"pass", r.pass},
          {"lambda0", r.lambda0},
          {"t_interval", {r.t_interval.first, r.t_interval.second}},
          {"interval_collapsed", r.interval_collapsed},
          {"lambda_grid", r.lambda_grid},
          {"t_of_lambda", r.t_of_lambda_values},
          {"samples", std::move(samples)},
          {"coherence_pass", r.coherence_pass},
          {"coherence", std::move(coherence)}};
}

Json to_json(const GeometrySuiteReport& r) {
  Json invariants = Json::array();
  for (const auto& t : r.invariants) {
    invariants.push_back({{"name", t.name},
                          {"passed", t.passed},
                          {"failed", t.failed},
                          {"first_failure", t.first_failure < 0 ? Json(nullptr) : Json(t.first_failure)}});
  }
  return {{"pass", r.pass}, {"seed", r.seed}, {"count", r.count}, {"invariants", std::move(invariants)}};
}

std::string grid_to_csv(const std::vector<GridPoint>& points) {
  std::string out = "lambda,t,det_a,det_b,residual\n";
  for (const auto& p : points) {
    out += csv_real(p.lambda) + ',' + csv_real(p.t) + ',' + csv_real(p.det_a) + ',' +
           csv_real(p.det_b) + ',' + csv_real(p.residual) + '\n';
  }
  return out;
}

std::string samples_to_csv(const std::vector<EigenspaceSample>& samples) {
  std::string out = "t,lambda_n_a,lambda_n_b,eigengap_a,eigengap_b,eigvec_alignment,pass\n";
  for (const auto& s : samples) {
    out += csv_real(s.t) + ',' + csv_real(s.lambda_n_a) + ',' + csv_real(s.lambda_n_b) + ',' +
           csv_real(s.eigengap_a) + ',' + csv_real(s.eigengap_b) + ',' +
           csv_real(s.eigvec_alignment) + ',' + (s.pass ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace reconlab
