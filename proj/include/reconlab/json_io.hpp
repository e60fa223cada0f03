#pragma once

// File formats and report serialization.
//
//   matrix:       {"n": <int>, "entries": [[...], ...]}          (row-major)
//   pair:         {"A": <matrix>, "B": <matrix>, "sigma": [[...], ...] | null}
//   presentation: {"n": <int>, "columns": [[...], ...]}
//   cone:         {"apex": [...], "generators": [[...], ...], "ambient_dim": <int|null>}
//
// Reals are written with 17 significant digits.

#include "reconlab/geometry_suite.hpp"
#include "reconlab/hypomorphism.hpp"
#include "reconlab/presentation.hpp"
#include "reconlab/solid_angle.hpp"
#include "reconlab/verifiers.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace reconlab {

using Json = nlohmann::ordered_json;

// Canonical text: fixed key order as inserted, %.17g reals, non-finite
// reals as null. indent < 0 gives the compact form.
std::string dump_json(const Json& j, int indent = 2);

// FNV-1a 64 of the compact canonical text, as 16 hex digits.
std::string content_hash(const Json& j);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const SymmetricMatrix& m);
SymmetricMatrix matrix_from_json(const Json& j);

Json to_json(const Permutation& p);
Json to_json(const Hypomorphism& h);
Hypomorphism hypomorphism_from_json(const Json& j);

struct PairFile {
  SymmetricMatrix a;
  SymmetricMatrix b;
  std::optional<Hypomorphism> sigma;
};

Json to_json(const PairFile& p);
PairFile pair_from_json(const Json& j);

Json to_json(const Presentation& u);
Presentation presentation_from_json(const Json& j);

Json to_json(const Cone& c);
Cone cone_from_json(const Json& j);

Json to_json(const HypomorphyCertificate& c);
Json to_json(const SolidAngleEstimate& e);
Json to_json(const GoodPositionReport& r);
Json to_json(const ConstancyReport& r);
Json to_json(const TutteReport& r);
Json to_json(const KernelReport& r);
Json to_json(const TAgreementReport& r);
Json to_json(const EigenspaceReport& r);
Json to_json(const GeometrySuiteReport& r);

// lambda,t,det_a,det_b,residual rows.
std::string grid_to_csv(const std::vector<GridPoint>& points);
std::string samples_to_csv(const std::vector<EigenspaceSample>& samples);

}  // namespace reconlab
