#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frep/baire_lab.hpp"
#include "frep/lambda_norm.hpp"

namespace frep {

using Json = nlohmann::json;

constexpr double kLoaderUnitarityTol = 1e-8;

// Interchange formats. Loaders throw InputError naming the offending field.
Json element_to_json(const GroupAlgebraElement& f);
GroupAlgebraElement element_from_json(const Json& j);

Json rep_to_json(const Representation& rep);
Representation rep_from_json(const Json& j, double unitarity_tol = kLoaderUnitarityTol);

Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j, const std::string& field = "vector");

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Reports.
Json to_json(const AlgebraNorms& n);
Json to_json(const IrreducibilityReport& r);
Json to_json(const BallEstimate& e);
Json to_json(const NormInterval& iv);
Json to_json(const DeficitReport& r);
Json to_json(const TransporterSolution& s);
Json to_json(const GridReport& r);
Json to_json(const ChainReport& r);
Json to_json(const CyclicityReport& r);
Json to_json(const GenericitySummary& s);
Json to_json(const std::vector<DensityRow>& rows);

/// Deterministic JSON text: object keys sorted, every double printed with 17
/// significant digits, no whitespace beyond a trailing newline.
std::string emit_json(const Json& j);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

/// Header line plus one line per row; numbers use the JSON number format.
std::string emit_csv(const CsvTable& table);

CsvTable genericity_csv(const GenericitySummary& s);
CsvTable density_csv(const std::vector<DensityRow>& rows);
CsvTable grid_csv(const GridReport& r);

}  // namespace frep
