#include "frep/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace frep {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

int int_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

Complex complex_at(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected [re, im]");
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

void emit_value(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        emit_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit_value(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json element_to_json(const GroupAlgebraElement& f) {
  Json terms = Json::array();
  for (const auto& [w, c] : f.terms())
    terms.push_back({{"word", w.to_string()}, {"re", c.real()}, {"im", c.imag()}});
  return {{"k", f.k()}, {"terms", terms}};
}

GroupAlgebraElement element_from_json(const Json& j) {
  const int k = int_at(require(j, "k", "element"), "element.k");
  if (k < 2 || k > kMaxGenerators) throw InputError("element.k: generator count must be in 2..26");
  const Json& terms = require(j, "terms", "element");
  if (!terms.is_array()) throw InputError("element.terms: expected an array");
  GroupAlgebraElement::Terms out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "element.terms[" + std::to_string(i) + "]";
    const Json& w = require(terms[i], "word", where);
    if (!w.is_string()) throw InputError(where + ".word: expected a string");
    Word word;
    try {
      word = Word::parse(w.get<std::string>(), k);
    } catch (const InputError& e) {
      throw InputError(where + ".word: " + e.what());
    }
    const Complex c{number_at(require(terms[i], "re", where), where + ".re"),
                    number_at(require(terms[i], "im", where), where + ".im")};
    if (!out.emplace(word, c).second) throw InputError(where + ".word: duplicate word \"" + word.to_string() + "\"");
  }
  return GroupAlgebraElement(k, std::move(out));
}

Json rep_to_json(const Representation& rep) {
  Json gens = Json::array();
  for (const auto& g : rep.generators()) {
    Json m = Json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back({g(i, c).real(), g(i, c).imag()});
      m.push_back(row);
    }
    gens.push_back(m);
  }
  return {{"k", rep.k()}, {"d", rep.dim()}, {"gens", gens}};
}

Representation rep_from_json(const Json& j, double unitarity_tol) {
  const int k = int_at(require(j, "k", "representation"), "representation.k");
  const int d = int_at(require(j, "d", "representation"), "representation.d");
  if (k < 2 || k > kMaxGenerators) throw InputError("representation.k: generator count must be in 2..26");
  if (d < 1) throw InputError("representation.d: dimension must be >= 1");
  const Json& gens = require(j, "gens", "representation");
  if (!gens.is_array() || static_cast<int>(gens.size()) != k)
    throw InputError("representation.gens: expected " + std::to_string(k) + " matrices");
  std::vector<Mat> mats;
  for (int s = 0; s < k; ++s) {
    const std::string where = "representation.gens[" + std::to_string(s) + "]";
    const Json& m = gens[static_cast<std::size_t>(s)];
    if (!m.is_array() || static_cast<int>(m.size()) != d) throw InputError(where + ": expected " + std::to_string(d) + " rows");
    Mat u(d, d);
    for (int r = 0; r < d; ++r) {
      const Json& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(d) + " entries");
      for (int c = 0; c < d; ++c)
        u(r, c) = complex_at(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    const double defect = unitarity_defect(u);
    if (!(defect <= unitarity_tol * d))
      throw InputError(where + ": matrix is not unitary (||U*U - I||_F = " + std::to_string(defect) + ")");
    mats.push_back(std::move(u));
  }
  return Representation::make(k, std::move(mats), unitarity_tol);
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vec vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of [re, im] pairs");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_at(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << text;
}

Json to_json(const AlgebraNorms& n) { return {{"l1", n.l1}, {"l2", n.l2}, {"radius", n.radius}}; }

Json to_json(const IrreducibilityReport& r) {
  return {{"dim", r.dim},
          {"commutant_dim", r.commutant_dim},
          {"algebra_dim", r.algebra_dim},
          {"algebra_budget", r.algebra_budget},
          {"is_irreducible", r.is_irreducible},
          {"smallest_retained_singular_value", r.smallest_retained_singular_value},
          {"tolerance_used", r.tolerance_used},
          {"input_digest", digest_hex(r.input_digest)}};
}

Json to_json(const BallEstimate& e) {
  return {{"lower", e.lower},
          {"radius", e.radius},
          {"iterations", e.iterations},
          {"ball_words", e.ball_words},
          {"method", to_string(e.method)},
          {"monotone", e.monotone},
          {"last_rayleigh", e.last_rayleigh}};
}

Json to_json(const NormInterval& iv) {
  return {{"lower", iv.lower},  {"upper", iv.upper},       {"ball_radius", iv.ball_radius},
          {"iterations", iv.iterations}, {"haagerup", iv.haagerup}, {"l1", iv.l1},
          {"estimate", to_json(iv.estimate)},
          {"adjoint_estimate", iv.adjoint_estimate ? to_json(*iv.adjoint_estimate) : Json(nullptr)}};
}

Json to_json(const DeficitReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"rep_norm", row.rep_norm},
                    {"lambda_lower", row.lambda_lower},
                    {"lambda_upper", row.lambda_upper},
                    {"deficit", row.deficit},
                    {"excess_over_lower", row.excess_over_lower}});
  return {{"deficit", r.deficit}, {"rows", rows}};
}

Json to_json(const TransporterSolution& s) {
  return {{"f", element_to_json(s.f)},
          {"residual", s.residual},
          {"op_norm_on_rep", s.op_norm_on_rep},
          {"capped_norm", s.capped_norm},
          {"norm_cap", s.norm_cap},
          {"norm_source", to_string(s.norm_source)},
          {"word_budget", s.word_budget},
          {"capped", s.capped}};
}

Json to_json(const GridReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"j", c.source}, {"k", c.target}, {"delta", c.delta}, {"member", c.member}, {"residual", c.residual}});
  return {{"cells", cells}, {"all_members", r.all_members}};
}

Json to_json(const ChainReport& r) {
  return {{"delta", r.delta},
          {"term1", r.term1},
          {"term2", r.term2},
          {"term3", r.term3},
          {"x_j_proj_err", r.x_j_proj_err},
          {"x_k_proj_err", r.x_k_proj_err},
          {"ratio_ok", r.ratio_ok},
          {"x_j_proj_ok", r.x_j_proj_ok},
          {"x_k_proj_ok", r.x_k_proj_ok},
          {"block_cap", r.block_cap},
          {"paper_cap", r.paper_cap},
          {"block_op_norm", r.block_op_norm},
          {"eta_norm", r.eta_norm},
          {"middle_bound", r.middle_bound},
          {"total", r.total},
          {"passed", r.passed},
          {"solution", to_json(r.solution)}};
}

Json to_json(const CyclicityReport& r) {
  return {{"epsilon", r.epsilon},
          {"v", vector_to_json(r.v)},
          {"y", vector_to_json(r.y)},
          {"delta1", r.delta1},
          {"delta2", r.delta2},
          {"delta", r.delta},
          {"chosen_j", r.chosen_j},
          {"chosen_k", r.chosen_k},
          {"v_distance", r.v_distance},
          {"y_distance", r.y_distance},
          {"y_bound", r.y_bound},
          {"f", r.f ? element_to_json(*r.f) : Json()},
          {"witness_residual", r.witness_residual},
          {"op_norm", r.op_norm},
          {"implied_bound", r.implied_bound},
          {"implied_bound_ok", r.implied_bound_ok},
          {"final_error", r.final_error},
          {"passed", r.passed},
          {"failure", r.failure}};
}

Json to_json(const GenericitySummary& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows)
    rows.push_back({{"trial", row.trial},
                    {"seed", row.seed},
                    {"commutant_dim", row.commutant_dim},
                    {"algebra_dim", row.algebra_dim},
                    {"irreducible", row.irreducible}});
  return {{"trials", s.trials}, {"pi_dim", s.pi_dim}, {"irreducible", s.irreducible}, {"rows", rows}};
}

Json to_json(const std::vector<DensityRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n}, {"distance", r.distance}, {"witness_found", r.witness_found}, {"residual", r.residual}});
  return out;
}

std::string emit_json(const Json& j) {
  std::string out;
  emit_value(j, out);
  out += '\n';
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string emit_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += csv_field(table.header[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::string cell;
      if (row[i].is_string())
        cell = csv_field(row[i].get<std::string>());
      else
        emit_value(row[i], cell);
      out += cell;
    }
    out += '\n';
  }
  return out;
}

CsvTable genericity_csv(const GenericitySummary& s) {
  CsvTable t{{"trial", "seed", "commutant_dim", "algebra_dim", "irreducible"}, {}};
  for (const auto& r : s.rows) t.rows.push_back({r.trial, r.seed, r.commutant_dim, r.algebra_dim, r.irreducible ? 1 : 0});
  return t;
}

CsvTable density_csv(const std::vector<DensityRow>& rows) {
  CsvTable t{{"n", "distance", "witness_found", "residual"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.n, r.distance, r.witness_found ? 1 : 0, r.residual});
  return t;
}

CsvTable grid_csv(const GridReport& r) {
  CsvTable t{{"j", "k", "delta", "member", "residual"}, {}};
  for (const auto& c : r.cells) t.rows.push_back({c.source, c.target, c.delta, c.member ? 1 : 0, c.residual});
  return t;
}

}  // namespace frep
