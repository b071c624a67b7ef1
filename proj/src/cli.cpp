#include "frep/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "frep/random.hpp"

namespace frep {

namespace {

enum class KnobType { Int, Seed, Real, Text, IntList };

struct Knob {
  std::string name;
  KnobType type;
  std::string help;
  std::optional<Json> fallback;  // nullopt: required
};

Knob required(std::string name, KnobType type, std::string help) {
  return {std::move(name), type, std::move(help), std::nullopt};
}
Knob optional_knob(std::string name, KnobType type, std::string help, Json fallback) {
  return {std::move(name), type, std::move(help), std::move(fallback)};
}

struct Context {
  Json cfg;
  Json digests = Json::object();
  std::optional<CsvTable> csv;
};

struct Command {
  std::string group;
  std::string name;
  std::string help;
  std::vector<Knob> knobs;
  std::function<Json(Context&)> handler;
};

std::string flag_of(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '_', '-');
  return "--" + s;
}

std::string env_of(const std::string& name) {
  std::string s = "FREP_" + name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

Json parse_raw(const Knob& knob, const std::string& raw) {
  const std::string where = "field '" + knob.name + "'";
  try {
    std::size_t used = 0;
    switch (knob.type) {
      case KnobType::Int: {
        const long long v = std::stoll(raw, &used);
        if (used != raw.size()) break;
        return v;
      }
      case KnobType::Seed: {
        if (!raw.empty() && raw[0] == '-') break;
        const unsigned long long v = std::stoull(raw, &used, 0);
        if (used != raw.size()) break;
        return static_cast<std::uint64_t>(v);
      }
      case KnobType::Real: {
        const double v = std::stod(raw, &used);
        if (used != raw.size()) break;
        return v;
      }
      case KnobType::Text:
        return raw;
      case KnobType::IntList: {
        Json arr = Json::array();
        std::size_t pos = 0;
        while (pos <= raw.size()) {
          const std::size_t comma = raw.find(',', pos);
          const std::string item = raw.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
          std::size_t u = 0;
          arr.push_back(std::stoll(item, &u));
          if (u != item.size()) throw std::invalid_argument(item);
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        return arr;
      }
    }
  } catch (const std::exception&) {
  }
  throw InputError(where + ": cannot parse \"" + raw + "\"");
}

const Json& field(const Context& ctx, const std::string& name) {
  auto it = ctx.cfg.find(name);
  if (it == ctx.cfg.end() || it->is_null()) throw InputError("missing required field '" + name + "'");
  return *it;
}

long long get_int(const Context& ctx, const std::string& name) {
  const Json& j = field(ctx, name);
  if (!j.is_number_integer()) throw InputError("field '" + name + "': expected an integer");
  return j.get<long long>();
}

int get_count(const Context& ctx, const std::string& name, long long min_value) {
  const long long v = get_int(ctx, name);
  if (v < min_value || v > 1'000'000'000) throw InputError("field '" + name + "': value " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

std::uint64_t get_seed(const Context& ctx, const std::string& name) {
  const Json& j = field(ctx, name);
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  throw InputError("field '" + name + "': expected a nonnegative 64-bit integer");
}

double get_real(const Context& ctx, const std::string& name) {
  const Json& j = field(ctx, name);
  if (!j.is_number()) throw InputError("field '" + name + "': expected a number");
  return j.get<double>();
}

double get_positive(const Context& ctx, const std::string& name) {
  const double v = get_real(ctx, name);
  if (!(v > 0.0)) throw InputError("field '" + name + "': must be positive");
  return v;
}

std::string get_text(const Context& ctx, const std::string& name) {
  const Json& j = field(ctx, name);
  if (!j.is_string()) throw InputError("field '" + name + "': expected a string");
  return j.get<std::string>();
}

std::vector<int> get_int_list(const Context& ctx, const std::string& name) {
  const Json& j = field(ctx, name);
  if (!j.is_array()) throw InputError("field '" + name + "': expected a list of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError("field '" + name + "': expected a list of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

int get_k(const Context& ctx) { return get_count(ctx, "k", 2); }

Representation get_rep(Context& ctx, const std::string& name) {
  Representation rep = [&] {
    try {
      return load_rep_source(get_text(ctx, name), get_k(ctx));
    } catch (const InputError& e) {
      throw InputError("field '" + name + "': " + e.what());
    }
  }();
  ctx.digests[name] = digest_hex(digest(rep));
  return rep;
}

GroupAlgebraElement get_element(Context& ctx, const std::string& name) {
  const std::string path = get_text(ctx, name);
  try {
    GroupAlgebraElement f = element_from_json(load_json_file(path));
    ctx.digests[name] = digest_hex(std::hash<std::string>{}(emit_json(element_to_json(f))));
    return f;
  } catch (const InputError& e) {
    throw InputError("field '" + name + "': " + e.what());
  }
}

Vec get_vector(Context& ctx, const std::string& name) {
  const std::string path = get_text(ctx, name);
  return vector_from_json(load_json_file(path), "field '" + name + "'");
}

BallOptions get_ball(const Context& ctx) {
  BallOptions opt;
  opt.radius = get_count(ctx, "radius", 0);
  opt.iters = get_count(ctx, "iters", 1);
  opt.seed = get_seed(ctx, "seed");
  opt.method = ball_method_from_string(get_text(ctx, "method"));
  opt.threads = static_cast<unsigned>(get_count(ctx, "threads", 0));
  return opt;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

const Knob kGens = optional_knob("k", KnobType::Int, "generator count", 2);
const Knob kThreads = optional_knob("threads", KnobType::Int, "worker threads (results do not depend on it)", 1);
const Knob kNormSource =
    optional_knob("norm_source", KnobType::Text, "cap norm: rep-norm or lambda-interval-upper", "rep-norm");

std::vector<Command> commands() {
  std::vector<Command> c;

  // algebra
  c.push_back({"algebra", "convolve", "convolution f * g",
               {required("f", KnobType::Text, "element JSON"), required("g", KnobType::Text, "element JSON"),
                optional_knob("prune", KnobType::Real, "drop |c| <= prune", 0.0)},
               [](Context& ctx) {
                 const auto f = get_element(ctx, "f");
                 const auto g = get_element(ctx, "g");
                 const double prune = get_real(ctx, "prune");
                 if (prune < 0.0) throw InputError("field 'prune': must be nonnegative");
                 return element_to_json(convolve(f, g).pruned(prune));
               }});
  c.push_back({"algebra", "involution", "f^*", {required("f", KnobType::Text, "element JSON")},
               [](Context& ctx) { return element_to_json(involution(get_element(ctx, "f"))); }});
  c.push_back({"algebra", "norms", "l1, l2 and radius", {required("f", KnobType::Text, "element JSON")},
               [](Context& ctx) { return to_json(norms(get_element(ctx, "f"))); }});

  // rep
  c.push_back({"rep", "make", "validate a representation source",
               {required("source", KnobType::Text, "pauli | trivial:<d> | haar:<d>:<seed> | path"), kGens},
               [](Context& ctx) { return rep_to_json(get_rep(ctx, "source")); }});
  c.push_back({"rep", "tensor", "tensor product",
               {required("a", KnobType::Text, "representation"), required("b", KnobType::Text, "representation"), kGens},
               [](Context& ctx) { return rep_to_json(tensor(get_rep(ctx, "a"), get_rep(ctx, "b"))); }});
  c.push_back({"rep", "dsum", "direct sum",
               {required("a", KnobType::Text, "representation"), required("b", KnobType::Text, "representation"), kGens},
               [](Context& ctx) { return rep_to_json(direct_sum(get_rep(ctx, "a"), get_rep(ctx, "b"))); }});
  c.push_back({"rep", "extend", "rep (+) identity",
               {required("rep", KnobType::Text, "representation"), required("total_dim", KnobType::Int, "dimension"), kGens},
               [](Context& ctx) {
                 return rep_to_json(extend_with_identity(get_rep(ctx, "rep"), get_count(ctx, "total_dim", 1)));
               }});
  c.push_back({"rep", "haar", "Haar random representation",
               {required("dim", KnobType::Int, "dimension"), required("seed", KnobType::Seed, "RNG seed"), kGens},
               [](Context& ctx) {
                 return rep_to_json(random_haar_rep(get_k(ctx), get_count(ctx, "dim", 1), get_seed(ctx, "seed")));
               }});
  c.push_back({"rep", "distance", "strong-topology surrogate distance",
               {required("a", KnobType::Text, "representation"), required("b", KnobType::Text, "representation"),
                required("probe_seed", KnobType::Seed, "probe seed"),
                optional_knob("probes", KnobType::Int, "probe count", kDefaultProbeCount), kGens},
               [](Context& ctx) {
                 const auto a = get_rep(ctx, "a");
                 const auto b = get_rep(ctx, "b");
                 const auto probes = make_probes(get_seed(ctx, "probe_seed"), a.dim(), get_count(ctx, "probes", 1));
                 return Json{{"distance", rep_distance(a, b, probes)}};
               }});

  // irr
  c.push_back({"irr", "test", "irreducibility report",
               {required("rep", KnobType::Text, "representation"),
                optional_knob("tol", KnobType::Real, "relative rank tolerance", kDefaultRankTol),
                optional_knob("budget", KnobType::Int, "word budget for the algebra dimension (-1: 2d)", -1), kGens},
               [](Context& ctx) {
                 const auto rep = get_rep(ctx, "rep");
                 const long long budget = get_int(ctx, "budget");
                 return to_json(is_irreducible(rep, get_positive(ctx, "tol"),
                                               budget < 0 ? 2 * rep.dim() : static_cast<int>(budget)));
               }});
  c.push_back({"irr", "commutant", "orthonormal commutant basis",
               {required("rep", KnobType::Text, "representation"),
                optional_knob("tol", KnobType::Real, "relative rank tolerance", kDefaultRankTol), kGens},
               [](Context& ctx) {
                 const auto basis = commutant_basis(get_rep(ctx, "rep"), get_positive(ctx, "tol"));
                 Json mats = Json::array();
                 for (const auto& m : basis) mats.push_back(matrix_to_json(m));
                 return Json{{"commutant_dim", basis.size()}, {"basis", mats}};
               }});
  c.push_back({"irr", "cyclic", "cyclic defect of a vector",
               {required("rep", KnobType::Text, "representation"), required("v", KnobType::Text, "vector JSON"),
                required("max_len", KnobType::Int, "word budget"),
                optional_knob("tol", KnobType::Real, "relative rank tolerance", kDefaultRankTol), kGens},
               [](Context& ctx) {
                 const auto rep = get_rep(ctx, "rep");
                 return Json{{"defect", cyclic_defect(rep, get_vector(ctx, "v"), get_count(ctx, "max_len", 0),
                                                      get_positive(ctx, "tol"))}};
               }});

  // norm
  const std::vector<Knob> ball_knobs{required("radius", KnobType::Int, "ball radius"),
                                     optional_knob("iters", KnobType::Int, "power iterations", kDefaultPowerIters),
                                     required("seed", KnobType::Seed, "start-vector seed"),
                                     optional_knob("method", KnobType::Text, "auto | full | radial", "auto"), kThreads};
  {
    auto knobs = ball_knobs;
    knobs.insert(knobs.begin(), required("f", KnobType::Text, "element JSON"));
    c.push_back({"norm", "interval", "certified interval for ||lambda(f)||", knobs, [](Context& ctx) {
                   return to_json(lambda_norm_interval(get_element(ctx, "f"), get_ball(ctx)));
                 }});
  }
  {
    auto knobs = ball_knobs;
    knobs.insert(knobs.begin(), {required("rep", KnobType::Text, "representation"),
                                 required("fs", KnobType::Text, "JSON array of elements"), kGens});
    c.push_back({"norm", "deficit", "weak containment deficit", knobs, [](Context& ctx) {
                   const auto rep = get_rep(ctx, "rep");
                   const Json arr = load_json_file(get_text(ctx, "fs"));
                   if (!arr.is_array()) throw InputError("field 'fs': expected a JSON array of elements");
                   std::vector<GroupAlgebraElement> fs;
                   for (const auto& e : arr) fs.push_back(element_from_json(e));
                   return to_json(weak_containment_deficit(rep, fs, get_ball(ctx)));
                 }});
  }

  // lab
  c.push_back({"lab", "genericity", "Monte Carlo irreducibility of eta (x) pi",
               {required("eta", KnobType::Text, "representation"), required("pi_dim", KnobType::Int, "dimension of pi"),
                required("trials", KnobType::Int, "trial count"), required("seed", KnobType::Seed, "master seed"),
                optional_knob("tol", KnobType::Real, "relative rank tolerance", kDefaultRankTol), kThreads, kGens},
               [](Context& ctx) {
                 const auto eta = get_rep(ctx, "eta");
                 const auto s = monte_carlo_genericity(eta, get_count(ctx, "pi_dim", 1), get_count(ctx, "trials", 1),
                                                       get_seed(ctx, "seed"), get_positive(ctx, "tol"),
                                                       static_cast<unsigned>(get_count(ctx, "threads", 0)));
                 ctx.csv = genericity_csv(s);
                 return to_json(s);
               }});
  c.push_back({"lab", "control", "irreducibility of eta (x) pi for a fixed pi",
               {required("eta", KnobType::Text, "representation"), required("pi", KnobType::Text, "representation"),
                optional_knob("tol", KnobType::Real, "relative rank tolerance", kDefaultRankTol), kGens},
               [](Context& ctx) {
                 const auto eta = get_rep(ctx, "eta");
                 const auto pi = get_rep(ctx, "pi");
                 return to_json(is_irreducible(tensor(eta, pi), get_positive(ctx, "tol")));
               }});
  c.push_back({"lab", "chain", "finite-dimensional approximation chain",
               {required("eta", KnobType::Text, "representation"), required("pi_n", KnobType::Text, "block representation"),
                required("total_dim", KnobType::Int, "dimension of M"), required("delta", KnobType::Real, "delta"),
                required("probe_seed", KnobType::Seed, "probe seed"),
                optional_knob("leak", KnobType::Real, "relative probe mass outside the block", 1e-4),
                optional_knob("source", KnobType::Int, "probe index j", 0),
                optional_knob("target", KnobType::Int, "probe index k", 1),
                optional_knob("word_budget", KnobType::Int, "word budget", 4), kGens},
               [](Context& ctx) {
                 const auto eta = get_rep(ctx, "eta");
                 const auto pi_n = get_rep(ctx, "pi_n");
                 const int total = get_count(ctx, "total_dim", 1);
                 const int j = get_count(ctx, "source", 0), k = get_count(ctx, "target", 0);
                 if (total < pi_n.dim()) throw InputError("field 'total_dim': smaller than dim pi_n");
                 const double leak = get_real(ctx, "leak");
                 if (leak < 0.0) throw InputError("field 'leak': must be nonnegative");
                 const auto probes =
                     make_block_probes(get_seed(ctx, "probe_seed"), eta.dim(), total, pi_n.dim(), leak, std::max(j, k) + 1);
                 return to_json(verify_lemma1_chain(eta, pi_n, total, probes[static_cast<std::size_t>(j)],
                                                    probes[static_cast<std::size_t>(k)], get_positive(ctx, "delta"),
                                                    get_count(ctx, "word_budget", 0)));
               }});
  c.push_back({"lab", "cyclicity", "cyclicity chain trials",
               {required("eta", KnobType::Text, "representation"), required("pi", KnobType::Text, "representation"),
                required("epsilon", KnobType::Real, "epsilon"), required("seed", KnobType::Seed, "trial seed"),
                required("probe_seed", KnobType::Seed, "probe seed"),
                optional_knob("probes", KnobType::Int, "probe count", 64),
                optional_knob("trials", KnobType::Int, "trial count", 100),
                optional_knob("perturbation", KnobType::Real, "relative distance of v, y from probes", 1e-4),
                optional_knob("word_budget", KnobType::Int, "word budget", 4), kNormSource, kGens},
               [](Context& ctx) {
                 const auto eta = get_rep(ctx, "eta");
                 const auto pi = get_rep(ctx, "pi");
                 const auto probes = make_probes(get_seed(ctx, "probe_seed"), eta.dim() * pi.dim(), get_count(ctx, "probes", 1));
                 CyclicityTrialConfig cfg;
                 cfg.epsilon = get_positive(ctx, "epsilon");
                 cfg.trials = get_count(ctx, "trials", 1);
                 cfg.seed = get_seed(ctx, "seed");
                 cfg.perturbation = get_real(ctx, "perturbation");
                 cfg.word_budget = get_count(ctx, "word_budget", 0);
                 cfg.source = norm_source_from_string(get_text(ctx, "norm_source"));
                 const auto reports = cyclicity_trials(eta, pi, probes, cfg);
                 Json rows = Json::array();
                 CsvTable csv{{"trial", "passed", "final_error", "delta1", "delta2", "chosen_j", "chosen_k", "v_distance",
                               "y_distance", "failure"},
                              {}};
                 int passed = 0;
                 for (std::size_t t = 0; t < reports.size(); ++t) {
                   const auto& r = reports[t];
                   passed += r.passed ? 1 : 0;
                   rows.push_back(to_json(r));
                   csv.rows.push_back({t, r.passed ? 1 : 0, r.final_error, r.delta1, r.delta2, r.chosen_j, r.chosen_k,
                                       r.v_distance, r.y_distance, r.failure});
                 }
                 ctx.csv = csv;
                 return Json{{"trials", reports.size()}, {"passed", passed}, {"reports", rows}};
               }});
  c.push_back({"lab", "density", "approximation by pi_n (+) Id",
               {required("pi", KnobType::Text, "representation"), required("eta", KnobType::Text, "representation"),
                required("dims", KnobType::IntList, "block sizes, e.g. 1,2,3"),
                required("probe_seed", KnobType::Seed, "probe seed"),
                optional_knob("delta", KnobType::Real, "delta", 0.2), optional_knob("source", KnobType::Int, "probe index j", 0),
                optional_knob("target", KnobType::Int, "probe index k", 1),
                optional_knob("metric_probes", KnobType::Int, "probes for the metric", kDefaultProbeCount),
                optional_knob("tensor_probes", KnobType::Int, "probes in the tensor space", 8),
                optional_knob("word_budget", KnobType::Int, "word budget", 4), kNormSource, kGens},
               [](Context& ctx) {
                 const auto pi = get_rep(ctx, "pi");
                 const auto eta = get_rep(ctx, "eta");
                 DensityConfig cfg;
                 cfg.dims_to_try = get_int_list(ctx, "dims");
                 cfg.probe_seed = get_seed(ctx, "probe_seed");
                 cfg.delta = get_positive(ctx, "delta");
                 cfg.source = static_cast<std::size_t>(get_count(ctx, "source", 0));
                 cfg.target = static_cast<std::size_t>(get_count(ctx, "target", 0));
                 cfg.metric_probes = get_count(ctx, "metric_probes", 1);
                 cfg.tensor_probes = get_count(ctx, "tensor_probes", 1);
                 cfg.word_budget = get_count(ctx, "word_budget", 0);
                 cfg.source_norm = norm_source_from_string(get_text(ctx, "norm_source"));
                 const auto rows = density_probe(pi, eta, cfg);
                 ctx.csv = density_csv(rows);
                 return to_json(rows);
               }});
  c.push_back({"lab", "membership", "U-membership (with f) or finite conjunction of V-memberships",
               {required("eta", KnobType::Text, "representation"), required("pi", KnobType::Text, "representation"),
                required("probe_seed", KnobType::Seed, "probe seed"),
                optional_knob("probes", KnobType::Int, "probe count", 8),
                optional_knob("sources", KnobType::IntList, "probe indices j", Json::array({0})),
                optional_knob("targets", KnobType::IntList, "probe indices k", Json::array({1})),
                optional_knob("levels", KnobType::Int, "dyadic deltas 1/2 .. 2^-levels", 4),
                optional_knob("f", KnobType::Text, "element JSON (U-query)", nullptr),
                optional_knob("delta", KnobType::Real, "delta for a U-query", nullptr),
                optional_knob("word_budget", KnobType::Int, "word budget", 4), kNormSource, kGens},
               [](Context& ctx) {
                 const auto eta = get_rep(ctx, "eta");
                 const auto pi = get_rep(ctx, "pi");
                 const auto probes = make_probes(get_seed(ctx, "probe_seed"), eta.dim() * pi.dim(), get_count(ctx, "probes", 1));
                 const auto sources = get_int_list(ctx, "sources");
                 const auto targets = get_int_list(ctx, "targets");
                 if (!ctx.cfg["f"].is_null()) {
                   if (sources.size() != 1 || targets.size() != 1)
                     throw InputError("field 'f': a U-query takes exactly one source and one target");
                   MembershipQuery q{static_cast<std::size_t>(sources[0]), static_cast<std::size_t>(targets[0]),
                                     get_positive(ctx, "delta"), get_element(ctx, "f")};
                   return Json{{"member", membership_U(eta, pi, probes, q)}};
                 }
                 std::vector<std::pair<std::size_t, std::size_t>> pairs;
                 for (int j : sources)
                   for (int k : targets) {
                     if (j < 0 || k < 0) throw InputError("field 'sources'/'targets': indices must be nonnegative");
                     pairs.emplace_back(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
                   }
                 const auto grid = membership_grid(eta, pi, probes, pairs, dyadic_delta_grid(get_count(ctx, "levels", 1)),
                                                   get_count(ctx, "word_budget", 0),
                                                   norm_source_from_string(get_text(ctx, "norm_source")));
                 ctx.csv = grid_csv(grid);
                 return to_json(grid);
               }});
  return c;
}

std::vector<std::string> normalize_args(std::vector<std::string> args) {
  static const std::vector<std::string> lab_names{"genericity", "control", "chain", "cyclicity", "density", "membership"};
  if (!args.empty() && std::find(lab_names.begin(), lab_names.end(), args[0]) != lab_names.end())
    args.insert(args.begin(), "lab");
  if (!args.empty() && args[0] == "norm" && (args.size() < 2 || args[1].rfind("-", 0) == 0) &&
      std::find(args.begin(), args.end(), "--help") == args.end())
    args.insert(args.begin() + 1, "interval");
  return args;
}

void check_writable(const std::string& path) {
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw InputError("output path \"" + path + "\" is not writable");
}

}  // namespace

Representation load_rep_source(const std::string& source, int k) {
  if (source == "pauli") return pauli_rep(k);
  auto parts = [&] {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
      const auto colon = source.find(':', pos);
      out.push_back(source.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos));
      if (colon == std::string::npos) break;
      pos = colon + 1;
    }
    return out;
  }();
  auto to_int = [&](const std::string& s) -> unsigned long long {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("bad number \"" + s + "\" in representation source \"" + source + "\"");
    return v;
  };
  if (parts[0] == "trivial" && parts.size() == 2) return trivial_rep(k, static_cast<int>(to_int(parts[1])));
  if (parts[0] == "haar" && parts.size() == 3)
    return random_haar_rep(k, static_cast<int>(to_int(parts[1])), to_int(parts[2]));
  const Representation rep = rep_from_json(load_json_file(source));
  if (rep.k() != k) throw InputError("\"" + source + "\" has k = " + std::to_string(rep.k()) + ", expected " + std::to_string(k));
  return rep;
}

int guarded(const std::string& what, const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const InputError& e) {
    err << what << ": input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const AssertionFailure& e) {
    err << what << ": assertion failure: " << e.what() << '\n';
    return kExitAssertion;
  }
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> args = normalize_args(raw_args);
  CLI::App app{"Free-group representation laboratory", "frep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const std::vector<Command> cmds = commands();
  struct Bound {
    const Command* cmd;
    CLI::App* sub;
    std::map<std::string, std::string> raw;
    std::string config, out_path, csv_path;
  };
  std::vector<Bound> bound(cmds.size());
  std::map<std::string, CLI::App*> groups;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const Command& cmd = cmds[i];
    CLI::App*& group = groups[cmd.group];
    if (!group) {
      group = app.add_subcommand(cmd.group, cmd.group + " commands");
      group->require_subcommand(1);
    }
    Bound& b = bound[i];
    b.cmd = &cmd;
    b.sub = group->add_subcommand(cmd.name, cmd.help);
    b.sub->add_option("--config", b.config, "JSON config; keys are the option names with underscores");
    b.sub->add_option("--out", b.out_path, "write the JSON report here instead of stdout");
    b.sub->add_option("--csv", b.csv_path, "write the per-trial CSV summary here");
    for (const Knob& knob : cmd.knobs) {
      std::string help = knob.help;
      if (knob.fallback && !knob.fallback->is_null()) help += " (default " + knob.fallback->dump() + ")";
      static const char* const type_names[] = {"INT", "UINT64", "REAL", "TEXT", "INT,..."};
      b.sub->add_option(flag_of(knob.name), b.raw[knob.name], help)
          ->envname(env_of(knob.name))
          ->type_name(type_names[static_cast<int>(knob.type)]);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << "frep: " << msg.str();
    if (msg.str().empty()) err << e.what() << '\n';
    return kExitInput;
  }

  for (Bound& b : bound) {
    if (!b.sub->parsed()) continue;
    const Command& cmd = *b.cmd;
    return guarded("frep " + cmd.group + " " + cmd.name, [&] {
      Context ctx;
      ctx.cfg = Json::object();
      if (!b.config.empty()) {
        Json file = load_json_file(b.config);
        if (!file.is_object()) throw InputError(b.config + ": config must be a JSON object");
        // a previous report is accepted as a config: its echo is re-run
        if (file.contains("config") && file["config"].is_object() && file.contains("command")) file = file["config"];
        for (auto it = file.begin(); it != file.end(); ++it) {
          const bool known = std::any_of(cmd.knobs.begin(), cmd.knobs.end(), [&](const Knob& k) { return k.name == it.key(); });
          if (!known) throw InputError(b.config + ": unknown field '" + it.key() + "' for " + cmd.group + " " + cmd.name);
          ctx.cfg[it.key()] = it.value();
        }
      }
      for (const Knob& knob : cmd.knobs) {
        if (b.sub->get_option(flag_of(knob.name))->count() > 0) ctx.cfg[knob.name] = parse_raw(knob, b.raw[knob.name]);
        if (!ctx.cfg.contains(knob.name)) {
          if (!knob.fallback) throw InputError("missing required field '" + knob.name + "' (" + flag_of(knob.name) + ")");
          ctx.cfg[knob.name] = *knob.fallback;
        }
      }
      if (!b.out_path.empty()) check_writable(b.out_path);
      if (!b.csv_path.empty()) check_writable(b.csv_path);

      const auto start = std::chrono::steady_clock::now();
      Json result = cmd.handler(ctx);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      Json report{{"command", cmd.group + " " + cmd.name},
                  {"config", ctx.cfg},
                  {"result", std::move(result)},
                  {"input_digests", ctx.digests},
                  {"version", kVersion},
                  {"wall_time_s", wall}};
      const std::string text = emit_json(report);
      if (b.out_path.empty())
        out << text;
      else
        write_text_file(b.out_path, text);
      if (!b.csv_path.empty()) {
        if (!ctx.csv) throw InputError(cmd.group + " " + cmd.name + " has no CSV summary");
        write_text_file(b.csv_path, emit_csv(*ctx.csv));
      }
    }, err);
  }
  err << "frep: no command given\n";
  return kExitInput;
}

}  // namespace frep
