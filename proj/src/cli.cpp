// Copyright 2026 The setcoh Authors
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

#include "setcoh/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "setcoh/basis_search.hpp"
#include "setcoh/configs.hpp"
#include "setcoh/games.hpp"
#include "setcoh/io.hpp"
#include "setcoh/projective.hpp"
#include "setcoh/robustness.hpp"

namespace setcoh::cli {

namespace {

using io::Json;

constexpr const char* kVersion = "1.0.0";
constexpr double kPi = 3.14159265358979323846;

struct Common {
  std::string input;
  // Empty selects the command default (rmax for setcoh, r1 for configs).
  std::string measure;
  int restarts = 50;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string output;
  int threads = 0;
  int n = 0;
  std::string frame = "auto";
  bool exact = false;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSolverFailure:
    case ErrorCode::kDecompositionStall:
      return kExitSolver;
    default:
      return kExitValidation;
  }
}

// --threads, else SETCOH_THREADS, else the OpenMP default.
int resolve_threads(int flag) {
  int threads = flag;
  if (threads <= 0) {
    if (const char* env = std::getenv("SETCOH_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
  return std::max(threads, 0);
}

SearchOptions search_options(const Common& c) {
  SearchOptions o;
  o.restarts = c.restarts;
  o.seed = c.seed;
  o.value_tolerance = c.tol;
  o.threads = c.threads;
  return o;
}

Json result_envelope(const std::string& command, const Common& c) {
  Json doc = io::envelope("result", 0);
  doc.erase("dim");
  doc["tool"] = "setcoh";
  doc["version"] = kVersion;
  Json echo;
  echo["name"] = command;
  if (!c.input.empty()) echo["input"] = c.input;
  doc["command"] = std::move(echo);
  return doc;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(io::matrix_to_json(m));
  return out;
}

Json certificate_to_json(const RobustnessCertificate& c) {
  Json out;
  out["value"] = c.value;
  out["argmax"] = c.argmax;
  out["gap"] = c.gap;
  out["primal_residual"] = c.primal_residual;
  out["dual_residual"] = c.dual_residual;
  out["noise_residual"] = c.noise_residual;
  if (!c.outcome_counts.empty()) out["outcome_counts"] = c.outcome_counts;
  out["witness"] = matrices_to_json(c.witness);
  out["noise"] = matrices_to_json(c.noise);
  return out;
}

io::InputDocument load_input(const std::string& path) {
  return io::parse_input(io::read_json_file(path));
}

bool is_measurement(const io::InputDocument& doc) {
  return doc.kind == "povm" || doc.kind == "assemblage";
}

void emit(const Json& doc, const Common& c, const std::string& summary, std::ostream& out) {
  if (c.output.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw Error(ErrorCode::kMalformedInput, "cannot write " + c.output);
  f << doc.dump(2) << "\n";
  out << "wrote " << c.output << ": " << summary << "\n";
}

std::string value_summary(double v) {
  std::ostringstream os;
  os.precision(10);
  os << "value=" << v;
  return os.str();
}

int cmd_setcoh(Common c, std::ostream& out) {
  if (c.measure.empty()) c.measure = "rmax";
  const io::InputDocument doc = load_input(c.input);
  if (c.measure != "r1" && c.measure != "rmax") {
    throw Error(ErrorCode::kMalformedInput, "--measure must be r1 or rmax");
  }
  const bool mean = c.measure == "r1";
  const SearchOptions opt = search_options(c);
  Json res = result_envelope("setcoh", c);
  res["command"]["measure"] = c.measure;
  res["command"]["restarts"] = c.restarts;
  res["command"]["tol"] = c.tol;
  res["seed"] = c.seed;
  res["input_kind"] = doc.kind;
  res["dim"] = doc.dim;
  if (!doc.labels.empty()) res["labels"] = doc.labels;

  SetCoherenceResult r;
  double check = 0.0;
  if (is_measurement(doc)) {
    const MeasurementAssemblage m = io::assemblage_from(doc);
    r = mean ? mean_set_coherence_povm(m, opt) : set_coherence_rmax(m, opt);
    const auto conj = conjugate_set(m, r.frame);
    check = mean ? mean_robustness_assemblage_fixed(conj) : robustness_assemblage_fixed(conj).value;
  } else if (doc.kind == "states" || doc.kind == "bloch-config") {
    const StateSet s = io::states_from(doc);
    if (s.dim() == 2) {
      r = mean ? qubit_r1(s, opt) : qubit_rmax(s, opt);
    } else {
      r = mean ? set_coherence_r1(s, opt) : set_coherence_rmax(s, opt);
    }
    const auto conj = conjugate_set(s, r.frame);
    check = mean ? mean_robustness_fixed(conj) : robustness_set_fixed(conj).value;
  } else {
    throw Error(ErrorCode::kMalformedInput, "setcoh needs states, povm or assemblage input");
  }
  res["measure"] = c.measure;
  res["value"] = r.value;
  res["fixed_frame_value"] = check;
  res["frame"] = io::matrix_to_json(r.frame.matrix());
  if (r.bloch_direction) {
    const auto& p = *r.bloch_direction;
    res["bloch_direction"] = {p.x(), p.y(), p.z()};
  }
  res["member_values"] = r.member_values;
  res["certificate"] = certificate_to_json(r.certificate);
  res["restart_values"] = r.restart_values;
  emit(res, c, value_summary(r.value), out);
  return kExitOk;
}

int cmd_configs(Common c, std::ostream& out) {
  if (c.measure.empty()) c.measure = "r1";
  if (c.n < 1) throw Error(ErrorCode::kUnsupportedN, "--n must be at least 1");
  if (c.measure != "r1" && c.measure != "rmax") {
    throw Error(ErrorCode::kMalformedInput, "--measure must be r1 or rmax");
  }
  ConfigSearchOptions opt;
  opt.restarts = c.restarts;
  opt.seed = c.seed;
  opt.threads = c.threads;
  const bool mean = c.measure == "r1";
  const ConfigSearchResult r = mean ? search_optimal_r1(c.n, opt) : search_optimal_rmax(c.n, opt);

  Json res = result_envelope("configs", c);
  res["command"]["n"] = c.n;
  res["command"]["measure"] = c.measure;
  res["command"]["restarts"] = c.restarts;
  res["seed"] = c.seed;
  res["measure"] = c.measure;
  res["value"] = r.value;
  res["r1"] = evaluate_r1_config(r.config);
  res["rmax"] = evaluate_rmax_config(r.config);
  res["energy_bound"] = energy_upper_bound(r.config);
  Json vectors = Json::array();
  for (const auto& v : r.config.vectors()) vectors.push_back({v.x(), v.y(), v.z()});
  res["config"] = vectors;
  Json angles = Json::array();
  for (int i = 0; i < r.config.size(); ++i) {
    for (int j = i + 1; j < r.config.size(); ++j) {
      const double cosine = std::clamp(r.config[i].dot(r.config[j]), -1.0, 1.0);
      angles.push_back(std::acos(cosine) * 180.0 / kPi);
    }
  }
  res["pairwise_angles_deg"] = angles;
  if (mean && (c.n == 2 || c.n == 3 || c.n == 4 || c.n == 6)) {
    res["reference_value"] = evaluate_r1_config(known_config(c.n));
  }
  res["restart_values"] = r.restart_values;
  emit(res, c, value_summary(r.value), out);
  return kExitOk;
}

UnitaryFrame pick_frame(const Common& c, const io::InputDocument& doc,
                        const std::function<UnitaryFrame()>& automatic) {
  if (c.frame == "identity") return UnitaryFrame::identity(doc.dim);
  if (c.frame == "auto") return automatic();
  const UnitaryFrame f = io::frame_from(io::read_json_file(c.frame));
  if (f.dim() != doc.dim) throw Error(ErrorCode::kDimensionMismatch, "frame and input differ in dimension");
  return f;
}

int cmd_game(const Common& c, std::ostream& out) {
  const io::InputDocument doc = load_input(c.input);
  const SearchOptions opt = search_options(c);
  Json res = result_envelope("game", c);
  res["command"]["frame"] = c.frame;
  res["seed"] = c.seed;
  res["input_kind"] = doc.kind;
  res["dim"] = doc.dim;
  double ratio = 0.0;
  if (is_measurement(doc)) {
    const MeasurementAssemblage m = io::assemblage_from(doc);
    const UnitaryFrame u = pick_frame(c, doc, [&] { return set_coherence_rmax(m, opt).frame; });
    const StateDiscriminationGame t = game_for_povm(m, u);
    const double p = p_succ_povm(t, m);
    const double best = best_incoherent_povm_success(t, u);
    ratio = p / best;
    res["game"] = "state-discrimination";
    res["frame"] = io::matrix_to_json(u.matrix());
    res["setting_priors"] = t.setting_priors;
    res["outcome_priors"] = t.outcome_priors;
    res["p_succ"] = p;
    res["best_incoherent"] = best;
    res["ratio"] = ratio;
    res["robustness"] = robustness_assemblage_fixed(conjugate_set(m, u)).value;
  } else {
    const StateSet s = io::states_from(doc);
    const UnitaryFrame u = pick_frame(c, doc, [&] {
      return s.dim() == 2 ? qubit_rmax(s, opt).frame : set_coherence_rmax(s, opt).frame;
    });
    res["frame"] = io::matrix_to_json(u.matrix());
    if (s.size() == 1) {
      const RobustnessCertificate cert = robustness_state_sdp(conjugate(s[0], u));
      const SubchannelGame g = game_from_witness(
          HermitianMatrix(u.matrix().adjoint() * cert.witness[0] * u.matrix(), Tolerances{1e-7}));
      const double p = p_succ_subchannel(s[0], g);
      const double best = best_incoherent_success(g, u);
      ratio = p / best;
      res["game"] = "subchannel";
      res["p_succ"] = p;
      res["best_incoherent"] = best;
      res["robustness"] = cert.value;
    } else {
      const GameWithPriors g = build_set_game(s, u);
      const double p = score(s, g);
      const double best = best_incoherent_score(g, u);
      ratio = p / best;
      res["game"] = "set";
      res["priors"] = g.priors;
      res["p_succ"] = p;
      res["best_incoherent"] = best;
      res["robustness"] = robustness_set_fixed(conjugate_set(s, u)).value;
    }
    res["ratio"] = ratio;
  }
  std::ostringstream summary;
  summary.precision(10);
  summary << "ratio=" << ratio;
  emit(res, c, summary.str(), out);
  return kExitOk;
}

Json layer_matrix(const std::vector<int>& assignment, int outcomes) {
  Json rows = Json::array();
  for (int a : assignment) {
    Json row = Json::array();
    for (int b = 0; b < outcomes; ++b) row.push_back(a == b ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json decompose_exact_json(const io::InputDocument& doc) {
  const StochasticMatrix<Rational> m = io::exact_diagonal_from(doc);
  const DiagonalDecomposition<Rational> dec = decompose_exact(m);
  Json res;
  res["method"] = to_string(dec.method);
  Json terms = Json::array();
  StochasticMatrix<Rational> sum(m.rows(), m.cols());
  Rational total(0);
  for (const auto& t : dec.terms) {
    Json term;
    term["weight"] = io::rational_to_string(t.weight);
    term["assignment"] = t.assignment;
    term["layer"] = layer_matrix(t.assignment, dec.outcomes);
    terms.push_back(std::move(term));
    for (int i = 0; i < dec.dim; ++i) sum(i, t.assignment[i]) += t.weight;
    total += t.weight;
  }
  bool exact = total == 1;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) exact = exact && sum(i, j) == m(i, j);
  }
  res["terms"] = terms;
  res["verified"] = exact;
  return res;
}

Json decompose_json(const Povm& p, const UnitaryFrame& u) {
  const ProjectiveDecomposition dec = decompose(p, u);
  Json res;
  res["method"] = to_string(dec.method);
  Json terms = Json::array();
  for (size_t k = 0; k < dec.weights.size(); ++k) {
    Json term;
    term["weight"] = dec.weights[k];
    term["assignment"] = dec.assignments[k];
    term["layer"] = layer_matrix(dec.assignments[k], dec.outcomes);
    std::vector<ComplexMatrix> elements;
    for (int a = 0; a < dec.components[k].size(); ++a) elements.push_back(dec.components[k][a]);
    term["povm"] = matrices_to_json(elements);
    terms.push_back(std::move(term));
  }
  res["terms"] = terms;
  res["verified"] = verify_decomposition(p, dec, u, 1e-8);
  return res;
}

int cmd_decompose(const Common& c, std::ostream& out) {
  const io::InputDocument doc = load_input(c.input);
  Json res = result_envelope("decompose", c);
  res["command"]["frame"] = c.frame;
  res["command"]["exact"] = c.exact;
  res["input_kind"] = doc.kind;
  res["dim"] = doc.dim;
  bool verified = true;
  if (c.exact) {
    if (c.frame != "auto" && c.frame != "identity") {
      throw Error(ErrorCode::kMalformedInput, "exact mode works in the identity frame");
    }
    res["frame"] = io::matrix_to_json(ComplexMatrix::Identity(doc.dim, doc.dim));
    Json d = decompose_exact_json(doc);
    verified = d["verified"].get<bool>();
    res["decompositions"] = Json::array({d});
  } else {
    const MeasurementAssemblage m = io::assemblage_from(doc);
    const UnitaryFrame u = pick_frame(c, doc, [&] {
      const IncoherenceCheck check = is_incoherent(m);
      if (!check.incoherent) {
        throw Error(ErrorCode::kNotIncoherent, "the measurements share no diagonal frame");
      }
      return *check.frame;
    });
    res["frame"] = io::matrix_to_json(u.matrix());
    Json all = Json::array();
    for (const auto& p : m.measurements()) {
      Json d = decompose_json(p, u);
      verified = verified && d["verified"].get<bool>();
      all.push_back(std::move(d));
    }
    res["decompositions"] = all;
  }
  res["verified"] = verified;
  emit(res, c, std::string("verified=") + (verified ? "true" : "false"), out);
  return kExitOk;
}

int cmd_validate(const Common& c, std::ostream& out) {
  const io::InputDocument doc = load_input(c.input);
  Json res = result_envelope("validate", c);
  res["input_kind"] = doc.kind;
  res["dim"] = doc.dim;
  if (doc.kind == "states" || doc.kind == "bloch-config") {
    const StateSet s = io::states_from(doc);
    res["count"] = s.size();
    std::vector<double> purity;
    for (const auto& rho : s) purity.push_back(rho.purity());
    res["purity"] = purity;
    res["incoherent"] = is_incoherent(s).incoherent;
  } else if (is_measurement(doc)) {
    const MeasurementAssemblage m = io::assemblage_from(doc);
    res["settings"] = m.settings();
    res["outcome_counts"] = m.outcome_counts();
    std::vector<bool> projective;
    for (const auto& p : m.measurements()) projective.push_back(p.is_projective());
    res["projective"] = projective;
    res["incoherent"] = is_incoherent(m).incoherent;
  } else {
    (void)io::frame_from(io::read_json_file(c.input));
  }
  res["valid"] = true;
  emit(res, c, "valid", out);
  return kExitOk;
}

void add_search_flags(CLI::App* sub, Common* c) {
  sub->add_option("--restarts", c->restarts, "Random restarts of the search")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c->seed, "Seed for every random choice");
  sub->add_option("--threads", c->threads, "Worker threads (default SETCOH_THREADS or all cores)");
  sub->add_option("--output", c->output, "Write the result here and print a summary");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set coherence of quantum states and measurements", "setcoh"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common c;

  auto* setcoh = app.add_subcommand("setcoh", "Max- or mean-robustness of set coherence");
  setcoh->add_option("input", c.input, "Input document")->required();
  setcoh->add_option("--measure", c.measure, "r1 or rmax (default rmax)")->check(CLI::IsMember({"r1", "rmax"}));
  setcoh->add_option("--tol", c.tol, "Values below this count as zero");
  add_search_flags(setcoh, &c);

  auto* configs = app.add_subcommand("configs", "Search for maximally set-coherent qubit sets");
  configs->add_option("--n", c.n, "Number of states")->required();
  configs->add_option("--measure", c.measure, "r1 or rmax (default r1)")->check(CLI::IsMember({"r1", "rmax"}));
  add_search_flags(configs, &c);

  auto* game = app.add_subcommand("game", "Witness discrimination game and advantage ratio");
  game->add_option("input", c.input, "Input document")->required();
  game->add_option("--frame", c.frame, "auto, identity, or a frame document");
  add_search_flags(game, &c);

  auto* decomp = app.add_subcommand("decompose", "Projective decomposition of incoherent POVMs");
  decomp->add_option("input", c.input, "Input document")->required();
  decomp->add_option("--frame", c.frame, "auto, identity, or a frame document");
  decomp->add_flag("--exact", c.exact, "Exact rational arithmetic (diagonal input)");
  decomp->add_option("--output", c.output, "Write the result here and print a summary");

  auto* validate = app.add_subcommand("validate", "Check an input document");
  validate->add_option("input", c.input, "Input document")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Commands only read c and report through the return code.
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    c.threads = resolve_threads(c.threads);
    if (name == "setcoh") return cmd_setcoh(c, out);
    if (name == "configs") return cmd_configs(c, out);
    if (name == "game") return cmd_game(c, out);
    if (name == "decompose") return cmd_decompose(c, out);
    return cmd_validate(c, out);
  } catch (const Error& e) {
    err << "setcoh " << name << ": " << e.what() << "\n";
    if (name == "validate") {
      Json res = result_envelope("validate", c);
      res["valid"] = false;
      res["error"] = std::string(to_string(e.code()));
      res["message"] = e.what();
      out << res.dump(2) << "\n";
    }
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "setcoh " << name << ": " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace setcoh::cli
