#include "beliefs/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "beliefs/chain_structure.hpp"
#include "beliefs/csv.hpp"
#include "beliefs/ergodic.hpp"
#include "beliefs/error.hpp"
#include "beliefs/homogeneous.hpp"
#include "beliefs/homophily.hpp"
#include "beliefs/inhomogeneous.hpp"
#include "beliefs/kl_clusters.hpp"
#include "beliefs/ternary.hpp"

namespace fs = std::filesystem;

namespace beliefs {
namespace {

struct ModeSpec {
  RunMode mode;
  const char* name;
  std::set<std::string> keys;
  std::set<std::string> path_keys;
};

const std::vector<ModeSpec>& mode_specs() {
  static const std::vector<ModeSpec> specs = {
      {RunMode::Analyze, "analyze", {"p", "family", "zero_threshold", "ingest_tol"}, {"p", "family"}},
      {RunMode::Evolve, "evolve", {"p", "m", "h", "steps", "tol", "limit", "trace", "ingest_tol"},
       {"p", "m", "h"}},
      {RunMode::Sample, "sample", {"sp", "sh", "m", "horizon", "runs", "tol", "threads", "ingest_tol"},
       {"sp", "sh", "m"}},
      {RunMode::Homophily, "homophily",
       {"m", "eps_p", "eps_h", "beta", "floor", "tol", "max_steps", "group_tol", "structure", "trace",
        "plot", "ingest_tol"},
       {"m"}},
      {RunMode::Clusters, "clusters", {"m", "epsilon", "axis", "tol", "ingest_tol"}, {"m"}},
      {RunMode::Certify, "certify", {"p", "h", "m", "fit_horizon", "family", "nu", "ingest_tol"},
       {"p", "h", "m", "family"}},
  };
  return specs;
}

const ModeSpec& spec_of(RunMode mode) {
  for (const auto& s : mode_specs()) {
    if (s.mode == mode) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mode");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(const std::string& text, const std::string& where) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, where + ": not a nonnegative integer: " + text);
  }
  return v;
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, where + ": not a number: " + text);
  }
  return v;
}

// Matrices typeset with rounded decimals are accepted at the ingest
// tolerance and renormalized.
StochMatrix load_stochastic(const fs::path& file, double ingest_tol) {
  const Matrix raw = csv::read(file);
  try {
    return ingest_stochastic(raw, ingest_tol);
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.detail());
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + file.string());
  out << text;
}

std::string word_text(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

std::string padded(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", n);
  return buf;
}

struct Output {
  fs::path dir;
  RunResult result;

  fs::path file(const std::string& name) {
    const fs::path p = dir / name;
    fs::create_directories(p.parent_path());
    result.artifacts.push_back(p);
    return p;
  }
  void matrix(const std::string& name, const Matrix& m) { csv::write(file(name), m); }
  void text(const std::string& name, const std::string& t) { write_text(file(name), t); }
};

void run_analyze(const RunConfig& cfg, Output& out) {
  const double ingest = cfg.number("ingest_tol", kIngestTolerance);
  const double thr = cfg.number("zero_threshold", 0.0);
  std::optional<StochMatrix> p;
  std::optional<MatrixFamily> family;
  if (cfg.get("p")) p = load_stochastic(cfg.path("p"), ingest);
  if (cfg.get("family")) family = load_family(cfg.path("family"));
  if (!p && !family) throw Error(ErrorCode::ParseError, "analyze needs p or family");

  std::string lines;
  auto emit = [&](const nlohmann::json& j) { lines += j.dump() + "\n"; };
  auto describe = [&](const TransitionGraph& g, const std::string& subject) {
    const ChainStructure cs = analyze(g);
    const auto& cond = cs.condensation;
    for (std::size_t c = 0; c < cond.classes.size(); ++c) {
      nlohmann::json j{{"subject", subject}, {"type", "class"}, {"id", c},
                       {"states", cond.classes[c]}, {"leaf", cond.is_leaf(c)}};
      const auto period = cs.states.period[cond.classes[c].front()];
      j["period"] = period ? nlohmann::json(*period) : nlohmann::json(nullptr);
      emit(j);
    }
    for (std::size_t i = 0; i < g.vertex_count; ++i) {
      const auto period = cs.states.period[i];
      emit({{"subject", subject}, {"type", "state"}, {"id", i},
            {"kind", cs.states.kind[i] == StateKind::Recurrent ? "recurrent" : "transient"},
            {"period", period ? nlohmann::json(*period) : nlohmann::json(nullptr)}});
    }
    return cs;
  };
  if (p) {
    const ChainStructure cs = describe(graph_of(*p, thr), "p");
    nlohmann::json j{{"subject", "p"},
                     {"type", "summary"},
                     {"irreducible", cs.is_irreducible()},
                     {"indecomposable", cs.is_indecomposable()},
                     {"aperiodic", cs.is_aperiodic()},
                     {"leaf_classes", cs.condensation.leaf_classes}};
    j["sia"] = cs.is_indecomposable() && cs.is_aperiodic();
    if (p->rows() >= 2) {
      j["lambda"] = scrambling_lambda(*p);
      j["scrambling"] = is_scrambling(*p);
    }
    emit(j);
  }
  if (family) {
    describe(union_graph(*family, thr), "union");
    const ConvergenceDiagnosis d = diagnose_convergence(*family);
    nlohmann::json j{{"subject", "family"},
                     {"type", "summary"},
                     {"members", family->size()},
                     {"one_leaf_connected", d.one_leaf},
                     {"verdict", to_string(d.verdict)}};
    j["witness"] = d.witness ? nlohmann::json(*d.witness) : nlohmann::json(nullptr);
    const SiaVerdict v = all_products_sia(*family);
    j["all_products_sia"] = v.all_sia;
    j["patterns"] = v.pattern_count;
    emit(j);
  }
  out.text("analysis.jsonl", lines);
  out.result.report = lines;
}

void run_evolve(const RunConfig& cfg, Output& out) {
  const double ingest = cfg.number("ingest_tol", kIngestTolerance);
  const StochMatrix p = load_stochastic(cfg.path("p"), ingest);
  const BeliefMatrix m(load_stochastic(cfg.path("m"), ingest));
  const StochMatrix h = load_stochastic(cfg.path("h"), ingest);
  const std::size_t steps = cfg.count("steps", 200);
  const double tol = cfg.number("tol", 1e-9);

  const EvolutionTrace trace = evolve(p, m, h, steps, tol);
  out.matrix("final_q.csv", trace.final_q().matrix());
  if (cfg.flag("trace", false)) {
    for (std::size_t n = 0; n < trace.snapshots.size(); ++n) {
      out.matrix("trace/q_" + padded(n) + ".csv", trace.snapshots[n].matrix());
    }
  }
  out.result.stabilized_at = trace.stabilized_at;
  std::ostringstream report;
  report << "steps " << steps << ", stabilized at "
         << (trace.stabilized_at ? std::to_string(*trace.stabilized_at) : "none") << "\n";
  if (cfg.flag("limit", false)) {
    const LimitReport lim = limit_q(p, m, h);
    out.matrix("limit.csv", lim.limit.matrix());
    report << "limit case " << to_string(lim.kind) << ", homogeneous "
           << (lim.homogeneous ? "yes" : "no") << "\n";
  }
  out.result.report = report.str();
}

void run_sample(const RunConfig& cfg, Output& out) {
  const double ingest = cfg.number("ingest_tol", kIngestTolerance);
  const MatrixFamily sp = load_family(cfg.path("sp"));
  const MatrixFamily sh = load_family(cfg.path("sh"));
  const BeliefMatrix m(load_stochastic(cfg.path("m"), ingest));
  const std::size_t horizon = cfg.count("horizon", 100);
  const std::size_t runs = cfg.count("runs", 1);
  const double tol = cfg.number("tol", 1e-9);
  if (runs == 0) throw Error(ErrorCode::InvalidArgument, "runs must be positive");

  const SampledRun first = sample_trajectory(sp, sh, m, cfg.seed, horizon, tol);
  out.matrix("final_q.csv", first.final_q.matrix());
  out.text("words.txt", "p " + word_text(first.word_p) + "\nh " + word_text(first.word_h) + "\n");
  out.result.stabilized_at = first.stabilized_at;
  std::ostringstream report;
  report << "seed " << cfg.seed << ", horizon " << horizon << ", stabilized at "
         << (first.stabilized_at ? std::to_string(*first.stabilized_at) : "none") << "\n";
  if (runs > 1) {
    const MonteCarloSummary mc =
        monte_carlo(sp, sh, m, cfg.seed, runs, horizon, cfg.count("threads", 0));
    out.matrix("mean.csv", mc.mean);
    out.matrix("stderr.csv", mc.standard_error);
    std::string table = "seed,delta\n";
    for (std::size_t r = 0; r < runs; ++r) {
      table += std::to_string(cfg.seed + r) + "," + csv::format_decimal(mc.final_delta[r]) + "\n";
    }
    out.text("runs.csv", table);
    report << runs << " runs aggregated\n";
  }
  out.result.report = report.str();
}

void run_homophily_mode(const RunConfig& cfg, Output& out) {
  const double ingest = cfg.number("ingest_tol", kIngestTolerance);
  const BeliefMatrix m(load_stochastic(cfg.path("m"), ingest));
  HomophilyConfig hc;
  hc.eps_p = cfg.number("eps_p", hc.eps_p);
  hc.eps_h = cfg.number("eps_h", hc.eps_h);
  hc.beta = cfg.number("beta", hc.beta);
  hc.floor = cfg.number("floor", hc.floor);
  hc.tol = cfg.number("tol", hc.tol);
  hc.max_steps = cfg.count("max_steps", hc.max_steps);
  hc.group_tol = cfg.number("group_tol", hc.group_tol);
  const std::string structure = cfg.get("structure").value_or("both");
  if (structure == "network_only") {
    hc.mode = StructureMode::NetworkOnly;
  } else if (structure == "concepts_only") {
    hc.mode = StructureMode::ConceptsOnly;
  } else if (structure != "both") {
    throw Error(ErrorCode::ParseError, "structure must be both, network_only or concepts_only");
  }
  hc.validate();
  const bool plot = cfg.flag("plot", false);
  if (plot && m.concepts() != 3) {
    throw Error(ErrorCode::WrongDimension, "plot needs three concepts, got " +
                                               std::to_string(m.concepts()));
  }

  const HomophilyTrace trace = run_homophily(m, hc);
  const HomophilyStep& last = trace.steps.back();
  out.matrix("final_q.csv", last.q.matrix());
  out.matrix("final_p.csv", last.p.matrix());
  out.matrix("final_h.csv", last.h.matrix());
  const std::string groups = format_groups(trace.final_groups);
  const std::string beliefs = format_groups(trace.belief_groups);
  out.text("groups.txt", "links " + groups + "\nbeliefs " + beliefs + "\n");
  if (cfg.flag("trace", false)) {
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      const std::string tag = padded(t + 1);
      out.matrix("trace/p_" + tag + ".csv", trace.steps[t].p.matrix());
      out.matrix("trace/h_" + tag + ".csv", trace.steps[t].h.matrix());
      out.matrix("trace/q_" + tag + ".csv", trace.steps[t].q.matrix());
    }
  }
  if (plot) {
    const std::vector<double> eps(m.people(), hc.eps_p);
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      const BeliefMatrix& before = t == 0 ? trace.initial : trace.steps[t - 1].q;
      TernaryStyle style;
      style.title = "t = " + std::to_string(t + 1);
      out.text("frames/frame_" + padded(t + 1) + ".svg",
               render_ternary(before, undirected_links(trace.steps[t].p), eps, style));
    }
  }
  out.result.stabilized_at = trace.stabilized_at;
  out.result.report = "stabilized at " + std::to_string(*trace.stabilized_at) + "\n" + groups +
                      "\nbelief " + beliefs + "\n";
}

void run_clusters(const RunConfig& cfg, Output& out) {
  const double ingest = cfg.number("ingest_tol", kIngestTolerance);
  const StochMatrix m = load_stochastic(cfg.path("m"), ingest);
  const double epsilon = cfg.number("epsilon", 0.3);
  const double tol = cfg.number("tol", kDefaultHullTol);
  const std::string axis = cfg.get("axis").value_or("rows");
  PointCloud cloud;
  if (axis == "rows") {
    cloud = rows_of(m.matrix());
  } else if (axis == "cols") {
    cloud = normalized_columns_of(m.matrix());
  } else {
    throw Error(ErrorCode::ParseError, "axis must be rows or cols");
  }
  const ClusterPartition part = epsilon_kl_clusters(cloud, epsilon, tol);
  std::string text = format_groups(part.clusters) + "\n";
  text += "internal_condition";
  for (bool ok : part.internal_condition) text += ok ? " yes" : " no";
  text += "\ncount_history";
  for (std::size_t c : part.count_history) text += " " + std::to_string(c);
  text += "\n";
  out.text("clusters.txt", text);
  out.result.report = text;
}

void run_certify(const RunConfig& cfg, Output& out) {
  const double ingest = cfg.number("ingest_tol", kIngestTolerance);
  RateCertificate cert;
  if (cfg.get("family")) {
    const MatrixFamily family = load_family(cfg.path("family"));
    std::optional<std::size_t> nu;
    if (cfg.get("nu") && *cfg.get("nu") != "auto") nu = cfg.count("nu", 1);
    cert = inhomogeneous_rate_certificate(family, nu);
  } else {
    const StochMatrix p = load_stochastic(cfg.path("p"), ingest);
    const StochMatrix h = load_stochastic(cfg.path("h"), ingest);
    std::optional<BeliefMatrix> probe;
    if (cfg.get("m")) probe = BeliefMatrix(load_stochastic(cfg.path("m"), ingest));
    cert = homogeneous_rate_certificate(p, h, probe, cfg.count("fit_horizon", 20));
  }
  std::ostringstream text;
  text << "kind = "
       << (cert.kind == CertificateKind::Homogeneous ? "homogeneous" : "inhomogeneous") << "\n";
  text << "base = " << csv::format_decimal(cert.base) << "\n";
  text << "block = " << cert.block << "\n";
  text << "constant_hint = "
       << (cert.constant_hint ? csv::format_decimal(*cert.constant_hint) : "absent")
       << (cert.constant_is_fitted ? " (fitted)" : " (proven)") << "\n";
  text << "witness_word = " << (cert.witness_word ? word_text(*cert.witness_word) : "absent")
       << "\n";
  if (cert.kind == CertificateKind::Homogeneous) {
    text << "lambda_p = " << csv::format_decimal(cert.factor_bases[0]) << "\n";
    text << "lambda_h = " << csv::format_decimal(cert.factor_bases[1]) << "\n";
    text << "transient_decay = " << csv::format_decimal(cert.transient_decay) << "\n";
  } else {
    text << "nu_star = " << *cert.nu_star << "\n";
  }
  out.text("certificate.txt", text.str());
  out.result.report = text.str();
}

}  // namespace

const char* to_string(RunMode mode) { return spec_of(mode).name; }

std::optional<std::string> RunConfig::get(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

fs::path RunConfig::path(const std::string& key) const {
  const auto v = get(key);
  if (!v) {
    throw Error(ErrorCode::ParseError,
                std::string("[") + to_string(mode) + "] is missing required key " + key);
  }
  const fs::path p(*v);
  return p.is_absolute() ? p : (base_dir / p).lexically_normal();
}

double RunConfig::number(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? parse_double(*v, key) : fallback;
}

std::size_t RunConfig::count(const std::string& key, std::size_t fallback) const {
  const auto v = get(key);
  return v ? static_cast<std::size_t>(parse_u64(*v, key)) : fallback;
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "no" || *v == "0") return false;
  throw Error(ErrorCode::ParseError, key + ": not a boolean: " + *v);
}

RunConfig parse_config(std::istream& in, const std::string& source, const fs::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  std::map<std::string, std::map<std::string, std::pair<std::string, std::size_t>>> sections;
  std::string section;
  std::optional<std::string> mode_name;
  std::size_t mode_line = 0;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') parse_fail(source, no, "unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      const bool known = section == "manifest" ||
                         std::any_of(mode_specs().begin(), mode_specs().end(),
                                     [&](const ModeSpec& s) { return section == s.name; });
      if (!known) parse_fail(source, no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) parse_fail(source, no, "expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) parse_fail(source, no, "empty key");
    if (section.empty()) {
      if (key == "mode") {
        mode_name = value;
        mode_line = no;
      } else if (key == "out") {
        const fs::path p(value);
        cfg.out = p.is_absolute() ? p : (base_dir / p).lexically_normal();
      } else if (key == "seed") {
        try {
          cfg.seed = parse_u64(value, "seed");
        } catch (const Error& e) {
          parse_fail(source, no, e.detail());
        }
      } else {
        parse_fail(source, no, "unknown top-level key " + key);
      }
      continue;
    }
    if (section == "manifest") continue;
    auto& entries = sections[section];
    if (entries.contains(key)) parse_fail(source, no, "duplicate key " + key);
    entries[key] = {value, no};
  }
  if (!mode_name) parse_fail(source, no, "missing mode");
  const ModeSpec* spec = nullptr;
  for (const auto& s : mode_specs()) {
    if (*mode_name == s.name) spec = &s;
  }
  if (!spec) parse_fail(source, mode_line, "unknown mode " + *mode_name);
  cfg.mode = spec->mode;
  for (const auto& [name, entries] : sections) {
    const ModeSpec* owner = nullptr;
    for (const auto& s : mode_specs()) {
      if (name == s.name) owner = &s;
    }
    for (const auto& [key, value] : entries) {
      if (!owner->keys.contains(key)) {
        parse_fail(source, value.second, "unknown key " + key + " in [" + name + "]");
      }
    }
  }
  for (const auto& [key, value] : sections[spec->name]) cfg.params[key] = value.first;
  return cfg;
}

RunConfig read_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::ParseError, file.string() + ":0: cannot open");
  return parse_config(in, file.string(), fs::absolute(file).parent_path());
}

namespace {

std::string canonical_body(const RunConfig& cfg, bool with_out) {
  const ModeSpec& spec = spec_of(cfg.mode);
  std::string text = std::string("mode = ") + spec.name + "\n";
  if (with_out) text += "out = " + fs::absolute(cfg.out).lexically_normal().string() + "\n";
  text += "seed = " + std::to_string(cfg.seed) + "\n\n[" + spec.name + "]\n";
  for (const auto& [key, value] : cfg.params) {
    const std::string v = spec.path_keys.contains(key) ? fs::absolute(cfg.path(key)).string() : value;
    text += key + " = " + v + "\n";
  }
  return text;
}

}  // namespace

std::string canonical_config(const RunConfig& cfg) { return canonical_body(cfg, true); }

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_body(cfg, false)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MatrixFamily load_family(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::ParseError, dir.string() + ":0: not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::ParseError, dir.string() + ":0: no member CSV files");
  std::vector<StochMatrix> members;
  for (const auto& f : files) members.push_back(load_stochastic(f, kIngestTolerance));

  const fs::path wfile = dir / "weights.txt";
  if (!fs::exists(wfile)) return MatrixFamily::uniform(std::move(members));
  std::vector<double> weights(members.size(), 0.0);
  std::vector<bool> seen(members.size(), false);
  std::ifstream in(wfile);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    std::istringstream fields(t);
    std::string idx_text;
    std::string w_text;
    std::string extra;
    if (!(fields >> idx_text >> w_text) || (fields >> extra)) {
      parse_fail(wfile.string(), no, "expected `index weight`");
    }
    std::size_t idx = 0;
    double w = 0.0;
    try {
      idx = static_cast<std::size_t>(parse_u64(idx_text, "index"));
      w = parse_double(w_text, "weight");
    } catch (const Error& e) {
      parse_fail(wfile.string(), no, e.detail());
    }
    if (idx >= members.size()) parse_fail(wfile.string(), no, "index out of range");
    if (seen[idx]) parse_fail(wfile.string(), no, "duplicate index");
    seen[idx] = true;
    weights[idx] = w;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) parse_fail(wfile.string(), no, "no weight for member " + std::to_string(i));
  }
  return MatrixFamily(std::move(members), std::move(weights));
}

std::string format_groups(const std::vector<std::vector<std::size_t>>& groups) {
  std::string s = std::to_string(groups.size()) + (groups.size() == 1 ? " group: " : " groups: ");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    s += g ? ",{" : "{";
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      s += (k ? "," : "") + std::to_string(groups[g][k] + 1);
    }
    s += "}";
  }
  return s;
}

RunResult run(const RunConfig& cfg) {
  Output out{cfg.out, {}};
  switch (cfg.mode) {
    case RunMode::Analyze: run_analyze(cfg, out); break;
    case RunMode::Evolve: run_evolve(cfg, out); break;
    case RunMode::Sample: run_sample(cfg, out); break;
    case RunMode::Homophily: run_homophily_mode(cfg, out); break;
    case RunMode::Clusters: run_clusters(cfg, out); break;
    case RunMode::Certify: run_certify(cfg, out); break;
  }
  std::string manifest = canonical_config(cfg);
  manifest += "\n[manifest]\n";
  manifest += std::string("tool_version = ") + kToolVersion + "\n";
  manifest += "config_hash = " + config_hash(cfg) + "\n";
  manifest += "seed = " + std::to_string(cfg.seed) + "\n";
  manifest += "stabilized_at = " +
              (out.result.stabilized_at ? std::to_string(*out.result.stabilized_at) : "none") + "\n";
  out.text("manifest.cfg", manifest);
  return out.result;
}

}  // namespace beliefs
