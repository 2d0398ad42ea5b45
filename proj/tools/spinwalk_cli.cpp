// Command-line surface for the spinwalk library: every identity check and
// experiment as a reproducible subcommand with file outputs.
//
// Conventions shared by all subcommands:
//   * --out DIR, --format {csv,json}, --seed N, --config FILE (key=value
//     lines; unknown keys are rejected).
//   * Every run writes manifest_<command>.json echoing the artifact version
//     and the full resolved parameter set; re-running with the same manifest
//     reproduces byte-identical outputs.
//   * Identity checks print one PASS/FAIL line each.  Exit code 0 when all
//     pass, 1 on any FAIL, 2 on configuration errors.
//   * Rationals are serialized as "p/q" strings, floats with 12 significant
//     digits.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinwalk/branching.hpp"
#include "spinwalk/chain_sim.hpp"
#include "spinwalk/character_table.hpp"
#include "spinwalk/cumulants.hpp"
#include "spinwalk/curves.hpp"
#include "spinwalk/doubled_diagram.hpp"
#include "spinwalk/finite_measure.hpp"
#include "spinwalk/io.hpp"
#include "spinwalk/pausing.hpp"
#include "spinwalk/pde_check.hpp"
#include "spinwalk/qpoly.hpp"
#include "spinwalk/rational.hpp"
#include "spinwalk/rng.hpp"
#include "spinwalk/shape.hpp"
#include "spinwalk/shifted_tableaux.hpp"
#include "spinwalk/strict_partition.hpp"
#include "spinwalk/thoma.hpp"
#include "spinwalk/transition_measure.hpp"

namespace {

using namespace spinwalk;
namespace fs = std::filesystem;

// ------------------------------------------------------------- parsing ----

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Rat parse_rat(const std::string& s) {
  const std::string t = trimmed(s);
  if (t.empty()) throw std::invalid_argument("empty rational");
  Rat r;
  if (r.set_str(t, 10) != 0)
    throw std::invalid_argument("bad rational: '" + t + "'");
  r.canonicalize();
  return r;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  if (trimmed(s).empty()) return out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_rat(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  if (trimmed(s).empty()) return out;
  for (const auto& tok : split(s, ',')) {
    std::size_t pos = 0;
    const std::string t = trimmed(tok);
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("bad number: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

// "3,1" -> (3,1); "" or "empty" -> the empty partition
StrictPartition parse_partition(const std::string& s) {
  const std::string t = trimmed(s);
  if (t.empty() || t == "empty") return StrictPartition{};
  std::vector<int> parts;
  for (const auto& tok : split(t, ',')) {
    std::size_t pos = 0;
    const std::string u = trimmed(tok);
    const int v = std::stoi(u, &pos);
    if (pos != u.size()) throw std::invalid_argument("bad part: '" + u + "'");
    parts.push_back(v);
  }
  return StrictPartition{parts};  // validates strict decrease
}

// "3,1" | "3,1:+" | "3,1:-"
NazarovLabel parse_label(const std::string& s) {
  const auto pieces = split(s, ':');
  if (pieces.size() > 2) throw std::invalid_argument("bad label: '" + s + "'");
  const StrictPartition lam = parse_partition(pieces[0]);
  int gamma = +1;
  if (pieces.size() == 2) {
    const std::string g = trimmed(pieces[1]);
    if (g == "+" || g == "+1")
      gamma = +1;
    else if (g == "-" || g == "-1")
      gamma = -1;
    else
      throw std::invalid_argument("bad sign: '" + g + "'");
  }
  return NazarovLabel(lam, gamma);
}

std::string partition_tag(const StrictPartition& p) {
  if (p.parts.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(p.parts[i]);
  }
  return s;
}

std::string partition_str(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::string qpoly_str(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int j = 0; j <= p.degree(); ++j) {
    const Rat c = p.coeff(j);
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rat mag = neg ? Rat(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    s += mag.get_str();
    if (j >= 1) s += "*q^" + std::to_string(j);
  }
  return s;
}

// ---------------------------------------------------------- run context ---

struct RunContext {
  std::string command;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::map<std::string, std::string> params;
  std::vector<std::string> outputs;
  bool failed = false;

  void set(const std::string& k, const std::string& v) { params[k] = v; }
  void set(const std::string& k, long long v) { params[k] = std::to_string(v); }
  void set(const std::string& k, double v) { params[k] = io::fmt12(v); }

  void emit(const io::Table& t, const std::string& stem) {
    fs::create_directories(out);
    outputs.push_back(io::write_table(out, stem, t, format));
  }
  void emit_json(const nlohmann::ordered_json& j, const std::string& stem) {
    fs::create_directories(out);
    outputs.push_back(io::write_json_file(out, stem, j));
  }

  bool gate(bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) failed = true;
    return ok;
  }
  void info(const std::string& what) { std::cout << "INFO " << what << "\n"; }

  int finish() {
    set("out", out);
    set("format", format);
    set("seed", static_cast<long long>(seed));
    fs::create_directories(out);
    io::write_manifest(out, command, params, outputs);
    return failed ? 1 : 0;
  }
};

void add_common(CLI::App* sub, RunContext& ctx) {
  sub->add_option("--out", ctx.out, "Output directory")->capture_default_str();
  sub->add_option("--format", ctx.format, "Table file format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--seed", ctx.seed, "Random seed for sampling commands")
      ->capture_default_str();
  sub->set_config("--config", "", "Config file with key=value lines");
  sub->allow_config_extras(CLI::config_extras_mode::error);  // reject unknown keys
}

// Pausing-law options shared by `afactor` and `simulate`.  The family's
// extra parameters ride in --psi.params:
//   gamma:      "shape,scale"
//   uniform:    "lo,hi"
//   histogram:  "e0,e1,...,eB;m1,...,mB"
// exponential and deterministic use --m alone.
struct PausingOpts {
  std::string family = "exponential";
  double m = 1.0;
  std::string params;
};

void add_pausing(CLI::App* sub, PausingOpts& po) {
  sub->add_option("--psi.family", po.family, "Pausing law family")
      ->check(CLI::IsMember({"exponential", "gamma", "uniform", "histogram",
                             "deterministic"}))
      ->capture_default_str();
  sub->add_option("--m", po.m, "Pausing mean (exponential/deterministic)")
      ->capture_default_str();
  sub->add_option("--psi.params", po.params,
                  "Family parameters: gamma 'shape,scale'; uniform 'lo,hi'; "
                  "histogram 'edges;masses'")
      ->capture_default_str();
}

PausingSpec build_pausing(const PausingOpts& po) {
  if (po.family == "exponential") return PausingSpec::exponential(po.m);
  if (po.family == "deterministic") return PausingSpec::deterministic(po.m);
  if (po.family == "gamma") {
    const auto v = parse_double_list(po.params);
    if (v.size() != 2)
      throw std::invalid_argument("gamma pausing needs --psi.params 'shape,scale'");
    return PausingSpec::gamma(v[0], v[1]);
  }
  if (po.family == "uniform") {
    const auto v = parse_double_list(po.params);
    if (v.size() != 2)
      throw std::invalid_argument("uniform pausing needs --psi.params 'lo,hi'");
    return PausingSpec::uniform(v[0], v[1]);
  }
  if (po.family == "histogram") {
    const auto halves = split(po.params, ';');
    if (halves.size() != 2)
      throw std::invalid_argument("histogram pausing needs --psi.params 'edges;masses'");
    return PausingSpec::histogram(parse_double_list(halves[0]),
                                  parse_double_list(halves[1]));
  }
  throw std::invalid_argument("unknown pausing family: " + po.family);
}

void record_pausing(RunContext& ctx, const PausingOpts& po) {
  ctx.set("psi.family", po.family);
  ctx.set("m", po.m);
  ctx.set("psi.params", po.params);
}

// ------------------------------------------------------------- commands ---

int cmd_enumerate(RunContext& ctx, int n) {
  ctx.set("n", static_cast<long long>(n));
  const LabelMeasure P = plancherel_spin(n);
  GCache cache;
  io::Table t;
  t.header = {"label",         "gamma", "even_class",        "g",
              "dim",           "plancherel_mass", "plancherel_mass_f"};
  Rat dim_sq(0);
  for (std::size_t i = 0; i < P.labels.size(); ++i) {
    const NazarovLabel& v = P.labels[i];
    const Int d = dim_spin(v, &cache);
    dim_sq += Rat(d) * Rat(d);
    t.add_row() = {v.str(),
                   v.gamma > 0 ? "+1" : "-1",
                   v.lambda.even_class() ? "1" : "0",
                   io::int_str(cache.get(v.lambda)),
                   io::int_str(d),
                   io::rat_str(P.mass[i]),
                   io::fmt12(P.mass[i].get_d())};
  }
  ctx.emit(t, "enumerate_n" + std::to_string(n));
  const Rat nf = Rat(factorial(static_cast<unsigned long>(n)));
  ctx.gate(dim_sq == nf, "enumerate n=" + std::to_string(n) + ": sum of squared dimensions over " +
                             std::to_string(P.labels.size()) + " vertices equals n!");
  return ctx.finish();
}

int cmd_gcheck(RunContext& ctx, int nmax) {
  ctx.set("nmax", static_cast<long long>(nmax));
  io::Table t;
  t.header = {"n", "lambda", "hook_count", "bruteforce_count"};
  bool all = true;
  long long checked = 0;
  for (int n = 0; n <= nmax; ++n)
    for (const auto& lam : enumerate_strict_partitions(n)) {
      const Int g = g_hook(lam);
      const Int b = count_syt_bruteforce(lam);
      all = all && (g == b);
      ++checked;
      t.add_row() = {std::to_string(n), lam.str(), io::int_str(g), io::int_str(b)};
    }
  ctx.emit(t, "gcheck_nmax" + std::to_string(nmax));
  ctx.gate(all, "gcheck nmax=" + std::to_string(nmax) +
                    ": hook-product count equals brute-force standard-filling count for all " +
                    std::to_string(checked) + " strict partitions");
  return ctx.finish();
}

int cmd_tmeasure(RunContext& ctx, const std::string& lambda_arg) {
  const StrictPartition lam = parse_partition(lambda_arg);
  ctx.set("lambda", lam.str());
  const DoubledDiagram D = doubled_profile(lam);
  const FiniteMeasure mu = transition_measure(D);
  io::Table t;
  t.header = {"location", "location_f", "mass", "mass_f"};
  for (const auto& a : mu.atoms)
    t.add_row() = {io::rat_str(a.loc), io::fmt12(a.loc.get_d()),
                   io::rat_str(a.mass), io::fmt12(a.mass.get_d())};
  ctx.emit(t, "tmeasure_" + partition_tag(lam));
  ctx.gate(mu.total_mass() == 1,
           "tmeasure " + lam.str() + ": total mass equals 1");
  ctx.gate(balance_holds(D),
           "tmeasure " + lam.str() + ": x*m({x}) == (x+1)*m({-x-1}) at every positive location");
  ctx.info("tmeasure " + lam.str() + ": m2 = " + io::rat_str(mu.moment(2)) +
           ", m4 = " + io::rat_str(mu.moment(4)));
  return ctx.finish();
}

int cmd_cornermass(RunContext& ctx, int nmax) {
  ctx.set("nmax", static_cast<long long>(nmax));
  io::Table t;
  t.header = {"lambda", "mu", "dimension_ratio", "corner_mass"};
  bool all = true;
  long long edges = 0;
  for (int n = 0; n <= nmax; ++n)
    for (const auto& lam : enumerate_strict_partitions(n))
      for (const auto& mv : addable_boxes(lam)) {
        const auto [lhs, rhs] = corner_mass_check(lam, mv.result);
        all = all && (lhs == rhs);
        ++edges;
        t.add_row() = {lam.str(), mv.result.str(), io::rat_str(lhs),
                       io::rat_str(rhs)};
      }
  ctx.emit(t, "cornermass_nmax" + std::to_string(nmax));
  ctx.gate(all, "cornermass nmax=" + std::to_string(nmax) +
                    ": scaled dimension ratio equals the corner mass of the transition measure on all " +
                    std::to_string(edges) + " edges");
  return ctx.finish();
}

int cmd_balance(RunContext& ctx, int nmax) {
  ctx.set("nmax", static_cast<long long>(nmax));
  io::Table t;
  t.header = {"n", "lambda", "positive_locations", "ok"};
  bool all = true;
  long long shapes = 0;
  for (int n = 1; n <= nmax; ++n)
    for (const auto& lam : enumerate_strict_partitions(n)) {
      const DoubledDiagram D = doubled_profile(lam);
      const FiniteMeasure mu = transition_measure(D);
      bool ok = balance_holds(D);
      std::string locs;
      for (const auto& a : mu.atoms) {
        if (!(a.loc > 0)) continue;
        if (!locs.empty()) locs += ' ';
        locs += io::rat_str(a.loc);
        const Rat lhs = Rat(a.loc * mu.mass_at(a.loc));
        const Rat rhs = Rat((a.loc + 1) * mu.mass_at(Rat(-(a.loc + 1))));
        ok = ok && (lhs == rhs);
      }
      all = all && ok;
      ++shapes;
      t.add_row() = {std::to_string(n), lam.str(), locs, ok ? "1" : "0"};
    }
  ctx.emit(t, "balance_nmax" + std::to_string(nmax));
  ctx.gate(all, "balance nmax=" + std::to_string(nmax) +
                    ": x*m({x}) == (x+1)*m({-x-1}) for every positive location of all " +
                    std::to_string(shapes) + " shapes");
  return ctx.finish();
}

int cmd_graph(RunContext& ctx, int n) {
  ctx.set("n", static_cast<long long>(n));
  io::Table t;
  t.header = {"level",        "upper",       "gamma_upper", "lower",
              "gamma_lower",  "mult",        "weight_down", "weight_down_f",
              "weight_up",    "weight_up_f"};
  bool stochastic = true;
  for (int level = 1; level <= n; ++level) {
    const LevelMatrices L = level_matrices(level);
    for (std::size_t i = 0; i < L.upper.size(); ++i) {
      Rat rowsum(0);
      for (std::size_t j = 0; j < L.lower.size(); ++j) {
        rowsum += L.down[i][j];
        if (L.down[i][j] == 0 && L.up[j][i] == 0) continue;
        const int mult = branching_multiplicity(L.upper[i], L.lower[j]);
        t.add_row() = {std::to_string(level),
                       L.upper[i].str(),
                       L.upper[i].gamma > 0 ? "+1" : "-1",
                       L.lower[j].str(),
                       L.lower[j].gamma > 0 ? "+1" : "-1",
                       std::to_string(mult),
                       io::rat_str(L.down[i][j]),
                       io::fmt12(L.down[i][j].get_d()),
                       io::rat_str(L.up[j][i]),
                       io::fmt12(L.up[j][i].get_d())};
      }
      stochastic = stochastic && (rowsum == 1);
    }
    for (std::size_t j = 0; j < L.lower.size(); ++j) {
      Rat rowsum(0);
      for (std::size_t i = 0; i < L.upper.size(); ++i) rowsum += L.up[j][i];
      stochastic = stochastic && (rowsum == 1);
    }
  }
  ctx.emit(t, "graph_n" + std::to_string(n));
  ctx.gate(stochastic, "graph n=" + std::to_string(n) +
                           ": downward and upward transition matrices are row-stochastic at every level");
  return ctx.finish();
}

int cmd_plancherel(RunContext& ctx, int n, int replicas) {
  ctx.set("n", static_cast<long long>(n));
  ctx.set("replicas", static_cast<long long>(replicas));
  const LevelMatrices L = level_matrices(n);
  const LabelMeasure P = plancherel_spin(n);
  const LabelMeasure Pl = plancherel_spin(n - 1);
  GCache cache;

  // empirical frequencies from the exact sampler (optional)
  std::map<NazarovLabel, long long> counts;
  if (replicas > 0)
    for (int r = 0; r < replicas; ++r) {
      Rng rng(ctx.seed, static_cast<std::uint64_t>(r));
      counts[sample_plancherel(n, rng, cache)] += 1;
    }

  io::Table t;
  t.header = {"label", "dim", "mass", "mass_f"};
  if (replicas > 0) t.header.push_back("empirical_freq");
  Rat dim_sq(0);
  for (std::size_t i = 0; i < P.labels.size(); ++i) {
    const Int d = dim_spin(P.labels[i], &cache);
    dim_sq += Rat(d) * Rat(d);
    auto& row = t.add_row();
    row = {P.labels[i].str(), io::int_str(d), io::rat_str(P.mass[i]),
           io::fmt12(P.mass[i].get_d())};
    if (replicas > 0) {
      const auto it = counts.find(P.labels[i]);
      const double f =
          it == counts.end() ? 0.0
                             : static_cast<double>(it->second) / replicas;
      row.push_back(io::fmt12(f));
    }
  }
  ctx.emit(t, "plancherel_n" + std::to_string(n));

  const std::string tagn = "plancherel n=" + std::to_string(n);
  ctx.gate(dim_sq == Rat(factorial(static_cast<unsigned long>(n))),
           tagn + ": sum of squared dimensions equals n!");

  bool restrict_ok = true;
  for (std::size_t i = 0; i < L.upper.size(); ++i) {
    Rat sum(0);
    for (std::size_t j = 0; j < L.lower.size(); ++j) {
      const int c = branching_multiplicity(L.upper[i], L.lower[j]);
      if (c) sum += Rat(c) * Rat(dim_spin(L.lower[j], &cache));
    }
    restrict_ok = restrict_ok && (sum == Rat(dim_spin(L.upper[i], &cache)));
  }
  ctx.gate(restrict_ok, tagn + ": restricted dimension equals the weighted sum over lower neighbors");

  bool stoch = true;
  for (std::size_t i = 0; i < L.upper.size(); ++i) {
    Rat sd(0), ss(0);
    for (std::size_t j = 0; j < L.lower.size(); ++j) sd += L.down[i][j];
    for (std::size_t k = 0; k < L.upper.size(); ++k) ss += L.step[i][k];
    stoch = stoch && (sd == 1) && (ss == 1);
  }
  for (std::size_t j = 0; j < L.lower.size(); ++j) {
    Rat su(0);
    for (std::size_t i = 0; i < L.upper.size(); ++i) su += L.up[j][i];
    stoch = stoch && (su == 1);
  }
  ctx.gate(stoch, tagn + ": down, up, and composite step matrices are row-stochastic");

  bool detailed = true;
  for (std::size_t i = 0; i < L.upper.size(); ++i)
    for (std::size_t k = 0; k < L.upper.size(); ++k)
      detailed = detailed &&
                 (Rat(P.mass[i] * L.step[i][k]) == Rat(P.mass[k] * L.step[k][i]));
  ctx.gate(detailed, tagn + ": detailed balance of the down-up step under the stationary weights");

  bool upinv = true;
  for (std::size_t i = 0; i < L.upper.size(); ++i) {
    Rat sum(0);
    for (std::size_t j = 0; j < L.lower.size(); ++j)
      sum += Pl.mass[j] * L.up[j][i];
    upinv = upinv && (sum == P.mass[i]);
  }
  ctx.gate(upinv, tagn + ": one up step maps the level n-1 stationary law to the level n law");
  return ctx.finish();
}

int cmd_chartable(RunContext& ctx, int n) {
  ctx.set("n", static_cast<long long>(n));
  const CharacterTable T = character_table(n);
  const int r = static_cast<int>(T.classes.rep.size());

  io::Table cls;
  cls.header = {"class", "size", "cycle_type", "z", "z_partner"};
  for (int k = 0; k < r; ++k) {
    const TElem rep = T.group.element(T.classes.rep[k]);
    cls.add_row() = {std::to_string(k), std::to_string(T.classes.size[k]),
                     partition_str(T.classes.type[k]),
                     std::to_string(static_cast<int>(rep.z)),
                     std::to_string(T.classes.z_partner[k])};
  }
  ctx.emit(cls, "chartable_classes_n" + std::to_string(n));

  // reverse map: row index -> spin label (linear rows stay unlabeled)
  std::vector<std::string> row_label(T.rows.size());
  for (std::size_t li = 0; li < T.labels.size(); ++li)
    row_label[static_cast<std::size_t>(T.label_row[li])] = T.labels[li].str();

  io::Table t;
  t.header = {"row", "label", "dim", "spin"};
  for (int k = 0; k < r; ++k) t.header.push_back("cls" + std::to_string(k));
  const double order = static_cast<double>(T.group.order());
  bool ortho = true;
  for (std::size_t m = 0; m < T.rows.size(); ++m) {
    auto& row = t.add_row();
    row = {std::to_string(m), row_label[m], io::fmt12(T.dim[m]),
           T.spin[m] ? "1" : "0"};
    double norm = 0;
    for (int k = 0; k < r; ++k) {
      norm += T.classes.size[k] * std::norm(T.rows[m][k]);
      row.push_back(io::complex12(T.rows[m][k]));
    }
    ortho = ortho && (std::abs(norm - order) <= 1e-6 * order);
  }
  ctx.emit(t, "chartable_n" + std::to_string(n));

  const std::string tagn = "chartable n=" + std::to_string(n);
  ctx.gate(ortho, tagn + ": every character row has squared norm |G| (first orthogonality)");
  ctx.gate(T.labels.size() == spin_vertices(n).size(),
           tagn + ": one spin character per vertex label");
  return ctx.finish();
}

int cmd_verify_jm(RunContext& ctx, int n, int k) {
  ctx.set("n", static_cast<long long>(n));
  ctx.set("k", static_cast<long long>(k));
  const TraceCheck r = jm_trace_check(n, k);
  io::Table t;
  t.header = {"label", "character_side", "measure_side", "measure_side_f", "deviation"};
  for (const auto& row : r.rows)
    t.add_row() = {row.label.str(), io::fmt12(row.lhs),
                   io::rat_str(jm_moment_rhs(row.label.lambda, k)),
                   io::fmt12(row.rhs), io::fmt12(row.dev)};
  ctx.emit(t, "verifyjm_n" + std::to_string(n) + "_k" + std::to_string(k));
  ctx.gate(r.max_dev <= 1e-9,
           "verify-jm n=" + std::to_string(n) + " k=" + std::to_string(k) +
               ": character-side trace equals corner-measure moment on all labels; max deviation = " +
               io::fmt12(r.max_dev));
  return ctx.finish();
}

int cmd_afactor(RunContext& ctx, const PausingOpts& po, int k, double t,
                long long n, long long jmax) {
  record_pausing(ctx, po);
  ctx.set("k", static_cast<long long>(k));
  ctx.set("t", t);
  ctx.set("n", n);
  ctx.set("jmax", jmax);
  const PausingSpec psi = build_pausing(po);
  const AFactorResult r = a_factor(k, t, n, psi, jmax);
  io::Table tab;
  tab.header = {"family",      "k",          "t",         "n",
                "mean",        "value",      "exp_reference",
                "abs_diff",    "tail_mass",  "terms_used", "tail_warning"};
  tab.add_row() = {po.family,
                   std::to_string(k),
                   io::fmt12(t),
                   std::to_string(n),
                   io::fmt12(psi.mean),
                   io::fmt12(r.value),
                   io::fmt12(r.exponential_reference),
                   io::fmt12(std::fabs(r.value - r.exponential_reference)),
                   io::fmt12(r.tail_mass),
                   std::to_string(r.terms_used),
                   r.tail_warning ? "1" : "0"};
  ctx.emit(tab, "afactor");
  if (r.tail_warning)
    ctx.info("afactor: truncated renewal mass " + io::fmt12(r.tail_mass) +
             " exceeds 1e-8; increase --jmax");
  if (po.family == "exponential") {
    ctx.gate(std::fabs(r.value - r.exponential_reference) <= 1e-10,
             "afactor exponential: renewal-weighted sum equals exp(-k*t/m); |diff| = " +
                 io::fmt12(std::fabs(r.value - r.exponential_reference)));
  } else {
    ctx.info("afactor " + po.family + ": value = " + io::fmt12(r.value) +
             ", large-n exponential reference = " +
             io::fmt12(r.exponential_reference));
  }
  return ctx.finish();
}

int cmd_simulate(RunContext& ctx, const PausingOpts& po, int n, double t,
                 int replicas, int threads, const std::string& initial) {
  record_pausing(ctx, po);
  ctx.set("n", static_cast<long long>(n));
  ctx.set("t", t);
  ctx.set("replicas", static_cast<long long>(replicas));
  ctx.set("threads", static_cast<long long>(threads));
  ctx.set("initial", initial);
  const PausingSpec psi = build_pausing(po);

  InitialSpec init = InitialSpec::plancherel();
  if (initial != "plancherel") {
    const std::string prefix = "delta:";
    if (initial.rfind(prefix, 0) != 0)
      throw std::invalid_argument(
          "initial must be 'plancherel' or 'delta:<parts>[:<sign>]'");
    init = InitialSpec::delta(parse_label(initial.substr(prefix.size())));
  }

  const std::vector<SampleRecord> samples =
      simulate(n, t, psi, init, replicas, ctx.seed, threads);

  io::Table tab;
  tab.header = {"replica", "label", "jumps", "m2", "m4", "m6"};
  for (std::size_t r = 0; r < samples.size(); ++r)
    tab.add_row() = {std::to_string(r),
                     samples[r].label.str(),
                     std::to_string(samples[r].jumps),
                     io::fmt12(samples[r].m2),
                     io::fmt12(samples[r].m4),
                     io::fmt12(samples[r].m6)};
  ctx.emit(tab, "simulate_records");

  // starting cumulants for the deterministic prediction
  std::vector<double> R0 = {0, 1, 0, 0, 0, 0};
  bool have_prediction = true;
  if (init.kind == InitialSpec::Kind::delta) {
    double m2 = 0, m4 = 0, m6 = 0;
    rescaled_even_moments(init.at, n, m2, m4, m6);
    R0 = moments_to_cumulants(std::vector<double>{0, m2, 0, m4, 0, m6});
    // the evolution semigroup is defined on unit-variance starts
    have_prediction = std::fabs(R0[0]) <= 1e-12 && std::fabs(R0[1] - 1) <= 1e-9;
    if (have_prediction) R0[1] = 1.0;
  }

  nlohmann::ordered_json summary;
  summary["n"] = n;
  summary["t"] = io::fmt12(t);
  summary["replicas"] = replicas;
  summary["pausing_family"] = po.family;
  summary["pausing_mean"] = io::fmt12(psi.mean);
  summary["initial"] = initial;
  summary["stationary_reference_m2"] = "1";
  summary["stationary_reference_m4"] =
      io::fmt12(2.0 - 1.0 / (2.0 * static_cast<double>(n)));
  if (have_prediction) {
    const auto rows = concentration_report(samples, R0, t, psi.mean);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json o;
      o["order"] = row.order;
      o["predicted"] = io::fmt12(row.predicted);
      o["mean"] = io::fmt12(row.mean);
      o["sd"] = io::fmt12(row.sd);
      o["z"] = io::fmt12(row.z);
      arr.push_back(std::move(o));
      ctx.info("simulate: order " + std::to_string(row.order) + " mean = " +
               io::fmt12(row.mean) + ", predicted = " + io::fmt12(row.predicted) +
               ", sd = " + io::fmt12(row.sd));
    }
    summary["concentration"] = std::move(arr);
  } else {
    summary["concentration"] = nullptr;
    summary["note"] = "prediction skipped: initial shape is not unit-variance";
    ctx.info("simulate: prediction skipped (initial shape is not unit-variance)");
  }
  ctx.emit_json(summary, "simulate_summary");
  return ctx.finish();
}

int cmd_evolve(RunContext& ctx, const std::string& cumulants,
               const std::string& q_arg, double t, double m, bool have_q,
               bool have_t) {
  ctx.set("cumulants", cumulants);
  const std::vector<Rat> R0 = parse_rat_list(cumulants);
  if (R0.size() < 2 || R0[0] != 0 || R0[1] != 1)
    throw std::invalid_argument("evolve: cumulants must start 0,1 (centered, unit variance)");
  if (have_q && have_t)
    throw std::invalid_argument("evolve: give either --q or --t/--m, not both");

  io::Table tab;
  bool semigroup_ok = false;
  if (have_q) {
    const Rat q = parse_rat(q_arg);
    ctx.set("q", io::rat_str(q));
    const std::vector<Rat> Rt = evolve(R0, q);
    const std::vector<Rat> Mt = cumulants_to_moments(Rt);
    tab.header = {"order", "cumulant_start", "cumulant_t", "cumulant_t_f",
                  "moment_t", "moment_t_f"};
    for (std::size_t j = 0; j < Rt.size(); ++j)
      tab.add_row() = {std::to_string(j + 1),       io::rat_str(R0[j]),
                       io::rat_str(Rt[j]),          io::fmt12(Rt[j].get_d()),
                       io::rat_str(Mt[j]),          io::fmt12(Mt[j].get_d())};
    const Rat qq = Rat(q * q);
    semigroup_ok = evolve(Rt, q) == evolve(R0, qq);
  } else {
    if (!(m > 0)) throw std::invalid_argument("evolve: mean must be positive");
    ctx.set("t", t);
    ctx.set("m", m);
    const double q = std::exp(-t / m);
    std::vector<double> r0(R0.size());
    for (std::size_t j = 0; j < R0.size(); ++j) r0[j] = R0[j].get_d();
    const std::vector<double> Rt = evolve(r0, q);
    const std::vector<double> Mt = cumulants_to_moments(Rt);
    tab.header = {"order", "cumulant_start", "cumulant_t_f", "moment_t_f"};
    for (std::size_t j = 0; j < Rt.size(); ++j)
      tab.add_row() = {std::to_string(j + 1), io::rat_str(R0[j]),
                       io::fmt12(Rt[j]), io::fmt12(Mt[j])};
    const std::vector<double> two = evolve(Rt, q);
    const std::vector<double> one = evolve(r0, q * q);
    double dev = 0;
    for (std::size_t j = 0; j < two.size(); ++j)
      dev = std::max(dev, std::fabs(two[j] - one[j]));
    semigroup_ok = dev <= 1e-12;
  }
  ctx.emit(tab, "evolve");
  ctx.gate(semigroup_ok, "evolve: two half-steps compose to one full step (semigroup property)");
  return ctx.finish();
}

int cmd_pde_check(RunContext& ctx, int order, const std::string& cumulants,
                  int starts) {
  ctx.set("order", static_cast<long long>(order));
  ctx.set("starts", static_cast<long long>(starts));
  ctx.set("cumulants", cumulants);
  if (order < 1) throw std::invalid_argument("pde-check: order must be >= 1");

  struct Start {
    std::string name;
    std::vector<Rat> R0;
  };
  std::vector<Start> inputs;
  inputs.push_back({"semicircle", semicircle_cumulants(Rat(1), order + 1)});
  if (!trimmed(cumulants).empty()) {
    std::vector<Rat> user = parse_rat_list(cumulants);
    if (user.size() < 2 || user[0] != 0 || user[1] != 1)
      throw std::invalid_argument("pde-check: cumulants must start 0,1");
    user.resize(static_cast<std::size_t>(order) + 1, Rat(0));
    inputs.push_back({"user", std::move(user)});
  }
  Rng rng(ctx.seed, 0);
  for (int s = 0; s < starts; ++s) {
    std::vector<Rat> R(static_cast<std::size_t>(order) + 1, Rat(0));
    R[1] = 1;
    for (std::size_t j = 4; j <= R.size(); j += 2) {
      const long num = static_cast<long>(rng.below(19)) - 9;
      const long den = static_cast<long>(rng.below(9)) + 1;
      Rat v(num, den);
      v.canonicalize();
      R[j - 1] = v;
    }
    inputs.push_back({"random" + std::to_string(s), std::move(R)});
  }

  io::Table tab;
  tab.header = {"start", "inverse_power", "residual_coefficient", "zero"};
  for (const auto& in : inputs) {
    const std::vector<QPoly> res = pde_residual(in.R0, order);
    bool all_zero = true;
    for (std::size_t j = 0; j < res.size(); ++j) {
      all_zero = all_zero && res[j].is_zero();
      tab.add_row() = {in.name, std::to_string(j), qpoly_str(res[j]),
                       res[j].is_zero() ? "1" : "0"};
    }
    ctx.gate(all_zero, "pde-check order=" + std::to_string(order) + " start=" + in.name +
                           ": transport-equation residual vanishes identically in q");
  }
  ctx.emit(tab, "pdecheck_order" + std::to_string(order));

  const auto M = cumulants_to_moments(semicircle_cumulants(Rat(1), 12));
  const auto defect = stationary_defect(M);
  bool stat_zero = true;
  for (int j = 0; j <= defect.order(); ++j)
    stat_zero = stat_zero && (defect.c[j] == 0);
  ctx.gate(stat_zero, "pde-check: semicircle moments satisfy the stationary resolvent equation to order 12");
  return ctx.finish();
}

int cmd_vershik(RunContext& ctx, int kmax, int bounds_kmax, double lo,
                double hi, int points) {
  ctx.set("kmax", static_cast<long long>(kmax));
  ctx.set("bounds_kmax", static_cast<long long>(bounds_kmax));
  ctx.set("lo", lo);
  ctx.set("hi", hi);
  ctx.set("points", static_cast<long long>(points));
  if (kmax < 2 || bounds_kmax < 1 || points < 2 || !(hi > lo))
    throw std::invalid_argument("vershik: bad parameter range");

  const std::vector<Rat> moms = tau_v_even_moments(std::max(kmax, bounds_kmax));
  const std::vector<Rat> pipeline = rayleigh_to_cumulants(moms, kmax);

  io::Table mt;
  mt.header = {"two_k",        "moment",     "moment_f",
               "bound_lower",  "bound_upper", "bounds_ok",
               "cumulant_closed", "cumulant_pipeline", "cumulants_match"};
  bool bounds_ok = true, cumulants_ok = true;
  for (int k = 1; k <= std::max(kmax, bounds_kmax); ++k) {
    const Rat mk = moms[static_cast<std::size_t>(k) - 1];
    const double mkd = mk.get_d();
    auto& row = mt.add_row();
    row = {std::to_string(2 * k), io::rat_str(mk), io::fmt12(mkd)};
    if (k <= bounds_kmax) {
      const auto [bl, bh] = tau_v_moment_bounds(2 * k);
      const bool okb = (bl <= mkd && mkd <= bh);
      bounds_ok = bounds_ok && okb;
      row.push_back(io::fmt12(bl));
      row.push_back(io::fmt12(bh));
      row.push_back(okb ? "1" : "0");
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    if (k <= kmax) {
      const Rat closed = vershik_cumulant(2 * k);
      const Rat pipe = pipeline[static_cast<std::size_t>(k) - 1];
      cumulants_ok = cumulants_ok && (closed == pipe);
      row.push_back(io::rat_str(closed));
      row.push_back(io::rat_str(pipe));
      row.push_back(closed == pipe ? "1" : "0");
    } else {
      row.insert(row.end(), {"", "", ""});
    }
  }
  ctx.emit(mt, "vershik_moments");

  io::Table ct;
  ct.header = {"x", "plancherel_shape", "uniform_shape", "gap", "charge_density"};
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    ct.add_row() = {io::fmt12(x), io::fmt12(vkls(x)), io::fmt12(vershik(x)),
                    io::fmt12(vershik(x) - std::fabs(x)),
                    io::fmt12(vershik_density(x))};
  }
  ctx.emit(ct, "vershik_curve");

  ctx.gate(tau_v_moment(2) == 2 && tau_v_moment(4) == Rat(84, 5),
           "vershik: second and fourth charge moments equal 2 and 84/5");
  ctx.gate(cumulants_ok, "vershik kmax=" + std::to_string(kmax) +
                             ": closed double-sum cumulants equal the moment-pipeline cumulants exactly");
  ctx.gate(bounds_ok, "vershik bounds_kmax=" + std::to_string(bounds_kmax) +
                          ": factorial moment bounds hold");
  ctx.info("vershik: cumulant growth constant (kmax=10) = " +
           io::fmt12(cumulant_growth_constant(10)));
  return ctx.finish();
}

int cmd_thoma(RunContext& ctx, const std::string& alpha_arg, int order,
              int kmax, const std::string& q_arg, double t, double m,
              bool have_q) {
  ctx.set("alpha", alpha_arg);
  ctx.set("order", static_cast<long long>(order));
  ctx.set("kmax", static_cast<long long>(kmax));
  if (order < 4 || order % 2 != 0)
    throw std::invalid_argument("thoma: order must be even and >= 4");
  const ThomaAlpha alpha(parse_rat_list(alpha_arg));
  const FiniteMeasure nu = thoma_nu(alpha);

  io::Table nt;
  nt.header = {"location", "location_f", "mass", "mass_f"};
  for (const auto& a : nu.atoms)
    nt.add_row() = {io::rat_str(a.loc), io::fmt12(a.loc.get_d()),
                    io::rat_str(a.mass), io::fmt12(a.mass.get_d())};
  ctx.emit(nt, "thoma_nu");

  io::Table ft;
  ft.header = {"k", "normalized_character", "normalized_character_f"};
  for (int k = 3; k <= kmax; k += 2) {
    const Rat v = f_alpha(alpha, k);
    ft.add_row() = {std::to_string(k), io::rat_str(v), io::fmt12(v.get_d())};
  }
  ctx.emit(ft, "thoma_characters");

  const int half = (order - 2) / 2;
  const std::vector<Rat> numoms = measure_even_moments(nu, std::max(half, order / 2));
  bool moments_ok = true;
  for (int i = 1; i <= order / 2; ++i)
    moments_ok = moments_ok &&
                 (numoms[static_cast<std::size_t>(i) - 1] == thoma_moment(alpha, 2 * i));

  io::Table rt;
  bool evolved_ok = false;
  if (have_q) {
    const Rat q = parse_rat(q_arg);
    ctx.set("q", io::rat_str(q));
    const std::vector<Rat> R = r_transform_evolved(numoms, q, order);
    const std::vector<Rat> base = r_transform_evolved(numoms, Rat(1), order);
    evolved_ok = (R == evolve(base, q));
    rt.header = {"order", "coefficient", "coefficient_f"};
    for (std::size_t j = 0; j < R.size(); ++j)
      rt.add_row() = {std::to_string(j + 1), io::rat_str(R[j]),
                      io::fmt12(R[j].get_d())};
  } else {
    if (!(m > 0)) throw std::invalid_argument("thoma: mean must be positive");
    ctx.set("t", t);
    ctx.set("m", m);
    const std::vector<double> R = r_transform_evolved(nu, t, m, order);
    std::vector<double> base(numoms.size());
    for (std::size_t i = 0; i < numoms.size(); ++i) base[i] = numoms[i].get_d();
    const std::vector<double> direct =
        r_transform_evolved(base, std::exp(-t / m), order);
    double dev = 0;
    for (std::size_t j = 0; j < R.size(); ++j)
      dev = std::max(dev, std::fabs(R[j] - direct[j]));
    evolved_ok = dev <= 1e-12;
    rt.header = {"order", "coefficient_f"};
    for (std::size_t j = 0; j < R.size(); ++j)
      rt.add_row() = {std::to_string(j + 1), io::fmt12(R[j])};
  }
  ctx.emit(rt, "thoma_rtransform");

  ctx.gate(moments_ok, "thoma: even moments of the frequency measure equal the odd power sums of alpha");
  ctx.gate(evolved_ok, "thoma: evolved transform coefficients factor through the one-parameter scaling");
  return ctx.finish();
}

int cmd_density(RunContext& ctx, int points) {
  ctx.set("points", static_cast<long long>(points));
  if (points < 2) throw std::invalid_argument("density: points must be >= 2");
  const double edge = 1.5 * std::sqrt(3.0);

  io::Table t;
  t.header = {"x", "density"};
  for (int i = 0; i < points; ++i) {
    const double x = -edge + 2 * edge * i / (points - 1);
    t.add_row() = {io::fmt12(x), io::fmt12(density_uniform_case(x))};
  }
  ctx.emit(t, "density");

  boost::math::quadrature::tanh_sinh<double> integrator;
  const auto mass = 2 * integrator.integrate(
                            [](double x) { return density_uniform_case(x); },
                            0.0, edge);
  const auto m2 = 2 * integrator.integrate(
                          [](double x) { return x * x * density_uniform_case(x); },
                          0.0, edge);
  const auto m4 = 2 * integrator.integrate(
                          [](double x) {
                            return x * x * x * x * density_uniform_case(x);
                          },
                          0.0, edge);
  // reference moments from the cumulant pipeline (all even cumulants 1)
  const std::vector<Rat> M =
      cumulants_to_moments(std::vector<Rat>{Rat(0), Rat(1), Rat(0), Rat(1)});
  const double ref2 = M[1].get_d(), ref4 = M[3].get_d();

  ctx.gate(std::fabs(mass - 1.0) <= 1e-6,
           "density: total mass = " + io::fmt12(mass) + " (within 1e-6 of 1)");
  ctx.gate(std::fabs(m2 - ref2) <= 1e-6,
           "density: second moment = " + io::fmt12(m2) +
               " matches the cumulant pipeline value " + io::fmt12(ref2));
  ctx.gate(std::fabs(m4 - ref4) <= 1e-5,
           "density: fourth moment = " + io::fmt12(m4) +
               " matches the cumulant pipeline value " + io::fmt12(ref4));
  return ctx.finish();
}

int cmd_shape(RunContext& ctx, const std::string& preset,
              const std::string& moments_arg, int nmoments, double lo,
              double hi, int points, bool have_lo, bool have_hi,
              bool have_points, bool have_nmoments) {
  ctx.set("preset", preset);
  ctx.set("moments", moments_arg);

  std::vector<Rat> M;
  std::function<double(double)> reference;
  if (!trimmed(moments_arg).empty()) {
    if (!preset.empty())
      throw std::invalid_argument("shape: give either --preset or --moments");
    if (!have_lo || !have_hi)
      throw std::invalid_argument("shape: --lo and --hi are required with --moments");
    M = parse_rat_list(moments_arg);
  } else if (preset == "plancherel") {
    if (!have_nmoments) nmoments = 16;
    M = cumulants_to_moments(semicircle_cumulants(Rat(1), nmoments));
    if (!have_lo) lo = -3.0;
    if (!have_hi) hi = 3.0;
    if (!have_points) points = 241;
    reference = [](double x) { return vkls(x); };
  } else if (preset == "uniform") {
    if (!have_nmoments) nmoments = 12;
    if (nmoments % 2 != 0)
      throw std::invalid_argument("shape: nmoments must be even for preset uniform");
    std::vector<Rat> R(static_cast<std::size_t>(nmoments), Rat(0));
    for (int k = 1; 2 * k <= nmoments; ++k)
      R[static_cast<std::size_t>(2 * k) - 1] = vershik_cumulant(2 * k);
    M = cumulants_to_moments(R);
    if (!have_lo) lo = -4.0;
    if (!have_hi) hi = 4.0;
    if (!have_points) points = 321;
    reference = [](double x) { return vershik(x); };
  } else {
    throw std::invalid_argument(
        "shape: need --preset {plancherel,uniform} or --moments");
  }
  ctx.set("nmoments", static_cast<long long>(M.size()));
  ctx.set("lo", lo);
  ctx.set("hi", hi);
  ctx.set("points", static_cast<long long>(points));

  const ShapeRecovery rec = shape_from_moments(M, lo, hi, points);

  io::Table t;
  t.header = {"x", "curve", "charge_density", "charge_distribution"};
  for (std::size_t i = 0; i < rec.omega.x.size(); ++i)
    t.add_row() = {io::fmt12(rec.omega.x[i]), io::fmt12(rec.omega.y[i]),
                   io::fmt12(rec.density[i]), io::fmt12(rec.distribution[i])};
  ctx.emit(t, "shape_curve");

  double sup = 0;
  if (reference)
    for (std::size_t i = 0; i < rec.omega.x.size(); ++i)
      sup = std::max(sup, std::fabs(rec.omega.y[i] - reference(rec.omega.x[i])));

  nlohmann::ordered_json meta;
  meta["depth"] = rec.depth;
  meta["min_offdiag"] = io::fmt12(rec.min_offdiag);
  meta["mass_defect"] = io::fmt12(rec.mass_defect);
  meta["edge_defect"] = io::fmt12(rec.edge_defect);
  meta["clamp_defect"] = io::fmt12(rec.clamp_defect);
  meta["domination_defect"] = io::fmt12(rec.omega.domination_defect());
  meta["lipschitz_defect"] = io::fmt12(rec.omega.lipschitz_defect());
  if (reference) meta["sup_vs_reference"] = io::fmt12(sup);
  ctx.emit_json(meta, "shape_meta");

  ctx.gate(rec.omega.domination_defect() == 0.0,
           "shape: reconstructed curve dominates |x| everywhere");
  ctx.gate(rec.omega.lipschitz_defect() <= 1e-9,
           "shape: reconstructed curve is 1-Lipschitz");
  if (preset == "plancherel")
    ctx.gate(sup <= 2e-2, "shape preset=plancherel: sup distance to the closed-form curve = " +
                              io::fmt12(sup) + " (within 2e-2)");
  else if (reference)
    ctx.info("shape preset=" + preset + ": sup distance to the closed-form curve = " +
             io::fmt12(sup) + " (moment-limited diagnostic)");
  ctx.info("shape: continued-fraction depth = " + std::to_string(rec.depth) +
           ", mass defect = " + io::fmt12(rec.mass_defect));
  return ctx.finish();
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{
      "spinwalk: exact spin branching, transition measures, trace identities, "
      "renewal-paused walks, and limit-shape transforms"};
  app.require_subcommand(1);
  std::function<int()> runner;

  // enumerate
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "enumerate";
    auto n = std::make_shared<int>(5);
    CLI::App* sub = app.add_subcommand(
        "enumerate", "List the spin vertex labels of one level with dimensions and stationary masses");
    add_common(sub, *ctx);
    sub->add_option("--n", *n, "Level (size of the partitions)")
        ->required()
        ->check(CLI::Range(1, 60));
    sub->callback([&runner, ctx, n] {
      runner = [ctx, n] { return cmd_enumerate(*ctx, *n); };
    });
  }

  // gcheck
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "gcheck";
    auto nmax = std::make_shared<int>(10);
    CLI::App* sub = app.add_subcommand(
        "gcheck", "Check the hook-product filling count against brute-force enumeration");
    add_common(sub, *ctx);
    sub->add_option("--nmax", *nmax, "Largest partition size to sweep")
        ->check(CLI::Range(0, 12))
        ->capture_default_str();
    sub->callback([&runner, ctx, nmax] {
      runner = [ctx, nmax] { return cmd_gcheck(*ctx, *nmax); };
    });
  }

  // tmeasure
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "tmeasure";
    auto lambda = std::make_shared<std::string>();
    CLI::App* sub = app.add_subcommand(
        "tmeasure", "Transition measure of the doubled shape of one strict partition");
    add_common(sub, *ctx);
    sub->add_option("--lambda", *lambda, "Strict partition, e.g. '3,1' (or 'empty')")
        ->required();
    sub->callback([&runner, ctx, lambda] {
      runner = [ctx, lambda] { return cmd_tmeasure(*ctx, *lambda); };
    });
  }

  // cornermass
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "cornermass";
    auto nmax = std::make_shared<int>(9);
    CLI::App* sub = app.add_subcommand(
        "cornermass",
        "Check that the corner mass of the transition measure equals the scaled dimension ratio on every edge");
    add_common(sub, *ctx);
    sub->add_option("--nmax", *nmax, "Largest lower-partition size to sweep")
        ->check(CLI::Range(0, 14))
        ->capture_default_str();
    sub->callback([&runner, ctx, nmax] {
      runner = [ctx, nmax] { return cmd_cornermass(*ctx, *nmax); };
    });
  }

  // balance
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "balance";
    auto nmax = std::make_shared<int>(12);
    CLI::App* sub = app.add_subcommand(
        "balance", "Check the two-sided mass balance of transition measures across shapes");
    add_common(sub, *ctx);
    sub->add_option("--nmax", *nmax, "Largest partition size to sweep")
        ->check(CLI::Range(1, 20))
        ->capture_default_str();
    sub->callback([&runner, ctx, nmax] {
      runner = [ctx, nmax] { return cmd_balance(*ctx, *nmax); };
    });
  }

  // graph
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "graph";
    auto n = std::make_shared<int>(5);
    CLI::App* sub = app.add_subcommand(
        "graph", "Export the weighted branching graph (down and up transition weights) through one level");
    add_common(sub, *ctx);
    sub->add_option("--n", *n, "Top level")->required()->check(CLI::Range(1, 40));
    sub->callback([&runner, ctx, n] {
      runner = [ctx, n] { return cmd_graph(*ctx, *n); };
    });
  }

  // plancherel
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "plancherel";
    auto n = std::make_shared<int>(6);
    auto replicas = std::make_shared<int>(0);
    CLI::App* sub = app.add_subcommand(
        "plancherel",
        "Stationary vertex weights of one level with the full set of exact chain identities");
    add_common(sub, *ctx);
    sub->add_option("--n", *n, "Level")->required()->check(CLI::Range(1, 40));
    sub->add_option("--replicas", *replicas,
                    "Optional number of exact samples for empirical frequencies")
        ->check(CLI::Range(0, 10000000))
        ->capture_default_str();
    sub->callback([&runner, ctx, n, replicas] {
      runner = [ctx, n, replicas] { return cmd_plancherel(*ctx, *n, *replicas); };
    });
  }

  // chartable
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "chartable";
    auto n = std::make_shared<int>(5);
    CLI::App* sub = app.add_subcommand(
        "chartable", "Numeric character table of the double cover on n letters");
    add_common(sub, *ctx);
    sub->add_option("--n", *n, "Number of letters")->required()->check(CLI::Range(1, 8));
    sub->callback([&runner, ctx, n] {
      runner = [ctx, n] { return cmd_chartable(*ctx, *n); };
    });
  }

  // verify-jm
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "verify-jm";
    auto n = std::make_shared<int>(5);
    auto k = std::make_shared<int>(1);
    CLI::App* sub = app.add_subcommand(
        "verify-jm",
        "Check the ladder-element trace identity through the character table of the double cover");
    add_common(sub, *ctx);
    sub->add_option("--n", *n, "Level (needs n+1 <= 8)")->required()->check(CLI::Range(1, 7));
    sub->add_option("--k", *k, "Half the power of the ladder element")
        ->required()
        ->check(CLI::Range(1, 6));
    sub->callback([&runner, ctx, n, k] {
      runner = [ctx, n, k] { return cmd_verify_jm(*ctx, *n, *k); };
    });
  }

  // afactor
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "afactor";
    auto po = std::make_shared<PausingOpts>();
    auto k = std::make_shared<int>(2);
    auto t = std::make_shared<double>(1.0);
    auto n = std::make_shared<long long>(10000);
    auto jmax = std::make_shared<long long>(200000);
    CLI::App* sub = app.add_subcommand(
        "afactor", "Renewal-weighted tail factor of the paused walk for one pausing law");
    add_common(sub, *ctx);
    add_pausing(sub, *po);
    sub->add_option("--k", *k, "Decay index")->check(CLI::Range(0, 1000))->capture_default_str();
    sub->add_option("--t", *t, "Macroscopic time")->capture_default_str();
    sub->add_option("--n", *n, "Level")->check(CLI::Range(1LL, 100000000LL))->capture_default_str();
    sub->add_option("--jmax", *jmax, "Renewal-term cap")
        ->check(CLI::Range(0LL, 100000000LL))
        ->capture_default_str();
    sub->callback([&runner, ctx, po, k, t, n, jmax] {
      runner = [ctx, po, k, t, n, jmax] {
        return cmd_afactor(*ctx, *po, *k, *t, *n, *jmax);
      };
    });
  }

  // simulate
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "simulate";
    auto po = std::make_shared<PausingOpts>();
    auto n = std::make_shared<int>(50);
    auto t = std::make_shared<double>(1.0);
    auto replicas = std::make_shared<int>(100);
    auto threads = std::make_shared<int>(0);
    auto initial = std::make_shared<std::string>("plancherel");
    CLI::App* sub = app.add_subcommand(
        "simulate",
        "Run the renewal-paused down-up walk and record rescaled shape moments per replica");
    add_common(sub, *ctx);
    add_pausing(sub, *po);
    sub->add_option("--n", *n, "Level")->check(CLI::Range(1, 5000))->capture_default_str();
    sub->add_option("--t", *t, "Macroscopic time horizon")->capture_default_str();
    sub->add_option("--replicas", *replicas, "Independent replicas")
        ->check(CLI::Range(0, 10000000))
        ->capture_default_str();
    sub->add_option("--threads", *threads, "Worker threads (0 = hardware)")
        ->check(CLI::Range(0, 1024))
        ->capture_default_str();
    sub->add_option("--initial", *initial,
                    "Starting law: 'plancherel' or 'delta:<parts>[:<sign>]'")
        ->capture_default_str();
    sub->callback([&runner, ctx, po, n, t, replicas, threads, initial] {
      runner = [ctx, po, n, t, replicas, threads, initial] {
        return cmd_simulate(*ctx, *po, *n, *t, *replicas, *threads, *initial);
      };
    });
  }

  // evolve
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "evolve";
    auto cumulants = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto t = std::make_shared<double>(1.0);
    auto m = std::make_shared<double>(1.0);
    CLI::App* sub = app.add_subcommand(
        "evolve", "Scale a free-cumulant vector along the walk's one-parameter semigroup");
    add_common(sub, *ctx);
    sub->add_option("--cumulants", *cumulants,
                    "Starting cumulants as rationals, e.g. '0,1,0,1/2'")
        ->required();
    CLI::Option* qopt = sub->add_option("--q", *q, "Exact scale factor as a rational");
    CLI::Option* topt = sub->add_option("--t", *t, "Macroscopic time (with --m)")->capture_default_str();
    sub->add_option("--m", *m, "Pausing mean (with --t)")->capture_default_str();
    sub->callback([&runner, ctx, cumulants, q, t, m, qopt, topt] {
      const bool have_q = qopt->count() > 0;
      const bool have_t = topt->count() > 0;
      runner = [ctx, cumulants, q, t, m, have_q, have_t] {
        return cmd_evolve(*ctx, *cumulants, *q, *t, *m, have_q, have_t);
      };
    });
  }

  // pde-check
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "pde-check";
    auto order = std::make_shared<int>(10);
    auto cumulants = std::make_shared<std::string>();
    auto starts = std::make_shared<int>(0);
    CLI::App* sub = app.add_subcommand(
        "pde-check",
        "Verify the transport equation of the evolved resolvent coefficientwise in q");
    add_common(sub, *ctx);
    sub->add_option("--order", *order, "Highest inverse power checked")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    sub->add_option("--cumulants", *cumulants,
                    "Optional starting cumulants as rationals (padded with zeros)");
    sub->add_option("--starts", *starts, "Additional random even-cumulant starts")
        ->check(CLI::Range(0, 50))
        ->capture_default_str();
    sub->callback([&runner, ctx, order, cumulants, starts] {
      runner = [ctx, order, cumulants, starts] {
        return cmd_pde_check(*ctx, *order, *cumulants, *starts);
      };
    });
  }

  // vershik
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "vershik";
    auto kmax = std::make_shared<int>(8);
    auto bounds_kmax = std::make_shared<int>(10);
    auto lo = std::make_shared<double>(-4.0);
    auto hi = std::make_shared<double>(4.0);
    auto points = std::make_shared<int>(161);
    CLI::App* sub = app.add_subcommand(
        "vershik",
        "Closed-form limit curves with exact charge moments, cumulants, and bounds");
    add_common(sub, *ctx);
    sub->add_option("--kmax", *kmax, "Exact cumulant comparison up to order 2k")
        ->check(CLI::Range(2, 12))
        ->capture_default_str();
    sub->add_option("--bounds-kmax", *bounds_kmax, "Moment bounds checked up to order 2k")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    sub->add_option("--lo", *lo, "Curve grid lower end")->capture_default_str();
    sub->add_option("--hi", *hi, "Curve grid upper end")->capture_default_str();
    sub->add_option("--points", *points, "Curve grid size")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    sub->callback([&runner, ctx, kmax, bounds_kmax, lo, hi, points] {
      runner = [ctx, kmax, bounds_kmax, lo, hi, points] {
        return cmd_vershik(*ctx, *kmax, *bounds_kmax, *lo, *hi, *points);
      };
    });
  }

  // thoma
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "thoma";
    auto alpha = std::make_shared<std::string>();
    auto order = std::make_shared<int>(12);
    auto kmax = std::make_shared<int>(9);
    auto q = std::make_shared<std::string>();
    auto t = std::make_shared<double>(0.0);
    auto m = std::make_shared<double>(1.0);
    CLI::App* sub = app.add_subcommand(
        "thoma",
        "Frequency measure, normalized characters, and evolved transform of one parameter sequence");
    add_common(sub, *ctx);
    sub->add_option("--alpha", *alpha,
                    "Nonincreasing nonnegative rationals with sum <= 1, e.g. '1/2,1/4'")
        ->required();
    sub->add_option("--order", *order, "Number of transform coefficients (even)")
        ->check(CLI::Range(4, 40))
        ->capture_default_str();
    sub->add_option("--kmax", *kmax, "Largest odd character order")
        ->check(CLI::Range(3, 41))
        ->capture_default_str();
    CLI::Option* qopt = sub->add_option("--q", *q, "Exact scale factor as a rational");
    sub->add_option("--t", *t, "Macroscopic time (with --m)")->capture_default_str();
    sub->add_option("--m", *m, "Pausing mean (with --t)")->capture_default_str();
    sub->callback([&runner, ctx, alpha, order, kmax, q, t, m, qopt] {
      const bool have_q = qopt->count() > 0;
      runner = [ctx, alpha, order, kmax, q, t, m, have_q] {
        return cmd_thoma(*ctx, *alpha, *order, *kmax, *q, *t, *m, have_q);
      };
    });
  }

  // density
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "density";
    auto points = std::make_shared<int>(801);
    CLI::App* sub = app.add_subcommand(
        "density",
        "Closed-form stationary spectral density of the critical uniform-parameter ensemble");
    add_common(sub, *ctx);
    sub->add_option("--points", *points, "Grid size over the support")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    sub->callback([&runner, ctx, points] {
      runner = [ctx, points] { return cmd_density(*ctx, *points); };
    });
  }

  // shape
  {
    auto ctx = std::make_shared<RunContext>();
    ctx->command = "shape";
    auto preset = std::make_shared<std::string>();
    auto moments = std::make_shared<std::string>();
    auto nmoments = std::make_shared<int>(16);
    auto lo = std::make_shared<double>(0.0);
    auto hi = std::make_shared<double>(0.0);
    auto points = std::make_shared<int>(321);
    CLI::App* sub = app.add_subcommand(
        "shape", "Reconstruct a limit curve and its boundary-charge density from moments");
    add_common(sub, *ctx);
    CLI::Option* popt =
        sub->add_option("--preset", *preset, "Built-in moment source")
            ->check(CLI::IsMember({"plancherel", "uniform"}));
    sub->add_option("--moments", *moments, "Measure moments M_1.. as rationals");
    CLI::Option* nopt =
        sub->add_option("--nmoments", *nmoments, "Moments used by a preset")
            ->check(CLI::Range(2, 40));
    CLI::Option* lopt = sub->add_option("--lo", *lo, "Grid lower end");
    CLI::Option* hopt = sub->add_option("--hi", *hi, "Grid upper end");
    CLI::Option* ptopt =
        sub->add_option("--points", *points, "Grid size")->check(CLI::Range(2, 100000));
    sub->callback([&runner, ctx, preset, moments, nmoments, lo, hi, points, popt,
                   nopt, lopt, hopt, ptopt] {
      (void)popt;
      const bool have_lo = lopt->count() > 0, have_hi = hopt->count() > 0;
      const bool have_points = ptopt->count() > 0, have_n = nopt->count() > 0;
      runner = [ctx, preset, moments, nmoments, lo, hi, points, have_lo,
                have_hi, have_points, have_n] {
        return cmd_shape(*ctx, *preset, *moments, *nmoments, *lo, *hi, *points,
                         have_lo, have_hi, have_points, have_n);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (!runner) {
    std::cerr << "no command selected\n";
    return 2;
  }
  try {
    return runner();
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
