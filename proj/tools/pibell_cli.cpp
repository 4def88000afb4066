// pibell: command-line frontend for the permutationally invariant two-body
// Bell polytope library.  Every command is deterministic; identical
// invocations produce byte-identical output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pibell/bell_operator.hpp"
#include "pibell/errors.hpp"
#include "pibell/inequalities.hpp"
#include "pibell/oracle.hpp"
#include "pibell/polytope.hpp"
#include "pibell/robustness.hpp"
#include "pibell/states.hpp"

namespace {

constexpr const char* kVersion = "pibell 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

using nlohmann::json;
using namespace pibell;

std::string format_double(double x, int prec = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

// Angles are reported in units of pi with six decimals.
std::string format_angle(double radians) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", radians / std::numbers::pi);
  return buf;
}

struct OutputConfig {
  std::string format = "csv";  // csv | json
  std::string out;             // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output file (default: stdout)");
}

std::string resolve_out_path(const std::string& out) {
  if (out.empty()) return out;
  if (out.front() == '/') return out;
  if (const char* dir = std::getenv("PIBELL_OUT_DIR"))
    return std::string(dir) + "/" + out;
  return out;
}

// Provenance: tool version plus the full parameter echo, so any output file
// can be regenerated from its own header.
std::string provenance_echo(const std::vector<std::string>& args) {
  std::string echo = "pibell";
  for (const auto& a : args) echo += " " + a;
  return echo;
}

class Sink {
 public:
  Sink(const OutputConfig& cfg, const std::vector<std::string>& args)
      : cfg_(cfg), echo_(provenance_echo(args)) {
    path_ = resolve_out_path(cfg.out);
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw CLI::ValidationError("--out", "cannot open " + path_);
    }
  }
  bool json_mode() const { return cfg_.format == "json"; }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

  // CSV: comment-style provenance lines, then the header row, then data.
  void csv_header(const std::vector<std::string>& columns) {
    stream() << "# " << kVersion << "\n# " << echo_ << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
      stream() << (i ? "," : "") << columns[i];
    stream() << "\r\n";
  }
  void csv_row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
      stream() << (i ? "," : "") << cells[i];
    stream() << "\r\n";
  }
  void write_json(json payload) {
    json doc;
    doc["provenance"] = {{"tool", kVersion}, {"command", echo_}};
    doc["result"] = std::move(payload);
    stream() << doc.dump(2) << "\n";
  }

 private:
  OutputConfig cfg_;
  std::string echo_;
  std::string path_;
  std::ofstream file_;
};

struct InequalityChoice {
  bool example = false;
  bool zero = false;
  bool half_dicke = false;
  std::string cls;  // "x=..,y=..,mu=..,sigma=..,branch=.."
  std::int64_t dicke_low_k = -1, dicke_mid_k = -1;
};

void add_inequality_flags(CLI::App* cmd, InequalityChoice& c) {
  cmd->add_flag("--example", c.example,
                "x=y=1, mu=0, sigma=-, branch=- (classical bound 2n)");
  cmd->add_flag("--zero", c.zero, "The trivial all-zero linear part");
  cmd->add_flag("--half-dicke", c.half_dicke, "Half-filled Dicke inequality");
  cmd->add_option("--class", c.cls,
                  "Family parameters, e.g. x=2,y=3,mu=1,sigma=+1,branch=+");
  cmd->add_option("--dicke-low", c.dicke_low_k, "Low-excitation Dicke class, value is k");
  cmd->add_option("--dicke-mid", c.dicke_mid_k, "Mid-excitation Dicke class, value is k");
}

ClassParams parse_class_string(const std::string& s) {
  ClassParams p{1, 1, 0, -1, -1};
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--class", "expected key=value: " + item);
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    auto sign_of = [&](const std::string& v) -> int {
      if (v == "+" || v == "+1" || v == "1") return +1;
      if (v == "-" || v == "-1") return -1;
      throw CLI::ValidationError("--class", "bad sign: " + v);
    };
    if (key == "x") p.x = std::stoll(val);
    else if (key == "y") p.y = std::stoll(val);
    else if (key == "mu") p.mu = std::stoll(val);
    else if (key == "sigma") p.sigma = sign_of(val);
    else if (key == "branch") p.branch = sign_of(val);
    else throw CLI::ValidationError("--class", "unknown key: " + key);
  }
  return p;
}

BellInequality make_inequality(const InequalityChoice& c, std::int64_t n) {
  int chosen = c.example + c.zero + c.half_dicke + !c.cls.empty() +
               (c.dicke_low_k >= 0) + (c.dicke_mid_k >= 0);
  if (chosen != 1)
    throw CLI::ValidationError(
        "inequality", "choose exactly one of --example/--zero/--class/"
                      "--dicke-low/--dicke-mid/--half-dicke");
  if (c.example) return generate_class({1, 1, 0, -1, -1}, n);
  if (c.zero) {
    BellInequality q;
    q.n = n;
    return q;
  }
  if (c.half_dicke) return half_filled_dicke_inequality(n);
  if (!c.cls.empty()) return generate_class(parse_class_string(c.cls), n);
  if (c.dicke_low_k >= 0) return dicke_low_k_inequality(n, c.dicke_low_k);
  return dicke_mid_k_inequality(n, c.dicke_mid_k);
}

json inequality_json(const BellInequality& q) {
  return json::parse(inequality_to_json(q));
}

// ---- vertices ----

int run_vertices(std::int64_t n, Sink& sink) {
  auto tuples = enumerate_boundary_tuples(n);
  if (sink.json_mode()) {
    json rows = json::array();
    for (const auto& t : tuples) {
      auto c = phi(t);
      rows.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d},
                      {"S0", c.S0}, {"S1", c.S1}, {"S00", c.S00},
                      {"S01", c.S01}, {"S11", c.S11}});
    }
    sink.write_json({{"n", n}, {"count", tuples.size()}, {"vertices", rows}});
  } else {
    sink.csv_header({"a", "b", "c", "d", "S0", "S1", "S00", "S01", "S11"});
    for (const auto& t : tuples) {
      auto c = phi(t);
      sink.csv_row({std::to_string(t.a), std::to_string(t.b),
                    std::to_string(t.c), std::to_string(t.d),
                    std::to_string(c.S0), std::to_string(c.S1),
                    std::to_string(c.S00), std::to_string(c.S01),
                    std::to_string(c.S11)});
    }
  }
  return kExitOk;
}

// ---- bound ----

int run_bound(const InequalityChoice& choice, std::int64_t n, bool check_tight,
              Sink& sink) {
  auto q = make_inequality(choice, n);
  auto m = minimize_over_polytope(q, n);
  json r;
  r["n"] = n;
  r["inequality"] = inequality_json(q);
  r["beta_c"] = rational_to_string(q.beta_c);
  r["polytope_minimum"] = rational_to_string(m.min_value);
  r["minimizer_count"] = m.argmin.size();
  r["bound_attained"] = (m.min_value == -q.beta_c);
  if (check_tight) {
    auto tr = is_tight(q);
    r["tight"] = tr.tight;
    r["affine_rank"] = tr.affine_rank;
  }
  if (sink.json_mode()) {
    sink.write_json(r);
  } else {
    std::vector<std::string> cols, vals;
    for (auto& [k, v] : r.items()) {
      if (k == "inequality") continue;
      cols.push_back(k);
      vals.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    sink.csv_header(cols);
    sink.csv_row(vals);
  }
  return kExitOk;
}

// ---- violate ----

int run_violate(const InequalityChoice& choice, std::int64_t n, bool all_blocks,
                int grid, Sink& sink) {
  json r;
  r["n"] = n;
  if (choice.dicke_low_k >= 0 || choice.dicke_mid_k >= 0) {
    std::int64_t k = std::max(choice.dicke_low_k, choice.dicke_mid_k);
    auto which = choice.dicke_low_k >= 0 ? DickeClass::low : DickeClass::mid;
    auto v = dicke_numeric_violation(n, k, which);
    r["k"] = k;
    r["class"] = choice.dicke_low_k >= 0 ? "dicke-low" : "dicke-mid";
    r["value"] = v.value;
    r["violated"] = v.value < 0;
    r["phi_star_pi"] = format_angle(v.phi_star);
    r["theta_star_pi"] = format_angle(v.theta_star);
  } else {
    auto q = make_inequality(choice, n);
    ViolationOptions opts;
    opts.all_blocks = all_blocks;
    if (grid > 0) opts.grid_points = grid;
    auto v = max_quantum_violation(q, opts);
    r["inequality"] = inequality_json(q);
    r["value"] = v.value;
    r["violated"] = v.value < 0;
    r["ratio_to_bound"] = v.value / q.beta_c.get_d();
    r["phi_star_pi"] = format_angle(v.m.phi);
    r["theta_star_pi"] = format_angle(v.m.theta);
    r["two_j"] = v.twoJ;
  }
  if (sink.json_mode()) {
    sink.write_json(r);
  } else {
    std::vector<std::string> cols, vals;
    for (auto& [k, v] : r.items()) {
      if (k == "inequality") continue;
      cols.push_back(k);
      vals.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    sink.csv_header(cols);
    sink.csv_row(vals);
  }
  return kExitOk;
}

// ---- scan ----

struct Range {
  std::int64_t lo = 0, hi = 0;
  bool log = false;
};

Range parse_range(const std::string& s, const char* flag = "--n",
                  std::int64_t min_lo = 1) {
  Range r;
  std::stringstream ss(s);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3)
    throw CLI::ValidationError(flag, "expected lo:hi or lo:hi:log");
  r.lo = std::stoll(parts[0]);
  r.hi = std::stoll(parts[1]);
  if (parts.size() == 3) {
    if (parts[2] == "log") r.log = true;
    else if (parts[2] != "lin")
      throw CLI::ValidationError(flag, "scale must be lin or log");
  }
  if (r.lo < min_lo || r.hi < r.lo)
    throw CLI::ValidationError(flag, "empty or invalid range");
  return r;
}

std::vector<std::int64_t> range_points(const Range& r, int points) {
  std::vector<std::int64_t> out;
  if (!r.log) {
    std::int64_t step = std::max<std::int64_t>(1, (r.hi - r.lo) / std::max(1, points - 1));
    for (std::int64_t n = r.lo; n <= r.hi; n += step) out.push_back(n);
    if (out.back() != r.hi) out.push_back(r.hi);
  } else {
    double llo = std::log((double)r.lo), lhi = std::log((double)r.hi);
    std::int64_t prev = -1;
    for (int i = 0; i < points; ++i) {
      double t = points == 1 ? 0.0 : (double)i / (points - 1);
      auto n = (std::int64_t)std::llround(std::exp(llo + t * (lhi - llo)));
      if (n != prev) out.push_back(n);
      prev = n;
    }
  }
  return out;
}

int run_scan_example(const Range& range, int points, int grid, Sink& sink) {
  auto ns = range_points(range, points);
  std::vector<std::array<std::string, 5>> rows;
  for (auto n : ns) {
    auto q = generate_class({1, 1, 0, -1, -1}, n);
    ViolationOptions opts;
    if (grid > 0) opts.grid_points = grid;
    auto v = max_quantum_violation(q, opts);
    rows.push_back({std::to_string(n), format_double(v.value),
                    format_double(v.value / q.beta_c.get_d()),
                    format_angle(v.m.theta), rational_to_string(q.beta_c)});
  }
  if (sink.json_mode()) {
    json arr = json::array();
    for (auto& row : rows)
      arr.push_back({{"n", std::stoll(row[0])}, {"value", std::stod(row[1])},
                     {"ratio", std::stod(row[2])}, {"theta_star_pi", row[3]},
                     {"beta_c", row[4]}});
    sink.write_json({{"scan", "example"}, {"rows", arr}});
  } else {
    sink.csv_header({"n", "value", "ratio", "theta_star_pi", "beta_c"});
    for (auto& row : rows)
      sink.csv_row({row[0], row[1], row[2], row[3], row[4]});
  }
  return kExitOk;
}

int run_scan_dicke(std::int64_t n, Sink& sink) {
  if (sink.json_mode()) {
    json arr = json::array();
    for (std::int64_t k = 1; k < n; ++k) {
      auto lo = dicke_numeric_violation(n, k, DickeClass::low);
      auto mid = dicke_numeric_violation(n, k, DickeClass::mid);
      arr.push_back({{"k", k}, {"low", lo.value}, {"mid", mid.value},
                     {"best", std::min(lo.value, mid.value)}});
    }
    sink.write_json({{"scan", "dicke-both"}, {"n", n}, {"rows", arr}});
  } else {
    sink.csv_header({"k", "low_value", "mid_value", "best_value"});
    for (std::int64_t k = 1; k < n; ++k) {
      auto lo = dicke_numeric_violation(n, k, DickeClass::low);
      auto mid = dicke_numeric_violation(n, k, DickeClass::mid);
      sink.csv_row({std::to_string(k), format_double(lo.value),
                    format_double(mid.value),
                    format_double(std::min(lo.value, mid.value))});
    }
  }
  return kExitOk;
}

// ---- robust ----

int run_robust(bool gaussian, std::int64_t n, const std::vector<double>& etas,
               const std::string& kappa_range, int steps, Sink& sink) {
  for (double e : etas)
    if (e <= 0 || e > 1)
      throw CLI::ValidationError("--eta", "visibilities must lie in (0,1]");
  auto r = parse_range(kappa_range.empty() ? "0:2000" : kappa_range, "--kappa", 0);
  BellInequality q;
  MeasurementPair m;
  SpinMomentSet ideal;
  ideal.n = n;
  if (gaussian) {
    q = generate_class({1, 1, 0, -1, -1}, n);
    m = {std::numbers::pi / 6, 5 * std::numbers::pi / 6};
    ideal.Sz = 1.0 / (2 * std::sqrt(3.0));
    ideal.Sx = n / 2.0;
    ideal.Szz = 0.0;
    ideal.Sxx = n * n / 4.0;
    ideal.Sdiag = n * (n / 2.0 + 1.0 / std::sqrt(3.0)) / 4.0;
  } else {
    q = half_filled_dicke_inequality(n);
    auto v = dicke_numeric_violation(n, n / 2, DickeClass::mid);
    m = {v.phi_star, v.theta_star};
    ideal.Szz = 0.0;
    ideal.Sxx = n * (n + 2.0) / 8.0;
    ideal.Sdiag = n * (n + 2.0) / 16.0;
  }
  auto table = robustness_sweep(q, m, ideal, etas, (double)r.lo, (double)r.hi,
                                steps);
  if (sink.json_mode()) {
    json pts = json::array();
    for (auto& p : table.points)
      pts.push_back({{"eta", p.eta}, {"kappa", p.kappa}, {"value", p.value}});
    json ks = json::array();
    for (auto& [eta, kstar] : table.kappa_star) {
      json e = {{"eta", eta}};
      if (kstar) e["kappa_star"] = *kstar;
      else e["kappa_star"] = nullptr;
      ks.push_back(e);
    }
    sink.write_json({{"case", gaussian ? "gaussian" : "half-dicke"},
                     {"n", n}, {"points", pts}, {"kappa_star", ks}});
  } else {
    sink.csv_header({"eta", "kappa", "value"});
    for (auto& p : table.points)
      sink.csv_row({format_double(p.eta), format_double(p.kappa),
                    format_double(p.value)});
    for (auto& [eta, kstar] : table.kappa_star)
      sink.stream() << "# kappa_star eta=" << format_double(eta) << " "
                    << (kstar ? format_double(*kstar) : std::string("none"))
                    << "\n";
  }
  return kExitOk;
}

// ---- oracle ----

int run_oracle(const std::string& check, const InequalityChoice& choice,
               std::int64_t n, Sink& sink) {
  json r;
  r["check"] = check;
  r["n"] = n;
  bool pass = false;
  if (check == "spectrum") {
    if (n > 12) throw TooLarge("oracle spectrum limited to n <= 12");
    auto q = make_inequality(choice, n);
    MeasurementPair m{0.3, 2.1};
    auto dense = oracle::dense_spectrum(q, m);
    std::vector<double> blocks;
    for (auto& bi : schur_weyl_dimensions(n)) {
      auto sp = block_spectrum(build_block(q, m, bi.twoJ));
      unsigned long mult = bi.multiplicity.get_ui();
      for (double v : sp)
        blocks.insert(blocks.end(), mult, v);
    }
    std::sort(blocks.begin(), blocks.end());
    double diff = 0;
    for (size_t i = 0; i < dense.size(); ++i)
      diff = std::max(diff, std::abs(dense[i] - blocks[i]));
    r["max_difference"] = diff;
    pass = diff < 1e-9;
  } else if (check == "hull") {
    if (n > 8) throw TooLarge("oracle hull limited to n <= 8");
    auto hull = oracle::hull_extreme_points(n);
    std::set<SymmetricCorrelators> expected;
    for (auto& t : enumerate_boundary_tuples(n)) expected.insert(phi(t));
    std::set<SymmetricCorrelators> got(hull.begin(), hull.end());
    r["hull_count"] = got.size();
    r["boundary_count"] = expected.size();
    pass = got == expected;
  } else if (check == "blocks") {
    if (n > 10) throw TooLarge("oracle blocks limited to n <= 10");
    auto q = make_inequality(choice, n);
    MeasurementPair m{0.4, 1.9};
    double worst = 0;
    for (auto& bi : schur_weyl_dimensions(n))
      worst = std::max(worst, oracle::block_projection_check(q, m, bi.twoJ));
    r["max_difference"] = worst;
    pass = worst < 1e-10;
  } else if (check == "ghz") {
    if (n > 12) throw TooLarge("oracle ghz limited to n <= 12");
    auto q = make_inequality(choice, n);
    MeasurementPair m{0.7, 2.4};
    auto [ghz, mix] = oracle::ghz_vs_mixture(q, m);
    r["ghz"] = ghz;
    r["mixture"] = mix;
    pass = std::abs(ghz - mix) < 1e-12;
  } else {
    throw CLI::ValidationError("check", "unknown oracle check: " + check);
  }
  r["pass"] = pass;
  if (sink.json_mode()) {
    sink.write_json(r);
  } else {
    std::vector<std::string> cols, vals;
    for (auto& [k, v] : r.items()) {
      cols.push_back(k);
      vals.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    sink.csv_header(cols);
    sink.csv_row(vals);
  }
  std::cerr << (pass ? "PASS" : "FAIL") << " oracle " << check << " n=" << n
            << "\n";
  return pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"Permutationally invariant two-body Bell polytope toolkit"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  // vertices
  auto* vert = app.add_subcommand("vertices", "Enumerate polytope vertices")->configurable();
  std::int64_t vert_n = 0;
  OutputConfig vert_out;
  vert->add_option("--n", vert_n, "Number of parties")->required()
      ->check(CLI::PositiveNumber);
  add_output_flags(vert, vert_out);

  // bound
  auto* bound = app.add_subcommand("bound", "Exact classical bound")->configurable();
  std::int64_t bound_n = 0;
  bool bound_tight = false;
  InequalityChoice bound_choice;
  OutputConfig bound_out;
  bound->add_option("--n", bound_n, "Number of parties")->required()
      ->check(CLI::PositiveNumber);
  bound->add_flag("--tight", bound_tight, "Also run the tightness check");
  add_inequality_flags(bound, bound_choice);
  add_output_flags(bound, bound_out);

  // violate
  auto* violate = app.add_subcommand("violate", "Maximal quantum violation")->configurable();
  std::int64_t violate_n = 0;
  bool violate_blocks = false;
  int violate_grid = 0;
  InequalityChoice violate_choice;
  OutputConfig violate_out;
  violate->add_option("--n", violate_n, "Number of parties")->required()
      ->check(CLI::PositiveNumber);
  violate->add_flag("--blocks", violate_blocks, "Search every total-spin block");
  violate->add_option("--grid", violate_grid, "Angle grid points");
  add_inequality_flags(violate, violate_choice);
  add_output_flags(violate, violate_out);

  // scan
  auto* scan = app.add_subcommand("scan", "Parameter sweeps to CSV/JSON")->configurable();
  std::string scan_range;
  std::int64_t scan_n = 0;
  int scan_points = 25, scan_grid = 0;
  bool scan_example = false, scan_dicke = false;
  OutputConfig scan_out;
  scan->add_flag("--example", scan_example, "Violation-ratio sweep over n");
  scan->add_flag("--dicke-both", scan_dicke, "Both Dicke classes over all k");
  scan->add_option("--n", scan_range,
                   "Range lo:hi[:lin|log] for --example, single n for --dicke-both");
  scan->add_option("--points", scan_points, "Points in a log/lin range");
  scan->add_option("--grid", scan_grid, "Angle grid points");
  add_output_flags(scan, scan_out);

  // robust
  auto* robust = app.add_subcommand("robust", "Error-model sweeps")->configurable();
  std::int64_t robust_n = 0;
  bool robust_gauss = false, robust_half = false;
  std::vector<double> robust_etas{1.0};
  std::string robust_kappa;
  int robust_steps = 41;
  OutputConfig robust_out;
  robust->add_option("--n", robust_n, "Number of parties")->required()
      ->check(CLI::PositiveNumber);
  robust->add_flag("--gaussian", robust_gauss, "Gaussian-state case study");
  robust->add_flag("--half-dicke", robust_half, "Half-filled Dicke case study");
  robust->add_option("--eta", robust_etas, "Visibility list")->delimiter(',');
  robust->add_option("--kappa", robust_kappa, "Offset range lo:hi");
  robust->add_option("--steps", robust_steps, "Grid steps in kappa");
  add_output_flags(robust, robust_out);

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force cross checks")->configurable();
  std::string orc_check;
  std::int64_t orc_n = 0;
  InequalityChoice orc_choice;
  OutputConfig orc_out;
  orc->add_option("check", orc_check, "spectrum | hull | blocks | ghz")
      ->required();
  orc->add_option("--n", orc_n, "Number of parties")->required()
      ->check(CLI::PositiveNumber);
  add_inequality_flags(orc, orc_choice);
  add_output_flags(orc, orc_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (vert->parsed()) {
      Sink sink(vert_out, args);
      return run_vertices(vert_n, sink);
    }
    if (bound->parsed()) {
      Sink sink(bound_out, args);
      return run_bound(bound_choice, bound_n, bound_tight, sink);
    }
    if (violate->parsed()) {
      Sink sink(violate_out, args);
      return run_violate(violate_choice, violate_n, violate_blocks,
                         violate_grid, sink);
    }
    if (scan->parsed()) {
      Sink sink(scan_out, args);
      if (scan_example == scan_dicke)
        throw CLI::ValidationError("scan",
                                   "choose exactly one of --example/--dicke-both");
      if (scan_example) return run_scan_example(parse_range(scan_range),
                                                scan_points, scan_grid, sink);
      auto r = parse_range(scan_range.find(':') == std::string::npos
                               ? scan_range + ":" + scan_range
                               : scan_range);
      return run_scan_dicke(r.lo, sink);
    }
    if (robust->parsed()) {
      Sink sink(robust_out, args);
      if (robust_gauss == robust_half)
        throw CLI::ValidationError("robust",
                                   "choose exactly one of --gaussian/--half-dicke");
      return run_robust(robust_gauss, robust_n, robust_etas, robust_kappa,
                        robust_steps, sink);
    }
    if (orc->parsed()) {
      Sink sink(orc_out, args);
      return run_oracle(orc_check, orc_choice, orc_n, sink);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
