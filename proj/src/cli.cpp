#include "hdual/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "hdual/catalog.hpp"
#include "hdual/cycles.hpp"
#include "hdual/density.hpp"
#include "hdual/errors.hpp"
#include "hdual/fourier.hpp"
#include "hdual/system_io.hpp"

#ifndef HDUAL_FIXTURE_DIR
#define HDUAL_FIXTURE_DIR "tests/fixtures"
#endif

namespace hdual::cli {

namespace {

using nlohmann::json;

// Usage problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.12g}", x); }

json jnum(double x) { return std::isfinite(x) ? json::parse(num(x)) : json(num(x)); }

template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

RVector parse_point(const std::string& s, std::size_t dim) {
  std::vector<Rational> xs;
  for (const auto& part : split(s, ',')) xs.push_back(as_usage([&] { return Rational::parse(part); }));
  if (xs.size() != dim) throw UsageError("point '" + s + "' needs " + std::to_string(dim) + " coordinates");
  return RVector(std::move(xs));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads and validates; invalid systems are domain failures.
HadamardSystem load_valid(const std::string& path) {
  SystemData d;
  try {
    d = load_system_file(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return HadamardSystem::create(d.R, d.B, d.L);
}

std::string line_diff(const std::string& expected, const std::string& actual) {
  const auto a = split(expected, '\n'), b = split(actual, '\n');
  std::string out;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const std::string* x = i < a.size() ? &a[i] : nullptr;
    const std::string* y = i < b.size() ? &b[i] : nullptr;
    if (x && y && *x == *y) continue;
    if (x) out += fmt::format("  line {}: - {}\n", i + 1, *x);
    if (y) out += fmt::format("  line {}: + {}\n", i + 1, *y);
  }
  return out;
}

std::string onb_list(const std::vector<ScanRow>& rows) {
  std::string s;
  for (const auto& r : rows)
    if (!r.error && r.cycles.empty()) s += (s.empty() ? "" : ",") + r.p.get_str();
  return s;
}

// ---------------------------------------------------------------- closed form

// mu_hat for (4, {0,2}) against e^{2 pi i t/3} prod_k cos(2 pi t / 4^k).
double closed_form_deviation(double t) {
  const HadamardSystem sys = catalog::cantor(1);
  const MuHatResult m = mu_hat(sys, Side::B, RVector{Rational::from_double(t)}, 1e-13);
  std::complex<double> ref = std::polar(1.0, 2.0 * std::numbers::pi * t / 3.0);
  double s = t;
  for (int k = 1; k <= 80; ++k) {
    s /= 4.0;
    ref *= std::cos(2.0 * std::numbers::pi * s);
  }
  return std::abs(m.value - ref);
}

bool is_cantor_b(const HadamardSystem& sys) {
  return sys.dim() == 1 && sys.R() == RMatrix::scalar(1, 4) &&
         std::set<RVector>(sys.B().begin(), sys.B().end()) == std::set<RVector>{RVector{0}, RVector{2}};
}

// ---------------------------------------------------------------- reproduce

struct Claim {
  std::string id;
  std::string description;
  std::function<std::optional<std::string>()> check;
};

std::optional<std::string> expect_cycles(const HadamardSystem& sys, Side side,
                                         const std::vector<std::vector<Rational>>& expected) {
  const auto found = find_cycles_lattice_1d(sys, side).cycles;
  std::set<std::set<Rational>> got, want;
  for (const auto& c : found) {
    std::set<Rational> s;
    for (const auto& x : c.points) s.insert(x[0]);
    got.insert(s);
  }
  for (const auto& c : expected) want.insert(std::set<Rational>(c.begin(), c.end()));
  if (got == want) return std::nullopt;
  std::string msg = "found";
  for (const auto& c : found) msg += " {" + c.points_str() + "}";
  return msg;
}

std::vector<Claim> claims(const std::string& table_path, const std::string& onb_path) {
  std::vector<Claim> cs;
  cs.push_back({"cantor-table", "R=4, L={0,p}, odd p<=100: cycle table equals the golden fixture", [=] {
                  const std::string want = read_file(table_path);
                  const std::string got = scan_csv(scan_admissibility(4, LConvention::ZeroP, odd_values(100)));
                  return want == got ? std::nullopt : std::optional<std::string>("diff:\n" + line_diff(want, got));
                }});
  cs.push_back({"cantor-onb", "R=4, L={0,p}, odd p<100 without cycles equals the golden ONB list", [=] {
                  std::string want = read_file(onb_path);
                  while (!want.empty() && (want.back() == '\n' || want.back() == '\r')) want.pop_back();
                  const std::string got = onb_list(scan_admissibility(4, LConvention::ZeroP, odd_values(99)));
                  return want == got ? std::nullopt
                                     : std::optional<std::string>("diff:\n" + line_diff(want + "\n", got + "\n"));
                }});
  const std::vector<std::vector<const char*>> repunit_cycles = {
      {"23", "27", "28", "7"},
      {"4821/2", "5469/2", "5577/2", "5595/2", "2799", "933/2"},
      {"609886", "675422", "683614", "684638", "684766", "684782", "684784", "85598"}};
  const char* repunit_p[] = {"85", "9331", "2396745"};
  for (int n = 2; n <= 4; ++n) {
    cs.push_back({fmt::format("repunit-{}", n), fmt::format("p = sum (2n)^i for n={}: one cycle of length {}", n, 2 * n),
                  [=] () -> std::optional<std::string> {
                    const RepunitInstance inst = repunit_instance(n);
                    if (inst.p.get_str() != repunit_p[n - 2]) return "p = " + inst.p.get_str();
                    auto [R, digits] = family_data(inst.R, LConvention::ZeroNpHalf, inst.p);
                    const auto sys = HadamardSystem::create(R, digits.first, digits.second);
                    std::vector<Rational> want;
                    for (const char* x : repunit_cycles[static_cast<std::size_t>(n - 2)])
                      want.push_back(Rational::parse(x));
                    return expect_cycles(sys, Side::B, {want});
                  }});
  }
  cs.push_back({"five-powers", "R=4, L={0,5^k}, k=0..6: no non-trivial cycles", [] () -> std::optional<std::string> {
                  long p = 1;
                  for (int k = 0; k <= 6; ++k, p *= 5)
                    if (auto e = expect_cycles(catalog::cantor(p), Side::B, {})) return fmt::format("k={}: {}", k, *e);
                  return std::nullopt;
                }});
  cs.push_back({"divisible-fixed-points", "(n,p) = (2,3), (3,5), (4,7): fixed points 1, 3/2, 2",
                [] () -> std::optional<std::string> {
                  const std::pair<int, long> cases[] = {{2, 3}, {3, 5}, {4, 7}};
                  const char* want[] = {"1", "3/2", "2"};
                  for (int i = 0; i < 3; ++i) {
                    const auto t = divisible_fixed_point(cases[i].first, BigInt(cases[i].second));
                    if (!t || *t != Rational::parse(want[i]))
                      return fmt::format("n={}: got {}", cases[i].first, t ? t->str() : "none");
                  }
                  return std::nullopt;
                }});
  cs.push_back({"scaled-cycles", "{1} at p=3 scales to {3} at p=9 and {5} at p=15", [] () -> std::optional<std::string> {
                  const auto base = find_cycles_lattice_1d(catalog::cantor(3), Side::B).cycles;
                  if (base.size() != 1) return "p=3 cycles: " + std::to_string(base.size());
                  if (scaled_cycle(base[0], 3, catalog::cantor(9)).points_str() != "3") return "q=3";
                  if (scaled_cycle(base[0], 5, catalog::cantor(15)).points_str() != "5") return "q=5";
                  return std::nullopt;
                }});
  cs.push_back({"shifted-eighths", "(8,{0,2,4,6},{0,1,2,7}): Γ(L) NotONB via {1}, Γ(B) ONB",
                [] () -> std::optional<std::string> {
                  const auto sys = catalog::shifted_eighths();
                  const auto b = analyze(sys, Side::B);
                  const auto l = analyze(sys, Side::L);
                  if (b.verdict != Verdict::NotONB || b.cycles.size() != 1 || b.cycles[0].points_str() != "1")
                    return std::string("side B: ") + to_string(b.verdict);
                  if (l.verdict != Verdict::ONB) return std::string("side L: ") + to_string(l.verdict);
                  return std::nullopt;
                }});
  cs.push_back({"planar-line", "diag(3,3) system: Γ(B) NotONB via {(0,1/2)}, Γ(L) no cycles (inconclusive)",
                [] () -> std::optional<std::string> {
                  const auto sys = catalog::planar_line();
                  CycleSearchConfig cfg;
                  cfg.mode = SearchMode::WordEnumeration;
                  cfg.max_word_length = 6;
                  const auto l = analyze(sys, Side::L, cfg);
                  const auto b = analyze(sys, Side::B, cfg);
                  if (l.verdict != Verdict::NotONB || l.cycles.size() != 1 || l.cycles[0].points_str() != "0:1/2")
                    return std::string("side L: ") + to_string(l.verdict);
                  if (b.verdict != Verdict::InconclusiveNoCyclesFound) return std::string("side B: ") + to_string(b.verdict);
                  return std::nullopt;
                }});
  cs.push_back({"closed-form", "R=4, B={0,2}: mu_hat matches the cosine product within 1e-9",
                [] () -> std::optional<std::string> {
                  for (double t : {0.3, 1.0, 7.25, -2.6})
                    if (const double dev = closed_form_deviation(t); !(dev < 1e-9))
                      return fmt::format("t={}: deviation {}", num(t), num(dev));
                  return std::nullopt;
                }});
  cs.push_back({"parity", "(4,{0,2},{0,p}) is valid iff p is odd, p=1..20", [] () -> std::optional<std::string> {
                  for (long p = 1; p <= 20; ++p) {
                    const bool ok = validate(RMatrix::scalar(1, 4), digits_1d({0, 2}), digits_1d({0, p})).ok();
                    if (ok != (p % 2 == 1)) return fmt::format("p={}", p);
                  }
                  return std::nullopt;
                }});
  cs.push_back({"density", "Γ({0,1},4): count 2^n at h=(4^n-1)/3, ratio -> sqrt 3, 5Γ scaling",
                [] () -> std::optional<std::string> {
                  const auto hs = geometric_windows(4, 1, 12);
                  const auto est = beurling_lower_estimate(digits_1d({0, 1}), RMatrix::scalar(1, 4), 0.5, hs);
                  for (std::size_t i = 0; i < est.samples.size(); ++i)
                    if (est.samples[i].count != (std::size_t{1} << (i + 1))) return fmt::format("n={}", i + 1);
                  if (std::abs(est.samples[9].ratio - std::sqrt(3.0)) >= 1e-4) return "ratio at n=10";
                  const auto scaled =
                      beurling_lower_estimate(digits_1d({0, 5}), RMatrix::scalar(1, 4), 0.5, geometric_windows(4, 5, 12));
                  for (std::size_t i = 0; i < est.samples.size(); ++i)
                    if (scaled.samples[i].count != est.samples[i].count) return fmt::format("scaled n={}", i + 1);
                  return std::nullopt;
                }});
  cs.push_back({"sigma-origin", "(4,{0,2},{0,1}): sigma at t=0, level 6, equals 1 within 1e-8",
                [] () -> std::optional<std::string> {
                  const auto s = sigma_partial(catalog::cantor(1), Side::B, RVector{0}, 6);
                  if (std::abs(s.value - 1.0) > 1e-8) return "sigma = " + num(s.value);
                  return std::nullopt;
                }});
  return cs;
}

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& file, const std::string& format, std::ostream& out) {
  SystemData d;
  try {
    d = load_system_file(file);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const ValidationReport rep = validate(d.R, d.B, d.L);
  if (format == "json") {
    json j;
    j["valid"] = rep.ok();
    j["failures"] = json::array();
    for (const auto& f : rep.failures) j["failures"].push_back({{"check", f.check}, {"detail", f.detail}});
    j["notes"] = rep.notes;
    out << j.dump(2) << "\n";
  } else {
    out << (rep.ok() ? "valid" : "invalid") << "\n";
    for (const auto& f : rep.failures) out << "failure [" << f.check << "] " << f.detail << "\n";
    for (const auto& n : rep.notes) out << "note: " << n << "\n";
  }
  return rep.ok() ? kOk : kDomainFailure;
}

int cmd_cycles(const std::string& file, const std::string& side_s, const std::string& mode, int max_len,
               bool assume_sufficient, const std::string& format, std::ostream& out) {
  const HadamardSystem sys = load_valid(file);
  const Side side = side_from_string(side_s);
  CycleSearchConfig cfg;
  cfg.max_word_length = max_len;
  if (mode == "words") {
    cfg.mode = SearchMode::WordEnumeration;
  } else if (mode == "lattice") {
    if (sys.dim() != 1) throw UsageError("lattice mode needs a one-dimensional system; use --mode words");
  } else if (mode == "auto") {
    if (sys.dim() != 1) cfg.mode = SearchMode::WordEnumeration;
  } else {
    throw UsageError("unknown mode " + mode);
  }
  const SpectralReport rep = analyze(sys, side, cfg, assume_sufficient);
  if (format == "json") {
    json j;
    j["side"] = to_string(side);
    j["verdict"] = to_string(rep.verdict);
    j["note"] = rep.dimension_note;
    j["cycles"] = json::array();
    for (const auto& c : rep.cycles) j["cycles"].push_back({{"points", c.points_str()}, {"digits", c.digits_str()}});
    out << j.dump(2) << "\n";
  } else {
    out << "cycle_index,length,points,digits\n";
    for (std::size_t i = 0; i < rep.cycles.size(); ++i)
      out << i << "," << rep.cycles[i].length() << "," << rep.cycles[i].points_str() << ","
          << rep.cycles[i].digits_str() << "\n";
  }
  return kOk;
}

struct ScanOptions {
  long R = 4;
  bool R_given = false;
  std::string convention = "{0,p}";
  long p_max = 0;
  std::string p_values;
  int repunit = 0;
  bool onb = false;
};

int cmd_scan(const ScanOptions& o, std::ostream& out, std::ostream& err) {
  const int sources = (o.p_max > 0) + !o.p_values.empty() + (o.repunit > 0);
  if (sources != 1) throw UsageError("give exactly one of --p-max, --p-values, --repunit");
  long R = o.R;
  LConvention conv = as_usage([&] { return convention_from_string(o.convention); });
  std::vector<BigInt> ps;
  if (o.repunit > 0) {
    const RepunitInstance inst = repunit_instance(o.repunit);
    if (o.R_given && o.R != inst.R) throw UsageError("--repunit " + std::to_string(o.repunit) + " fixes R = " +
                                                     std::to_string(inst.R));
    R = inst.R;
    conv = LConvention::ZeroNpHalf;
    ps.push_back(inst.p);
  } else if (o.p_max > 0) {
    ps = odd_values(o.p_max);
  } else {
    for (const auto& s : split(o.p_values, ',')) {
      BigInt p;
      if (p.set_str(s, 10) != 0 || p <= 0) throw UsageError("bad p value '" + s + "'");
      ps.push_back(p);
    }
  }
  const auto rows = scan_admissibility(R, conv, ps, thread_count());
  bool failed = false;
  for (const auto& r : rows)
    if (r.error) {
      err << "p=" << r.p.get_str() << ": " << *r.error << "\n";
      failed = true;
    }
  if (o.onb) {
    out << onb_list(rows) << "\n";
  } else {
    out << scan_csv(rows);
  }
  return failed ? kDomainFailure : kOk;
}

int cmd_sigma(const std::string& file, const std::string& side_s, const std::string& t_s, int level,
              std::ostream& out) {
  const HadamardSystem sys = load_valid(file);
  const Side side = side_from_string(side_s);
  const RVector t = parse_point(t_s, sys.dim());
  if (level < 0) throw UsageError("--level must be >= 0");
  const SigmaSample s = sigma_partial(sys, side, t, level);
  json j;
  j["side"] = to_string(side);
  j["t"] = to_json(t);
  j["level"] = level;
  j["value"] = jnum(s.value);
  j["error_budget"] = jnum(s.muhat_error_budget);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_muhat(const std::string& file, const std::string& side_s, const std::string& t_s, double tol,
              bool closed_form, std::ostream& out) {
  const HadamardSystem sys = load_valid(file);
  const Side side = side_from_string(side_s);
  json j;
  j["side"] = to_string(side);
  if (closed_form) {
    if (!is_cantor_b(sys) || side != Side::B)
      throw UsageError("--closed-form-check needs R = 4, B = {0,2} and --side B");
    std::vector<double> ts = {0.3, 1.0, 7.25, -2.6};
    if (!t_s.empty()) {
      ts.clear();
      for (const auto& x : split(t_s, ',')) ts.push_back(as_usage([&] { return Rational::parse(x); }).to_double());
    }
    double worst = 0.0;
    j["points"] = json::array();
    for (double t : ts) {
      const double dev = closed_form_deviation(t);
      worst = std::max(worst, dev);
      j["points"].push_back({{"t", jnum(t)}, {"deviation", jnum(dev)}});
    }
    j["max_deviation"] = jnum(worst);
    j["pass"] = worst < 1e-9;
    out << j.dump(2) << "\n";
    return worst < 1e-9 ? kOk : kDomainFailure;
  }
  if (t_s.empty()) throw UsageError("--t is required");
  const RVector t = parse_point(t_s, sys.dim());
  const MuHatResult m = mu_hat(sys, side, t, tol);
  j["t"] = to_json(t);
  j["re"] = jnum(m.value.real());
  j["im"] = jnum(m.value.imag());
  j["abs"] = jnum(std::abs(m.value));
  j["truncation_K"] = m.truncation_K;
  j["error_bound"] = jnum(m.error_bound);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_density(const std::string& set, const std::string& alpha_s, int n_max, std::ostream& out) {
  long q = 1;
  if (set == "gamma1") {
    q = 1;
  } else if (set.rfind("scaled:", 0) == 0) {
    try {
      q = std::stol(set.substr(7));
    } catch (const std::exception&) {
      throw UsageError("bad scale in --set " + set);
    }
    if (q <= 0) throw UsageError("scale q must be positive");
  } else {
    throw UsageError("--set must be gamma1 or scaled:q");
  }
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  const double alpha = as_usage([&] { return Rational::parse(alpha_s); }).to_double();
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("--alpha must lie in (0, 1]");
  const auto est = beurling_lower_estimate(digits_1d({0, q}), RMatrix::scalar(1, 4), alpha, geometric_windows(4, q, n_max));
  out << "n,h,count,ratio\n";
  for (std::size_t i = 0; i < est.samples.size(); ++i)
    out << i + 1 << "," << est.samples[i].h.str() << "," << est.samples[i].count << "," << num(est.samples[i].ratio)
        << "\n";
  return kOk;
}

int cmd_attractor(const std::string& file, const std::string& side_s, int depth, std::ostream& out) {
  const HadamardSystem sys = load_valid(file);
  const Side side = side_from_string(side_s);
  if (depth < 0) throw UsageError("--depth must be >= 0");
  const std::size_t d = sys.dim();
  std::vector<RVector> pts;
  if (depth == 0) {
    pts.push_back(RVector::zero(d));
  } else {
    // sum_{k=1}^{D} S^{-k} d_k = S^{-D} (sum_{j=0}^{D-1} S^j d_{D-j})
    const DigitSet& digits = side == Side::B ? sys.B() : sys.L();
    const RMatrix& S = side == Side::B ? sys.R() : sys.RT();
    const GammaLevel g = gamma_level(digits, S, depth - 1);
    const RMatrix inv = S.pow(-depth);
    for (const auto& x : g.points) pts.push_back(inv * x);
  }
  for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << (d == 1 ? "x" : "x" + std::to_string(k));
  out << "\n";
  for (const auto& p : pts) {
    for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << p[k].str();
    out << "\n";
  }
  return kOk;
}

int cmd_reproduce(bool list, const std::string& table, const std::string& onb, std::ostream& out,
                  std::ostream& err) {
  const auto cs = claims(table, onb);
  if (list) {
    for (const auto& c : cs) out << c.id << "\t" << c.description << "\n";
    return kOk;
  }
  int failed = 0;
  for (const auto& c : cs) {
    std::optional<std::string> problem;
    try {
      problem = c.check();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      problem = std::string("error: ") + e.what();
    }
    if (problem) {
      ++failed;
      out << "FAIL " << c.id << "\n";
      err << c.id << ": " << *problem << "\n";
    } else {
      out << "ok   " << c.id << "\n";
    }
  }
  out << (cs.size() - static_cast<std::size_t>(failed)) << "/" << cs.size() << " claims reproduced\n";
  return failed ? kDomainFailure : kOk;
}

}  // namespace

unsigned thread_count() {
  if (const char* s = std::getenv("HDUAL_THREADS")) {
    try {
      const long n = std::stol(s);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hadamard systems of dual fractal measures"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, side = "B", format = "text", mode = "auto", t, alpha = "1/2", set = "gamma1";
  std::string fixture = std::string(HDUAL_FIXTURE_DIR) + "/cantor_r4_cycles.csv";
  std::string onb_fixture = std::string(HDUAL_FIXTURE_DIR) + "/cantor_r4_onb.txt";
  int max_len = 8, level = 6, n_max = 10, depth = 6;
  double tol = 1e-12;
  bool assume = false, closed = false, list = false;
  ScanOptions scan;

  auto* v = app.add_subcommand("validate", "check the Hadamard-system conditions");
  v->add_option("system", file, "system JSON file")->required();
  v->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* c = app.add_subcommand("cycles", "list non-trivial extreme cycles");
  c->add_option("system", file)->required();
  c->add_option("--side", side)->check(CLI::IsMember({"B", "L"}));
  c->add_option("--mode", mode, "lattice, words or auto")->check(CLI::IsMember({"lattice", "words", "auto"}));
  c->add_option("--max-word-len", max_len);
  c->add_flag("--assume-sufficient", assume, "treat no cycles as ONB in dimension > 1");
  c->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* s = app.add_subcommand("scan", "cycle table over a family L = {0, l(p)}");
  s->add_option("--R", scan.R);
  s->add_option("--L-convention", scan.convention, "{0,p} or {0,np/2}");
  s->add_option("--p-max", scan.p_max, "odd p up to this bound");
  s->add_option("--p-values", scan.p_values, "comma-separated p");
  s->add_option("--repunit", scan.repunit, "p = sum_{i<2n} (2n)^i with R = 2n");
  s->add_flag("--onb-list", scan.onb, "print the p without cycles instead of the table");

  auto* sg = app.add_subcommand("sigma", "partial sum of the spectral function");
  sg->add_option("system", file)->required();
  sg->add_option("--side", side)->check(CLI::IsMember({"B", "L"}));
  sg->add_option("--t", t)->required();
  sg->add_option("--level", level);

  auto* m = app.add_subcommand("muhat", "Fourier transform of the measure");
  m->add_option("system", file)->required();
  m->add_option("--side", side)->check(CLI::IsMember({"B", "L"}));
  m->add_option("--t", t);
  m->add_option("--tol", tol);
  m->add_flag("--closed-form-check", closed, "compare with the cosine product (R=4, B={0,2})");

  auto* d = app.add_subcommand("density", "window counts of Γ({0,q}, 4)");
  d->add_option("--set", set, "gamma1 or scaled:q");
  d->add_option("--alpha", alpha);
  d->add_option("--n-max", n_max);

  auto* a = app.add_subcommand("attractor", "finite approximation of the attractor");
  a->add_option("system", file)->required();
  a->add_option("--side", side)->check(CLI::IsMember({"B", "L"}));
  a->add_option("--depth", depth);

  auto* r = app.add_subcommand("reproduce", "run the golden checks");
  r->add_flag("--list", list);
  r->add_option("--fixture", fixture, "golden cycle table");
  r->add_option("--onb-fixture", onb_fixture, "golden ONB list");

  std::vector<const char*> argv{"hdual"};
  for (const auto& x : args) argv.push_back(x.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  scan.R_given = s->count("--R") > 0;

  try {
    if (*v) return cmd_validate(file, format, out);
    if (*c) return cmd_cycles(file, side, mode, max_len, assume, format, out);
    if (*s) return cmd_scan(scan, out, err);
    if (*sg) return cmd_sigma(file, side, t, level, out);
    if (*m) return cmd_muhat(file, side, t, tol, closed, out);
    if (*d) return cmd_density(set, alpha, n_max, out);
    if (*a) return cmd_attractor(file, side, depth, out);
    if (*r) return cmd_reproduce(list, fixture, onb_fixture, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsage;
}

}  // namespace hdual::cli
