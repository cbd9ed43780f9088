// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "hdual/catalog.hpp"
#include "hdual/cycles.hpp"
#include "hdual/density.hpp"
#include "hdual/fourier.hpp"

using namespace hdual;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational q(const char* s) { return Rational::parse(s); }

std::set<Rational> point_set(const ExtremeCycle& c) {
  std::set<Rational> s;
  for (const auto& x : c.points) s.insert(x[0]);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<RVector> random_points(std::mt19937_64& rng, std::size_t dim, int count, double range) {
  std::uniform_real_distribution<double> u(-range, range);
  std::vector<RVector> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> c;
    for (std::size_t k = 0; k < dim; ++k) c.push_back(u(rng));
    out.push_back(RVector::from_doubles(c));
  }
  return out;
}

// Level with at most ~256 points, for sums evaluated many times.
int modest_level(std::size_t N) {
  int n = 0;
  double pts = static_cast<double>(N);
  while (pts * static_cast<double>(N) <= 256.0) {
    pts *= static_cast<double>(N);
    ++n;
  }
  return n;
}

Outcome ac1() {
  const double t0 = 0.0;
  (void)t0;
  std::ifstream in(HDUAL_FIXTURES "/cantor_r4_cycles.csv");
  std::string line;
  std::getline(in, line);
  std::map<long, std::set<std::set<Rational>>> want;
  while (std::getline(in, line)) {
    const auto cells = split(line, ',');
    std::set<Rational> pts;
    for (const auto& x : split(cells.at(3), ';')) pts.insert(Rational::parse(x));
    want[std::stol(cells[0])].insert(pts);
  }
  const std::vector<long> onb = {1,  5,  7,  11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47,
                                 49, 53, 55, 59, 61, 65, 67, 71, 73, 77, 79, 83, 89, 91, 95, 97};

  const auto rows = scan_admissibility(4, LConvention::ZeroP, odd_values(100));
  std::map<long, std::set<std::set<Rational>>> got;
  std::vector<long> got_onb;
  for (const auto& r : rows) {
    if (r.error) return {false, "p=" + r.p.get_str() + ": " + *r.error};
    for (const auto& c : r.cycles) got[r.p.get_si()].insert(point_set(c));
    if (r.cycles.empty() && r.p < 100) got_onb.push_back(r.p.get_si());
  }
  if (want.size() != 18) return {false, fmt::format("fixture has {} rows", want.size())};
  if (got != want) return {false, "cycle sets differ from the golden table"};
  if (got_onb != onb) return {false, "ONB list differs"};
  return {true, fmt::format("{} rows with cycles match the fixture; {} ONB values", got.size(), got_onb.size())};
}

Outcome ac2() {
  const std::vector<std::vector<const char*>> cycles = {
      {"23", "27", "28", "7"},
      {"4821/2", "5469/2", "5577/2", "5595/2", "2799", "933/2"},
      {"609886", "675422", "683614", "684638", "684766", "684782", "684784", "85598"}};
  const char* ps[] = {"85", "9331", "2396745"};
  std::string detail;
  for (int n = 2; n <= 4; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const auto inst = repunit_instance(n);
    if (inst.p.get_str() != ps[n - 2]) return {false, "p = " + inst.p.get_str()};
    auto [R, digits] = family_data(inst.R, LConvention::ZeroNpHalf, inst.p);
    const auto sys = HadamardSystem::create(R, digits.first, digits.second);
    const auto res = find_cycles_lattice_1d(sys, Side::B);
    std::set<Rational> want;
    for (const char* x : cycles[static_cast<std::size_t>(n - 2)]) want.insert(q(x));
    if (res.cycles.size() != 1 || point_set(res.cycles[0]) != want || !verify_cycle(sys, res.cycles[0]))
      return {false, fmt::format("n={}: unexpected cycles", n)};
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (n == 4 && secs >= 60.0) return {false, fmt::format("n=4 took {:.1f} s", secs)};
    detail += fmt::format("n={} p={} len={} ({} nodes, {:.2f} s); ", n, ps[n - 2], res.cycles[0].length(), res.nodes,
                          secs);
  }
  detail.resize(detail.size() - 2);
  return {true, detail};
}

Outcome ac3() {
  long p = 1;
  std::size_t nodes = 0;
  for (int k = 0; k <= 6; ++k, p *= 5) {
    const auto res = find_cycles_lattice_1d(catalog::cantor(p), Side::B);
    if (!res.cycles.empty()) return {false, fmt::format("k={}: {} cycles", k, res.cycles.size())};
    nodes = res.nodes;
  }
  return {true, fmt::format("no cycles for 5^0..5^6; {} lattice nodes at k=6", nodes)};
}

Outcome ac4() {
  const std::tuple<int, long, const char*> cases[] = {{2, 3, "1"}, {3, 5, "3/2"}, {4, 7, "2"}};
  for (const auto& [n, p, want] : cases) {
    const auto t = divisible_fixed_point(n, BigInt(p));
    const Rational formula(BigInt(n * p), BigInt(2 * (2 * n - 1)));
    if (!t || *t != formula || *t != q(want))
      return {false, fmt::format("n={} p={}: got {}", n, p, t ? t->str() : "none")};
  }
  return {true, "fixed points 1, 3/2, 2 equal np/(2(2n-1)) and are reported by the detector"};
}

Outcome ac5() {
  double worst = 0.0;
  for (int N : {2, 3, 4}) {
    const auto sys = standard_system(N, 2);
    for (Side side : {Side::B, Side::L}) {
      const auto mu = make_mu_hat(sys, side);
      const auto g = gamma_level(sys, side, 3);
      // |mu_hat(-x)| = |mu_hat(x)| for real digits, so unordered pairs suffice
      for (std::size_t i = 0; i < g.points.size(); ++i)
        for (std::size_t j = i + 1; j < g.points.size(); ++j) {
          const auto r = mu(g.points[i] - g.points[j], 1e-12);
          worst = std::max(worst, std::abs(r.value) + r.error_bound);
        }
    }
  }
  return {worst < 1e-8, fmt::format("max |mu_hat(g - g')| + bound = {:.3g} (< 1e-8)", worst)};
}

Outcome ac6() {
  std::mt19937_64 rng(20240601);
  double worst_excess = -1.0, worst_origin = 0.0, worst_recursion = 0.0, worst_qmf = 0.0;
  bool monotone = true, recursion_ok = true;
  const auto one = [](const RVector&) { return 1.0; };
  std::vector<HadamardSystem> systems = {standard_system(2, 2), standard_system(3, 2), standard_system(4, 2),
                                         catalog::cantor(3)};
  for (const auto& sys : systems)
    for (Side side : {Side::B, Side::L}) {
      const auto mu = make_mu_hat(sys, side);
      const int n = modest_level(sys.N());
      const auto g = gamma_level(sys, side, n);

      for (const auto& t : random_points(rng, sys.dim(), 100, 20.0)) {
        // prefix sums of the level-n list are the lower levels
        double acc = 0.0, prev = 0.0, budget = 0.0;
        std::size_t next = sys.N();
        for (std::size_t i = 0; i < g.points.size(); ++i) {
          const auto r = mu(t + g.points[i], 1e-13);
          acc += std::norm(r.value);
          budget += (2.0 * std::abs(r.value) + r.error_bound) * r.error_bound;
          if (i + 1 == next) {
            if (acc < prev - budget - 1e-15) monotone = false;
            prev = acc;
            next *= sys.N();
          }
        }
        worst_excess = std::max(worst_excess, acc - 1.0);
      }

      const auto origin = sigma_partial(sys, side, RVector::zero(sys.dim()), 6);
      worst_origin = std::max(worst_origin, std::abs(origin.value - 1.0));

      for (const auto& t : random_points(rng, sys.dim(), 20, 20.0))
        worst_qmf = std::max(worst_qmf, std::abs(transfer_apply(sys, side, one, t) - 1.0));

      const auto lower = gamma_level(sys, side, n - 1);
      for (const auto& t : random_points(rng, sys.dim(), 20, 20.0)) {
        double budget = 0.0;
        const double lhs = transfer_apply(sys, side, [&](const RVector& s) {
          const auto v = sigma_partial(mu, lower, s);
          budget += v.muhat_error_budget;
          return v.value;
        }, t);
        const auto rhs = sigma_partial(mu, g, t);
        const double diff = std::abs(lhs - rhs.value);
        worst_recursion = std::max(worst_recursion, diff);
        if (diff > budget + rhs.muhat_error_budget + 1e-14) recursion_ok = false;
      }
    }
  const bool pass =
      worst_excess <= 1e-8 && worst_origin <= 1e-8 && monotone && recursion_ok && worst_qmf <= 1e-12;
  return {pass, fmt::format("max sigma-1 = {:.3g}; |sigma(0)-1| <= {:.3g}; monotone={}; |T sigma_n - sigma_n+1| <= "
                            "{:.3g} within budget={}; QMF error {:.3g}",
                            worst_excess, worst_origin, monotone, worst_recursion, recursion_ok, worst_qmf)};
}

Outcome ac7() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (long p : {5L, 7L}) {
    const auto sys = catalog::cantor(p);
    const RMatrix G = RMatrix::scalar(1, Rational(BigInt(p), BigInt(2)));
    for (int n = 0; n <= 5; ++n)
      if (!maps_onto(G, gamma_level(sys, Side::L, n).points, gamma_level(sys, Side::B, n).points))
        return {false, fmt::format("p={} n={}: g Gamma_n(B) != Gamma_n(L)", p, n)};
    for (const auto& t : random_points(rng, 1, 10, 10.0)) {
      const auto rep = duality_check(sys, G, t, 8);
      if (!rep.ok || rep.difference >= 1e-8) return {false, fmt::format("p={} t={}", p, t.str())};
      worst = std::max(worst, rep.difference);
    }
  }
  return {true, fmt::format("exact set identity for n<=5; max sigma difference {:.3g}", worst)};
}

Outcome ac8() {
  const auto sys = catalog::cantor(1);
  double worst = 0.0;
  for (double t : {0.3, 1.0, 7.25, -2.6}) {
    const auto r = mu_hat(sys, Side::B, RVector{Rational::from_double(t)}, 1e-13);
    std::complex<double> ref = std::polar(1.0, 2.0 * std::numbers::pi * t / 3.0);
    double s = t;
    for (int k = 1; k <= 80; ++k) ref *= std::cos(2.0 * std::numbers::pi * (s /= 4.0));
    worst = std::max(worst, std::abs(r.value - ref));
  }
  return {worst < 1e-9, fmt::format("max deviation {:.3g} (< 1e-9)", worst)};
}

Outcome ac9() {
  for (long p = 1; p <= 20; ++p) {
    const bool ok = validate(RMatrix::scalar(1, 4), digits_1d({0, 2}), digits_1d({0, p})).ok();
    if (ok != (p % 2 == 1)) return {false, fmt::format("p={}", p)};
  }
  return {true, "valid exactly for odd p in 1..20"};
}

Outcome ac10() {
  const RMatrix four = RMatrix::scalar(1, 4);
  const auto est = beurling_lower_estimate(digits_1d({0, 1}), four, 0.5, geometric_windows(4, 1, 12));
  for (std::size_t i = 0; i < est.samples.size(); ++i)
    if (est.samples[i].count != (std::size_t{1} << (i + 1))) return {false, fmt::format("count at n={}", i + 1)};
  const double gap = std::abs(est.samples[9].ratio - std::sqrt(3.0));
  if (gap >= 1e-4) return {false, fmt::format("ratio at n=10 off by {:.3g}", gap)};
  const auto scaled = beurling_lower_estimate(digits_1d({0, 5}), four, 0.5, geometric_windows(4, 5, 12));
  for (std::size_t i = 0; i < est.samples.size(); ++i)
    if (scaled.samples[i].count != est.samples[i].count || scaled.samples[i].h != Rational(5) * est.samples[i].h)
      return {false, fmt::format("scaling at n={}", i + 1)};
  return {true, fmt::format("2^n for n<=12; |ratio(10) - sqrt 3| = {:.3g}; count(5G, 5h) = count(G, h)", gap)};
}

Outcome ac11() {
  const auto s8 = catalog::shifted_eighths();
  const auto b8 = analyze(s8, Side::B);
  const auto l8 = analyze(s8, Side::L);
  if (b8.verdict != Verdict::NotONB || b8.cycles.size() != 1 || b8.cycles[0].points_str() != "1")
    return {false, std::string("eighths Gamma(L): ") + to_string(b8.verdict)};
  if (l8.verdict != Verdict::ONB) return {false, std::string("eighths Gamma(B): ") + to_string(l8.verdict)};

  const auto planar = catalog::planar_line();
  CycleSearchConfig cfg;
  cfg.mode = SearchMode::WordEnumeration;
  cfg.max_word_length = 8;
  const auto lp = analyze(planar, Side::L, cfg);
  const auto bp = analyze(planar, Side::B, cfg);
  if (lp.verdict != Verdict::NotONB || lp.cycles.size() != 1 || lp.cycles[0].points[0] != (RVector{0, q("1/2")}))
    return {false, std::string("planar Gamma(B): ") + to_string(lp.verdict)};
  if (bp.verdict != Verdict::InconclusiveNoCyclesFound || !bp.cycles.empty())
    return {false, std::string("planar Gamma(L): ") + to_string(bp.verdict)};
  return {true, "eighths: Gamma(L) NotONB via {1}, Gamma(B) ONB; planar: Gamma(B) NotONB via {(0,1/2)}, "
                "Gamma(L) Inconclusive"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {"AC1", "golden cycle table", 10, ac1},        {"AC2", "repunit cycles", 60, ac2},
      {"AC3", "powers of five", 30, ac3},            {"AC4", "divisible fixed points", 0, ac4},
      {"AC5", "orthogonality", 30, ac5},             {"AC6", "spectral functions", 0, ac6},
      {"AC7", "duality", 0, ac7},                    {"AC8", "closed form", 0, ac8},
      {"AC9", "parity gate", 0, ac9},                {"AC10", "density", 0, ac10},
      {"AC11", "example verdicts", 0, ac11},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += fmt::format("; exceeded {:.0f} s", c.limit_s);
    }
    failed += !o.pass;
    fmt::print("{:<5} {} {:<24} [{:7.2f} s] {}\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", std::size(all) - static_cast<std::size_t>(failed), std::size(all));
  return failed ? 1 : 0;
}
