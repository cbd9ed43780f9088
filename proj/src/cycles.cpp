#include "hdual/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "hdual/errors.hpp"
#include "hdual/fourier.hpp"

namespace hdual {

// ---------------------------------------------------------------- cycle basics

namespace {

std::string join_vectors(const std::vector<RVector>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    for (std::size_t k = 0; k < v[i].dim(); ++k) {
      if (k) s += ':';
      s += v[i][k].str();
    }
  }
  return s;
}

bool is_trivial(const ExtremeCycle& c) { return c.points.size() == 1 && c.points[0].is_zero(); }

bool points_distinct(const std::vector<RVector>& pts) {
  std::set<RVector> s(pts.begin(), pts.end());
  return s.size() == pts.size();
}

}  // namespace

std::string ExtremeCycle::points_str() const { return join_vectors(points); }
std::string ExtremeCycle::digits_str() const { return join_vectors(digits); }

ExtremeCycle canonicalize(ExtremeCycle c) {
  const std::size_t n = c.points.size();
  if (n <= 1) return c;
  auto rotated = [&](std::size_t r) {
    std::pair<std::vector<RVector>, std::vector<RVector>> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.first.push_back(c.points[(r + i) % n]);
      out.second.push_back(c.digits[(r + i) % n]);
    }
    return out;
  };
  auto best = rotated(0);
  for (std::size_t r = 1; r < n; ++r) {
    auto cand = rotated(r);
    if (cand < best) best = std::move(cand);
  }
  c.points = std::move(best.first);
  c.digits = std::move(best.second);
  return c;
}

bool verify_cycle(const HadamardSystem& sys, const ExtremeCycle& c) {
  const SideView v = sys.view(c.side);
  const std::size_t n = c.points.size();
  if (n == 0 || c.digits.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(v.frequency_digits.begin(), v.frequency_digits.end(), c.digits[i]) == v.frequency_digits.end())
      return false;
    if (v.scale_inverse * (c.points[i] + c.digits[i]) != c.points[(i + 1) % n]) return false;
    if (!chi_is_extreme(v.measure_digits, c.points[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------- one-dimensional geometry

Rational dual_lattice_1d(const DigitSet& digits) {
  BigInt den = 1;
  for (const auto& d : digits) {
    if (d.dim() != 1) throw std::invalid_argument("dual_lattice_1d: digits must be one-dimensional");
    BigInt q = d[0].den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
  }
  BigInt g = 0;
  for (const auto& d : digits) {
    BigInt a = (d[0] * Rational(den)).num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  if (g == 0) throw std::invalid_argument("dual_lattice_1d: all digits are zero");
  return {den, g};
}

std::pair<Rational, Rational> attractor_interval(const DigitSet& digits, const Rational& r) {
  if (r <= Rational(1)) throw std::invalid_argument("attractor_interval: scale must be > 1");
  if (digits.empty()) throw std::invalid_argument("attractor_interval: empty digit set");
  Rational lo = digits.front()[0], hi = digits.front()[0];
  for (const auto& d : digits) {
    if (d.dim() != 1) throw std::invalid_argument("attractor_interval: digits must be one-dimensional");
    lo = std::min(lo, d[0]);
    hi = std::max(hi, d[0]);
  }
  const Rational denom = r - Rational(1);
  return {lo / denom, hi / denom};
}

// ---------------------------------------------------------------- lattice graph

namespace {

struct Edge {
  std::int64_t to;
  std::uint32_t digit;
};

// Compressed adjacency over node ids 0..n-1.
struct Graph {
  std::vector<std::size_t> offset;
  std::vector<Edge> edges;

  [[nodiscard]] std::size_t size() const { return offset.size() - 1; }
  [[nodiscard]] std::size_t begin(std::size_t u) const { return offset[u]; }
  [[nodiscard]] std::size_t end(std::size_t u) const { return offset[u + 1]; }
};

// Iterative Tarjan; returns component id per node.
std::vector<std::int64_t> strongly_connected(const Graph& g, std::int64_t& count) {
  const std::size_t n = g.size();
  constexpr std::int64_t kUnset = -1;
  std::vector<std::int64_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::size_t> stack, call;
  std::vector<std::size_t> edge_pos(n, 0);
  std::vector<bool> on_stack(n, false);
  std::int64_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back(root);
    index[root] = low[root] = next_index++;
    edge_pos[root] = g.begin(root);
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      const std::size_t u = call.back();
      if (edge_pos[u] < g.end(u)) {
        const auto w = static_cast<std::size_t>(g.edges[edge_pos[u]++].to);
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          edge_pos[w] = g.begin(w);
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[u] = std::min(low[u], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[u]);
      if (low[u] == index[u]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != u);
        ++count;
      }
    }
  }
  return comp;
}

// Simple cycles of one strongly connected component (Johnson's algorithm,
// iterative). `nodes` are global ids in increasing order; each cycle is
// reported once, starting from its smallest node.
template <class Emit>
void simple_cycles(const Graph& g, const std::vector<std::size_t>& nodes, const std::vector<std::int64_t>& comp,
                   std::int64_t cid, std::size_t cycle_cap, std::size_t& emitted, Emit&& emit) {
  const std::size_t m = nodes.size();
  auto local = [&](std::size_t global) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), global) - nodes.begin());
  };
  // local adjacency restricted to the component
  std::vector<std::vector<Edge>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t e = g.begin(nodes[i]); e < g.end(nodes[i]); ++e) {
      const auto w = static_cast<std::size_t>(g.edges[e].to);
      if (comp[w] == cid) adj[i].push_back({static_cast<std::int64_t>(local(w)), g.edges[e].digit});
    }

  std::vector<bool> blocked(m, false);
  std::vector<std::vector<std::size_t>> blist(m);
  struct Frame {
    std::size_t v;
    std::size_t next = 0;
    bool found = false;
  };

  auto unblock = [&](std::size_t u) {
    std::vector<std::size_t> work{u};
    while (!work.empty()) {
      const std::size_t x = work.back();
      work.pop_back();
      if (!blocked[x]) continue;
      blocked[x] = false;
      for (auto w : blist[x]) work.push_back(w);
      blist[x].clear();
    }
  };

  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t i = s; i < m; ++i) {
      blocked[i] = false;
      blist[i].clear();
    }
    std::vector<Frame> frames{{s}};
    std::vector<std::size_t> path{s};
    std::vector<std::uint32_t> path_digits;
    blocked[s] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < adj[f.v].size()) {
        const Edge e = adj[f.v][f.next++];
        const auto w = static_cast<std::size_t>(e.to);
        if (w < s) continue;
        if (w == s) {
          if (++emitted > cycle_cap) throw CapExceeded("cycle enumeration exceeded the cycle cap");
          std::vector<std::size_t> cyc;
          for (auto p : path) cyc.push_back(nodes[p]);
          auto digs = path_digits;
          digs.push_back(e.digit);
          emit(cyc, digs);
          f.found = true;
        } else if (!blocked[w]) {
          blocked[w] = true;
          path.push_back(w);
          path_digits.push_back(e.digit);
          frames.push_back({w});
        }
        continue;
      }
      const Frame done = f;
      if (done.found) {
        unblock(done.v);
      } else {
        for (const auto& e : adj[done.v]) {
          const auto w = static_cast<std::size_t>(e.to);
          if (w < s) continue;
          auto& bl = blist[w];
          if (std::find(bl.begin(), bl.end(), done.v) == bl.end()) bl.push_back(done.v);
        }
      }
      frames.pop_back();
      path.pop_back();
      if (!path_digits.empty()) path_digits.pop_back();
      if (!frames.empty() && done.found) frames.back().found = true;
    }
  }
}

BigInt ceil_div(const Rational& a, const Rational& s) {
  const Rational q = a / s;
  BigInt f = q.floor();
  return q.is_integer() ? f : BigInt(f + 1);
}

}  // namespace

CycleSearchResult find_cycles_lattice_1d(const HadamardSystem& sys, Side side, const CycleSearchConfig& config) {
  if (sys.dim() != 1) throw std::invalid_argument("lattice search needs dimension one");
  const SideView v = sys.view(side);
  const Rational r = v.scale(0, 0);
  if (!r.is_integer()) throw std::invalid_argument("lattice search needs an integer scale");

  const Rational step = dual_lattice_1d(v.measure_digits);
  const auto [lo, hi] = attractor_interval(v.frequency_digits, r);
  const BigInt kmin_big = ceil_div(lo, step);
  const BigInt kmax_big = (hi / step).floor();
  const BigInt count_big = kmax_big - kmin_big + 1;
  if (count_big > BigInt(static_cast<unsigned long>(config.node_cap)))
    throw CapExceeded("lattice search: " + count_big.get_str() + " nodes exceed the node cap " +
                      std::to_string(config.node_cap));
  const auto n = static_cast<std::size_t>(count_big.get_ui());
  const std::int64_t kmin = kmin_big.get_si();
  const std::int64_t kmax = kmax_big.get_si();
  const std::int64_t rr = r.num().get_si();

  // Digit o moves index k to (k + o/step)/r; o/step must be an integer, and
  // shifts beyond this bound can never land back inside the interval.
  const BigInt reach = BigInt(static_cast<unsigned long>(n)) * (BigInt(std::abs(rr)) + 1) + std::abs(kmin) + 1;
  std::vector<std::pair<std::int64_t, std::uint32_t>> shifts;
  for (std::size_t i = 0; i < v.frequency_digits.size(); ++i) {
    const Rational sh = v.frequency_digits[i][0] / step;
    if (!sh.is_integer() || abs(sh.num()) > reach) continue;
    shifts.emplace_back(sh.num().get_si(), static_cast<std::uint32_t>(i));
  }

  Graph g;
  g.offset.reserve(n + 1);
  g.offset.push_back(0);
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    for (const auto& [sh, di] : shifts) {
      const std::int64_t num = k + sh;
      if (num % rr != 0) continue;
      const std::int64_t to = num / rr;
      if (to < kmin || to > kmax) continue;
      g.edges.push_back({to - kmin, di});
    }
    g.offset.push_back(g.edges.size());
  }

  std::int64_t ncomp = 0;
  const auto comp = strongly_connected(g, ncomp);
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(ncomp));
  for (std::size_t u = 0; u < n; ++u) members[static_cast<std::size_t>(comp[u])].push_back(u);

  CycleSearchResult res;
  res.exhaustive = true;
  res.nodes = n;
  std::size_t emitted = 0;
  for (std::int64_t c = 0; c < ncomp; ++c) {
    const auto& nodes = members[static_cast<std::size_t>(c)];
    if (nodes.size() == 1) {
      bool self = false;
      for (std::size_t e = g.begin(nodes[0]); e < g.end(nodes[0]); ++e)
        self = self || static_cast<std::size_t>(g.edges[e].to) == nodes[0];
      if (!self) continue;
    }
    simple_cycles(g, nodes, comp, c, config.cycle_cap, emitted,
                  [&](const std::vector<std::size_t>& cyc, const std::vector<std::uint32_t>& digs) {
                    ExtremeCycle ec;
                    ec.side = side;
                    for (std::size_t i = 0; i < cyc.size(); ++i) {
                      ec.points.push_back(RVector{step * Rational(kmin + static_cast<std::int64_t>(cyc[i]))});
                      ec.digits.push_back(v.frequency_digits[digs[i]]);
                    }
                    ec = canonicalize(std::move(ec));
                    if (!verify_cycle(sys, ec))
                      throw VerificationFailure("lattice search produced an invalid cycle " + ec.points_str());
                    if (is_trivial(ec)) {
                      res.trivial_cycle_seen = true;
                    } else {
                      res.cycles.push_back(std::move(ec));
                    }
                  });
  }
  std::sort(res.cycles.begin(), res.cycles.end(),
            [](const ExtremeCycle& a, const ExtremeCycle& b) { return a.points < b.points; });
  return res;
}

// ---------------------------------------------------------------- word enumeration

CycleSearchResult find_cycles_words(const HadamardSystem& sys, Side side, const CycleSearchConfig& config) {
  const SideView v = sys.view(side);
  const std::size_t N = v.frequency_digits.size();
  const int nmax = config.max_word_length;
  if (nmax < 1) throw std::invalid_argument("max_word_length must be >= 1");

  double total = 0.0;
  for (int k = 1; k <= nmax; ++k) total += std::pow(static_cast<double>(N), k);
  if (total > static_cast<double>(config.word_cap))
    throw CapExceeded("word enumeration: up to " + std::to_string(static_cast<long long>(total)) +
                      " words exceed the word cap " + std::to_string(config.word_cap));

  const std::size_t d = sys.dim();
  const RMatrix id = RMatrix::identity(d);
  std::vector<RMatrix> fix(static_cast<std::size_t>(nmax) + 1);  // (I - S^{-n})^{-1}
  RMatrix p = id;
  for (int k = 1; k <= nmax; ++k) {
    p = p * v.scale_inverse;
    fix[static_cast<std::size_t>(k)] = (id - p).inverse();
  }

  CycleSearchResult res;
  std::set<std::vector<RVector>> seen;

  // Duval's algorithm: Lyndon words over {0..N-1} up to length nmax, i.e.
  // one aperiodic word per necklace class.
  std::vector<std::size_t> w{0};
  while (!w.empty()) {
    ++res.nodes;
    const std::size_t n = w.size();
    RVector c = RVector::zero(d);
    for (std::size_t i = 0; i < n; ++i) c = v.scale_inverse * (c + v.frequency_digits[w[i]]);
    const RVector x = fix[n] * c;

    ExtremeCycle ec;
    ec.side = side;
    RVector y = x;
    bool extreme = true;
    for (std::size_t i = 0; i < n && extreme; ++i) {
      extreme = chi_is_extreme(v.measure_digits, y);
      ec.points.push_back(y);
      ec.digits.push_back(v.frequency_digits[w[i]]);
      y = v.scale_inverse * (y + v.frequency_digits[w[i]]);
    }
    if (extreme) {
      if (y != x) throw VerificationFailure("word search: periodic point does not close");
      // Cycles through a repeated point are unions of shorter simple cycles.
      if (points_distinct(ec.points)) {
        ec = canonicalize(std::move(ec));
        if (is_trivial(ec)) {
          res.trivial_cycle_seen = true;
        } else if (seen.insert(ec.points).second) {
          if (!verify_cycle(sys, ec)) throw VerificationFailure("word search produced an invalid cycle");
          res.cycles.push_back(std::move(ec));
        }
      }
    }

    // next Lyndon word
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(nmax)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == N - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }

  std::sort(res.cycles.begin(), res.cycles.end(),
            [](const ExtremeCycle& a, const ExtremeCycle& b) { return a.points < b.points; });
  return res;
}

CycleSearchResult find_cycles(const HadamardSystem& sys, Side side, const CycleSearchConfig& config) {
  if (config.mode == SearchMode::LatticeGraph) return find_cycles_lattice_1d(sys, side, config);
  return find_cycles_words(sys, side, config);
}

// ---------------------------------------------------------------- verdicts

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ONB:
      return "ONB";
    case Verdict::NotONB:
      return "NotONB";
    case Verdict::InconclusiveNoCyclesFound:
      return "InconclusiveNoCyclesFound";
  }
  return "?";
}

SpectralReport onb_verdict(const HadamardSystem& sys, Side side, std::vector<ExtremeCycle> cycles, bool exhaustive,
                           bool assume_sufficient) {
  SpectralReport rep{sys, side, std::move(cycles), Verdict::InconclusiveNoCyclesFound, ""};
  if (!rep.cycles.empty()) {
    rep.verdict = Verdict::NotONB;
    rep.dimension_note = "non-trivial extreme cycles obstruct completeness in every dimension";
  } else if (sys.dim() == 1 && exhaustive) {
    rep.verdict = Verdict::ONB;
    rep.dimension_note = "dimension one: the trivial cycle alone characterizes an orthonormal basis";
  } else if (sys.dim() == 1) {
    rep.dimension_note = "no cycles up to the searched word length; the word search is not exhaustive";
  } else if (assume_sufficient) {
    rep.verdict = Verdict::ONB;
    rep.dimension_note =
        "dimension > 1: the cycle condition is only necessary; ONB assumed on request (assume-sufficient)";
  } else {
    rep.dimension_note = "dimension > 1: absence of extreme cycles is necessary but not sufficient for an ONB";
  }
  return rep;
}

SpectralReport analyze(const HadamardSystem& sys, Side side, const CycleSearchConfig& config,
                       bool assume_sufficient) {
  CycleSearchResult r = find_cycles(sys, side, config);
  return onb_verdict(sys, side, std::move(r.cycles), r.exhaustive, assume_sufficient);
}

ExtremeCycle scaled_cycle(const ExtremeCycle& cycle, long q, const HadamardSystem& target) {
  if (q == 0) throw std::invalid_argument("scaled_cycle: q must be non-zero");
  ExtremeCycle out;
  out.side = cycle.side;
  for (const auto& x : cycle.points) out.points.push_back(Rational(q) * x);
  for (const auto& o : cycle.digits) out.digits.push_back(Rational(q) * o);
  out = canonicalize(std::move(out));
  if (!verify_cycle(target, out)) throw VerificationFailure("scaled cycle " + out.points_str() + " does not verify");
  return out;
}

// ---------------------------------------------------------------- scans

LConvention convention_from_string(const std::string& s) {
  if (s == "0,p" || s == "{0,p}" || s == "p") return LConvention::ZeroP;
  if (s == "0,np/2" || s == "{0,np/2}" || s == "np/2") return LConvention::ZeroNpHalf;
  throw std::invalid_argument("unknown L convention '" + s + "' (use {0,p} or {0,np/2})");
}

std::pair<RMatrix, std::pair<DigitSet, DigitSet>> family_data(long R, LConvention conv, const BigInt& p) {
  Rational l;
  if (conv == LConvention::ZeroP) {
    l = Rational(p);
  } else {
    if (R % 2 != 0) throw std::invalid_argument("the {0,np/2} convention needs an even R = 2n");
    l = Rational(BigInt(R / 2) * p, 2);
  }
  return {RMatrix::scalar(1, R), {digits_1d({0, 2}), digits_1d({0, l})}};
}

std::vector<BigInt> odd_values(long p_max) {
  std::vector<BigInt> out;
  for (long p = 1; p <= p_max; p += 2) out.emplace_back(p);
  return out;
}

std::vector<ScanRow> scan_admissibility(long R, LConvention conv, const std::vector<BigInt>& ps, unsigned threads,
                                        const CycleSearchConfig& config) {
  std::vector<ScanRow> rows(ps.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ps.size(); i = next++) {
      ScanRow& row = rows[i];
      row.p = ps[i];
      try {
        auto [Rm, digits] = family_data(R, conv, ps[i]);
        ValidationReport rep = validate(Rm, digits.first, digits.second);
        if (!rep.ok()) {
          std::string msg = "invalid system:";
          for (const auto& f : rep.failures) msg += " " + f.check;
          row.error = msg;
          continue;
        }
        row.cycles = find_cycles_lattice_1d(*rep.system, Side::B, config).cycles;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const unsigned nt = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(ps.size())));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "p,cycle_index,length,points,digits\n";
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.cycles.size(); ++i) {
      const auto& c = row.cycles[i];
      out += row.p.get_str() + "," + std::to_string(i) + "," + std::to_string(c.length()) + "," + c.points_str() +
             "," + c.digits_str() + "\n";
    }
  return out;
}

// ---------------------------------------------------------------- named constructions

RepunitInstance repunit_instance(int n) {
  if (n < 2) throw std::invalid_argument("repunit_instance: n must be >= 2");
  const long r = 2L * n;
  BigInt p = 0, power = 1;
  for (int i = 0; i < 2 * n; ++i) {
    p += power;
    power *= r;
  }
  if (p % BigInt(r - 1) != 1) throw VerificationFailure("repunit is not 1 mod 2n - 1");
  return {p, 2 * n, r, Rational(BigInt(n) * p, 2)};
}

std::optional<Rational> divisible_fixed_point(int n, const BigInt& p) {
  if (n < 1) throw std::invalid_argument("divisible_fixed_point: n must be >= 1");
  const long m = 2L * n - 1;
  if (p % BigInt(m) != 0) return std::nullopt;
  const Rational t(BigInt(n) * p, BigInt(2 * m));

  auto [R, digits] = family_data(2L * n, LConvention::ZeroNpHalf, p);
  const HadamardSystem sys = HadamardSystem::create(R, digits.first, digits.second);
  const CycleSearchResult found = find_cycles_lattice_1d(sys, Side::B);
  const bool present = std::any_of(found.cycles.begin(), found.cycles.end(), [&](const ExtremeCycle& c) {
    return c.length() == 1 && c.points[0] == RVector{t};
  });
  if (!present) throw VerificationFailure("fixed point " + t.str() + " not reported by the cycle search");
  return t;
}

}  // namespace hdual
