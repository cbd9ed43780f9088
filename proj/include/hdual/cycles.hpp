#pragma once

// Extreme-cycle detection. A cycle of the dual IFS x -> S^{-1}(x + o) whose
// points all satisfy |chi_M(x)| = 1 obstructs completeness of the candidate
// spectrum; in dimension one its absence is also sufficient.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdual/algebra.hpp"
#include "hdual/system.hpp"

namespace hdual {

/// points[i + 1] = S^{-1}(points[i] + digits[i]) and the last step returns to
/// points[0]. Canonical form starts at the lexicographically smallest point.
struct ExtremeCycle {
  std::vector<RVector> points;
  std::vector<RVector> digits;
  Side side = Side::B;

  [[nodiscard]] std::size_t length() const { return points.size(); }
  /// "a;b;c" in cycle order (coordinates joined by ':' in dimension > 1).
  [[nodiscard]] std::string points_str() const;
  [[nodiscard]] std::string digits_str() const;

  friend bool operator==(const ExtremeCycle&, const ExtremeCycle&) = default;
};

/// Rotates to the canonical starting point.
ExtremeCycle canonicalize(ExtremeCycle c);

/// Exact re-check of closure, digit membership and extremality, independent
/// of how the cycle was found.
bool verify_cycle(const HadamardSystem& sys, const ExtremeCycle& c);

enum class SearchMode { LatticeGraph, WordEnumeration };

struct CycleSearchConfig {
  SearchMode mode = SearchMode::LatticeGraph;
  int max_word_length = 8;
  std::size_t node_cap = 50'000'000;
  std::size_t word_cap = 10'000'000;
  std::size_t cycle_cap = 1'000'000;
};

struct CycleSearchResult {
  std::vector<ExtremeCycle> cycles;  ///< non-trivial, canonical, sorted
  bool trivial_cycle_seen = false;   ///< the fixed point {0}
  bool exhaustive = false;           ///< true for the lattice search
  std::size_t nodes = 0;             ///< lattice nodes or words examined
};

/// Smallest s > 0 with { x : d x in Z for all digits d } = s Z.
/// Throws std::invalid_argument unless d = 1, and when all digits are zero.
Rational dual_lattice_1d(const DigitSet& digits);

/// [min(D)/(r-1), max(D)/(r-1)], which contains the attractor of
/// x -> (x + d)/r. Throws std::invalid_argument for r <= 1.
std::pair<Rational, Rational> attractor_interval(const DigitSet& digits, const Rational& r);

/// Exhaustive search in dimension one. Nodes are the points of the
/// extremality lattice inside the attractor interval; every admissible digit
/// adds an edge, so branching successors are all followed. Simple cycles are
/// enumerated per strongly connected component.
/// Throws CapExceeded when the lattice has more than config.node_cap points.
CycleSearchResult find_cycles_lattice_1d(const HadamardSystem& sys, Side side, const CycleSearchConfig& config = {});

/// Periodic points of all aperiodic words up to config.max_word_length,
/// one word per necklace. Sound in any dimension, complete only up to the
/// word length.
CycleSearchResult find_cycles_words(const HadamardSystem& sys, Side side, const CycleSearchConfig& config = {});

/// Dispatches on config.mode.
CycleSearchResult find_cycles(const HadamardSystem& sys, Side side, const CycleSearchConfig& config = {});

enum class Verdict { ONB, NotONB, InconclusiveNoCyclesFound };
const char* to_string(Verdict v);

struct SpectralReport {
  HadamardSystem system;
  Side side;
  std::vector<ExtremeCycle> cycles;
  Verdict verdict;
  std::string dimension_note;
};

/// Non-trivial cycles mean NotONB in every dimension. No cycles from an
/// exhaustive search in dimension one means ONB. Otherwise the answer is
/// inconclusive, unless `assume_sufficient` is set, which treats the cycle
/// condition as sufficient in higher dimension as well.
SpectralReport onb_verdict(const HadamardSystem& sys, Side side, std::vector<ExtremeCycle> cycles, bool exhaustive,
                           bool assume_sufficient = false);

/// Search plus verdict.
SpectralReport analyze(const HadamardSystem& sys, Side side, const CycleSearchConfig& config = {},
                       bool assume_sufficient = false);

/// q C for a cycle of (R, B, L), checked against `target` = (R, B, qL).
/// Throws std::invalid_argument for q = 0 and VerificationFailure if the
/// scaled cycle does not verify.
ExtremeCycle scaled_cycle(const ExtremeCycle& cycle, long q, const HadamardSystem& target);

/// How the second digit of L = {0, l} depends on the scan parameter p.
enum class LConvention {
  ZeroP,       ///< L = {0, p}
  ZeroNpHalf,  ///< R = 2n, L = {0, n p / 2}
};
LConvention convention_from_string(const std::string& s);

/// (R, {0, 2}, L_p) for a scalar R. Throws std::invalid_argument when the
/// convention needs an even R.
std::pair<RMatrix, std::pair<DigitSet, DigitSet>> family_data(long R, LConvention conv, const BigInt& p);

struct ScanRow {
  BigInt p;
  std::vector<ExtremeCycle> cycles;
  std::optional<std::string> error;  ///< validation or search failure for this p
};

/// One row per p, in the order given. Rows are computed on `threads` worker
/// threads; the result does not depend on the thread count.
std::vector<ScanRow> scan_admissibility(long R, LConvention conv, const std::vector<BigInt>& ps, unsigned threads = 1,
                                        const CycleSearchConfig& config = {});

/// Odd p in [1, p_max].
std::vector<BigInt> odd_values(long p_max);

/// CSV with header "p,cycle_index,length,points,digits", one line per cycle.
std::string scan_csv(const std::vector<ScanRow>& rows);

/// p = sum_{i=0}^{2n-1} (2n)^i, the base-2n repunit of length 2n, whose
/// system (2n, {0,2}, {0, np/2}) carries B-extreme cycles of length 2n
/// although p = 1 mod (2n - 1). Throws std::invalid_argument for n < 2.
struct RepunitInstance {
  BigInt p;
  int predicted_length = 0;
  long R = 0;
  Rational l;  ///< n p / 2
};
RepunitInstance repunit_instance(int n);

/// If (2n - 1) | p, the singleton cycle t = n p / (2(2n - 1)) of the system
/// (2n, {0,2}, {0, np/2}); confirmed by the lattice search before returning.
/// Returns nullopt when 2n - 1 does not divide p.
/// Throws VerificationFailure if the search does not report {t}.
std::optional<Rational> divisible_fixed_point(int n, const BigInt& p);

}  // namespace hdual
