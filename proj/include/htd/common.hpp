#pragma once

// Shared plumbing: error type, support/atom metadata, seeded RNG substreams.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace htd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default absolute tolerance for violation margins.
inline constexpr double kCheckTol = 1e-9;
// Slack for probability/weight sums.
inline constexpr double kSumTol = 1e-12;
// Bisection target on x for generic quantiles (absolute; relative above 1).
inline constexpr double kQuantileTol = 1e-12;

enum class errc {
  non_positive_param,
  param_out_of_range,
  invalid_eta,
  unknown_name,
  negative_support,
  zero_tail,
  not_invertible,
  weight_sum,
  length_mismatch,
  unsupported_case,
  bad_grid,
  no_density,
  degenerate,
  not_comparable,
  unsupported_quad,
  zero_weights,
  bad_joint,
  region_empty,
  n_unsupported,
  bad_weights,
  integ_budget,
  budget_exceeded,
  range,
  syntax,
  arity,
  param_range,
  unsupported,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_positive_param: return "NON_POSITIVE_PARAM";
    case errc::param_out_of_range: return "PARAM_OUT_OF_RANGE";
    case errc::invalid_eta: return "INVALID_ETA";
    case errc::unknown_name: return "UNKNOWN_NAME";
    case errc::negative_support: return "NEGATIVE_SUPPORT";
    case errc::zero_tail: return "ZERO_TAIL";
    case errc::not_invertible: return "NOT_INVERTIBLE";
    case errc::weight_sum: return "WEIGHT_SUM";
    case errc::length_mismatch: return "LENGTH_MISMATCH";
    case errc::unsupported_case: return "UNSUPPORTED_CASE";
    case errc::bad_grid: return "BAD_GRID";
    case errc::no_density: return "NO_DENSITY";
    case errc::degenerate: return "DEGENERATE";
    case errc::not_comparable: return "NOT_COMPARABLE";
    case errc::unsupported_quad: return "UNSUPPORTED_QUAD";
    case errc::zero_weights: return "ZERO_WEIGHTS";
    case errc::bad_joint: return "BAD_JOINT";
    case errc::region_empty: return "REGION_EMPTY";
    case errc::n_unsupported: return "N_UNSUPPORTED";
    case errc::bad_weights: return "BAD_WEIGHTS";
    case errc::integ_budget: return "INTEG_BUDGET";
    case errc::budget_exceeded: return "BUDGET_EXCEEDED";
    case errc::range: return "RANGE";
    case errc::syntax: return "SYNTAX";
    case errc::arity: return "ARITY";
    case errc::param_range: return "PARAM_RANGE";
    case errc::unsupported: return "UNSUPPORTED";
    case errc::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
  if (!ok) raise(c, msg);
}

struct Support {
  double lower = 0.0;
  double upper = kInf;
};

// Exact point mass, tracked through transforms so region arguments stay exact.
struct Atom {
  double x = 0.0;
  double mass = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Indexed substream: stream k of a base seed is independent of worker layout,
// so MC results do not depend on how work is partitioned.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
    std::uint64_t init[4] = {splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
    std::seed_seq seq{init[0] & 0xffffffffu, init[0] >> 32, init[1] & 0xffffffffu, init[1] >> 32,
                      init[2] & 0xffffffffu, init[2] >> 32, init[3] & 0xffffffffu, init[3] >> 32};
    eng_.seed(seq);
  }

  // u in [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return eng_(); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

struct MCEstimate {
  double value = 0.0;
  std::int64_t n = 0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t seed = 0;
};

inline MCEstimate make_indicator_estimate(double hits, std::int64_t n, std::uint64_t seed) {
  MCEstimate e;
  e.value = hits / static_cast<double>(n);
  e.n = n;
  e.std_error = std::sqrt(std::max(0.0, e.value * (1.0 - e.value)) / static_cast<double>(n));
  e.ci_lo = e.value - 1.96 * e.std_error;
  e.ci_hi = e.value + 1.96 * e.std_error;
  e.seed = seed;
  return e;
}

}  // namespace htd
