#pragma once

// Majorization order on weight vectors and its decomposition into
// two-coordinate transfer steps.

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "htd/report.hpp"

namespace htd {

struct WeightVector {
  std::vector<double> w;

  WeightVector() = default;
  WeightVector(std::initializer_list<double> init) : w(init) { validate(); }
  explicit WeightVector(std::vector<double> v) : w(std::move(v)) { validate(); }

  void validate() const {
    require(!w.empty(), errc::bad_weights, "weight vector must be nonempty");
    for (double x : w) require(x >= 0.0, errc::bad_weights, "weights must be >= 0");
  }

  std::size_t size() const { return w.size(); }
  double sum() const { return std::accumulate(w.begin(), w.end(), 0.0); }
  bool normalized(double tol = kSumTol) const { return std::fabs(sum() - 1.0) <= tol; }
  double min() const { return *std::min_element(w.begin(), w.end()); }

  std::vector<double> sorted_increasing() const {
    std::vector<double> s = w;
    std::sort(s.begin(), s.end());
    return s;
  }
};

enum class MajOrder { a_majorizes_b, b_majorizes_a, equal, incomparable };

// Partial-sum comparison on increasingly sorted entries; equal sums within
// 1e-10 are required, otherwise the vectors are incomparable by convention.
inline MajOrder majorizes(const WeightVector& a, const WeightVector& b, double tol = 1e-10) {
  require(a.size() == b.size(), errc::length_mismatch, "weight vectors differ in length");
  const auto sa = a.sorted_increasing();
  const auto sb = b.sorted_increasing();
  double ta = 0.0, tb = 0.0;
  // The majorized (less spread) side has the larger increasing partial sums.
  bool a_below_b = true;  // a majorized by b
  bool b_below_a = true;  // b majorized by a
  for (std::size_t j = 0; j + 1 < sa.size(); ++j) {
    ta += sa[j];
    tb += sb[j];
    if (ta < tb - tol) a_below_b = false;
    if (tb < ta - tol) b_below_a = false;
  }
  ta += sa.back();
  tb += sb.back();
  if (std::fabs(ta - tb) > tol) return MajOrder::incomparable;
  if (a_below_b && b_below_a) return MajOrder::equal;
  if (a_below_b) return MajOrder::b_majorizes_a;
  if (b_below_a) return MajOrder::a_majorizes_b;
  return MajOrder::incomparable;
}

namespace detail {

inline bool is_majorized_by(const WeightVector& a, const WeightVector& b) {
  const MajOrder m = majorizes(a, b);
  return m == MajOrder::b_majorizes_a || m == MajOrder::equal;
}

}  // namespace detail

// Chain from `from` up to `to` (requires from majorized by to): consecutive
// elements differ in exactly two coordinates and each step is majorized by
// the next. Greedy largest-target transfers fix at least one coordinate per
// step, so at most n-1 steps are produced.
inline std::vector<WeightVector> t_transform_chain(const WeightVector& from,
                                                   const WeightVector& to) {
  require(from.size() == to.size(), errc::length_mismatch, "weight vectors differ in length");
  require(detail::is_majorized_by(from, to), errc::not_comparable,
          "`from` must be majorized by `to`");
  std::vector<WeightVector> chain{from};
  std::vector<double> cur = from.w;
  const double eps = 1e-12;
  for (std::size_t guard = 0; guard < from.size(); ++guard) {
    int grow = -1, shrink = -1;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] < to.w[i] - eps && (grow < 0 || to.w[i] > to.w[static_cast<std::size_t>(grow)]))
        grow = static_cast<int>(i);
      if (cur[i] > to.w[i] + eps &&
          (shrink < 0 || to.w[i] < to.w[static_cast<std::size_t>(shrink)]))
        shrink = static_cast<int>(i);
    }
    if (grow < 0 || shrink < 0) break;
    const auto gi = static_cast<std::size_t>(grow);
    const auto si = static_cast<std::size_t>(shrink);
    const double delta = std::min(to.w[gi] - cur[gi], cur[si] - to.w[si]);
    cur[gi] += delta;
    cur[si] -= delta;
    if (std::fabs(cur[gi] - to.w[gi]) <= eps) cur[gi] = to.w[gi];
    if (std::fabs(cur[si] - to.w[si]) <= eps) cur[si] = to.w[si];
    WeightVector step(cur);
    require(detail::is_majorized_by(chain.back(), step), errc::internal,
            "transfer step failed the majorization invariant");
    chain.push_back(std::move(step));
  }
  if (chain.size() == 1) {
    if (from.w != to.w) chain.push_back(to);  // equal within eps but not bitwise
    return chain;
  }
  chain.back() = to;
  return chain;
}

// Schur-concavity probe: phi evaluated on comparable pairs; a Schur-concave
// function is larger on the majorized (less spread) side.
inline CheckReport schur_probe(const std::function<double(double, double)>& phi,
                               const std::vector<std::pair<WeightVector, WeightVector>>& pairs,
                               double tol = kCheckTol) {
  CheckReport rep;
  rep.klass = "schur_concave";
  rep.tolerance = tol;
  double worst = -kInf;
  Witness w;
  for (const auto& [a, b] : pairs) {
    require(a.size() == 2 && b.size() == 2, errc::length_mismatch, "probe expects pairs on R+^2");
    const WeightVector* less = nullptr;
    const WeightVector* more = nullptr;
    switch (majorizes(a, b)) {
      case MajOrder::b_majorizes_a: less = &a; more = &b; break;
      case MajOrder::a_majorizes_b: less = &b; more = &a; break;
      case MajOrder::equal: less = &a; more = &b; break;
      case MajOrder::incomparable:
        raise(errc::not_comparable, "probe pair is not majorization-comparable");
    }
    const double lo = phi(more->w[0], more->w[1]);   // more spread: should be smaller
    const double hi = phi(less->w[0], less->w[1]);
    const double margin = lo - hi;
    if (margin > worst) {
      worst = margin;
      w = {WitnessKind::pair, less->w[0], less->w[1], 0.0, lo, hi, margin};
    }
  }
  rep.worst_margin = worst;
  if (worst > tol) {
    rep.verdict = Verdict::violated;
    rep.witness = w;
  }
  return rep;
}

inline nlohmann::json to_json(const WeightVector& v) { return nlohmann::json(v.w); }

inline WeightVector parse_weights(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    out.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return WeightVector(std::move(out));
}

}  // namespace htd
