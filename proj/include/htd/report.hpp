#pragma once

// Certifier verdicts. A passing verdict only means "no violation found on
// this grid"; it is never a membership proof, and the report wording keeps
// that distinction.

#include <optional>
#include <string>

#include <json.hpp>

#include "htd/grid.hpp"

namespace htd {

enum class Verdict { violated, no_violation_on_grid };

enum class WitnessKind { point, pair, triple, ess_inf, jump };

struct Witness {
  WitnessKind kind = WitnessKind::point;
  double x = 0.0;
  double y = 0.0;    // pair partner (pair) or right edge (triple)
  double mid = 0.0;  // middle point of a triple
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs; violations have margin > tolerance
};

struct CheckReport {
  std::string klass;
  Verdict verdict = Verdict::no_violation_on_grid;
  std::optional<Witness> witness;
  GridSpec grid;
  double tolerance = kCheckTol;
  double worst_margin = -kInf;  // most-nearly-violated slack seen on the grid
  std::vector<Witness> probes;  // margins re-confirmed at caller-requested points

  bool violated() const { return verdict == Verdict::violated; }
  bool passed() const { return verdict == Verdict::no_violation_on_grid; }
};

inline const char* to_string(Verdict v) {
  return v == Verdict::violated ? "VIOLATED" : "NO_VIOLATION_ON_GRID";
}

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::point: return "point";
    case WitnessKind::pair: return "pair";
    case WitnessKind::triple: return "triple";
    case WitnessKind::ess_inf: return "ESS_INF";
    case WitnessKind::jump: return "JUMP";
  }
  return "point";
}

inline nlohmann::json to_json(const Witness& w) {
  nlohmann::json j{{"kind", to_string(w.kind)}, {"x", w.x},     {"lhs", w.lhs},
                   {"rhs", w.rhs},              {"margin", w.margin}};
  if (w.kind == WitnessKind::pair) j["y"] = w.y;
  if (w.kind == WitnessKind::triple) {
    j["y"] = w.y;
    j["mid"] = w.mid;
  }
  return j;
}

inline nlohmann::json to_json(const GridSpec& g) {
  return nlohmann::json{{"lo", g.lo},
                        {"hi", g.hi},
                        {"n_points", g.n_points},
                        {"spacing", g.spacing == Spacing::log ? "log" : "linear"}};
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{{"class", r.klass},
                   {"verdict", to_string(r.verdict)},
                   {"grid", to_json(r.grid)},
                   {"tolerance", r.tolerance}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.worst_margin != -kInf) j["worst_margin"] = r.worst_margin;
  if (!r.probes.empty()) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : r.probes) ps.push_back(to_json(p));
    j["probes"] = ps;
  }
  return j;
}

}  // namespace htd
