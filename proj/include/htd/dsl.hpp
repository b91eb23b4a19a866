#pragma once

// Textual distribution expressions: recursive-descent parser, canonical
// printer, and the builder that maps expressions onto constructors.
//
//   expr := ident '(' args ')'
//   arg  := number | expr | number ':' (number | expr) | IDENT [ '(' number ')' ]

#include <charconv>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "htd/compound.hpp"
#include "htd/examples.hpp"
#include "htd/transforms.hpp"

namespace htd {

class parse_error : public error {
 public:
  parse_error(errc code, std::size_t offset, const std::string& expected)
      : error(code, "at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

struct DistExpr;
using DistExprPtr = std::shared_ptr<const DistExpr>;

struct DistArg {
  enum class Kind { number, node, pair_num, pair_node, ident };
  Kind kind = Kind::number;
  double a = 0.0;          // number value, or pair key
  double b = 0.0;          // pair_num value, or ident parameter
  DistExprPtr node;        // node / pair_node payload
  std::string ident;       // ident name
  bool ident_param = false;
  std::size_t offset = 0;  // where this argument started
};

struct DistExpr {
  std::string head;
  std::vector<DistArg> args;
  std::size_t offset = 0;
};

// ------------------------------------------------------------ printing

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline std::string print(const DistExpr& e) {
  std::string out = e.head;
  out += '(';
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ", ";
    const DistArg& a = e.args[i];
    switch (a.kind) {
      case DistArg::Kind::number: out += detail::format_number(a.a); break;
      case DistArg::Kind::node: out += print(*a.node); break;
      case DistArg::Kind::pair_num:
        out += detail::format_number(a.a);
        out += ':';
        out += detail::format_number(a.b);
        break;
      case DistArg::Kind::pair_node:
        out += detail::format_number(a.a);
        out += ':';
        out += print(*a.node);
        break;
      case DistArg::Kind::ident:
        out += a.ident;
        if (a.ident_param) {
          out += '(';
          out += detail::format_number(a.b);
          out += ')';
        }
        break;
    }
  }
  out += ')';
  return out;
}

// ------------------------------------------------------------ parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DistExpr parse_toplevel() {
    DistExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error(errc::syntax, pos_, "end of input");
    validate(e);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) throw parse_error(errc::syntax, pos_, what);
    ++pos_;
  }

  std::string parse_ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) throw parse_error(errc::syntax, start, "identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  double parse_number() {
    skip_ws();
    const std::size_t start = pos_;
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw parse_error(errc::syntax, start, "number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  bool next_is_number() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  DistExpr parse_expr() {
    skip_ws();
    DistExpr e;
    e.offset = pos_;
    e.head = parse_ident();
    expect('(', "'('");
    if (!peek_is(')')) {
      while (true) {
        e.args.push_back(parse_arg());
        if (peek_is(',')) {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect(')', "')'");
    return e;
  }

  DistArg parse_arg() {
    skip_ws();
    DistArg a;
    a.offset = pos_;
    if (next_is_number()) {
      a.a = parse_number();
      if (peek_is(':')) {
        ++pos_;
        if (next_is_number()) {
          a.kind = DistArg::Kind::pair_num;
          a.b = parse_number();
        } else {
          a.kind = DistArg::Kind::pair_node;
          a.node = std::make_shared<const DistExpr>(parse_expr());
        }
      } else {
        a.kind = DistArg::Kind::number;
      }
      return a;
    }
    // identifier: either a nested expression (lowercase function) or a bare
    // catalog name, optionally with one numeric parameter
    const std::size_t save = pos_;
    const std::string name = parse_ident();
    const bool is_upper = std::isupper(static_cast<unsigned char>(name[0])) != 0;
    if (!is_upper && peek_is('(')) {
      pos_ = save;
      a.kind = DistArg::Kind::node;
      a.node = std::make_shared<const DistExpr>(parse_expr());
      return a;
    }
    a.kind = DistArg::Kind::ident;
    a.ident = name;
    if (peek_is('(')) {
      ++pos_;
      a.b = parse_number();
      a.ident_param = true;
      expect(')', "')'");
    }
    return a;
  }

  // Arity and parameter ranges mirror the constructor preconditions so bad
  // input fails at parse time with an offset.
  void validate(const DistExpr& e) {
    auto need = [&](bool ok, std::size_t off, const char* what) {
      if (!ok) throw parse_error(errc::arity, off, what);
    };
    auto range = [&](bool ok, std::size_t off, const char* what) {
      if (!ok) throw parse_error(errc::param_range, off, what);
    };
    auto num_at = [&](std::size_t i) {
      need(i < e.args.size() && e.args[i].kind == DistArg::Kind::number,
           i < e.args.size() ? e.args[i].offset : e.offset, "a numeric argument");
      return e.args[i].a;
    };
    auto node_at = [&](std::size_t i) {
      need(i < e.args.size() && e.args[i].kind == DistArg::Kind::node,
           i < e.args.size() ? e.args[i].offset : e.offset, "a distribution argument");
      validate(*e.args[i].node);
    };
    const std::string& h = e.head;
    if (h == "pareto" || h == "frechet" || h == "lomax") {
      need(e.args.size() == 1, e.offset, "one parameter");
      range(num_at(0) > 0.0, e.args[0].offset, "a parameter > 0");
    } else if (h == "logcauchy" || h == "cauchy") {
      need(e.args.empty(), e.offset, "no arguments");
    } else if (h == "uniform") {
      need(e.args.size() == 2, e.offset, "two parameters");
      range(num_at(1) > num_at(0), e.args[1].offset, "an upper bound above the lower");
    } else if (h == "piecewise_eta") {
      need(e.args.size() >= 2, e.offset, "at least two x:eta pairs");
      for (const auto& a : e.args)
        need(a.kind == DistArg::Kind::pair_num, a.offset, "an x:eta pair");
    } else if (h == "paper") {
      need(e.args.size() == 1 && e.args[0].kind == DistArg::Kind::ident, e.offset,
           "a catalog name");
    } else if (h == "powcdf") {
      need(e.args.size() == 2, e.offset, "a distribution and an exponent");
      node_at(0);
      range(num_at(1) > 0.0, e.args[1].offset, "an exponent > 0");
    } else if (h == "powsurv") {
      need(e.args.size() == 2, e.offset, "a distribution and an exponent");
      node_at(0);
      range(num_at(1) > 0.0 && num_at(1) < 1.0, e.args[1].offset, "an exponent in (0,1)");
    } else if (h == "scale" || h == "shift" || h == "excess" || h == "cond" || h == "trunc") {
      need(e.args.size() == 2, e.offset, "a distribution and a constant");
      node_at(0);
      range(num_at(1) > 0.0, e.args[1].offset, "a constant > 0");
    } else if (h == "maxof" || h == "excess_rand") {
      need(e.args.size() == 2, e.offset, "two distributions");
      node_at(0);
      node_at(1);
    } else if (h == "convexmap") {
      need(e.args.size() == 2 && e.args[1].kind == DistArg::Kind::node, e.offset,
           "a distribution and a map");
      node_at(0);
      const DistExpr& m = *e.args[1].node;
      need(m.head == "pow" || m.head == "addc" || m.head == "scalec" || m.head == "polyline",
           m.offset, "pow/addc/scalec/polyline");
    } else if (h == "mixture") {
      need(!e.args.empty(), e.offset, "weight:component pairs");
      double s = 0.0;
      for (const auto& a : e.args) {
        need(a.kind == DistArg::Kind::pair_node, a.offset, "a weight:component pair");
        range(a.a >= 0.0, a.offset, "a weight >= 0");
        s += a.a;
        validate(*a.node);
      }
      range(std::fabs(s - 1.0) <= kSumTol, e.offset, "weights summing to 1");
    } else if (h == "sum2") {
      need(e.args.size() == 1 && e.args[0].kind == DistArg::Kind::ident, e.offset,
           "PARETO1 or LOMAX1");
    } else if (h == "compound_binomial") {
      need(e.args.size() == 3, e.offset, "m, p and a severity");
      range(num_at(0) >= 1.0, e.args[0].offset, "m >= 1");
      range(num_at(1) >= 0.0 && num_at(1) <= 1.0, e.args[1].offset, "p in [0,1]");
      node_at(2);
    } else if (h == "compound_poisson") {
      need(e.args.size() == 2, e.offset, "a rate and a severity");
      range(num_at(0) > 0.0, e.args[0].offset, "a rate > 0");
      node_at(1);
    } else if (h == "pow" || h == "addc" || h == "scalec") {
      need(e.args.size() == 1, e.offset, "one parameter");
      if (h == "pow") range(num_at(0) >= 1.0, e.args[0].offset, "an exponent >= 1");
      if (h != "pow") range(num_at(0) > 0.0, e.args[0].offset, "a constant > 0");
    } else if (h == "polyline") {
      need(e.args.size() >= 2, e.offset, "at least two x:y pairs");
      for (const auto& a : e.args)
        need(a.kind == DistArg::Kind::pair_num, a.offset, "an x:y pair");
    } else {
      throw parse_error(errc::syntax, e.offset, "a known family or transform");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline DistExpr parse(std::string_view text) { return detail::Parser(text).parse_toplevel(); }

// ------------------------------------------------------------ building

namespace detail {

inline ConvexMap build_map(const DistExpr& e) {
  if (e.head == "pow") return ConvexMap::power(e.args[0].a);
  if (e.head == "addc") return ConvexMap::add_const(e.args[0].a);
  if (e.head == "scalec") return ConvexMap::scale(e.args[0].a);
  std::vector<std::pair<double, double>> pts;
  for (const auto& a : e.args) pts.emplace_back(a.a, a.b);
  return ConvexMap::polyline(std::move(pts));
}

}  // namespace detail

inline Distribution build(const DistExpr& e) {
  try {
    const std::string& h = e.head;
    if (h == "pareto") return make_pareto(e.args[0].a);
    if (h == "frechet") return make_frechet(e.args[0].a);
    if (h == "lomax") return make_lomax(e.args[0].a);
    if (h == "logcauchy") return make_logcauchy();
    if (h == "cauchy") return make_cauchy_std();
    if (h == "uniform") return make_uniform(e.args[0].a, e.args[1].a);
    if (h == "piecewise_eta") {
      std::vector<std::pair<double, double>> pts;
      for (const auto& a : e.args) pts.emplace_back(a.a, a.b);
      return make_piecewise_eta(std::move(pts));
    }
    if (h == "paper") {
      const auto& a = e.args[0];
      return make_example(a.ident, a.ident_param ? a.b : 1.0);
    }
    if (h == "powcdf") return pow_cdf(build(*e.args[0].node), e.args[1].a);
    if (h == "powsurv") return pow_survival(build(*e.args[0].node), e.args[1].a);
    if (h == "scale") return scale(build(*e.args[0].node), e.args[1].a);
    if (h == "shift") return shift(build(*e.args[0].node), e.args[1].a);
    if (h == "maxof") return max_of(build(*e.args[0].node), build(*e.args[1].node));
    if (h == "excess") return excess(build(*e.args[0].node), e.args[1].a);
    if (h == "excess_rand") return excess_random(build(*e.args[0].node), build(*e.args[1].node));
    if (h == "cond") return condition_exceed(build(*e.args[0].node), e.args[1].a);
    if (h == "trunc") return truncate_upper(build(*e.args[0].node), e.args[1].a);
    if (h == "convexmap")
      return convex_map(build(*e.args[0].node), detail::build_map(*e.args[1].node));
    if (h == "mixture") {
      std::vector<double> ws;
      std::vector<Distribution> comps;
      for (const auto& a : e.args) {
        ws.push_back(a.a);
        comps.push_back(build(*a.node));
      }
      return mixture(std::move(ws), std::move(comps));
    }
    if (h == "sum2") {
      const std::string& which = e.args[0].ident;
      if (which == "PARETO1") return sum_iid_closed(Sum2Case::pareto1);
      if (which == "LOMAX1") return sum_iid_closed(Sum2Case::lomax1);
      raise(errc::unknown_name, "unknown closed-form sum " + which);
    }
    if (h == "compound_binomial") {
      CompoundSpec spec{CompoundSpec::Freq::binomial, static_cast<int>(e.args[0].a), e.args[1].a,
                        1.0, build(*e.args[2].node)};
      return make_compound(std::move(spec));
    }
    if (h == "compound_poisson") {
      CompoundSpec spec{CompoundSpec::Freq::poisson, 1, 0.5, e.args[0].a,
                        build(*e.args[1].node)};
      return make_compound(std::move(spec));
    }
    raise(errc::unknown_name, "unknown expression head " + h);
  } catch (const parse_error&) {
    throw;
  } catch (const error& err) {
    throw error(err.code(), std::string(err.what()) + " [in " + print(e) + "]");
  }
}

inline Distribution build(std::string_view text) { return build(parse(text)); }

}  // namespace htd
