#include "tsecon/term.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "tsecon/error.hpp"

namespace tsecon {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Position of the top-level comma, or npos.
std::size_t top_level_comma(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return i;
  }
  return std::string_view::npos;
}

Term parse_expr(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw SpecError("empty term expression");
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    if (text.find_first_of("(),;") != std::string_view::npos) {
      throw SpecError("malformed term '" + std::string(text) + "'");
    }
    return level(std::string(text));
  }
  const std::string_view fn = trim(text.substr(0, open));
  const std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  if (fn == "lag") {
    const auto comma = top_level_comma(inner);
    if (comma == std::string_view::npos) throw SpecError("lag(<term>, k) needs a lag order");
    const auto kstr = trim(inner.substr(comma + 1));
    int k = 0;
    auto [ptr, ec] = std::from_chars(kstr.data(), kstr.data() + kstr.size(), k);
    if (ec != std::errc() || ptr != kstr.data() + kstr.size()) {
      throw SpecError("invalid lag order '" + std::string(kstr) + "'");
    }
    return lagged(parse_expr(inner.substr(0, comma)), k);
  }
  Term arg = parse_expr(inner);
  if (arg.lag != 0) throw SpecError("apply lag() outermost: '" + std::string(text) + "'");
  if (fn == "ln" || fn == "log") {
    if (arg.transform != Transform::level) throw SpecError("ln() takes a plain series");
    return log_of(arg.base);
  }
  if (fn == "d" || fn == "diff") {
    if (arg.transform == Transform::ln) return diff_log(arg.base);
    if (arg.transform != Transform::level) throw SpecError("series are differenced at most once");
    return diff(arg.base);
  }
  if (fn == "dln") {
    if (arg.transform != Transform::level) throw SpecError("dln() takes a plain series");
    return diff_log(arg.base);
  }
  throw SpecError("unknown transform '" + std::string(fn) + "'");
}

}  // namespace

int Term::shift() const {
  const int diffs = (transform == Transform::diff || transform == Transform::diff_ln) ? 1 : 0;
  return lag + diffs;
}

std::string Term::default_label() const {
  std::string s;
  switch (transform) {
    case Transform::level: s = base; break;
    case Transform::ln: s = "Ln(" + base + ")"; break;
    case Transform::diff: s = "d_" + base; break;
    case Transform::diff_ln: s = "d_Ln(" + base + ")"; break;
  }
  if (lag > 0) s += "(-" + std::to_string(lag) + ")";
  return s;
}

std::string Term::display() const { return label.empty() ? default_label() : label; }

std::string Term::expression() const {
  std::string s;
  switch (transform) {
    case Transform::level: s = base; break;
    case Transform::ln: s = "ln(" + base + ")"; break;
    case Transform::diff: s = "d(" + base + ")"; break;
    case Transform::diff_ln: s = "dln(" + base + ")"; break;
  }
  if (lag > 0) s = "lag(" + s + ", " + std::to_string(lag) + ")";
  if (!label.empty()) s += " as " + label;
  return s;
}

Term level(std::string base) { return Term{std::move(base), Transform::level, 0, {}}; }
Term log_of(std::string base) { return Term{std::move(base), Transform::ln, 0, {}}; }
Term diff(std::string base) { return Term{std::move(base), Transform::diff, 0, {}}; }
Term diff_log(std::string base) { return Term{std::move(base), Transform::diff_ln, 0, {}}; }

Term lagged(Term term, int k) {
  if (k < 1) throw SpecError("lag order must be >= 1");
  term.lag += k;
  term.label.clear();
  return term;
}

Term labelled(Term term, std::string label) {
  term.label = std::move(label);
  return term;
}

Term parse_term(std::string_view text) {
  text = trim(text);
  // `as` binds loosest: find it outside any parentheses.
  int depth = 0;
  std::size_t as_pos = std::string_view::npos;
  for (std::size_t i = 0; i + 4 <= text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && text.substr(i, 4) == " as ") {
      as_pos = i;
      break;
    }
  }
  if (as_pos == std::string_view::npos) return parse_expr(text);
  Term t = parse_expr(text.substr(0, as_pos));
  const auto label = trim(text.substr(as_pos + 4));
  if (label.empty()) throw SpecError("empty label after 'as'");
  t.label = std::string(label);
  return t;
}

std::vector<Term> parse_term_list(std::string_view text) {
  std::vector<Term> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string_view::npos) semi = text.size();
    const auto item = trim(text.substr(pos, semi - pos));
    if (!item.empty()) out.push_back(parse_term(item));
    pos = semi + 1;
  }
  return out;
}

AnnualSeries apply_term(const Dataset& dataset, const Term& term) {
  const AnnualSeries& base = dataset.get(term.base);
  const int first = base.start_year + term.shift();
  if (first > base.end_year()) {
    throw DataError("term " + term.display() + " leaves an empty series");
  }
  return apply_term(dataset, term, first, base.end_year());
}

AnnualSeries apply_term(const Dataset& dataset, const Term& term, int first, int last) {
  const AnnualSeries& base = dataset.get(term.base);
  if (first > last) throw DataError("term " + term.display() + " evaluated on an empty window");
  const int need_first = first - term.shift();
  const int need_last = last - term.lag;
  if (!base.covers(need_first) || !base.covers(need_last)) {
    throw DataError("series '" + base.name + "' does not cover " + std::to_string(need_first) +
                    "-" + std::to_string(need_last) + " needed by " + term.display());
  }
  const bool logs = term.transform == Transform::ln || term.transform == Transform::diff_ln;
  auto value = [&](int year) {
    const double v = base.at(year);
    if (logs && !(v > 0.0)) {
      throw DataError("ln of nonpositive value " + std::to_string(v) + " in '" + base.name +
                      "' at " + std::to_string(year));
    }
    return logs ? std::log(v) : v;
  };
  const bool differenced = term.transform == Transform::diff || term.transform == Transform::diff_ln;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (int y = first; y <= last; ++y) {
    const int src = y - term.lag;
    out.push_back(differenced ? value(src) - value(src - 1) : value(src));
  }
  std::string unit = base.unit;
  if (logs) unit = "log " + unit;
  return AnnualSeries::make(term.display(), first, std::move(out), std::move(unit));
}

}  // namespace tsecon
