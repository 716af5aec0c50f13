#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsecon/dataset.hpp"

namespace tsecon {

enum class Transform { level, ln, diff, diff_ln };

/// A regressor or dependent variable: a base series, one transform and an optional lag.
struct Term {
  std::string base;
  Transform transform = Transform::level;
  int lag = 0;
  std::string label;  ///< empty means "use default_label()"

  /// Number of leading years consumed by the transform and the lag.
  int shift() const;
  std::string default_label() const;
  std::string display() const;
  /// Expression form accepted by parse_term, e.g. "lag(dln(FBKF), 1)".
  std::string expression() const;

  friend bool operator==(const Term&, const Term&) = default;
};

Term level(std::string base);
Term log_of(std::string base);
Term diff(std::string base);
Term diff_log(std::string base);
Term lagged(Term term, int k);
Term labelled(Term term, std::string label);

/// Parses `name`, `ln(name)`, `d(name)`, `dln(name)`, `lag(<expr>, k)` with an optional
/// trailing `as <label>`.
Term parse_term(std::string_view text);
/// `;`-separated list of terms.
std::vector<Term> parse_term_list(std::string_view text);

/// Evaluate a term over the whole base series.
AnnualSeries apply_term(const Dataset& dataset, const Term& term);

/// Evaluate a term for output years [first, last] only; ln is checked on the
/// base values that window actually uses.
AnnualSeries apply_term(const Dataset& dataset, const Term& term, int first, int last);

}  // namespace tsecon
