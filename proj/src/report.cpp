#include "tsecon/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tsecon/error.hpp"

namespace tsecon {

namespace {

using Row = std::vector<std::string>;

enum class Align { left, right };

// Columns padded to their widest cell; first column left, the rest right.
std::string aligned(const std::vector<Row>& rows, std::vector<Align> align = {}) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  align.resize(width.size(), Align::right);
  if (!align.empty() && align.size() == width.size()) align[0] = Align::left;
  std::string out;
  for (const auto& r : rows) {
    std::string line = " ";
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string pad(width[c] - r[c].size(), ' ');
      line += "  ";
      line += align[c] == Align::left ? r[c] + pad : pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out += ',';
      out += csv_field(r[c]);
    }
    out += '\n';
  }
  return out;
}

std::string window_text(SampleWindow w) {
  return std::to_string(w.first) + "-" + std::to_string(w.last) + " (T = " +
         std::to_string(w.size()) + ")";
}

std::string fixed(double v, int decimals) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return {buf, r.ptr};
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void coefficient_rows(const std::vector<Coefficient>& coefs, bool z, std::vector<Row>& text,
                      std::vector<Row>& csv, const std::string& block) {
  text.push_back({"", "coefficient", "std. error", z ? "z" : "t-ratio", "p-value", ""});
  for (const auto& c : coefs) {
    const auto stars = significance_stars(c.p_value);
    text.push_back({c.label, format_sig(c.estimate), format_sig(c.std_error),
                    format_sig(c.t_stat), format_sig(c.p_value), stars});
    csv.push_back({block, c.label, format_full(c.estimate), format_full(c.std_error),
                   format_full(c.t_stat), format_full(c.p_value), stars});
  }
}

void diagnostic_rows(const FitResult& f, std::vector<Row>& text, std::vector<Row>& csv) {
  std::vector<std::pair<std::string, double>> items = {
      {"Mean dependent var", f.dep_mean},
      {"S.D. dependent var", f.dep_std_error},
      {"Sum squared resid", f.ssr},
      {"S.E. of regression", f.resid_std_error},
      {"R-squared", f.r_squared},
      {"Adjusted R-squared", f.adj_r_squared},
      {"F(" + std::to_string(f.f_df1) + ", " + std::to_string(f.f_df2) + ")", f.f_stat},
      {"P-value(F)", f.f_p_value},
      {"Log-likelihood", f.log_likelihood},
      {"Akaike criterion", f.aic},
      {"Schwarz criterion", f.bic},
      {"Hannan-Quinn", f.hqc},
      {"rho", f.rho1},
      {"Durbin-Watson", f.durbin_watson},
  };
  for (std::size_t i = 0; i < items.size(); i += 2) {
    Row r{items[i].first, format_sig(items[i].second)};
    if (i + 1 < items.size()) {
      r.push_back(items[i + 1].first);
      r.push_back(format_sig(items[i + 1].second));
    }
    text.push_back(std::move(r));
  }
  for (const auto& [name, v] : items) csv.push_back({"diagnostic", name, format_full(v), "", "", "", ""});
}

std::string fit_header(const FitResult& f) {
  std::string h = "Model: " + f.method + ", using observations " + window_text(f.sample) + "\n";
  h += "Dependent variable: " + f.dependent + "\n";
  return h;
}

const Row kFitCsvHeader{"block", "label", "value", "std_error", "t", "p_value", "stars"};

}  // namespace

std::string format_sig(double value, int digits) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  return {buf, r.ptr};
}

std::string format_full(double value) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, r.ptr};
}

std::string significance_stars(double p) {
  if (std::isnan(p)) return "";
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.10) return "*";
  return "";
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

RenderedTable render_table(const FitResult& fit) {
  std::vector<Row> text, diag, csv{kFitCsvHeader};
  coefficient_rows(fit.coefficients, fit.normal_inference, text, csv, "coefficient");
  diagnostic_rows(fit, diag, csv);
  return {fit_header(fit) + "\n" + aligned(text) + "\n" +
              aligned(diag, {Align::left, Align::right, Align::left, Align::right}),
          to_csv(csv)};
}

RenderedTable render_table(const TslsResult& result) {
  auto t = render_table(result.fit);
  if (!result.first_stage.empty()) {
    std::vector<Row> rows{{"First stage", "R-squared", "F(excluded)", "p-value"}};
    for (const auto& s : result.first_stage) {
      rows.push_back({s.regressor, format_sig(s.r_squared), format_sig(s.excluded_f),
                      format_sig(s.excluded_f_p)});
      t.csv += to_csv({{"first_stage", s.regressor, format_full(s.r_squared),
                        format_full(s.excluded_f), "", format_full(s.excluded_f_p), ""}});
    }
    t.text += "\n" + aligned(rows);
  }
  return t;
}

RenderedTable render_table(const ArFitResult& ar) {
  auto t = render_table(ar.structural);
  if (ar.rho.empty()) return t;
  std::vector<Row> text, csv;
  coefficient_rows(ar.rho, false, text, csv, "rho");
  t.text += "\nAR disturbance, " + std::to_string(ar.iterations_used) + " iterations, " +
            (ar.converged ? "converged" : "NOT converged") + "\n" + aligned(text);
  t.csv += to_csv(csv);
  t.csv += to_csv({{"diagnostic", "iterations", std::to_string(ar.iterations_used), "", "", "", ""},
                   {"diagnostic", "converged", ar.converged ? "1" : "0", "", "", "", ""}});
  return t;
}

RenderedTable render_table(const CointegrationResult& r) {
  auto t = render_table(r.long_run);
  const auto& a = r.residual_test;
  t.text += "\nResidual unit-root test (no constant, " + std::to_string(a.spec.lag_order) +
            " lag(s), tau_nc(" + std::to_string(a.n_vars) + ")): tau = " + format_sig(a.t_stat) +
            ", p = " + format_sig(a.p_value) + "\nCointegrated at 5%: " + yes_no(r.cointegrated) +
            "\n";
  t.csv += to_csv({{"residual_test", "tau", format_full(a.t_stat), "", "", format_full(a.p_value), ""},
                   {"diagnostic", "cointegrated", r.cointegrated ? "1" : "0", "", "", "", ""}});
  return t;
}

RenderedTable render_table(std::span<const AdfResult> battery) {
  std::vector<Row> text{{"Series", "deterministic", "lags", "T", "tau", "p-value", "unit root rejected"}};
  std::vector<Row> csv{{"series", "deterministic", "lags", "n_used", "first_year", "tau",
                        "alpha_minus_one", "p_value", "reject_5pct"}};
  for (const auto& a : battery) {
    const auto det = to_string(a.spec.deterministic);
    text.push_back({a.series, det, std::to_string(a.spec.lag_order), std::to_string(a.n_used),
                    format_sig(a.t_stat), format_sig(a.p_value), yes_no(a.reject_5pct)});
    csv.push_back({a.series, det, std::to_string(a.spec.lag_order), std::to_string(a.n_used),
                   std::to_string(a.first_year), format_full(a.t_stat),
                   format_full(a.alpha_minus_one), format_full(a.p_value),
                   a.reject_5pct ? "1" : "0"});
  }
  return {"Augmented Dickey-Fuller tests (MacKinnon p-values)\n\n" + aligned(text), to_csv(csv)};
}

RenderedTable render_table(std::span<const GrangerPair> pairs) {
  std::vector<Row> text{{"Null hypothesis", "Obs", "F", "p-value", "decision (5%)"}};
  std::vector<Row> csv{{"cause", "effect", "lags", "n_obs", "f_stat", "p_value", "reject_5pct"}};
  int lags = pairs.empty() ? 0 : pairs.front().lags;
  for (const auto& p : pairs) {
    text.push_back({p.cause + " does not Granger-cause " + p.effect, std::to_string(p.n_obs),
                    format_sig(p.f_stat), format_sig(p.p_value),
                    p.reject ? "reject" : "do not reject"});
    csv.push_back({p.cause, p.effect, std::to_string(p.lags), std::to_string(p.n_obs),
                   format_full(p.f_stat), format_full(p.p_value), p.reject ? "1" : "0"});
  }
  return {"Granger causality tests (" + std::to_string(lags) + " lags)\n\n" + aligned(text),
          to_csv(csv)};
}

RenderedTable render_table(std::span<const ChowResult> tests, const FitResult& model) {
  std::vector<Row> text{{"Break", "F", "df", "p-value", "structural change (5%)"}};
  std::vector<Row> csv{{"break_year", "f_stat", "df1", "df2", "p_value", "reject_5pct",
                        "ssr_pooled", "ssr_first", "ssr_second"}};
  for (const auto& c : tests) {
    text.push_back({std::to_string(c.break_year), format_sig(c.f_stat),
                    "(" + std::to_string(c.df1) + ", " + std::to_string(c.df2) + ")",
                    format_sig(c.p_value), yes_no(c.reject)});
    csv.push_back({std::to_string(c.break_year), format_full(c.f_stat), std::to_string(c.df1),
                   std::to_string(c.df2), format_full(c.p_value), c.reject ? "1" : "0",
                   format_full(c.ssr_pooled), format_full(c.ssr_first), format_full(c.ssr_second)});
  }
  return {"Chow tests, " + fit_header(model) + "\n" + aligned(text), to_csv(csv)};
}

RenderedTable render_table(const ModelComparison& cmp) {
  std::vector<Row> text{{"Statistic", "first", "second", "change", "improved"}};
  std::vector<Row> csv{{"statistic", "first", "second", "delta", "improved"}};
  int improved = 0;
  for (const auto& r : cmp.rows) {
    improved += r.improved;
    text.push_back({r.statistic, format_sig(r.first), format_sig(r.second), format_sig(r.delta),
                    yes_no(r.improved)});
    csv.push_back({r.statistic, format_full(r.first), format_full(r.second),
                   format_full(r.delta), r.improved ? "1" : "0"});
  }
  return {"Model comparison, dependent " + cmp.dependent + ", " + window_text(cmp.sample) + "\n\n" +
              aligned(text) + "\n" + std::to_string(improved) + " of " +
              std::to_string(cmp.rows.size()) + " statistics improved\n",
          to_csv(csv)};
}

RenderedTable render_table(std::span<const VifEntry> entries) {
  std::vector<Row> text{{"Variable", "VIF"}};
  std::vector<Row> csv{{"variable", "vif"}};
  for (const auto& e : entries) {
    const auto v = e.infinite ? std::string("inf") : format_sig(e.value);
    text.push_back({e.label, v});
    csv.push_back({e.label, e.infinite ? "inf" : format_full(e.value)});
  }
  return {"Variance inflation factors\n\n" + aligned(text), to_csv(csv)};
}

RenderedTable render_table(std::span<const ScenarioResult> scenarios) {
  std::string text;
  std::vector<Row> csv{{"scenario", "year", "baseline", "counterfactual"}};
  for (const auto& s : scenarios) {
    std::vector<Row> rows{{"Year", "actual", "scenario"}};
    const auto& b = s.baseline_path;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto year = std::to_string(b.start_year + static_cast<int>(i));
      rows.push_back({year, format_sig(b.values[i]), format_sig(s.counterfactual_path.values[i])});
      csv.push_back({s.name, year, format_full(b.values[i]),
                     format_full(s.counterfactual_path.values[i])});
    }
    text += "Scenario: " + s.name + " (" + b.name + ")\n" + aligned(rows);
    for (const auto& [k, v] : s.derived) {
      text += "  " + k + " = " + format_sig(v) + "\n";
      csv.push_back({s.name, k, format_full(v), ""});
    }
    text += "\n";
  }
  return {text, to_csv(csv)};
}

RenderedTable render_table(const VarModel<double>& m) {
  std::string text = "VAR(" + std::to_string(m.p) + "), using observations " +
                     window_text(m.sample) + "\nOrdering:";
  for (const auto& l : m.labels) text += " " + l;
  text += "\n\n";
  std::vector<Row> rows{{"equation", "regressor", "coefficient"}};
  std::vector<Row> csv{{"equation", "regressor", "coefficient"}};
  for (int eq = 0; eq < m.k(); ++eq) {
    const auto& name = m.labels[static_cast<std::size_t>(eq)];
    rows.push_back({name, "const", format_sig(m.intercepts(eq))});
    csv.push_back({name, "const", format_full(m.intercepts(eq))});
    for (int i = 0; i < m.p; ++i) {
      for (int j = 0; j < m.k(); ++j) {
        const auto reg = m.labels[static_cast<std::size_t>(j)] + "(-" + std::to_string(i + 1) + ")";
        const double v = m.coefficient_matrices[static_cast<std::size_t>(i)](eq, j);
        rows.push_back({name, reg, format_sig(v)});
        csv.push_back({name, reg, format_full(v)});
      }
    }
  }
  text += aligned(rows, {Align::left, Align::left, Align::right});
  text += "\nResidual covariance\n";
  std::vector<Row> cov{{""}};
  for (const auto& l : m.labels) cov[0].push_back(l);
  for (int i = 0; i < m.k(); ++i) {
    Row r{m.labels[static_cast<std::size_t>(i)]};
    for (int j = 0; j < m.k(); ++j) {
      r.push_back(format_sig(m.residual_cov(i, j)));
      csv.push_back({"residual_cov", m.labels[static_cast<std::size_t>(i)] + "," +
                                         m.labels[static_cast<std::size_t>(j)],
                     format_full(m.residual_cov(i, j))});
    }
    cov.push_back(std::move(r));
  }
  text += aligned(cov);
  return {text, to_csv(csv)};
}

RenderedTable render_table(const IrfResult<double>& irf) {
  std::string text = "Orthogonalized impulse responses (Cholesky ordering:";
  for (const auto& l : irf.ordering) text += " " + l;
  text += std::string(")") + (irf.pivoted_factor ? ", pivoted factor" : "") + "\n";
  std::vector<Row> csv{{"shock", "response", "step", "value"}};
  const auto k = irf.ordering.size();
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Row> rows{{"step", "response"}};
      for (int h = 0; h <= irf.horizon; ++h) {
        const double v = irf.responses[static_cast<std::size_t>(h)](static_cast<Eigen::Index>(j),
                                                                   static_cast<Eigen::Index>(s));
        rows.push_back({std::to_string(h), format_sig(v)});
        csv.push_back({irf.ordering[s], irf.ordering[j], std::to_string(h), format_full(v)});
      }
      text += "\nResponse of " + irf.ordering[j] + " to a shock in " + irf.ordering[s] + "\n" +
              aligned(rows);
    }
  }
  return {text, to_csv(csv)};
}

RenderedTable render_table(const FevdResult<double>& fevd) {
  std::string text = "Forecast-error variance decomposition\n";
  std::vector<Row> csv{{"variable", "step", "shock", "share"}};
  const auto k = fevd.ordering.size();
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Row> rows{{"step"}};
    for (const auto& l : fevd.ordering) rows[0].push_back(l);
    for (int h = 0; h <= fevd.horizon; ++h) {
      Row r{std::to_string(h)};
      for (std::size_t s = 0; s < k; ++s) {
        const double v = fevd.shares[static_cast<std::size_t>(h)](static_cast<Eigen::Index>(j),
                                                                 static_cast<Eigen::Index>(s));
        r.push_back(format_sig(v));
        csv.push_back({fevd.ordering[j], std::to_string(h), fevd.ordering[s], format_full(v)});
      }
      rows.push_back(std::move(r));
    }
    text += "\nVariance of " + fevd.ordering[j] + "\n" + aligned(rows);
  }
  return {text, to_csv(csv)};
}

namespace {

constexpr double kLeft = 70;
constexpr double kRight = 770;
constexpr double kTop = 50;
constexpr double kBottom = 450;

struct Scale {
  double x0, x1, y0, y1;
  double px(double x) const { return x1 == x0 ? kLeft : kLeft + (x - x0) / (x1 - x0) * (kRight - kLeft); }
  double py(double y) const { return y1 == y0 ? (kTop + kBottom) / 2 : kBottom - (y - y0) / (y1 - y0) * (kBottom - kTop); }
};

const char* kColors[] = {"#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e"};

std::string svg_open(std::string_view title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
                  "height=\"500\" viewBox=\"0 0 800 500\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + xml_escape(title) + "</text>\n";
  return s;
}

std::string line(double x1, double y1, double x2, double y2, std::string_view style) {
  return "<line x1=\"" + fixed(x1, 2) + "\" y1=\"" + fixed(y1, 2) + "\" x2=\"" + fixed(x2, 2) +
         "\" y2=\"" + fixed(y2, 2) + "\" " + std::string(style) + "/>\n";
}

std::string label(double x, double y, std::string_view anchor, std::string_view s) {
  return "<text x=\"" + fixed(x, 2) + "\" y=\"" + fixed(y, 2) + "\" text-anchor=\"" +
         std::string(anchor) + "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(s) +
         "</text>\n";
}

std::string axes(const Scale& sc, const std::vector<double>& xticks) {
  std::string s;
  s += line(kLeft, kTop, kLeft, kBottom, "stroke=\"#000000\" stroke-width=\"1\"");
  s += line(kLeft, kBottom, kRight, kBottom, "stroke=\"#000000\" stroke-width=\"1\"");
  for (int i = 0; i <= 4; ++i) {
    const double v = sc.y0 + (sc.y1 - sc.y0) * i / 4.0;
    const double y = sc.py(v);
    s += line(kLeft - 4, y, kLeft, y, "stroke=\"#000000\" stroke-width=\"1\"");
    s += label(kLeft - 6, y + 4, "end", format_sig(v, 4));
  }
  for (double xt : xticks) {
    const double x = sc.px(xt);
    s += line(x, kBottom, x, kBottom + 4, "stroke=\"#000000\" stroke-width=\"1\"");
    s += label(x, kBottom + 18, "middle", format_sig(xt, 6));
  }
  if (sc.y0 < 0 && sc.y1 > 0) {
    s += line(kLeft, sc.py(0), kRight, sc.py(0), "stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4,3\"");
  }
  return s;
}

std::string polyline(const Scale& sc, const std::vector<std::pair<double, double>>& pts,
                     std::string_view color) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                  "\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += fixed(sc.px(pts[i].first), 2) + "," + fixed(sc.py(pts[i].second), 2);
  }
  return s + "\"/>\n";
}

std::pair<double, double> padded_range(double lo, double hi, bool include_zero) {
  if (include_zero) {
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
  }
  if (hi == lo) {
    const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - d, hi + d};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::size_t index_of(const std::vector<std::string>& names, std::string_view name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw SpecError("unknown VAR variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

std::string render_irf_plot(const IrfResult<double>& irf, std::string_view shock,
                            std::string_view response) {
  if (irf.horizon < 1) throw SpecError("IRF plot needs a horizon of at least 1");
  const auto s = static_cast<Eigen::Index>(index_of(irf.ordering, shock));
  const auto j = static_cast<Eigen::Index>(index_of(irf.ordering, response));
  std::vector<std::pair<double, double>> pts;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int h = 0; h <= irf.horizon; ++h) {
    const double v = irf.responses[static_cast<std::size_t>(h)](j, s);
    pts.emplace_back(h, v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const auto [y0, y1] = padded_range(lo, hi, true);
  const Scale sc{0.0, static_cast<double>(irf.horizon), y0, y1};
  std::vector<double> ticks;
  for (int h = 0; h <= irf.horizon; ++h) ticks.push_back(h);
  std::string svg = svg_open("Response of " + std::string(response) + " to a shock in " +
                             std::string(shock));
  svg += axes(sc, ticks);
  svg += polyline(sc, pts, kColors[0]);
  svg += label(400, 485, "middle", "step");
  return svg + "</svg>\n";
}

std::string render_series_plot(std::string_view title, std::span<const AnnualSeries> series) {
  if (series.empty()) throw SpecError("nothing to plot");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  int first = series.front().start_year;
  int last = series.front().end_year();
  for (const auto& s : series) {
    first = std::min(first, s.start_year);
    last = std::max(last, s.end_year());
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const auto [y0, y1] = padded_range(lo, hi, false);
  const Scale sc{static_cast<double>(first), static_cast<double>(last), y0, y1};
  std::vector<double> ticks;
  const int step = std::max(1, (last - first) / 10);
  for (int y = first; y <= last; y += step) ticks.push_back(y);
  std::string svg = svg_open(title);
  svg += axes(sc, ticks);
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t t = 0; t < series[i].size(); ++t) {
      pts.emplace_back(series[i].start_year + static_cast<int>(t), series[i].values[t]);
    }
    const char* color = kColors[i % std::size(kColors)];
    svg += polyline(sc, pts, color);
    const double ly = kTop + 14.0 * static_cast<double>(i);
    svg += line(kRight - 170, ly, kRight - 150, ly, "stroke=\"" + std::string(color) + "\" stroke-width=\"2\"");
    svg += label(kRight - 145, ly + 4, "start", series[i].name);
  }
  return svg + "</svg>\n";
}

ReportBundle::ReportBundle(std::string manifest_echo, std::string dataset_checksum)
    : manifest_echo_(std::move(manifest_echo)), dataset_checksum_(std::move(dataset_checksum)) {}

void ReportBundle::add(std::string name, std::string content) {
  for (const auto& a : artifacts_) {
    if (a.name == name) throw SpecError("duplicate artifact name '" + name + "'");
  }
  artifacts_.push_back({std::move(name), std::move(content)});
}

void ReportBundle::add_table(const std::string& name, const RenderedTable& table) {
  add(name + ".txt", table.text);
  add(name + ".csv", table.csv);
  summary_parts_.push_back("== " + name + " ==\n" + table.text);
}

void ReportBundle::add_plot(const std::string& name, std::string svg) {
  add(name + ".svg", std::move(svg));
}

void ReportBundle::add_text(const std::string& name, std::string text) {
  summary_parts_.push_back("== " + name + " ==\n" + text);
  add(name + ".txt", std::move(text));
}

void ReportBundle::add_skipped(const std::string& step, const std::string& reason) {
  add_text(step, "SKIPPED: " + reason + "\n");
}

std::string ReportBundle::summary() const {
  std::string out = "Dataset SHA-256: " + dataset_checksum_ + "\n\n";
  for (const auto& p : summary_parts_) out += p + "\n";
  return out;
}

void ReportBundle::write(const std::filesystem::path& directory) const {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  auto put = [&](const fs::path& rel, const std::string& content) {
    const auto path = directory / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
  };
  std::string index;
  for (const auto& a : artifacts_) {
    put(a.name, a.content);
    index += a.name + "\n";
  }
  put("manifest.txt", manifest_echo_);
  put("checksum.txt", dataset_checksum_ + "\n");
  put("summary.txt", summary());
  put("index.txt", index);
}

}  // namespace tsecon
