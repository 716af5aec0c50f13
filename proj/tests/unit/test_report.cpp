#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsecon/report.hpp"

using namespace tsecon;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> parse_rfc4180(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      rows.back().push_back(std::move(field));
      field.clear();
      rows.emplace_back();
    } else {
      field += c;
    }
  }
  if (rows.back().empty()) rows.pop_back();
  return rows;
}

FitResult sample_fit() {
  std::mt19937_64 rng(91);
  auto x = oracle::gaussian(rng, 40);
  auto y = oracle::gaussian(rng, 40);
  for (int i = 0; i < 40; ++i) y[i] += 0.7 * x[i];
  const auto ds = Dataset::from_series({oracle::series("y, quoted \"name\"", 1970, y),
                                        oracle::series("x", 1970, x)});
  ModelSpec s;
  s.dependent = level("y, quoted \"name\"");
  s.regressors = {level("x")};
  return ols_fit(ds, s);
}

}  // namespace

TEST(Report, SignificanceStars) {
  EXPECT_EQ(significance_stars(0.0099), "***");
  EXPECT_EQ(significance_stars(0.01), "**");
  EXPECT_EQ(significance_stars(0.049), "**");
  EXPECT_EQ(significance_stars(0.05), "*");
  EXPECT_EQ(significance_stars(0.0999), "*");
  EXPECT_EQ(significance_stars(0.1), "");
  EXPECT_EQ(significance_stars(std::nan("")), "");
}

TEST(Report, Formatting) {
  EXPECT_EQ(format_sig(-3.518284), "-3.51828");
  EXPECT_EQ(format_sig(std::nan("")), "NA");
  EXPECT_EQ(std::stod(format_full(0.1 + 0.2)), 0.1 + 0.2);
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, FitCsvRoundTrip) {
  const auto fit = sample_fit();
  const auto table = render_table(fit);
  const auto rows = parse_rfc4180(table.csv);
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"block", "label", "value", "std_error", "t", "p_value", "stars"}));
  int coefficients = 0;
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 7u);
    if (r[0] != "coefficient") continue;
    const auto& c = fit.coefficient(r[1]);
    EXPECT_NEAR(std::stod(r[2]), c.estimate, 1e-12 * std::abs(c.estimate));
    EXPECT_NEAR(std::stod(r[3]), c.std_error, 1e-12 * c.std_error);
    EXPECT_NEAR(std::stod(r[5]), c.p_value, 1e-12);
    EXPECT_EQ(r[6], significance_stars(c.p_value));
    ++coefficients;
  }
  EXPECT_EQ(coefficients, 2);
  bool saw_ssr = false;
  for (const auto& r : rows) {
    if (r[0] == "diagnostic" && r[1] == "Sum squared resid") {
      EXPECT_NEAR(std::stod(r[2]), fit.ssr, 1e-12 * fit.ssr);
      saw_ssr = true;
    }
  }
  EXPECT_TRUE(saw_ssr);
  EXPECT_NE(table.text.find("y, quoted \"name\""), std::string::npos);
  EXPECT_EQ(render_table(fit).text, table.text);
}

TEST(Report, SvgUsesOnlyBasicElements) {
  VarModel<double> m;
  m.labels = {"a", "b"};
  m.p = 1;
  m.intercepts = Eigen::VectorXd::Zero(2);
  m.coefficient_matrices = {Eigen::Matrix2d{{0.5, 0.1}, {0.2, 0.3}}};
  m.residual_cov = Eigen::Matrix2d{{1.0, 0.3}, {0.3, 1.0}};
  const auto irf = impulse_response(m, 10);
  const auto svg = render_irf_plot(irf, "a", "b");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("width=\"800\" height=\"500\""), std::string::npos);
  const std::set<std::string> allowed = {"svg", "rect", "line", "polyline", "text"};
  const std::regex tag("<\\s*/?\\s*([A-Za-z]+)");
  int opened = 0, closed = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it) {
    EXPECT_TRUE(allowed.count((*it)[1].str())) << (*it)[1].str();
    if ((*it)[1].str() == "svg") (it->str().find('/') == std::string::npos ? opened : closed)++;
  }
  EXPECT_EQ(opened, 1);
  EXPECT_EQ(closed, 1);
  EXPECT_EQ(svg, render_irf_plot(irf, "a", "b"));
  EXPECT_THROW(render_irf_plot(irf, "a", "zzz"), SpecError);
  EXPECT_THROW(render_irf_plot(impulse_response(m, 0), "a", "b"), SpecError);

  const std::vector<AnnualSeries> lines = {oracle::series("u", 2000, {1, 2, 3})};
  const auto plot = render_series_plot("title & <more>", lines);
  EXPECT_EQ(plot.find("<more>"), std::string::npos);
}

TEST(Report, BundleWritesDeterministicFiles) {
  auto make = [] {
    ReportBundle b("manifest text\n", "abc123");
    b.add_table("fit", render_table(sample_fit()));
    b.add_text("note", "hello\n");
    b.add_skipped("benef", "data-unavailable (Benef)");
    return b;
  };
  const auto d1 = fs::temp_directory_path() / "tsecon_bundle_1";
  const auto d2 = fs::temp_directory_path() / "tsecon_bundle_2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  make().write(d1);
  make().write(d2);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(d1)) names.push_back(e.path().filename().string());
  EXPECT_GE(names.size(), 8u);
  for (const auto& n : names) {
    std::ifstream a(d1 / n, std::ios::binary), b(d2 / n, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_EQ(sa.str(), sb.str()) << n;
  }
  std::ifstream skipped(d1 / "benef.txt");
  std::string line;
  std::getline(skipped, line);
  EXPECT_EQ(line.rfind("SKIPPED: data-unavailable", 0), 0u);

  ReportBundle dup("", "");
  dup.add_text("x", "1");
  EXPECT_THROW(dup.add_text("x", "2"), std::exception);
}
