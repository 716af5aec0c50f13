#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tsecon/cointegration.hpp"
#include "tsecon/dynamics.hpp"
#include "tsecon/scenario.hpp"
#include "tsecon/tsls.hpp"
#include "tsecon/unitroot.hpp"
#include "tsecon/var.hpp"

namespace tsecon {

struct RenderedTable {
  std::string text;
  std::string csv;
};

/// Six significant digits, the precision of the printed tables.
std::string format_sig(double value, int digits = 6);
/// Shortest representation that parses back to the same double.
std::string format_full(double value);
/// "***" below 1%, "**" below 5%, "*" below 10%.
std::string significance_stars(double p_value);
/// RFC-4180 field quoting.
std::string csv_field(std::string_view field);

RenderedTable render_table(const FitResult& fit);
RenderedTable render_table(const TslsResult& result);
RenderedTable render_table(const ArFitResult& fit);
RenderedTable render_table(const CointegrationResult& result);
RenderedTable render_table(std::span<const AdfResult> battery);
RenderedTable render_table(std::span<const GrangerPair> pairs);
RenderedTable render_table(std::span<const ChowResult> tests, const FitResult& model);
RenderedTable render_table(const ModelComparison& comparison);
RenderedTable render_table(std::span<const VifEntry> entries);
RenderedTable render_table(std::span<const ScenarioResult> scenarios);
RenderedTable render_table(const VarModel<double>& model);
RenderedTable render_table(const IrfResult<double>& irf);
RenderedTable render_table(const FevdResult<double>& fevd);

/// Response of `response` to a one-s.d. shock in `shock` over steps 0..H.
/// Throws SpecError for unknown variable names or H < 1.
std::string render_irf_plot(const IrfResult<double>& irf, std::string_view shock,
                            std::string_view response);
/// Line plot of one or more annual series on shared axes.
std::string render_series_plot(std::string_view title, std::span<const AnnualSeries> series);

/// Ordered set of named artifacts. Names are relative file paths inside the bundle.
class ReportBundle {
 public:
  ReportBundle(std::string manifest_echo, std::string dataset_checksum);

  void add_table(const std::string& name, const RenderedTable& table);
  void add_plot(const std::string& name, std::string svg);
  void add_text(const std::string& name, std::string text);
  /// A step that could not run because optional data is missing.
  void add_skipped(const std::string& step, const std::string& reason);

  struct Artifact {
    std::string name;
    std::string content;
  };
  const std::vector<Artifact>& artifacts() const { return artifacts_; }
  const std::string& manifest_echo() const { return manifest_echo_; }
  const std::string& dataset_checksum() const { return dataset_checksum_; }
  /// Concatenated text tables and notes in insertion order.
  std::string summary() const;

  /// Writes every artifact plus manifest.txt, checksum.txt, summary.txt and index.txt.
  void write(const std::filesystem::path& directory) const;

 private:
  void add(std::string name, std::string content);
  std::string manifest_echo_;
  std::string dataset_checksum_;
  std::vector<Artifact> artifacts_;
  std::vector<std::string> summary_parts_;
};

}  // namespace tsecon
