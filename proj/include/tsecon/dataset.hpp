#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsecon {

/// A contiguous, year-indexed sequence of finite values.
///
/// The value at index i belongs to year start_year + i. Construction through
/// make() validates the invariants; the aggregate stays public so small test
/// fixtures can be written inline.
struct AnnualSeries {
  std::string name;
  int start_year = 0;
  std::vector<double> values;
  std::string unit;

  static AnnualSeries make(std::string name, int start_year, std::vector<double> values,
                           std::string unit = {});

  int end_year() const { return start_year + static_cast<int>(values.size()) - 1; }
  std::size_t size() const { return values.size(); }
  bool covers(int year) const { return year >= start_year && year <= end_year(); }

  /// Value for a calendar year; throws DataError outside the covered range.
  double at(int year) const;

  /// Sub-series restricted to [first, last] (clamped to the covered range).
  AnnualSeries window(int first, int last) const;
};

/// One line of a provenance file: a printed annex cell and the curated value that replaced it.
struct ProvenanceNote {
  std::string series;
  int year = 0;
  std::string printed;
  std::string curated;
  std::string reason;
};

/// Immutable collection of named series loaded from a CSV bundle.
class Dataset {
 public:
  Dataset() = default;

  /// Builds a dataset from in-memory series (synthetic data, tests).
  static Dataset from_series(std::vector<AnnualSeries> series,
                             std::vector<ProvenanceNote> provenance = {});

  bool contains(std::string_view name) const;
  const AnnualSeries& get(std::string_view name) const;
  std::vector<std::string> names() const;
  const std::vector<ProvenanceNote>& provenance() const { return provenance_; }
  /// Provenance notes attached to one series.
  std::vector<ProvenanceNote> provenance_for(std::string_view name) const;

  /// Hex SHA-256 over the canonical CSV bytes of every series in name order.
  const std::string& checksum() const { return checksum_; }

  /// A new dataset with one more series. Throws DataError on a duplicate name.
  Dataset with_series(AnnualSeries series) const;

 private:
  void finalize();

  std::map<std::string, AnnualSeries, std::less<>> series_;
  std::vector<ProvenanceNote> provenance_;
  std::string checksum_;
};

/// Load a bundle: a single CSV file, or a directory of CSV files plus optional
/// provenance.txt and units.txt siblings.
Dataset load_dataset(const std::filesystem::path& path);

/// Canonical single-series CSV: `year,<name>` header, shortest round-trip values, LF endings.
std::string to_canonical_csv(const AnnualSeries& series);

/// Parse one CSV document (single-series or wide). `origin` is used in error messages.
std::vector<AnnualSeries> parse_csv(std::string_view text, std::string_view origin = "<memory>");

/// Element-wise nominal minus inflation over the overlapping years; unit "percent".
AnnualSeries real_interest_rate(const AnnualSeries& nominal, const AnnualSeries& inflation);

/// Tax benefit granted to a project: the lower of own funds and fixed-asset investment.
double estimate_tax_benefit(double own_funds, double fixed_asset_investment);

/// Level series from annual percent growth rates: level[y] = level[y-1] * (1 + g[y]/100),
/// with level[start-1] = anchor_ratio * anchor.at(start-1).
AnnualSeries cumulate_growth(const AnnualSeries& growth_percent, const AnnualSeries& anchor,
                             double anchor_ratio, std::string name, std::string unit = {});

}  // namespace tsecon
