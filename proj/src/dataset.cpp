#include "tsecon/dataset.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tsecon/error.hpp"

namespace tsecon {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits one CSV record with RFC-4180 quoting. No embedded newlines.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_number(std::string_view cell, std::string_view where) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && cell.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw DataError("non-numeric cell '" + std::string(cell) + "' in " + std::string(where));
  }
  return v;
}

int parse_year(std::string_view cell, std::string_view where) {
  int y = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), y);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw DataError("invalid year '" + std::string(cell) + "' in " + std::string(where));
  }
  return y;
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace

AnnualSeries AnnualSeries::make(std::string name, int start_year, std::vector<double> values,
                                std::string unit) {
  if (name.empty()) throw DataError("series name must not be empty");
  if (values.empty()) throw DataError("series '" + name + "' is empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("series '" + name + "' contains a non-finite value");
  }
  return AnnualSeries{std::move(name), start_year, std::move(values), std::move(unit)};
}

double AnnualSeries::at(int year) const {
  if (!covers(year)) {
    throw DataError("series '" + name + "' has no value for " + std::to_string(year));
  }
  return values[static_cast<std::size_t>(year - start_year)];
}

AnnualSeries AnnualSeries::window(int first, int last) const {
  first = std::max(first, start_year);
  last = std::min(last, end_year());
  AnnualSeries out{name, first, {}, unit};
  if (first > last) return out;
  out.values.assign(values.begin() + (first - start_year), values.begin() + (last - start_year) + 1);
  return out;
}

std::vector<AnnualSeries> parse_csv(std::string_view text, std::string_view origin) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto lines = split_lines(text);
  if (lines.empty()) throw DataError("empty CSV: " + std::string(origin));
  const auto header = split_record(lines.front());
  if (header.size() < 2 || header.front() != "year") {
    throw DataError("CSV header must be 'year,<series>...' in " + std::string(origin));
  }
  const std::size_t ncols = header.size() - 1;
  std::vector<AnnualSeries> out(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    out[c].name = header[c + 1];
    if (out[c].name.empty()) throw DataError("empty series name in " + std::string(origin));
  }
  int prev_year = 0;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_record(lines[r]);
    if (fields.size() != header.size()) {
      throw DataError("row " + std::to_string(r + 1) + " of " + std::string(origin) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    const int year = parse_year(fields[0], origin);
    if (r == 1) {
      for (auto& s : out) s.start_year = year;
    } else if (year != prev_year + 1) {
      throw DataError("non-contiguous years " + std::to_string(prev_year) + " -> " +
                      std::to_string(year) + " in " + std::string(origin));
    }
    prev_year = year;
    for (std::size_t c = 0; c < ncols; ++c) {
      out[c].values.push_back(parse_number(fields[c + 1], origin));
    }
  }
  for (auto& s : out) {
    if (s.values.empty()) throw DataError("series '" + s.name + "' has no rows in " + std::string(origin));
  }
  return out;
}

std::string to_canonical_csv(const AnnualSeries& series) {
  std::string out = "year," + quote_if_needed(series.name) + "\n";
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out += std::to_string(series.start_year + static_cast<int>(i));
    out.push_back(',');
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), series.values[i]);
    out.append(buf.data(), ptr);
    out.push_back('\n');
  }
  return out;
}

Dataset Dataset::from_series(std::vector<AnnualSeries> series,
                             std::vector<ProvenanceNote> provenance) {
  Dataset ds;
  for (auto& s : series) {
    auto checked = AnnualSeries::make(s.name, s.start_year, s.values, s.unit);
    const std::string key = checked.name;
    if (!ds.series_.emplace(key, std::move(checked)).second) {
      throw DataError("duplicate series name '" + key + "'");
    }
  }
  ds.provenance_ = std::move(provenance);
  ds.finalize();
  return ds;
}

void Dataset::finalize() {
  std::string bytes;
  for (const auto& [name, s] : series_) bytes += to_canonical_csv(s);
  checksum_ = sha256_hex(bytes);
}

bool Dataset::contains(std::string_view name) const { return series_.find(name) != series_.end(); }

const AnnualSeries& Dataset::get(std::string_view name) const {
  auto it = series_.find(name);
  if (it == series_.end()) throw DataError("unknown series '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> Dataset::names() const {
  std::vector<std::string> out;
  out.reserve(series_.size());
  for (const auto& [name, s] : series_) out.push_back(name);
  return out;
}

std::vector<ProvenanceNote> Dataset::provenance_for(std::string_view name) const {
  std::vector<ProvenanceNote> out;
  std::copy_if(provenance_.begin(), provenance_.end(), std::back_inserter(out),
               [&](const ProvenanceNote& n) { return n.series == name; });
  return out;
}

Dataset Dataset::with_series(AnnualSeries series) const {
  Dataset out = *this;
  auto checked = AnnualSeries::make(series.name, series.start_year, std::move(series.values),
                                    std::move(series.unit));
  const std::string key = checked.name;
  if (!out.series_.emplace(key, std::move(checked)).second) {
    throw DataError("duplicate series name '" + key + "'");
  }
  out.finalize();
  return out;
}

Dataset load_dataset(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw DataError("missing dataset path " + path.string());

  std::vector<fs::path> csv_files;
  fs::path dir;
  if (fs::is_directory(path)) {
    dir = path;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        csv_files.push_back(entry.path());
      }
    }
    std::sort(csv_files.begin(), csv_files.end());
    if (csv_files.empty()) throw DataError("no CSV files in " + path.string());
  } else {
    dir = path.parent_path();
    csv_files.push_back(path);
  }

  std::vector<AnnualSeries> all;
  for (const auto& f : csv_files) {
    auto parsed = parse_csv(read_file(f), f.filename().string());
    for (auto& s : parsed) all.push_back(std::move(s));
  }

  const fs::path units_path = dir / "units.txt";
  if (fs::exists(units_path)) {
    const std::string text = read_file(units_path);
    for (auto line : split_lines(text)) {
      if (line.empty() || line.front() == '#') continue;
      const auto fields = split_record(line);
      if (fields.size() < 2) throw DataError("malformed units line: " + std::string(line));
      for (auto& s : all) {
        if (s.name == fields[0]) s.unit = fields[1];
      }
    }
  }

  std::vector<ProvenanceNote> notes;
  const fs::path prov_path = dir / "provenance.txt";
  if (fs::exists(prov_path)) {
    const std::string text = read_file(prov_path);
    for (auto line : split_lines(text)) {
      if (line.empty() || line.front() == '#') continue;
      auto fields = split_record(line);
      if (fields.size() != 5) throw DataError("malformed provenance line: " + std::string(line));
      notes.push_back(ProvenanceNote{fields[0], parse_year(fields[1], "provenance.txt"),
                                     fields[2], fields[3], fields[4]});
    }
  }
  return Dataset::from_series(std::move(all), std::move(notes));
}

AnnualSeries real_interest_rate(const AnnualSeries& nominal, const AnnualSeries& inflation) {
  const int first = std::max(nominal.start_year, inflation.start_year);
  const int last = std::min(nominal.end_year(), inflation.end_year());
  if (first > last) throw DataError("nominal rate and inflation do not overlap");
  std::vector<double> r;
  for (int y = first; y <= last; ++y) r.push_back(nominal.at(y) - inflation.at(y));
  return AnnualSeries::make("Real interest rate", first, std::move(r), "percent");
}

double estimate_tax_benefit(double own_funds, double fixed_asset_investment) {
  if (own_funds < 0.0 || fixed_asset_investment < 0.0) {
    throw SpecError("tax benefit inputs must be non-negative");
  }
  return std::min(own_funds, fixed_asset_investment);
}

AnnualSeries cumulate_growth(const AnnualSeries& growth_percent, const AnnualSeries& anchor,
                             double anchor_ratio, std::string name, std::string unit) {
  const int base_year = growth_percent.start_year - 1;
  double level = anchor_ratio * anchor.at(base_year);
  if (!(level > 0.0)) throw DataError("cumulated level must start positive");
  std::vector<double> out;
  out.reserve(growth_percent.size());
  for (double g : growth_percent.values) {
    level *= 1.0 + g / 100.0;
    if (!(level > 0.0)) throw DataError("growth below -100% makes the level nonpositive");
    out.push_back(level);
  }
  return AnnualSeries::make(std::move(name), growth_percent.start_year, std::move(out),
                            std::move(unit));
}

}  // namespace tsecon
