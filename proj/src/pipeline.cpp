#include "tsecon/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tsecon/cointegration.hpp"
#include "tsecon/error.hpp"
#include "tsecon/montecarlo.hpp"
#include "tsecon/var.hpp"

namespace tsecon {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Split on `sep` outside parentheses; empty items are dropped.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
    }
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      const auto item = trim(s.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

long long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long long v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw ManifestError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  return static_cast<int>(parse_integer(text, what));
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw ManifestError(std::string(what) + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_flag(std::string_view text, std::string_view what) {
  text = trim(text);
  if (text == "yes" || text == "true" || text == "1") return true;
  if (text == "no" || text == "false" || text == "0") return false;
  throw ManifestError(std::string(what) + ": expected yes/no, got '" + std::string(text) + "'");
}

std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<int> out;
  for (const auto& item : split_top(text, ',')) out.push_back(parse_int(item, what));
  return out;
}

std::string where(const ManifestSection& s) {
  return "[" + s.kind + (s.name.empty() ? "" : " " + s.name) + "] (line " + std::to_string(s.line) + ")";
}

bool valid_step_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

const std::set<std::string, std::less<>> kModelKeys{"dependent", "regressors", "constant", "sample",
                                                    "dummies"};

std::set<std::string, std::less<>> allowed_keys(std::string_view op) {
  std::set<std::string, std::less<>> k{"op", "note"};
  auto add = [&](std::initializer_list<const char*> keys) {
    for (const char* s : keys) k.insert(s);
  };
  auto add_model = [&] { k.insert(kModelKeys.begin(), kModelKeys.end()); };
  if (op == "adf") add({"series", "deterministic", "lags", "sample"});
  else if (op == "ols") { add_model(); add({"vif"}); }
  else if (op == "tsls") { add_model(); add({"endogenous", "instruments"}); }
  else if (op == "ar") { add_model(); add({"ar_lags", "max_iterations", "tolerance", "vif"}); }
  else if (op == "compare") add({"first", "second"});
  else if (op == "coint") { add_model(); add({"residual_lag", "orders_from"}); }
  else if (op == "granger") add({"pairs", "lags", "sample"});
  else if (op == "chow") { add_model(); add({"model", "breaks"}); }
  else if (op == "var") add({"variables", "lags", "sample", "horizon", "reverse"});
  else if (op == "scenario") {
    add({"model", "kind", "dependent", "capital", "window", "scenarios", "growth", "eap",
         "terminal_usd"});
  } else if (op == "synthetic") add({"replications", "size", "rho"});
  else throw ManifestError("unknown op '" + std::string(op) + "'");
  return k;
}

// Keys whose values must name other, earlier steps.
std::vector<std::string> step_references(const ManifestSection& s) {
  std::vector<std::string> refs;
  for (const char* key : {"first", "second", "model"}) {
    if (const auto* v = s.find(key)) refs.emplace_back(trim(*v));
  }
  if (const auto* v = s.find("orders_from")) {
    for (auto& r : split_top(*v, ',')) refs.push_back(std::move(r));
  }
  return refs;
}

std::vector<Term> step_terms(const ManifestSection& s) {
  std::vector<Term> terms;
  for (const char* key : {"dependent", "capital"}) {
    if (const auto* v = s.find(key)) terms.push_back(parse_term(*v));
  }
  for (const char* key : {"regressors", "instruments", "series", "variables"}) {
    if (const auto* v = s.find(key)) {
      for (auto& t : parse_term_list(*v)) terms.push_back(std::move(t));
    }
  }
  if (const auto* v = s.find("pairs")) {
    for (const auto& pair : split_top(*v, ';')) {
      for (const auto& side : split_top(pair, '~')) terms.push_back(parse_term(side));
    }
  }
  return terms;
}

std::vector<Dummy> parse_dummies(std::string_view text) {
  std::vector<Dummy> out;
  for (const auto& item : split_top(text, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ManifestError("dummy '" + item + "' needs 'name: years'");
    Dummy d{std::string(trim(std::string_view(item).substr(0, colon))),
            parse_int_list(std::string_view(item).substr(colon + 1), "dummy years")};
    out.push_back(std::move(d));
  }
  return out;
}

Term unlabelled(Term t) {
  t.label.clear();
  return t;
}

}  // namespace

const std::string* ManifestSection::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e.value;
  }
  return nullptr;
}

const std::string& ManifestSection::require(std::string_view key) const {
  if (const auto* v = find(key)) return *v;
  throw ManifestError(where(*this) + ": missing key '" + std::string(key) + "'");
}

std::string ManifestSection::get(std::string_view key, std::string_view fallback) const {
  if (const auto* v = find(key)) return *v;
  return std::string(fallback);
}

const ManifestSection* PipelineManifest::step(std::string_view name) const {
  for (const auto& s : steps) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::filesystem::path PipelineManifest::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_relative() && !base_directory.empty()) p = base_directory / p;
  return p.lexically_normal();
}

std::string PipelineManifest::canonical() const {
  std::string out = "[pipeline]\n";
  if (!dataset.empty()) out += "dataset = " + std::filesystem::absolute(resolve(dataset)).lexically_normal().string() + "\n";
  if (!extra.empty()) {
    out += "extra = ";
    for (std::size_t i = 0; i < extra.size(); ++i) {
      if (i) out += "; ";
      out += std::filesystem::absolute(resolve(extra[i])).lexically_normal().string();
    }
    out += "\n";
  }
  out += "output = " + output + "\n";
  out += "seed = " + std::to_string(seed) + "\n";
  if (!optional.empty()) {
    out += "optional = ";
    for (std::size_t i = 0; i < optional.size(); ++i) out += (i ? ", " : "") + optional[i];
    out += "\n";
  }
  auto section = [&](const ManifestSection& s) {
    out += "\n[" + s.kind + " " + s.name + "]\n";
    for (const auto& e : s.entries) out += e.key + " = " + e.value + "\n";
  };
  for (const auto& d : derives) section(d);
  for (const auto& s : steps) section(s);
  return out;
}

SampleWindow parse_window(std::string_view text) {
  text = trim(text);
  const auto dash = text.find('-', 1);
  if (dash == std::string_view::npos) {
    throw ManifestError("sample '" + std::string(text) + "' must look like 1970-2010");
  }
  SampleWindow w{parse_int(text.substr(0, dash), "sample start"),
                 parse_int(text.substr(dash + 1), "sample end")};
  if (w.last < w.first) throw ManifestError("sample '" + std::string(text) + "' ends before it starts");
  return w;
}

PipelineManifest parse_manifest(std::string_view text, std::filesystem::path base_directory) {
  PipelineManifest m;
  m.base_directory = std::move(base_directory);
  std::vector<ManifestSection> sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ManifestError("line " + std::to_string(line_no) + ": unterminated section header");
      const auto inner = trim(line.substr(1, line.size() - 2));
      const auto space = inner.find(' ');
      ManifestSection s;
      s.kind = std::string(inner.substr(0, space));
      s.name = space == std::string_view::npos ? "" : std::string(trim(inner.substr(space + 1)));
      s.line = line_no;
      if (s.kind == "pipeline") {
        if (!s.name.empty()) throw ManifestError("line " + std::to_string(line_no) + ": [pipeline] takes no name");
      } else if (s.kind == "step" || s.kind == "derive") {
        if (s.name.empty()) throw ManifestError("line " + std::to_string(line_no) + ": section needs a name");
      } else {
        throw ManifestError("line " + std::to_string(line_no) + ": unknown section '" + s.kind + "'");
      }
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ManifestError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (sections.empty()) {
      throw ManifestError("line " + std::to_string(line_no) + ": entry outside any section");
    }
    ManifestEntry e{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
    if (e.key.empty()) throw ManifestError("line " + std::to_string(line_no) + ": empty key");
    if (sections.back().find(e.key)) {
      throw ManifestError("line " + std::to_string(line_no) + ": duplicate key '" + e.key + "'");
    }
    sections.back().entries.push_back(std::move(e));
  }

  bool seen_pipeline = false;
  std::set<std::string, std::less<>> step_names;
  for (auto& s : sections) {
    if (s.kind == "pipeline") {
      if (seen_pipeline) throw ManifestError(where(s) + ": duplicate [pipeline] section");
      seen_pipeline = true;
      for (const auto& e : s.entries) {
        if (e.key == "dataset") m.dataset = e.value;
        else if (e.key == "extra") m.extra = split_top(e.value, ';');
        else if (e.key == "output") m.output = e.value;
        else if (e.key == "seed") m.seed = static_cast<std::uint64_t>(parse_integer(e.value, "seed"));
        else if (e.key == "optional") m.optional = split_top(e.value, ',');
        else throw ManifestError(where(s) + ": unknown key '" + e.key + "'");
      }
    } else if (s.kind == "derive") {
      m.derives.push_back(std::move(s));
    } else {
      if (!valid_step_name(s.name)) {
        throw ManifestError(where(s) + ": step names may use letters, digits, '_' and '-' only");
      }
      if (!step_names.insert(s.name).second) throw ManifestError(where(s) + ": duplicate step name");
      const auto keys = allowed_keys(s.require("op"));
      for (const auto& e : s.entries) {
        if (!keys.count(e.key)) {
          throw ManifestError(where(s) + ": key '" + e.key + "' is not valid for op '" + s.require("op") + "'");
        }
      }
      for (const auto& ref : step_references(s)) {
        if (!step_names.count(ref) || ref == s.name) {
          throw ManifestError(where(s) + ": refers to step '" + ref + "' which is not declared before it");
        }
      }
      try {
        (void)step_terms(s);
      } catch (const SpecError& e) {
        throw ManifestError(where(s) + ": " + e.what());
      }
      m.steps.push_back(std::move(s));
    }
  }
  return m;
}

PipelineManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot read manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

Dataset prepare_dataset(const PipelineManifest& manifest) {
  Dataset ds;
  if (!manifest.dataset.empty()) ds = load_dataset(manifest.resolve(manifest.dataset));
  for (const auto& file : manifest.extra) {
    const auto extra = load_dataset(manifest.resolve(file));
    for (const auto& name : extra.names()) ds = ds.with_series(extra.get(name));
  }
  for (const auto& d : manifest.derives) {
    const auto kind = d.require("kind");
    try {
      if (kind == "cumulate_growth") {
        ds = ds.with_series(cumulate_growth(ds.get(d.require("source")), ds.get(d.require("anchor")),
                                            parse_number(d.require("anchor_ratio"), "anchor_ratio"),
                                            d.name, d.get("unit", "")));
      } else if (kind == "real_interest_rate") {
        auto r = real_interest_rate(ds.get(d.require("nominal")), ds.get(d.require("inflation")));
        r.name = d.name;
        ds = ds.with_series(std::move(r));
      } else {
        throw ManifestError(where(d) + ": unknown derive kind '" + kind + "'");
      }
    } catch (const SpecError& e) {
      throw ManifestError(where(d) + ": " + e.what());
    }
  }
  return ds;
}

ModelSpec model_spec_from(const ManifestSection& step, bool default_constant) {
  ModelSpec spec;
  spec.dependent = parse_term(step.require("dependent"));
  spec.regressors = parse_term_list(step.get("regressors", ""));
  spec.include_constant = default_constant;
  if (const auto* v = step.find("constant")) spec.include_constant = parse_flag(*v, "constant");
  if (const auto* v = step.find("sample")) spec.sample = parse_window(*v);
  if (const auto* v = step.find("dummies")) spec.dummies = parse_dummies(*v);
  return spec;
}

TslsSpec tsls_spec_from(const ManifestSection& step) {
  TslsSpec spec;
  spec.model = model_spec_from(step);
  spec.endogenous = split_top(step.get("endogenous", ""), ';');
  spec.instruments = parse_term_list(step.get("instruments", ""));
  return spec;
}

ArSpec ar_spec_from(const ManifestSection& step) {
  ArSpec spec;
  spec.model = model_spec_from(step);
  spec.ar_lags = parse_int_list(step.get("ar_lags", ""), "ar_lags");
  if (const auto* v = step.find("max_iterations")) spec.max_iterations = parse_int(*v, "max_iterations");
  if (const auto* v = step.find("tolerance")) spec.convergence_rel_tol = parse_number(*v, "tolerance");
  return spec;
}

CapitalScenario parse_scenario(std::string_view text, bool log_growth) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ManifestError("scenario '" + std::string(text) + "' needs 'name: year=rate, ...'");
  }
  CapitalScenario s;
  s.name = std::string(trim(text.substr(0, colon)));
  s.log_growth = log_growth;
  for (const auto& item : split_top(text.substr(colon + 1), ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ManifestError("scenario override '" + item + "' needs year=rate");
    const int year = parse_int(std::string_view(item).substr(0, eq), "override year");
    if (!s.overrides.emplace(year, parse_number(std::string_view(item).substr(eq + 1), "override rate")).second) {
      throw ManifestError("scenario '" + s.name + "' repeats year " + std::to_string(year));
    }
  }
  return s;
}

namespace {

struct StepState {
  StepStatus status = StepStatus::ok;
  std::optional<ModelSpec> model;
  std::optional<FitResult> fit;
  std::vector<std::pair<Term, AdfResult>> adf;
};

class Runner {
 public:
  Runner(const PipelineManifest& m, const Dataset& ds)
      : manifest_(m), ds_(ds), outcome_{ReportBundle(m.canonical(), ds.checksum()), {}, kExitOk} {}

  PipelineOutcome run() {
    for (const auto& step : manifest_.steps) check_series(step);
    for (const auto& step : manifest_.steps) execute(step);
    std::string status;
    for (const auto& r : outcome_.steps) {
      status += r.name + "\t" + r.op + "\t" +
                (r.status == StepStatus::ok ? "ok" : r.status == StepStatus::skipped ? "skipped" : "failed");
      if (!r.message.empty()) status += "\t" + r.message;
      status += "\n";
    }
    outcome_.bundle.add_text("steps", status);
    return std::move(outcome_);
  }

 private:
  bool is_optional(const std::string& name) const {
    return std::find(manifest_.optional.begin(), manifest_.optional.end(), name) !=
           manifest_.optional.end();
  }

  void check_series(const ManifestSection& step) {
    for (const auto& t : step_terms(step)) {
      if (!ds_.contains(t.base) && !is_optional(t.base)) {
        throw ManifestError(where(step) + ": series '" + t.base +
                            "' is neither in the dataset nor declared optional");
      }
    }
  }

  std::string missing_optional(const ManifestSection& step) const {
    for (const auto& t : step_terms(step)) {
      if (!ds_.contains(t.base)) return t.base;
    }
    return {};
  }

  void execute(const ManifestSection& step) {
    const std::string op = step.require("op");
    StepRecord rec{step.name, op, StepStatus::ok, {}};
    StepState& state = states_[step.name];

    for (const auto& ref : step_references(step)) {
      const auto& dep = states_.at(ref);
      if (dep.status != StepStatus::ok) {
        const bool skipped = dep.status == StepStatus::skipped;
        finish(step, rec, state, skipped ? StepStatus::skipped : StepStatus::failed,
               skipped ? "data-unavailable (depends on skipped step " + ref + ")"
                       : "depends on failed step " + ref);
        return;
      }
    }
    if (const auto missing = missing_optional(step); !missing.empty()) {
      finish(step, rec, state, StepStatus::skipped, "data-unavailable (" + missing + ")");
      return;
    }
    try {
      dispatch(op, step, state);
    } catch (const std::exception& e) {
      finish(step, rec, state, StepStatus::failed, e.what());
      return;
    }
    outcome_.steps.push_back(std::move(rec));
  }

  void finish(const ManifestSection& step, StepRecord& rec, StepState& state, StepStatus status,
              const std::string& message) {
    state.status = status;
    rec.status = status;
    rec.message = message;
    if (status == StepStatus::skipped) {
      outcome_.bundle.add_skipped(step.name, message);
    } else {
      outcome_.bundle.add_text(step.name, "ERROR in step " + step.name + ": " + message + "\n");
      outcome_.exit_code = kExitStep;
    }
    outcome_.steps.push_back(std::move(rec));
  }

  void add_table(const ManifestSection& step, const std::string& name, RenderedTable table) {
    if (const auto* note = step.find("note")) table.text += "\nNote: " + *note + "\n";
    outcome_.bundle.add_table(name, table);
  }

  void residual_plot(const std::string& step, const FitResult& fit) {
    const AnnualSeries s[] = {fit.residuals};
    outcome_.bundle.add_plot(step + "_residuals",
                             render_series_plot("Residuals, " + fit.dependent + " (" + step + ")", s));
  }

  void dispatch(const std::string& op, const ManifestSection& step, StepState& state) {
    if (op == "adf") run_adf(step, state);
    else if (op == "ols") run_ols(step, state);
    else if (op == "tsls") run_tsls(step, state);
    else if (op == "ar") run_ar(step, state);
    else if (op == "compare") run_compare(step);
    else if (op == "coint") run_coint(step);
    else if (op == "granger") run_granger(step);
    else if (op == "chow") run_chow(step);
    else if (op == "var") run_var(step);
    else if (op == "scenario") run_scenario(step);
    else if (op == "synthetic") run_synthetic(step);
  }

  void run_adf(const ManifestSection& step, StepState& state) {
    AdfSpec spec{parse_deterministic(step.get("deterministic", "constant")),
                 parse_int(step.get("lags", "1"), "lags")};
    std::optional<SampleWindow> window;
    if (const auto* v = step.find("sample")) window = parse_window(*v);
    std::vector<AdfResult> results;
    for (const auto& t : parse_term_list(step.require("series"))) {
      auto s = window ? apply_term(ds_, t, window->first + t.shift(), window->last) : apply_term(ds_, t);
      s.name = t.display();
      results.push_back(adf_test(s, spec));
      state.adf.emplace_back(unlabelled(t), results.back());
    }
    add_table(step, step.name, render_table(results));
  }

  void run_ols(const ManifestSection& step, StepState& state) {
    const auto spec = model_spec_from(step);
    auto fit = ols_fit(ds_, spec);
    add_table(step, step.name, render_table(fit));
    if (parse_flag(step.get("vif", "no"), "vif")) {
      const auto v = vif(ds_, spec);
      add_table(step, step.name + "_vif", render_table(v));
    }
    residual_plot(step.name, fit);
    state.model = spec;
    state.fit = std::move(fit);
  }

  void run_tsls(const ManifestSection& step, StepState& state) {
    const auto spec = tsls_spec_from(step);
    auto r = tsls_fit(ds_, spec);
    add_table(step, step.name, render_table(r));
    residual_plot(step.name, r.fit);
    state.model = spec.model;
    state.fit = std::move(r.fit);
  }

  void run_ar(const ManifestSection& step, StepState& state) {
    const auto spec = ar_spec_from(step);
    auto r = cochrane_orcutt_fit(ds_, spec);
    add_table(step, step.name, render_table(r));
    if (parse_flag(step.get("vif", "no"), "vif")) {
      const auto v = vif(ds_, spec.model);
      add_table(step, step.name + "_vif", render_table(v));
    }
    residual_plot(step.name, r.structural);
    state.model = spec.model;
    state.fit = std::move(r.structural);
  }

  const FitResult& fit_of(const std::string& name) const {
    const auto& s = states_.at(name);
    if (!s.fit) throw SpecError("step '" + name + "' did not produce a regression");
    return *s.fit;
  }

  void run_compare(const ManifestSection& step) {
    add_table(step, step.name,
              render_table(compare_models(fit_of(step.require("first")), fit_of(step.require("second")))));
  }

  void run_coint(const ManifestSection& step) {
    const auto spec = model_spec_from(step, false);
    IntegrationOrders orders;
    std::vector<Term> terms{spec.dependent};
    terms.insert(terms.end(), spec.regressors.begin(), spec.regressors.end());
    for (const auto& t : terms) orders[t.display()] = integration_order(step, t);
    const auto r = engle_granger(ds_, spec, parse_int(step.get("residual_lag", "1"), "residual_lag"), orders);
    add_table(step, step.name, render_table(r));
    residual_plot(step.name, r.long_run);
  }

  // I(0) if the level test rejects, I(1) if only the difference test rejects, else I(2).
  int integration_order(const ManifestSection& step, const Term& term) const {
    if (term.lag != 0 || term.transform == Transform::diff || term.transform == Transform::diff_ln) {
      throw SpecError("cointegration terms must be levels or logs, got '" + term.display() + "'");
    }
    const Term level_term = unlabelled(term);
    Term diff_term = level_term;
    diff_term.transform = term.transform == Transform::ln ? Transform::diff_ln : Transform::diff;
    const AdfResult* lv = nullptr;
    const AdfResult* df = nullptr;
    const auto* from = step.find("orders_from");
    if (!from) throw SpecError("coint step needs orders_from naming the ADF steps");
    for (const auto& ref : split_top(*from, ',')) {
      for (const auto& [t, r] : states_.at(ref).adf) {
        if (t == level_term) lv = &r;
        if (t == diff_term) df = &r;
      }
    }
    if (!lv || !df) {
      throw SpecError("no ADF result for '" + level_term.expression() + "' and its difference");
    }
    if (lv->reject_5pct) return 0;
    return df->reject_5pct ? 1 : 2;
  }

  void run_granger(const ManifestSection& step) {
    const int lags = parse_int(step.get("lags", "4"), "lags");
    std::optional<SampleWindow> window;
    if (const auto* v = step.find("sample")) window = parse_window(*v);
    std::vector<GrangerPair> rows;
    for (const auto& pair : split_top(step.require("pairs"), ';')) {
      const auto sides = split_top(pair, '~');
      if (sides.size() != 2) throw SpecError("Granger pair '" + pair + "' needs 'x ~ y'");
      const auto r = granger_causality(ds_, parse_term(sides[0]), parse_term(sides[1]), lags, window);
      rows.insert(rows.end(), r.pairs.begin(), r.pairs.end());
    }
    add_table(step, step.name, render_table(rows));
  }

  void run_chow(const ManifestSection& step) {
    ModelSpec spec;
    if (const auto* ref = step.find("model")) {
      const auto& s = states_.at(*ref);
      if (!s.model) throw SpecError("step '" + *ref + "' has no regression model");
      spec = *s.model;
    } else {
      spec = model_spec_from(step);
    }
    const auto design = build_design(ds_, spec);
    std::vector<ChowResult> tests;
    for (int b : parse_int_list(step.require("breaks"), "breaks")) tests.push_back(chow_test(design, b));
    add_table(step, step.name, render_table(tests, ols_fit(design)));
  }

  void var_outputs(const ManifestSection& step, const std::string& prefix,
                   const std::vector<Term>& vars, int p, std::optional<SampleWindow> window,
                   int horizon) {
    const auto model = var_fit(ds_, vars, p, window);
    const auto irf = impulse_response(model, horizon);
    const auto fevd = variance_decomposition(model, horizon);
    add_table(step, prefix, render_table(model));
    add_table(step, prefix + "_irf", render_table(irf));
    add_table(step, prefix + "_fevd", render_table(fevd));
    for (std::size_t s = 0; s < irf.ordering.size(); ++s) {
      for (std::size_t j = 0; j < irf.ordering.size(); ++j) {
        outcome_.bundle.add_plot(prefix + "_irf_" + std::to_string(s) + "_" + std::to_string(j),
                                 render_irf_plot(irf, irf.ordering[s], irf.ordering[j]));
      }
    }
  }

  void run_var(const ManifestSection& step) {
    const auto vars = parse_term_list(step.require("variables"));
    const int p = parse_int(step.get("lags", "1"), "lags");
    const int horizon = parse_int(step.get("horizon", "10"), "horizon");
    std::optional<SampleWindow> window;
    if (const auto* v = step.find("sample")) window = parse_window(*v);
    var_outputs(step, step.name, vars, p, window, horizon);
    if (parse_flag(step.get("reverse", "no"), "reverse")) {
      var_outputs(step, step.name + "_reversed", reversed(vars), p, window, horizon);
    }
  }

  void run_scenario(const ManifestSection& step) {
    const auto& fit = fit_of(step.require("model"));
    const std::string kind = step.require("kind");
    const DynamicEquation eq{parse_term(step.require("dependent")), parse_term(step.require("capital"))};
    const auto window = parse_window(step.require("window"));
    const std::string growth = step.get("growth", "log");
    if (growth != "log" && growth != "rate") throw SpecError("growth must be 'log' or 'rate'");
    std::vector<ScenarioResult> results;
    for (const auto& text : split_top(step.require("scenarios"), ';')) {
      const auto sc = parse_scenario(text, growth == "log");
      if (kind == "unemployment") {
        results.push_back(simulate_unemployment(
            ds_, fit, eq, sc, window, parse_number(step.get("eap", "1665000"), "eap")));
      } else if (kind == "exports") {
        results.push_back(simulate_exports(
            ds_, fit, eq, sc, window, parse_number(step.get("terminal_usd", "6762000000"), "terminal_usd")));
      } else {
        throw SpecError("scenario kind must be 'unemployment' or 'exports'");
      }
    }
    add_table(step, step.name, render_table(results));
    for (std::size_t i = 0; i < results.size(); ++i) {
      const AnnualSeries paths[] = {results[i].baseline_path, results[i].counterfactual_path};
      outcome_.bundle.add_plot(step.name + "_" + std::to_string(i + 1),
                               render_series_plot(results[i].name, paths));
    }
  }

  void run_synthetic(const ManifestSection& step) {
    const int reps = parse_int(step.get("replications", "100"), "replications");
    const int n = parse_int(step.get("size", "200"), "size");
    const double rho = parse_number(step.get("rho", "0.5"), "rho");
    const auto co = cochrane_orcutt_recovery(manifest_.seed, reps, 40, rho);
    const auto eg = engle_granger_rates(manifest_.seed + 1, reps, n);
    std::ostringstream out;
    out << "Seeded property checks (seed " << manifest_.seed << ")\n\n"
        << "Cochrane-Orcutt, AR(1) disturbance rho = " << format_sig(rho) << ", n = 40\n"
        << "  agreement with grid-search oracle (|diff| <= " << format_sig(co.tolerance)
        << "): " << co.agree_with_oracle << " / " << co.replications << "\n"
        << "  mean rho (iterative) = " << format_sig(co.mean_rho_co)
        << ", mean rho (grid) = " << format_sig(co.mean_rho_grid)
        << ", Monte-Carlo s.d. = " << format_sig(co.sd_rho_grid) << "\n\n"
        << "Engle-Granger, n = " << n << "\n"
        << "  cointegrated pairs detected: " << eg.cointegrated_pairs_detected << " / "
        << eg.replications << "\n"
        << "  independent walks classified as not cointegrated: "
        << eg.independent_walks_rejected << " / " << eg.replications << "\n";
    outcome_.bundle.add_text(step.name, out.str());
  }

  const PipelineManifest& manifest_;
  const Dataset& ds_;
  PipelineOutcome outcome_;
  std::map<std::string, StepState, std::less<>> states_;
};

}  // namespace

PipelineOutcome run_pipeline(const PipelineManifest& manifest, const Dataset& dataset) {
  return Runner(manifest, dataset).run();
}

}  // namespace tsecon
