// Command-line front end: one subcommand per analysis, plus `report` for the full pipeline.
//
// Subcommands other than ingest/report start from a step of the default manifest and
// override its keys with the flags given, so `chow --break 1998` reruns the annex
// model with a single break year.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "tsecon/error.hpp"
#include "tsecon/pipeline.hpp"

#ifndef TSECON_DEFAULT_MANIFEST
#define TSECON_DEFAULT_MANIFEST "manifests/default.manifest"
#endif

namespace {

using namespace tsecon;

struct Common {
  std::string manifest;
  std::string dataset;
  std::string benef;
  std::string output;
  bool csv = false;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

PipelineManifest base_manifest(const Common& c) {
  std::string path = c.manifest.empty() ? env_or("TSECON_MANIFEST", TSECON_DEFAULT_MANIFEST) : c.manifest;
  if (path == "default") path = TSECON_DEFAULT_MANIFEST;
  auto m = load_manifest(path);
  const std::string dataset = c.dataset.empty() ? env_or("TSECON_DATASET", "") : c.dataset;
  if (!dataset.empty()) m.dataset = std::filesystem::absolute(dataset).string();
  if (!c.benef.empty()) m.extra.push_back(std::filesystem::absolute(c.benef).string());
  return m;
}

void emit(const Common& c, const std::string& content) {
  if (c.output.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(c.output, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + c.output);
  out << content;
}

// The named step with overridden keys, plus every step it depends on.
PipelineManifest subset(const PipelineManifest& m, ManifestSection step) {
  std::set<std::string> keep;
  std::vector<std::string> todo{step.name};
  auto refs_of = [&](const ManifestSection& s) {
    std::vector<std::string> out;
    for (const char* key : {"first", "second", "model"}) {
      if (const auto* v = s.find(key)) out.push_back(*v);
    }
    if (const auto* v = s.find("orders_from")) {
      std::string item;
      for (char ch : *v + ",") {
        if (ch == ',') {
          const auto b = item.find_first_not_of(' ');
          if (b != std::string::npos) out.push_back(item.substr(b, item.find_last_not_of(' ') - b + 1));
          item.clear();
        } else {
          item += ch;
        }
      }
    }
    return out;
  };
  for (const auto& r : refs_of(step)) todo.push_back(r);
  while (!todo.empty()) {
    const auto name = todo.back();
    todo.pop_back();
    if (!keep.insert(name).second || name == step.name) continue;
    const auto* s = m.step(name);
    if (!s) throw ManifestError("unknown step '" + name + "'");
    for (const auto& r : refs_of(*s)) todo.push_back(r);
  }
  PipelineManifest out = m;
  out.steps.clear();
  for (const auto& s : m.steps) {
    if (s.name == step.name) continue;
    if (keep.count(s.name)) out.steps.push_back(s);
  }
  out.steps.push_back(std::move(step));
  return out;
}

void set_key(ManifestSection& s, const std::string& key, const std::string& value) {
  for (auto& e : s.entries) {
    if (e.key == key) {
      e.value = value;
      return;
    }
  }
  s.entries.push_back({key, value, 0});
}

void erase_key(ManifestSection& s, const std::string& key) {
  std::erase_if(s.entries, [&](const ManifestEntry& e) { return e.key == key; });
}

ManifestSection pick_step(const PipelineManifest& m, const std::string& name, const std::string& op) {
  const auto* s = m.step(name);
  if (!s) {
    ManifestSection fresh;
    fresh.kind = "step";
    fresh.name = name;
    fresh.entries.push_back({"op", op, 0});
    return fresh;
  }
  if (s->require("op") != op) {
    throw ManifestError("step '" + name + "' is a '" + s->require("op") + "' step, not '" + op + "'");
  }
  return *s;
}

// Runs a one-step manifest and prints the artifact `artifact` (without extension).
int run_step(const Common& c, const PipelineManifest& m, const std::string& artifact,
             const std::string& extension = "") {
  Dataset ds;
  try {
    ds = prepare_dataset(m);
  } catch (const DataError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitDataset;
  }
  const auto outcome = run_pipeline(m, ds);
  const std::string want = artifact + (extension.empty() ? (c.csv ? ".csv" : ".txt") : extension);
  for (const auto& a : outcome.bundle.artifacts()) {
    if (a.name == want) {
      emit(c, a.content);
      break;
    }
  }
  for (const auto& r : outcome.steps) {
    if (r.status == StepStatus::failed) std::cerr << "step " << r.name << " failed: " << r.message << "\n";
  }
  return outcome.exit_code;
}

// Finds the manifest ADF step and term for a row label such as "Log inflation".
std::optional<std::pair<const ManifestSection*, std::string>> adf_row(const PipelineManifest& m,
                                                                      const std::string& label) {
  for (const auto& s : m.steps) {
    if (s.require("op") != "adf") continue;
    for (const auto& t : parse_term_list(s.require("series"))) {
      if (t.display() == label || t.expression() == label) return std::make_pair(&s, t.expression());
    }
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annual time-series econometrics: unit roots, cointegration, 2SLS, AR, VAR, scenarios"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--manifest", c.manifest, "pipeline manifest (default: bundled default.manifest)");
  app.add_option("--dataset", c.dataset, "dataset directory or CSV file (env TSECON_DATASET)");
  app.add_option("--benef", c.benef, "CSV file with the tax-benefit series (name 'Benef')");
  app.add_option("-o,--output", c.output, "write the table to this file instead of stdout");
  app.add_flag("--csv", c.csv, "emit CSV instead of the text table");

  std::map<std::string, std::string> flags;
  auto opt = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
    sub->add_option(name, flags[key], help);
  };

  auto* ingest = app.add_subcommand("ingest", "validate a dataset and print its checksum");
  std::string ingest_path;
  ingest->add_option("path", ingest_path, "dataset directory or CSV file");

  auto* adf = app.add_subcommand("adf", "augmented Dickey-Fuller test");
  opt(adf, "--series", "series", "row label from the manifest, or a term such as 'ln(GDP)'");
  opt(adf, "--det", "deterministic", "none | constant | trend");
  opt(adf, "--lags", "lags", "lagged differences");
  opt(adf, "--sample", "sample", "window of the underlying series, e.g. 1975-2010");

  auto model_flags = [&](CLI::App* sub) {
    opt(sub, "--step", "step", "manifest step to start from");
    opt(sub, "--dependent", "dependent", "dependent term");
    opt(sub, "--regressors", "regressors", "';'-separated regressor terms");
    opt(sub, "--constant", "constant", "yes | no");
    opt(sub, "--sample", "sample", "estimation window, e.g. 1970-2010");
  };
  auto* fit_ols = app.add_subcommand("fit-ols", "ordinary least squares");
  model_flags(fit_ols);
  auto* fit_tsls = app.add_subcommand("fit-tsls", "two-stage least squares");
  model_flags(fit_tsls);
  opt(fit_tsls, "--endogenous", "endogenous", "';'-separated regressor labels to instrument");
  opt(fit_tsls, "--instruments", "instruments", "';'-separated excluded instruments");
  auto* fit_ar = app.add_subcommand("fit-ar", "Cochrane-Orcutt regression with AR disturbances");
  model_flags(fit_ar);
  opt(fit_ar, "--ar-lags", "ar_lags", "comma-separated disturbance lags");
  auto* coint = app.add_subcommand("coint", "Engle-Granger cointegration test");
  model_flags(coint);
  opt(coint, "--residual-lag", "residual_lag", "lag order of the residual DF test");

  auto* granger = app.add_subcommand("granger", "Granger causality F tests");
  opt(granger, "--step", "step", "manifest step to start from");
  opt(granger, "--pairs", "pairs", "'x ~ y' pairs separated by ';'");
  opt(granger, "--lags", "lags", "lag order");
  opt(granger, "--sample", "sample", "window of the underlying series");

  auto* chow = app.add_subcommand("chow", "Chow structural-break tests");
  opt(chow, "--step", "step", "manifest step to start from");
  opt(chow, "--break", "breaks", "break year(s), comma-separated");

  auto var_flags = [&](CLI::App* sub) {
    opt(sub, "--step", "step", "manifest step to start from");
    opt(sub, "--variables", "variables", "';'-separated terms in Cholesky order");
    opt(sub, "--lags", "lags", "VAR order");
    opt(sub, "--sample", "sample", "data window");
    opt(sub, "--horizon", "horizon", "IRF horizon");
  };
  auto* var = app.add_subcommand("var", "vector autoregression");
  var_flags(var);
  auto* irf = app.add_subcommand("irf", "orthogonalized impulse responses");
  var_flags(irf);
  std::string shock, response;
  irf->add_option("--shock", shock, "shock variable label (with --response: write an SVG plot)");
  irf->add_option("--response", response, "responding variable label");

  auto* simulate = app.add_subcommand("simulate", "capital-growth scenarios");
  opt(simulate, "--step", "step", "manifest step to start from (scenario_unemployment)");
  opt(simulate, "--scenarios", "scenarios", "'name: year=rate, ...' entries separated by ';'");
  opt(simulate, "--window", "window", "simulation window");
  opt(simulate, "--eap", "eap", "economically active population");
  opt(simulate, "--growth", "growth", "log | rate");

  auto* report = app.add_subcommand("report", "run the full pipeline and write the report bundle");
  std::string report_dir;
  report->add_option("--out-dir", report_dir, "bundle directory (default: manifest output key)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitManifest;
  }

  auto given = [&](const std::string& key) {
    const auto it = flags.find(key);
    return it != flags.end() && !it->second.empty();
  };
  auto apply_flags = [&](ManifestSection& s, std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (given(k)) set_key(s, k, flags[k]);
    }
  };

  try {
    if (ingest->parsed()) {
      std::string path = ingest_path.empty() ? c.dataset : ingest_path;
      Dataset ds;
      try {
        if (path.empty()) {
          ds = prepare_dataset(base_manifest(c));
        } else {
          ds = load_dataset(path);
        }
      } catch (const DataError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kExitDataset;
      }
      std::string out;
      for (const auto& name : ds.names()) {
        const auto& s = ds.get(name);
        out += name + "\t" + std::to_string(s.start_year) + "-" + std::to_string(s.end_year()) +
               "\t" + s.unit + "\n";
      }
      out += "provenance notes: " + std::to_string(ds.provenance().size()) + "\n";
      out += "sha256: " + ds.checksum() + "\n";
      emit(c, out);
      return kExitOk;
    }

    auto m = base_manifest(c);
    const auto step_name = [&](const std::string& fallback) {
      return given("step") ? flags["step"] : fallback;
    };

    if (adf->parsed()) {
      auto s = pick_step(m, "adf", "adf");
      s.entries = {{"op", "adf", 0}};
      if (!given("series")) throw ManifestError("adf needs --series");
      if (const auto row = adf_row(m, flags["series"])) {
        for (const char* k : {"deterministic", "lags", "sample"}) {
          if (const auto* v = row->first->find(k)) set_key(s, k, *v);
        }
        set_key(s, "series", row->second);
      } else {
        set_key(s, "series", flags["series"]);
      }
      apply_flags(s, {"deterministic", "lags", "sample"});
      return run_step(c, subset(m, s), s.name);
    }
    if (fit_ols->parsed() || fit_tsls->parsed() || fit_ar->parsed() || coint->parsed()) {
      const std::string op = fit_ols->parsed() ? "ols" : fit_tsls->parsed() ? "tsls" : fit_ar->parsed() ? "ar" : "coint";
      const std::string fallback = op == "ols" ? "ols41" : op == "tsls" ? "model1_unemployment" : op == "ar" ? "ar_full" : "coint";
      auto s = pick_step(m, step_name(fallback), op);
      apply_flags(s, {"dependent", "regressors", "constant", "sample", "endogenous", "instruments",
                      "ar_lags", "residual_lag"});
      return run_step(c, subset(m, s), s.name);
    }
    if (granger->parsed()) {
      auto s = pick_step(m, step_name("granger"), "granger");
      apply_flags(s, {"pairs", "lags", "sample"});
      return run_step(c, subset(m, s), s.name);
    }
    if (chow->parsed()) {
      auto s = pick_step(m, step_name("chow"), "chow");
      apply_flags(s, {"breaks"});
      return run_step(c, subset(m, s), s.name);
    }
    if (var->parsed() || irf->parsed()) {
      auto s = pick_step(m, step_name("var"), "var");
      apply_flags(s, {"variables", "lags", "sample", "horizon"});
      erase_key(s, "reverse");
      if (var->parsed()) return run_step(c, subset(m, s), s.name);
      if (shock.empty() != response.empty()) throw ManifestError("--shock and --response go together");
      if (shock.empty()) return run_step(c, subset(m, s), s.name + "_irf");
      // Plot names are indexed by position in the ordering.
      const auto vars = parse_term_list(s.require("variables"));
      int si = -1, ri = -1;
      for (int i = 0; i < static_cast<int>(vars.size()); ++i) {
        if (vars[static_cast<std::size_t>(i)].display() == shock) si = i;
        if (vars[static_cast<std::size_t>(i)].display() == response) ri = i;
      }
      if (si < 0 || ri < 0) throw SpecError("unknown VAR variable in --shock/--response");
      return run_step(c, subset(m, s), s.name + "_irf_" + std::to_string(si) + "_" + std::to_string(ri), ".svg");
    }
    if (simulate->parsed()) {
      auto s = pick_step(m, step_name("scenario_unemployment"), "scenario");
      apply_flags(s, {"scenarios", "window", "eap", "growth"});
      return run_step(c, subset(m, s), s.name);
    }
    if (report->parsed()) {
      Dataset ds;
      try {
        ds = prepare_dataset(m);
      } catch (const DataError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return kExitDataset;
      }
      const auto outcome = run_pipeline(m, ds);
      const std::filesystem::path dir = report_dir.empty() ? m.output : report_dir;
      outcome.bundle.write(dir);
      for (const auto& r : outcome.steps) {
        if (r.status == StepStatus::failed) std::cerr << "step " << r.name << " failed: " << r.message << "\n";
      }
      std::cout << "bundle written to " << dir.string() << " (" << outcome.bundle.artifacts().size()
                << " artifacts)\n";
      return outcome.exit_code;
    }
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitManifest;
  } catch (const DataError& e) {
    std::cerr << "dataset error: " << e.what() << "\n";
    return kExitDataset;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStep;
  }
  return kExitOk;
}
