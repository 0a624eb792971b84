#include "harness.hpp"

#include "mgl/cohomology.hpp"
#include "mgl/error.hpp"
#include "mgl/parallel.hpp"
#include "schema_validator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mgl::harness {

using nlohmann::json;

std::string version() { return MGL_VERSION; }

namespace {

std::string num(double x) {
  if (std::abs(x) < 1e-12) x = 0;  // no "-0" or roundoff residue in the tables
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Index sets inside CSV cells: "1;2", or "-" for the empty set.
std::string csv_set(const IndexSet& s) {
  if (s.empty()) return "-";
  std::string out;
  for (auto i : s) out += (out.empty() ? "" : ";") + std::to_string(i);
  return out;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : columns_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error(ErrorCode::InvalidArgument, "csv row has the wrong width");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += '\n';
  }
  const std::string& text() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

struct Output {
  std::filesystem::path dir;
  std::vector<std::string> written;

  void write(const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    written.push_back(name);
  }
};

json qsubgroup_json(const QSubgroup& g) { return to_string(g.generator()); }

json run_freq(const RunConfig& c, Output& out) {
  const auto theta = c.build_theta();
  const auto chain = c.build_chain();
  auto groups = parallel_map(c.levels, c.jobs, [&](std::size_t j) { return frequency_group(theta, chain, j + 1); });
  Csv csv({"level", "I", "pfaffian", "z_i_mu", "term"});
  json levels = json::array();
  for (const auto& g : groups) {
    json terms = json::array();
    for (const auto& t : g.contributions) {
      csv.row({std::to_string(g.level), csv_set(t.i_set), to_string(t.pfaffian), to_string(t.z_i_mu.generator()),
               to_string(t.term_generator())});
      terms.push_back({{"I", t.i_set},
                       {"pfaffian", to_string(t.pfaffian)},
                       {"z_i_mu", qsubgroup_json(t.z_i_mu)},
                       {"term", to_string(t.term_generator())}});
    }
    levels.push_back({{"level", g.level},
                      {"index", to_string(chain.index(g.level))},
                      {"total_generator", qsubgroup_json(g.total)},
                      {"contributions", terms}});
  }
  out.write("freq.csv", csv.text());
  return {{"levels", levels}};
}

json run_coh(const RunConfig& c, Output& out, RunOutcome& outcome) {
  const auto chain = c.build_chain();
  const auto subsets = even_subsets(c.p);
  struct LevelResult {
    std::vector<ContainmentReport> reports;
    json groups;
  };
  auto results = parallel_map(c.levels, c.jobs, [&](std::size_t j) {
    LevelResult r;
    for (const auto& s : subsets) r.reports.push_back(verify_cup_containment(chain, j + 1, s));
    const auto complex = koszul_complex(level_module(chain, j + 1));
    r.groups = json::array();
    for (std::size_t k = 0; k <= c.p; ++k) {
      const auto h = cohomology(complex, k);
      json torsion = json::array();
      for (const auto& t : h.torsion()) torsion.push_back(to_string(t));
      r.groups.push_back({{"degree", k}, {"free_rank", h.free_rank()}, {"torsion", torsion}});
    }
    return r;
  });

  Csv csv({"level", "I", "image_generator", "target_generator", "verdict", "image_fills_target"});
  json levels = json::array();
  std::size_t failures = 0;
  for (std::size_t j = 0; j < results.size(); ++j) {
    json rows = json::array();
    for (const auto& r : results[j].reports) {
      const std::string verdict = r.pass ? "PASS" : "FAIL";
      csv.row({std::to_string(r.level), csv_set(r.i_set), to_string(r.image_generator),
               to_string(r.target_generator), verdict, r.image_fills_target ? "yes" : "no"});
      rows.push_back({{"I", r.i_set},
                      {"image_generator", to_string(r.image_generator)},
                      {"target_generator", to_string(r.target_generator)},
                      {"verdict", verdict},
                      {"image_fills_target", r.image_fills_target}});
      if (!r.pass) {
        ++failures;
        outcome.messages.push_back("containment FAIL at level " + std::to_string(r.level) + ", I = " +
                                   to_string(r.i_set) + ": image " + to_string(r.image_generator) +
                                   "Z not inside " + to_string(r.target_generator) + "Z");
      }
    }
    levels.push_back({{"level", j + 1},
                      {"index", to_string(chain.index(j + 1))},
                      {"cohomology", results[j].groups},
                      {"containment", rows}});
  }
  out.write("coh.csv", csv.text());
  if (failures) outcome.exit_code = 1;
  outcome.messages.push_back("containment: " + std::to_string(failures) + " failures");
  return {{"levels", levels}, {"failures", failures}};
}

json run_chern(const RunConfig& c, RunOutcome& outcome) {
  const auto a = c.chern_element();
  const auto report = integrality_check(a);
  const bool scan = has_integral_coefficients(a);
  json witness = nullptr;
  if (report.witness) {
    json twists = json::array();
    for (auto [i, j] : report.witness->twists) twists.push_back({i, j});
    witness = {{"subtorus", report.witness->subtorus},
               {"twists", twists},
               {"value", to_string(report.witness->value)},
               {"isolated", report.witness->isolated}};
  }
  const auto split = suspension_ranks(c.chern->n);
  json spheres = json::array();
  for (const auto& [dim, count] : split.spheres) spheres.push_back({{"dimension", dim}, {"count", to_string(count)}});
  outcome.messages.push_back(std::string("integrality: ") + (report.pass ? "PASS" : "FAIL"));
  return {{"verdict", report.pass ? "PASS" : "FAIL"},
          {"probes", report.probes},
          {"witness", witness},
          {"coefficient_scan_agrees", scan == report.pass},
          {"suspension", {{"spheres", spheres}, {"even_k_rank", to_string(split.even_k_rank())}}}};
}

std::string theta_cell(const RunConfig& c, bool numerator) {
  const Rational t = c.theta.empty() ? Rational(0) : c.theta.front();
  return to_string(numerator ? Integer(t.get_num()) : Integer(t.get_den()));
}

std::string volume_list(const std::vector<std::size_t>& volumes) {
  std::string out;
  for (auto l : volumes) out += (out.empty() ? "" : ";") + std::to_string(l);
  return out;
}

json gaps_json(const std::vector<Gap>& gaps) {
  json out = json::array();
  for (const auto& g : gaps) {
    json entry = {{"E_lo", g.lower}, {"E_hi", g.upper}, {"ids", g.ids}, {"ids_by_volume", g.ids_by_volume},
                  {"verdict", to_string(g.verdict)}};
    entry["label"] = g.label ? json(to_string(*g.label)) : json(nullptr);
    if (g.membership) {
      json terms = json::array();
      for (const auto& t : g.membership->decomposition)
        if (t.multiplier != 0) terms.push_back({{"I", t.i_set}, {"multiplier", to_string(t.multiplier)}});
      entry["level"] = g.membership->level;
      entry["decomposition"] = terms;
    }
    out.push_back(entry);
  }
  return out;
}

void write_gaps(const RunConfig& c, const std::vector<Gap>& gaps, Output& out) {
  Csv csv({"theta_num", "theta_den", "L_list", "E_lo", "E_hi", "ids", "label_num", "label_den", "verdict", "level"});
  std::vector<std::size_t> volumes = c.spectral.volumes;
  std::sort(volumes.begin(), volumes.end());
  for (const auto& g : gaps) {
    csv.row({theta_cell(c, true), theta_cell(c, false), volume_list(volumes), num(g.lower), num(g.upper), num(g.ids),
             g.label ? to_string(Integer(g.label->get_num())) : "", g.label ? to_string(Integer(g.label->get_den())) : "",
             to_string(g.verdict), g.membership ? std::to_string(g.membership->level) : ""});
  }
  out.write("gaps.csv", csv.text());
}

GapSearchOptions search_options(const RunConfig& c) {
  GapSearchOptions o;
  o.volumes = c.spectral.volumes;
  o.min_width = c.spectral.delta;
  o.tolerance = c.spectral.tol;
  o.jobs = c.jobs;
  o.dense_limit = c.spectral.dense_limit;
  return o;
}

json spectral_provenance(const RunConfig& c) {
  return {{"gauge", "landau"}, {"boundary", to_string(c.spectral.boundary)}, {"volumes", c.spectral.volumes},
          {"delta", c.spectral.delta}, {"tol", c.spectral.tol ? json(*c.spectral.tol) : json("default")},
          {"eps", c.spectral.eps}, {"q_max", c.spectral.q_max}, {"j_max", c.spectral.j_max}};
}

json run_spectrum(const RunConfig& c, Output& out) {
  const auto spec = c.hamiltonian();
  auto spectra = parallel_map(c.spectral.volumes.size(), c.jobs, [&](std::size_t v) {
    const auto s = spec.with_volume(c.spectral.volumes[v]);
    return s.sites() <= c.spectral.dense_limit ? eigenvalues(build_hamiltonian(s)) : std::vector<double>{};
  });
  Csv csv({"L", "index", "energy"});
  for (std::size_t v = 0; v < spectra.size(); ++v)
    for (std::size_t i = 0; i < spectra[v].size(); ++i)
      csv.row({std::to_string(c.spectral.volumes[v]), std::to_string(i), num(spectra[v][i])});
  out.write("spectrum.csv", csv.text());
  const auto gaps = detect_gaps(spec, search_options(c));
  write_gaps(c, gaps, out);
  return {{"provenance", spectral_provenance(c)}, {"gaps", gaps_json(gaps)}};
}

json run_verify(const RunConfig& c, Output& out, RunOutcome& outcome) {
  MglRun run;
  run.spec = c.hamiltonian();
  run.search = search_options(c);
  run.labels = {c.spectral.eps, c.spectral.q_max, c.spectral.j_max};
  const auto report = mgl_verify(run);
  write_gaps(c, report.gaps, out);
  for (const auto& g : report.gaps)
    if (g.verdict == GapVerdict::NotFoundUpTo)
      outcome.messages.push_back("gap [" + num(g.lower) + ", " + num(g.upper) + "] label " + to_string(*g.label) +
                                 " not in the frequency group up to level " + std::to_string(c.spectral.j_max));
  if (report.not_found) outcome.exit_code = 1;
  outcome.messages.push_back(std::to_string(report.gaps.size()) + " gaps: " + std::to_string(report.members) +
                             " member, " + std::to_string(report.not_found) + " not found, " +
                             std::to_string(report.unresolved) + " unresolved");
  json prov = spectral_provenance(c);
  prov["tol"] = report.tolerances;
  return {{"provenance", prov},
          {"gaps", gaps_json(report.gaps)},
          {"summary", {{"member", report.members}, {"not_found_up_to", report.not_found}, {"unresolved", report.unresolved}}}};
}

json run_butterfly(const RunConfig& c, Output& out) {
  std::vector<Rational> fluxes;
  for (long q = 1; q <= static_cast<long>(c.butterfly.q_max); ++q)
    for (long a = 0; a <= q; ++a)
      if (std::gcd(a, q) == 1) fluxes.push_back(make_rational(a, q));
  auto bands = parallel_map(fluxes.size(), c.jobs,
                            [&](std::size_t k) { return commensurate_bands(fluxes[k], c.butterfly.volume); });
  Csv csv({"theta_num", "theta_den", "band_lo", "band_hi"});
  std::size_t rows = 0;
  for (std::size_t k = 0; k < fluxes.size(); ++k)
    for (const auto& b : bands[k]) {
      csv.row({to_string(Integer(fluxes[k].get_num())), to_string(Integer(fluxes[k].get_den())), num(b.lower),
               num(b.upper)});
      ++rows;
    }
  out.write("butterfly.csv", csv.text());
  return {{"fractions", fluxes.size()}, {"rows", rows}, {"gauge", "landau"}};
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

RunOutcome run(const RunConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  Output out{out_dir, {}};
  RunOutcome outcome;
  json result;
  if (config.mode == "freq") {
    result = run_freq(config, out);
  } else if (config.mode == "coh") {
    result = run_coh(config, out, outcome);
  } else if (config.mode == "chern") {
    result = run_chern(config, outcome);
  } else if (config.mode == "spectrum") {
    result = run_spectrum(config, out);
  } else if (config.mode == "verify") {
    result = run_verify(config, out, outcome);
  } else if (config.mode == "butterfly") {
    result = run_butterfly(config, out);
  } else {
    throw ConfigError({"/mode: unknown mode '" + config.mode + "'"});
  }
  json report = {{"version", version()},
                 {"mode", config.mode},
                 {"config", to_json(config)},
                 {"exit_code", outcome.exit_code},
                 {"artifacts", out.written},
                 {"result", result}};
  auto violations = validate(report, report_schema());
  if (!violations.empty()) throw std::logic_error("report violates its schema at " + violations.front().path);
  out.write("report.json", report.dump(2) + "\n");
  outcome.artifacts = out.written;
  return outcome;
}

}  // namespace mgl::harness
