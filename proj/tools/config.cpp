#include "config.hpp"

#include "mgl/error.hpp"
#include "schema_validator.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace mgl::harness {

using nlohmann::json;

const json& config_schema() {
  static const json schema = json::parse(kConfigSchema);
  return schema;
}

const json& report_schema() {
  static const json schema = json::parse(kReportSchema);
  return schema;
}

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "\n") + l;
  return out;
}

[[noreturn]] void reject(const std::string& where, const std::string& what) {
  throw ConfigError({where + ": " + what});
}

std::vector<Rational> rationals(const json& array) {
  std::vector<Rational> out;
  for (const auto& s : array) out.push_back(parse_rational(s.get<std::string>()));
  return out;
}

json rationals_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

// Distinct fractions with denominators <= q differ by at least 1/q^2.
double uniqueness_radius(long q_max) { return 0.5 / (static_cast<double>(q_max) * static_cast<double>(q_max)); }

bool needs_lattice(const std::string& mode) { return mode != "chern" && mode != "butterfly"; }
bool needs_spectrum(const std::string& mode) { return mode == "spectrum" || mode == "verify"; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream where;
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    where << "line " << line << ", column " << column;
    throw ConfigError({where.str() + ": " + e.what()});
  }
}

SubgroupChain RunConfig::build_chain() const {
  if (chain.kind == "trivial") return SubgroupChain::trivial(p);
  if (chain.kind == "diagonal") return SubgroupChain::diagonal(chain.degrees, chain.depth);
  if (chain.kind == "random") {
    std::mt19937_64 rng(seed);
    return random_chain(p, chain.depth, chain.max_index, rng);
  }
  std::vector<IntMatrix> levels;
  for (const auto& rows : chain.levels) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    levels.push_back(m);
  }
  return SubgroupChain(p, levels);
}

MagneticMatrix RunConfig::build_theta() const { return MagneticMatrix::from_upper(p, theta); }

HamiltonianSpec RunConfig::hamiltonian() const {
  HamiltonianSpec spec;
  spec.theta = build_theta();
  spec.chain = build_chain();
  spec.potential_level = potential.level;
  spec.potential_values = potential.values;
  spec.coupling = potential.coupling;
  spec.base_point = potential.base_point;
  spec.boundary = spectral.boundary;
  return spec;
}

ExteriorElement RunConfig::chern_element() const {
  ExteriorElement a(chern->n);
  for (const auto& t : chern->terms) a = a + ExteriorElement::monomial(chern->n, t.indices, t.coeff);
  return a;
}

RunConfig resolve_config(const json& raw, const std::string& mode) {
  {
    auto violations = validate(raw, config_schema());
    if (!violations.empty()) {
      std::vector<std::string> lines;
      for (const auto& v : violations) lines.push_back(v.path + ": " + v.message);
      throw ConfigError(lines);
    }
  }
  RunConfig c;
  c.mode = raw.value("mode", mode);
  if (!mode.empty() && c.mode != mode) reject("/mode", "config says '" + c.mode + "' but subcommand is '" + mode + "'");
  if (c.mode.empty()) reject("/mode", "no mode given");

  c.seed = raw.value("seed", std::uint64_t{0});
  c.jobs = raw.value("jobs", std::size_t{1});
  c.p = raw.value("p", std::size_t{2});
  const std::size_t upper = c.p * (c.p - 1) / 2;
  if (raw.contains("theta")) {
    c.theta = rationals(raw["theta"]);
    if (c.theta.size() != upper)
      reject("/theta", "p = " + std::to_string(c.p) + " needs " + std::to_string(upper) + " entries");
  } else {
    c.theta.assign(upper, Rational(0));
  }

  if (raw.contains("chain")) {
    const json& ch = raw["chain"];
    c.chain.kind = ch["kind"];
    c.chain.depth = ch.value("depth", std::size_t{c.chain.kind == "random" ? 2u : 1u});
    c.chain.max_index = ch.value("max_index", 64L);
    if (c.chain.kind == "diagonal") {
      if (!ch.contains("degrees")) reject("/chain/degrees", "required for a diagonal chain");
      c.chain.degrees = ch["degrees"].get<std::vector<long>>();
      if (c.chain.degrees.size() != c.p) reject("/chain/degrees", "needs p entries");
    }
    if (c.chain.kind == "explicit") {
      if (!ch.contains("levels")) reject("/chain/levels", "required for an explicit chain");
      c.chain.levels = ch["levels"].get<std::vector<std::vector<std::vector<long>>>>();
      c.chain.depth = c.chain.levels.size();
      for (std::size_t j = 0; j < c.chain.levels.size(); ++j) {
        const auto& rows = c.chain.levels[j];
        bool square = rows.size() == c.p;
        for (const auto& r : rows) square = square && r.size() == c.p;
        if (!square) reject("/chain/levels/" + std::to_string(j), "must be a p x p matrix");
      }
    }
    if (c.chain.kind == "trivial") c.chain.depth = 1;
  }

  SubgroupChain chain = SubgroupChain::trivial(1);
  try {
    chain = c.build_chain();
  } catch (const Error& e) {
    reject("/chain", e.what());
  }
  c.levels = raw.value("levels", chain.depth());
  if (c.levels > chain.depth()) reject("/levels", "exceeds the chain depth " + std::to_string(chain.depth()));

  const json pot = raw.value("potential", json::object());
  c.potential.level = pot.value("level", std::size_t{1});
  if (c.potential.level > chain.depth()) reject("/potential/level", "exceeds the chain depth");
  const auto cosets = chain.index(c.potential.level).get_ui();
  if (pot.contains("values")) {
    c.potential.values = rationals(pot["values"]);
    if (c.potential.values.size() != cosets)
      reject("/potential/values", "needs one value per coset (" + std::to_string(cosets) + ")");
  } else {
    c.potential.values.assign(cosets, Rational(0));
  }
  c.potential.coupling = parse_rational(pot.value("coupling", std::string("0")));
  c.potential.base_point = pot.value("base_point", std::vector<std::int64_t>(c.p, 0));
  if (c.potential.base_point.size() != c.p) reject("/potential/base_point", "needs p entries");

  const json sp = raw.value("spectral", json::object());
  c.spectral.volumes = sp.value("volumes", std::vector<std::size_t>{});
  if (needs_spectrum(c.mode) && c.spectral.volumes.size() < 2)
    reject("/spectral/volumes", "mode " + c.mode + " needs at least two volumes");
  c.spectral.delta = sp.value("delta", 0.05);
  if (sp.contains("tol") && !sp["tol"].is_null()) c.spectral.tol = sp["tol"].get<double>();
  c.spectral.q_max = sp.value("q_max", 12L);
  c.spectral.eps = sp.value("eps", uniqueness_radius(c.spectral.q_max));
  c.spectral.j_max = sp.value("j_max", chain.depth());
  if (c.spectral.j_max > chain.depth()) reject("/spectral/j_max", "exceeds the chain depth");
  c.spectral.boundary = parse_boundary(sp.value("boundary", std::string("periodic")));
  c.spectral.dense_limit = sp.value("dense_limit", std::size_t{4096});

  if (needs_spectrum(c.mode)) {
    if (c.p > 3) reject("/p", "spectral runs support p <= 3");
    for (auto l : c.spectral.volumes) {
      std::size_t sites = 1;
      for (std::size_t k = 0; k < c.p; ++k) sites *= l;
      if (sites > 16384) reject("/spectral/volumes", "L^p = " + std::to_string(sites) + " exceeds 16384 sites");
      try {
        c.hamiltonian().with_volume(l).validate();
      } catch (const Error& e) {
        reject("/spectral/volumes", e.what());
      }
    }
  }

  if (raw.contains("chern")) {
    ChernConfig ch;
    ch.n = raw["chern"]["n"];
    for (std::size_t t = 0; t < raw["chern"]["terms"].size(); ++t) {
      const json& term = raw["chern"]["terms"][t];
      ChernTerm ct{term["indices"].get<IndexSet>(), parse_rational(term["coeff"].get<std::string>())};
      for (auto i : ct.indices)
        if (i > ch.n) reject("/chern/terms/" + std::to_string(t), "index " + std::to_string(i) + " exceeds n");
      ch.terms.push_back(ct);
    }
    c.chern = ch;
  } else if (c.mode == "chern") {
    reject("/chern", "mode chern needs an element");
  }

  const json bf = raw.value("butterfly", json::object());
  c.butterfly.q_max = bf.value("q_max", std::size_t{8});
  c.butterfly.volume = bf.value("volume", std::size_t{24});

  if (needs_lattice(c.mode) && c.p < 1) reject("/p", "must be positive");
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["mode"] = c.mode;
  j["p"] = c.p;
  j["theta"] = rationals_json(c.theta);
  json chain{{"kind", c.chain.kind}, {"depth", c.chain.depth}};
  if (c.chain.kind == "diagonal") chain["degrees"] = c.chain.degrees;
  if (c.chain.kind == "random") chain["max_index"] = c.chain.max_index;
  if (c.chain.kind == "explicit") chain["levels"] = c.chain.levels;
  j["chain"] = chain;
  j["levels"] = c.levels;
  j["potential"] = {{"level", c.potential.level},
                    {"values", rationals_json(c.potential.values)},
                    {"coupling", to_string(c.potential.coupling)},
                    {"base_point", c.potential.base_point}};
  j["spectral"] = {{"delta", c.spectral.delta},
                   {"tol", c.spectral.tol ? json(*c.spectral.tol) : json(nullptr)},
                   {"eps", c.spectral.eps},
                   {"q_max", c.spectral.q_max},
                   {"j_max", c.spectral.j_max},
                   {"boundary", to_string(c.spectral.boundary)},
                   {"dense_limit", c.spectral.dense_limit}};
  if (!c.spectral.volumes.empty()) j["spectral"]["volumes"] = c.spectral.volumes;
  if (c.chern) {
    json terms = json::array();
    for (const auto& t : c.chern->terms) terms.push_back({{"indices", t.indices}, {"coeff", to_string(t.coeff)}});
    j["chern"] = {{"n", c.chern->n}, {"terms", terms}};
  }
  j["butterfly"] = {{"q_max", c.butterfly.q_max}, {"volume", c.butterfly.volume}};
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  return j;
}

}  // namespace mgl::harness
