// skewtorus: command-line front end for the skew-translation spectral toolkit.
//
// Exit codes: 0 ok, 1 verification failure or other error,
// 2 precision exhausted, 3 unsupported closed-form D, 4 invalid L grid.

#include "skewtorus/skewtorus.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace skewtorus;
using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitGrid = 4;

struct RunConfig {
  std::string alpha = "golden";
  std::optional<std::int64_t> dimension;
  std::optional<std::int64_t> numerator;
  std::optional<std::int64_t> period;
  std::size_t count = 1;
  std::string widths;
  std::int64_t terms = 10000;
  std::string method = "direct";
  std::string format = "csv";
  std::string out;
  bool poisson = false;
  std::int64_t max_dimension = 256;
  // orbit / weyl
  double p0 = 0.1;
  double q0 = 0.2;
  std::int64_t iterations = 1000;
  std::int64_t mode_m = 1;
  std::int64_t mode_n = 0;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Writes to --out when given, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
  file << text;
}

json rational_json(const Rational& x) { return to_string(x); }

json approximant_json(const Approximant& app) {
  return {{"a", app.numerator}, {"N", app.dimension}, {"D", app.period}, {"M", app.copies}};
}

json spacing_json(const SpacingDistribution& dist) {
  json atoms = json::array();
  for (const auto& a : dist.atoms) atoms.push_back({{"s", rational_json(a.spacing)}, {"weight", rational_json(a.weight)}});
  return {{"source", dist.source == SpacingSource::empirical ? "empirical" : "closed-form"}, {"atoms", atoms}};
}

std::string law_text(const SpacingDistribution& dist) {
  std::string s;
  for (const auto& a : dist.atoms) {
    if (!s.empty()) s += ' ';
    s += "(" + to_string(a.spacing) + "," + to_string(a.weight) + ")";
  }
  return s;
}

// Resolves the single approximant a spectral command works on:
// --a/--N explicit, --N nearest to alpha, or --D first of the gcd family.
Approximant select_approximant(const RunConfig& cfg) {
  if (cfg.numerator) {
    if (!cfg.dimension || cfg.period) throw UsageError("--a requires --N and excludes --D");
    return Approximant::from_pair(*cfg.numerator, *cfg.dimension);
  }
  if (cfg.dimension.has_value() == cfg.period.has_value()) throw UsageError("select exactly one of --N or --D");
  const auto alpha = IrrationalAlpha::parse(cfg.alpha);
  if (cfg.dimension) return nearest_approximant(alpha, *cfg.dimension);
  return approximants_with_gcd(alpha, *cfg.period, 1).front();
}

int cmd_approx(const RunConfig& cfg) {
  const auto alpha = IrrationalAlpha::parse(cfg.alpha);
  if (cfg.dimension.has_value() == cfg.period.has_value()) throw UsageError("select exactly one of --N or --D");
  std::vector<Approximant> rows;
  if (cfg.dimension)
    rows.push_back(nearest_approximant(alpha, *cfg.dimension));
  else
    rows = approximants_with_gcd(alpha, *cfg.period, cfg.count);

  std::ostringstream out;
  if (cfg.format == "json") {
    json j = json::array();
    for (const auto& r : rows) j.push_back(approximant_json(r));
    out << json{{"alpha", alpha.name()}, {"approximants", j}}.dump(2) << '\n';
  } else {
    out << "a,N,D\n";
    for (const auto& r : rows) out << r.numerator << ',' << r.dimension << ',' << r.period << '\n';
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const auto spec = eigenphases(select_approximant(cfg));
  std::ostringstream out;
  if (cfg.format == "json") {
    json phases = json::array();
    for (const auto& p : spec.phases) phases.push_back({{"eta", p.eta}, {"l", p.l}, {"value", rational_json(p.value)}});
    const auto reduced = reduced_spectrum(spec.approximant.period);
    out << json{{"approximant", approximant_json(spec.approximant)},
                {"reduced_spectrum", reduced.residues},
                {"max_degeneracy", degeneracy_profile(reduced).max_multiplicity},
                {"phases", phases}}
               .dump(2)
        << '\n';
  } else {
    write_spectrum_csv(out, spec);
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_spacing(const RunConfig& cfg) {
  SpacingDistribution dist;
  if (cfg.method == "closed") {
    if (!cfg.period || cfg.numerator || cfg.dimension) throw UsageError("--method closed needs --D only");
    dist = spacing_distribution_closed(*cfg.period);
  } else {
    dist = spacings(eigenphases(select_approximant(cfg)));
  }
  std::ostringstream out;
  if (cfg.format == "json")
    out << spacing_json(dist).dump(2) << '\n';
  else
    write_spacing_csv(out, dist);
  emit(cfg, out.str());
  return 0;
}

json curve_json(const NumberVarianceCurve& curve) {
  json samples = json::array();
  for (const auto& s : curve.samples) {
    json row{{"L", to_double(s.width)}, {"value", s.value}};
    if (s.exact) row["exact"] = rational_json(*s.exact);
    samples.push_back(row);
  }
  json j{{"method", curve.method_tag()}, {"D", curve.period}, {"samples", samples}};
  if (curve.truncation_bound) j["truncation_bound"] = *curve.truncation_bound;
  return j;
}

int cmd_numvar(const RunConfig& cfg) {
  const auto grid = parse_grid(cfg.widths.empty() ? "0:3:301" : cfg.widths).points();
  NumberVarianceCurve curve;
  if (cfg.method == "direct") {
    curve = curve_direct(eigenphases(select_approximant(cfg)), grid);
  } else {
    std::int64_t d = 0;
    if (cfg.period && !cfg.numerator && !cfg.dimension)
      d = *cfg.period;
    else
      d = select_approximant(cfg).period;
    if (cfg.method == "closed")
      curve = curve_closed(d, grid);
    else if (cfg.method == "fourier")
      curve = curve_fourier(d, grid, cfg.terms);
    else
      throw UsageError("unknown --method '" + cfg.method + "' (direct|fourier|closed)");
  }

  std::ostringstream out;
  if (cfg.format == "json") {
    json j{{"curves", json::array({curve_json(curve)})}};
    if (cfg.poisson) {
      json poisson = json::array();
      for (const auto& w : grid) poisson.push_back({{"L", to_double(w)}, {"value", to_double(w)}});
      j["curves"].push_back({{"method", "poisson"}, {"samples", poisson}});
    }
    out << j.dump(2) << '\n';
  } else {
    write_curve_csv(out, curve);
    if (cfg.poisson) {
      out.precision(17);
      for (const auto& w : grid) out << to_double(w) << ',' << to_double(w) << ",poisson,,\n";
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_figure(const RunConfig& cfg) {
  FigureOptions options;
  if (!cfg.widths.empty()) options.grid = parse_grid(cfg.widths);
  options.terms = cfg.terms;
  const auto fig = figure1(IrrationalAlpha::parse(cfg.alpha), options);

  bool spots_ok = true;
  json spots = json::array();
  for (const auto& s : fig.spot_checks) {
    spots_ok = spots_ok && s.passed();
    spots.push_back({{"D", s.period},
                     {"approximant", approximant_json(s.approximant)},
                     {"L", rational_json(s.width)},
                     {"direct_exact", rational_json(s.exact)},
                     {"fourier", s.fourier},
                     {"truncation_bound", s.bound},
                     {"passed", s.passed()}});
  }

  std::ostringstream out;
  if (cfg.format == "json") {
    json curves = json::array();
    for (const auto& c : fig.curves) curves.push_back(curve_json(c));
    out << json{{"curves", curves}, {"spot_checks", spots}}.dump(2) << '\n';
  } else {
    write_figure_csv(out, fig);
    for (const auto& s : fig.spot_checks) {
      std::cerr << "spot check D=" << s.period << " N=" << s.approximant.dimension << " L=" << to_string(s.width)
                << ": direct " << to_string(s.exact) << ", fourier " << s.fourier << " +/- " << s.bound
                << (s.passed() ? " ok" : " FAILED") << '\n';
    }
  }
  emit(cfg, out.str());
  return spots_ok ? 0 : kExitFailure;
}

int cmd_verify(const RunConfig& cfg) {
  const auto app = select_approximant(cfg);
  const auto report = verify(app, {cfg.max_dimension, cfg.terms});
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"skipped", c.skipped},
                      {"detail", c.detail}});
  }
  json j{{"approximant", approximant_json(app)}, {"passed", report.passed()}, {"checks", checks}};
  if (const auto* failed = report.first_failure()) j["failed_check"] = failed->name;
  emit(cfg, j.dump(2) + "\n");
  if (const auto* failed = report.first_failure()) {
    std::cerr << "verification failed: " << failed->name << '\n';
    return kExitFailure;
  }
  return 0;
}

int cmd_witness(const RunConfig& cfg) {
  const auto alpha = IrrationalAlpha::parse(cfg.alpha);
  const auto w = divergence_witness(alpha, cfg.count);
  std::ostringstream out;
  if (cfg.format == "json") {
    auto family = [](const WitnessFamily& f) {
      json members = json::array();
      for (std::size_t i = 0; i < f.approximants.size(); ++i) {
        members.push_back({{"approximant", approximant_json(f.approximants[i])},
                           {"spacing", spacing_json(f.laws[i])},
                           {"number_variance_L1", rational_json(f.variance_at_one[i])}});
      }
      return json{{"D", f.period}, {"constant", f.constant()}, {"members", members}};
    };
    out << json{{"alpha", alpha.name()},
                {"families", {family(w.rigid), family(w.triple)}},
                {"laws_differ", w.laws_differ()}}
               .dump(2)
        << '\n';
  } else {
    out << "D,a,N,spacing_law,number_variance_L1\n";
    for (const auto* f : {&w.rigid, &w.triple}) {
      for (std::size_t i = 0; i < f->approximants.size(); ++i) {
        const auto& app = f->approximants[i];
        out << f->period << ',' << app.numerator << ',' << app.dimension << ",\"" << law_text(f->laws[i]) << "\","
            << to_string(f->variance_at_one[i]) << '\n';
      }
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_matrix(const RunConfig& cfg) {
  const auto u = build_propagator(select_approximant(cfg), {cfg.max_dimension});
  std::ostringstream out;
  write_matrix_csv(out, u);
  emit(cfg, out.str());
  return 0;
}

int cmd_orbit(const RunConfig& cfg) {
  const double alpha = IrrationalAlpha::parse(cfg.alpha).approx_value();
  std::ostringstream out;
  write_orbit_csv(out, orbit({cfg.p0, cfg.q0}, alpha, cfg.iterations));
  emit(cfg, out.str());
  return 0;
}

int cmd_weyl(const RunConfig& cfg) {
  const double alpha = IrrationalAlpha::parse(cfg.alpha).approx_value();
  std::ostringstream out;
  out.precision(17);
  out << "T,re,im,modulus\n";
  for (std::int64_t t = 10; t <= cfg.iterations; t *= 10) {
    const auto s = weyl_sum({cfg.p0, cfg.q0}, alpha, {cfg.mode_m, cfg.mode_n}, t);
    out << t << ',' << s.real() << ',' << s.imag() << ',' << std::abs(s) << '\n';
  }
  emit(cfg, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral statistics of quantized skew translations on the torus"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "golden | sqrt2 | cf:c0,c1,...")->capture_default_str();
  };
  auto add_selector = [&](CLI::App* sub) {
    add_alpha(sub);
    sub->add_option("--N", cfg.dimension, "Hilbert-space dimension (approximant nearest to alpha unless --a)");
    sub->add_option("--a", cfg.numerator, "explicit numerator a_N (needs --N)");
    sub->add_option("--D", cfg.period, "use the first approximant of alpha with gcd(a_N, N) = D");
  };
  auto add_output = [&](CLI::App* sub, bool json_allowed = true) {
    if (json_allowed)
      sub->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };

  auto* approx = app.add_subcommand("approx", "approximants a_N/N of alpha; CSV columns a,N,D");
  add_alpha(approx);
  approx->add_option("--N", cfg.dimension, "nearest approximant with this denominator");
  approx->add_option("--D", cfg.period, "family of approximants with gcd D");
  approx->add_option("--count", cfg.count, "family size")->capture_default_str();
  add_output(approx);

  auto* spectrum = app.add_subcommand("spectrum", "exact eigenphases; CSV columns eta,l,numerator,denominator,value");
  add_selector(spectrum);
  add_output(spectrum);

  auto* spacing = app.add_subcommand("spacing", "level-spacing law; CSV columns s_numerator,s_denominator,weight");
  add_selector(spacing);
  spacing->add_option("--method", cfg.method, "empirical (default) | closed");
  add_output(spacing);

  auto* numvar = app.add_subcommand("numvar", "number variance; CSV columns L,value,method,D,truncation_bound");
  add_selector(numvar);
  numvar->add_option("--method", cfg.method, "direct | fourier | closed")->capture_default_str();
  numvar->add_option("--L", cfg.widths, "width or grid min:max:steps (default 0:3:301)");
  numvar->add_option("--K", cfg.terms, "Fourier truncation order")->capture_default_str();
  numvar->add_flag("--poisson", cfg.poisson, "append the Poisson reference Sigma^2 = L");
  add_output(numvar);

  auto* figure = app.add_subcommand("figure", "number variance for D = 1,2,3,6,8,9; one column per D, bounds last");
  add_alpha(figure);
  figure->add_option("--L", cfg.widths, "grid min:max:steps (default 0:9:361)");
  figure->add_option("--K", cfg.terms, "Fourier truncation order for D = 8, 9")->capture_default_str();
  add_output(figure);

  auto* verify_cmd = app.add_subcommand("verify", "cross-method checks; JSON report, exit 1 on failure");
  add_selector(verify_cmd);
  verify_cmd->add_option("--K", cfg.terms, "Fourier truncation order")->capture_default_str();
  verify_cmd->add_option("--max-N", cfg.max_dimension, "largest N for matrix work")->capture_default_str();
  add_output(verify_cmd, false);

  auto* witness = app.add_subcommand("witness", "two approximant families with different spacing laws");
  add_alpha(witness);
  witness->add_option("--count", cfg.count, "members per family")->capture_default_str();
  add_output(witness);

  auto* matrix = app.add_subcommand("matrix", "propagator entries; CSV columns k,j,re,im");
  add_selector(matrix);
  matrix->add_option("--max-N", cfg.max_dimension, "largest N for matrix work")->capture_default_str();
  add_output(matrix, false);

  auto* orbit_cmd = app.add_subcommand("orbit", "classical orbit; CSV columns t,p,q");
  add_alpha(orbit_cmd);
  orbit_cmd->add_option("--p0", cfg.p0)->capture_default_str();
  orbit_cmd->add_option("--q0", cfg.q0)->capture_default_str();
  orbit_cmd->add_option("--T", cfg.iterations, "orbit length")->capture_default_str();
  add_output(orbit_cmd, false);

  auto* weyl = app.add_subcommand("weyl", "Birkhoff averages of exp(2 pi i (m p + n q)) for T = 10, 100, ...");
  add_alpha(weyl);
  weyl->add_option("--p0", cfg.p0)->capture_default_str();
  weyl->add_option("--q0", cfg.q0)->capture_default_str();
  weyl->add_option("--m", cfg.mode_m)->capture_default_str();
  weyl->add_option("--n", cfg.mode_n)->capture_default_str();
  weyl->add_option("--T", cfg.iterations, "largest T")->capture_default_str();
  add_output(weyl, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*approx) return cmd_approx(cfg);
    if (*spectrum) return cmd_spectrum(cfg);
    if (*spacing) return cmd_spacing(cfg);
    if (*numvar) return cmd_numvar(cfg);
    if (*figure) return cmd_figure(cfg);
    if (*verify_cmd) return cmd_verify(cfg);
    if (*witness) return cmd_witness(cfg);
    if (*matrix) return cmd_matrix(cfg);
    if (*orbit_cmd) return cmd_orbit(cfg);
    if (*weyl) return cmd_weyl(cfg);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const UnsupportedPeriod& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const InvalidGrid& e) {
    std::cerr << "invalid grid: " << e.what() << '\n';
    return kExitGrid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
