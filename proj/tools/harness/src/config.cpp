#include "fracwave_harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace fracwave::harness {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"domain", {"dims", "lengths", "modes_per_axis", "oversample"}},
      {"damping", {"gamma", "alpha"}},
      {"nonlinearity", {"kind", "q", "coefficients", "M"}},
      {"forcing", {"modes", "envelope", "pulse_min", "pulse_max"}},
      {"initial", {"generator", "position", "velocity", "amplitude", "exponent", "stream"}},
      {"time", {"T", "dt", "stride", "start"}},
      {"run", {"seed", "ensemble_size", "outputs"}},
      {"diagnostics",
       {"blow_up_factor", "threshold_scale", "max_refinement_depth", "transient", "fit_from", "windows",
        "cluster_lambda_min", "cluster_lambda_max", "cluster_lambda_step", "cluster_random_fields",
        "smoothing_t_min", "smoothing_t_max", "smoothing_points", "squeeze_bases", "separations", "box_dims"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(out)) throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError(key + ": expected an integer, got '" + trim(text) + "'");
  return static_cast<long long>(v);
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
  }
  if (used != v.size() || v.empty() || v[0] == '-') {
    throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

std::vector<std::string> split(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ", \t")) out.push_back(to_double(key, item));
  return out;
}

// Drops comment lines and trailing " #" / " ;" comments before handing the
// text to the INI reader.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') {
      out << '\n';
      continue;
    }
    for (const char* mark : {" #", " ;", "\t#", "\t;"}) {
      const auto p = line.find(mark);
      if (p != std::string::npos) line = line.substr(0, p);
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

std::vector<std::pair<ModeIndex, double>> parse_mode_list(const std::string& text, int dims) {
  std::vector<std::pair<ModeIndex, double>> out;
  const std::string t = trim(text);
  if (t.empty() || t == "zero") return out;
  for (const auto& item : split(t, ",; \t")) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("mode list entry '" + item + "' must look like k1xk2:value");
    const auto parts = split(item.substr(0, colon), "x");
    if (static_cast<int>(parts.size()) != dims) {
      throw ConfigError("mode '" + item + "' has " + std::to_string(parts.size()) + " indices, domain has " +
                        std::to_string(dims) + " dimensions");
    }
    ModeIndex k;
    for (int a = 0; a < dims; ++a) {
      const auto v = to_integer("mode index", parts[static_cast<std::size_t>(a)]);
      if (v < 1) throw ConfigError("mode index components must be >= 1 in '" + item + "'");
      k.k[static_cast<std::size_t>(a)] = static_cast<int>(v);
    }
    out.emplace_back(k, to_double("mode coefficient", item.substr(colon + 1)));
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(strip_comments(text));
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }

  std::map<std::string, std::string> kv;
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' must be inside a section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
      kv[section + "." + key] = value.data();
    }
  }
  auto has = [&](const std::string& k) { return kv.count(k) > 0; };
  auto get = [&](const std::string& k) { return kv.at(k); };
  auto num = [&](const std::string& k, double& dst) {
    if (has(k)) dst = to_double(k, get(k));
  };
  auto integer = [&](const std::string& k, int& dst) {
    if (has(k)) dst = static_cast<int>(to_integer(k, get(k)));
  };

  RunConfig c;
  // [domain]
  int dims = 1;
  integer("domain.dims", dims);
  if (dims < 1 || dims > 3) throw ConfigError("domain.dims = " + std::to_string(dims) + " must be 1, 2 or 3");
  std::vector<double> lengths(static_cast<std::size_t>(dims), 1.0);
  if (has("domain.lengths")) {
    auto l = to_doubles("domain.lengths", get("domain.lengths"));
    if (l.size() == 1) l.assign(static_cast<std::size_t>(dims), l[0]);
    if (static_cast<int>(l.size()) != dims) throw ConfigError("domain.lengths needs 1 or dims values");
    lengths = l;
  }
  for (double l : lengths) {
    if (!(l > 0.0)) throw ConfigError("domain.lengths must all be > 0");
  }
  c.domain = BoxDomain{lengths};
  integer("domain.modes_per_axis", c.modes_per_axis);
  if (c.modes_per_axis < 1) throw ConfigError("domain.modes_per_axis must be >= 1");
  integer("domain.oversample", c.oversample);
  if (c.oversample < 0) throw ConfigError("domain.oversample must be >= 0 (0 = automatic)");

  // [damping]
  num("damping.gamma", c.damping.gamma);
  num("damping.alpha", c.damping.alpha);
  if (!(c.damping.gamma > 0.0)) throw ConfigError("damping.gamma must be > 0");
  if (!(c.damping.alpha > 0.0 && c.damping.alpha < 0.5)) {
    throw ConfigError("damping.alpha = " + get("damping.alpha") + " violates the constraint alpha in (0, 0.5)");
  }

  // [nonlinearity]
  const std::string kind = has("nonlinearity.kind") ? trim(get("nonlinearity.kind")) : "none";
  double q = 2.0, m_const = 0.0;
  num("nonlinearity.q", q);
  num("nonlinearity.M", m_const);
  if (!(q >= 0.0 && q < 4.0)) {
    throw ConfigError("nonlinearity.q = " + get("nonlinearity.q") + " violates the constraint q in [0, 4)");
  }
  std::vector<double> coeffs{1.0};
  if (has("nonlinearity.coefficients")) coeffs = to_doubles("nonlinearity.coefficients", get("nonlinearity.coefficients"));
  try {
    switch (nonlinearity_kind_from_string(kind)) {
      case NonlinearityKind::none: c.nonlinearity = Nonlinearity::none(); break;
      case NonlinearityKind::odd_power:
        if (coeffs.size() != 1) throw ConfigError("nonlinearity.coefficients: odd_power takes one value");
        c.nonlinearity = Nonlinearity::odd_power(q, coeffs[0]);
        c.nonlinearity.dissipativity = m_const;
        break;
      case NonlinearityKind::cubic_minus_linear: c.nonlinearity = Nonlinearity::cubic_minus_linear(); break;
      case NonlinearityKind::custom_polynomial:
        c.nonlinearity = Nonlinearity::custom_polynomial(coeffs, m_const);
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("nonlinearity: ") + e.what());
  }

  // [forcing]
  if (has("forcing.modes")) c.forcing = parse_mode_list(get("forcing.modes"), dims);
  if (has("forcing.envelope")) c.envelope = trim(get("forcing.envelope"));
  if (c.envelope != "constant" && c.envelope != "pulses") {
    throw ConfigError("forcing.envelope must be 'constant' or 'pulses', got '" + c.envelope + "'");
  }
  num("forcing.pulse_min", c.pulse_min);
  num("forcing.pulse_max", c.pulse_max);
  if (!(c.pulse_max >= c.pulse_min)) throw ConfigError("forcing.pulse_max must be >= forcing.pulse_min");

  // [initial]
  if (has("initial.generator")) {
    try {
      c.initial.kind = initial_kind_from_string(trim(get("initial.generator")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("initial.generator: ") + e.what());
    }
  }
  if (has("initial.position")) c.initial.position = parse_mode_list(get("initial.position"), dims);
  if (has("initial.velocity")) c.initial.velocity = parse_mode_list(get("initial.velocity"), dims);
  num("initial.amplitude", c.initial.amplitude);
  num("initial.exponent", c.initial.exponent);
  if (has("initial.stream")) c.initial.stream = to_u64("initial.stream", get("initial.stream"));

  // [time]
  num("time.T", c.horizon);
  num("time.dt", c.dt);
  num("time.start", c.start);
  integer("time.stride", c.stride);
  if (!(c.dt > 0.0)) throw ConfigError("time.dt must be > 0");
  if (!(c.horizon >= c.dt)) throw ConfigError("time.T must be >= time.dt");
  if (c.stride < 1) throw ConfigError("time.stride must be >= 1");

  // [run]
  if (has("run.seed")) c.seed = to_u64("run.seed", get("run.seed"));
  integer("run.ensemble_size", c.ensemble_size);
  if (c.ensemble_size < 1) throw ConfigError("run.ensemble_size must be >= 1");
  if (has("run.outputs")) c.outputs = split(get("run.outputs"), ", \t");
  c.initial.seed = c.seed;

  // [diagnostics]
  auto& d = c.diagnostics;
  num("diagnostics.blow_up_factor", d.blow_up_factor);
  num("diagnostics.threshold_scale", d.threshold_scale);
  integer("diagnostics.max_refinement_depth", d.max_refinement_depth);
  num("diagnostics.transient", d.transient);
  num("diagnostics.fit_from", d.fit_from);
  integer("diagnostics.windows", d.windows);
  num("diagnostics.cluster_lambda_min", d.cluster_lambda_min);
  num("diagnostics.cluster_lambda_max", d.cluster_lambda_max);
  num("diagnostics.cluster_lambda_step", d.cluster_lambda_step);
  integer("diagnostics.cluster_random_fields", d.cluster_random_fields);
  num("diagnostics.smoothing_t_min", d.smoothing_t_min);
  num("diagnostics.smoothing_t_max", d.smoothing_t_max);
  integer("diagnostics.smoothing_points", d.smoothing_points);
  integer("diagnostics.squeeze_bases", d.squeeze_bases);
  integer("diagnostics.box_dims", d.box_dims);
  if (has("diagnostics.separations")) d.separations = to_doubles("diagnostics.separations", get("diagnostics.separations"));
  if (!(d.blow_up_factor > 1.0)) throw ConfigError("diagnostics.blow_up_factor must be > 1");
  if (!(d.threshold_scale > 0.0)) throw ConfigError("diagnostics.threshold_scale must be > 0");
  if (d.max_refinement_depth < 0) throw ConfigError("diagnostics.max_refinement_depth must be >= 0");
  if (d.transient < 0.0) throw ConfigError("diagnostics.transient must be >= 0");
  if (d.windows < 1) throw ConfigError("diagnostics.windows must be >= 1");
  if (!(d.cluster_lambda_step > 0.0)) throw ConfigError("diagnostics.cluster_lambda_step must be > 0");
  if (d.smoothing_points < 8) throw ConfigError("diagnostics.smoothing_points must be >= 8");
  if (d.squeeze_bases < 1) throw ConfigError("diagnostics.squeeze_bases must be >= 1");
  if (d.separations.empty()) throw ConfigError("diagnostics.separations must not be empty");
  if (d.box_dims < 1 || d.box_dims > 10) throw ConfigError("diagnostics.box_dims must be in [1, 10]");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::function<double(double)> pulse_envelope(std::uint64_t seed, double lo, double hi, int count) {
  std::vector<double> amp(static_cast<std::size_t>(std::max(count, 0)));
  CounterRng rng(seed, 0x70756c7365ULL);
  for (double& a : amp) a = rng.uniform(lo, hi);
  return [amp](double t) {
    if (t < 0.0) return 0.0;
    const auto j = static_cast<std::size_t>(std::floor(t));
    if (j >= amp.size()) return 0.0;
    const double s = std::sin(std::numbers::pi * (t - static_cast<double>(j)));
    return amp[j] * s * s;
  };
}

Scenario RunConfig::scenario() const {
  Scenario s;
  try {
    s.spectrum = build_spectrum(domain, modes_per_axis);
    s.forcing = field_from_modes(s.spectrum, forcing);
    s.initial = initial.generate(s.spectrum);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.damping = damping;
  s.nonlinearity = nonlinearity;
  if (envelope == "pulses") {
    const int count = static_cast<int>(std::ceil(start + horizon)) + 1;
    s.forcing_envelope = pulse_envelope(seed, pulse_min, pulse_max, count);
  }
  s.start = start;
  s.horizon = horizon;
  s.dt = dt;
  s.stride = stride;
  s.oversample = oversample;
  s.options.blow_up_factor = diagnostics.blow_up_factor;
  s.options.threshold_scale = diagnostics.threshold_scale;
  s.options.max_refinement_depth = diagnostics.max_refinement_depth;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

}  // namespace fracwave::harness
