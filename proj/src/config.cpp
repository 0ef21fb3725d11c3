#include "sturmet/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace sturmet {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int x = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: bad boolean value for '" + key + "': " + value);
}

// "1.5" or "re,im", parentheses optional
Complex parse_complex(const std::string& key, std::string value) {
  if (!value.empty() && value.front() == '(' && value.back() == ')')
    value = trim(value.substr(1, value.size() - 2));
  const auto comma = value.find(',');
  if (comma == std::string::npos) return Complex{parse_double(key, value), 0.0};
  return Complex{parse_double(key, trim(value.substr(0, comma))),
                 parse_double(key, trim(value.substr(comma + 1)))};
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  if (z.imag() == 0.0)
    os << z.real();
  else
    os << z.real() << ", " << z.imag();
  return os.str();
}

const std::map<std::string, double Tolerances::*>& tolerance_fields() {
  static const std::map<std::string, double Tolerances::*> fields = {
      {"tol_eig", &Tolerances::tol_eig},
      {"polish_target", &Tolerances::polish_target},
      {"degeneracy_tol", &Tolerances::degeneracy_tol},
      {"defect_tol", &Tolerances::defect_tol},
      {"reality_tol", &Tolerances::reality_tol},
      {"herm_tol", &Tolerances::herm_tol},
      {"pd_floor", &Tolerances::pd_floor},
      {"weight_floor", &Tolerances::weight_floor},
      {"base_tol", &Tolerances::base_tol},
      {"oracle_tol", &Tolerances::oracle_tol},
  };
  return fields;
}

}  // namespace

void RunConfig::validate() const {
  problem.validate();
  if (pipeline == PipelineKind::Sweep) {
    if (!sweep) throw ConfigError("config: pipeline = sweep requires a [sweep] section");
    if (sweep->steps < 2) throw ConfigError("config: sweep needs steps >= 2");
  }
  if (workers < 1) throw ConfigError("config: workers must be >= 1");
  if (refinements < 0) throw ConfigError("config: refinements must be >= 0");
  if (output_dir.empty()) throw ConfigError("config: output directory must not be empty");
  make_tolerances(tolerance_overrides);  // rejects unknown names
}

RunConfig parse_config(std::istream& is) {
  RunConfig config;
  // grid keys arrive piecemeal; assemble at the end
  double x_min = 0.0, x_max = 0.0;
  int n_interior = 0;
  bool have_grid = false;
  bool have_sweep = false;
  SweepSpec sweep;

  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: unterminated section at line " +
                                                std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value at line " + std::to_string(lineno));

    if (section == "problem") {
      if (key == "ell") config.problem.ell = parse_double(key, value);
      else if (key == "kappa_sq") config.problem.kappa_sq = parse_complex(key, value);
      else if (key == "weight") {
        if (value == "identity") config.problem.weight = WeightKind::identity();
        else if (value == "pt_coulomb") config.problem.weight = WeightKind::pt_coulomb();
        else if (value == "coulomb") config.problem.weight = WeightKind::coulomb();
        else if (value == "power") config.problem.weight.tag = WeightKind::Tag::Power;
        else throw ConfigError("config: unknown weight '" + value + "'");
      } else if (key == "power") config.problem.weight.power = parse_int(key, value);
      else throw ConfigError("config: unknown key problem." + key);
    } else if (section == "contour") {
      if (key == "kind") {
        if (value == "half_line") config.problem.contour.kind = ContourKind::RealHalfLine;
        else if (value == "parabola") config.problem.contour.kind = ContourKind::ComplexParabola;
        else throw ConfigError("config: unknown contour kind '" + value + "'");
      } else if (key == "alpha") config.problem.contour.alpha = parse_double(key, value);
      else if (key == "beta") config.problem.contour.beta = parse_double(key, value);
      else if (key == "gamma") config.problem.contour.gamma = parse_double(key, value);
      else throw ConfigError("config: unknown key contour." + key);
    } else if (section == "grid") {
      have_grid = true;
      if (key == "x_min") x_min = parse_double(key, value);
      else if (key == "x_max") x_max = parse_double(key, value);
      else if (key == "n_interior") n_interior = parse_int(key, value);
      else throw ConfigError("config: unknown key grid." + key);
    } else if (section == "run") {
      if (key == "pipeline") {
        if (value == "solve") config.pipeline = PipelineKind::Solve;
        else if (value == "verify") config.pipeline = PipelineKind::Verify;
        else if (value == "sweep") config.pipeline = PipelineKind::Sweep;
        else if (value == "oracle") config.pipeline = PipelineKind::Oracle;
        else throw ConfigError("config: unknown pipeline '" + value + "'");
      } else if (key == "output") config.output_dir = value;
      else if (key == "workers") config.workers = parse_int(key, value);
      else if (key == "refinements") config.refinements = parse_int(key, value);
      else if (key == "dump_vectors") config.dump_vectors = parse_bool(key, value);
      else if (key == "export_pencil") config.export_pencil = parse_bool(key, value);
      else if (key == "export_metric") config.export_metric = parse_bool(key, value);
      else throw ConfigError("config: unknown key run." + key);
    } else if (section == "sweep") {
      have_sweep = true;
      if (key == "parameter") {
        if (value == "kappa_sq") sweep.parameter = SweepParameter::KappaSq;
        else if (value == "ell") sweep.parameter = SweepParameter::Ell;
        else throw ConfigError("config: sweep parameter must be kappa_sq or ell");
      } else if (key == "start") sweep.start = parse_double(key, value);
      else if (key == "stop") sweep.stop = parse_double(key, value);
      else if (key == "steps") sweep.steps = parse_int(key, value);
      else throw ConfigError("config: unknown key sweep." + key);
    } else if (section == "tolerances") {
      if (!tolerance_fields().count(key))
        throw ConfigError("config: unknown tolerance '" + key + "'");
      config.tolerance_overrides[key] = parse_double(key, value);
    } else {
      throw ConfigError("config: key outside any known section at line " + std::to_string(lineno));
    }
  }

  if (!have_grid) throw ConfigError("config: missing [grid] section");
  try {
    config.problem.grid = make_grid(x_min, x_max, n_interior);
  } catch (const InvalidGrid& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (have_sweep) config.sweep = sweep;
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(is);
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "[problem]\n";
  os << "ell = " << config.problem.ell << '\n';
  os << "kappa_sq = " << format_complex(config.problem.kappa_sq) << '\n';
  switch (config.problem.weight.tag) {
    case WeightKind::Tag::Identity: os << "weight = identity\n"; break;
    case WeightKind::Tag::PTCoulomb: os << "weight = pt_coulomb\n"; break;
    case WeightKind::Tag::Coulomb: os << "weight = coulomb\n"; break;
    case WeightKind::Tag::Power:
      os << "weight = power\n" << "power = " << config.problem.weight.power << '\n';
      break;
  }
  os << "\n[contour]\n";
  if (config.problem.contour.kind == ContourKind::RealHalfLine) {
    os << "kind = half_line\n";
  } else {
    os << "kind = parabola\n";
    os << "alpha = " << config.problem.contour.alpha << '\n';
    os << "beta = " << config.problem.contour.beta << '\n';
    os << "gamma = " << config.problem.contour.gamma << '\n';
  }
  os << "\n[grid]\n";
  os << "x_min = " << config.problem.grid.x_min << '\n';
  os << "x_max = " << config.problem.grid.x_max << '\n';
  os << "n_interior = " << config.problem.grid.n_interior << '\n';
  os << "\n[run]\n";
  os << "pipeline = " << to_string(config.pipeline) << '\n';
  os << "output = " << config.output_dir << '\n';
  os << "workers = " << config.workers << '\n';
  os << "refinements = " << config.refinements << '\n';
  os << "dump_vectors = " << (config.dump_vectors ? "true" : "false") << '\n';
  os << "export_pencil = " << (config.export_pencil ? "true" : "false") << '\n';
  os << "export_metric = " << (config.export_metric ? "true" : "false") << '\n';
  if (config.sweep) {
    os << "\n[sweep]\n";
    os << "parameter = " << to_string(config.sweep->parameter) << '\n';
    os << "start = " << config.sweep->start << '\n';
    os << "stop = " << config.sweep->stop << '\n';
    os << "steps = " << config.sweep->steps << '\n';
  }
  if (!config.tolerance_overrides.empty()) {
    os << "\n[tolerances]\n";
    for (const auto& [name, value] : config.tolerance_overrides)
      os << name << " = " << value << '\n';
  }
  return os.str();
}

Tolerances make_tolerances(const std::map<std::string, double>& overrides) {
  Tolerances tol;
  for (const auto& [name, value] : overrides) {
    const auto it = tolerance_fields().find(name);
    if (it == tolerance_fields().end())
      throw ConfigError("unknown tolerance name '" + name + "'");
    tol.*(it->second) = value;
  }
  return tol;
}

std::string to_string(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::Solve: return "solve";
    case PipelineKind::Verify: return "verify";
    case PipelineKind::Sweep: return "sweep";
    case PipelineKind::Oracle: return "oracle";
  }
  return "?";
}

std::string to_string(SweepParameter parameter) {
  return parameter == SweepParameter::KappaSq ? "kappa_sq" : "ell";
}

}  // namespace sturmet
