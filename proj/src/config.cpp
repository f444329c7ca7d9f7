#include "ieq/config.hpp"

#include "ieq/errors.hpp"
#include "ieq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace ieq {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Accepts plain reals and multiples of pi: "pi", "2pi", "2*pi", "0.5 * pi".
std::optional<double> parse_real(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    std::string factor = trim(std::string_view(s).substr(0, s.size() - 2));
    if (!factor.empty() && factor.back() == '*') factor = trim(factor.substr(0, factor.size() - 1));
    if (factor.empty()) return std::numbers::pi;
    const auto f = to_double(factor);
    if (!f) return std::nullopt;
    return *f * std::numbers::pi;
  }
  return to_double(s);
}

InitialKind initial_kind_from_string(std::string_view name) {
  if (name == "cosine-sum") return InitialKind::CosineSum;
  if (name == "tanh-profile") return InitialKind::TanhProfile;
  if (name == "seeded-noise") return InitialKind::SeededNoise;
  throw ConfigError("unknown ic.kind '" + std::string(name) + "'");
}

class Parser {
public:
  Parser(RunConfig& cfg, std::string source) : cfg_(cfg), source_(std::move(source)) {
    real("grid.l1", [this](double v) { cfg_.grid.length0 = v; });
    real("grid.l2", [this](double v) { cfg_.grid.length1 = v; });
    real("grid.l", [this](double v) { cfg_.grid.length0 = cfg_.grid.length1 = v; });
    integer("grid.dim", [this](long v) { cfg_.grid.dim = static_cast<int>(v); });
    integer("grid.n1", [this](long v) { cfg_.grid.n0 = static_cast<int>(v); });
    integer("grid.n2", [this](long v) { cfg_.grid.n1 = static_cast<int>(v); });
    integer("grid.n", [this](long v) { cfg_.grid.n0 = cfg_.grid.n1 = static_cast<int>(v); });
    text("potential.kind",
         [this](const std::string& v) { cfg_.scheme.potential.kind = potential_kind_from_string(v); });
    real("potential.theta", [this](double v) { cfg_.scheme.potential.theta = v; });
    real("potential.sigma", [this](double v) { cfg_.scheme.potential.sigma = v; });
    real("potential.A", [this](double v) { cfg_.scheme.potential.lower_bound_A = v; });
    real("potential.B", [this](double v) { cfg_.scheme.potential.shift_B = v; });
    real("physics.M", [this](double v) { cfg_.scheme.mobility = v; });
    real("physics.epsilon", [this](double v) { cfg_.scheme.epsilon = v; });
    real("time.dt", [this](double v) { cfg_.scheme.dt = v; });
    real("time.T", [this](double v) { cfg_.final_time = v; });
    integer("time.snapshot_every", [this](long v) { cfg_.snapshot_every = static_cast<int>(v); });
    real("pcg.rel_tol", [this](double v) { cfg_.scheme.pcg.rel_tol = v; });
    real("pcg.abs_tol", [this](double v) { cfg_.scheme.pcg.abs_tol = v; });
    integer("pcg.max_iters", [this](long v) { cfg_.scheme.pcg.max_iters = static_cast<int>(v); });
    text("ic.kind", [this](const std::string& v) { cfg_.ic.kind = initial_kind_from_string(v); });
    real("ic.amplitude", [this](double v) { cfg_.ic.amplitude = v; });
    real("ic.mean", [this](double v) { cfg_.ic.mean = v; });
    integer("ic.seed", [this](long v) {
      if (v < 0) throw ConfigError("seed must be non-negative");
      cfg_.ic.seed = static_cast<std::uint64_t>(v);
    });
    text("equation", [this](const std::string& v) { cfg_.equation = equation_from_string(v); });
    text("output_dir", [this](const std::string& v) { cfg_.output_dir = v; });
  }

  void line(int number, std::string_view raw) {
    std::string_view content = raw.substr(0, raw.find('#'));
    const std::string stripped = trim(content);
    if (stripped.empty()) return;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(number, "expected 'key = value'");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    const auto it = handlers_.find(key);
    if (it == handlers_.end()) fail(number, "unknown key '" + key + "'");
    if (!seen_.insert(key).second) fail(number, "duplicate key '" + key + "'");
    if (value.empty()) fail(number, "key '" + key + "' has no value");
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      fail(number, "key '" + key + "': " + e.what());
    }
  }

  // Kind-dependent defaults for keys the file left out.
  void finish() {
    auto& p = cfg_.scheme.potential;
    const bool has_A = seen_.count("potential.A") != 0;
    const bool has_B = seen_.count("potential.B") != 0;
    if (p.kind == PotentialKind::FloryHugginsRegularized) {
      if (!has_A) p.lower_bound_A = 1.0;
      if (!has_B) p.shift_B = p.lower_bound_A + 1.0;
    } else if (p.kind == PotentialKind::DoubleWellLagrange) {
      if (!has_B) p.shift_B = 0.0;
    } else if (!has_B) {
      p.shift_B = p.lower_bound_A + 1.0;
    }
  }

private:
  [[noreturn]] void fail(int number, const std::string& what) const {
    throw ConfigError(source_ + ":" + std::to_string(number) + ": " + what);
  }

  void real(const std::string& key, std::function<void(double)> set) {
    handlers_[key] = [set = std::move(set)](const std::string& v) {
      const auto d = parse_real(v);
      if (!d) throw ConfigError("invalid number '" + v + "'");
      set(*d);
    };
  }

  void integer(const std::string& key, std::function<void(long)> set) {
    handlers_[key] = [set = std::move(set)](const std::string& v) {
      long out = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("invalid integer '" + v + "'");
      }
      set(out);
    };
  }

  void text(const std::string& key, std::function<void(const std::string&)> set) {
    handlers_[key] = std::move(set);
  }

  RunConfig& cfg_;
  std::string source_;
  std::map<std::string, std::function<void(const std::string&)>> handlers_;
  std::set<std::string> seen_;
};

} // namespace

std::string_view to_string(InitialKind kind) {
  switch (kind) {
  case InitialKind::CosineSum: return "cosine-sum";
  case InitialKind::TanhProfile: return "tanh-profile";
  case InitialKind::SeededNoise: return "seeded-noise";
  }
  return "unknown";
}

Grid GridSpec::make() const {
  if (dim != 1 && dim != 2) throw ConfigError("grid.dim must be 1 or 2");
  try {
    return dim == 1 ? Grid::line(n0, length0) : Grid::plane(n0, n1, length0, length1);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

void RunConfig::validate() const {
  (void)grid.make();
  scheme.validate();
  if (!(final_time > 0.0)) throw ConfigError("time.T must be positive");
  if (snapshot_every < 1) throw ConfigError("time.snapshot_every must be >= 1");
  if (ic.kind == InitialKind::SeededNoise && !ic.seed) {
    throw ConfigError("ic.kind = seeded-noise requires ic.seed");
  }
}

RunConfig parse_run_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  Parser parser(cfg, source);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) parser.line(++number, raw);
  parser.finish();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_run_config(in, path.string());
}

std::string format_run_config(const RunConfig& c) {
  std::ostringstream out;
  const auto& p = c.scheme.potential;
  out << "equation = " << to_string(c.equation) << '\n'
      << "grid.dim = " << c.grid.dim << '\n'
      << "grid.n1 = " << c.grid.n0 << '\n'
      << "grid.n2 = " << c.grid.n1 << '\n'
      << "grid.l1 = " << format_real(c.grid.length0) << '\n'
      << "grid.l2 = " << format_real(c.grid.length1) << '\n'
      << "potential.kind = " << to_string(p.kind) << '\n'
      << "potential.theta = " << format_real(p.theta) << '\n'
      << "potential.sigma = " << format_real(p.sigma) << '\n'
      << "potential.A = " << format_real(p.lower_bound_A) << '\n'
      << "potential.B = " << format_real(p.shift_B) << '\n'
      << "physics.M = " << format_real(c.scheme.mobility) << '\n'
      << "physics.epsilon = " << format_real(c.scheme.epsilon) << '\n'
      << "time.dt = " << format_real(c.scheme.dt) << '\n'
      << "time.T = " << format_real(c.final_time) << '\n'
      << "time.snapshot_every = " << c.snapshot_every << '\n'
      << "pcg.rel_tol = " << format_real(c.scheme.pcg.rel_tol) << '\n'
      << "pcg.abs_tol = " << format_real(c.scheme.pcg.abs_tol) << '\n'
      << "pcg.max_iters = " << c.scheme.pcg.max_iters << '\n'
      << "ic.kind = " << to_string(c.ic.kind) << '\n'
      << "ic.amplitude = " << format_real(c.ic.amplitude) << '\n'
      << "ic.mean = " << format_real(c.ic.mean) << '\n';
  if (c.ic.seed) out << "ic.seed = " << *c.ic.seed << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  return out.str();
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_real(item);
    if (!v) throw ConfigError("invalid number '" + trim(item) + "' in list '" + text + "'");
    out.push_back(*v);
  }
  return out;
}

Field make_initial_condition(const InitialCondition& ic, const Grid& grid, double epsilon) {
  const double two_pi = 2.0 * std::numbers::pi;
  switch (ic.kind) {
  case InitialKind::CosineSum: {
    // Low modes only; |shape| <= 1.
    return Field::from_function(grid, [&](double x, double y) {
      const double a = two_pi * x / grid.length(0);
      if (grid.dim() == 1) return ic.mean + ic.amplitude * (std::cos(a) + 0.5 * std::sin(2.0 * a)) / 1.5;
      const double b = two_pi * y / grid.length(1);
      const double shape = (std::cos(a) + std::cos(b) + 0.5 * std::cos(2.0 * a - b)) / 2.5;
      return ic.mean + ic.amplitude * shape;
    });
  }
  case InitialKind::TanhProfile: {
    const double width = std::sqrt(2.0) * epsilon;
    return Field::from_function(grid, [&](double x, double y) {
      if (grid.dim() == 1) {
        const double L = grid.length(0);
        return ic.mean + ic.amplitude * std::tanh((0.25 * L - std::abs(x - 0.5 * L)) / width);
      }
      const double dx = x - 0.5 * grid.length(0);
      const double dy = y - 0.5 * grid.length(1);
      const double radius = 0.25 * std::min(grid.length(0), grid.length(1));
      return ic.mean + ic.amplitude * std::tanh((radius - std::hypot(dx, dy)) / width);
    });
  }
  case InitialKind::SeededNoise: {
    if (!ic.seed) throw ConfigError("seeded-noise initial condition requires a seed");
    std::mt19937_64 rng(*ic.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field out(grid);
    for (double& v : out.values()) v = ic.mean + ic.amplitude * dist(rng);
    return out;
  }
  }
  throw ConfigError("unknown initial condition kind");
}

} // namespace ieq
