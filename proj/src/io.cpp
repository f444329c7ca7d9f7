#include "ieq/io.hpp"

#include "ieq/errors.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace ieq {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write '" + path.string() + "'");
  return out;
}

std::vector<double> split_reals(const std::string& line, const std::filesystem::path& path) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw ConfigError("snapshot '" + path.string() + "': bad value '" + item + "'");
    }
  }
  return out;
}

std::string rate_entry(const char* name, const RateFit& fit) {
  if (!fit.defined) return std::string(name) + "=n/a";
  return std::string(name) + "=" + format_real(fit.rate);
}

} // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(const std::filesystem::path& path, const Field& field) {
  std::ofstream out = open_out(path);
  const Grid& g = field.grid();
  if (g.dim() == 1) {
    out << "x,value\n";
    for (int i = 0; i < g.points(0); ++i) {
      out << format_real(g.coord(0, i)) << ',' << format_real(field[i]) << '\n';
    }
    return;
  }
  out << "# grid " << g.points(0) << ' ' << g.points(1) << ' ' << format_real(g.length(0)) << ' '
      << format_real(g.length(1)) << '\n';
  const int n1 = g.points(1);
  for (int i = 0; i < g.points(0); ++i) {
    for (int j = 0; j < n1; ++j) {
      if (j) out << ',';
      out << format_real(field[static_cast<std::size_t>(i) * n1 + j]);
    }
    out << '\n';
  }
}

Field read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open snapshot '" + path.string() + "'");
  std::string header;
  std::getline(in, header);
  std::string line;
  if (header == "x,value") {
    std::vector<double> xs, values;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto row = split_reals(line, path);
      if (row.size() != 2) throw ConfigError("snapshot '" + path.string() + "': expected x,value");
      xs.push_back(row[0]);
      values.push_back(row[1]);
    }
    if (xs.size() < 2) throw ConfigError("snapshot '" + path.string() + "': too few rows");
    const double h = xs[1] - xs[0];
    return Field(Grid::line(static_cast<int>(xs.size()), h * static_cast<double>(xs.size())),
                 std::move(values));
  }
  std::istringstream hs(header);
  std::string hash, word;
  int n0 = 0, n1 = 0;
  double l0 = 0.0, l1 = 0.0;
  if (!(hs >> hash >> word >> n0 >> n1 >> l0 >> l1) || hash != "#" || word != "grid") {
    throw ConfigError("snapshot '" + path.string() + "': unrecognized header");
  }
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = split_reals(line, path);
    if (static_cast<int>(row.size()) != n1) {
      throw ConfigError("snapshot '" + path.string() + "': row width mismatch");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return Field(Grid::plane(n0, n1, l0, l1), std::move(values));
}

SeriesWriter::SeriesWriter(const std::filesystem::path& path) : out_(open_out(path)) {
  out_ << "step,t,E_modified,E_original,mass,pcg_iterations,pcg_residual,dissipation_defect,"
          "max_abs_phi\n";
}

void SeriesWriter::append(long step, double t, const StepReport& r) {
  out_ << step << ',' << format_real(t) << ',' << format_real(r.energy_modified) << ','
       << format_real(r.energy_original) << ',' << format_real(r.mass) << ',' << r.pcg_iterations
       << ',' << format_real(r.pcg_residual) << ',' << format_real(r.dissipation_defect) << ','
       << format_real(r.max_abs_phi) << '\n';
  out_.flush();
}

std::string format_rates(const ConvergenceReport& r) {
  std::string s = "# rates " + rate_entry("phi_l2", r.rate_phi_l2) + ' ' +
                  rate_entry("phi_h1", r.rate_phi_h1) + ' ' + rate_entry("U_l2", r.rate_U_l2) +
                  ' ' + rate_entry("w_acc", r.rate_w) + ' ' + rate_entry("combined", r.rate_combined);
  s += " r2_combined=" + (r.rate_combined.defined ? format_real(r.rate_combined.r_squared) : "n/a");
  s += r.inconclusive ? " status=inconclusive" : " status=ok";
  return s;
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& r) {
  std::ofstream out = open_out(path);
  out << "dt,err_phi_l2,err_phi_h1,err_U_l2,err_w_acc\n";
  for (std::size_t i = 0; i < r.dts.size(); ++i) {
    out << format_real(r.dts[i]) << ',' << format_real(r.errors_phi_l2[i]) << ','
        << format_real(r.errors_phi_h1[i]) << ',' << format_real(r.errors_U_l2[i]) << ','
        << format_real(r.errors_w_integrated[i]) << '\n';
  }
  out << format_rates(r) << '\n';
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out = open_out(path);
  out << "dt,steps,max_energy_increase,tolerance,max_relative_defect,pass\n";
  for (const SweepRow& row : rows) {
    out << format_real(row.dt) << ',' << row.steps << ',' << format_real(row.max_energy_increase)
        << ',' << format_real(row.tolerance) << ',' << format_real(row.max_relative_defect) << ','
        << (row.pass ? 1 : 0) << '\n';
  }
}

} // namespace ieq
