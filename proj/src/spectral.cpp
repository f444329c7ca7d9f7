#include "ieq/spectral.hpp"

#include "ieq/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

namespace ieq {

namespace {

using Complex = std::complex<double>;

// Plans for one grid shape plus the |k|^2 table of the half spectrum.
// Plans are built with FFTW_UNALIGNED so the new-array execute functions
// accept any std::vector storage; execution on distinct arrays is thread-safe.
class SpectralPlan {
public:
  explicit SpectralPlan(const Grid& grid) {
    const int n0 = grid.points(0);
    const int n1 = grid.dim() == 2 ? grid.points(1) : 1;
    real_size_ = grid.size();
    half_last_ = (grid.dim() == 2 ? n1 : n0) / 2 + 1;
    complex_size_ = grid.dim() == 2 ? static_cast<std::size_t>(n0) * half_last_ : half_last_;

    double* in = fftw_alloc_real(real_size_);
    fftw_complex* out = fftw_alloc_complex(complex_size_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (grid.dim() == 1) {
      forward_ = fftw_plan_dft_r2c_1d(n0, in, out, flags);
      inverse_ = fftw_plan_dft_c2r_1d(n0, out, in, flags);
    } else {
      forward_ = fftw_plan_dft_r2c_2d(n0, n1, in, out, flags);
      inverse_ = fftw_plan_dft_c2r_2d(n0, n1, out, in, flags);
    }
    fftw_free(in);
    fftw_free(out);

    k2_.resize(complex_size_);
    weight_.resize(complex_size_);
    const double two_pi = 2.0 * std::numbers::pi;
    if (grid.dim() == 1) {
      const double scale = two_pi / grid.length(0);
      for (int j = 0; j < half_last_; ++j) {
        const double k = scale * j;
        k2_[j] = k * k;
        weight_[j] = (j == 0 || 2 * j == n0) ? 1.0 : 2.0;
      }
    } else {
      const double s0 = two_pi / grid.length(0);
      const double s1 = two_pi / grid.length(1);
      for (int i = 0; i < n0; ++i) {
        const int ki = 2 * i <= n0 ? i : i - n0;
        for (int j = 0; j < half_last_; ++j) {
          const double kx = s0 * ki;
          const double ky = s1 * j;
          const std::size_t idx = static_cast<std::size_t>(i) * half_last_ + j;
          k2_[idx] = kx * kx + ky * ky;
          weight_[idx] = (j == 0 || 2 * j == n1) ? 1.0 : 2.0;
        }
      }
    }
  }

  ~SpectralPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }

  SpectralPlan(const SpectralPlan&) = delete;
  SpectralPlan& operator=(const SpectralPlan&) = delete;

  std::vector<Complex> forward(const Field& u) const {
    std::vector<Complex> spec(complex_size_);
    // r2c preserves its input for out-of-place plans.
    fftw_execute_dft_r2c(forward_, const_cast<double*>(u.values().data()),
                         reinterpret_cast<fftw_complex*>(spec.data()));
    return spec;
  }

  // Consumes the spectrum (c2r overwrites its input) and normalizes by 1/N.
  Field inverse(const Grid& grid, std::vector<Complex> spec) const {
    Field out(grid);
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(spec.data()),
                         out.values().data());
    out *= 1.0 / static_cast<double>(real_size_);
    return out;
  }

  const std::vector<double>& k2() const { return k2_; }
  const std::vector<double>& weight() const { return weight_; }
  std::size_t real_size() const { return real_size_; }

private:
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
  std::size_t real_size_ = 0;
  std::size_t complex_size_ = 0;
  int half_last_ = 0;
  std::vector<double> k2_;
  std::vector<double> weight_;
};

const SpectralPlan& plan_for(const Grid& grid) {
  using Key = std::tuple<int, int, int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<SpectralPlan>> cache;

  const Key key{grid.dim(), grid.points(0), grid.dim() == 2 ? grid.points(1) : 1, grid.length(0),
                grid.dim() == 2 ? grid.length(1) : 1.0};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<SpectralPlan>(grid)).first;
  return *it->second;
}

// Weighted sum over the half spectrum equals the full-spectrum sum.
double weighted_power(const SpectralPlan& plan, const std::vector<Complex>& spec, bool with_k2) {
  const auto& k2 = plan.k2();
  const auto& w = plan.weight();
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    sum += w[i] * (with_k2 ? k2[i] : 1.0) * std::norm(spec[i]);
  }
  return sum;
}

} // namespace

Field apply_symbol(const Field& u, const std::function<double(double)>& symbol) {
  const SpectralPlan& plan = plan_for(u.grid());
  auto spec = plan.forward(u);
  const auto& k2 = plan.k2();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= symbol(k2[i]);
  return plan.inverse(u.grid(), std::move(spec));
}

Field laplacian(const Field& u) {
  return apply_symbol(u, [](double k2) { return -k2; });
}

Field inv_neg_laplacian(const Field& u) {
  const double scale = norm_linf(u);
  if (std::abs(mean(u)) > 1e-10 * scale) {
    throw PreconditionError("inv_neg_laplacian: input is not mean-zero");
  }
  return apply_symbol(u, [](double k2) { return k2 > 0.0 ? 1.0 / k2 : 0.0; });
}

double seminorm_h1(const Field& u) {
  const SpectralPlan& plan = plan_for(u.grid());
  const auto spec = plan.forward(u);
  const double n = static_cast<double>(plan.real_size());
  return std::sqrt(u.grid().cell_volume() / n * weighted_power(plan, spec, true));
}

double spectral_norm_l2(const Field& u) {
  const SpectralPlan& plan = plan_for(u.grid());
  const auto spec = plan.forward(u);
  const double n = static_cast<double>(plan.real_size());
  return std::sqrt(u.grid().cell_volume() / n * weighted_power(plan, spec, false));
}

} // namespace ieq
