#include "adiagrover/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace adiagrover {

std::string to_string(FitModel model) {
  return model == FitModel::Exponential ? "exponential" : "powerlaw";
}

namespace {

// ordinary least squares z = c0 + c1*x; returns (c0, c1, r^2 on (x, z))
struct LineFit {
  double intercept;
  double slope;
  double r_squared;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& z) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit needs at least two points");
  double sx = 0.0, sz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sz += z[i];
  }
  const double mx = sx / double(n), mz = sz / double(n);
  double sxx = 0.0, sxz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxz += (x[i] - mx) * (z[i] - mz);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit abscissae are all identical");
  const double slope = sxz / sxx;
  const double intercept = mz - slope * mx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = z[i] - (intercept + slope * x[i]);
    ss_res += resid * resid;
    ss_tot += (z[i] - mz) * (z[i] - mz);
  }
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return LineFit{intercept, slope, r2};
}

// floor avoids log of zero or slightly negative round-off values
std::vector<double> log_clamped(const std::vector<double>& y) {
  std::vector<double> z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = std::log(std::max(y[i], 1e-16));
  return z;
}

}  // namespace

FitResult fit_exponential(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
  const LineFit line = fit_line(t, log_clamped(y));
  return FitResult{FitModel::Exponential, std::exp(line.intercept), -line.slope, line.r_squared};
}

FitResult fit_powerlaw(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
  std::vector<double> log_t(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) throw std::invalid_argument("powerlaw fit needs positive abscissae");
    log_t[i] = std::log(t[i]);
  }
  const LineFit line = fit_line(log_t, log_clamped(y));
  return FitResult{FitModel::PowerLaw, std::exp(line.intercept), -line.slope, line.r_squared};
}

}  // namespace adiagrover
