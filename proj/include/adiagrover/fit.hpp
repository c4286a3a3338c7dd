#pragma once

#include <string>
#include <vector>

namespace adiagrover {

enum class FitModel { Exponential, PowerLaw };

std::string to_string(FitModel model);

/// Result of a least-squares fit performed on log-transformed coordinates;
/// r_squared refers to those transformed coordinates.
struct FitResult {
  FitModel model;
  double amplitude = 0.0;          // A
  double rate_or_exponent = 0.0;   // eta for A*exp(-eta*T), p for A*T^-p
  double r_squared = 0.0;
};

/// y = A exp(-eta T); linear regression of log y against T.
FitResult fit_exponential(const std::vector<double>& t, const std::vector<double>& y);

/// y = A T^-p; linear regression of log y against log T.
FitResult fit_powerlaw(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace adiagrover
