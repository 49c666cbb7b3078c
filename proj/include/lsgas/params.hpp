#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsgas {

/// Physical parameters of one model instance: Poisson intensity nu,
/// particle density rho, inverse temperature beta, particle number N.
/// The simulation window has length L = N / rho.
struct ModelParams {
  double nu;
  double rho;
  double beta;
  std::uint64_t n_particles;

  ModelParams(double nu_, double rho_, double beta_, std::uint64_t n)
      : nu(nu_), rho(rho_), beta(beta_), n_particles(n) {
    if (!(nu > 0.0)) throw std::invalid_argument("ModelParams: nu must be > 0");
    if (!(rho > 0.0)) throw std::invalid_argument("ModelParams: rho must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("ModelParams: beta must be > 0");
    if (n_particles < 1)
      throw std::invalid_argument("ModelParams: n_particles must be >= 1");
  }

  double window_length() const noexcept {
    return static_cast<double>(n_particles) / rho;
  }

  ModelParams with_particles(std::uint64_t n) const {
    return ModelParams(nu, rho, beta, n);
  }

  bool operator==(const ModelParams&) const = default;
};

}  // namespace lsgas
