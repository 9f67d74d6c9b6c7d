#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace coopaloha {

// Generating polynomial sum_k coeffs[k] x^k of a degree distribution.
class degree_polynomial {
 public:
  degree_polynomial() = default;
  explicit degree_polynomial(std::vector<double> coeffs);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  double sum() const noexcept;
  // sum_k k * coeffs[k], i.e. the derivative at x = 1.
  double mean() const noexcept;

 private:
  std::vector<double> coeffs_;
};

// Binomial(n, p) mass, computed in log space. The upper tail is dropped once
// its mass falls below 1e-12 and the remainder renormalized.
degree_polynomial binomial_distribution(std::uint64_t n, double p);

// L_i: number of transmissions of one user over T slots.
degree_polynomial variable_node_dist(std::uint64_t slots, double p);
// R_i: number of group members transmitting in one slot.
degree_polynomial observation_node_dist(std::uint64_t group_size, double p);

// d'(x) / d'(1). Throws when the mean degree is zero.
degree_polynomial edge_perspective(const degree_polynomial& d);

// Horner evaluation.
double eval(const degree_polynomial& d, double x);

// The generating function of Binomial(n, p) in closed form, (1 - p + p x)^n.
// This is what the density evolution uses on its hot path.
struct binomial_law {
  std::uint64_t n = 0;
  double p = 0.0;

  double operator()(double x) const noexcept;
  // Edge perspective of a binomial is Binomial(n - 1, p).
  binomial_law edge() const noexcept { return {n == 0 ? 0 : n - 1, p}; }
};

}  // namespace coopaloha
