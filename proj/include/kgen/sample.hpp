#pragma once

#include <cstddef>
#include <vector>

namespace kgen {

// Observations with nonnegative sampling weights. Construction checks equal
// lengths, finite values, finite nonnegative weights and a positive total.
class WeightedSample {
 public:
  explicit WeightedSample(std::vector<double> values);
  WeightedSample(std::vector<double> values, std::vector<double> weights);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return values_.size(); }
  double total_weight() const noexcept { return total_weight_; }
  double weighted_mean() const;
  // Kish effective sample size (sum w)^2 / sum w^2.
  double effective_size() const;

  WeightedSample scaled(double factor) const;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

}  // namespace kgen
