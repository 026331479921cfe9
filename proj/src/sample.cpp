#include "kgen/sample.hpp"

#include <cmath>
#include <string>

#include "kgen/errors.hpp"

namespace kgen {

WeightedSample::WeightedSample(std::vector<double> values)
    : WeightedSample(values, std::vector<double>(values.size(), 1.0)) {}

WeightedSample::WeightedSample(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.empty()) throw DomainError("sample is empty");
  if (values_.size() != weights_.size()) {
    throw DomainError("sample has " + std::to_string(values_.size()) + " values but " +
                      std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("observation " + std::to_string(i + 1) + " is not a finite number");
    }
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw DomainError("weight of observation " + std::to_string(i + 1) +
                        " must be finite and nonnegative");
    }
    total_weight_ += weights_[i];
  }
  if (!(total_weight_ > 0.0)) throw DomainError("total sample weight must be positive");
}

double WeightedSample::weighted_mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += weights_[i] * values_[i];
  return acc / total_weight_;
}

double WeightedSample::effective_size() const {
  double sq = 0.0;
  for (double w : weights_) sq += w * w;
  return total_weight_ * total_weight_ / sq;
}

WeightedSample WeightedSample::scaled(double factor) const {
  std::vector<double> v(values_);
  for (auto& x : v) x *= factor;
  return {std::move(v), weights_};
}

}  // namespace kgen
