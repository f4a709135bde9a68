#pragma once

#include "uoi/random.hpp"
#include "uoi/types.hpp"

#include <string>

namespace uoi {

enum class BetaDistribution {
  laplacian_decay,       // truncated Laplace magnitudes, random sign
  uniform,               // magnitudes uniform on [beta_min, beta_max], random sign
  exponential_increase,  // magnitude density ~ exp(+c|beta|), random sign
  clustered_positive,    // two narrow positive Gaussian clusters
};

BetaDistribution beta_distribution_from_string(const std::string& name);
std::string to_string(BetaDistribution d);

struct GeneratorSpec {
  int n = 0;  // samples
  int p = 0;  // total features
  int k = 0;  // nonzero coefficients
  BetaDistribution distribution = BetaDistribution::uniform;
  double noise_multiplier = 0.2;  // sigma^2 = multiplier * sum_j |beta_j|
  double beta_min = 0.1;
  double beta_max = 3.0;
  SeedSpec seed;

  void validate() const;
};

/// Exactly k nonzeros at seeded-random positions, magnitudes per the
/// distribution. Deterministic in the seed.
CoefficientVector generate_beta(const GeneratorSpec& spec);

/// X with i.i.d. standard normal entries; y = X beta + eps with
/// eps ~ N(0, sigma^2), sigma^2 = noise_multiplier * sum_j |beta_j|.
DataSet generate_dataset(const GeneratorSpec& spec,
                         const CoefficientVector& beta);

/// Binary response task: y_i ~ Bernoulli(sigmoid(x_i' beta)), X i.i.d.
/// standard normal. Used by the classification benchmark harness.
DataSet generate_classification_dataset(const GeneratorSpec& spec,
                                        const CoefficientVector& beta);

}  // namespace uoi
