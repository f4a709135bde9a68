#include "uoi/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uoi {

namespace {

constexpr std::uint64_t kPositionsSlot = 1;
constexpr std::uint64_t kMagnitudesSlot = 2;
constexpr std::uint64_t kDesignSlot = 3;
constexpr std::uint64_t kNoiseSlot = 4;

// Shape constants behind the four magnitude distributions.
constexpr double kLaplaceScale = 0.5;       // decay rate of |beta|
constexpr double kExpIncreaseRate = 2.0;    // growth rate of the density
constexpr double kClusterLowCenter = 0.33;  // x beta_max
constexpr double kClusterHighCenter = 0.9;  // x beta_max
constexpr double kClusterWidth = 0.05;      // x beta_max

double truncated_laplace_magnitude(double lo, double hi, RngStream& rng) {
  // Inverse CDF of Exponential(kLaplaceScale) restricted to [lo, hi].
  const double f_lo = 1.0 - std::exp(-lo / kLaplaceScale);
  const double f_hi = 1.0 - std::exp(-hi / kLaplaceScale);
  const double u = f_lo + (f_hi - f_lo) * rng.uniform01();
  return -kLaplaceScale * std::log1p(-u);
}

double exponential_increase_magnitude(double lo, double hi, RngStream& rng) {
  // Density proportional to exp(+rate * x) on [lo, hi], by inverse CDF.
  const double e_lo = std::exp(kExpIncreaseRate * lo);
  const double e_hi = std::exp(kExpIncreaseRate * hi);
  const double u = rng.uniform01();
  return std::log(e_lo + u * (e_hi - e_lo)) / kExpIncreaseRate;
}

double clustered_positive_magnitude(double hi, RngStream& rng) {
  const double center = (rng.uniform01() < 0.5 ? kClusterLowCenter : kClusterHighCenter) * hi;
  const double width = kClusterWidth * hi;
  for (;;) {
    const double draw = center + width * rng.normal();
    if (draw > 0.0) return draw;
  }
}

}  // namespace

BetaDistribution beta_distribution_from_string(const std::string& name) {
  if (name == "laplacian-decay" || name == "laplacian") return BetaDistribution::laplacian_decay;
  if (name == "uniform") return BetaDistribution::uniform;
  if (name == "exponential-increase" || name == "exponential") {
    return BetaDistribution::exponential_increase;
  }
  if (name == "clustered-positive" || name == "clustered") {
    return BetaDistribution::clustered_positive;
  }
  throw std::invalid_argument("unknown coefficient distribution: " + name);
}

std::string to_string(BetaDistribution d) {
  switch (d) {
    case BetaDistribution::laplacian_decay: return "laplacian-decay";
    case BetaDistribution::uniform: return "uniform";
    case BetaDistribution::exponential_increase: return "exponential-increase";
    case BetaDistribution::clustered_positive: return "clustered-positive";
  }
  return "unknown";
}

void GeneratorSpec::validate() const {
  if (n < 1) throw std::invalid_argument("GeneratorSpec: n must be >= 1");
  if (p < 1) throw std::invalid_argument("GeneratorSpec: p must be >= 1");
  if (k < 0 || k > p) throw std::invalid_argument("GeneratorSpec: k must be in [0, p]");
  if (!(beta_min <= beta_max)) {
    throw std::invalid_argument("GeneratorSpec: beta_min must be <= beta_max");
  }
  if (beta_min < 0.0) throw std::invalid_argument("GeneratorSpec: beta_min must be >= 0");
  if (noise_multiplier < 0.0) {
    throw std::invalid_argument("GeneratorSpec: noise multiplier must be >= 0");
  }
}

CoefficientVector generate_beta(const GeneratorSpec& spec) {
  spec.validate();
  CoefficientVector beta;
  beta.values = Vector::Zero(spec.p);
  if (spec.k == 0) return beta;

  RngStream position_rng(derive_stream(spec.seed, kPositionsSlot));
  std::vector<int> order(static_cast<std::size_t>(spec.p));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < spec.k && i < spec.p - 1; ++i) {
    const int j = i + static_cast<int>(position_rng.uniform_below(
                          static_cast<std::uint64_t>(spec.p - i)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<int> positions(order.begin(), order.begin() + spec.k);
  std::sort(positions.begin(), positions.end());

  RngStream magnitude_rng(derive_stream(spec.seed, kMagnitudesSlot));
  for (int idx : positions) {
    double magnitude = 0.0;
    bool signed_draw = true;
    switch (spec.distribution) {
      case BetaDistribution::laplacian_decay:
        magnitude = truncated_laplace_magnitude(spec.beta_min, spec.beta_max, magnitude_rng);
        break;
      case BetaDistribution::uniform:
        magnitude = spec.beta_min + (spec.beta_max - spec.beta_min) * magnitude_rng.uniform01();
        break;
      case BetaDistribution::exponential_increase:
        magnitude = exponential_increase_magnitude(spec.beta_min, spec.beta_max, magnitude_rng);
        break;
      case BetaDistribution::clustered_positive:
        magnitude = clustered_positive_magnitude(spec.beta_max, magnitude_rng);
        signed_draw = false;
        break;
    }
    double value = magnitude;
    if (signed_draw && magnitude_rng.uniform01() < 0.5) value = -magnitude;
    beta.values(idx) = value;
  }
  return beta;
}

DataSet generate_dataset(const GeneratorSpec& spec, const CoefficientVector& beta) {
  spec.validate();
  if (beta.values.size() != spec.p) {
    throw std::invalid_argument("generate_dataset: beta length != p");
  }
  RngStream design_rng(derive_stream(spec.seed, kDesignSlot));
  DataSet data;
  data.features.resize(spec.n, spec.p);
  for (Eigen::Index j = 0; j < spec.p; ++j) {
    for (Eigen::Index i = 0; i < spec.n; ++i) {
      data.features(i, j) = design_rng.normal();
    }
  }
  data.response = data.features * beta.values;
  const double sigma_sq = spec.noise_multiplier * beta.values.cwiseAbs().sum();
  if (sigma_sq > 0.0) {
    RngStream noise_rng(derive_stream(spec.seed, kNoiseSlot));
    const double sigma = std::sqrt(sigma_sq);
    for (Eigen::Index i = 0; i < spec.n; ++i) {
      data.response(i) += sigma * noise_rng.normal();
    }
  }
  data.column_standardized = false;
  return data;
}

DataSet generate_classification_dataset(const GeneratorSpec& spec,
                                        const CoefficientVector& beta) {
  spec.validate();
  if (beta.values.size() != spec.p) {
    throw std::invalid_argument("generate_classification_dataset: beta length != p");
  }
  RngStream design_rng(derive_stream(spec.seed, kDesignSlot));
  DataSet data;
  data.features.resize(spec.n, spec.p);
  for (Eigen::Index j = 0; j < spec.p; ++j) {
    for (Eigen::Index i = 0; i < spec.n; ++i) {
      data.features(i, j) = design_rng.normal();
    }
  }
  RngStream label_rng(derive_stream(spec.seed, kNoiseSlot));
  data.response.resize(spec.n);
  const Vector logits = data.features * beta.values;
  for (Eigen::Index i = 0; i < spec.n; ++i) {
    const double prob = 1.0 / (1.0 + std::exp(-logits(i)));
    data.response(i) = label_rng.uniform01() < prob ? 1.0 : 0.0;
  }
  data.column_standardized = false;
  return data;
}

}  // namespace uoi
