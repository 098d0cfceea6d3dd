#include "ranknexus/embed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ranknexus/error.hpp"

namespace ranknexus::embed {

namespace {

void CheckDims(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double Dot(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

double Norm(std::span<const float> a) { return std::sqrt(Dot(a, a)); }

double CosineFromParts(double dot, double norm_a, double norm_b) {
  return std::clamp(dot / (norm_a * norm_b), -1.0, 1.0);
}

double CosineSim(std::span<const float> a, std::span<const float> b) {
  CheckDims(a, b);
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of an all-zero vector");
  }
  return CosineFromParts(Dot(a, b), na, nb);
}

double EuclideanDist(std::span<const float> a, std::span<const float> b) {
  CheckDims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace ranknexus::embed
