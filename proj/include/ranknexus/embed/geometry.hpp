#pragma once

#include <span>

namespace ranknexus::embed {

/// Inner product accumulated in double, strictly left to right.
double Dot(std::span<const float> a, std::span<const float> b);
double Norm(std::span<const float> a);

/// dot / (norm_a * norm_b) clamped to [-1, 1]. Shared by every cosine path
/// so that incremental and from-scratch evaluations agree bit for bit.
double CosineFromParts(double dot, double norm_a, double norm_b);

/// (a.b) / (|a| |b|). Throws DimensionMismatch, ZeroVector.
double CosineSim(std::span<const float> a, std::span<const float> b);

/// |a - b|. Throws DimensionMismatch.
double EuclideanDist(std::span<const float> a, std::span<const float> b);

}  // namespace ranknexus::embed
