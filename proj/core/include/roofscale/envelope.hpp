#pragma once

#include <vector>

namespace roofscale {

// Lower convex envelope of the graph points (x[i], y[i]), evaluated back at
// every x[i]. x must be sorted non-decreasing (std::invalid_argument
// otherwise, or on length mismatch / empty input).
std::vector<double> lower_envelope(const std::vector<double>& x,
                                   const std::vector<double>& y);

// Indices of the lower-hull vertices, left to right. Same preconditions.
std::vector<int> lower_hull_vertices(const std::vector<double>& x,
                                     const std::vector<double>& y);

struct PlanePoint {
  double x;
  double y;
  double z;
};

// Lower convex envelope of z over the (x, y) plane, evaluated back at every
// input point: env[i] = max over lower faces of the 3-D convex hull of the
// supporting-plane value at (x_i, y_i). Throws std::invalid_argument unless
// at least 3 points have non-collinear (x, y) projections.
std::vector<double> lower_envelope_2d(const std::vector<PlanePoint>& pts);

}  // namespace roofscale
