#include "roofscale/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

#include "roofscale/parallel.hpp"

namespace roofscale {

namespace {

void check_sorted(const std::vector<double>& x,
                  const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("need equally many x and y, at least one");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) {
      throw std::invalid_argument("samples must be sorted by x");
    }
  }
}

}  // namespace

std::vector<int> lower_hull_vertices(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  check_sorted(x, y);
  std::vector<int> hull;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    // Among samples sharing an abscissa only the lowest matters.
    if (!hull.empty() && x[hull.back()] == x[i]) {
      if (y[i] >= y[hull.back()]) continue;
      hull.pop_back();
    }
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull[hull.size() - 1];
      // Walking the lower hull left to right turns counterclockwise; pop b
      // whenever a-b-i turns clockwise or runs straight.
      const double cross = (x[b] - x[a]) * (y[i] - y[a]) -
                           (x[i] - x[a]) * (y[b] - y[a]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

std::vector<double> lower_envelope(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  const std::vector<int> hull = lower_hull_vertices(x, y);
  std::vector<double> env(x.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (seg + 1 < hull.size() && x[hull[seg + 1]] < x[i]) ++seg;
    const int a = hull[seg];
    if (seg + 1 == hull.size() || x[hull[seg + 1]] == x[a]) {
      env[i] = y[a];
      continue;
    }
    const int b = hull[seg + 1];
    const double t = (x[i] - x[a]) / (x[b] - x[a]);
    env[i] = y[a] + t * (y[b] - y[a]);
  }
  return env;
}

namespace {

struct Face {
  int a, b, c;
  double nx, ny, nz;  // outward normal
  double off;         // n . x = off on the face plane
  bool alive = true;
};

double dist(const Face& f, const PlanePoint& p) {
  return f.nx * p.x + f.ny * p.y + f.nz * p.z - f.off;
}

Face make_face(int a, int b, int c, const std::vector<PlanePoint>& pts,
               const PlanePoint& interior) {
  const PlanePoint& A = pts[a];
  const PlanePoint& B = pts[b];
  const PlanePoint& C = pts[c];
  const double ux = B.x - A.x, uy = B.y - A.y, uz = B.z - A.z;
  const double vx = C.x - A.x, vy = C.y - A.y, vz = C.z - A.z;
  Face f;
  f.a = a;
  f.b = b;
  f.c = c;
  f.nx = uy * vz - uz * vy;
  f.ny = uz * vx - ux * vz;
  f.nz = ux * vy - uy * vx;
  const double norm = std::sqrt(f.nx * f.nx + f.ny * f.ny + f.nz * f.nz);
  if (norm > 0.0) {
    f.nx /= norm;
    f.ny /= norm;
    f.nz /= norm;
  }
  f.off = f.nx * A.x + f.ny * A.y + f.nz * A.z;
  if (f.nx * interior.x + f.ny * interior.y + f.nz * interior.z > f.off) {
    std::swap(f.b, f.c);
    f.nx = -f.nx;
    f.ny = -f.ny;
    f.nz = -f.nz;
    f.off = -f.off;
  }
  return f;
}

}  // namespace

std::vector<double> lower_envelope_2d(const std::vector<PlanePoint>& input) {
  // Three points with non-collinear (x, y) projections seed the hull.
  const int n = static_cast<int>(input.size());
  int i0 = 0, i1 = -1, i2 = -1;
  double best1 = 0.0;
  for (int i = 1; i < n; ++i) {
    const double d = std::hypot(input[i].x - input[i0].x,
                                input[i].y - input[i0].y);
    if (d > best1) {
      best1 = d;
      i1 = i;
    }
  }
  double best2 = 0.0;
  if (i1 >= 0) {
    const double ux = input[i1].x - input[i0].x;
    const double uy = input[i1].y - input[i0].y;
    for (int i = 0; i < n; ++i) {
      const double area = std::abs(ux * (input[i].y - input[i0].y) -
                                   uy * (input[i].x - input[i0].x));
      if (area > best2) {
        best2 = area;
        i2 = i;
      }
    }
  }
  if (i1 < 0 || i2 < 0 || best2 <= 1e-18) {
    throw std::invalid_argument(
        "need at least 3 samples with non-collinear (x, y) positions");
  }

  // Artificial apex far above the data keeps the upper hull trivial: every
  // face that does not touch the apex is a lower-envelope candidate.
  std::vector<PlanePoint> pts = input;
  double zmin = input[0].z, zmax = input[0].z, span = 1.0;
  double cx = 0.0, cy = 0.0;
  for (const PlanePoint& p : input) {
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
    span = std::max({span, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    cx += p.x;
    cy += p.y;
  }
  cx /= n;
  cy /= n;
  const int apex = n;
  pts.push_back(PlanePoint{cx, cy, zmax + 4.0 * (zmax - zmin) + 4.0});

  const double eps = 1e-12 * std::max(span, pts[apex].z);
  const PlanePoint interior{
      0.25 * (pts[i0].x + pts[i1].x + pts[i2].x + pts[apex].x),
      0.25 * (pts[i0].y + pts[i1].y + pts[i2].y + pts[apex].y),
      0.25 * (pts[i0].z + pts[i1].z + pts[i2].z + pts[apex].z)};

  std::vector<Face> faces;
  faces.push_back(make_face(i0, i1, i2, pts, interior));
  faces.push_back(make_face(i0, i1, apex, pts, interior));
  faces.push_back(make_face(i0, i2, apex, pts, interior));
  faces.push_back(make_face(i1, i2, apex, pts, interior));

  std::vector<int> visible;
  std::map<std::pair<int, int>, int> edge_count;
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2) continue;
    visible.clear();
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
      if (faces[fi].alive && dist(faces[fi], pts[p]) > eps) {
        visible.push_back(fi);
      }
    }
    if (visible.empty()) continue;  // inside the current hull
    // Horizon: directed edges of visible faces whose reverse never appears.
    edge_count.clear();
    for (const int fi : visible) {
      const Face& f = faces[fi];
      const int e[3][2] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
      for (const auto& ed : e) edge_count[{ed[0], ed[1]}] = fi;
      faces[fi].alive = false;
    }
    for (const auto& [edge, fi] : edge_count) {
      if (edge_count.count({edge.second, edge.first})) continue;  // interior
      faces.push_back(make_face(edge.first, edge.second, p, pts, interior));
    }
  }

  // Evaluate the envelope: max of lower-face plane values at each point.
  struct Plane {
    double gx, gy, g0;
  };
  std::vector<Plane> lower;
  for (const Face& f : faces) {
    if (!f.alive) continue;
    if (f.a == apex || f.b == apex || f.c == apex) continue;
    if (f.nz >= -1e-9) continue;  // vertical or upward face (unit normal)
    lower.push_back(Plane{-f.nx / f.nz, -f.ny / f.nz, f.off / f.nz});
  }
  if (lower.empty()) {
    throw std::runtime_error("lower envelope has no faces");
  }
  std::vector<double> env(n);
  parallel_for(n, [&](int i) {
    double best = -1e300;
    for (const Plane& pl : lower) {
      const double v = pl.g0 + pl.gx * input[i].x + pl.gy * input[i].y;
      if (v > best) best = v;
    }
    env[i] = best;
  });
  return env;
}

}  // namespace roofscale
