#pragma once

#include <array>
#include <vector>

#include "ric/grid.hpp"

namespace ric {

// Origin-symmetric convex body in the plane, stored as support values on m
// uniformly spaced directions (m even, >= 8).  The body is the intersection
// of the halfplanes <x, u_j> <= h_j.  Direction vectors for j >= m/2 are the
// exact negations of those for j < m/2, so the symmetry h[j] == h[j + m/2]
// survives floating point bit for bit.
struct SupportBody2D {
  int m = 0;
  std::vector<double> h;

  double angle(int j) const;
  std::array<double, 2> direction(int j) const;
  void validate() const;

  static SupportBody2D disc(int m, double radius);
  // Symmetrizes (averages antipodal samples) and convexifies: the stored
  // support values are recomputed as the true support function of the
  // halfplane intersection, so every constructed body is self-consistent.
  static SupportBody2D make(std::vector<double> support);
};

// Exact area of the halfplane intersection: the active constraints are the
// vertices of the convex hull of the dual points u_j / h_j, consecutive
// active lines intersect in the polygon's vertices, and the shoelace formula
// finishes the job.
double body_area(const SupportBody2D& k);

// The polar body. Its support function at u_i is max_j <u_i, u_j> / h_j, the
// exact support function of conv{ u_j / h_j }.
SupportBody2D polar_body(const SupportBody2D& k);

// Exact area of conv{ u_j / h_j } (the polar body) by hull + shoelace.
double polar_area(const SupportBody2D& k);

SupportBody2D scale_body(const SupportBody2D& k, double lambda);

// Volume-product facts for one body: |K| |K°| stays below the disc value
// pi^2, equivalently |K°| <= |(K*)°| where K* is the disc of area |K| (so
// |(K*)°| = pi^2 / |K| exactly).
struct SantaloSetReport {
  double area_k = 0.0;
  double area_polar = 0.0;
  double area_star_polar = 0.0;
  double product = 0.0;
  double bound = 0.0;  // pi^2
  bool pass_product = false;
  bool pass_star = false;
};

SantaloSetReport santalo_set_check(const SupportBody2D& k, double tol);

// Cells whose node lies in the body (all support constraints hold).
SetOnGrid rasterize(const SupportBody2D& k, const Axis& ax0, const Axis& ax1);

// True when the two masks on the same lattice differ only along a one-cell
// boundary layer: every disagreeing cell touches (Chebyshev-1) a boundary
// cell of the second mask.
bool masks_agree_within_one_layer(const SetOnGrid& a, const SetOnGrid& b);

}  // namespace ric
