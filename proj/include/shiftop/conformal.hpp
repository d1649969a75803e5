#pragma once

#include <vector>

#include "shiftop/geometry.hpp"

namespace shiftop {

// The shift operator r Lap(gbar) - (2 lam - n + 1) d_r - (lam - n + 1) (v'/v)
// for an affine (or constant) spectral parameter lam.
OperatorSeries shift_operator(const GeometryJets& g, const RatFunc& lam);
// r^(lam-n) o (Lap(g+) + (lam+1)(n-lam-1)) o r^(n-lam-1) at a rational lam.
OperatorSeries shift_operator_conjugated(const GeometryJets& g, const Rational& lam);
// S(lam) S(lam+1) ... S(lam+N-1); the identity for N = 0.
OperatorSeries iterated_shift(const GeometryJets& g, const RatFunc& lam, int N);
// -r d_r^2 + (2 lam - n - 1 - r tr) d_r - (n - lam) tr - r Lap(h_r), tr = v'/v.
OperatorSeries gz_operator(const GeometryJets& g, const RatFunc& lam);
// r (Lap_x + d_r^2) - (2 lam - n - 3) d_r on the upper half space.
OperatorSeries flat_shift_P(const Context& ctx, const RatFunc& lam);
// w^-1 o d_r o w
OperatorSeries ddr_w(const GeometryJets& g);
// Degenerate Laplacian for sigma = r and weight omega; needs J(gbar).
OperatorSeries degenerate_laplacian(const GeometryJets& g, const RatFunc& omega);

// Yamabe operator of gbar, Lap(gbar) - (n-1)/2 J(gbar); needs J(gbar).
OperatorSeries yamabe_bar(const GeometryJets& g);
// GJMS operators of gbar from the Poincare-Einstein metric:
// r^(-m-N) o prod_l (Lap(g+) + (m+l-1)(m-l)) o r^(m-N), m = (n+1)/2.
OperatorSeries gjms_bar(const GeometryJets& g, int N);
// GJMS operators of h: the Einstein product formula, or the generic N <= 2 formulas.
TangentialElement gjms_boundary(const GeometryJets& g, int N);

// delta_N for N <= 3 over the generic alphabet (Einstein: J is n mu).
BoundaryOperator delta_explicit(const GeometryJets& g, int N);
// iota^* S_N(lam + shift)
BoundaryOperator restricted_shift(const GeometryJets& g, const RatFunc& lam, int N);
// Residue families D_N(lam) obtained by renormalising restricted shift compositions.
BoundaryOperator residue_family(const GeometryJets& g, int N);

// Q-curvature: closed formulas (N <= 2) and the holographic formula.
ScalarPoly q_closed(const GeometryJets& g, int N);
Rational q_holographic_constant(int N);
ScalarPoly q_holographic(const GeometryJets& g, int N);

// Coefficient S^(k)(lam) of r^(k+1) in the d_r-free part of S(lam).
TangentialElement shift_coefficient(const GeometryJets& g, int k);
// T_0, T_2, ..., T_2Nmax from the shift recursion.
std::vector<TangentialElement> solution_operators(const GeometryJets& g, int Nmax);
TangentialElement residue_at(const TangentialElement& t, const Rational& point);
// 2^(2N-2) ((N-1)!)^2 sum_k S^(2N-2k-2)(n/2+N-2k-1) T_2k(n/2-N)
TangentialElement gjms_from_solution_operators(const GeometryJets& g, const std::vector<TangentialElement>& T, int N);

// Building blocks built from gbar GJMS operators (N <= 4).
OperatorSeries building_block(const GeometryJets& g, int N);
// Round sphere (mu = 1/2): (N-1)! N! (1 - r^2/4)^(-N-1) P_2(round), N >= 2.
OperatorSeries sphere_building_block(const GeometryJets& g, int N);
// R o ad(d_r^w): X -> r^-1 [d_r^w, X]
OperatorSeries r_ad(const GeometryJets& g, const OperatorSeries& x);
// Coefficients of (eta^2/4)^j, j <= jmax, of the holographic Laplacian generating series.
std::vector<OperatorSeries> holographic_series_blocks(const GeometryJets& g, int jmax);
std::vector<OperatorSeries> holographic_series_exp(const GeometryJets& g, int jmax);

}  // namespace shiftop
