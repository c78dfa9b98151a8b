#pragma once

namespace gmesim {

/// Retarded-plus-advanced functional for two static masses a distance d apart
/// over [0, T]: 2 m1 m2 (T - d) / (4 pi d) when T > d, else 0.
double static_delta(double m1, double m2, double d, double T);

/// Hadamard functional for two static masses (epsilon -> 0):
/// (m1 m2 / pi^2) [ (T+d)/(2d) ln((T+d)/d) - (T-d)/(2d) ln(|T-d|/d) ].
double static_hadamard(double m1, double m2, double d, double T);

/// Retarded interaction energy of two static masses: -G m1 m2 / d.
double static_pair_energy(double m1, double m2, double d, double G);

}  // namespace gmesim
