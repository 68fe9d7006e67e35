#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "npspec/npops.hpp"

namespace npspec {

enum class SpectrumKind { Raw, Symmetrized };
enum class SobolevSpace { L2, HMinusHalf };

std::string_view to_string(SpectrumKind kind);

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;  // descending modulus, ties by descending real part
    double radius = 0.0;
    int mesh_size = 0;
    SpectrumKind kind = SpectrumKind::Raw;
};

/// Eigenvalues of K' acting in L^2(Sigma, ds).
SpectrumReport np_spectrum(const BoundaryOperatorMatrix& Kp);

/// Real spectrum of K' from the pencil (S K', S), using that S K' is self-adjoint.
/// S is first shifted by a dilation term so that it is negative definite, then the pencil
/// is restricted to the subspace where -S exceeds the measured asymmetry of the discrete
/// S K' (on smooth curves that is the whole space). Throws NumericalError if the shifted
/// form is indefinite beyond that tolerance.
SpectrumReport symmetrized_spectrum(const BoundaryOperatorMatrix& S, const BoundaryOperatorMatrix& Kp);

/// Index of the equilibrium eigenvalue (closest to 1/2).
int equilibrium_index(const SpectrumReport& report);

/// Eigenvalues with the equilibrium eigenvalue removed, order preserved.
std::vector<std::complex<double>> nontrivial_eigenvalues(const SpectrumReport& report);

/// Smallest |lambda - lambda_i| over the reported spectrum.
double distance_to_spectrum(const SpectrumReport& report, double lambda);

/// Essential spectral radius of K' on a curvilinear polygon with sharpest corner omega in (0, pi].
///   L2:          (1/2) sin(|pi - omega| / 2)
///   HMinusHalf:  |pi - omega| / (2 pi)
double ess_radius_polygon(double omega, SobolevSpace space);

void sort_spectrum(std::vector<std::complex<double>>& eigenvalues);

}  // namespace npspec
