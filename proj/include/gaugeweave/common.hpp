#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gaugeweave {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

/// Physical constants of a run. Everything internal assumes natural units;
/// these knobs exist so formulas that carry hbar/m/q stay symbolic.
struct Units {
    double hbar = 1.0;
    double mass = 1.0;
    double charge = 1.0;
};

// Error taxonomy. Every failure mode a caller can act on has its own type;
// the CLI maps them to nonzero exits by name.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GAUGEWEAVE_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                              \
        explicit Name(const std::string& what = #Name) : Error(what) {} \
    }

GAUGEWEAVE_DEFINE_ERROR(NonHermitianInput);
GAUGEWEAVE_DEFINE_ERROR(ZeroVector);
GAUGEWEAVE_DEFINE_ERROR(DimensionMismatch);
GAUGEWEAVE_DEFINE_ERROR(DegenerateBand);
GAUGEWEAVE_DEFINE_ERROR(GridTooCoarse);
GAUGEWEAVE_DEFINE_ERROR(OpenBoundaryUnsupported);
GAUGEWEAVE_DEFINE_ERROR(PathOffGrid);
GAUGEWEAVE_DEFINE_ERROR(VanishingOverlap);
GAUGEWEAVE_DEFINE_ERROR(PostSelectionOrthogonal);
GAUGEWEAVE_DEFINE_ERROR(NodeMasked);
GAUGEWEAVE_DEFINE_ERROR(NodeOnPath);
GAUGEWEAVE_DEFINE_ERROR(ParameterStateUndefined);
GAUGEWEAVE_DEFINE_ERROR(StepTooLarge);
GAUGEWEAVE_DEFINE_ERROR(NonAdiabatic);
GAUGEWEAVE_DEFINE_ERROR(InsideSolenoid);
GAUGEWEAVE_DEFINE_ERROR(PathCrossesSolenoid);
GAUGEWEAVE_DEFINE_ERROR(ConfigError);

#undef GAUGEWEAVE_DEFINE_ERROR

/// Reduce an angle to the principal branch (-pi, pi].
inline double wrap_angle(double x) {
    double y = std::remainder(x, 2.0 * pi);
    if (y <= -pi) y += 2.0 * pi;
    return y;
}

/// Distance between two angles modulo 2*pi.
inline double angle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

/// Unit phase factor z/|z|. Used to strip phases without calling arg/exp,
/// which keeps gauge cancellations exact at the level of complex products.
inline cplx unit_phase(cplx z) {
    double a = std::abs(z);
    if (a == 0.0) throw VanishingOverlap("unit_phase: zero modulus");
    return z / a;
}

}  // namespace gaugeweave
