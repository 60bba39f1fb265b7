#pragma once

#include <optional>

#include "bhecho/trace.hpp"

namespace bhecho {

struct BackflowInterval {
    double t_start = 0.0, t_end = 0.0;
    double gain = 0.0;  // sqrtL(t_end) - sqrtL(t_start) > tol
};

// Backflow intervals and the summed echo gains over one trace.
struct NMReport {
    std::vector<BackflowInterval> intervals;
    double N = 0.0;
    double horizon = 0.0;
    double tol = 1e-10;
    Provenance source = Provenance::ed;
};

struct SweepPoint {
    double U_over_J = 0.0;
    double N = 0.0;
    double N_normalized = 0.0;
    std::optional<double> dn1_avg;
    double horizon = 0.0;
    std::string error;  // nonempty marks a failed point
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double N_max = 0.0;
    bool all_zero = false;  // flagged when nothing to normalize against
};

// Gamma(t) = -int_0^t gamma, composite trapezoid on the uniform grid;
// exact for constant rates, Gamma(0) = 0.
std::vector<double> integrate_rate(const std::vector<double>& gamma, double dt);

// Variant taking explicit sample times; rejects non-uniform grids.
std::vector<double> integrate_rate(const std::vector<double>& t, const std::vector<double>& gamma);

// Pointwise exp(Gamma). Values above 1 signal perturbation-theory
// breakdown; they are preserved here and only clipped (and flagged) by the
// reporting layer.
EchoTrace echo_from_gamma(const std::vector<double>& Gamma, const TimeGrid& grid,
                          Provenance tag);

// Maximal strictly-increasing runs of the sampled echo (local minimum to
// the next local maximum); rises of at most `tol` are ignored.
NMReport blp_measure(const EchoTrace& echo, double tol = 1e-10);

// Time average of a density-fluctuation series over [0, T] (trapezoid);
// T is snapped to the nearest grid point and must lie within the trace.
double average_density_offset(const std::vector<double>& dn1, const TimeGrid& grid, double T);

// Normalize a sweep by its maximum N; an all-zero sweep is flagged and
// left at zero.
SweepResult normalize_sweep(std::vector<SweepPoint> points);

}  // namespace bhecho
