#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bhecho/common.hpp"

namespace bhecho {

enum class Provenance { ed, sf_analytic, mott_analytic };

const char* to_string(Provenance p);

// Uniform grid t_m = m * dt, m = 0..steps (steps+1 samples).
struct TimeGrid {
    double dt = 0.02;
    std::size_t steps = 0;

    std::size_t samples() const { return steps + 1; }
    double time(std::size_t m) const { return dt * static_cast<double>(m); }
    double horizon() const { return time(steps); }

    // Smallest grid covering [0, T].
    static TimeGrid cover(double dt, double T);
};

struct EchoTrace {
    TimeGrid grid;
    std::vector<double> sqrtL;
    Provenance tag = Provenance::ed;

    // sqrtL(0) = 1 exactly, all samples in [0,1] within tol
    void validate(double tol = 1e-8) const;
};

// Time series of the dephasing rate, its integral Gamma = -int gamma, and
// the echo exp(Gamma); the common currency between the analytic models,
// exact diagonalization and the non-Markovianity analyzer.
struct DephasingTrace {
    TimeGrid grid;
    std::vector<double> gamma;
    std::vector<double> Gamma;
    std::vector<double> sqrtL;
    std::optional<std::vector<double>> dn1;  // density fluctuation at site i0+1 (ED only)
    Provenance tag = Provenance::ed;
    std::vector<std::string> warnings;

    EchoTrace echo() const { return EchoTrace{grid, sqrtL, tag}; }
};

}  // namespace bhecho
