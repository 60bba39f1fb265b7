#include "bhecho/params.hpp"

namespace bhecho {

void ModelParams::validate() const {
    if (J < 0.0) throw ConfigError("J must be >= 0");
    if (U < 0.0) throw ConfigError("U must be >= 0");
    if (Ue < 0.0) throw ConfigError("Ue must be >= 0");
    if (Ns < 1) throw ConfigError("Ns must be a positive integer");
    if (nbar < 1) throw ConfigError("nbar must be a positive integer");
    if (nmax < nbar + 1)
        throw ConfigError("nmax must be >= nbar + 1, otherwise the doublon sector is unrepresentable");
    const int site = impurity_site();
    if (site < 0 || site >= Ns) throw ConfigError("impurity site i0 out of range [0, Ns)");
}

std::string to_string(Boundary bc) {
    return bc == Boundary::open ? "open" : "periodic";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::open;
    if (s == "periodic") return Boundary::periodic;
    throw ConfigError("unknown boundary condition '" + s + "' (expected open|periodic)");
}

}  // namespace bhecho
