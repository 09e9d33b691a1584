// Gauss-Hermite rules for the deterministic rate oracles.
#pragma once

#include <vector>

namespace pas4d {

// Nodes and weights for integrals of the form  int exp(-t^2) f(t) dt.
struct GaussHermite {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // positive, sum to sqrt(pi)
};

GaussHermite gauss_hermite(int n);

}  // namespace pas4d
