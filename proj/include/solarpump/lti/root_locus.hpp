#pragma once

#include <vector>

#include "solarpump/lti/transfer_function.hpp"

namespace solarpump::lti {

struct LocusPoint {
    double gain;
    std::vector<cplx> poles;  // branch order is stable across gains
};

// Closed-loop poles of den(G) + K num(G) for each gain, unity feedback.
// Branches are paired with the previous gain's poles by nearest neighbour.
std::vector<LocusPoint> root_locus(const TransferFunction& G, const std::vector<double>& gains);

}  // namespace solarpump::lti
