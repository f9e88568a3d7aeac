#include "solarpump/lti/root_locus.hpp"

#include <limits>

#include "solarpump/error.hpp"

namespace solarpump::lti {

std::vector<LocusPoint> root_locus(const TransferFunction& G, const std::vector<double>& gains) {
    if (gains.empty()) throw Error(ErrorKind::invalid_input, "root locus needs at least one gain");
    for (size_t i = 0; i < gains.size(); ++i)
        if (!(gains[i] > 0.0) || (i > 0 && !(gains[i] > gains[i - 1])))
            throw Error(ErrorKind::invalid_input, "root locus gains must be positive and ascending");

    std::vector<LocusPoint> out;
    for (double k : gains) {
        Polynomial cl = G.den() + G.num().scaled(k);
        std::vector<cplx> roots = cl.degree() >= 1 ? poly_roots(cl) : std::vector<cplx>{};
        if (!out.empty() && out.back().poles.size() == roots.size()) {
            const auto& prev = out.back().poles;
            std::vector<cplx> ordered(prev.size());
            std::vector<bool> used(roots.size(), false);
            for (size_t b = 0; b < prev.size(); ++b) {
                size_t best = 0;
                double dist = std::numeric_limits<double>::infinity();
                for (size_t j = 0; j < roots.size(); ++j) {
                    if (used[j]) continue;
                    double d = std::abs(roots[j] - prev[b]);
                    if (d < dist) {
                        dist = d;
                        best = j;
                    }
                }
                used[best] = true;
                ordered[b] = roots[best];
            }
            roots = std::move(ordered);
        }
        out.push_back({k, std::move(roots)});
    }
    return out;
}

}  // namespace solarpump::lti
