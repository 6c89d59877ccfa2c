#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "flowmag/flow.hpp"

namespace flowmag::testing {

struct BundleExpectation {
    std::vector<double> v_hat;
    std::vector<double> w_hat;
};

/**
 * Closed-form principal solutions of a bundle, computed purely from the known
 * block entropies: per backbone, the weighting is the negated cumulative
 * forward maximum and the coweighting the negated cumulative reverse maximum;
 * the global entry/exit carry -h of the whole graph; everything else is +inf.
 * Never touches the similarity-matrix machinery it checks.
 */
inline BundleExpectation expected_principal_solutions(const Bundle& bundle) {
    const auto& edges = bundle.graph.graph.edges();
    auto index_of = [&](const Edge& e) {
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) {
            throw std::logic_error("bundle edge missing from the composed graph");
        }
        return static_cast<std::size_t>(it - edges.begin());
    };

    BundleExpectation expect;
    expect.v_hat.assign(edges.size(), kPosInf);
    expect.w_hat.assign(edges.size(), kPosInf);

    double h_all = kNegInf;
    for (const auto& branch : bundle.block_entropy) {
        for (double h : branch) {
            h_all = std::max(h_all, h);
        }
    }
    expect.v_hat[index_of(bundle.graph.entry)] = -h_all;
    expect.w_hat[index_of(bundle.graph.exit)] = -h_all;

    for (std::size_t k = 0; k < bundle.backbone.size(); ++k) {
        const auto& spine = bundle.backbone[k];
        const auto& h = bundle.block_entropy[k];
        const std::size_t blocks = h.size();
        for (std::size_t j = 1; j <= blocks; ++j) { // forward cumulative maxima
            double acc = kNegInf;
            for (std::size_t b = 0; b < j; ++b) {
                acc = std::max(acc, h[b]);
            }
            expect.w_hat[index_of(spine[j])] = -acc;
        }
        for (std::size_t j = 0; j < blocks; ++j) { // reverse cumulative maxima
            double acc = kNegInf;
            for (std::size_t b = j; b < blocks; ++b) {
                acc = std::max(acc, h[b]);
            }
            expect.v_hat[index_of(spine[j])] = -acc;
        }
    }
    return expect;
}

} // namespace flowmag::testing
