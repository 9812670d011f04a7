#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gradss/specseq.hpp"
#include "gradss/thhku.hpp"

namespace gradss::chart {

struct Row {
    int r = 2;
    int n = 0;
    int m = 0;
    int index = 1; ///< 1-based among the classes of (r, n, m), ordered by representative
    std::string representative;

    auto operator<=>(const Row&) const = default;
};

/// One row per class of every page, sorted (r, n, m, representative).
std::vector<Row> rows(const std::vector<specseq::Page>& pages);
void write_tsv(std::ostream& os, const std::vector<Row>& rows);

struct Arrow {
    int r = 2;
    algebra::Bidegree from;
    algebra::Bidegree to;
};

/// Nonzero d_r between classes of pages[k], where differentials[k] leaves pages[k].
std::vector<Arrow> arrows(const std::vector<specseq::Page>& pages,
                          const std::vector<dga::Derivation>& differentials);

/// Dot chart of the last page plus arrows for every differential.
void write_svg(std::ostream& os, const specseq::Page& page, const std::vector<Arrow>& arrows);

std::string report_json(const thhku::PipelineReport& report);

} // namespace gradss::chart
