#include "chart.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

namespace gradss::chart {

std::vector<Row> rows(const std::vector<specseq::Page>& pages)
{
    std::vector<Row> out;
    for (const auto& page : pages) {
        const auto& pres = page.e2();
        for (const auto& [b, dim] : page.classes.dimension_table()) {
            std::vector<std::string> reps;
            for (const auto& e : page.classes.representatives(b))
                reps.push_back(pres.to_string(e));
            std::sort(reps.begin(), reps.end());
            for (std::size_t i = 0; i < reps.size(); ++i)
                out.push_back({page.r, b.n, b.m, static_cast<int>(i + 1), reps[i]});
        }
    }
    std::sort(out.begin(), out.end(), [](const Row& a, const Row& b) {
        return std::tie(a.r, a.n, a.m, a.representative) < std::tie(b.r, b.n, b.m, b.representative);
    });
    return out;
}

void write_tsv(std::ostream& os, const std::vector<Row>& rows)
{
    for (const auto& row : rows)
        os << row.r << '\t' << row.n << '\t' << row.m << '\t' << row.index << '\t' << row.representative << '\n';
}

std::vector<Arrow> arrows(const std::vector<specseq::Page>& pages,
                          const std::vector<dga::Derivation>& differentials)
{
    std::set<std::tuple<int, algebra::Bidegree, algebra::Bidegree>> seen;
    for (std::size_t k = 0; k < differentials.size() && k < pages.size(); ++k) {
        const auto& page = pages[k];
        const auto& d = differentials[k];
        if (d.is_zero())
            continue;
        for (const auto& [b, dim] : page.classes.dimension_table()) {
            const algebra::Bidegree to = b + d.shift();
            if (!page.e2().in_box(to))
                continue;
            for (const auto& x : page.classes.representatives(b)) {
                algebra::Element y = d.apply(x);
                if (!y.is_zero() && !page.classes.is_boundary(y))
                    seen.insert({d.r(), b, to});
            }
        }
    }
    std::vector<Arrow> out;
    for (const auto& [r, from, to] : seen)
        out.push_back({r, from, to});
    return out;
}

void write_svg(std::ostream& os, const specseq::Page& page, const std::vector<Arrow>& arrows)
{
    const auto table = page.classes.dimension_table();
    int max_n = 1;
    int max_m = 1;
    for (const auto& [b, dim] : table) {
        max_n = std::max(max_n, b.n);
        max_m = std::max(max_m, b.m);
    }
    for (const auto& a : arrows) {
        max_n = std::max({max_n, a.from.n, a.to.n});
        max_m = std::max({max_m, a.from.m, a.to.m});
    }
    const int cell = 12;
    const int margin = 30;
    const int width = 2 * margin + cell * (max_n + 1);
    const int height = 2 * margin + cell * (max_m + 1);
    auto x = [&](int n) { return margin + cell * n + cell / 2; };
    auto y = [&](int m) { return height - margin - cell * m - cell / 2; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<text x=\"" << margin << "\" y=\"18\" font-family=\"monospace\" font-size=\"12\">E^" << page.r
       << "</text>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
       << height - margin << "\" stroke=\"#888\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
       << "\" stroke=\"#888\"/>\n";
    for (const auto& a : arrows)
        os << "<line x1=\"" << x(a.from.n) << "\" y1=\"" << y(a.from.m) << "\" x2=\"" << x(a.to.n) << "\" y2=\""
           << y(a.to.m) << "\" stroke=\"#c33\" stroke-width=\"1\"><title>d" << a.r << "</title></line>\n";
    for (const auto& [b, dim] : table)
        for (std::size_t i = 0; i < dim; ++i)
            os << "<circle cx=\"" << x(b.n) + static_cast<int>(i) * 3 << "\" cy=\"" << y(b.m)
               << "\" r=\"2.5\" fill=\"#000\"/>\n";
    os << "</svg>\n";
}

std::string report_json(const thhku::PipelineReport& report)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["p"] = report.p;
    j["requested_degree"] = report.requested_degree;
    j["certified_degree"] = report.certified_degree;
    j["passed"] = report.passed();
    std::set<std::string> used;
    ordered_json steps = ordered_json::array();
    for (const auto& s : report.steps) {
        ordered_json step;
        step["name"] = s.name;
        step["result"] = s.result;
        step["facts"] = s.facts;
        step["passed"] = s.passed();
        ordered_json certs = ordered_json::array();
        for (const auto& c : s.certificates) {
            certs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"facts", c.facts}});
            used.insert(c.facts.begin(), c.facts.end());
        }
        step["certificates"] = certs;
        steps.push_back(step);
        used.insert(s.facts.begin(), s.facts.end());
    }
    j["steps"] = steps;
    ordered_json facts = ordered_json::array();
    for (const auto& f : thhku::input_facts())
        if (used.count(f.id))
            facts.push_back({{"id", f.id}, {"content", f.content}, {"citation", f.citation}});
    j["facts"] = facts;
    return j.dump(2) + "\n";
}

} // namespace gradss::chart
