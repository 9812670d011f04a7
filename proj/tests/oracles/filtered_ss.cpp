#include "filtered_ss.hpp"

#include "dense_fp.hpp"

namespace oracle {

namespace {

using gradss::specseq::FilteredComplex;

struct Degree {
    std::vector<int> levels;
    Dense boundary_columns; ///< d(e_j) in C_{t-1} coordinates
};

Dense columns_of(const FilteredComplex& fc, int t)
{
    const auto& m = fc.boundary[static_cast<std::size_t>(t)];
    Dense cols(m.cols(), Row(m.rows(), 0));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            cols[j][i] = m.at(i, j);
    return cols;
}

class Oracle {
public:
    explicit Oracle(const FilteredComplex& fc) : fc_(fc), p_(fc.p)
    {
        for (int t = 0; t <= fc.top_degree(); ++t)
            cols_.push_back(columns_of(fc, t));
    }

    const std::vector<int>& levels(int t) const { return fc_.levels[static_cast<std::size_t>(t)]; }

    /// {x in F_s C_t : dx in F_q C_{t-1}} in full coordinates.
    Dense z(int t, int s, int q) const
    {
        const auto& lv = levels(t);
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < lv.size(); ++j)
            if (lv[j] <= s)
                free.push_back(j);
        std::vector<std::size_t> rows;
        if (t > 0) {
            const auto& lo = levels(t - 1);
            for (std::size_t i = 0; i < lo.size(); ++i)
                if (lo[i] > q)
                    rows.push_back(i);
        }
        Dense restricted;
        for (auto j : free) {
            Row c;
            for (auto i : rows)
                c.push_back(t > 0 ? cols_[static_cast<std::size_t>(t)][j][i] : 0);
            restricted.push_back(c);
        }
        Dense out;
        for (const auto& k : null_space(restricted, free.size(), p_)) {
            Row x(lv.size(), 0);
            for (std::size_t a = 0; a < free.size(); ++a)
                x[free[a]] = k[a];
            out.push_back(std::move(x));
        }
        return out;
    }

    /// F_s C_t cap d(F_q C_{t+1}).
    Dense b(int t, int s, int q) const
    {
        if (t + 1 > fc_.top_degree())
            return {};
        const auto& up = levels(t + 1);
        const auto& here = levels(t);
        Dense images;
        for (std::size_t j = 0; j < up.size(); ++j)
            if (up[j] <= q)
                images.push_back(cols_[static_cast<std::size_t>(t + 1)][j]);
        std::vector<std::size_t> high;
        for (std::size_t i = 0; i < here.size(); ++i)
            if (here[i] > s)
                high.push_back(i);
        Dense restricted;
        for (const auto& v : images) {
            Row c;
            for (auto i : high)
                c.push_back(v[i]);
            restricted.push_back(c);
        }
        Dense out;
        for (const auto& k : null_space(restricted, images.size(), p_)) {
            Row x(here.size(), 0);
            for (std::size_t a = 0; a < images.size(); ++a)
                for (std::size_t i = 0; i < here.size(); ++i)
                    x[i] = mod(x[i] + k[a] * images[a][i], p_);
            out.push_back(std::move(x));
        }
        return out;
    }

    std::size_t e(int r, int t, int s) const
    {
        const std::size_t zr = rank(z(t, s, s - r), p_);
        const std::size_t denom = sum_dim(z(t, s - 1, s - r), b(t, s, s + r - 1), p_);
        return zr - denom;
    }

private:
    const FilteredComplex& fc_;
    std::int64_t p_;
    std::vector<Dense> cols_;
};

} // namespace

std::vector<std::map<gradss::algebra::Bidegree, std::size_t>> zb_pages(const FilteredComplex& fc, int r_max)
{
    Oracle o(fc);
    const int levels = fc.max_level();
    std::vector<std::map<gradss::algebra::Bidegree, std::size_t>> out;
    for (int r = 1; r <= r_max; ++r) {
        std::map<gradss::algebra::Bidegree, std::size_t> page;
        for (int t = 0; t <= fc.top_degree(); ++t)
            for (int s = 0; s <= levels; ++s)
                if (auto d = o.e(r, t, s))
                    page[{s, t - s}] = d;
        out.push_back(std::move(page));
    }
    return out;
}

std::vector<std::size_t> homology_dims(const FilteredComplex& fc)
{
    const std::int64_t p = fc.p;
    std::vector<std::size_t> ranks;
    for (int t = 0; t <= fc.top_degree(); ++t)
        ranks.push_back(rank(columns_of(fc, t), p));
    std::vector<std::size_t> out;
    for (int t = 0; t <= fc.top_degree(); ++t) {
        const std::size_t incoming = t + 1 <= fc.top_degree() ? ranks[static_cast<std::size_t>(t + 1)] : 0;
        out.push_back(fc.dim(t) - ranks[static_cast<std::size_t>(t)] - incoming);
    }
    return out;
}

} // namespace oracle
