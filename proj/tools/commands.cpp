#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "chart.hpp"
#include "dsl.hpp"
#include "gradss/homalg.hpp"
#include "gradss/specseq.hpp"
#include "gradss/thhku.hpp"

namespace gradss::cli {

namespace {

struct Failure : std::runtime_error {
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Failure(kUsageError, "cannot write " + path);
    f << text;
}

int cmd_run(const std::string& path, const std::string& out_path, const std::string& svg_path, std::ostream& out)
{
    auto file = dsl::parse_file(path);
    const int n = static_cast<int>(file.ast.maxdeg);
    int rmax = 1;
    for (const auto& d : file.differentials)
        rmax = std::max(rmax, d.r);

    std::vector<specseq::Page> pages{specseq::init_page(*file.presentation, n)};
    std::vector<dga::Derivation> diffs;
    for (int r = 2; r <= rmax; ++r) {
        std::vector<specseq::DifferentialSpec> specs;
        for (const auto& d : file.differentials)
            if (d.r == r)
                specs.push_back(d);
        diffs.push_back(specseq::derivation_from_specs(pages.back(), specs));
        pages.push_back(specseq::turn_page(pages.back(), diffs.back()));
    }
    const auto cert = specseq::certify_collapse(pages.back(), n);

    std::ostringstream tsv;
    chart::write_tsv(tsv, chart::rows(pages));
    if (out_path.empty())
        out << tsv.str();
    else
        write_file(out_path, tsv.str());
    if (!svg_path.empty()) {
        std::ostringstream svg;
        chart::write_svg(svg, pages.back(), chart::arrows(pages, diffs));
        write_file(svg_path, svg.str());
    }

    if (!out_path.empty()) {
        out << "pages E^2..E^" << pages.back().r << ", certified through total degree "
            << pages.back().certified_degree() << "\n";
        out << "collapse at E^" << cert.r0 << ": " << (cert.refused.empty() ? "certified" : "refused")
            << " through total degree " << cert.certified_through << " (" << cert.uncertified.size()
            << " classes near the box edge left uncertified)\n";
    }
    if (!cert.refused.empty()) {
        const auto& c = cert.refused.front();
        throw Failure(kCertificateFailure, "collapse refused at " + algebra::to_string(c.bidegree) + " for " +
                                               c.representative + ": " + c.detail);
    }
    return kOk;
}

int cmd_homology(const std::string& path, std::ostream& out)
{
    auto file = dsl::parse_file(path);
    const int n = static_cast<int>(file.ast.maxdeg);
    int r = file.differentials.empty() ? 1 : file.differentials.front().r;
    std::map<std::string, algebra::Element> images;
    for (std::size_t i = 0; i < file.differentials.size(); ++i) {
        if (file.differentials[i].r != r)
            throw Failure(kUsageError, "homology needs all differentials on the same page");
        images.emplace(file.ast.diffs[i].source, file.differentials[i].image);
    }
    auto d = dga::extend_derivation(file.presentation, r, images);
    auto h = dga::homology(file.presentation, d, n);
    for (const auto& [b, dim] : h.dimension_table()) {
        std::vector<std::string> reps;
        for (const auto& e : h.representatives(b))
            reps.push_back(file.presentation->to_string(e));
        std::sort(reps.begin(), reps.end());
        for (std::size_t i = 0; i < reps.size(); ++i)
            out << b.n << '\t' << b.m << '\t' << i + 1 << '\t' << reps[i] << '\n';
    }
    const auto totals = h.dimensions_by_total_degree(h.certified_degree());
    out << "# total:";
    for (std::size_t t = 0; t < totals.size(); ++t)
        out << ' ' << totals[t];
    out << "\n# certified through total degree " << h.certified_degree() << '\n';
    return kOk;
}

homalg::BaseRing parse_base(const std::string& s, std::uint32_t p)
{
    if (s == "zpu")
        return homalg::BaseRing::zp_poly(p);
    if (s == "fpu")
        return homalg::BaseRing::fp_poly(p);
    const std::string prefix = "fpu-trunc:";
    if (s.rfind(prefix, 0) == 0) {
        int h = 0;
        try {
            h = std::stoi(s.substr(prefix.size()));
        } catch (const std::exception&) {
            throw Failure(kUsageError, "bad truncation height in '" + s + "'");
        }
        return homalg::BaseRing::fp_truncated(p, h);
    }
    throw Failure(kUsageError, "unknown base ring '" + s + "'");
}

homalg::CyclicModule parse_module(const std::string& s)
{
    if (s == "fp")
        return homalg::CyclicModule::fp();
    if (s == "zp")
        return homalg::CyclicModule::zp();
    if (s == "fpu")
        return homalg::CyclicModule::fpu();
    throw Failure(kUsageError, "unknown module '" + s + "'");
}

int cmd_tor(const std::string& base, const std::string& left, const std::string& right, int max, std::uint32_t p,
            std::ostream& out)
{
    auto table = homalg::koszul_tor(parse_base(base, p), parse_module(left), parse_module(right), max);
    for (const auto& [b, dim] : table.nonzero())
        out << "(" << b.n << "," << b.m << "):" << dim << '\n';
    return kOk;
}

int cmd_hh(const std::string& path, int smax, int tmax, std::ostream& out)
{
    auto file = dsl::parse_file(path);
    auto table = homalg::hochschild_homology(*file.presentation, smax, tmax);
    for (const auto& [st, dim] : table.dims)
        out << st.first << '\t' << st.second << '\t' << dim << '\n';
    return kOk;
}

int cmd_oracle(std::uint64_t seed, int cases, std::ostream& out)
{
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        auto fc = specseq::random_filtered_complex(s);
        auto run = specseq::exact_couple_run(fc);
        auto check = specseq::compare_with_total_homology(fc, run);
        std::size_t dim = 0;
        for (int t = 0; t <= fc.top_degree(); ++t)
            dim += fc.dim(t);
        const bool ok = check.ok() && run.consistency_failures.empty();
        failures += ok ? 0 : 1;
        out << "seed " << s << "\tlevels " << fc.max_level() + 1 << "\tdim " << dim << "\tpages "
            << run.pages.size() << '\t' << (ok ? "ok" : "FAIL") << '\n';
        for (const auto& d : check.degrees)
            if (!d.ok())
                out << "  degree " << d.degree << ": E-infinity " << d.einf_total << ", homology " << d.homology
                    << '\n';
        for (const auto& f : run.consistency_failures)
            out << "  " << f << '\n';
    }
    out << cases - failures << "/" << cases << " cases converge\n";
    return failures == 0 ? kOk : kCertificateFailure;
}

int cmd_reproduce(std::uint32_t p, int n, const std::string& report_path, std::ostream& out)
{
    if (!is_prime(p) || p < 5)
        throw Failure(kUsageError, "--prime must be a prime >= 5");
    auto report = thhku::reproduce(p, n);
    const std::string json = chart::report_json(report);
    if (report_path.empty()) {
        out << json;
    } else {
        write_file(report_path, json);
        for (const auto& s : report.steps) {
            out << s.name << ": " << (s.passed() ? "passed" : "FAILED") << '\n';
            for (const auto& c : s.certificates)
                if (!c.passed)
                    out << "  " << c.name << ": " << c.detail << '\n';
        }
    }
    return report.passed() ? kOk : kCertificateFailure;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multiplicative spectral sequences over F_p", "gradss"};
    app.require_subcommand(1);

    std::string file;
    std::string out_path;
    std::string svg_path;
    auto* run = app.add_subcommand("run", "turn the pages of a presented spectral sequence");
    run->add_option("file", file, "presentation file")->required();
    run->add_option("--out", out_path, "chart TSV destination");
    run->add_option("--svg", svg_path, "dot chart of the last page");

    auto* hom = app.add_subcommand("homology", "homology of a presented DGA");
    hom->add_option("file", file, "presentation file")->required();

    std::string base;
    std::string left;
    std::string right;
    int max = 0;
    std::uint32_t prime = 5;
    auto* tor = app.add_subcommand("tor", "Tor of cyclic modules over a one-variable ring");
    tor->add_option("--base", base, "zpu, fpu or fpu-trunc:h")->required();
    tor->add_option("--left", left, "fp")->required()->check(CLI::IsMember({"fp"}));
    tor->add_option("--right", right, "fp, zp or fpu")->required()->check(CLI::IsMember({"fp", "zp", "fpu"}));
    tor->add_option("--max", max, "largest internal degree")->required()->check(CLI::NonNegativeNumber);
    tor->add_option("--prime", prime, "characteristic of the residue field")->capture_default_str();

    int smax = 0;
    int tmax = 0;
    auto* hh = app.add_subcommand("hh", "Hochschild homology through the cyclic bar complex");
    hh->add_option("file", file, "presentation file")->required();
    hh->add_option("--smax", smax)->required()->check(CLI::NonNegativeNumber);
    hh->add_option("--tmax", tmax)->required()->check(CLI::NonNegativeNumber);

    std::uint64_t seed = 0;
    int cases = 0;
    auto* oracle = app.add_subcommand("oracle", "property runs against independent computations");
    oracle->require_subcommand(1);
    auto* filtered = oracle->add_subcommand("filtered", "random filtered complexes: E-infinity vs homology");
    filtered->add_option("--seed", seed)->required();
    filtered->add_option("--cases", cases)->required()->check(CLI::PositiveNumber);

    int degree = 0;
    std::string report_path;
    auto* repro = app.add_subcommand("reproduce", "cited computations");
    repro->require_subcommand(1);
    auto* thh = repro->add_subcommand("thh-ku", "V(0) THH(ku; HZ_p) and V(1) THH(ku)");
    thh->add_option("--prime", prime)->required();
    thh->add_option("--max-degree", degree)->required()->check(CLI::NonNegativeNumber);
    thh->add_option("--report", report_path, "JSON report destination");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*run)
            return cmd_run(file, out_path, svg_path, out);
        if (*hom)
            return cmd_homology(file, out);
        if (*tor)
            return cmd_tor(base, left, right, max, prime, out);
        if (*hh)
            return cmd_hh(file, smax, tmax, out);
        if (*filtered)
            return cmd_oracle(seed, cases, out);
        if (*thh)
            return cmd_reproduce(prime, degree, report_path, out);
    } catch (const dsl::ParseError& e) {
        err << file << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const Failure& e) {
        err << "error: " << e.what() << '\n';
        return e.code;
    } catch (const homalg::NotPTorsion& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        // page errors, d^2 != 0, resource refusals
        err << "error: " << e.what() << '\n';
        return kCertificateFailure;
    }
    return kUsageError;
}

} // namespace gradss::cli
