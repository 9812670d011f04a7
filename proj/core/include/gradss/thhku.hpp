#pragma once

#include <map>
#include <string>
#include <vector>

#include "gradss/algebra.hpp"
#include "gradss/dga.hpp"
#include "gradss/homalg.hpp"
#include "gradss/specseq.hpp"

/// The computation of V(0)_* THH(ku; HZ_p) and V(1)_* THH(ku) from cited homotopy inputs.
namespace gradss::thhku {

using algebra::Bidegree;
using algebra::Element;
using algebra::Presentation;

/// A homotopy-theoretic input the algebra cannot derive, with where it comes from.
struct InputFact {
    std::string id;
    std::string content;
    std::string citation;
};

const std::vector<InputFact>& input_facts();
const InputFact& fact(const std::string& id);

struct Certificate {
    std::string name;
    bool passed = false;
    std::string detail;
    std::vector<std::string> facts; ///< InputFact ids, or "enumeration" for engine-derived checks
};

struct StepReport {
    std::string name;
    std::string result;               ///< generators with bidegrees
    std::vector<std::string> facts;   ///< consumed InputFact ids
    std::vector<Certificate> certificates;
    bool passed() const;
};

struct PipelineReport {
    std::uint32_t p = 5;
    int requested_degree = 0;
    int certified_degree = 0;
    std::vector<StepReport> steps;
    bool passed() const;
};

std::string describe(const Presentation& pres);

/// Weights in Z/(p-1) of u, lambda1, mu2, a_i, b_i.
std::map<std::string, int> weight_table(std::uint32_t p);

struct Step1Result {
    Presentation presentation; ///< E(su), su in total degree 3
    homalg::TorTable tor;
    homalg::Recognition recognition;
    StepReport report;
};

/// Tor over Z_p[u] of (F_p, Z_p) recognized as a free algebra.
Step1Result step1_tor(std::uint32_t p, int n = 40);

struct Step2Result {
    Presentation presentation; ///< E(su, l1) (x) P(m1) as a singly graded algebra
    specseq::CollapseCertificate collapse;
    specseq::AbutmentReport abutment;
    std::vector<specseq::Page> pages;
    StepReport report;
};

/// E^2 = E(su) (x) E(l1) (x) P(m1) in the column/row placement of the first Brun spectral sequence.
Presentation brun_v0_e2(const Presentation& step1, std::uint32_t p, int n);
Step2Result step2_v0(std::uint32_t p, int n);

struct Step3Result {
    Presentation presentation; ///< Omega-infinity (x) E(l1), relations separately
    std::vector<dga::Relation> relations;
    std::vector<specseq::ForcedCandidate> forced;
    specseq::CollapseCertificate collapse;
    dga::IsoReport iso;
    specseq::AbutmentReport abutment;
    std::vector<std::size_t> einf_by_degree;
    std::vector<specseq::Page> pages;              ///< E^2 through E^{2p-2}
    std::vector<dga::Derivation> differentials;    ///< d_r leaving pages[k]
    StepReport report;
};

/// E^2 = P_{p-1}(u) (x) E(su, l1) (x) P(m1) with weights u, su: 1 and l1, m1: 0.
Presentation brun_v1_e2(const Presentation& step2, std::uint32_t p, int n);
/// Generators u, l1, mu2, a0..a_{p-1}, b1..b_{p-1} with bidegrees and weights.
Presentation omega_infinity(std::uint32_t p, int n);
/// rel1 through rel8, labelled "rel<k>[i,j]". Exact at every degree, whatever the box.
std::vector<dga::Relation> omega_relations(const Presentation& omega);
/// E^2 representatives: mu2 = m1^p, a_i = su m1^i, b_i = u m1^i.
std::map<std::string, Element> omega_lifts(const Presentation& e2, std::uint32_t p);
Step3Result step3_v1(std::uint32_t p, int n);
/// Step 3 on top of an already computed step 2.
Step3Result step3_v1(const Step2Result& step2, int n);

/// Homology of P_{p-1}(u) (x) E(su, l1) (x) P(m1) with d(m1) = u^{p-2} su, per total degree.
std::vector<std::size_t> intro_dga_dimensions(std::uint32_t p, int n);
/// Same without l1, per total degree.
std::vector<std::size_t> omega_dga_dimensions(std::uint32_t p, int n);
/// Count of the four families mu1^{pk}; u^i mu1^k; u^i su mu1^k; u^{p-2} su mu1^{pk+p-1} per total degree.
std::vector<std::size_t> basis_formula_counts(std::uint32_t p, int n);

/// Runs steps 1-3 and the cross-checks.
PipelineReport reproduce(std::uint32_t p, int n);

} // namespace gradss::thhku
