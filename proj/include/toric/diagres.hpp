#pragma once

// Terms of the line-bundle resolution of the diagonal built from the Bondal
// stratification of the real torus M_R / M, together with the checks that
// make it cohomologically supported in the ample cone.

#include "toric/fan.hpp"
#include "toric/polyhedra.hpp"

#include <set>
#include <string>
#include <vector>

namespace toric {

/// Label of a point x of M_R: E(x) = sum floor(<x, v_rho>) D_rho, together with
/// the fractional parts c_rho = <x, v_rho> - floor(<x, v_rho>).
struct BondalLabel {
    RationalVector fractional;
    TDivisor floor_divisor;
    DivisorClass cls;
};

BondalLabel bondal_label(const ToricVariety& x, std::span<const Rational> point);

/// Label classes over the faces of the torus arrangement cut out by the rays.
std::vector<DivisorClass> thomsen_collection(const ToricVariety& x);

/// Label classes over the grid (1/denominator) Z^n in [0, 1)^n.
std::vector<DivisorClass> thomsen_by_sampling(const ToricVariety& x, long denominator);

struct DiagStratum {
    int p = 0;
    RationalVector sample;  // u; the stratum is {(u, -u)}
    DivisorClass eprime;    // label(u), output-side factor
    DivisorClass e;         // label(-u), cohomology-bearing factor
};

std::vector<DiagStratum> diagonal_strata(const ToricVariety& x);

struct ResolutionTerm {
    DivisorClass eprime;
    DivisorClass e;
    long mult = 0;
    RationalVector sample;  // lexicographically first stratum sample with this label pair
};

/// terms[p] is the multiset of label pairs over the p-dimensional strata,
/// aggregated and sorted by (E', E).
struct ResolutionTerms {
    std::vector<std::vector<ResolutionTerm>> terms;

    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
    std::vector<long> ranks() const;
    /// The degree-0 piece is exactly one copy of (O, O).
    bool degree_zero_is_trivial() const;
    /// Distinct classes E appearing on the cohomology-bearing side.
    std::vector<DivisorClass> e_classes() const;
};

ResolutionTerms build_k_terms(const ToricVariety& x);

struct TermAudit {
    int p = 0;
    DivisorClass eprime;
    DivisorClass e;
    IntVector d;          // E = -sum d_rho D_rho, d_rho >= 0
    RationalVector c;     // E ~_Q -sum c_rho D_rho, c_rho in [0, 1)
    int dim_p = -1;       // dim P_{-E}
    bool effective = false;
    bool frobenius = false;
    bool dimension = false;
    std::vector<std::string> failures;

    bool passed() const { return effective && frobenius && dimension; }
};

std::vector<TermAudit> audit_terms(const ToricVariety& x, const ResolutionTerms& k);

/// Replays the vanishing argument for one ample D: with
/// F = D + sum (d_rho - (1 - eps) c_rho) D_rho, ceil(F) = D - E, F is nef for
/// small eps, and dim P_F >= dim P_{-E} >= p.
struct SupportReplay {
    Rational epsilon;
    bool ceiling_ok = false;
    bool nef_ok = false;
    int floor = -1;  // dim P_F
    bool floor_ok = false;
    bool ok() const { return ceiling_ok && nef_ok && floor_ok; }
};

struct SupportWitness {
    std::size_t sample = 0;
    std::size_t q = 0;
    long h = 0;
};

struct TermSupport {
    int p = 0;
    DivisorClass eprime;
    DivisorClass e;
    bool symbolic = false;
    bool empirical = false;
    std::vector<SupportReplay> replays;
    std::vector<SupportWitness> violations;

    /// "proven", "unproven", "inconsistent" or "failed"
    std::string status() const;
};

struct SupportReport {
    std::vector<TermSupport> terms;
    std::vector<TDivisor> samples;

    bool all_symbolic() const;
    bool all_empirical() const;
    /// Symbolic pass with an empirical failure somewhere: an engine bug.
    bool inconsistent() const;
};

/// Throws PreconditionError if a sample is not ample.
SupportReport certify_ample_support(const ToricVariety& x, const ResolutionTerms& k,
                                    const std::vector<TDivisor>& samples);

}  // namespace toric
