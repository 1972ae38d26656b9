#pragma once

// The E1 page of the pushforward spectral sequence for Phi_K(E), the
// red-diagonal test and the splitting criterion for sums of line bundles.

#include "toric/cohomology.hpp"
#include "toric/diagres.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace toric {

/// Nonzero entries only. Key (p, q) stands for position (-p, q); each entry
/// lists output-side classes E' with their multiplicities.
struct E1Page {
    std::map<std::pair<int, int>, std::vector<std::pair<DivisorClass, long>>> entries;

    bool empty() const { return entries.empty(); }
    const std::vector<std::pair<DivisorClass, long>>* at(int p, int q) const;
    long total(int p, int q) const;
    /// True iff every entry with p - q = k is absent.
    bool diagonal_empty(int k) const;
};

using CohomologySource = std::function<CohomologyVector(const DivisorClass&)>;

/// entry(-p, q) = sum over (E', E) in K_p of (E', source(E + twist)[q]).
E1Page build_e1(const ResolutionTerms& k, const DivisorClass& twist, const CohomologySource& source);
/// Throws PreconditionError listing every missing class.
E1Page build_e1(const CohomologyTable& table, const ResolutionTerms& k, const DivisorClass& twist);

struct RedWitness {
    int p = 0;
    int q = 0;
};

/// Empty when E1^{-p-1, p} = 0 for all p; otherwise the first offending (p+1, p).
std::optional<RedWitness> red_diagonal_witness(const E1Page& page);
inline bool red_diagonal_vanishes(const E1Page& page) { return !red_diagonal_witness(page).has_value(); }

struct Summand {
    DivisorClass cls;
    long mult = 1;
};

/// Ascending list of line bundle classes with multiplicities.
struct Candidate {
    std::vector<Summand> summands;

    /// Cohomology of sum O(D_i + c)^{r_i}.
    CohomologyVector cohomology(const ToricVariety& x, const DivisorClass& c) const;
    Candidate shifted(const DivisorClass& l) const;
    std::string str() const;
};

/// Merges equal classes and searches for an order with ample consecutive gaps.
/// Returns nullopt when none exists. At most 8 distinct classes.
std::optional<Candidate> order_candidate(const ToricVariety& x, const Candidate& c);

/// {E + D_i - D_j : i <= j} united with {E - D_j}, over all classes E of K.
std::vector<DivisorClass> required_twists(const ResolutionTerms& k, const Candidate& c);

struct SplitFact {
    std::string what;
    bool holds = false;
};

struct Split {
    Candidate ordered;
    std::vector<std::string> checked_classes;
    std::vector<SplitFact> certificate;
    std::string scope;
};

struct HypothesisFailed {
    DivisorClass cls;
    std::size_t q = 0;
    long table_value = 0;
    long candidate_value = 0;
};

struct Inapplicable {
    std::string reason;
    std::vector<DivisorClass> missing;
};

using Verdict = std::variant<Split, HypothesisFailed, Inapplicable>;

std::string verdict_tag(const Verdict& v);

struct SplitOptions {
    /// Classes checked in addition to the required twists.
    std::vector<DivisorClass> strict_window;
};

Verdict check_splitting(const ToricVariety& x, const CohomologyTable& table, const Candidate& cand,
                        const ResolutionTerms& k, const SplitOptions& options = {});

struct EulerFailure {
    DivisorClass f;
    DivisorClass g;
    long lhs = 0;
    long rhs = 0;
};

struct EulerReport {
    std::size_t trials = 0;
    std::vector<EulerFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// sum_p (-1)^p sum mult chi(E + F) chi(E' + G), and chi(F + G).
std::pair<long, long> euler_identity(const ToricVariety& x, const ResolutionTerms& k, const DivisorClass& f,
                                     const DivisorClass& g);

/// Random (F, G) in [-3, 3]^{pic rank}.
EulerReport euler_consistency(const ToricVariety& x, const ResolutionTerms& k, std::size_t trials,
                              std::uint64_t seed = 1);

}  // namespace toric
