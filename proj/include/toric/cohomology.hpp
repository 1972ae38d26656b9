#pragma once

// Sheaf cohomology of line bundles on smooth complete toric varieties.
//
// For a torus-invariant divisor D = sum a_rho D_rho the weight-m piece of
// H^q(X, O(D)) is the reduced cohomology H~^{q-1} of the subcomplex of the fan
// induced on N(m) = { rho : <m, v_rho> < -a_rho } (the empty complex has
// H~^{-1} = Q). N(m) is constant on the sign regions of the arrangement
// <m, v_rho> = -a_rho, so h^q is a finite sum over regions of
// (lattice points in the region) * dim H~^{q-1}.

#include "toric/fan.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace toric {

using CohomologyVector = std::vector<long>;  // h^0 .. h^n

/// Subcomplex of the fan's simplicial complex induced on a vertex (ray) set.
struct RaySubcomplex {
    std::uint64_t vertices = 0;
    std::vector<std::uint64_t> faces;  // includes the empty face

    /// dim H~^k for k = -1 .. top, rational coefficients; index 0 is k = -1.
    std::vector<long> reduced_cohomology(std::size_t max_degree) const;
};

RaySubcomplex induced_subcomplex(const ToricVariety& x, std::uint64_t vertices);

/// Memoized reduced cohomology of the induced subcomplex, indices k = -1 .. n-1.
std::vector<long> induced_reduced_cohomology(const ToricVariety& x, std::uint64_t vertices);

/// Region-decomposition kernel (OpenMP over regions).
CohomologyVector sheaf_cohomology(const ToricVariety& x, const TDivisor& d);
/// Serial reference: scans every lattice point of a box containing all vertices
/// of the arrangement and sums the weight contributions directly.
CohomologyVector sheaf_cohomology_reference(const ToricVariety& x, const TDivisor& d);

/// Memoized by (fan key, class); uses the section representative.
CohomologyVector class_cohomology(const ToricVariety& x, const DivisorClass& c);
long euler_characteristic(const ToricVariety& x, const DivisorClass& c);

struct CohomologyTable {
    std::map<DivisorClass, CohomologyVector> values;

    bool contains(const DivisorClass& c) const { return values.count(c) != 0; }
    const CohomologyVector& at(const DivisorClass& c) const;
    /// Table of E (x) O(shift): row c holds the old row c + shift.
    CohomologyTable twisted(const DivisorClass& shift) const;
};

/// Rows for every requested class, computed in parallel.
CohomologyTable cohomology_table(const ToricVariety& x, const std::vector<DivisorClass>& classes);

/// All classes in the box [lo, hi]^rank, lexicographic.
std::vector<DivisorClass> class_window(std::size_t rank, long lo, long hi);

/// dim P_d for a nef Q-divisor; H^q(O(-ceil(d))) = 0 for q below it.
/// Throws PreconditionError("not nef").
int bb_vanishing_floor(const ToricVariety& x, const QDivisor& d);

/// Drops every memoized value (used by benchmarks).
void clear_cohomology_cache();

}  // namespace toric
