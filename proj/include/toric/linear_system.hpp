#pragma once

// Exact feasibility of mixed linear systems (=, >=, >) by Fourier-Motzkin
// elimination. Dimensions here are small (n <= 6) so the doubly exponential
// worst case never materializes; parallel constraints are merged after every
// elimination step to keep the rows in check.

#include "toric/lattice.hpp"

#include <functional>
#include <optional>

namespace toric {

enum class Relation { Equal, GreaterEqual, Greater };

/// coeffs . x  (rel)  rhs
struct Constraint {
    RationalVector coeffs;
    Rational rhs;
    Relation rel = Relation::GreaterEqual;
};

/// Feasible values of one variable once the others are fixed or projected away.
struct Interval {
    std::optional<Rational> lower;
    bool lower_strict = false;
    std::optional<Rational> upper;
    bool upper_strict = false;

    bool empty() const;
    bool bounded() const { return lower && upper; }
    bool contains(const Rational& x) const;
    /// A deterministic interior-ish point: midpoint when bounded, bound +/- 1 otherwise.
    Rational pick() const;
};

class LinearSystem {
public:
    explicit LinearSystem(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::vector<Constraint>& constraints() const { return rows_; }

    void add(Constraint c);
    void add(RationalVector coeffs, Rational rhs, Relation rel);
    void add(std::span<const Integer> coeffs, const Rational& rhs, Relation rel);
    void add_all(const LinearSystem& other);

    bool satisfied_by(std::span<const Rational> x) const;
    bool feasible() const;
    std::optional<RationalVector> witness() const;

    /// Range of variable `var` over the feasible set.
    Interval project(std::size_t var) const;

    /// Fix variable `var` to `value`; the dimension is unchanged, the column becomes zero.
    LinearSystem fixed(std::size_t var, const Rational& value) const;

    /// Affine dimension of the feasible set, -1 when empty.
    int dimension() const;

    /// True when the recession cone of the closure is {0} (or the system is empty).
    bool bounded() const;

    /// All integer points; throws PreconditionError if the set is unbounded.
    void for_each_lattice_point(const std::function<void(const IntVector&)>& visit) const;
    std::vector<IntVector> lattice_points() const;
    std::size_t count_lattice_points() const;
    /// First lattice point in enumeration order, if any.
    std::optional<IntVector> find_lattice_point() const;

private:
    std::size_t dim_;
    std::vector<Constraint> rows_;
};

}  // namespace toric
