#pragma once

// Exact integer and rational linear algebra.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Row-major dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector col(std::size_t c) const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& other) const;
    IntVector operator*(std::span<const Integer> v) const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... and d_i >= 0.
struct SmithDecomposition {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;

    std::vector<Integer> diagonal() const;
    std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& A);

/// Columns form a Z-basis of {v : A v = 0}; zero columns when the kernel is trivial.
IntMatrix integer_kernel(const IntMatrix& A);

/// Exact solution of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<RationalVector> solve_rational(const IntMatrix& A, std::span<const Rational> b);

/// Rank over Q.
std::size_t rational_rank(const std::vector<RationalVector>& rows, std::size_t cols);
std::size_t rational_rank(const IntMatrix& A);

Integer determinant(const IntMatrix& A);

/// Column-style Hermite basis of the lattice spanned by the columns of G:
/// lower echelon, positive pivots. Used to pick canonical coset representatives.
class LatticeReducer {
public:
    explicit LatticeReducer(const IntMatrix& generators);

    /// Canonical representative of t + L, with pivot coordinates in [0, pivot).
    IntVector reduce(IntVector t) const;
    const IntMatrix& basis() const { return basis_; }

private:
    IntMatrix basis_;
    std::vector<std::size_t> pivot_rows_;
};

Integer gcd_of(std::span<const Integer> v);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational fractional_part(const Rational& q);

RationalVector to_rational(std::span<const Integer> v);
Rational dot(std::span<const Rational> a, std::span<const Integer> b);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

std::string to_string(std::span<const Integer> v);
std::string to_string(std::span<const Rational> v);

}  // namespace toric
