#include "toric/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toric {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix: row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

IntVector IntMatrix::operator*(std::span<const Integer> v) const {
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in matvec");
    IntVector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ',';
        os << to_string(row(i));
    }
    os << ']';
    return os.str();
}

std::vector<Integer> SmithDecomposition::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal())
        if (d != 0) ++r;
    return r;
}

namespace {

// Smallest nonzero |entry| in the lower-right block starting at (t, t).
bool find_min_pivot(const IntMatrix& A, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < A.rows(); ++i)
        for (std::size_t j = t; j < A.cols(); ++j) {
            if (A(i, j) == 0) continue;
            Integer a = abs(A(i, j));
            if (!found || a < best) {
                best = a;
                pr = i;
                pc = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    IntMatrix D = A;
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);

    auto row_swap = [&](std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        U.swap_rows(a, b);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        D.swap_cols(a, b);
        V.swap_cols(a, b);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        D.add_row_multiple(dst, src, f);
        U.add_row_multiple(dst, src, f);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        D.add_col_multiple(dst, src, f);
        V.add_col_multiple(dst, src, f);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t pr = t, pc = t;
        if (!find_min_pivot(D, t, pr, pc)) break;
        row_swap(t, pr);
        col_swap(t, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                row_add(i, t, -q);
                if (D(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                col_add(j, t, -q);
                if (D(t, j) != 0) dirty = true;
            }
            if (dirty) {
                // Remainders are smaller than the pivot; move the smallest one up.
                std::size_t br = t, bc = t;
                Integer best = abs(D(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < best) {
                        best = abs(D(i, t));
                        br = i;
                        bc = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < best) {
                        best = abs(D(t, j));
                        br = t;
                        bc = j;
                    }
                row_swap(t, br);
                col_swap(t, bc);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_add(t, i, Integer(1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
    }
    return {std::move(D), std::move(U), std::move(V)};
}

IntMatrix integer_kernel(const IntMatrix& A) {
    const auto snf = smith_normal_form(A);
    const std::size_t r = snf.rank();
    const std::size_t n = A.cols();
    IntMatrix K(n, n - r);
    for (std::size_t j = r; j < n; ++j) {
        IntVector c = snf.V.col(j);
        // Sign-normalize: first nonzero coordinate positive.
        auto it = std::find_if(c.begin(), c.end(), [](const Integer& x) { return x != 0; });
        const bool flip = it != c.end() && *it < 0;
        for (std::size_t i = 0; i < n; ++i) K(i, j - r) = flip ? Integer(-c[i]) : c[i];
    }
    return K;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RationalVector>& M, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < M.size(); ++c) {
        std::size_t p = row;
        while (p < M.size() && M[p][c] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[row], M[p]);
        const Rational inv = 1 / M[row][c];
        for (auto& x : M[row]) x *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == row || M[i][c] == 0) continue;
            const Rational f = M[i][c];
            for (std::size_t k = 0; k < M[i].size(); ++k) M[i][k] -= f * M[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::optional<RationalVector> solve_rational(const IntMatrix& A, std::span<const Rational> b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve_rational: rhs length mismatch");
    const std::size_t n = A.cols();
    std::vector<RationalVector> M(A.rows(), RationalVector(n + 1));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) M[i][j] = A(i, j);
        M[i][n] = b[i];
    }
    const auto pivots = rref(M, n + 1);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = M[i][n];
    return x;
}

std::size_t rational_rank(const std::vector<RationalVector>& rows, std::size_t cols) {
    auto M = rows;
    return rref(M, cols).size();
}

std::size_t rational_rank(const IntMatrix& A) {
    std::vector<RationalVector> rows(A.rows(), RationalVector(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) rows[i][j] = A(i, j);
    return rational_rank(rows, A.cols());
}

Integer determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = A.rows();
    std::vector<RationalVector> M(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = A(i, j);
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(M[p], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M[i][c] == 0) continue;
            const Rational f = M[i][c] / M[c][c];
            for (std::size_t k = c; k < n; ++k) M[i][k] -= f * M[c][k];
        }
    }
    return det.get_num();
}

LatticeReducer::LatticeReducer(const IntMatrix& generators) {
    IntMatrix G = generators;
    const std::size_t k = G.rows();
    const std::size_t n = G.cols();
    std::size_t col = 0;
    for (std::size_t r = 0; r < k && col < n; ++r) {
        // Euclid on row r across columns col..n-1 using column operations.
        for (;;) {
            std::size_t best = n;
            for (std::size_t j = col; j < n; ++j)
                if (G(r, j) != 0 && (best == n || abs(G(r, j)) < abs(G(r, best)))) best = j;
            if (best == n) break;
            G.swap_cols(col, best);
            bool clean = true;
            for (std::size_t j = col + 1; j < n; ++j) {
                if (G(r, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), G(r, j).get_mpz_t(), G(r, col).get_mpz_t());
                G.add_col_multiple(j, col, -q);
                if (G(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (G(r, col) == 0) continue;
        if (G(r, col) < 0) G.negate_col(col);
        pivot_rows_.push_back(r);
        ++col;
    }
    basis_ = IntMatrix(k, col);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < col; ++j) basis_(i, j) = G(i, j);
}

IntVector LatticeReducer::reduce(IntVector t) const {
    if (t.size() != basis_.rows()) throw std::invalid_argument("LatticeReducer: length mismatch");
    for (std::size_t p = 0; p < pivot_rows_.size(); ++p) {
        const std::size_t r = pivot_rows_[p];
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), t[r].get_mpz_t(), basis_(r, p).get_mpz_t());
        if (q == 0) continue;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] -= q * basis_(i, p);
    }
    return t;
}

Integer gcd_of(std::span<const Integer> v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational fractional_part(const Rational& q) { return q - Rational(floor_of(q)); }

RationalVector to_rational(std::span<const Integer> v) {
    RationalVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Rational dot(std::span<const Rational> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string to_string(std::span<const Integer> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v[i].get_str();
    }
    return s + "]";
}

std::string to_string(std::span<const Rational> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v[i].get_str();
    }
    return s + "]";
}

}  // namespace toric
