#pragma once

// Fans of smooth complete toric varieties, torus-invariant divisors and the
// Picard group.

#include "toric/lattice.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace toric {

using Cone = std::vector<std::size_t>;

struct Fan {
    std::size_t rank = 0;
    std::vector<IntVector> rays;
    std::vector<Cone> max_cones;

    std::size_t ray_count() const { return rays.size(); }
    /// Rays as the rows of an r x n matrix.
    IntMatrix ray_matrix() const;
    /// Rays in file order plus sorted cones; identifies the fan *and* its ray order.
    std::string key() const;
    /// Order-independent form: rays sorted, cones remapped and sorted.
    std::string canonical_form() const;
};

struct FanReport {
    bool smooth = false;
    bool complete = false;
    bool simplicial = false;
    std::vector<std::string> notes;
};

/// Throws InputError on malformed data (bad cone index, non-primitive or zero ray,
/// wrong ray length).
FanReport validate_fan(const Fan& f);

/// Rays of f in the first block, rays of g in the second; cones are pairwise unions.
Fan product_fan(const Fan& f, const Fan& g);

struct TDivisor {
    IntVector coeffs;  // one per ray

    TDivisor operator+(const TDivisor& o) const;
    TDivisor operator-(const TDivisor& o) const;
    TDivisor operator-() const;
    TDivisor scaled(const Integer& k) const;
    bool operator==(const TDivisor&) const = default;
};

struct QDivisor {
    RationalVector coeffs;

    /// Least common multiple of the coefficient denominators.
    Integer denominator() const;
    /// Coefficientwise ceiling.
    TDivisor ceiling() const;
    QDivisor operator+(const QDivisor& o) const;
    QDivisor scaled(const Rational& k) const;
    static QDivisor from(const TDivisor& d);
    bool operator==(const QDivisor&) const = default;
};

/// Coordinates of a class in the Picard basis of a ToricVariety.
struct DivisorClass {
    IntVector coords;

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator-() const;
    DivisorClass scaled(const Integer& k) const;
    bool is_zero() const;
    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
    std::strong_ordering operator<=>(const DivisorClass& o) const;
    std::string str() const { return to_string(coords); }
};

struct DivisorClassHash {
    std::size_t operator()(const DivisorClass& c) const;
};

TDivisor canonical_divisor(const Fan& f);

/// A validated smooth complete fan together with its Picard presentation
///   0 -> M -> Z^{rays} -> Pic -> 0.
///
/// The basis is read off the lexicographically first maximal cone (by ray
/// indices): its rays form a lattice basis of N, so every divisor has a unique
/// linearly equivalent representative supported off that cone, and the class
/// coordinates are the coefficients of that representative on the remaining
/// rays, in ray order.
class ToricVariety {
public:
    explicit ToricVariety(Fan fan);

    const Fan& fan() const { return fan_; }
    std::size_t dim() const { return fan_.rank; }
    std::size_t ray_count() const { return fan_.rays.size(); }
    std::size_t pic_rank() const { return fan_.rays.size() - fan_.rank; }
    const std::string& key() const { return key_; }

    /// Integer matrix sending ray coefficient vectors to class coordinates.
    const IntMatrix& projection() const { return projection_; }
    const Cone& basis_cone() const { return basis_cone_; }
    const std::vector<std::size_t>& basis_rays() const { return basis_rays_; }

    DivisorClass class_of(const TDivisor& d) const;
    /// The representative supported on basis_rays(); projection(section(c)) == c.
    TDivisor section(const DivisorClass& c) const;
    /// div(chi^m) = sum <m, v_rho> D_rho
    TDivisor principal(std::span<const Integer> m) const;
    RationalVector principal(std::span<const Rational> m) const;

    /// Cartier data per maximal cone: <m_sigma, v_rho> = -a_rho for rho in sigma.
    std::vector<RationalVector> cartier_data(std::span<const Rational> coeffs) const;

    bool is_nef(const TDivisor& d) const;
    bool is_ample(const TDivisor& d) const;
    bool is_nef(const QDivisor& d) const;
    bool is_ample(const QDivisor& d) const;
    bool is_nef(const DivisorClass& c) const { return is_nef(section(c)); }
    bool is_ample(const DivisorClass& c) const { return is_ample(section(c)); }

    /// Some representative has all coefficients >= 0 (lattice point in P_D).
    bool is_effective(const DivisorClass& c) const;

    /// Inverse of the basis cone's ray matrix (unimodular).
    const IntMatrix& basis_inverse() const { return basis_inverse_; }

    void check_divisor(const TDivisor& d) const;
    void check_class(const DivisorClass& c) const;

private:
    int convexity(std::span<const Rational> coeffs) const;  // 0 not nef, 1 nef, 2 ample

    Fan fan_;
    std::string key_;
    Cone basis_cone_;
    std::vector<std::size_t> basis_rays_;
    IntMatrix basis_inverse_;
    IntMatrix projection_;
};

/// Classes in the box [-radius, radius]^{pic rank}, ordered by L1 norm then
/// lexicographically.
std::vector<DivisorClass> ample_classes(const ToricVariety& x, long radius);
std::vector<DivisorClass> nef_classes(const ToricVariety& x, long radius);

}  // namespace toric
