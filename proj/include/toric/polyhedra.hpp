#pragma once

// Section polytopes, lattice points, and face enumeration for rational
// hyperplane arrangements (affine, and periodic on the torus R^n / Z^n).
//
// Each enumeration has two entry points: the OpenMP kernel used by the rest of
// the library, and a brute-force `_reference` kept for testing and benchmarks.

#include "toric/fan.hpp"
#include "toric/lattice.hpp"
#include "toric/linear_system.hpp"

#include <map>
#include <optional>
#include <vector>

namespace toric {

/// { m : <m, normal_i> >= bound_i for all i }
struct HPolyhedron {
    std::size_t dim = 0;
    std::vector<IntVector> normals;
    RationalVector bounds;

    LinearSystem system() const;
};

/// P_D = { m : <m, v_rho> >= -a_rho }
HPolyhedron polytope_of_divisor(const ToricVariety& x, const TDivisor& d);
HPolyhedron polytope_of_divisor(const ToricVariety& x, const QDivisor& d);

struct PolytopeSummary {
    int dim = -1;
    std::vector<IntVector> points;  // lexicographic order
};

/// Throws PreconditionError("unbounded") when the recession cone is nontrivial.
PolytopeSummary dim_and_lattice_points(const HPolyhedron& p);

enum class Ambient { AffineSpace, Torus };

struct Face {
    int dim = 0;
    RationalVector sample;            // torus: coordinates in [0, 1)
    std::vector<std::size_t> active;  // indices of normals whose hyperplanes contain the face
    IntVector key;                    // canonical cell code (see FaceComplex)
};

/// Faces of the periodic arrangement { x in R^n/Z^n : <x, w> in Z } for a list
/// of normals w.
///
/// A cell of the lifted arrangement in R^n is determined by its code: for each
/// normal, 2k when <x, w> = k and 2k+1 when k < <x, w> < k+1. Translating by
/// m in Z^n adds 2<m, w>, so torus faces are the cosets of codes modulo the
/// lattice spanned by the columns of 2W; `key` is the Hermite-reduced coset
/// representative.
class FaceComplex {
public:
    FaceComplex(std::vector<IntVector> normals, std::size_t n);

    Ambient ambient() const { return Ambient::Torus; }
    std::size_t rank() const { return n_; }
    const std::vector<IntVector>& normals() const { return normals_; }
    const std::vector<Face>& faces() const { return faces_; }

    /// Codes over the sign-deduplicated normals.
    IntVector code_of(std::span<const Rational> x) const;
    IntVector key_of(std::span<const Rational> x) const;
    /// Index of the face containing x (any lift), or nullopt if none matches.
    std::optional<std::size_t> locate(std::span<const Rational> x) const;

    std::vector<std::size_t> face_counts() const;  // by dimension 0..n
    long euler_characteristic() const;

    // Assembled by the enumeration kernels.
    const std::vector<IntVector>& distinct_normals() const { return distinct_; }
    void absorb(std::span<const Rational> witness);
    void finalize();

private:
    std::vector<IntVector> normals_;
    std::vector<IntVector> distinct_;
    std::size_t n_;
    LatticeReducer reducer_;
    std::map<IntVector, Face> pending_;
    std::vector<Face> faces_;
};

FaceComplex torus_arrangement_faces(const std::vector<IntVector>& normals, std::size_t n);
FaceComplex torus_arrangement_faces_reference(const std::vector<IntVector>& normals, std::size_t n);

/// Level range of <x, w> over the unit cube: [sum min(w_i, 0), sum max(w_i, 0)].
std::pair<Integer, Integer> cube_levels(std::span<const Integer> w);

/// A relatively open region of constant sign of <m, normal_i> + bound_i.
struct Region {
    std::vector<int> signs;  // -1, 0, +1 per hyperplane
    int dim = 0;
    RationalVector sample;
    HPolyhedron closure;
};

/// Exact system for the relatively open region with the given sign pattern.
LinearSystem region_system(const std::vector<IntVector>& normals, const RationalVector& bounds,
                           std::span<const int> signs);

/// All nonempty sign regions, sorted by sign vector.
std::vector<Region> affine_region_decomposition(const std::vector<IntVector>& normals, const RationalVector& bounds);
std::vector<Region> affine_region_decomposition_reference(const std::vector<IntVector>& normals,
                                                          const RationalVector& bounds);

}  // namespace toric
