#include "toric/polyhedra.hpp"

#include "toric/error.hpp"
#include "toric/parallel.hpp"

#include <algorithm>
#include <set>

namespace toric {

LinearSystem HPolyhedron::system() const {
    LinearSystem sys(dim);
    for (std::size_t i = 0; i < normals.size(); ++i) sys.add(normals[i], bounds[i], Relation::GreaterEqual);
    return sys;
}

HPolyhedron polytope_of_divisor(const ToricVariety& x, const TDivisor& d) {
    return polytope_of_divisor(x, QDivisor::from(d));
}

HPolyhedron polytope_of_divisor(const ToricVariety& x, const QDivisor& d) {
    if (d.coeffs.size() != x.ray_count()) throw InputError("divisor length does not match ray count");
    HPolyhedron p;
    p.dim = x.dim();
    p.normals = x.fan().rays;
    for (const auto& a : d.coeffs) p.bounds.push_back(-a);
    return p;
}

PolytopeSummary dim_and_lattice_points(const HPolyhedron& p) {
    const LinearSystem sys = p.system();
    if (!sys.bounded()) throw PreconditionError("unbounded");
    PolytopeSummary out;
    out.dim = sys.dimension();
    if (out.dim >= 0) out.points = sys.lattice_points();
    return out;
}

std::pair<Integer, Integer> cube_levels(std::span<const Integer> w) {
    Integer lo = 0, hi = 0;
    for (const auto& c : w) {
        if (c < 0)
            lo += c;
        else
            hi += c;
    }
    return {lo, hi};
}

namespace {

std::vector<IntVector> distinct_up_to_sign(const std::vector<IntVector>& normals, std::size_t n) {
    std::set<IntVector> seen;
    std::vector<IntVector> out;
    for (const auto& w : normals) {
        if (w.size() != n) throw InputError("arrangement normal has wrong dimension");
        if (std::all_of(w.begin(), w.end(), [](const Integer& c) { return c == 0; }))
            throw InputError("arrangement normal is zero");
        IntVector neg = w;
        for (auto& c : neg) c = -c;
        if (seen.count(w) || seen.count(neg)) continue;
        seen.insert(w);
        out.push_back(w);
    }
    return out;
}

IntMatrix doubled_normal_matrix(const std::vector<IntVector>& distinct, std::size_t n) {
    IntMatrix W(distinct.size(), n);
    for (std::size_t i = 0; i < distinct.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) W(i, j) = 2 * distinct[i][j];
    return W;
}

// Constraint for code t of normal w: <x,w> = t/2 (t even) or (t-1)/2 < <x,w> < (t+1)/2.
void add_code_constraint(LinearSystem& sys, const IntVector& w, const Integer& t) {
    if (t % 2 == 0) {
        sys.add(w, Rational(Integer(t / 2)), Relation::Equal);
        return;
    }
    const Integer k = (t - 1) / 2;
    sys.add(w, Rational(k), Relation::Greater);
    IntVector neg = w;
    for (auto& c : neg) c = -c;
    sys.add(neg, Rational(Integer(-(k + 1))), Relation::Greater);
}

LinearSystem unit_cube(std::size_t n) {
    LinearSystem sys(n);
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector e(n, Rational(0));
        e[i] = 1;
        sys.add(e, Rational(0), Relation::GreaterEqual);
        e[i] = -1;
        sys.add(e, Rational(-1), Relation::GreaterEqual);
    }
    return sys;
}

bool face_less(const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.key < b.key;
}

}  // namespace

FaceComplex::FaceComplex(std::vector<IntVector> normals, std::size_t n)
    : normals_(std::move(normals)),
      distinct_(distinct_up_to_sign(normals_, n)),
      n_(n),
      reducer_(doubled_normal_matrix(distinct_, n)) {}

IntVector FaceComplex::code_of(std::span<const Rational> x) const {
    if (x.size() != n_) throw InputError("point has wrong dimension");
    IntVector code;
    code.reserve(distinct_.size());
    for (const auto& w : distinct_) {
        const Rational s = dot(x, w);
        const Integer f = floor_of(s);
        code.push_back(2 * f + (Rational(f) == s ? 0 : 1));
    }
    return code;
}

IntVector FaceComplex::key_of(std::span<const Rational> x) const { return reducer_.reduce(code_of(x)); }

std::optional<std::size_t> FaceComplex::locate(std::span<const Rational> x) const {
    const IntVector key = key_of(x);
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].key == key) return i;
    return std::nullopt;
}

std::vector<std::size_t> FaceComplex::face_counts() const {
    std::vector<std::size_t> counts(n_ + 1, 0);
    for (const auto& f : faces_) ++counts[static_cast<std::size_t>(f.dim)];
    return counts;
}

long FaceComplex::euler_characteristic() const {
    long chi = 0;
    for (const auto& f : faces_) chi += (f.dim % 2 == 0) ? 1 : -1;
    return chi;
}

void FaceComplex::absorb(std::span<const Rational> witness) {
    Face face;
    for (const auto& c : witness) face.sample.push_back(fractional_part(c));
    const IntVector code = code_of(face.sample);
    face.key = reducer_.reduce(code);
    std::vector<RationalVector> equalities;
    for (std::size_t i = 0; i < distinct_.size(); ++i)
        if (code[i] % 2 == 0) equalities.push_back(to_rational(distinct_[i]));
    face.dim = static_cast<int>(n_) - static_cast<int>(rational_rank(equalities, n_));
    for (std::size_t i = 0; i < normals_.size(); ++i) {
        const Rational s = dot(face.sample, normals_[i]);
        if (s.get_den() == 1) face.active.push_back(i);
    }
    auto it = pending_.find(face.key);
    if (it == pending_.end())
        pending_.emplace(face.key, std::move(face));
    else if (face.sample < it->second.sample)
        it->second = std::move(face);
}

void FaceComplex::finalize() {
    faces_.clear();
    for (auto& [k, f] : pending_) faces_.push_back(std::move(f));
    pending_.clear();
    std::sort(faces_.begin(), faces_.end(), face_less);
}

namespace {

struct CellState {
    LinearSystem sys;
};

}  // namespace

FaceComplex torus_arrangement_faces(const std::vector<IntVector>& normals, std::size_t n) {
    FaceComplex fc(normals, n);
    const auto& distinct = fc.distinct_normals();

    std::vector<CellState> cells{CellState{unit_cube(n)}};
    for (const auto& w : distinct) {
        const auto [lo, hi] = cube_levels(w);
        const long first = Integer(2 * lo).get_si();
        const long last = Integer(2 * hi).get_si();
        std::vector<std::vector<CellState>> children(cells.size());
        parallel_for(cells.size(), [&](std::size_t c) {
            for (long t = first; t <= last; ++t) {
                LinearSystem sys = cells[c].sys;
                add_code_constraint(sys, w, Integer(t));
                if (sys.feasible()) children[c].push_back(CellState{std::move(sys)});
            }
        });
        std::vector<CellState> next;
        for (auto& ch : children)
            for (auto& s : ch) next.push_back(std::move(s));
        cells = std::move(next);
    }

    std::vector<RationalVector> witnesses(cells.size());
    parallel_for(cells.size(), [&](std::size_t c) {
        auto x = cells[c].sys.witness();
        if (!x) throw InconsistencyError("torus arrangement: feasible cell without witness");
        witnesses[c] = std::move(*x);
    });
    for (const auto& x : witnesses) fc.absorb(x);
    fc.finalize();
    return fc;
}

FaceComplex torus_arrangement_faces_reference(const std::vector<IntVector>& normals, std::size_t n) {
    FaceComplex fc(normals, n);
    const auto& distinct = fc.distinct_normals();
    std::vector<std::pair<long, long>> ranges;
    for (const auto& w : distinct) {
        const auto [lo, hi] = cube_levels(w);
        ranges.emplace_back(Integer(2 * lo).get_si(), Integer(2 * hi).get_si());
    }
    std::vector<long> code(distinct.size());
    for (std::size_t i = 0; i < code.size(); ++i) code[i] = ranges[i].first;
    for (;;) {
        LinearSystem sys = unit_cube(n);
        for (std::size_t i = 0; i < distinct.size(); ++i) add_code_constraint(sys, distinct[i], Integer(code[i]));
        if (auto x = sys.witness()) fc.absorb(*x);
        std::size_t i = 0;
        while (i < code.size() && code[i] == ranges[i].second) {
            code[i] = ranges[i].first;
            ++i;
        }
        if (i == code.size()) break;
        ++code[i];
    }
    fc.finalize();
    return fc;
}

LinearSystem region_system(const std::vector<IntVector>& normals, const RationalVector& bounds,
                           std::span<const int> signs) {
    if (normals.empty()) throw InputError("region_system: no hyperplanes");
    const std::size_t n = normals.front().size();
    LinearSystem sys(n);
    for (std::size_t i = 0; i < signs.size(); ++i) {
        // sign of <m, w> + b
        if (signs[i] == 0) {
            sys.add(normals[i], -bounds[i], Relation::Equal);
        } else if (signs[i] > 0) {
            sys.add(normals[i], -bounds[i], Relation::Greater);
        } else {
            IntVector neg = normals[i];
            for (auto& c : neg) c = -c;
            sys.add(neg, bounds[i], Relation::Greater);
        }
    }
    return sys;
}

namespace {

Region make_region(const std::vector<IntVector>& normals, const RationalVector& bounds, std::vector<int> signs,
                   const LinearSystem& sys) {
    const std::size_t n = normals.front().size();
    Region r;
    auto x = sys.witness();
    if (!x) throw InconsistencyError("affine region without witness");
    r.sample = std::move(*x);
    std::vector<RationalVector> equalities;
    r.closure.dim = n;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        IntVector neg = normals[i];
        for (auto& c : neg) c = -c;
        if (signs[i] >= 0) {
            r.closure.normals.push_back(normals[i]);
            r.closure.bounds.push_back(-bounds[i]);
        }
        if (signs[i] <= 0) {
            r.closure.normals.push_back(neg);
            r.closure.bounds.push_back(bounds[i]);
        }
        if (signs[i] == 0) equalities.push_back(to_rational(normals[i]));
    }
    r.dim = static_cast<int>(n) - static_cast<int>(rational_rank(equalities, n));
    r.signs = std::move(signs);
    return r;
}

void check_arrangement(const std::vector<IntVector>& normals, const RationalVector& bounds) {
    if (normals.empty()) throw InputError("arrangement has no hyperplanes");
    if (normals.size() != bounds.size()) throw InputError("arrangement: normals and bounds differ in length");
    const std::size_t n = normals.front().size();
    for (const auto& w : normals)
        if (w.size() != n) throw InputError("arrangement: normals of mixed dimension");
}

}  // namespace

std::vector<Region> affine_region_decomposition(const std::vector<IntVector>& normals, const RationalVector& bounds) {
    check_arrangement(normals, bounds);
    const std::size_t n = normals.front().size();

    struct State {
        std::vector<int> signs;
        LinearSystem sys;
    };
    std::vector<State> cells{State{{}, LinearSystem(n)}};
    for (std::size_t h = 0; h < normals.size(); ++h) {
        IntVector neg = normals[h];
        for (auto& v : neg) v = -v;
        std::vector<std::vector<State>> children(cells.size());
        parallel_for(cells.size(), [&](std::size_t c) {
            const State& parent = cells[c];
            for (int s : {-1, 0, 1}) {
                State child{parent.signs, parent.sys};
                child.signs.push_back(s);
                if (s == 0)
                    child.sys.add(normals[h], -bounds[h], Relation::Equal);
                else if (s > 0)
                    child.sys.add(normals[h], -bounds[h], Relation::Greater);
                else
                    child.sys.add(neg, bounds[h], Relation::Greater);
                if (child.sys.feasible()) children[c].push_back(std::move(child));
            }
        });
        std::vector<State> next;
        for (auto& ch : children)
            for (auto& st : ch) next.push_back(std::move(st));
        cells = std::move(next);
    }

    std::vector<Region> out(cells.size());
    parallel_for(cells.size(), [&](std::size_t c) {
        out[c] = make_region(normals, bounds, std::move(cells[c].signs), cells[c].sys);
    });
    std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) { return a.signs < b.signs; });
    return out;
}

std::vector<Region> affine_region_decomposition_reference(const std::vector<IntVector>& normals,
                                                          const RationalVector& bounds) {
    check_arrangement(normals, bounds);
    std::vector<Region> out;
    std::vector<int> signs(normals.size(), -1);
    for (;;) {
        const LinearSystem sys = region_system(normals, bounds, signs);
        if (sys.feasible()) out.push_back(make_region(normals, bounds, signs, sys));
        std::size_t i = signs.size();
        while (i-- > 0) {
            if (signs[i] < 1) {
                ++signs[i];
                break;
            }
            signs[i] = -1;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) { return a.signs < b.signs; });
    return out;
}

}  // namespace toric
