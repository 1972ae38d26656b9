#include "toric/cohomology.hpp"

#include "toric/error.hpp"
#include "toric/parallel.hpp"
#include "toric/polyhedra.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <shared_mutex>

namespace toric {

namespace {

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

// Reads dominate; a racing double compute inserts identical values.
struct Memo {
    std::shared_mutex mutex;
    std::map<std::pair<std::string, std::uint64_t>, std::vector<long>> reduced;
    std::map<std::pair<std::string, IntVector>, CohomologyVector> classes;
};

Memo& memo() {
    static Memo m;
    return m;
}

std::vector<std::uint64_t> fan_faces(const ToricVariety& x) {
    if (x.ray_count() > 63) throw InputError("more than 63 rays are not supported");
    std::set<std::uint64_t> faces;
    for (const auto& cone : x.fan().max_cones) {
        std::uint64_t full = 0;
        for (auto i : cone) full |= bit(i);
        // every subset of a simplicial cone is a face
        for (std::uint64_t sub = full;; sub = (sub - 1) & full) {
            faces.insert(sub);
            if (sub == 0) break;
        }
    }
    return {faces.begin(), faces.end()};
}

}  // namespace

RaySubcomplex induced_subcomplex(const ToricVariety& x, std::uint64_t vertices) {
    RaySubcomplex sc;
    sc.vertices = vertices;
    for (auto f : fan_faces(x))
        if ((f & ~vertices) == 0) sc.faces.push_back(f);
    return sc;
}

std::vector<long> RaySubcomplex::reduced_cohomology(std::size_t max_degree) const {
    // by_size[s] holds faces with s vertices, i.e. cochains of degree s - 1.
    std::vector<std::vector<std::uint64_t>> by_size(max_degree + 3);
    for (auto f : faces) {
        const auto s = static_cast<std::size_t>(std::popcount(f));
        if (s < by_size.size()) by_size[s].push_back(f);
    }
    // rank of the coboundary from size s to size s + 1
    auto coboundary_rank = [&](std::size_t s) -> std::size_t {
        if (s + 1 >= by_size.size()) return 0;
        const auto& src = by_size[s];
        const auto& dst = by_size[s + 1];
        if (src.empty() || dst.empty()) return 0;
        std::vector<RationalVector> rows;
        rows.reserve(dst.size());
        for (auto tau : dst) {
            RationalVector row(src.size(), Rational(0));
            for (std::size_t j = 0; j < src.size(); ++j) {
                const auto sigma = src[j];
                if ((sigma & ~tau) != 0) continue;
                const std::uint64_t extra = tau & ~sigma;
                // position of the added vertex inside tau
                const int pos = std::popcount(tau & (extra - 1));
                row[j] = (pos % 2 == 0) ? 1 : -1;
            }
            rows.push_back(std::move(row));
        }
        return rational_rank(rows, src.size());
    };

    std::vector<std::size_t> ranks(max_degree + 2, 0);
    for (std::size_t s = 0; s < ranks.size(); ++s) ranks[s] = coboundary_rank(s);
    std::vector<long> out(max_degree + 2, 0);
    for (std::size_t s = 0; s < out.size(); ++s) {
        const long cochains = static_cast<long>(by_size[s].size());
        const long out_rank = static_cast<long>(ranks[s]);
        const long in_rank = s == 0 ? 0 : static_cast<long>(ranks[s - 1]);
        out[s] = cochains - out_rank - in_rank;
    }
    return out;
}

std::vector<long> induced_reduced_cohomology(const ToricVariety& x, std::uint64_t vertices) {
    auto& m = memo();
    const auto key = std::make_pair(x.key(), vertices);
    {
        std::shared_lock lock(m.mutex);
        auto it = m.reduced.find(key);
        if (it != m.reduced.end()) return it->second;
    }
    // degrees -1 .. n-1
    auto value = induced_subcomplex(x, vertices).reduced_cohomology(x.dim() - 1);
    std::unique_lock lock(m.mutex);
    m.reduced[key] = value;
    return value;
}

namespace {

bool all_zero(const std::vector<long>& v) {
    return std::all_of(v.begin(), v.end(), [](long a) { return a == 0; });
}

RationalVector bounds_of(const TDivisor& d) { return to_rational(d.coeffs); }

}  // namespace

CohomologyVector sheaf_cohomology(const ToricVariety& x, const TDivisor& d) {
    x.check_divisor(d);
    const auto& rays = x.fan().rays;
    const RationalVector bounds = bounds_of(d);
    const auto regions = affine_region_decomposition(rays, bounds);

    std::vector<CohomologyVector> partial(regions.size(), CohomologyVector(x.dim() + 1, 0));
    parallel_for(regions.size(), [&](std::size_t r) {
        const auto& region = regions[r];
        std::uint64_t negative = 0;
        for (std::size_t i = 0; i < region.signs.size(); ++i)
            if (region.signs[i] < 0) negative |= bit(i);
        const auto reduced = induced_reduced_cohomology(x, negative);
        if (all_zero(reduced)) return;
        const LinearSystem sys = region_system(rays, bounds, region.signs);
        if (!sys.bounded())
            throw InconsistencyError("unbounded contributing region for divisor " + to_string(d.coeffs));
        const long points = static_cast<long>(sys.count_lattice_points());
        for (std::size_t k = 0; k < reduced.size(); ++k) partial[r][k] += points * reduced[k];
    });

    CohomologyVector h(x.dim() + 1, 0);
    for (const auto& p : partial)
        for (std::size_t q = 0; q < h.size(); ++q) h[q] += p[q];
    return h;
}

CohomologyVector sheaf_cohomology_reference(const ToricVariety& x, const TDivisor& d) {
    x.check_divisor(d);
    const auto& rays = x.fan().rays;
    const std::size_t n = x.dim();
    const std::size_t r = rays.size();

    // Vertices of the arrangement <m, v_rho> = -a_rho.
    std::optional<IntVector> lo, hi;
    std::vector<std::size_t> pick(n);
    std::vector<bool> mask(r, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
    do {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < r; ++i)
            if (mask[i]) idx.push_back(i);
        IntMatrix A(n, n);
        RationalVector b;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) A(i, j) = rays[idx[i]][j];
            b.emplace_back(-d.coeffs[idx[i]]);
        }
        if (determinant(A) == 0) continue;
        const auto v = solve_rational(A, b);
        IntVector vl, vh;
        for (const auto& c : *v) {
            vl.push_back(floor_of(c));
            vh.push_back(ceil_of(c));
        }
        if (!lo) {
            lo = vl;
            hi = vh;
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                if (vl[j] < (*lo)[j]) (*lo)[j] = vl[j];
                if (vh[j] > (*hi)[j]) (*hi)[j] = vh[j];
            }
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));

    CohomologyVector h(n + 1, 0);
    if (!lo) return h;
    IntVector m = *lo;
    for (;;) {
        std::uint64_t negative = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (dot(m, rays[i]) < -d.coeffs[i]) negative |= bit(i);
        const auto reduced = induced_reduced_cohomology(x, negative);
        for (std::size_t k = 0; k < reduced.size(); ++k) h[k] += reduced[k];
        std::size_t j = 0;
        while (j < n && m[j] == (*hi)[j]) {
            m[j] = (*lo)[j];
            ++j;
        }
        if (j == n) break;
        ++m[j];
    }
    return h;
}

CohomologyVector class_cohomology(const ToricVariety& x, const DivisorClass& c) {
    x.check_class(c);
    auto& m = memo();
    auto key = std::make_pair(x.key(), c.coords);
    {
        std::shared_lock lock(m.mutex);
        auto it = m.classes.find(key);
        if (it != m.classes.end()) return it->second;
    }
    auto value = sheaf_cohomology(x, x.section(c));
    std::unique_lock lock(m.mutex);
    m.classes[std::move(key)] = value;
    return value;
}

long euler_characteristic(const ToricVariety& x, const DivisorClass& c) {
    const auto h = class_cohomology(x, c);
    long chi = 0;
    for (std::size_t q = 0; q < h.size(); ++q) chi += (q % 2 == 0) ? h[q] : -h[q];
    return chi;
}

const CohomologyVector& CohomologyTable::at(const DivisorClass& c) const {
    auto it = values.find(c);
    if (it == values.end()) throw PreconditionError("table incomplete at class " + c.str());
    return it->second;
}

CohomologyTable CohomologyTable::twisted(const DivisorClass& shift) const {
    CohomologyTable out;
    for (const auto& [c, h] : values) out.values.emplace(c - shift, h);
    return out;
}

CohomologyTable cohomology_table(const ToricVariety& x, const std::vector<DivisorClass>& classes) {
    std::vector<CohomologyVector> rows(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) { rows[i] = class_cohomology(x, classes[i]); });
    CohomologyTable t;
    for (std::size_t i = 0; i < classes.size(); ++i) t.values.emplace(classes[i], std::move(rows[i]));
    return t;
}

std::vector<DivisorClass> class_window(std::size_t rank, long lo, long hi) {
    std::vector<DivisorClass> out;
    if (lo > hi) return out;
    IntVector c(rank, Integer(lo));
    for (;;) {
        out.push_back(DivisorClass{c});
        std::size_t j = rank;
        while (j-- > 0) {
            if (c[j] < hi) {
                ++c[j];
                break;
            }
            c[j] = lo;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

int bb_vanishing_floor(const ToricVariety& x, const QDivisor& d) {
    if (!x.is_nef(d)) throw PreconditionError("not nef");
    return polytope_of_divisor(x, d).system().dimension();
}

void clear_cohomology_cache() {
    auto& m = memo();
    std::unique_lock lock(m.mutex);
    m.reduced.clear();
    m.classes.clear();
}

}  // namespace toric
