#include "toric/fan.hpp"

#include "toric/error.hpp"
#include "toric/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace toric {

IntMatrix Fan::ray_matrix() const { return IntMatrix::from_rows(rays, rank); }

namespace {

std::string cones_string(std::vector<Cone> cones) {
    for (auto& c : cones) std::sort(c.begin(), c.end());
    std::sort(cones.begin(), cones.end());
    std::string s = "[";
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (i) s += ',';
        s += '[';
        for (std::size_t j = 0; j < cones[i].size(); ++j) {
            if (j) s += ',';
            s += std::to_string(cones[i][j]);
        }
        s += ']';
    }
    return s + "]";
}

std::string rays_string(const std::vector<IntVector>& rays) {
    std::string s = "[";
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (i) s += ',';
        s += to_string(rays[i]);
    }
    return s + "]";
}

}  // namespace

std::string Fan::key() const {
    return std::to_string(rank) + "|" + rays_string(rays) + "|" + cones_string(max_cones);
}

std::string Fan::canonical_form() const {
    std::vector<std::size_t> order(rays.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rays[a] < rays[b]; });
    std::vector<std::size_t> where(rays.size());
    std::vector<IntVector> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = i;
        sorted.push_back(rays[order[i]]);
    }
    std::vector<Cone> cones;
    for (const auto& c : max_cones) {
        Cone m;
        for (auto i : c) m.push_back(i < where.size() ? where[i] : i);
        cones.push_back(std::move(m));
    }
    return std::to_string(rank) + "|" + rays_string(sorted) + "|" + cones_string(std::move(cones));
}

namespace {

IntMatrix cone_matrix(const Fan& f, const Cone& c) {
    IntMatrix B(c.size(), f.rank);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < f.rank; ++j) B(i, j) = f.rays[c[i]][j];
    return B;
}

// Closed simplicial cone membership: p = sum lambda_i v_i with lambda >= 0.
bool cone_contains(const Fan& f, const Cone& c, std::span<const Rational> p) {
    const auto sol = solve_rational(cone_matrix(f, c).transpose(), p);
    if (!sol) return false;
    return std::all_of(sol->begin(), sol->end(), [](const Rational& q) { return q >= 0; });
}

}  // namespace

FanReport validate_fan(const Fan& f) {
    if (f.rank == 0) throw InputError("fan: rank must be positive");
    if (f.rays.empty()) throw InputError("fan: no rays");
    std::set<IntVector> seen;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const auto& v = f.rays[i];
        if (v.size() != f.rank)
            throw InputError("fan: ray " + std::to_string(i) + " has length " + std::to_string(v.size()) +
                             ", expected " + std::to_string(f.rank));
        if (gcd_of(v) != 1)
            throw InputError("fan: ray " + std::to_string(i) + " " + to_string(v) + " is not primitive");
        if (!seen.insert(v).second) throw InputError("fan: duplicate ray " + to_string(v));
    }
    if (f.max_cones.empty()) throw InputError("fan: no maximal cones");
    std::set<Cone> cone_set;
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        Cone c = f.max_cones[k];
        std::sort(c.begin(), c.end());
        if (c.empty()) throw InputError("fan: cone " + std::to_string(k) + " is empty");
        for (auto i : c)
            if (i >= f.rays.size())
                throw InputError("fan: cone " + std::to_string(k) + " references ray " + std::to_string(i) +
                                 " out of range");
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw InputError("fan: cone " + std::to_string(k) + " repeats a ray");
        if (!cone_set.insert(c).second) throw InputError("fan: duplicate cone " + std::to_string(k));
    }

    FanReport report;
    report.simplicial = true;
    report.smooth = true;
    for (const auto& c : f.max_cones) {
        if (c.size() != f.rank) {
            report.simplicial = false;
            report.smooth = false;
            continue;
        }
        const Integer det = determinant(cone_matrix(f, c));
        if (det == 0) report.simplicial = false;
        if (abs(det) != 1) report.smooth = false;
    }
    if (!report.simplicial) {
        report.notes.push_back("non-simplicial maximal cone; completeness not checked");
        return report;
    }

    // Facet pairing: every facet is shared by exactly two cones lying on opposite sides.
    std::map<Cone, std::vector<std::pair<std::size_t, int>>> facets;
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        Cone c = f.max_cones[k];
        std::sort(c.begin(), c.end());
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Cone facet;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) facet.push_back(c[i]);
            const IntMatrix normal = integer_kernel(cone_matrix(f, facet));
            const IntVector u = normal.col(0);
            const int side = sgn(dot(u, f.rays[c[drop]]));
            facets[facet].emplace_back(k, side);
        }
    }
    bool paired = true;
    std::vector<std::vector<std::size_t>> adjacency(f.max_cones.size());
    for (const auto& [facet, owners] : facets) {
        if (owners.size() != 2 || owners[0].second == owners[1].second) {
            paired = false;
            continue;
        }
        adjacency[owners[0].first].push_back(owners[1].first);
        adjacency[owners[1].first].push_back(owners[0].first);
    }
    if (!paired) report.notes.push_back("unmatched or one-sided facet");

    std::vector<bool> reached(f.max_cones.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
        const auto k = stack.back();
        stack.pop_back();
        for (auto j : adjacency[k])
            if (!reached[j]) {
                reached[j] = true;
                stack.push_back(j);
            }
    }
    const bool connected = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
    if (!connected) report.notes.push_back("cones not strongly connected");

    // With pairing and connectivity the cones cover the sphere some number of
    // times; an interior point of the first cone must lie in no other cone.
    bool single_cover = true;
    if (paired && connected) {
        RationalVector p(f.rank, Rational(0));
        for (auto i : f.max_cones[0])
            for (std::size_t j = 0; j < f.rank; ++j) p[j] += f.rays[i][j];
        std::size_t hits = 0;
        for (const auto& c : f.max_cones)
            if (cone_contains(f, c, p)) ++hits;
        single_cover = hits == 1;
        if (!single_cover) report.notes.push_back("cones overlap");
    }
    report.complete = paired && connected && single_cover;
    report.notes.push_back("projectivity assumed");
    return report;
}

Fan product_fan(const Fan& f, const Fan& g) {
    Fan out;
    out.rank = f.rank + g.rank;
    for (const auto& v : f.rays) {
        IntVector w = v;
        w.resize(out.rank, Integer(0));
        out.rays.push_back(std::move(w));
    }
    for (const auto& v : g.rays) {
        IntVector w(f.rank, Integer(0));
        w.insert(w.end(), v.begin(), v.end());
        out.rays.push_back(std::move(w));
    }
    for (const auto& cf : f.max_cones)
        for (const auto& cg : g.max_cones) {
            Cone c = cf;
            for (auto i : cg) c.push_back(i + f.rays.size());
            out.max_cones.push_back(std::move(c));
        }
    return out;
}

TDivisor TDivisor::operator+(const TDivisor& o) const {
    if (o.coeffs.size() != coeffs.size()) throw InputError("divisor length mismatch");
    TDivisor r = *this;
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
}

TDivisor TDivisor::operator-(const TDivisor& o) const { return *this + (-o); }

TDivisor TDivisor::operator-() const {
    TDivisor r = *this;
    for (auto& a : r.coeffs) a = -a;
    return r;
}

TDivisor TDivisor::scaled(const Integer& k) const {
    TDivisor r = *this;
    for (auto& a : r.coeffs) a *= k;
    return r;
}

Integer QDivisor::denominator() const {
    Integer l = 1;
    for (const auto& q : coeffs) l = lcm(l, Integer(q.get_den()));
    return l;
}

TDivisor QDivisor::ceiling() const {
    TDivisor d;
    for (const auto& q : coeffs) d.coeffs.push_back(ceil_of(q));
    return d;
}

QDivisor QDivisor::operator+(const QDivisor& o) const {
    if (o.coeffs.size() != coeffs.size()) throw InputError("divisor length mismatch");
    QDivisor r = *this;
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
}

QDivisor QDivisor::scaled(const Rational& k) const {
    QDivisor r = *this;
    for (auto& a : r.coeffs) a *= k;
    return r;
}

QDivisor QDivisor::from(const TDivisor& d) { return QDivisor{to_rational(d.coeffs)}; }

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    if (o.coords.size() != coords.size()) throw InputError("class length mismatch");
    DivisorClass r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const { return *this + (-o); }

DivisorClass DivisorClass::operator-() const {
    DivisorClass r = *this;
    for (auto& a : r.coords) a = -a;
    return r;
}

DivisorClass DivisorClass::scaled(const Integer& k) const {
    DivisorClass r = *this;
    for (auto& a : r.coords) a *= k;
    return r;
}

bool DivisorClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Integer& a) { return a == 0; });
}

std::strong_ordering DivisorClass::operator<=>(const DivisorClass& o) const {
    const std::size_t n = std::min(coords.size(), o.coords.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = cmp(coords[i], o.coords[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return coords.size() <=> o.coords.size();
}

std::size_t DivisorClassHash::operator()(const DivisorClass& c) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& a : c.coords) h ^= std::hash<std::string>{}(a.get_str()) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
}

TDivisor canonical_divisor(const Fan& f) { return TDivisor{IntVector(f.rays.size(), Integer(-1))}; }

ToricVariety::ToricVariety(Fan fan) : fan_(std::move(fan)) {
    const FanReport report = validate_fan(fan_);
    if (!report.smooth || !report.complete) throw PreconditionError("fan is not smooth and complete");
    for (auto& c : fan_.max_cones) std::sort(c.begin(), c.end());
    key_ = fan_.key();

    basis_cone_ = *std::min_element(fan_.max_cones.begin(), fan_.max_cones.end());
    std::vector<bool> in_basis(fan_.rays.size(), false);
    for (auto i : basis_cone_) in_basis[i] = true;
    for (std::size_t i = 0; i < fan_.rays.size(); ++i)
        if (!in_basis[i]) basis_rays_.push_back(i);

    // det = +-1, so the Smith form is the identity and B^{-1} = V U.
    const IntMatrix B = cone_matrix(fan_, basis_cone_);
    const auto snf = smith_normal_form(B);
    basis_inverse_ = snf.V * snf.U;

    // class coordinate t = a_j - v_j^T B^{-1} a_sigma for each ray j off the basis cone.
    const std::size_t n = fan_.rank;
    projection_ = IntMatrix(basis_rays_.size(), fan_.rays.size());
    for (std::size_t t = 0; t < basis_rays_.size(); ++t) {
        const std::size_t j = basis_rays_[t];
        projection_(t, j) = 1;
        for (std::size_t i = 0; i < n; ++i) {
            Integer w = 0;
            for (std::size_t k = 0; k < n; ++k) w += fan_.rays[j][k] * basis_inverse_(k, i);
            projection_(t, basis_cone_[i]) -= w;
        }
    }
}

void ToricVariety::check_divisor(const TDivisor& d) const {
    if (d.coeffs.size() != fan_.rays.size())
        throw InputError("divisor has " + std::to_string(d.coeffs.size()) + " coefficients, fan has " +
                         std::to_string(fan_.rays.size()) + " rays");
}

void ToricVariety::check_class(const DivisorClass& c) const {
    if (c.coords.size() != pic_rank())
        throw InputError("class has " + std::to_string(c.coords.size()) + " coordinates, Picard rank is " +
                         std::to_string(pic_rank()));
}

DivisorClass ToricVariety::class_of(const TDivisor& d) const {
    check_divisor(d);
    return DivisorClass{projection_ * std::span<const Integer>(d.coeffs)};
}

TDivisor ToricVariety::section(const DivisorClass& c) const {
    check_class(c);
    TDivisor d{IntVector(fan_.rays.size(), Integer(0))};
    for (std::size_t t = 0; t < basis_rays_.size(); ++t) d.coeffs[basis_rays_[t]] = c.coords[t];
    return d;
}

TDivisor ToricVariety::principal(std::span<const Integer> m) const {
    if (m.size() != fan_.rank) throw InputError("character has wrong dimension");
    TDivisor d;
    for (const auto& v : fan_.rays) d.coeffs.push_back(dot(m, v));
    return d;
}

RationalVector ToricVariety::principal(std::span<const Rational> m) const {
    if (m.size() != fan_.rank) throw InputError("character has wrong dimension");
    RationalVector d;
    for (const auto& v : fan_.rays) d.push_back(dot(m, v));
    return d;
}

std::vector<RationalVector> ToricVariety::cartier_data(std::span<const Rational> coeffs) const {
    std::vector<RationalVector> out;
    out.reserve(fan_.max_cones.size());
    for (const auto& c : fan_.max_cones) {
        RationalVector rhs;
        for (auto i : c) rhs.push_back(-coeffs[i]);
        auto m = solve_rational(cone_matrix(fan_, c), rhs);
        if (!m) throw InconsistencyError("Cartier data: singular cone in a smooth fan");
        out.push_back(std::move(*m));
    }
    return out;
}

int ToricVariety::convexity(std::span<const Rational> coeffs) const {
    if (coeffs.size() != fan_.rays.size()) throw InputError("divisor length mismatch");
    const auto data = cartier_data(coeffs);
    bool strict = true;
    for (std::size_t k = 0; k < fan_.max_cones.size(); ++k) {
        const auto& cone = fan_.max_cones[k];
        for (std::size_t r = 0; r < fan_.rays.size(); ++r) {
            const Rational slack = dot(data[k], fan_.rays[r]) + coeffs[r];
            if (slack < 0) return 0;
            if (slack == 0 && !std::binary_search(cone.begin(), cone.end(), r)) strict = false;
        }
    }
    return strict ? 2 : 1;
}

bool ToricVariety::is_nef(const TDivisor& d) const { return convexity(to_rational(d.coeffs)) >= 1; }
bool ToricVariety::is_ample(const TDivisor& d) const { return convexity(to_rational(d.coeffs)) == 2; }
bool ToricVariety::is_nef(const QDivisor& d) const { return convexity(d.coeffs) >= 1; }
bool ToricVariety::is_ample(const QDivisor& d) const { return convexity(d.coeffs) == 2; }

bool ToricVariety::is_effective(const DivisorClass& c) const {
    return polytope_of_divisor(*this, section(c)).system().find_lattice_point().has_value();
}

namespace {

std::vector<DivisorClass> classes_where(const ToricVariety& x, long radius, bool ample) {
    std::vector<DivisorClass> out;
    const std::size_t r = x.pic_rank();
    IntVector c(r, Integer(-radius));
    for (;;) {
        DivisorClass cls{c};
        if (ample ? x.is_ample(cls) : x.is_nef(cls)) out.push_back(cls);
        std::size_t j = 0;
        while (j < r && c[j] == radius) {
            c[j] = -radius;
            ++j;
        }
        if (j == r) break;
        ++c[j];
    }
    auto norm = [](const DivisorClass& d) {
        Integer s = 0;
        for (const auto& v : d.coords) s += abs(v);
        return s;
    };
    std::stable_sort(out.begin(), out.end(), [&](const DivisorClass& a, const DivisorClass& b) {
        const Integer na = norm(a), nb = norm(b);
        return na != nb ? na < nb : a < b;
    });
    return out;
}

}  // namespace

std::vector<DivisorClass> ample_classes(const ToricVariety& x, long radius) { return classes_where(x, radius, true); }

std::vector<DivisorClass> nef_classes(const ToricVariety& x, long radius) { return classes_where(x, radius, false); }

}  // namespace toric
