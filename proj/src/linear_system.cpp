#include "toric/linear_system.hpp"

#include "toric/error.hpp"

#include <algorithm>
#include <map>

namespace toric {

bool Interval::empty() const {
    if (!lower || !upper) return false;
    if (*lower > *upper) return true;
    return *lower == *upper && (lower_strict || upper_strict);
}

bool Interval::contains(const Rational& x) const {
    if (lower && (lower_strict ? x <= *lower : x < *lower)) return false;
    if (upper && (upper_strict ? x >= *upper : x > *upper)) return false;
    return true;
}

Rational Interval::pick() const {
    if (lower && upper) {
        if (*lower == *upper) return *lower;
        return (*lower + *upper) / 2;
    }
    if (lower) return *lower + 1;
    if (upper) return *upper - 1;
    return 0;
}

namespace {

struct Reduced {
    bool infeasible = false;
    std::vector<Constraint> rows;
};

bool constant_holds(const Rational& rhs, Relation rel) {
    switch (rel) {
        case Relation::Equal: return rhs == 0;
        case Relation::GreaterEqual: return rhs <= 0;
        case Relation::Greater: return rhs < 0;
    }
    return false;
}

// Scale so the first nonzero coefficient has absolute value one (and is positive
// for equalities), then merge parallel rows keeping the tightest bound.
Reduced normalize(std::vector<Constraint> rows) {
    Reduced out;
    std::map<std::pair<RationalVector, bool>, Constraint> merged;
    for (auto& c : rows) {
        auto it = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational& q) { return q != 0; });
        if (it == c.coeffs.end()) {
            if (!constant_holds(c.rhs, c.rel)) {
                out.infeasible = true;
                return out;
            }
            continue;
        }
        Rational scale = 1 / abs(*it);
        if (c.rel == Relation::Equal && *it < 0) scale = -scale;
        if (scale != 1) {
            for (auto& q : c.coeffs) q *= scale;
            c.rhs *= scale;
        }
        const bool eq = c.rel == Relation::Equal;
        auto key = std::make_pair(c.coeffs, eq);
        auto found = merged.find(key);
        if (found == merged.end()) {
            merged.emplace(std::move(key), std::move(c));
            continue;
        }
        Constraint& cur = found->second;
        if (eq) {
            if (cur.rhs != c.rhs) {
                out.infeasible = true;
                return out;
            }
        } else if (c.rhs > cur.rhs || (c.rhs == cur.rhs && c.rel == Relation::Greater)) {
            cur = std::move(c);
        }
    }
    out.rows.reserve(merged.size());
    for (auto& [k, c] : merged) out.rows.push_back(std::move(c));
    return out;
}

Reduced eliminate(const Reduced& sys, std::size_t var) {
    if (sys.infeasible) return sys;
    const auto& rows = sys.rows;

    auto eq = std::find_if(rows.begin(), rows.end(), [&](const Constraint& c) {
        return c.rel == Relation::Equal && c.coeffs[var] != 0;
    });
    std::vector<Constraint> next;
    if (eq != rows.end()) {
        for (auto it = rows.begin(); it != rows.end(); ++it) {
            if (it == eq) continue;
            Constraint c = *it;
            if (c.coeffs[var] != 0) {
                const Rational f = c.coeffs[var] / eq->coeffs[var];
                for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] -= f * eq->coeffs[j];
                c.rhs -= f * eq->rhs;
            }
            next.push_back(std::move(c));
        }
        return normalize(std::move(next));
    }

    std::vector<const Constraint*> pos, neg;
    for (const auto& c : rows) {
        if (c.coeffs[var] > 0)
            pos.push_back(&c);
        else if (c.coeffs[var] < 0)
            neg.push_back(&c);
        else
            next.push_back(c);
    }
    for (const auto* p : pos)
        for (const auto* n : neg) {
            const Rational fp = 1 / p->coeffs[var];
            const Rational fn = -1 / n->coeffs[var];
            Constraint c;
            c.coeffs.resize(p->coeffs.size());
            for (std::size_t j = 0; j < c.coeffs.size(); ++j) c.coeffs[j] = fp * p->coeffs[j] + fn * n->coeffs[j];
            c.coeffs[var] = 0;
            c.rhs = fp * p->rhs + fn * n->rhs;
            c.rel = (p->rel == Relation::Greater || n->rel == Relation::Greater) ? Relation::Greater
                                                                                 : Relation::GreaterEqual;
            next.push_back(std::move(c));
        }
    return normalize(std::move(next));
}

// Interval of `var` from rows whose other variables are already substituted
// (the contribution of the fixed variables is supplied by `rest`).
Interval bounds_of(const std::vector<Constraint>& rows, std::size_t var, std::span<const Rational> fixed,
                   std::size_t fixed_count) {
    Interval iv;
    auto tighten_lower = [&](const Rational& v, bool strict) {
        if (!iv.lower || v > *iv.lower) {
            iv.lower = v;
            iv.lower_strict = strict;
        } else if (v == *iv.lower) {
            iv.lower_strict = iv.lower_strict || strict;
        }
    };
    auto tighten_upper = [&](const Rational& v, bool strict) {
        if (!iv.upper || v < *iv.upper) {
            iv.upper = v;
            iv.upper_strict = strict;
        } else if (v == *iv.upper) {
            iv.upper_strict = iv.upper_strict || strict;
        }
    };
    for (const auto& c : rows) {
        const Rational& a = c.coeffs[var];
        if (a == 0) continue;
        Rational rhs = c.rhs;
        for (std::size_t j = 0; j < fixed_count; ++j)
            if (j != var && c.coeffs[j] != 0) rhs -= c.coeffs[j] * fixed[j];
        const Rational v = rhs / a;
        const bool strict = c.rel == Relation::Greater;
        if (c.rel == Relation::Equal) {
            tighten_lower(v, false);
            tighten_upper(v, false);
        } else if (a > 0) {
            tighten_lower(v, strict);
        } else {
            tighten_upper(v, strict);
        }
    }
    return iv;
}

Reduced reduced_of(const std::vector<Constraint>& rows) { return normalize(rows); }

}  // namespace

void LinearSystem::add(Constraint c) {
    if (c.coeffs.size() != dim_) throw InputError("LinearSystem: constraint has wrong dimension");
    rows_.push_back(std::move(c));
}

void LinearSystem::add(RationalVector coeffs, Rational rhs, Relation rel) {
    add(Constraint{std::move(coeffs), std::move(rhs), rel});
}

void LinearSystem::add(std::span<const Integer> coeffs, const Rational& rhs, Relation rel) {
    add(Constraint{to_rational(coeffs), rhs, rel});
}

void LinearSystem::add_all(const LinearSystem& other) {
    for (const auto& c : other.rows_) add(c);
}

bool LinearSystem::satisfied_by(std::span<const Rational> x) const {
    for (const auto& c : rows_) {
        Rational s = 0;
        for (std::size_t j = 0; j < dim_; ++j) s += c.coeffs[j] * x[j];
        switch (c.rel) {
            case Relation::Equal:
                if (s != c.rhs) return false;
                break;
            case Relation::GreaterEqual:
                if (s < c.rhs) return false;
                break;
            case Relation::Greater:
                if (s <= c.rhs) return false;
                break;
        }
    }
    return true;
}

bool LinearSystem::feasible() const {
    Reduced sys = reduced_of(rows_);
    for (std::size_t v = dim_; v-- > 0 && !sys.infeasible;) sys = eliminate(sys, v);
    return !sys.infeasible;
}

std::optional<RationalVector> LinearSystem::witness() const {
    // stages[k] involves only variables 0..k-1.
    std::vector<Reduced> stages(dim_ + 1);
    stages[dim_] = reduced_of(rows_);
    for (std::size_t v = dim_; v-- > 0;) stages[v] = eliminate(stages[v + 1], v);
    if (stages[0].infeasible) return std::nullopt;

    RationalVector x(dim_, Rational(0));
    for (std::size_t k = 0; k < dim_; ++k) {
        const Interval iv = bounds_of(stages[k + 1].rows, k, x, k);
        if (iv.empty()) throw InconsistencyError("LinearSystem: back-substitution hit an empty interval");
        x[k] = iv.pick();
    }
    if (!satisfied_by(x)) throw InconsistencyError("LinearSystem: witness violates the system");
    return x;
}

Interval LinearSystem::project(std::size_t var) const {
    Reduced sys = reduced_of(rows_);
    for (std::size_t v = dim_; v-- > 0;)
        if (v != var) sys = eliminate(sys, v);
    if (sys.infeasible) {
        Interval iv;
        iv.lower = 1;
        iv.upper = 0;
        return iv;
    }
    return bounds_of(sys.rows, var, {}, 0);
}

LinearSystem LinearSystem::fixed(std::size_t var, const Rational& value) const {
    LinearSystem out(dim_);
    out.rows_ = rows_;
    for (auto& c : out.rows_) {
        if (c.coeffs[var] == 0) continue;
        c.rhs -= c.coeffs[var] * value;
        c.coeffs[var] = 0;
    }
    return out;
}

int LinearSystem::dimension() const {
    if (!feasible()) return -1;
    std::vector<RationalVector> equalities;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& c = rows_[i];
        if (c.rel == Relation::Equal) {
            equalities.push_back(c.coeffs);
        } else if (c.rel == Relation::GreaterEqual) {
            LinearSystem probe = *this;
            probe.rows_[i].rel = Relation::Greater;
            if (!probe.feasible()) equalities.push_back(c.coeffs);
        }
    }
    return static_cast<int>(dim_) - static_cast<int>(rational_rank(equalities, dim_));
}

bool LinearSystem::bounded() const {
    if (!feasible()) return true;
    LinearSystem cone(dim_);
    for (const auto& c : rows_)
        cone.add(c.coeffs, Rational(0), c.rel == Relation::Equal ? Relation::Equal : Relation::GreaterEqual);
    for (std::size_t i = 0; i < dim_; ++i)
        for (int sign : {1, -1}) {
            LinearSystem probe = cone;
            RationalVector e(dim_, Rational(0));
            e[i] = sign;
            probe.add(std::move(e), Rational(1), Relation::GreaterEqual);
            if (probe.feasible()) return false;
        }
    return true;
}

namespace {

// Returns false once `visit` asks to stop.
bool lattice_recurse(const LinearSystem& sys, std::size_t k, IntVector& point,
                     const std::function<bool(const IntVector&)>& visit) {
    if (k == sys.dim()) return sys.feasible() ? visit(point) : true;
    const Interval iv = sys.project(k);
    if (iv.empty()) return true;
    if (!iv.bounded()) throw PreconditionError("lattice enumeration over an unbounded set");
    Integer lo = iv.lower_strict ? Integer(floor_of(*iv.lower) + 1) : ceil_of(*iv.lower);
    Integer hi = iv.upper_strict ? Integer(ceil_of(*iv.upper) - 1) : floor_of(*iv.upper);
    for (Integer v = lo; v <= hi; ++v) {
        point[k] = v;
        if (!lattice_recurse(sys.fixed(k, Rational(v)), k + 1, point, visit)) return false;
    }
    return true;
}

}  // namespace

void LinearSystem::for_each_lattice_point(const std::function<void(const IntVector&)>& visit) const {
    if (!feasible()) return;
    if (!bounded()) throw PreconditionError("lattice enumeration over an unbounded set");
    IntVector point(dim_, Integer(0));
    lattice_recurse(*this, 0, point, [&](const IntVector& p) {
        visit(p);
        return true;
    });
}

std::optional<IntVector> LinearSystem::find_lattice_point() const {
    if (!feasible()) return std::nullopt;
    if (!bounded()) throw PreconditionError("lattice enumeration over an unbounded set");
    IntVector point(dim_, Integer(0));
    std::optional<IntVector> found;
    lattice_recurse(*this, 0, point, [&](const IntVector& p) {
        found = p;
        return false;
    });
    return found;
}

std::vector<IntVector> LinearSystem::lattice_points() const {
    std::vector<IntVector> pts;
    for_each_lattice_point([&](const IntVector& p) { pts.push_back(p); });
    return pts;
}

std::size_t LinearSystem::count_lattice_points() const {
    std::size_t n = 0;
    for_each_lattice_point([&](const IntVector&) { ++n; });
    return n;
}

}  // namespace toric
