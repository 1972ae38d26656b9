#include "toric/diagres.hpp"

#include "toric/cohomology.hpp"
#include "toric/error.hpp"
#include "toric/parallel.hpp"

#include <algorithm>
#include <map>

namespace toric {

BondalLabel bondal_label(const ToricVariety& x, std::span<const Rational> point) {
    if (point.size() != x.dim()) throw InputError("point has wrong dimension");
    BondalLabel label;
    for (const auto& v : x.fan().rays) {
        const Rational s = dot(point, v);
        const Integer f = floor_of(s);
        label.floor_divisor.coeffs.push_back(f);
        label.fractional.push_back(s - Rational(f));
    }
    label.cls = x.class_of(label.floor_divisor);
    return label;
}

std::vector<DivisorClass> thomsen_collection(const ToricVariety& x) {
    const auto faces = torus_arrangement_faces(x.fan().rays, x.dim());
    std::set<DivisorClass> out;
    for (const auto& f : faces.faces()) out.insert(bondal_label(x, f.sample).cls);
    return {out.begin(), out.end()};
}

std::vector<DivisorClass> thomsen_by_sampling(const ToricVariety& x, long denominator) {
    if (denominator < 1) throw InputError("denominator must be positive");
    const std::size_t n = x.dim();
    std::set<DivisorClass> out;
    std::vector<long> k(n, 0);
    for (;;) {
        RationalVector p;
        for (auto v : k) {
            Rational q(v, denominator);
            q.canonicalize();
            p.push_back(q);
        }
        out.insert(bondal_label(x, p).cls);
        std::size_t j = 0;
        while (j < n && k[j] == denominator - 1) {
            k[j] = 0;
            ++j;
        }
        if (j == n) break;
        ++k[j];
    }
    return {out.begin(), out.end()};
}

std::vector<DiagStratum> diagonal_strata(const ToricVariety& x) {
    // The antidiagonal torus {(u, -u)} carries the pullbacks of both factors'
    // arrangements: normals v_rho and -v_rho.
    std::vector<IntVector> normals = x.fan().rays;
    for (const auto& v : x.fan().rays) {
        IntVector neg = v;
        for (auto& c : neg) c = -c;
        normals.push_back(std::move(neg));
    }
    const auto complex = torus_arrangement_faces(normals, x.dim());
    const auto& faces = complex.faces();
    std::vector<DiagStratum> strata(faces.size());
    parallel_for(faces.size(), [&](std::size_t i) {
        const auto& f = faces[i];
        RationalVector neg = f.sample;
        for (auto& c : neg) c = -c;
        strata[i] = DiagStratum{f.dim, f.sample, bondal_label(x, f.sample).cls, bondal_label(x, neg).cls};
    });
    return strata;
}

std::vector<long> ResolutionTerms::ranks() const {
    std::vector<long> r;
    for (const auto& level : terms) {
        long total = 0;
        for (const auto& t : level) total += t.mult;
        r.push_back(total);
    }
    return r;
}

bool ResolutionTerms::degree_zero_is_trivial() const {
    if (terms.empty() || terms[0].size() != 1) return false;
    const auto& t = terms[0][0];
    return t.mult == 1 && t.e.is_zero() && t.eprime.is_zero();
}

std::vector<DivisorClass> ResolutionTerms::e_classes() const {
    std::set<DivisorClass> s;
    for (const auto& level : terms)
        for (const auto& t : level) s.insert(t.e);
    return {s.begin(), s.end()};
}

ResolutionTerms build_k_terms(const ToricVariety& x) {
    const auto strata = diagonal_strata(x);
    int top = 0;
    for (const auto& s : strata) top = std::max(top, s.p);
    std::vector<std::map<std::pair<DivisorClass, DivisorClass>, ResolutionTerm>> levels(
        static_cast<std::size_t>(top) + 1);
    for (const auto& s : strata) {
        auto& level = levels[static_cast<std::size_t>(s.p)];
        auto key = std::make_pair(s.eprime, s.e);
        auto it = level.find(key);
        if (it == level.end()) {
            level.emplace(std::move(key), ResolutionTerm{s.eprime, s.e, 1, s.sample});
        } else {
            ++it->second.mult;
            if (s.sample < it->second.sample) it->second.sample = s.sample;
        }
    }
    ResolutionTerms out;
    for (auto& level : levels) {
        std::vector<ResolutionTerm> v;
        for (auto& [k, t] : level) v.push_back(std::move(t));
        out.terms.push_back(std::move(v));
    }
    return out;
}

namespace {

struct FlatTerm {
    int p;
    const ResolutionTerm* term;
};

std::vector<FlatTerm> flatten(const ResolutionTerms& k) {
    std::vector<FlatTerm> out;
    for (std::size_t p = 0; p < k.terms.size(); ++p)
        for (const auto& t : k.terms[p]) out.push_back(FlatTerm{static_cast<int>(p), &t});
    return out;
}

TermAudit audit_one(const ToricVariety& x, int p, const ResolutionTerm& t) {
    TermAudit a;
    a.p = p;
    a.eprime = t.eprime;
    a.e = t.e;

    // (I) a lattice point m of P_{-E} gives the effective representative
    //     -E + div(chi^m) with coefficients <m, v_rho> + r_rho >= 0.
    const TDivisor minus_e = x.section(-t.e);
    const LinearSystem poly = polytope_of_divisor(x, minus_e).system();
    if (auto m = poly.find_lattice_point()) {
        a.d = (minus_e + x.principal(*m)).coeffs;
        const bool nonneg = std::all_of(a.d.begin(), a.d.end(), [](const Integer& v) { return v >= 0; });
        const bool same_class = x.class_of(-TDivisor{a.d}) == t.e;
        a.effective = nonneg && same_class;
        if (!nonneg) a.failures.push_back("(I) extracted representative has a negative coefficient");
        if (!same_class) a.failures.push_back("(I) extracted representative is not in the class of -E");
    } else {
        a.failures.push_back("(I) P_{-E} has no lattice point; -E is not effective");
    }

    // (II) E = label(-u): c_rho are the fractional parts at -u, and
    //      E_rep + sum c_rho D_rho must be a rational principal divisor.
    RationalVector neg = t.sample;
    for (auto& c : neg) c = -c;
    const BondalLabel label = bondal_label(x, neg);
    a.c = label.fractional;
    const bool in_range =
        std::all_of(a.c.begin(), a.c.end(), [](const Rational& c) { return c >= 0 && c < 1; });
    const TDivisor e_rep = x.section(t.e);
    RationalVector rhs;
    for (std::size_t i = 0; i < a.c.size(); ++i) rhs.push_back(Rational(e_rep.coeffs[i]) + a.c[i]);
    const bool q_equivalent = solve_rational(x.fan().ray_matrix(), rhs).has_value();
    const bool label_matches = label.cls == t.e;
    a.frobenius = in_range && q_equivalent && label_matches;
    if (!in_range) a.failures.push_back("(II) fractional coefficient outside [0, 1)");
    if (!q_equivalent) a.failures.push_back("(II) -sum c_rho D_rho is not Q-linearly equivalent to E");
    if (!label_matches) a.failures.push_back("(II) stratum sample does not reproduce the label");

    // (III)
    a.dim_p = poly.dimension();
    a.dimension = p <= a.dim_p;
    if (!a.dimension)
        a.failures.push_back("(III) p = " + std::to_string(p) + " exceeds dim P_{-E} = " + std::to_string(a.dim_p));
    return a;
}

}  // namespace

std::vector<TermAudit> audit_terms(const ToricVariety& x, const ResolutionTerms& k) {
    const auto flat = flatten(k);
    std::vector<TermAudit> out(flat.size());
    parallel_for(flat.size(), [&](std::size_t i) { out[i] = audit_one(x, flat[i].p, *flat[i].term); });
    return out;
}

std::string TermSupport::status() const {
    if (symbolic && empirical) return "proven";
    if (symbolic) return "inconsistent";
    if (empirical) return "unproven";
    return "failed";
}

bool SupportReport::all_symbolic() const {
    return std::all_of(terms.begin(), terms.end(), [](const TermSupport& t) { return t.symbolic; });
}

bool SupportReport::all_empirical() const {
    return std::all_of(terms.begin(), terms.end(), [](const TermSupport& t) { return t.empirical; });
}

bool SupportReport::inconsistent() const {
    return std::any_of(terms.begin(), terms.end(), [](const TermSupport& t) { return t.symbolic && !t.empirical; });
}

namespace {

SupportReplay replay(const ToricVariety& x, const TermAudit& audit, const TDivisor& D) {
    SupportReplay r;
    const std::size_t rays = x.ray_count();
    // D - E with E = -sum d_rho D_rho
    TDivisor target = D + TDivisor{audit.d};
    Rational eps(1, 2);
    for (int attempt = 0; attempt < 40; ++attempt, eps /= 2) {
        QDivisor F;
        for (std::size_t i = 0; i < rays; ++i)
            F.coeffs.push_back(Rational(D.coeffs[i]) + Rational(audit.d[i]) - (1 - eps) * audit.c[i]);
        if (!x.is_nef(F)) continue;
        r.epsilon = eps;
        r.nef_ok = true;
        r.ceiling_ok = F.ceiling() == target;
        r.floor = polytope_of_divisor(x, F).system().dimension();
        r.floor_ok = r.floor >= audit.dim_p && audit.dim_p >= audit.p;
        return r;
    }
    r.epsilon = eps;
    return r;
}

}  // namespace

SupportReport certify_ample_support(const ToricVariety& x, const ResolutionTerms& k,
                                    const std::vector<TDivisor>& samples) {
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (!x.is_ample(samples[i]))
            throw PreconditionError("support sample " + std::to_string(i) + " " + to_string(samples[i].coeffs) +
                                    " is not ample");

    const auto audits = audit_terms(x, k);
    SupportReport report;
    report.samples = samples;
    report.terms.resize(audits.size());
    parallel_for(audits.size(), [&](std::size_t i) {
        const TermAudit& a = audits[i];
        TermSupport& t = report.terms[i];
        t.p = a.p;
        t.eprime = a.eprime;
        t.e = a.e;
        t.symbolic = a.passed();
        if (t.symbolic) {
            for (const auto& D : samples) {
                t.replays.push_back(replay(x, a, D));
                if (!t.replays.back().ok()) t.symbolic = false;
            }
        }
        t.empirical = true;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const auto h = class_cohomology(x, a.e - x.class_of(samples[s]));
            for (std::size_t q = 0; q < static_cast<std::size_t>(std::max(a.p, 0)) && q < h.size(); ++q)
                if (h[q] != 0) {
                    t.empirical = false;
                    t.violations.push_back(SupportWitness{s, q, h[q]});
                }
        }
    });
    return report;
}

}  // namespace toric
