#include "toric/io.hpp"

#include "toric/error.hpp"

#include <fstream>
#include <sstream>

namespace toric {

json to_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json to_json(const Rational& v) { return v.get_str(); }

json to_json(std::span<const Integer> v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(std::span<const Rational> v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const DivisorClass& c) { return to_json(std::span<const Integer>(c.coords)); }

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad integer '" + j.get<std::string>() + "'");
        return v;
    }
    throw InputError("expected an integer, got " + j.dump());
}

IntVector int_vector_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected an integer array, got " + j.dump());
    IntVector v;
    for (const auto& x : j) v.push_back(integer_from_json(x));
    return v;
}

Fan fan_from_json(const json& j) {
    if (!j.is_object()) throw InputError("fan must be a JSON object");
    for (const char* key : {"rank", "rays", "max_cones"})
        if (!j.contains(key)) throw InputError(std::string("fan is missing \"") + key + "\"");
    Fan f;
    if (!j["rank"].is_number_integer() || j["rank"].get<long>() < 1) throw InputError("fan rank must be a positive integer");
    f.rank = j["rank"].get<std::size_t>();
    if (!j["rays"].is_array() || !j["max_cones"].is_array()) throw InputError("rays and max_cones must be arrays");
    for (const auto& r : j["rays"]) f.rays.push_back(int_vector_from_json(r));
    for (const auto& c : j["max_cones"]) {
        if (!c.is_array()) throw InputError("cone must be an array of ray indices");
        Cone cone;
        for (const auto& i : c) {
            if (!i.is_number_integer() || i.get<long>() < 0) throw InputError("bad ray index " + i.dump());
            cone.push_back(i.get<std::size_t>());
        }
        f.max_cones.push_back(std::move(cone));
    }
    return f;
}

json fan_to_json(const Fan& f) {
    json rays = json::array();
    for (const auto& r : f.rays) rays.push_back(to_json(std::span<const Integer>(r)));
    return json{{"rank", f.rank}, {"rays", rays}, {"max_cones", f.max_cones}};
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

Fan load_fan(const std::filesystem::path& path) { return fan_from_json(load_json(path)); }

IntVector parse_int_vector(const std::string& text) {
    try {
        return int_vector_from_json(json::parse(text));
    } catch (const json::parse_error&) {
        throw InputError("cannot parse integer vector '" + text + "'");
    }
}

Candidate parse_candidate(const std::string& text) {
    // "[[0],1;[1],1]" becomes the JSON array [[[0],1],[[1],1]].
    std::string body = text;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw InputError("candidate must look like [[class],mult;[class],mult]");
    std::string rewritten = "[[";
    for (char ch : body.substr(1, body.size() - 2)) {
        if (ch == ';') rewritten += "],[";
        else rewritten += ch;
    }
    rewritten += "]]";
    json j;
    try {
        j = json::parse(rewritten);
    } catch (const json::parse_error&) {
        throw InputError("cannot parse candidate '" + text + "'");
    }
    Candidate c;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[1].is_number_integer())
            throw InputError("candidate summand must be [class],multiplicity in '" + text + "'");
        c.summands.push_back(Summand{DivisorClass{int_vector_from_json(item[0])}, item[1].get<long>()});
    }
    return c;
}

json report_to_json(const FanReport& r) {
    return json{{"smooth", r.smooth}, {"complete", r.complete}, {"simplicial", r.simplicial}, {"notes", r.notes}};
}

json table_to_json(const CohomologyTable& t) {
    json rows = json::array();
    for (const auto& [c, h] : t.values) rows.push_back(json{{"class", to_json(c)}, {"h", h}});
    return rows;
}

CohomologyTable table_from_json(const json& j) {
    if (!j.is_array()) throw InputError("table must be an array of {class, h} rows");
    CohomologyTable t;
    for (const auto& row : j) {
        if (!row.is_object() || !row.contains("class") || !row.contains("h") || !row["h"].is_array())
            throw InputError("bad table row " + row.dump());
        CohomologyVector h;
        for (const auto& v : row["h"]) {
            if (!v.is_number_integer() || v.get<long>() < 0) throw InputError("bad cohomology dimension in " + row.dump());
            h.push_back(v.get<long>());
        }
        DivisorClass c{int_vector_from_json(row["class"])};
        if (!t.values.emplace(c, std::move(h)).second) throw InputError("duplicate table row for class " + c.str());
    }
    return t;
}

json terms_to_json(const ResolutionTerms& k) {
    json levels = json::array();
    for (std::size_t p = 0; p < k.terms.size(); ++p) {
        json terms = json::array();
        for (const auto& t : k.terms[p])
            terms.push_back(json{{"Eprime", to_json(t.eprime)}, {"E", to_json(t.e)}, {"mult", t.mult},
                                 {"sample", to_json(std::span<const Rational>(t.sample))}});
        levels.push_back(json{{"p", p}, {"terms", terms}});
    }
    return levels;
}

json audits_to_json(const std::vector<TermAudit>& audits) {
    json out = json::array();
    for (const auto& a : audits)
        out.push_back(json{{"p", a.p},
                           {"Eprime", to_json(a.eprime)},
                           {"E", to_json(a.e)},
                           {"d", to_json(std::span<const Integer>(a.d))},
                           {"c", to_json(std::span<const Rational>(a.c))},
                           {"dimP", a.dim_p},
                           {"I", a.effective},
                           {"II", a.frobenius},
                           {"III", a.dimension},
                           {"failures", a.failures}});
    return out;
}

json support_to_json(const SupportReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back(to_json(std::span<const Integer>(s.coeffs)));
    json terms = json::array();
    for (const auto& t : r.terms) {
        json replays = json::array();
        for (const auto& rp : t.replays)
            replays.push_back(json{{"epsilon", to_json(rp.epsilon)},
                                   {"ceiling", rp.ceiling_ok},
                                   {"nef", rp.nef_ok},
                                   {"floor", rp.floor},
                                   {"floor_ok", rp.floor_ok}});
        json violations = json::array();
        for (const auto& v : t.violations) violations.push_back(json{{"sample", v.sample}, {"q", v.q}, {"h", v.h}});
        terms.push_back(json{{"p", t.p},
                             {"Eprime", to_json(t.eprime)},
                             {"E", to_json(t.e)},
                             {"symbolic", t.symbolic},
                             {"empirical", t.empirical},
                             {"status", t.status()},
                             {"replays", replays},
                             {"violations", violations}});
    }
    return json{{"samples", samples},
                {"terms", terms},
                {"all_symbolic", r.all_symbolic()},
                {"all_empirical", r.all_empirical()},
                {"inconsistent", r.inconsistent()}};
}

json e1_to_json(const E1Page& page) {
    json cells = json::array();
    int max_p = 0, max_q = 0;
    for (const auto& [pos, row] : page.entries) {
        max_p = std::max(max_p, pos.first);
        max_q = std::max(max_q, pos.second);
        json entries = json::array();
        for (const auto& [c, dim] : row) entries.push_back(json{{"Eprime", to_json(c)}, {"dim", dim}});
        cells.push_back(json{{"p", -pos.first}, {"q", pos.second}, {"entries", entries}});
    }
    return json{{"cells", cells}, {"maxP", max_p}, {"maxQ", max_q}, {"red_diagonal_vanishes", red_diagonal_vanishes(page)}};
}

json verdict_to_json(const Verdict& v) {
    json out{{"verdict", verdict_tag(v)}};
    if (const auto* s = std::get_if<Split>(&v)) {
        json facts = json::array();
        for (const auto& f : s->certificate) facts.push_back(json{{"fact", f.what}, {"holds", f.holds}});
        out["ordered"] = s->ordered.str();
        out["certificate"] = facts;
        out["checked_classes"] = s->checked_classes;
        out["scope"] = s->scope;
    } else if (const auto* h = std::get_if<HypothesisFailed>(&v)) {
        out["witness"] = json{{"class", to_json(h->cls)}, {"q", h->q}, {"table", h->table_value}, {"candidate", h->candidate_value}};
    } else if (const auto* i = std::get_if<Inapplicable>(&v)) {
        json missing = json::array();
        for (const auto& c : i->missing) missing.push_back(to_json(c));
        out["reason"] = i->reason;
        out["missing"] = missing;
    }
    return out;
}

json euler_to_json(const EulerReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back(json{{"F", to_json(f.f)}, {"G", to_json(f.g)}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    return json{{"trials", r.trials}, {"ok", r.ok()}, {"failures", failures}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace toric
