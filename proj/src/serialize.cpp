#include "syzkit/serialize.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace syzkit {

namespace {

json integer_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

mpz_class integer_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw Error("bad integer '" + j.get<std::string>() + "'");
        return z;
    }
    throw Error("expected an integer, got " + j.dump());
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::string> string_list(const json& j) {
    if (!j.is_array()) throw Error("expected a list of labels");
    std::vector<std::string> out;
    for (const auto& s : j) {
        if (!s.is_string()) throw Error("expected a label, got " + s.dump());
        out.push_back(s.get<std::string>());
    }
    return out;
}

}  // namespace

json rational_to_json(const mpq_class& q) { return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())}); }

mpq_class rational_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("expected [num, den], got " + j.dump());
    mpz_class num = integer_from_json(j[0]), den = integer_from_json(j[1]);
    if (den == 0) throw Error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

json poly_to_json(const Poly& p) {
    json out;
    out["vars"] = p.vars();
    json terms = json::array();
    for (const auto& [exp, c] : p.terms()) {
        json t;
        t["exp"] = exp;
        t["re"] = rational_to_json(c.re());
        t["im"] = rational_to_json(c.im());
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Poly poly_from_json(const json& j) {
    VarList vars = string_list(field(j, "vars"));
    const json& terms = field(j, "terms");
    if (!terms.is_array()) throw Error("poly terms must be a list");
    VarList sorted = vars;
    std::sort(sorted.begin(), sorted.end(), natural_less);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("repeated poly variable");
    Poly out;
    for (const auto& t : terms) {
        const json& e = field(t, "exp");
        if (!e.is_array() || e.size() != vars.size()) throw Error("exponent length does not match vars");
        Poly m(GR(rational_from_json(field(t, "re")), rational_from_json(field(t, "im"))));
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (!e[k].is_number_unsigned() && !(e[k].is_number_integer() && e[k].get<std::int64_t>() >= 0))
                throw Error("bad exponent " + e[k].dump());
            m *= Poly::var(vars[k]).pow(e[k].get<unsigned>());
        }
        out += m;
    }
    return out;
}

json form_to_json(const Form& a) {
    const FrameSpec& f = *a.frame();
    json out;
    out["frame"] = f.labels();
    json terms = json::array();
    for (const auto& [m, c] : a.terms()) {
        json t;
        json gens = json::array();
        for (auto i : mask_indices(m)) gens.push_back(f.gen(i).label);
        t["gens"] = std::move(gens);
        t["coeff"] = poly_to_json(c);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Form form_from_json(const json& j, const FramePtr& frame) {
    const json& terms = field(j, "terms");
    if (!terms.is_array()) throw Error("form terms must be a list");
    Form out(frame);
    for (const auto& t : terms) {
        std::vector<std::string> gens = string_list(field(t, "gens"));
        for (const auto& g : gens)
            if (!frame->index_of(g)) throw Error("generator '" + g + "' is not in the frame");
        out += Form::wedge_of(frame, gens, poly_from_json(field(t, "coeff")));
    }
    return out;
}

FramePtr frame_from_labels(const std::vector<std::string>& labels) {
    std::vector<std::string> suffixes;
    for (const auto& prefix : {std::string("dr_"), std::string("dzbar_")})
        if (suffixes.empty())
            for (const auto& l : labels)
                if (l.rfind(prefix, 0) == 0) suffixes.push_back(l.substr(prefix.size()));
    if (suffixes.empty()) throw Error("frame has no dr_ or dzbar_ generators");
    SemiflatPair pair(suffixes);
    for (const FramePtr& f : {pair.x(), pair.xcheck(), pair.complex_frame()})
        if (f->labels() == labels) return f;
    throw Error("unrecognized frame; expected dtheta/dr, dthetacheck/dr or dz/dzbar generators");
}

Form form_from_json(const json& j) { return form_from_json(j, frame_from_labels(string_list(field(j, "frame")))); }

json su_to_json(const SUStructure& s) {
    json out;
    out["n"] = s.n;
    out["omega"] = form_to_json(expand_to_root(s.omega));
    if (s.is_factored()) {
        json fs = json::array();
        for (std::size_t i = 0; i < s.factors.size(); ++i) {
            Form f = expand_to_root(s.factors[i]);
            if (i == 0) f *= Poly(s.prefactor);
            fs.push_back(form_to_json(f));
        }
        out["Omega_factors"] = std::move(fs);
    } else {
        out["Omega"] = form_to_json(expand_to_root(s.Omega));
    }
    if (s.polarization) {
        json p;
        p["fiber_class"] = to_string(s.polarization->fiber);
        p["phase"] = rational_to_json(s.polarization->phase);
        out["polarization"] = std::move(p);
    }
    return out;
}

SUStructure su_from_json(const json& j) {
    const json& nj = field(j, "n");
    if (!nj.is_number_integer() || nj.get<int>() < 1) throw Error("n must be a positive integer");
    const int n = nj.get<int>();
    Form omega = form_from_json(field(j, "omega"));
    std::optional<Polarization> pol;
    if (j.contains("polarization") && !j.at("polarization").is_null()) {
        const json& p = j.at("polarization");
        pol = Polarization{gen_class_from_string(field(p, "fiber_class").get<std::string>()),
                           p.contains("phase") ? rational_from_json(p.at("phase")) : mpq_class(0)};
    }
    SUStructure s = [&] {
        if (j.contains("Omega_factors")) {
            std::vector<Form> fs;
            for (const auto& f : field(j, "Omega_factors")) fs.push_back(form_from_json(f, omega.frame()));
            if (static_cast<int>(fs.size()) != n) throw Error("Omega_factors must have n entries");
            return SUStructure::factored(omega, fs, GR(1), pol);
        }
        return SUStructure::general(n, omega, form_from_json(field(j, "Omega"), omega.frame()), pol);
    }();
    if (omega.frame()->n() != n) throw Error("n does not match the frame");
    return s;
}

json check_report_to_json(const CheckReport& r) {
    json out;
    out["passed"] = r.passed();
    const CheckItem* bad = r.first_failure();
    out["first_failure"] = bad ? json(bad->id) : json(nullptr);
    json items = json::array();
    for (const auto& it : r.items()) {
        json i;
        i["id"] = it.id;
        i["status"] = to_string(it.status);
        i["required"] = it.required;
        if (!it.detail.empty()) i["detail"] = it.detail;
        if (it.witness) i["witness"] = *it.witness;
        items.push_back(std::move(i));
    }
    out["checks"] = std::move(items);
    return out;
}

json cohomology_to_json(const CohomologyReport& r) {
    json out;
    out["kind"] = r.kind;
    out["D"] = r.D;
    out["bidegree"] = json::array({r.p, r.q});
    out["dim"] = r.dim;
    json reps = json::array();
    for (const auto& f : r.representatives) reps.push_back(form_to_json(f));
    out["representatives"] = std::move(reps);
    json ranks = json::object();
    for (const auto& [k, v] : r.operator_ranks) ranks[k] = v;
    out["operator_ranks"] = std::move(ranks);
    return out;
}

json fixture(const std::string& kind, json data) {
    json out;
    out["schema"] = kFixtureSchema;
    out["kind"] = kind;
    out["data"] = std::move(data);
    return out;
}

json fixture_data(const json& j, const std::string& kind) {
    if (!j.is_object()) throw Error("expected a JSON object");
    if (!j.contains("schema")) return j;
    if (j.at("schema") != kFixtureSchema) throw Error("unsupported fixture schema " + j.at("schema").dump());
    if (j.contains("kind") && j.at("kind") != kind)
        throw Error("fixture kind " + j.at("kind").dump() + " where '" + kind + "' was expected");
    return field(j, "data");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace syzkit
