#include "toric/json_io.hpp"

namespace toric {

namespace {

void requireArray(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
}

IntVec intVecFromJson(const Json& j, const std::string& path) {
    requireArray(j, path);
    IntVec v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(intFromJson(j[i], path + "/" + std::to_string(i)));
    return v;
}

Json intVecToJson(const IntVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(intToLong(x));
    return a;
}

Rat ratFromJson(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string()) {
        try {
            Rat r(j.get<std::string>());
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            throw SchemaError(path, "malformed rational");
        }
    }
    throw SchemaError(path, "expected an integer or a rational string");
}

std::string ratToString(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

Int intFromJson(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return Int(std::to_string(j.get<long long>()));
}

long long intToLong(const Int& v) {
    if (!v.fits_slong_p()) throw Error("integer too large for JSON output");
    return v.get_si();
}

Json fanToJson(const Fan& fan) {
    Json j;
    j["rays"] = Json::array();
    for (const IntVec& u : fan.rays) j["rays"].push_back(intVecToJson(u));
    j["maxCones"] = Json::array();
    for (const auto& c : fan.maxCones) {
        Json cone = Json::array();
        for (int i : c) cone.push_back(i);
        j["maxCones"].push_back(cone);
    }
    return j;
}

Fan fanFromJson(const Json& j) {
    if (!j.is_object()) throw SchemaError("", "expected a fan object");
    if (!j.contains("rays")) throw SchemaError("/rays", "missing");
    if (!j.contains("maxCones")) throw SchemaError("/maxCones", "missing");
    requireArray(j["rays"], "/rays");
    requireArray(j["maxCones"], "/maxCones");
    std::vector<IntVec> rays;
    for (size_t i = 0; i < j["rays"].size(); ++i)
        rays.push_back(intVecFromJson(j["rays"][i], "/rays/" + std::to_string(i)));
    int dim = rays.empty() ? 0 : int(rays[0].size());
    std::vector<std::vector<int>> cones;
    for (size_t i = 0; i < j["maxCones"].size(); ++i) {
        const std::string path = "/maxCones/" + std::to_string(i);
        requireArray(j["maxCones"][i], path);
        std::vector<int> c;
        for (size_t k = 0; k < j["maxCones"][i].size(); ++k) {
            const Json& e = j["maxCones"][i][k];
            if (!e.is_number_integer()) throw SchemaError(path + "/" + std::to_string(k), "expected an integer");
            c.push_back(e.get<int>());
        }
        cones.push_back(c);
    }
    try {
        return Fan(dim, rays, cones);
    } catch (const Error& e) {
        throw SchemaError("", e.what());
    }
}

Json divisorToJson(const TDivisor& D) { return intVecToJson(D.coeffs); }

IntVec divisorCoeffsFromJson(const Json& j) { return intVecFromJson(j, ""); }

Json morphismToJson(const ToricMorphism& f) {
    Json j;
    j["matrix"] = Json::array();
    for (int i = 0; i < f.latticeMap.rows(); ++i) j["matrix"].push_back(intVecToJson(f.latticeMap.row(i)));
    j["source"] = fanToJson(f.source->fan);
    j["target"] = fanToJson(f.target->fan);
    return j;
}

ToricMorphism morphismFromJson(const Json& j) {
    if (!j.is_object()) throw SchemaError("", "expected a morphism object");
    for (const char* key : {"matrix", "source", "target"})
        if (!j.contains(key)) throw SchemaError(std::string("/") + key, "missing");
    VarietyPtr source = makeToricVariety(fanFromJson(j["source"]));
    VarietyPtr target = makeToricVariety(fanFromJson(j["target"]));
    requireArray(j["matrix"], "/matrix");
    std::vector<IntVec> rows;
    for (size_t i = 0; i < j["matrix"].size(); ++i)
        rows.push_back(intVecFromJson(j["matrix"][i], "/matrix/" + std::to_string(i)));
    IntMat m = rows.empty() ? IntMat(0, source->dim()) : IntMat::fromRows(rows);
    return makeToricMorphism(target, source, m);
}

Json presentationToJson(const PresentedModule& M) {
    Json j;
    j["targetClasses"] = Json::array();
    for (const auto& c : M.target.genClasses) j["targetClasses"].push_back(intVecToJson(c));
    j["sourceClasses"] = Json::array();
    for (const auto& c : M.source.genClasses) j["sourceClasses"].push_back(intVecToJson(c));
    j["entries"] = Json::array();
    for (const auto& row : M.entries) {
        Json jr = Json::array();
        for (const auto& poly : row) {
            Json jp = Json::array();
            for (const auto& mono : poly) {
                Json jm;
                jm["coefficient"] = ratToString(mono.coefficient);
                jm["exponents"] = intVecToJson(mono.exponents);
                jp.push_back(jm);
            }
            jr.push_back(jp);
        }
        j["entries"].push_back(jr);
    }
    return j;
}

PresentedModule presentationFromJson(const VarietyPtr& X, const Json& j) {
    if (!j.is_object()) throw SchemaError("", "expected a presentation object");
    for (const char* key : {"targetClasses", "sourceClasses", "entries"})
        if (!j.contains(key)) throw SchemaError(std::string("/") + key, "missing");
    std::vector<DivisorClass> tc, sc;
    for (size_t i = 0; i < j["targetClasses"].size(); ++i)
        tc.push_back(intVecFromJson(j["targetClasses"][i], "/targetClasses/" + std::to_string(i)));
    for (size_t i = 0; i < j["sourceClasses"].size(); ++i)
        sc.push_back(intVecFromJson(j["sourceClasses"][i], "/sourceClasses/" + std::to_string(i)));
    PresentedModule M;
    M.target = makeFreeModule(X, tc);
    M.source = makeFreeModule(X, sc);
    requireArray(j["entries"], "/entries");
    if (j["entries"].size() != tc.size()) throw SchemaError("/entries", "row count does not match targetClasses");
    for (size_t i = 0; i < j["entries"].size(); ++i) {
        const std::string rpath = "/entries/" + std::to_string(i);
        requireArray(j["entries"][i], rpath);
        if (j["entries"][i].size() != sc.size()) throw SchemaError(rpath, "column count does not match sourceClasses");
        std::vector<CoxPolynomial> row;
        for (size_t k = 0; k < j["entries"][i].size(); ++k) {
            const std::string ppath = rpath + "/" + std::to_string(k);
            requireArray(j["entries"][i][k], ppath);
            CoxPolynomial poly;
            for (size_t t = 0; t < j["entries"][i][k].size(); ++t) {
                const Json& jm = j["entries"][i][k][t];
                const std::string mpath = ppath + "/" + std::to_string(t);
                if (!jm.is_object() || !jm.contains("coefficient") || !jm.contains("exponents"))
                    throw SchemaError(mpath, "expected {coefficient, exponents}");
                poly.push_back({intVecFromJson(jm["exponents"], mpath + "/exponents"),
                                ratFromJson(jm["coefficient"], mpath + "/coefficient")});
            }
            row.push_back(normalize(std::move(poly)));
        }
        M.entries.push_back(std::move(row));
    }
    checkHomogeneous(M);
    return M;
}

Json cohomologyTableToJson(const GradedCohomologyTable& t) {
    Json j = Json::array();
    for (const auto& [m, d] : t.dims) {
        Json row;
        row["m"] = intVecToJson(m);
        row["dim"] = d;
        j.push_back(row);
    }
    return j;
}

Json twistTableToJson(const TwistTable& t) {
    Json j = Json::array();
    for (const auto& [d, h] : t.h0) {
        Json row;
        row["class"] = intVecToJson(d);
        row["h0"] = h;
        j.push_back(row);
    }
    return j;
}

Json eigencharactersToJson(const EigencharacterTable& t) {
    Json j = Json::array();
    for (const auto& e : t.entries) j.push_back(intVecToJson(e.sourceChar));
    return j;
}

Json splittingToJson(const SplittingType& s) {
    Json j = Json::array();
    for (const Int& a : s.summands) j.push_back(intToLong(a));
    return j;
}

Json summandsToJson(const FrobeniusSummands& s, const VarietyPtr& X) {
    Json j = Json::array();
    for (size_t u = 0; u < s.residues.size(); ++u) {
        Json row;
        row["u"] = intVecToJson(s.residues[u]);
        row["divisor"] = intVecToJson(s.summands[u]);
        row["class"] = intVecToJson(classOf(TDivisor(X, s.summands[u])));
        j.push_back(row);
    }
    return j;
}

Json summandMapToJson(const SummandMap& m) {
    Json j;
    j["p"] = intToLong(m.p);
    j["matrix"] = presentationToJson(m.map);
    Json tres = Json::array(), sres = Json::array();
    for (const auto& u : m.targetResidues) tres.push_back(intVecToJson(u));
    for (const auto& u : m.sourceResidues) sres.push_back(intVecToJson(u));
    j["targetResidues"] = tres;
    j["sourceResidues"] = sres;
    return j;
}

}  // namespace toric
