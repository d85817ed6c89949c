#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/json_io.hpp"

using namespace toric;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("fan serialization is deterministic and round-trips") {
    auto X = starSubdivisionBlowup(productVariety(buildHirzebruch(1), buildProjectiveSpace(1)), {1, 5});
    Json j = fanToJson(X->fan);
    Fan back = fanFromJson(j);
    CHECK(back.rays == X->fan.rays);
    CHECK(back.maxCones == X->fan.maxCones);
    CHECK(fanToJson(back).dump() == j.dump());
}

TEST_CASE("morphism round-trip") {
    auto F1 = buildHirzebruch(1);
    auto P1 = buildProjectiveSpace(1);
    ToricMorphism phi = makeToricMorphism(P1, F1, IntMat::fromRows({{1, 0}}));
    Json j = morphismToJson(phi);
    ToricMorphism back = morphismFromJson(j);
    CHECK(back.latticeMap == phi.latticeMap);
    CHECK(back.source->fan.rays == F1->fan.rays);
    CHECK(back.target->fan.rays == P1->fan.rays);
    CHECK(morphismToJson(back).dump() == j.dump());
}

TEST_CASE("presentation round-trip preserves entries") {
    auto F1 = buildHirzebruch(1);
    PresentedModule M;
    M.target = makeFreeModule(F1, {iv({2, 0}), iv({0, 2})});
    M.source = makeFreeModule(F1, {iv({1, 2})});
    M.entries = {{monomial(iv({0, 1, 0, 1}))}, {addPoly(monomial(iv({1, 0, 0, 0})), monomial(iv({0, 0, 1, 0}), Rat(-2)))}};
    checkHomogeneous(M);
    Json j = presentationToJson(M);
    PresentedModule back = presentationFromJson(F1, j);
    CHECK(back.target.genClasses == M.target.genClasses);
    CHECK(back.entries == M.entries);
    CHECK(presentationToJson(back).dump() == j.dump());
}

TEST_CASE("schema errors carry pointer paths") {
    SUBCASE("missing keys") {
        CHECK_THROWS_AS(fanFromJson(Json::object()), SchemaError);
    }
    SUBCASE("bad ray entry") {
        Json j;
        j["rays"] = Json::array({Json::array({1, "x"})});
        j["maxCones"] = Json::array({Json::array({0})});
        try {
            fanFromJson(j);
            CHECK(false);
        } catch (const SchemaError& e) {
            CHECK(e.path == "/rays/0/1");
        }
    }
    SUBCASE("invalid fan is rejected with context") {
        Json j;
        j["rays"] = Json::array({Json::array({2, 0}), Json::array({0, 1})});
        j["maxCones"] = Json::array({Json::array({0, 1})});
        CHECK_THROWS_AS(fanFromJson(j), SchemaError);
    }
}

TEST_CASE("divisor and table serializers") {
    auto F1 = buildHirzebruch(1);
    TDivisor D(F1, iv({0, -1, -2, -3}));
    CHECK(divisorToJson(D).dump() == "[0,-1,-2,-3]");
    CHECK(divisorCoeffsFromJson(Json::parse("[0,-1,-2,-3]")) == D.coeffs);
    auto P1 = buildProjectiveSpace(1);
    FrobeniusSummands s = frobeniusSummands(P1, 2, zeroDivisor(P1));
    Json js = summandsToJson(s, P1);
    CHECK(js.size() == 2);
    CHECK(js[0]["class"].dump() == "[0]");
    CHECK(js[1]["class"].dump() == "[-1]");
}
