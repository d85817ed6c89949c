#pragma once

#include "toric/cox.hpp"
#include "toric/frobenius.hpp"
#include "toric/hdi.hpp"
#include "toric/maps.hpp"

#include <json.hpp>

namespace toric {

using Json = nlohmann::ordered_json;

/// Schema errors carry a JSON-pointer-style path to the offending element.
struct SchemaError : Error {
    std::string path;
    SchemaError(std::string p, const std::string& what) : Error(what + " at " + p), path(std::move(p)) {}
};

Json fanToJson(const Fan& fan);
Fan fanFromJson(const Json& j);

Json divisorToJson(const TDivisor& D);
IntVec divisorCoeffsFromJson(const Json& j);

Json morphismToJson(const ToricMorphism& f);
ToricMorphism morphismFromJson(const Json& j);

Json presentationToJson(const PresentedModule& M);
PresentedModule presentationFromJson(const VarietyPtr& X, const Json& j);

Json cohomologyTableToJson(const GradedCohomologyTable& t);
Json twistTableToJson(const TwistTable& t);
Json eigencharactersToJson(const EigencharacterTable& t);
Json splittingToJson(const SplittingType& s);
Json summandsToJson(const FrobeniusSummands& s, const VarietyPtr& X);
Json summandMapToJson(const SummandMap& m);

Int intFromJson(const Json& j, const std::string& path);
long long intToLong(const Int& v);

}  // namespace toric
