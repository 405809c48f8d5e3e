#pragma once

#include "json.hpp"

#include "injekt/gadget.hpp"
#include "injekt/morphism.hpp"
#include "injekt/secant.hpp"
#include "injekt/sepinv.hpp"

namespace injekt {

using Json = nlohmann::ordered_json;

// Scalars serialize as decimal strings "num/den" (denominator omitted when 1).
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

Json space_to_json(const SpaceDescriptor& s);
SpaceDescriptor space_from_json(const Json& j);

Json poly_to_json(const PolyQ& p);
PolyQ poly_from_json(const Json& j);

Json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j);

Json tensor_to_json(const Tensor222n& t);
Tensor222n tensor_from_json(const Json& j);

Json curve_to_json(const RationalCurveP3& c);
RationalCurveP3 curve_from_json(const Json& j);

Json point_to_json(const PPoint& p);
Json report_to_json(const VerificationReport& r);
Json gadget_report_to_json(const GadgetReport& r);
Json sep_report_to_json(const SepReport& r);
Json cone_report_to_json(const ConeProjReport& r);
Json secant_result_to_json(const SecantResult& r);

} // namespace injekt
