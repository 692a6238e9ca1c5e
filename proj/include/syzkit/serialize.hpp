#pragma once

// JSON encodings of polynomials, forms, SU structures, check reports and
// cohomology reports, plus the versioned fixture envelope.
//
// Rationals are written as [num, den]; each entry is a JSON integer when it fits
// in 64 bits and a decimal string otherwise. Both are accepted on input.

#include <string>

#include <json.hpp>

#include "syzkit/cohomology.hpp"
#include "syzkit/exterior.hpp"
#include "syzkit/report.hpp"
#include "syzkit/sustruct.hpp"

namespace syzkit {

using json = nlohmann::ordered_json;

inline constexpr const char* kFixtureSchema = "syzkit-fixture-v1";

json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const json& j);

json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);

json form_to_json(const Form& a);
/// Terms are matched to `frame` by label.
Form form_from_json(const json& j, const FramePtr& frame);
/// The frame is recognized from its labels: the X frame (dtheta_s, dr_s), the X̌ frame
/// (dthetacheck_s, dr_s) or the complex frame (dz_s, dzbar_s) of a semiflat pair.
Form form_from_json(const json& j);
FramePtr frame_from_labels(const std::vector<std::string>& labels);

/// Forms are written in root coordinates; a prefactor is folded into the first factor.
json su_to_json(const SUStructure& s);
SUStructure su_from_json(const json& j);

json check_report_to_json(const CheckReport& r);
json cohomology_to_json(const CohomologyReport& r);

/// {schema, kind, data}.
json fixture(const std::string& kind, json data);
/// The data of a fixture of the given kind; bare (unwrapped) objects are accepted as is.
json fixture_data(const json& j, const std::string& kind);

/// Pretty form with a trailing newline.
std::string dump(const json& j);

}  // namespace syzkit
