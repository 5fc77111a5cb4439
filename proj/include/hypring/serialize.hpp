#pragma once

#include <json.hpp>

#include "hypring/bounds.hpp"
#include "hypring/conjugacy.hpp"
#include "hypring/traces.hpp"

namespace hypring {

using Json = nlohmann::json;

// Ring elements serialize as [[word, re, im], ...], tensors as
// [[word, word, re, im], ...], forms as {"degree": n, "terms":
// [[w0, ..., wn, re, im], ...]}. Words use the display alphabet.
Json ring_to_json(const Group& g, const RingElement& a);
RingElement ring_from_json(const Group& g, const Json& j);

Json tensor_to_json(const Group& g, const TensorElement& t);
TensorElement tensor_from_json(const Group& g, const Json& j);

Json form_to_json(const Group& g, const FormElement& f);
FormElement form_from_json(const Group& g, const Json& j);

// Certificates carry their full witnesses so they re-verify independently.
Json certificate_to_json(const Group& g, const BoundCertificate& c);
BoundCertificate certificate_from_json(const Group& g, const Json& j);

Json phi_trace_to_json(const Group& g, const PhiTrace& t);

}  // namespace hypring
