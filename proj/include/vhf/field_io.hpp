#pragma once
// Field definition files and element expressions.
//
//   {"p":5,"f":1,"e":2,"eis":[-5,0,1],"h":[0,1],"N":12,"n":1}
//
// eis holds the e+1 Eisenstein coefficients, little-endian; for f > 1 each
// may be a list (a W element in the basis 1, x, ..., x^(f-1)). h is the
// monic defining polynomial of the residue field over F_p.

#include <string>

#include <json.hpp>

#include "vhf/gauss.hpp"
#include "vhf/hyperfield.hpp"
#include "vhf/padic.hpp"

namespace vhf {

using Json = nlohmann::json;

FieldSpec field_spec_from_json(const Json& j);
Json to_json(const FieldSpec& s);
/// A path to a JSON file, or the JSON text itself when it starts with '{'.
FieldSpec load_field_spec(const std::string& path_or_json);

/// Arithmetic over the integers, pi and x (the generator of W):
/// "3 + 2*pi", "(1 + x)^2 / pi", "-5^3". Division raises
/// DivisionByZero / PrecisionExhausted as field division does.
FieldElem parse_element(const Field& k, const std::string& text);

/// "num" or "num / den" with num, den integer polynomials in t:
/// "(1)/(1+t)", "t^3", "2".
GaussElem parse_gauss(long p, int N, const std::string& text);

Json to_json(const Hyperfield& h, const HfClass& c);
HfClass class_from_json(const Hyperfield& h, const Json& j);
Json to_json(const Hyperfield& h, const HfSumBall& s);

}  // namespace vhf
