#pragma once

#include <string>

#include <json.hpp>

#include "gsp4lfun/dirichlet.hpp"
#include "gsp4lfun/gl2.hpp"
#include "gsp4lfun/gsp4.hpp"

namespace gsp4lfun {

using Json = nlohmann::ordered_json;

// {"type":"gl2","weight":18,"coeffs":{"1":"1","2":"-528",...}}
Json eigenform_to_json(const EllipticEigenform& f);
void write_eigenform(const EllipticEigenform& f, const std::string& path);
EllipticEigenform read_eigenform(const std::string& path);

// {"type":"gsp4","k":10,"j":0,"level":1,"packet":"P","hecke":{"2":[240,...]},
//  "sk_source":"f18.json"}; non-integer values as decimal strings.
Json paramodular_to_json(const ParamodularEigenform& f);
void write_paramodular(const ParamodularEigenform& f, const std::string& path);
ParamodularEigenform read_paramodular(const std::string& path);

// {"modulus":5,"index":2,"conductor":5,"parity":"odd","order":4}
Json character_to_json(const DirichletCharacter& chi);

// Character addressing string "q:index".
DirichletCharacter parse_character_address(const std::string& address);

}
