#pragma once

#include <string>

#include <json.hpp>

#include "divlat/catalog.hpp"
#include "divlat/codes.hpp"
#include "divlat/lattice.hpp"
#include "divlat/residue.hpp"
#include "divlat/search.hpp"

namespace divlat {

using json = nlohmann::json;

json order_to_json(const OrderSpec& ord);
OrderSpec order_from_json(const json& j);

json splitting_map_to_json(const SplittingMap& map);
SplittingMap splitting_map_from_json(const json& j);

json code_to_json(const Code& code);
Code code_from_json(const json& j);

json family_to_json(const FamilySpec& spec);

json density_report_to_json(const DensityReport& rep);

json mc_estimate_to_json(const McEstimate& est);

json search_result_to_json(const SearchResult& res);

/// Lattice export: JSON header plus the plain-text basis matrix.
json lattice_header_to_json(const LatticeInstance& inst);

/// Rebuilds an instance from an exported basis under the same family/form.
LatticeInstance lattice_from_basis(const Family& fam, const PositiveElement& a, int t,
                                   const IntMat& basis);

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

}  // namespace divlat
