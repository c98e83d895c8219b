#include "divlat/serialize.hpp"

namespace divlat {

std::string rat_to_string(const Rat& x) { return rat_str(x); }

Rat rat_from_string(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

json order_to_json(const OrderSpec& ord) {
  json j;
  j["n"] = ord.n;
  j["m"] = ord.m;
  json sc = json::array();
  for (const auto& plane : ord.structure_constants) {
    json rows = json::array();
    for (const auto& row : plane) rows.push_back(row);
    sc.push_back(rows);
  }
  j["structure_constants"] = sc;
  j["involution"] = ord.involution;
  json unity = json::array();
  for (const auto& u : ord.unity) unity.push_back(u.get_str());
  j["unity"] = unity;
  return j;
}

OrderSpec order_from_json(const json& j) {
  OrderSpec ord;
  ord.n = j.at("n").get<int>();
  ord.m = j.at("m").get<int>();
  ord.structure_constants =
      j.at("structure_constants").get<std::vector<std::vector<std::vector<long>>>>();
  ord.involution = j.at("involution").get<std::vector<std::vector<long>>>();
  ord.dim_total = (int)ord.structure_constants.size();
  for (const auto& u : j.at("unity")) ord.unity.emplace_back(u.get<std::string>());
  ord.validate();
  return ord;
}

json splitting_map_to_json(const SplittingMap& map) {
  json j;
  j["p"] = map.p;
  j["n"] = map.n;
  j["center_root"] = map.center_root;
  json imgs = json::array();
  for (const auto& m : map.images) imgs.push_back(m.a);
  j["images"] = imgs;
  return j;
}

SplittingMap splitting_map_from_json(const json& j) {
  SplittingMap map;
  map.p = j.at("p").get<long>();
  map.n = j.at("n").get<int>();
  map.center_root = j.value("center_root", 0L);
  for (const auto& flat : j.at("images")) {
    FpMat m(map.n, map.n, map.p);
    m.a = flat.get<std::vector<int64_t>>();
    map.images.push_back(std::move(m));
  }
  return map;
}

json code_to_json(const Code& code) {
  json j;
  j["n"] = code.params.n;
  j["t"] = code.params.t;
  j["k"] = code.params.k;
  j["p"] = code.params.p;
  j["rows"] = code.row_space.a;  // row-major
  return j;
}

Code code_from_json(const json& j) {
  CodeParams params;
  params.n = j.at("n").get<int>();
  params.t = j.at("t").get<int>();
  params.k = j.at("k").get<int>();
  params.p = j.at("p").get<long>();
  FpMat rows(params.k, params.ambient(), params.p);
  rows.a = j.at("rows").get<std::vector<int64_t>>();
  return code_from_rows(params, rows);
}

json family_to_json(const FamilySpec& spec) {
  FamilyInfo info = family_info(spec);
  json j;
  j["schema"] = 1;
  j["family"] = spec.name();
  j["n"] = info.n;
  j["center_degree"] = info.center_degree;
  j["dim"] = info.dim;
  j["g0_order"] = info.g0_order.get_str();
  j["center_discriminant"] = info.center_discriminant.get_str();
  j["reduced_discriminant"] = info.reduced_discriminant.get_str();
  if (!info.notes.empty()) j["notes"] = info.notes;
  return j;
}

json density_report_to_json(const DensityReport& rep) {
  json j;
  j["dimension"] = rep.dimension;
  j["lambda1_sq"] = rat_to_string(rep.lambda1_sq);
  j["covolume_sq"] = rat_to_string(rep.covolume_sq);
  j["density"] = rep.density;
  j["bound_mh"] = rep.bound_mh;
  j["bound_g0"] = rep.bound_g0;
  j["provenance"] = {{"family", rep.provenance.family},
                     {"p", rep.provenance.p},
                     {"code", rep.provenance.code_id},
                     {"form", rep.provenance.form}};
  return j;
}

json mc_estimate_to_json(const McEstimate& est) {
  json j;
  j["mean"] = est.mean;
  j["stderr"] = est.stderr_;
  j["samples"] = est.samples;
  j["target"] = est.target;
  return j;
}

json search_result_to_json(const SearchResult& res) {
  json j;
  j["codes_tried"] = res.codes_tried;
  j["seed"] = res.seed;
  j["hit"] = res.hit;
  j["target_density"] = res.target_density;
  j["radius"] = res.radius;
  j["best_code_index"] = res.best_code_index;
  if (res.best) j["best"] = density_report_to_json(*res.best);
  if (res.balanced_best)
    j["balanced_best"] = {{"lambda1", res.balanced_best->lambda1},
                          {"density", res.balanced_best->density}};
  return j;
}

json lattice_header_to_json(const LatticeInstance& inst) {
  json j;
  j["schema"] = 1;
  j["family"] = inst.provenance.family;
  j["p"] = inst.provenance.p;
  j["code"] = inst.provenance.code_id;
  j["form"] = inst.provenance.form;
  j["dim"] = inst.dim;
  j["t"] = inst.t;
  j["gram_det"] = rat_to_string(inst.gram_det);
  return j;
}

LatticeInstance lattice_from_basis(const Family& fam, const PositiveElement& a, int t,
                                   const IntMat& basis) {
  LatticeInstance inst = order_lattice(fam, a, t);
  inst.basis = hnf(basis, inst.dim);
  // recompute the Gram from the loaded basis
  RatMat tmp(inst.dim, RatVec(inst.dim, Rat(0)));
  for (int i = 0; i < inst.dim; ++i)
    for (int k = 0; k < inst.dim; ++k) {
      if (inst.basis[i][k] == 0) continue;
      Rat c(inst.basis[i][k]);
      for (int j = 0; j < inst.dim; ++j) tmp[i][j] += c * inst.order_gram[k][j];
    }
  for (int i = 0; i < inst.dim; ++i)
    for (int j = 0; j < inst.dim; ++j) {
      Rat v(0);
      for (int k = 0; k < inst.dim; ++k)
        if (inst.basis[j][k] != 0) v += tmp[i][k] * inst.basis[j][k];
      inst.gram[i][j] = v;
    }
  inst.gram_det = rat_det(inst.gram);
  return inst;
}

}  // namespace divlat
