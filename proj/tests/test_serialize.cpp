#include <doctest.h>

#include <random>

#include "divlat/serialize.hpp"

using namespace divlat;

TEST_SUITE("serialize") {

TEST_CASE("order round trip") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  json j = order_to_json(fam.order);
  CHECK(j.contains("structure_constants"));
  CHECK(j["n"] == 2);
  OrderSpec back = order_from_json(j);
  CHECK(back.dim_total == 4);
  CHECK(back.structure_constants == fam.order.structure_constants);
  CHECK(back.involution == fam.order.involution);
}

TEST_CASE("splitting map round trip") {
  Family fam = build_family(FamilySpec::parse("cyclotomic", 5, 2));
  SplittingMap map = build_reduction(fam, find_split_prime(fam.spec, 11));
  SplittingMap back = splitting_map_from_json(splitting_map_to_json(map));
  CHECK(back.p == map.p);
  CHECK(back.images.size() == map.images.size());
  for (size_t i = 0; i < map.images.size(); ++i) CHECK(back.images[i] == map.images[i]);
}

TEST_CASE("code round trip is stable") {
  std::mt19937_64 rng(3);
  CodeParams params{2, 2, 3, 5};
  Code code = sample_code(params, rng);
  Code back = code_from_json(code_to_json(code));
  CHECK(back == code);
  // same seed, same code
  std::mt19937_64 rng2(3);
  CHECK(sample_code(params, rng2) == code);
}

TEST_CASE("rationals as num/den strings") {
  Rat x(-7, 12);
  CHECK(rat_to_string(x) == "-7/12");
  CHECK(rat_from_string("-7/12") == x);
  CHECK(rat_from_string("6/4") == Rat(3, 2));
}

TEST_CASE("lattice export reloads with identical gram determinant") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  PositiveElement a = build_invariant_form(fam.order, fam.g0);
  SplittingMap map = build_reduction(fam, find_split_prime(fam.spec, 5));
  std::mt19937_64 rng(17);
  Code code = sample_code(CodeParams{2, 2, 3, 5}, rng);
  LatticeInstance inst = lift_code(fam, a, map, code);
  json header = lattice_header_to_json(inst);
  std::string text = basis_to_text(inst.basis);
  LatticeInstance back = lattice_from_basis(fam, a, 2, basis_from_text(text));
  CHECK(back.gram_det == inst.gram_det);
  CHECK(rat_from_string(header["gram_det"].get<std::string>()) == inst.gram_det);
}

TEST_CASE("density report fields") {
  Family fam = build_family(FamilySpec::parse("hurwitz", 0, 2));
  PositiveElement one = make_positive(fam.order, unity_element(fam.order));
  LatticeInstance inst = order_lattice(fam, one, 1);
  DensityReport rep = packing_density(inst, fam.info.g0_order);
  json j = density_report_to_json(rep);
  CHECK(j["lambda1_sq"] == "4/1");
  CHECK(j["covolume_sq"] == "64/1");
  CHECK(j["dimension"] == 4);
}

}  // TEST_SUITE
