#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "divlat/serialize.hpp"

namespace py = pybind11;
using namespace divlat;

namespace {

Family make_family(const std::string& name, long m) {
  return build_family(FamilySpec::parse(name, m, 2));
}

std::vector<std::vector<std::string>> gram_strings(const LatticeInstance& inst) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : inst.gram) {
    std::vector<std::string> r;
    for (const auto& v : row) r.push_back(rat_str(v));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_divlat, mod) {
  mod.doc() = "lattices from lifts of codes over division-ring orders";

  py::class_<Family>(mod, "Family")
      .def(py::init(&make_family), py::arg("name"), py::arg("m") = 0)
      .def_property_readonly("name", [](const Family& f) { return f.spec.name(); })
      .def_property_readonly("dim", [](const Family& f) { return f.info.dim; })
      .def_property_readonly("n", [](const Family& f) { return f.info.n; })
      .def_property_readonly("g0_order", [](const Family& f) { return (long)f.g0.order(); })
      .def_property_readonly("reduced_discriminant",
                             [](const Family& f) { return f.info.reduced_discriminant.get_str(); })
      .def("order_json", [](const Family& f) { return order_to_json(f.order).dump(); });

  py::class_<SplittingMap>(mod, "SplittingMap")
      .def_property_readonly("p", [](const SplittingMap& m) { return m.p; })
      .def("to_json", [](const SplittingMap& m) { return splitting_map_to_json(m).dump(); });

  py::class_<Code>(mod, "Code")
      .def_property_readonly("rows", [](const Code& c) { return c.row_space.a; })
      .def_property_readonly("k", [](const Code& c) { return c.params.k; });

  py::class_<LatticeInstance>(mod, "Lattice")
      .def_property_readonly("dim", [](const LatticeInstance& i) { return i.dim; })
      .def_property_readonly("gram_det",
                             [](const LatticeInstance& i) { return rat_str(i.gram_det); })
      .def_property_readonly("basis",
                             [](const LatticeInstance& i) {
                               std::vector<std::vector<long>> out;
                               for (const auto& row : i.basis) {
                                 std::vector<long> r;
                                 for (const auto& v : row) r.push_back(v.get_si());
                                 out.push_back(std::move(r));
                               }
                               return out;
                             })
      .def("gram", &gram_strings)
      .def("basis_text", [](const LatticeInstance& i) { return basis_to_text(i.basis); });

  mod.def("find_split_prime", [](const std::string& name, long m, long min_bound) {
    return find_split_prime(FamilySpec::parse(name, m, 2), min_bound).p;
  }, py::arg("family"), py::arg("m") = 0, py::arg("min_bound") = 3);

  mod.def("build_reduction", [](const Family& fam, long p) {
    return build_reduction(fam, SplitPrime{p, p, fam.spec.name()});
  });

  mod.def("enumerate_code_count", [](int n, int t, int k, long p) {
    return (long)enumerate_codes(CodeParams{n, t, k, p}).size();
  });

  mod.def("gaussian_binomial",
          [](int d, int k, long p) { return gaussian_binomial(d, k, p).get_str(); });

  mod.def("sample_code", [](const Family& fam, int t, int k, long p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_code(CodeParams{fam.info.n, t, k, p}, rng);
  });

  mod.def("lift_code", [](const Family& fam, const SplittingMap& map, const Code& code,
                          bool invariant_form) {
    PositiveElement a = invariant_form
                            ? build_invariant_form(fam.order, fam.g0)
                            : make_positive(fam.order, unity_element(fam.order));
    return lift_code(fam, a, map, code);
  }, py::arg("family"), py::arg("map"), py::arg("code"), py::arg("invariant_form") = true);

  mod.def("order_lattice", [](const Family& fam, int t, bool invariant_form) {
    PositiveElement a = invariant_form
                            ? build_invariant_form(fam.order, fam.g0)
                            : make_positive(fam.order, unity_element(fam.order));
    return order_lattice(fam, a, t);
  }, py::arg("family"), py::arg("t") = 1, py::arg("invariant_form") = false);

  mod.def("svp", [](const LatticeInstance& inst) {
    SvpResult r = svp(inst);
    return py::make_tuple(rat_str(r.min_sq), r.kissing);
  });

  mod.def("packing_density", [](const Family& fam, const LatticeInstance& inst) {
    return density_report_to_json(packing_density(inst, fam.info.g0_order)).dump();
  });

  mod.def("balancedness_audit", [](int n, int t, int k, long p) {
    BalancednessReport rep = balancedness_audit(CodeParams{n, t, k, p});
    return py::make_tuple(rep.L.get_str(), rep.uniform, rep.bijection_count.get_str());
  });

  mod.def("density_search", [](const Family& fam, long p, int t, int k, double epsilon,
                               uint64_t seed, long budget, int workers) {
    SearchConfig cfg;
    cfg.t = t;
    cfg.k = k;
    cfg.epsilon = epsilon;
    cfg.seed = seed;
    cfg.sampled = budget > 0;
    cfg.budget = budget;
    cfg.workers = workers;
    SearchResult res = density_search(fam, SplitPrime{p, p, fam.spec.name()}, cfg);
    return search_result_to_json(res).dump();
  }, py::arg("family"), py::arg("p"), py::arg("t") = 2, py::arg("k") = 3,
     py::arg("epsilon") = 0.01, py::arg("seed") = 1, py::arg("budget") = 0,
     py::arg("workers") = 1);

  mod.def("mc_average", [](const Family& fam, long p, int t, int k, double target_ratio,
                           long samples, uint64_t seed) {
    PositiveElement a = build_invariant_form(fam.order, fam.g0);
    SplittingMap map = build_reduction(fam, SplitPrime{p, p, fam.spec.name()});
    long d = (long)fam.order.dim_total * t;
    double vol = std::pow(std::sqrt(to_double(rat_det(a.gram))), (double)t);
    TestFunction f{TestFunction::Kind::Indicator,
                   std::pow(target_ratio * zeta(d) * vol / unit_ball_volume(d),
                            1.0 / (double)d),
                   d, t};
    return mc_estimate_to_json(mc_average(fam, a, map, t, k, f, samples, seed)).dump();
  }, py::arg("family"), py::arg("p"), py::arg("t") = 2, py::arg("k") = 1,
     py::arg("target_ratio") = 5.0, py::arg("samples") = 0, py::arg("seed") = 1);

  mod.def("find_congruence_prime", [](long m, const std::string& lower) {
    return find_congruence_prime(m, Int(lower)).get_str();
  });

  mod.def("is_probable_prime", [](const std::string& n) { return is_probable_prime(Int(n)); });

  mod.def("admissible_m", [](long k) { return admissible_m_sequence(k).get_str(); });

  mod.def("cyclotomic_discriminant",
          [](long m) { return cyclotomic_discriminant(m).get_str(); });

  mod.def("zeta", [](long d) { return zeta(d); });

  mod.def("asymptotic_bounds", [](const std::string& name, long m, int t) {
    AsymptoticBounds b = asymptotic_bounds(FamilySpec::parse(name, m, t), t);
    py::dict out;
    out["dim"] = b.dim;
    out["log2_main"] = b.log2_main;
    out["log2_indicator"] = b.log2_indicator;
    out["log2_minkowski_hlawka"] = b.log2_mh;
    out["log2_cyclo_quat_target"] = b.log2_cyclo_quat;
    return out;
  });
}
