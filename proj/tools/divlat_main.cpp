// divlat command line: constructs lattices as lifts of codes over orders in
// Q-division algebras, runs the averaging and density searches, and emits
// JSON/CSV reports.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "divlat/serialize.hpp"

using namespace divlat;

namespace {

int env_workers() {
  const char* w = std::getenv("DIVLAT_WORKERS");
  if (!w) return 1;
  int v = std::atoi(w);
  return v > 0 ? v : 1;
}

uint64_t random_seed() {
  std::random_device rd;
  return ((uint64_t)rd() << 32) ^ rd();
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << text;
  }
}

json envelope(const std::string& command, const json& config, const json& result) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  j["timestamp"] = (long)std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  return j;
}

// Accepts plain decimals, "B^E" and "B^E+C".
Int parse_big(const std::string& s) {
  auto caret = s.find('^');
  if (caret == std::string::npos) return Int(s);
  Int base(s.substr(0, caret));
  std::string rest = s.substr(caret + 1);
  auto plus = rest.find('+');
  unsigned long e = std::stoul(plus == std::string::npos ? rest : rest.substr(0, plus));
  Int value = int_pow(base, e);
  if (plus != std::string::npos) value += Int(rest.substr(plus + 1));
  return value;
}

FamilySpec family_from(const std::string& name, long m, int t) {
  return FamilySpec::parse(name, m, t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattices from lifts of codes over division-ring orders"};
  app.require_subcommand(1);

  std::string family = "hurwitz", out_path, csv_path, lattice_path, ckpt_path, mode = "exhaustive";
  long m = 0, prime = 0, min_bound = 3, samples = 0, budget = 0, resume = 0;
  long congruence_m = 0;
  std::string lower_str;
  int t = 2, k = 3, workers = env_workers();
  double epsilon = 0.01, target_ratio = 0.0, radius = 0.0;
  uint64_t seed = 0;
  bool list_families = false, dump_order = false;

  auto add_family = [&](CLI::App* cmd) {
    cmd->add_option("--family", family, "hurwitz | cyclotomic | cyclo-quat | dihedral-quat | hurwitz-rank");
    cmd->add_option("--m", m, "conductor for the cyclotomic families");
    cmd->add_option("--out", out_path, "write the JSON report here as well");
  };

  CLI::App* info = app.add_subcommand("family-info", "derived constants of a family");
  add_family(info);
  info->add_flag("--list", list_families, "list the known families");
  info->add_flag("--order", dump_order, "include the order basis data");
  info->add_option("--t", t, "module rank for hurwitz-rank");

  CLI::App* pf = app.add_subcommand("prime-find", "split or congruence prime search");
  add_family(pf);
  pf->add_option("--min", min_bound, "lower bound for the split prime");
  pf->add_option("--congruence-m", congruence_m, "search p = 1 mod m instead");
  pf->add_option("--lower", lower_str, "lower bound, accepts B^E and B^E+C");

  CLI::App* audit = app.add_subcommand("audit", "balancedness audit over all residue points");
  add_family(audit);
  audit->add_option("--t", t);
  audit->add_option("--k", k);
  audit->add_option("--prime", prime)->required();

  CLI::App* mc = app.add_subcommand("mc-average", "code-averaged primitive-vector sums");
  add_family(mc);
  mc->add_option("--t", t);
  mc->add_option("--k", k);
  mc->add_option("--prime", prime)->required();
  mc->add_option("--samples", samples, "0 = exhaustive over all codes");
  mc->add_option("--target-ratio", target_ratio, "choose r so integral(f)/(zeta V) equals this");
  mc->add_option("--radius", radius, "explicit indicator radius");
  mc->add_option("--seed", seed);
  mc->add_option("--workers", workers);

  CLI::App* search = app.add_subcommand("search", "density search over lifted codes");
  add_family(search);
  search->add_option("--t", t);
  search->add_option("--k", k);
  search->add_option("--prime", prime)->required();
  search->add_option("--mode", mode, "exhaustive | sampled");
  search->add_option("--budget", budget, "samples in sampled mode");
  search->add_option("--epsilon", epsilon);
  search->add_option("--seed", seed);
  search->add_option("--workers", workers);
  search->add_option("--csv", csv_path, "per-code density table");
  search->add_option("--lattice-out", lattice_path, "write the best basis as text");
  search->add_option("--checkpoint", ckpt_path);
  search->add_option("--resume", resume, "first code index to process");
  bool rogers = false;
  search->add_flag("--rogers", rogers, "radial profile mode with balancing");

  CLI::App* bounds = app.add_subcommand("bounds", "density bound calculators");
  add_family(bounds);
  bounds->add_option("--t", t);
  bounds->add_option("--prime", prime, "also evaluate the effective conditions at p");
  bounds->add_option("--epsilon", epsilon);

  CLI::App* verify = app.add_subcommand("verify", "invariant battery for a family and prime");
  add_family(verify);
  verify->add_option("--prime", prime);
  verify->add_option("--samples", samples);
  verify->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (seed == 0) seed = random_seed();

    if (info->parsed()) {
      json result;
      if (list_families) {
        result["families"] = {"hurwitz", "cyclotomic", "cyclo-quat", "dihedral-quat",
                              "hurwitz-rank"};
      } else {
        FamilySpec spec = family_from(family, m, t);
        result = family_to_json(spec);
        if (dump_order) {
          Family fam = build_family(spec);
          result["order"] = order_to_json(fam.order);
          DiscriminantReport disc = order_discriminant(fam);
          result["trd_pairing_det"] = disc.trd_pairing_det.get_str();
          result["trace_form_det"] = disc.trace_form_det.get_str();
        }
      }
      emit(envelope("family-info", {{"family", family}, {"m", m}}, result), out_path);
      return 0;
    }

    if (pf->parsed()) {
      json config{{"family", family}, {"m", m}};
      json result;
      if (congruence_m > 0) {
        Int lower = lower_str.empty() ? Int(2) : parse_big(lower_str);
        Int p = find_congruence_prime(congruence_m, lower);
        result["prime"] = p.get_str();
        result["congruent_1_mod"] = congruence_m;
        result["offset_from_lower"] = Int(p - lower).get_str();
        config["congruence_m"] = congruence_m;
        config["lower"] = lower_str;
      } else {
        FamilySpec spec = family_from(family, m, t);
        SplitPrime sp = find_split_prime(spec, min_bound);
        result["prime"] = sp.p;
        result["family_tag"] = sp.family_tag;
        config["min"] = min_bound;
      }
      emit(envelope("prime-find", config, result), out_path);
      return 0;
    }

    if (audit->parsed()) {
      FamilySpec spec = family_from(family, m, t);
      FamilyInfo fi = family_info(spec);
      BalancednessReport rep = balancedness_audit(CodeParams{fi.n, t, k, prime});
      json result{{"L", rep.L.get_str()},
                  {"uniform", rep.uniform},
                  {"bijection_count", rep.bijection_count.get_str()},
                  {"u_checked", rep.u_checked}};
      emit(envelope("audit",
                    {{"family", family}, {"m", m}, {"t", t}, {"k", k}, {"prime", prime}},
                    result),
           out_path);
      return rep.uniform && rep.L == rep.bijection_count ? 0 : 1;
    }

    if (mc->parsed()) {
      FamilySpec spec = family_from(family, m, t);
      Family fam = build_family(spec);
      PositiveElement a = build_invariant_form(fam.order, fam.g0);
      SplittingMap map = build_reduction(fam, SplitPrime{prime, prime, spec.name()});
      long d = (long)fam.order.dim_total * t;
      TestFunction f{TestFunction::Kind::Indicator, radius, d, t};
      if (target_ratio > 0.0) {
        double vol = std::pow(std::sqrt(to_double(rat_det(a.gram))), (double)t);
        f.r = std::pow(target_ratio * zeta(d) * vol / unit_ball_volume(d), 1.0 / (double)d);
      }
      McEstimate est = mc_average(fam, a, map, t, k, f, samples, seed, workers);
      json result = mc_estimate_to_json(est);
      result["radius"] = f.r;
      emit(envelope("mc-average",
                    {{"family", family},
                     {"m", m},
                     {"t", t},
                     {"k", k},
                     {"prime", prime},
                     {"samples", samples},
                     {"target_ratio", target_ratio},
                     {"seed", seed}},
                    result),
           out_path);
      return 0;
    }

    if (search->parsed()) {
      FamilySpec spec = family_from(family, m, t);
      Family fam = build_family(spec);
      SearchConfig cfg;
      cfg.t = t;
      cfg.k = k;
      cfg.epsilon = epsilon;
      cfg.seed = seed;
      cfg.workers = workers;
      cfg.sampled = (mode == "sampled");
      cfg.budget = budget;
      cfg.mode = rogers ? RadiusMode::RogersRadial : RadiusMode::Indicator;
      cfg.keep_per_code = !csv_path.empty();
      cfg.checkpoint_path = ckpt_path;
      cfg.resume_from = resume;
      SearchResult res = density_search(fam, SplitPrime{prime, prime, spec.name()}, cfg);

      json config{{"family", family}, {"m", m},        {"t", t},
                  {"k", k},           {"prime", prime}, {"epsilon", epsilon},
                  {"seed", seed},     {"mode", mode},   {"rogers", rogers}};
      json result = search_result_to_json(res);
      result["p"] = prime;
      result["t"] = t;
      result["k"] = k;
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << "code_index,density\n";
        for (const auto& [idx, dens] : res.per_code_density)
          csv << idx << "," << dens << "\n";
      }
      if (!lattice_path.empty() && res.best && !cfg.sampled) {
        // re-derive the exported lattices from their code indices
        PositiveElement a = build_invariant_form(fam.order, fam.g0);
        SplittingMap map = build_reduction(fam, SplitPrime{prime, prime, spec.name()});
        std::vector<Code> codes = enumerate_codes(CodeParams{fam.info.n, t, k, prime});
        if (res.best_code_index >= 0) {
          LatticeInstance best = lift_code(fam, a, map, codes[res.best_code_index]);
          std::ofstream lf(lattice_path);
          lf << basis_to_text(best.basis);
          result["lattice_file"] = lattice_path;
          result["lattice_header"] = lattice_header_to_json(best);
        }
        if (rogers && res.balanced_code_index >= 0) {
          // balanced output: decimal basis plus the exact pre-balance basis
          LatticeInstance src = lift_code(fam, a, map, codes[res.balanced_code_index]);
          MinimaProfile prof = successive_minima(fam.order, src);
          BalanceResult bal = balance(fam.order, real_from_element(a.value), src, prof);
          std::ofstream bf(lattice_path + ".balanced");
          bf << balanced_basis_text(bal);
          std::ofstream pf(lattice_path + ".prebalance");
          pf << basis_to_text(src.basis);
          result["balanced_file"] = lattice_path + ".balanced";
          result["prebalance_file"] = lattice_path + ".prebalance";
        }
      }
      emit(envelope("search", config, result), out_path);
      return res.hit ? 0 : 2;
    }

    if (bounds->parsed()) {
      FamilySpec spec = family_from(family, m, t);
      AsymptoticBounds b = asymptotic_bounds(spec, t);
      json result{{"dim", b.dim},
                  {"log2_main", b.log2_main},
                  {"log2_indicator", b.log2_indicator},
                  {"log2_minkowski_hlawka", b.log2_mh},
                  {"log2_cyclo_quat_target", b.log2_cyclo_quat}};
      if (prime > 0) {
        Family fam = build_family(spec);
        PositiveElement a = build_invariant_form(fam.order, fam.g0);
        EffectiveReport er = effective_conditions(fam, a, prime, epsilon, t);
        result["effective"] = {{"ratio", er.ratio},
                               {"ratio_bound", er.ratio_bound},
                               {"cond_ratio", er.cond_ratio},
                               {"lhs_growth", er.lhs_growth},
                               {"rhs_growth", er.rhs_growth},
                               {"cond_growth", er.cond_growth},
                               {"rank_ok", er.rank_ok}};
      }
      emit(envelope("bounds",
                    {{"family", family}, {"m", m}, {"t", t}, {"prime", prime}}, result),
           out_path);
      return 0;
    }

    if (verify->parsed()) {
      FamilySpec spec = family_from(family, m, t);
      Family fam = build_family(spec);  // build_family validates the order
      PositiveElement a = build_invariant_form(fam.order, fam.g0);
      if (prime == 0) prime = find_split_prime(spec, 3).p;
      SplittingMap map = build_reduction(fam, SplitPrime{prime, prime, spec.name()});
      long n_samples = samples > 0 ? samples : 2000;
      DetCompatReport det_rep = det_compat_audit(fam, map, n_samples, seed);
      double bound = bad_point_bound(fam, a, prime);
      BadPointAudit bad = audit_bad_points(fam, a, map, Rat((long)(bound * bound * 4)));
      bool ok = det_rep.violations == 0 && bad.violations == 0;
      json result{{"order_valid", true},
                  {"g0_order", (long)fam.g0.order()},
                  {"det_compat_samples", det_rep.samples},
                  {"det_compat_violations", det_rep.violations},
                  {"bad_point_bound", bound},
                  {"bad_points_checked", bad.checked},
                  {"bad_point_violations", bad.violations},
                  {"pass", ok}};
      emit(envelope("verify",
                    {{"family", family}, {"m", m}, {"prime", prime}, {"seed", seed}},
                    result),
           out_path);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
