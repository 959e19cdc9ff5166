#include "psv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "psv/chebotarev.hpp"
#include "psv/config.hpp"
#include "psv/constants.hpp"
#include "psv/errors.hpp"
#include "psv/fields.hpp"
#include "psv/largesieve.hpp"
#include "psv/lfunc.hpp"
#include "psv/numerics.hpp"
#include "psv/report_io.hpp"
#include "psv/sievekit.hpp"
#include "psv/torsion.hpp"
#include "psv/zeros.hpp"

namespace psv {

namespace {

using json = nlohmann::json;

std::string join_path(const std::string& dir, const std::string& name) { return dir + "/" + name; }

std::string yes_no(bool b) { return b ? "1" : "0"; }

// Runs fn(i) for i in [0, n) on up to `threads` workers; fn writes only its own slot.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<DirichletCharacter> family_for(u64 q) {
  if (q == 1) return {principal_character(1)};
  return primitive_characters(q);
}

int cmd_verify_identities(const RunConfig& cfg, u64 q, u64 r_max, u64 n_max, std::ostream& out) {
  const auto reports = identity_sweep(q, r_max, n_max, cfg.delta, cfg.z);
  CsvTable t({"character", "r", "t", "n_max", "status", "first_counterexample", "product_identity", "sum_identity",
              "h_bound"});
  std::size_t failures = 0;
  for (const auto& r : reports) {
    failures += !r.pass();
    t.add_row({r.character, std::to_string(r.r), std::to_string(r.t), std::to_string(r.n_max),
               r.pass() ? "pass" : "fail", r.first_counterexample ? std::to_string(*r.first_counterexample) : "",
               yes_no(r.product_identity), yes_no(r.sum_identity), yes_no(r.h_bound)});
  }
  write_file_atomic(join_path(cfg.out, "identities.csv"), t.str());
  write_report(join_path(cfg.out, "identities.json"),
               make_report("identities", cfg.to_json(),
                           {{"modulus", q}, {"r_max", r_max}, {"n_max", n_max}, {"pairs", reports.size()},
                            {"failures", failures}}));
  out << "identities: " << reports.size() << " pairs, " << failures << " failures\n";
  return failures ? kExitFailure : kExitOk;
}

int cmd_zeros(const RunConfig& cfg, u64 q, double alpha, double T, std::ostream& out) {
  ZeroSearchOptions opt;
  opt.tol = std::max(cfg.precision, opt.tol);
  std::vector<Zero> all;
  json chars = json::array();
  bool envelope_ok = true;
  const double e = eta(static_cast<double>(q), T, cfg.c);
  for (const auto& chi : family_for(q)) {
    const Rectangle rect{alpha, T};
    const auto count = count_zeros_detailed(chi, rect, opt);
    const auto zs = locate_zeros(chi, rect, opt);
    std::vector<Zero> inside;
    for (const auto& z : zs)
      if (z.beta >= alpha) inside.push_back(z);
    const auto env = rectangle_envelope_check(inside, rect, e, static_cast<double>(q), 1.0, 1.0);
    envelope_ok = envelope_ok && env.ok;
    chars.push_back({{"character", chi.label()},
                     {"count", count.count},
                     {"T_used", count.T_used},
                     {"nudges", count.nudges},
                     {"located", zs.size()},
                     {"envelope_ok", env.ok},
                     {"max_rectangle_count", env.max_count}});
    all.insert(all.end(), zs.begin(), zs.end());
  }
  write_file_atomic(join_path(cfg.out, "zeros.csv"), zeros_table(all).str());
  write_report(join_path(cfg.out, "zeros.json"),
               make_report("zeros", cfg.to_json(),
                           {{"modulus", q}, {"alpha", alpha}, {"T", T}, {"eta", e}, {"kappa1", 1.0}, {"kappa2", 1.0},
                            {"characters", chars}}));
  out << "zeros: " << all.size() << " located over " << chars.size() << " characters\n";
  return envelope_ok ? kExitOk : kExitFailure;
}

struct SieveOptions {
  u64 q = 5;
  double T = 10;
  u64 R = 15;
  u64 N_prime = 50;
  double tau = 1.5;
  int trials = 20;
  bool breakdown = false;
  std::optional<u64> N;  // zero-weighted harness length
  double alpha = 0.75;
};

int cmd_sieve(const RunConfig& cfg, const SieveOptions& o, std::ostream& out) {
  SieveParams p;
  p.q = o.q;
  p.T = o.T;
  p.R = o.R;
  p.delta = cfg.delta;
  p.z = cfg.z;
  p.eps0 = cfg.eps0;
  p.alpha = o.alpha;
  const auto fam = primitive_characters(o.q);
  const u64 n_hi = static_cast<u64>(std::floor(o.tau * static_cast<double>(o.N_prime)));
  SplitMix64 rng(cfg.seed);
  std::vector<double> ratios;
  SieveReport last;
  for (int k = 0; k < o.trials; ++k) {
    std::vector<cplx> a(n_hi - o.N_prime + 1);
    for (auto& x : a) {
      const double re = rng.normal();
      x = {re, rng.normal()};
    }
    last = dyadic_harness(fam, o.N_prime, o.tau, a, p);
    ratios.push_back(last.ratio);
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.empty() ? 0 : sorted[sorted.size() / 2];
  const double maxr = sorted.empty() ? 0 : sorted.back();
  const auto dual = duality_check(fam, o.N_prime, o.tau, p, cfg.seed);
  json results = {
      {"dyadic",
       {{"q", o.q}, {"T", o.T}, {"R", o.R}, {"N_prime", o.N_prime}, {"tau", o.tau}, {"trials", o.trials},
        {"ratios", ratios}, {"median_ratio", median}, {"max_ratio", maxr},
        {"stable", median > 0 ? maxr <= 3 * median : true}, {"log10_M_prime", last.log10_M_prime},
        {"above_threshold", last.above_threshold}, {"delta", p.delta}, {"eps0", p.eps0}}},
      {"duality",
       {{"rows", dual.rows}, {"cols", dual.cols}, {"primal_norm", dual.primal_norm}, {"dual_norm", dual.dual_norm},
        {"relative_gap", dual.relative_gap}, {"random_primal_max", dual.random_primal_max},
        {"random_dual_max", dual.random_dual_max}}},
  };
  if (o.N) {
    const double e = eta(static_cast<double>(o.q), o.T, cfg.c);
    std::vector<FamilyZeros> fz;
    for (const auto& chi : fam) {
      const Rectangle rect{o.alpha, o.T};
      std::vector<Zero> inside;
      for (const auto& z : locate_zeros(chi, rect))
        if (z.beta >= o.alpha) inside.push_back(z);
      fz.push_back({chi, well_spaced_zeros(inside, rect, e)});
    }
    std::vector<cplx> a(*o.N + 1);
    for (std::size_t n = 1; n < a.size(); ++n) {
      const double re = rng.normal();
      a[n] = {re, rng.normal()};
    }
    const double lhs = zero_sieve_lhs(fz, a, p, cfg.mode == Mode::desk);
    const double rhs = zero_sieve_rhs(a, static_cast<double>(o.q), o.T, static_cast<double>(o.R), o.alpha);
    results["zero_sieve"] = {{"N", *o.N}, {"alpha", o.alpha}, {"eta", e},     {"lhs", lhs},
                            {"rhs", rhs}, {"ratio", rhs > 0 ? lhs / rhs : 0}, {"stamp", mode_name(cfg.mode)}};
  }
  if (o.breakdown) {
    CsvTable t({"character", "r", "contribution"});
    for (const auto& c : last.contributions) t.add_row({c.character, std::to_string(c.r), format_double(c.value)});
    write_file_atomic(join_path(cfg.out, "sieve_breakdown.csv"), t.str());
  }
  write_report(join_path(cfg.out, "sieve.json"), make_report("sieve", cfg.to_json(), results));
  out << "sieve: median ratio " << median << ", duality gap " << dual.relative_gap << "\n";
  return dual.relative_gap <= 0.05 ? kExitOk : kExitFailure;
}

struct DetectorOptions {
  u64 q = 5;
  std::size_t char_index = 0;
  u64 r = 1;
  double rho_re = 0.8, rho_im = 2.0;
  double w = 2, y = 10, x = 30, qT = 50;
  double height = 40;
  double tol = 1e-6;
};

int cmd_detector(const RunConfig& cfg, const DetectorOptions& o, std::ostream& out) {
  const auto fam = primitive_characters(o.q);
  if (o.char_index >= fam.size()) throw RangeError("detector: --char-index out of range");
  const auto ctx = PseudoCharacterContext::make(fam[o.char_index], cfg.delta, cfg.z, o.r);
  SelbergWeightScheme s{o.w, o.y, o.x, o.qT};
  const auto rep = detector_identity_check(ctx, o.r, cplx(o.rho_re, o.rho_im), s, o.height, o.tol);
  auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
  json c = {{"character", ctx.chi.label()}, {"r", o.r},       {"rho", cj({o.rho_re, o.rho_im})},
            {"lhs", cj(rep.lhs)},           {"rhs", cj(rep.rhs)}, {"detector", cj(rep.detector)},
            {"residual", rep.residual},     {"tail_bound", rep.tail_bound}, {"X", rep.X},
            {"height", rep.height},         {"nodes", rep.nodes}, {"pass", rep.residual < o.tol}};
  write_report(join_path(cfg.out, "detector.json"),
               make_report("detector", cfg.to_json(), {{"cases", json::array({c})}}));
  out << "detector: residual " << rep.residual << "\n";
  return rep.residual < o.tol ? kExitOk : kExitFailure;
}

json big_json(const std::optional<BigValue>& b) {
  if (!b) return nullptr;
  return {{"value", std::isfinite(b->value) ? json(b->value) : json(nullptr)}, {"log10", b->log10}};
}

int cmd_constants(const RunConfig& cfg, ConstantsInput in, std::ostream& out) {
  in.c = cfg.c;
  in.delta = cfg.delta;
  in.eps0 = cfg.eps0;
  in.eps2 = cfg.eps2;
  in.eps3 = cfg.eps3;
  in.eps4 = cfg.eps4;
  const auto r = constants(in);
  json results = {{"n", in.n},   {"nk", in.n_k},       {"A", in.A},           {"d", in.d},
                  {"c1", r.c1},  {"c2", r.c2},         {"c1_balanced", r.c1_balanced}, {"z", r.z},
                  {"eta", r.eta ? json(*r.eta) : json(nullptr)},
                  {"R", big_json(r.R)}, {"M", big_json(r.M)}, {"M_prime", big_json(r.M_prime)},
                  {"w", big_json(r.w)}, {"y", big_json(r.y)}, {"x", big_json(r.x)}};
  const auto rep = make_report("constants", cfg.to_json(), results);
  write_report(join_path(cfg.out, "constants.json"), rep);
  out << rep.dump(2) << "\n";
  return kExitOk;
}

int cmd_fields(const RunConfig& cfg, unsigned n, double X, const std::vector<double>& grid, std::ostream& out) {
  const auto fields = enumerate_cyclic(n, X);
  CsvTable t({"label", "degree", "conductor", "discriminant", "character_exponents"});
  for (const auto& K : fields) {
    std::string ex = "[";
    for (std::size_t i = 0; i < K.exponents.size(); ++i) ex += (i ? "," : "") + std::to_string(K.exponents[i]);
    t.add_row({K.label, std::to_string(K.degree), std::to_string(K.conductor), std::to_string(K.discriminant),
               ex + "]"});
  }
  json results = {{"degree", n}, {"X", X}, {"count", fields.size()}};
  if (!grid.empty()) {
    const auto fit = count_slope(n, grid);
    results["slope"] = {{"X", fit.X},         {"counts", fit.counts},       {"slope", fit.slope},
                        {"intercept", fit.intercept}, {"residuals", fit.residuals}, {"degenerate", fit.degenerate}};
  }
  write_file_atomic(join_path(cfg.out, "fields.csv"), t.str());
  write_report(join_path(cfg.out, "fields.json"), make_report("fields", cfg.to_json(), results));
  out << "fields: " << fields.size() << " with D <= " << X << "\n";
  return kExitOk;
}

int cmd_chebotarev(const RunConfig& cfg, unsigned n, u64 max_conductor, double x, double eps, double tol,
                   std::ostream& out) {
  const double X = std::pow(static_cast<double>(max_conductor), n - 1.0);
  const auto fields = enumerate_cyclic(n, X);
  const auto chain = kappa(n, 1, n, eps);
  const PrimeList primes(static_cast<u64>(std::max(2.0, x)));
  std::vector<std::vector<ChebotarevReport>> per(fields.size());
  parallel_for(fields.size(), cfg.threads,
               [&](std::size_t i) { per[i] = pi_counts(fields[i], x, primes, chain.kappa, cfg.c3); });
  CsvTable t({"field_label", "x", "class", "pi_C", "pi", "normalized_error", "paper_bound_small", "paper_bound_large"});
  std::size_t pairs = 0, within = 0;
  bool partition_ok = true;
  for (const auto& reps : per) {
    partition_ok = partition_ok && partition_identity(reps);
    for (const auto& r : reps) {
      ++pairs;
      within += r.normalized_error <= tol;
      t.add_row({r.field_label, format_double(r.x), std::to_string(r.class_index), std::to_string(r.pi_C),
                 std::to_string(r.pi_x), format_double(r.normalized_error), format_double(r.paper_bound_small),
                 format_double(r.paper_bound_large)});
    }
  }
  write_file_atomic(join_path(cfg.out, "chebotarev.csv"), t.str());
  const double frac = pairs ? static_cast<double>(within) / pairs : 1.0;
  write_report(join_path(cfg.out, "chebotarev.json"),
               make_report("chebotarev", cfg.to_json(),
                           {{"degree", n}, {"x", x}, {"max_conductor", max_conductor}, {"fields", fields.size()},
                            {"pairs", pairs}, {"within_tolerance", within}, {"tolerance", tol},
                            {"fraction_within", frac}, {"partition_ok", partition_ok}, {"kappa", chain.kappa},
                            {"eps", eps}}));
  out << "chebotarev: " << within << "/" << pairs << " (field, class) pairs within " << tol << "\n";
  return partition_ok ? kExitOk : kExitFailure;
}

struct TorsionOptions {
  unsigned n = 3;
  double X = 1e8;
  unsigned ell = 2;
  double delta = 0.12;
  double eps = 0.01;
  std::string class_table;
};

int cmd_torsion(const RunConfig& cfg, const TorsionOptions& o, std::ostream& out) {
  const auto fields = enumerate_cyclic(o.n, o.X);
  const double top = std::pow(o.X, o.delta);
  if (top > 1e9) throw DomainError("torsion: X^delta above 1e9");
  const PrimeList primes(std::max<u64>(2, static_cast<u64>(top)));
  std::vector<TorsionReport> reports(fields.size());
  parallel_for(fields.size(), cfg.threads,
               [&](std::size_t i) { reports[i] = torsion_report(fields[i], o.ell, o.delta, o.eps, primes); });
  json results = {{"degree", o.n}, {"X", o.X}, {"ell", o.ell}, {"delta", o.delta}, {"eps", o.eps},
                  {"fields", fields.size()}};
  if (!o.class_table.empty()) {
    const auto table = read_class_table_file(o.class_table);
    const auto cmp = compare_with_table(reports, table);
    results["table"] = {{"path", o.class_table},
                        {"joined", cmp.joined},
                        {"unmatched", cmp.unmatched},
                        {"max_exponent_ratio", cmp.max_exponent_ratio ? json(*cmp.max_exponent_ratio) : json(nullptr)},
                        {"max_label", cmp.max_label},
                        {"exceeds_bound", cmp.exceeds_bound}};
  }
  std::size_t beats = 0, supplied = 0;
  CsvTable t({"field_label", "ell", "delta", "M", "bound", "trivial_bound", "table_value", "exponent_ratio"});
  for (const auto& r : reports) {
    if (r.M >= 2) {
      ++supplied;
      beats += r.ev.bound < r.ev.trivial_bound;
    }
    t.add_row({r.field_label, std::to_string(r.ell), format_double(r.delta), std::to_string(r.M),
               format_double(r.ev.bound), format_double(r.ev.trivial_bound),
               r.table_value ? std::to_string(*r.table_value) : "", r.exponent_ratio ? format_double(*r.exponent_ratio) : ""});
  }
  results["fields_with_M_ge_2"] = supplied;
  results["bound_below_trivial"] = beats;
  write_file_atomic(join_path(cfg.out, "torsion.csv"), t.str());
  write_report(join_path(cfg.out, "torsion.json"), make_report("torsion", cfg.to_json(), results));
  out << "torsion: " << fields.size() << " fields, " << supplied << " with M >= 2\n";
  return beats == supplied ? kExitOk : kExitFailure;
}

}  // namespace

int run_subcommand(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"psieve: pseudo-character sieve experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir, mode;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--seed", seed, "seed for randomized trials");
  app.add_option("--mode", mode, "paper or desk");

  std::function<int(const RunConfig&)> action;

  u64 vi_q = 7, vi_r = 200, vi_n = 10000;
  auto* vi = app.add_subcommand("verify-identities", "exact pseudo-character identities");
  vi->add_option("--modulus", vi_q)->required();
  vi->add_option("--r-max", vi_r);
  vi->add_option("--n-max", vi_n);
  vi->callback([&] { action = [&](const RunConfig& c) { return cmd_verify_identities(c, vi_q, vi_r, vi_n, out); }; });

  u64 z_q = 1;
  double z_alpha = 0.5, z_T = 30;
  auto* zc = app.add_subcommand("zeros", "count and locate zeros of L(s, chi) for primitive chi mod q");
  zc->add_option("--modulus", z_q)->required();
  zc->add_option("--alpha", z_alpha);
  zc->add_option("--T", z_T);
  zc->callback([&] { action = [&](const RunConfig& c) { return cmd_zeros(c, z_q, z_alpha, z_T, out); }; });

  SieveOptions so;
  std::optional<u64> sieve_N;
  auto* sc = app.add_subcommand("sieve", "dyadic large sieve ratios and the duality check");
  sc->add_option("--modulus", so.q);
  sc->add_option("--T", so.T);
  sc->add_option("--R", so.R);
  sc->add_option("--N-prime", so.N_prime);
  sc->add_option("--tau", so.tau);
  sc->add_option("--trials", so.trials)->check(CLI::PositiveNumber);
  sc->add_option("--N", sieve_N, "also run the zero-weighted form with coefficients on [1, N]");
  sc->add_option("--alpha", so.alpha);
  sc->add_flag("--breakdown", so.breakdown);
  sc->callback([&] {
    so.N = sieve_N;
    action = [&](const RunConfig& c) { return cmd_sieve(c, so, out); };
  });

  DetectorOptions dop;
  auto* dc = app.add_subcommand("detector", "Mellin identity for the zero detector");
  dc->add_option("--modulus", dop.q);
  dc->add_option("--char-index", dop.char_index);
  dc->add_option("--r", dop.r);
  dc->add_option("--rho-re", dop.rho_re);
  dc->add_option("--rho-im", dop.rho_im);
  dc->add_option("--w", dop.w);
  dc->add_option("--y", dop.y);
  dc->add_option("--x", dop.x);
  dc->add_option("--qT", dop.qT);
  dc->add_option("--height", dop.height);
  dc->add_option("--tol", dop.tol);
  dc->callback([&] { action = [&](const RunConfig& c) { return cmd_detector(c, dop, out); }; });

  ConstantsInput ci;
  std::optional<double> c_q, c_T, c_R, c_alpha, c_tau;
  auto* cc = app.add_subcommand("constants", "closed-form constants and parameters");
  cc->add_option("--n", ci.n);
  cc->add_option("--nk", ci.n_k);
  cc->add_option("--A", ci.A);
  cc->add_option("--d", ci.d);
  cc->add_option("--q", c_q);
  cc->add_option("--T", c_T);
  cc->add_option("--R", c_R);
  cc->add_option("--alpha", c_alpha);
  cc->add_option("--tau", c_tau);
  cc->callback([&] {
    ci.q = c_q;
    ci.T = c_T;
    ci.R = c_R;
    ci.alpha = c_alpha;
    ci.tau = c_tau;
    action = [&](const RunConfig& c) { return cmd_constants(c, ci, out); };
  });

  unsigned f_n = 3;
  double f_X = 1e4;
  std::vector<double> f_grid;
  auto* fc = app.add_subcommand("fields-enumerate", "cyclic fields of prime degree by discriminant");
  fc->add_option("--degree", f_n);
  fc->add_option("--X", f_X);
  fc->add_option("--slope-grid", f_grid, "X values for the count exponent fit");
  fc->callback([&] { action = [&](const RunConfig& c) { return cmd_fields(c, f_n, f_X, f_grid, out); }; });

  unsigned ch_n = 3;
  u64 ch_f = 2000;
  double ch_x = 1e6, ch_eps = 0.5, ch_tol = 0.05;
  auto* chc = app.add_subcommand("chebotarev", "prime counts by Frobenius class");
  chc->add_option("--degree", ch_n);
  chc->add_option("--max-conductor", ch_f);
  chc->add_option("--x", ch_x);
  chc->add_option("--eps", ch_eps);
  chc->add_option("--tol", ch_tol);
  chc->callback([&] {
    action = [&](const RunConfig& c) { return cmd_chebotarev(c, ch_n, ch_f, ch_x, ch_eps, ch_tol, out); };
  });

  TorsionOptions to;
  auto* tc = app.add_subcommand("torsion", "split primes and the l-torsion bound");
  tc->add_option("--degree", to.n);
  tc->add_option("--X", to.X);
  tc->add_option("--ell", to.ell);
  tc->add_option("--delta", to.delta);
  tc->add_option("--eps", to.eps);
  tc->add_option("--class-table", to.class_table);
  tc->callback([&] { action = [&](const RunConfig& c) { return cmd_torsion(c, to, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = parse_config(config_path);
    if (!out_dir.empty()) cfg.set("out", out_dir);
    if (threads) cfg.set("threads", std::to_string(*threads));
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (!mode.empty()) cfg.set("mode", mode);
  } catch (const Error& e) {
    err << "config: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action(cfg);
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace psv
