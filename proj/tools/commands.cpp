#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "conc/bounds.hpp"
#include "conc/models.hpp"
#include "conc/multipartite.hpp"
#include "conc/oracle.hpp"
#include "conc/parallel.hpp"
#include "conc/random.hpp"
#include "conc/state_io.hpp"
#include "conc/witness.hpp"

namespace conc::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs `fn` against the file at `path`, or against `fallback` when path is empty.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  fn(f);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

VWeights to_weights(const std::optional<std::array<double, 2>>& w, int which_default) {
  if (!w) return VWeights::only(which_default);
  VWeights v{(*w)[0], (*w)[1]};
  v.validate();
  return v;
}

ChiIndex parse_alpha(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--alpha expects x,y,p,q integers, got '" + s + "'");
    }
  }
  if (v.size() != 4) throw UsageError("--alpha expects four integers x,y,p,q");
  return {v[0], v[1], v[2], v[3]};
}

DensityOperator load_density(const std::string& path) {
  return as_density(read_state(std::filesystem::path(path)));
}

// CSV layout shared by every method of `bounds`.
void write_report_header(std::ostream& os) {
  os << "kind,term,bipartition_mask,x,y,p,q,raw_value,value\n";
}

void write_report(std::ostream& os, const BoundReport& r, bool with_terms = true) {
  os << to_string(r.kind) << ",total,,,,,," << num(r.raw_value) << ',' << num(r.value) << '\n';
  if (!with_terms) return;
  for (const auto& t : r.per_alpha) {
    os << to_string(r.kind) << ",alpha," << t.bipartition_mask << ',' << t.index.x << ','
       << t.index.y << ',' << t.index.p << ',' << t.index.q << ',' << num(t.raw) << ",\n";
  }
}

CheckResult make_check(std::string name) {
  CheckResult c;
  c.name = std::move(name);
  c.worst_margin = std::numeric_limits<double>::infinity();
  return c;
}

void record(CheckResult& c, double margin, double tol, const std::string& ctx) {
  ++c.samples;
  c.worst_margin = std::min(c.worst_margin, margin);
  if (margin < -tol) {
    if (c.violations == 0) c.first_violation = ctx + " margin=" + num(margin);
    ++c.violations;
  }
}

}  // namespace

void cmd_isotropic(const IsotropicOptions& o, std::ostream& out) {
  if (o.d < 2 || o.d > 4) {
    throw CapacityError("isotropic: d must lie in [2, 4], got " + std::to_string(o.d));
  }
  if (o.steps < 1) throw UsageError("--steps must be >= 1");
  if (!(o.f_min >= 0.0 && o.f_max <= 1.0 && o.f_min <= o.f_max)) {
    throw UsageError("--f-min/--f-max must satisfy 0 <= f-min <= f-max <= 1");
  }
  if (o.emit_plot && o.out.empty()) throw UsageError("--emit-plot requires --out");
  with_output(o.out, out, [&](std::ostream& os) {
    os << "F,C_exact,bound_Vi,bound_Valpha_sum\n";
    for (int k = 0; k <= o.steps; ++k) {
      const double f = k == o.steps ? o.f_max : o.f_min + (o.f_max - o.f_min) * k / o.steps;
      os << num(f) << ',' << num(isotropic_exact_concurrence(o.d, f)) << ','
         << num(std::sqrt(std::max(0.0, isotropic_Vi_closed_form(o.d, f)))) << ','
         << num(std::sqrt(std::max(0.0, isotropic_Valpha_sum_closed_form(o.d, f)))) << '\n';
    }
  });
  if (o.emit_plot) {
    with_output(o.out + ".gp", out, [&](std::ostream& os) {
      os << "set datafile separator ','\n"
         << "set xlabel 'F'\nset ylabel 'concurrence'\nset key top left\n"
         << "plot '" << o.out << "' every ::1 using 1:2 with lines title 'exact', \\\n"
         << "     '' every ::1 using 1:3 with lines dashtype 3 title 'V_(i) bound', \\\n"
         << "     '' every ::1 using 1:4 with lines dashtype 2 title 'V_alpha sum bound'\n";
    });
  }
}

void cmd_qutrit_decay(const QutritDecayOptions& o, std::ostream& out) {
  if (o.which != 1 && o.which != 2) throw UsageError("--which must be 1 or 2");
  if (o.stride < 1) throw UsageError("--stride must be >= 1");
  if (!(o.dt > 0.0) || !(o.t_max >= 0.0)) throw UsageError("--dt must be > 0, --t-max >= 0");
  const VWeights w{o.weights[0], o.weights[1]};
  w.validate();
  const LindbladModel model(o.gamma);
  const DensityOperator rho0(qutrit_initial_state(o.lambdas));
  const DensityOperator sigma(phi_me());
  const WitnessOperator w_sigma = build_witness_sigma(phi_me(), o.which, "phi_me");
  const auto family = usable_witnesses(sigma, w, "phi_me");
  const auto traj = evolve(model, rho0, o.t_max, o.dt, o.stride);

  std::vector<std::string> rows(traj.size());
  parallel_for(static_cast<int>(traj.size()), [&](int k) {
    const auto& snap = traj[k];
    const BoundReport a = witness_bound(snap.rho, w_sigma);
    const BoundReport b = witness_sq_sum_bound(snap.rho, family);
    std::string row = num(model.gamma_rate * snap.t) + ',' + num(a.value) + ',' + num(b.value);
    for (const auto& t : b.per_alpha) row += ',' + num(t.raw);
    rows[k] = row + '\n';
  });
  with_output(o.out, out, [&](std::ostream& os) {
    os << "t,bound_Wsigma,bound_Wsq";
    for (const auto& f : family) os << ",tr_" << f.name();
    os << '\n';
    for (const auto& r : rows) os << r;
  });
}

void cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  static const std::vector<std::string> methods{"alb",     "sumsq", "two-copy", "two-copy-alpha",
                                                "witness", "multi"};
  if (std::find(methods.begin(), methods.end(), o.method) == methods.end()) {
    throw UsageError("unknown --method '" + o.method + "'");
  }
  if (o.which != 1 && o.which != 2) throw UsageError("--which must be 1 or 2");
  if (o.method == "witness" && o.sigma.empty()) throw UsageError("method witness needs --sigma");
  const DensityOperator rho = load_density(o.state);
  const bool bipartite = rho.space().is_bipartite();
  if (o.method != "multi" && !bipartite) {
    throw UsageError("method " + o.method + " needs a bipartite state; use --method multi");
  }
  const VWeights weights = o.weights ? to_weights(o.weights, 2) : VWeights{};

  std::vector<BoundReport> reports;
  if (o.method == "alb") {
    std::vector<ChiIndex> alphas;
    if (o.alpha.empty()) {
      alphas = enumerate_chi_indices(rho.space());
    } else {
      alphas.push_back(parse_alpha(o.alpha));
    }
    const Decomposition dec = eigen_decomposition(rho);
    BoundReport all;
    all.kind = BoundKind::alb;
    all.raw_value = -std::numeric_limits<double>::infinity();
    for (const auto& a : alphas) {
      const BoundReport r = algebraic_lower_bound(dec, a);
      all.per_alpha.push_back(r.per_alpha.front());
      all.raw_value = std::max(all.raw_value, r.raw_value);
    }
    all.value = std::max(0.0, all.raw_value);
    reports.push_back(std::move(all));
  } else if (o.method == "sumsq") {
    reports.push_back(sum_sq_algebraic_bound(rho));
  } else if (o.method == "two-copy") {
    reports.push_back(two_copy_bound_Vi(rho, o.which));
  } else if (o.method == "two-copy-alpha") {
    reports.push_back(two_copy_bound_Valpha_sum(rho, weights));
  } else if (o.method == "witness") {
    const DensityOperator sigma = load_density(o.sigma);
    if (!(sigma.space() == rho.space())) throw ArgumentError("--sigma space differs from --state");
    if (o.aggregate) {
      reports.push_back(witness_bound(rho, build_witness_sigma(sigma, o.which, o.c_sigma)));
    } else if (!o.alpha.empty()) {
      reports.push_back(
          witness_bound(rho, build_witness_sigma_alpha(sigma, parse_alpha(o.alpha), weights)));
    } else {
      reports.push_back(witness_sq_sum_bound(rho, usable_witnesses(sigma, weights)));
    }
  } else {
    reports.push_back(multipartite_sum_sq_bound(rho));
    reports.push_back(multipartite_two_copy_bound(rho, weights));
    if (!o.sigma.empty()) {
      const DensityOperator sigma = load_density(o.sigma);
      reports.push_back(multipartite_witness_bound(rho, sigma, weights));
    }
  }
  with_output(o.out, out, [&](std::ostream& os) {
    write_report_header(os);
    for (const auto& r : reports) write_report(os, r);
  });
}

void cmd_witness_export(const WitnessExportOptions& o, std::ostream& out) {
  if (o.sigma.empty()) throw UsageError("witness-export needs --sigma");
  if (o.which != 1 && o.which != 2) throw UsageError("--which must be 1 or 2");
  const DensityOperator sigma = load_density(o.sigma);
  require_bipartite(sigma.space(), "witness-export");
  const VWeights weights = to_weights(o.weights, o.which);
  std::vector<WitnessOperator> family;
  if (o.alpha == "all") {
    family = usable_witnesses(sigma, weights, o.sigma);
  } else {
    family.push_back(build_witness_sigma_alpha(sigma, parse_alpha(o.alpha), weights, o.sigma));
  }
  for (const auto& w : family) {
    const std::string path = o.out_prefix + "_" + w.name() + ".qop";
    write_operator(std::filesystem::path(path), w.matrix(), w.space().factor_dims());
    out << "wrote " << path << '\n';
  }
  const MeasurementSchedule schedule = local_decomposition(std::span<const WitnessOperator>(family));
  const std::string csv = o.out_prefix + "_schedule.csv";
  with_output(csv, out, [&](std::ostream& os) { write_schedule_csv(os, schedule); });
  out << "wrote " << csv << '\n';
  out << "witnesses=" << family.size() << " observables=" << schedule.observable_count
      << " settings=" << schedule.setting_count << '\n';
}

bool cmd_selftest(const SelftestOptions& o, std::ostream& out, std::ostream& err) {
  OracleReport report;
  const long n21 = o.full ? 10000 : 2000;
  const int n_corpus = o.full ? 200 : 20;
  const int n_wootters = o.full ? 500 : 50;
  const int f_points = o.full ? 21 : 11;

  OracleReport r21 = verify_inequality_21(
      n21, {HilbertSpace{2, 2}, HilbertSpace{2, 3}, HilbertSpace{3, 3}}, o.seed);
  report.checks.insert(report.checks.end(), r21.checks.begin(), r21.checks.end());

  {
    Rng rng = derive_rng(o.seed, 1);
    std::vector<DensityOperator> corpus;
    corpus.emplace_back(phi_me());
    for (int k = 0; k < n_corpus; ++k) {
      const HilbertSpace space = k % 2 == 0 ? HilbertSpace{2, 2} : HilbertSpace{3, 3};
      const int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(space.total_dim()));
      corpus.push_back(random_density(rng, space, rank));
    }
    SearchConfig cfg;
    cfg.seed = o.seed;
    if (!o.full) cfg.n_iterations = 3000;
    OracleReport r14 = verify_theorem_14(corpus, cfg);
    report.checks.insert(report.checks.end(), r14.checks.begin(), r14.checks.end());
  }

  {
    CheckResult forms = make_check("closed_forms");
    CheckResult exact = make_check("isotropic_exact");
    for (int d = 2; d <= 4; ++d) {
      const HilbertSpace space{d, d};
      const DensityOperator phi(phi_plus(d));
      const WitnessOperator ws = build_witness_sigma(phi_plus(d), 2);
      const auto family = usable_witnesses(phi);
      for (int k = 0; k < f_points; ++k) {
        const double f = static_cast<double>(k) / (f_points - 1);
        const DensityOperator rho = isotropic_state(d, f);
        const std::string ctx = "d=" + std::to_string(d) + " F=" + num(f);
        record(forms, -std::abs(two_copy_bound_Vi(rho, 2).raw_value - isotropic_Vi_closed_form(d, f)),
               1e-10, ctx + " Vi");
        // The closed form sums the α with x = p, y = q; the others are never positive.
        const BoundReport va = two_copy_bound_Valpha_sum(rho);
        const double closed = isotropic_Valpha_sum_closed_form(d, f);
        double diag = 0.0;
        for (const auto& t : va.per_alpha) {
          if (t.index.x == t.index.p && t.index.y == t.index.q) diag += t.raw;
        }
        record(forms, -std::abs(diag - closed), 1e-10, ctx + " Valpha");
        record(forms, -std::abs(va.value - std::sqrt(std::max(0.0, closed))), 1e-10,
               ctx + " Valpha bound");
        const double c = isotropic_exact_concurrence(d, f);
        record(exact, -std::abs(witness_bound(rho, ws).value - c), 1e-10, ctx + " Wsigma");
        record(exact, -std::abs(witness_sq_sum_bound(rho, family).value - c), 1e-10, ctx + " Wsq");
      }
    }
    report.checks.push_back(forms);
    report.checks.push_back(exact);
  }

  {
    CheckResult woot = make_check("wootters_alb");
    Rng rng = derive_rng(o.seed, 2);
    for (int k = 0; k < n_wootters; ++k) {
      const DensityOperator rho = random_density(rng, HilbertSpace{2, 2}, 1 + k % 4);
      const double a = algebraic_lower_bound(rho, ChiIndex{0, 1, 0, 1}).value;
      record(woot, -std::abs(a - wootters_concurrence(rho)), 1e-10, "case=" + std::to_string(k));
    }
    report.checks.push_back(woot);
  }

  {
    CheckResult wc = make_check("witness_family");
    const DensityOperator sigma(phi_me());
    const auto family = usable_witnesses(sigma);
    const MeasurementSchedule s = local_decomposition(std::span<const WitnessOperator>(family));
    record(wc, family.size() == 3 ? 0.0 : -1.0, 0.0, "usable=" + std::to_string(family.size()));
    record(wc, s.observable_count == 12 ? 0.0 : -1.0, 0.0,
           "observables=" + std::to_string(s.observable_count));
    record(wc, s.setting_count == 7 ? 0.0 : -1.0, 0.0,
           "settings=" + std::to_string(s.setting_count));
    for (int which = 1; which <= 2; ++which) {
      const auto fam = usable_witnesses(sigma, VWeights::only(which));
      Matrix sum = Matrix::Zero(9, 9);
      for (const auto& w : fam) sum += w.matrix();
      const Matrix ws = build_witness_sigma(phi_me(), which).matrix();
      record(wc, -(ws - sum / std::sqrt(3.0)).cwiseAbs().maxCoeff(), 1e-12,
             "aggregate identity V" + std::to_string(which));
    }
    report.checks.push_back(wc);
  }

  report.write_text(out);
  if (const CheckResult* f = report.first_failure()) {
    err << "selftest: first failing check: " << f->name << '\n';
    return false;
  }
  return true;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computable and measurable lower bounds on concurrence"};
  app.require_subcommand(1);

  IsotropicOptions iso;
  auto* c_iso = app.add_subcommand("isotropic", "Isotropic-state bound curves as CSV");
  c_iso->add_option("--d", iso.d, "Local dimension (2-4)")->required();
  c_iso->add_option("--f-min", iso.f_min, "Lowest fidelity")->capture_default_str();
  c_iso->add_option("--f-max", iso.f_max, "Highest fidelity")->capture_default_str();
  c_iso->add_option("--steps", iso.steps, "Grid intervals")->capture_default_str();
  c_iso->add_option("--out", iso.out, "Output CSV (default stdout)");
  c_iso->add_flag("--emit-plot", iso.emit_plot, "Also write <out>.gp for gnuplot");

  QutritDecayOptions qd;
  auto* c_qd = app.add_subcommand("qutrit-decay", "Witness bounds along local qutrit decay");
  c_qd->add_option("--lambdas", qd.lambdas, "l0,l1,l2 on the simplex")->delimiter(',');
  c_qd->add_option("--gamma", qd.gamma, "Decay rate")->capture_default_str();
  c_qd->add_option("--t-max", qd.t_max, "Final time")->capture_default_str();
  c_qd->add_option("--dt", qd.dt, "RK4 step")->capture_default_str();
  c_qd->add_option("--stride", qd.stride, "Record every n-th step")->capture_default_str();
  c_qd->add_option("--which", qd.which, "V_(i) behind W_sigma")->capture_default_str();
  c_qd->add_option("--weights", qd.weights, "c1,c2 for W_sigma_alpha")->delimiter(',');
  c_qd->add_option("--out", qd.out, "Output CSV (default stdout)");

  BoundsOptions bo;
  std::array<double, 2> bo_weights{0.5, 0.5};
  double bo_c_sigma = 0.0;
  auto* c_bo = app.add_subcommand("bounds", "Evaluate a lower bound on a state file");
  c_bo->add_option("--state", bo.state, "State file (qdm/qsv)")->required();
  c_bo->add_option("--method", bo.method, "alb|sumsq|two-copy|two-copy-alpha|witness|multi")
      ->required();
  c_bo->add_option("--sigma", bo.sigma, "Reference state for witnesses");
  auto* bo_w = c_bo->add_option("--weights", bo_weights, "c1,c2")->delimiter(',');
  c_bo->add_option("--alpha", bo.alpha, "x,y,p,q");
  c_bo->add_option("--which", bo.which, "V_(i) for two-copy and aggregate witness")
      ->capture_default_str();
  c_bo->add_flag("--aggregate", bo.aggregate, "Use W_sigma instead of the W_sigma_alpha family");
  auto* bo_c = c_bo->add_option("--c-sigma", bo_c_sigma, "Upper bound on C(sigma) for mixed sigma");
  c_bo->add_option("--out", bo.out, "Output CSV (default stdout)");

  WitnessExportOptions we;
  std::array<double, 2> we_weights{0.5, 0.5};
  auto* c_we = app.add_subcommand("witness-export", "Write witness operators and schedule");
  c_we->add_option("--sigma", we.sigma, "Reference state file")->required();
  c_we->add_option("--alpha", we.alpha, "x,y,p,q or all")->capture_default_str();
  c_we->add_option("--which", we.which, "V_(i) behind W_sigma_alpha")->capture_default_str();
  auto* we_w = c_we->add_option("--weights", we_weights, "c1,c2 (overrides --which)")
                   ->delimiter(',');
  c_we->add_option("--out-prefix", we.out_prefix, "Output path prefix")->capture_default_str();

  SelftestOptions st;
  bool quick = false;
  auto* c_st = app.add_subcommand("selftest", "Run the oracle suites");
  c_st->add_option("--seed", st.seed, "RNG seed")->capture_default_str();
  auto* f_quick = c_st->add_flag("--quick", quick, "Reduced sample counts (default)");
  c_st->add_flag("--full", st.full, "Full sample counts")->excludes(f_quick);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*c_iso) {
      cmd_isotropic(iso, out);
    } else if (*c_qd) {
      cmd_qutrit_decay(qd, out);
    } else if (*c_bo) {
      if (bo_w->count()) bo.weights = bo_weights;
      if (bo_c->count()) bo.c_sigma = bo_c_sigma;
      cmd_bounds(bo, out);
    } else if (*c_we) {
      if (we_w->count()) we.weights = we_weights;
      cmd_witness_export(we, out);
    } else if (*c_st) {
      return cmd_selftest(st, out, err) ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace conc::cli
