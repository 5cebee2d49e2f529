#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "gleason/ext_measures.hpp"
#include "gleason/forms.hpp"
#include "gleason/gea.hpp"
#include "gleason/measures.hpp"
#include "gleason/parallel.hpp"
#include "gleason/report.hpp"
#include "gleason/seq.hpp"
#include "gleason/sobolev.hpp"

using namespace gleason;

namespace {

struct GlobalOpts {
  double tol = 0.0;  // 0 keeps the defaults
  std::uint64_t seed = 12345;
  std::string out;
  std::string format = "json";
};

// inline JSON or a path to a JSON file
nlohmann::json load_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open input file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON input: " + std::string(e.what()));
  }
}

int emit_and_exit(const Report& report, const GlobalOpts& opts) {
  const std::string payload =
      opts.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (opts.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opts.out);
    if (!out) {
      std::cerr << "cannot write output file '" << opts.out << "'\n";
      return 2;
    }
    out << payload;
  }
  return report.all_pass() ? 0 : 1;
}

std::pair<Subspace, Subspace> random_orthogonal_pair(std::mt19937_64& rng, int d) {
  const int k = 1 + static_cast<int>(rng() % (d - 1));
  const Subspace m = random_subspace(rng, d, k);
  const Subspace comp = ortho_complement(m);
  const int j = 1 + static_cast<int>(rng() % comp.dim());
  std::vector<Vector> cols;
  for (int i = 0; i < j; ++i) cols.push_back(comp.basis().col(i));
  return {m, orthonormalize(cols, d)};
}

Report run_check_axioms(const std::string& model_arg, const GlobalOpts& opts) {
  const auto model = gea::FiniteGEAModel::from_json(load_json_arg(model_arg));
  const auto axioms = gea::check_axioms(model);
  Report report("check-axioms", opts.seed);
  for (const gea::Axiom a :
       {gea::Axiom::Commutativity, gea::Axiom::AssociativityEquality,
        gea::Axiom::AssociativityDefinedness, gea::Axiom::ZeroIdentity,
        gea::Axiom::Cancellation, gea::Axiom::Positivity}) {
    int count = 0;
    for (const auto& v : axioms.violations)
      if (v.axiom == a) ++count;
    report.add(CheckRecord{"axiom " + gea::axiom_label(a) + " holds",
                           "gea.axiom." + gea::axiom_label(a), static_cast<double>(count), 0.0,
                           0.0, count == 0});
  }
  report.attach("axiom_report", Json(axioms.to_json(model)));
  report.attach("elements", Json(model.size()));
  return report;
}

Report run_gleason(int instances, int dim_lo, int dim_hi, const GlobalOpts& opts) {
  std::mt19937_64 rng(opts.seed);
  const double tol = tolerances().check;
  Report report("gleason", opts.seed);

  double additivity_residual = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int d = dim_lo + static_cast<int>(rng() % (dim_hi - dim_lo + 1));
    const GleasonMeasure m(random_hermitian(rng, d));
    const auto [a, b] = random_orthogonal_pair(rng, d);
    additivity_residual = std::max(
        additivity_residual, std::abs(eval(m, join(a, b)) - eval(m, a) - eval(m, b)));
  }
  report.add(CheckRecord{"measures add over orthogonal joins", "measure.additivity",
                         additivity_residual, 0.0, tol, additivity_residual <= tol});

  double jordan_residual = 0.0;
  for (int i = 0; i < std::max(1, instances / 5); ++i) {
    const int d = dim_lo + static_cast<int>(rng() % (dim_hi - dim_lo + 1));
    const HermitianOp t = random_hermitian(rng, d);
    const HermitianOp a = random_hermitian(rng, d);
    const GleasonMeasure g = jordan_measure(t, a);
    const Matrix p = projector(random_subspace(rng, d, 1 + static_cast<int>(rng() % d))).matrix();
    const double lhs = (g.generator().matrix() * p).trace().real();
    const double rhs = (t.matrix() * (a.matrix() * p + p * a.matrix()) / 2.0).trace().real();
    jordan_residual = std::max(jordan_residual, std::abs(lhs - rhs));
  }
  report.add(CheckRecord{"symmetrized products evaluate both ways", "measure.jordan",
                         jordan_residual, 0.0, tol, jordan_residual <= tol});

  int regularity_failures = 0;
  double regularity_residual = 0.0;
  for (int i = 0; i < std::max(1, instances / 5); ++i) {
    const int d = dim_lo + static_cast<int>(rng() % (dim_hi - dim_lo + 1));
    Matrix g = random_hermitian(rng, d).matrix();
    const GleasonMeasure m(HermitianOp(Matrix(g * g.adjoint())));
    const Subspace sub = random_subspace(rng, d, 1 + static_cast<int>(rng() % d));
    const RegularityReport r = check_regularity(m, sub);
    if (!r.pass) ++regularity_failures;
    regularity_residual = std::max(regularity_residual, std::abs(r.chain.back() - r.target));
  }
  report.add(CheckRecord{"finite-dimensional chains attain the measure", "measure.regularity",
                         regularity_residual, 0.0, tol, regularity_failures == 0});

  int state_failures = 0;
  for (int i = 0; i < std::max(1, instances / 5); ++i) {
    const int d = dim_lo + static_cast<int>(rng() % (dim_hi - dim_lo + 1));
    Matrix g = random_hermitian(rng, d).matrix();
    Matrix density = g * g.adjoint();
    density /= density.trace().real();
    if (!is_state(GleasonMeasure(HermitianOp(std::move(density))))) ++state_failures;
  }
  report.add(CheckRecord{"normalized positive generators are states", "measure.is_state",
                         static_cast<double>(state_failures), 0.0, 0.0, state_failures == 0});

  int monotone_failures = 0;
  for (int i = 0; i < std::max(1, instances / 5); ++i) {
    const int d = std::max(3, dim_lo);
    Matrix g = random_hermitian(rng, d).matrix();
    const GleasonMeasure m(HermitianOp(Matrix(g * g.adjoint())));
    const Subspace small = random_subspace(rng, d, 1);
    const Subspace large = join(small, orthonormalize({ortho_complement(small).basis().col(0)}, d));
    if (eval(m, small) > eval(m, large) + tolerances().comparison) ++monotone_failures;
  }
  report.add(CheckRecord{"positive measures are monotone", "measure.monotone",
                         static_cast<double>(monotone_failures), 0.0, 0.0,
                         monotone_failures == 0});
  return report;
}

Report run_frame(int instances, const GlobalOpts& opts) {
  std::mt19937_64 rng(opts.seed);
  const double tol = tolerances().check;
  Report report("frame", opts.seed);

  double invariance = 0.0, against_trace = 0.0, additivity = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int d = 3 + static_cast<int>(rng() % 4);
    const HermitianOp t = random_hermitian(rng, d);
    const FrameFunctionView f{MatrixForm(t)};
    const Subspace m = random_subspace(rng, d, 1 + static_cast<int>(rng() % d));
    const double w1 = frame_weight(f, m, random_onb_of(rng, m));
    const double w2 = frame_weight(f, m, random_onb_of(rng, m));
    invariance = std::max(invariance, std::abs(w1 - w2));
    against_trace = std::max(against_trace, std::abs(w1 - compressed_trace(t, m)));

    const auto [a, b] = random_orthogonal_pair(rng, d);
    additivity = std::max(
        additivity, std::abs(frame_weight(f, join(a, b)) - frame_weight(f, a) - frame_weight(f, b)));
  }
  report.add(CheckRecord{"weights do not depend on the orthonormal basis", "frame.onb_invariance",
                         invariance, 0.0, tol, invariance <= tol});
  report.add(CheckRecord{"weights equal compressed traces", "frame.weight_equals_trace",
                         against_trace, 0.0, tol, against_trace <= tol});
  report.add(CheckRecord{"weights add over orthogonal joins", "frame.weight_additivity",
                         additivity, 0.0, tol, additivity <= tol});

  double recovery = 0.0;
  for (int i = 0; i < std::max(1, instances / 2); ++i) {
    const int d = 3 + static_cast<int>(rng() % 4);
    const HermitianOp t = random_hermitian(rng, d);
    const MatrixForm form(t);
    const auto f = [&form](const Vector& x) { return quad(form, x); };
    const FormRecovery rec = polarize_recover(f, d);
    recovery = std::max(recovery, max_abs(rec.form.generator().matrix() - t.matrix()));
  }
  report.add(CheckRecord{"generators are recovered from sphere values", "frame.polarization",
                         recovery, 0.0, 1e-9, recovery <= 1e-9});

  // dimension 2 carries the outside-uniqueness flag
  const MatrixForm small(HermitianOp(Matrix::Identity(2, 2)));
  const auto f2 = [&small](const Vector& x) { return quad(small, x); };
  const bool flagged = !polarize_recover(f2, 2).uniqueness_hypothesis;
  report.add(CheckRecord{"dimension-2 recovery is flagged as outside the uniqueness hypothesis",
                         "frame.dimension_two_flag", flagged ? 1.0 : 0.0, 1.0, 0.0, flagged});
  return report;
}

Report run_classify(const std::string& seq_arg, const std::string& mode, const GlobalOpts& opts) {
  const auto s = seq::SeqDescriptor::from_json(load_json_arg(seq_arg));
  Report report("classify", opts.seed);
  report.attach("sequence", Json(s.to_json()));
  report.attach("note", Json(seq::kFrameTypeConvention));

  std::optional<seq::SummabilityClass> exact, heuristic;
  if (mode == "exact" || mode == "both") {
    try {
      exact = seq::classify_summability(s, seq::ClassifyMode::Exact).cls;
      report.attach("summability_exact", Json(seq::summability_name(*exact)));
    } catch (const std::invalid_argument& e) {
      if (mode == "exact") throw;
      report.attach("summability_exact", Json(std::string("unavailable: ") + e.what()));
    }
  }
  if (mode == "heuristic" || mode == "both") {
    heuristic = seq::classify_summability(s, seq::ClassifyMode::Heuristic).cls;
    report.attach("summability_heuristic", Json(seq::summability_name(*heuristic)));
  }
  if (exact.has_value() && heuristic.has_value())
    report.add(CheckRecord{"declared metadata agrees with the partial-sum oracle",
                           "classify.agreement", static_cast<double>(*exact),
                           static_cast<double>(*heuristic), 0.0, *exact == *heuristic});

  if (s.facts().bounded) {
    const seq::FrameTypeClass ft = seq::classify_frame_type(s);
    report.attach("frame_type", Json(seq::frame_type_name(ft)));
    if (mode == "both") {
      const seq::FrameTypeClass fth = seq::classify_frame_type_heuristic(s);
      report.add(CheckRecord{"frame-type classes agree between routes", "classify.frame_type",
                             static_cast<double>(ft), static_cast<double>(fth), 0.0, ft == fth});
    }
  } else {
    report.attach("frame_type", Json("unavailable: the sequence is unbounded"));
  }
  return report;
}

Report run_rearrange(const std::string& seq_arg, const std::string& target_arg,
                     std::uint64_t steps, const GlobalOpts& opts) {
  const auto s = seq::SeqDescriptor::from_json(load_json_arg(seq_arg));
  double target;
  if (target_arg == "inf") {
    target = std::numeric_limits<double>::infinity();
  } else if (target_arg == "-inf") {
    target = -std::numeric_limits<double>::infinity();
  } else {
    try {
      target = std::stod(target_arg);
    } catch (...) {
      throw std::invalid_argument("rearrange: target must be a number, 'inf' or '-inf'");
    }
  }
  const seq::RearrangementTrace trace = seq::rearrange_to_target(s, target, steps);
  Report report("rearrange", opts.seed);
  report.attach("summary", Json(trace.summary_json()));
  std::set<std::uint64_t> seen(trace.indices.begin(), trace.indices.end());
  report.add(CheckRecord{"each index is used at most once", "rearrange.injective",
                         static_cast<double>(seen.size()),
                         static_cast<double>(trace.indices.size()), 0.0,
                         seen.size() == trace.indices.size()});
  if (std::isfinite(target)) {
    const double gap = std::abs(trace.final_sum - target);
    report.add(CheckRecord{"the partial sums reach the target", "rearrange.final_gap", gap, 0.0,
                           1e-3, gap <= 1e-3});
    report.add(CheckRecord{"the partial sums keep re-crossing the target", "rearrange.crossings",
                           static_cast<double>(trace.crossings), 10.0, 0.0,
                           trace.crossings >= 10});
  }
  return report;
}

Report run_ext(const std::string& measure_arg, const std::string& index_arg,
               const GlobalOpts& opts) {
  const auto m = ext::ExtMeasure::from_json(load_json_arg(measure_arg));
  const auto j = seq::IndexSet::from_json(load_json_arg(index_arg));
  Report report("ext", opts.seed);
  report.attach("measure", Json(m.to_json()));
  report.attach("index_set", Json(j.to_json()));
  report.attach("value", extended_real_to_json(ext::eval_ext(m, j)));

  const ext::SigmaDecision decision = ext::decide_sigma_additive(m);
  report.attach("sigma_additivity", Json(decision.to_json()));
  report.add(CheckRecord{"sigma-additivity is decided by the rule table", "ext.decidable",
                         0.0, 0.0, 0.0,
                         decision.verdict != ext::SigmaVerdict::Undecidable});
  if (decision.verdict == ext::SigmaVerdict::NotSigmaAdditive) {
    const auto witness = ext::sigma_violation_witness(m);
    report.attach("sigma_violation", Json(witness.to_json()));
    report.add(CheckRecord{"the violation separates the singleton sum from the join",
                           "ext.violation_gap", witness.lhs, witness.rhs, 0.0,
                           witness.lhs != witness.rhs});
  }
  return report;
}

Report run_demo_nonsub(const std::string& control, const GlobalOpts& opts) {
  ext::NonSubGEAReport demo = [&]() {
    if (control == "zero") return ext::not_sub_gea_demo(ext::ExtMeasure::zero());
    if (control == "trace-class")
      return ext::not_sub_gea_demo(
          ext::ExtMeasure::trace_class_diagonal(seq::SeqDescriptor::power(2.0)));
    return ext::not_sub_gea_demo();
  }();
  Report report("demo-nonsub", opts.seed);
  report.attach("demo", Json(demo.to_json()));

  const bool expect_violation = control == "none";
  report.add(CheckRecord{"the partial sum of the pair is defined", "nonsub.sum_defined", 0.0,
                         0.0, 0.0, demo.sum_defined});
  report.add(CheckRecord{"the base measure is sigma-additive", "nonsub.base", 0.0, 0.0, 0.0,
                         demo.base_sigma});
  report.add(CheckRecord{expect_violation ? "the companion measure is not sigma-additive"
                                          : "the control companion stays sigma-additive",
                         "nonsub.other", 0.0, 0.0, 0.0,
                         demo.other_sigma != expect_violation});
  report.add(CheckRecord{"the sum is sigma-additive", "nonsub.sum", 0.0, 0.0, 0.0,
                         demo.sum_sigma});
  report.add(CheckRecord{"the induced four-element model passes the axioms", "nonsub.model",
                         0.0, 0.0, 0.0, demo.model_axioms_pass});
  report.add(CheckRecord{expect_violation
                             ? "the sigma-additive subset violates two-out-of-three closure"
                             : "the control subset is closed",
                         "nonsub.sub_gea", 0.0, 0.0, 0.0,
                         demo.sub_gea_holds != expect_violation});
  if (expect_violation) {
    const bool witness_ok = demo.witness == std::vector<std::string>{"m1", "m2", "m1+m2"};
    report.add(CheckRecord{"the violating triple is the constructed pair and its sum",
                           "nonsub.witness", 0.0, 0.0, 0.0, witness_ok});
    const bool gap_ok = demo.sigma_witness.has_value() && demo.sigma_witness->lhs == 0.0 &&
                        std::isinf(demo.sigma_witness->rhs);
    report.add(CheckRecord{"the countable partition separates zero from infinity",
                           "nonsub.sigma_witness", 0.0, 0.0, 0.0, gap_ok});
  }
  return report;
}

Report run_sobolev(const std::string& grids_arg, int n_max, const GlobalOpts& opts,
                   std::string* csv_out) {
  std::vector<sob::Grid> grids;
  std::stringstream ss(grids_arg);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    grids.push_back(sob::Grid(std::stoi(token)));
  }
  if (grids.size() < 2) throw std::invalid_argument("sobolev: needs at least two grids");

  Report report("sobolev", opts.seed);

  double identity_residual = 0.0;
  for (const sob::Grid& g : grids)
    for (int n = 1; n <= n_max; ++n) {
      const sob::SobolevForms forms = sob::build_forms(n, g);
      const Matrix composed = (1.0 + 1.0 / n) * forms.gradient.generator().matrix() +
                              forms.boundary.generator().matrix();
      identity_residual =
          std::max(identity_residual, max_abs(forms.inflated.generator().matrix() - composed));
    }
  report.add(CheckRecord{"the inflation identity holds at the matrix level",
                         "sobolev.identity", identity_residual, 0.0, 1e-12,
                         identity_residual <= 1e-12});

  for (const sob::Grid& g : grids) {
    const sob::ChainReport chain = sob::chain_report(g, n_max);
    report.add(CheckRecord{"the form chain decreases on grid " + g.h_label(),
                           "sobolev.chain", chain.min_step_eigenvalue, 0.0, 1e-10, chain.pass});
  }

  const sob::BlowupReport blowup = sob::boundary_blowup(grids);
  report.add(blowup.records);
  report.attach("blowup", blowup.to_json());
  if (csv_out) *csv_out = blowup.to_csv();
  return report;
}

Report run_nikodym(int dim, int pairs, int n_max, int samples, const GlobalOpts& opts) {
  std::mt19937_64 rng(opts.seed);
  Report report("nikodym", opts.seed);
  int failures = 0;
  double worst_first = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const HermitianOp t = random_hermitian(rng, dim);
    const HermitianOp s = random_hermitian(rng, dim);
    std::vector<Subspace> sample;
    for (int i = 0; i < samples; ++i)
      sample.push_back(random_subspace(rng, dim, 1 + static_cast<int>(rng() % dim)));
    const sob::NikodymReport r = sob::nikodym_demo(t, s, n_max, sample);
    if (!r.pass) ++failures;
    worst_first = std::max(worst_first, r.max_deviation.front());
  }
  report.add(CheckRecord{"perturbed measures converge within the rate bound",
                         "nikodym.pairs", static_cast<double>(failures), 0.0, 0.0,
                         failures == 0});
  report.attach("pairs", Json(pairs));
  report.attach("worst_initial_deviation", Json(worst_first));
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale measures on the subspace lattice: checkers, classifiers and demos"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--tol", opts.tol, "override the report-level check tolerance");
  app.add_option("--seed", opts.seed, "seed for the randomized suites");
  app.add_option("--out", opts.out, "write the report to this path");
  app.add_option("--format", opts.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* cmd_axioms = app.add_subcommand("check-axioms", "verify the axioms of a finite model");
  std::string model_arg;
  cmd_axioms->add_option("model", model_arg, "model JSON (inline or a file path)")->required();

  auto* cmd_gleason = app.add_subcommand("gleason", "randomized measure property suite");
  int instances = 100, dim_lo = 3, dim_hi = 8;
  cmd_gleason->add_option("--instances", instances, "number of random instances");
  cmd_gleason->add_option("--dim-lo", dim_lo, "smallest ambient dimension");
  cmd_gleason->add_option("--dim-hi", dim_hi, "largest ambient dimension");

  auto* cmd_frame = app.add_subcommand("frame", "frame-function weight and recovery suite");
  int frame_instances = 50;
  cmd_frame->add_option("--instances", frame_instances, "number of random instances");

  auto* cmd_classify = app.add_subcommand("classify", "classify a sequence descriptor");
  std::string seq_arg, mode = "both";
  cmd_classify->add_option("--seq", seq_arg, "sequence JSON (inline or a file path)")->required();
  cmd_classify->add_option("--mode", mode, "exact, heuristic or both")
      ->check(CLI::IsMember({"exact", "heuristic", "both"}));

  auto* cmd_rearrange = app.add_subcommand("rearrange", "greedy series rearrangement");
  std::string rearrange_seq, target = "0";
  std::uint64_t steps = 100'000;
  cmd_rearrange->add_option("--seq", rearrange_seq, "sequence JSON (inline or a file path)")
      ->required();
  cmd_rearrange->add_option("--target", target, "target value, 'inf' or '-inf'");
  cmd_rearrange->add_option("--steps", steps, "number of emitted indices");

  auto* cmd_ext = app.add_subcommand("ext", "evaluate and judge a tagged measure");
  std::string measure_arg, index_arg = R"({"kind":"all"})";
  cmd_ext->add_option("--measure", measure_arg, "tagged measure JSON (inline or a file path)")
      ->required();
  cmd_ext->add_option("--index", index_arg, "index set JSON");

  auto* cmd_nonsub = app.add_subcommand("demo-nonsub",
                                        "sigma-additive measures are not two-out-of-three closed");
  std::string control = "none";
  cmd_nonsub->add_option("--control", control, "substitute the companion measure")
      ->check(CLI::IsMember({"none", "zero", "trace-class"}));

  auto* cmd_sobolev = app.add_subcommand("sobolev", "discretized form-family demonstration");
  std::string grids = "11,21,41,81,161,321";
  int sobolev_nmax = 50;
  cmd_sobolev->add_option("--grids", grids, "comma-separated grid point counts");
  cmd_sobolev->add_option("--nmax", sobolev_nmax, "length of the decreasing chain");

  auto* cmd_nikodym = app.add_subcommand("nikodym", "pointwise limits of perturbed measures");
  int nk_dim = 4, nk_pairs = 10, nk_nmax = 100, nk_samples = 20;
  cmd_nikodym->add_option("--dim", nk_dim, "ambient dimension");
  cmd_nikodym->add_option("--pairs", nk_pairs, "number of random generator pairs");
  cmd_nikodym->add_option("--nmax", nk_nmax, "largest perturbation index");
  cmd_nikodym->add_option("--samples", nk_samples, "sampled subspaces per pair");

  // global flags remain usable after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (opts.tol > 0.0) tolerances().check = opts.tol;

  try {
    Report report("", opts.seed);
    std::string side_csv;
    if (cmd_axioms->parsed()) {
      report = run_check_axioms(model_arg, opts);
    } else if (cmd_gleason->parsed()) {
      report = run_gleason(instances, dim_lo, dim_hi, opts);
    } else if (cmd_frame->parsed()) {
      report = run_frame(frame_instances, opts);
    } else if (cmd_classify->parsed()) {
      report = run_classify(seq_arg, mode, opts);
    } else if (cmd_rearrange->parsed()) {
      report = run_rearrange(rearrange_seq, target, steps, opts);
    } else if (cmd_ext->parsed()) {
      report = run_ext(measure_arg, index_arg, opts);
    } else if (cmd_nonsub->parsed()) {
      report = run_demo_nonsub(control, opts);
    } else if (cmd_sobolev->parsed()) {
      report = run_sobolev(grids, sobolev_nmax, opts, &side_csv);
      if (!opts.out.empty()) {
        std::ofstream csv(opts.out + ".csv");
        csv << side_csv;
      }
    } else if (cmd_nikodym->parsed()) {
      report = run_nikodym(nk_dim, nk_pairs, nk_nmax, nk_samples, opts);
    }
    return emit_and_exit(report, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
