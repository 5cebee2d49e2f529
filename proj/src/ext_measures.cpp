#include "gleason/ext_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gleason::ext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DomainPoset::DomainPoset() { add(full_space()); }

int DomainPoset::index(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i)
    if (labels_[i] == name) return i;
  return -1;
}

void DomainPoset::add(const DomainLabel& label) {
  if (index(label.name) >= 0) return;
  const int n = static_cast<int>(labels_.size()) + 1;
  std::vector<char> grown(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j)
      grown[static_cast<std::size_t>(i) * n + j] = leq_[static_cast<std::size_t>(i) * (n - 1) + j];
  leq_ = std::move(grown);
  labels_.push_back(label.name);
  leq_[static_cast<std::size_t>(n - 1) * n + (n - 1)] = 1;
  // the full space sits on top
  const int top = index("H");
  leq_[static_cast<std::size_t>(n - 1) * n + top] = 1;
  close();
}

void DomainPoset::declare_leq(const DomainLabel& lower, const DomainLabel& upper) {
  add(lower);
  add(upper);
  const int n = static_cast<int>(labels_.size());
  leq_[static_cast<std::size_t>(index(lower.name)) * n + index(upper.name)] = 1;
  close();
}

void DomainPoset::close() {
  const int n = static_cast<int>(labels_.size());
  for (int i = 0; i < n; ++i) leq_[static_cast<std::size_t>(i) * n + i] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq_[static_cast<std::size_t>(i) * n + k])
        for (int j = 0; j < n; ++j)
          if (leq_[static_cast<std::size_t>(k) * n + j])
            leq_[static_cast<std::size_t>(i) * n + j] = 1;
}

bool DomainPoset::leq(const DomainLabel& a, const DomainLabel& b) const {
  const int i = index(a.name), j = index(b.name);
  if (i < 0 || j < 0) throw std::invalid_argument("domain poset: unknown label");
  return leq_[static_cast<std::size_t>(i) * labels_.size() + j] != 0;
}

std::optional<DomainLabel> DomainPoset::meet(const DomainLabel& a, const DomainLabel& b) const {
  std::vector<int> lower;
  for (int c = 0; c < static_cast<int>(labels_.size()); ++c) {
    const DomainLabel cl{labels_[c]};
    if (leq(cl, a) && leq(cl, b)) lower.push_back(c);
  }
  for (int candidate : lower) {
    bool greatest = true;
    for (int other : lower)
      if (!leq(DomainLabel{labels_[other]}, DomainLabel{labels_[candidate]})) {
        greatest = false;
        break;
      }
    if (greatest) return DomainLabel{labels_[candidate]};
  }
  return std::nullopt;
}

TaggedForm::TaggedForm(RegularKind kind, std::optional<seq::SeqDescriptor> seq,
                       std::optional<HermitianOp> matrix, std::optional<DeclaredSingular> singular)
    : kind_(kind), seq_(std::move(seq)), matrix_(std::move(matrix)),
      singular_(std::move(singular)) {}

TaggedForm TaggedForm::diagonal(seq::SeqDescriptor s, std::optional<DeclaredSingular> singular) {
  const seq::SeriesFacts& f = s.facts();
  if (!f.nonneg)
    throw std::invalid_argument("tagged form: the regular diagonal must be entrywise nonnegative "
                                "(field 'regular')");
  if (!f.bounded)
    throw std::invalid_argument("tagged form: the regular diagonal must be bounded (field "
                                "'regular')");
  const RegularKind kind =
      f.abs_summable ? RegularKind::TraceClassDiagonal : RegularKind::BoundedDiagonal;
  return TaggedForm(kind, std::move(s), std::nullopt, std::move(singular));
}

TaggedForm TaggedForm::finite_matrix(HermitianOp op) {
  if (op.min_eigenvalue() < -tolerances().comparison)
    throw std::invalid_argument("tagged form: the matrix part must be positive semidefinite "
                                "(field 'regular.matrix')");
  return TaggedForm(RegularKind::FiniteMatrix, std::nullopt, std::move(op), std::nullopt);
}

const seq::SeqDescriptor& TaggedForm::diagonal_seq() const {
  if (!seq_.has_value()) throw std::logic_error("tagged form: no diagonal part");
  return *seq_;
}

const HermitianOp& TaggedForm::matrix() const {
  if (!matrix_.has_value()) throw std::logic_error("tagged form: no matrix part");
  return *matrix_;
}

bool TaggedForm::regular_is_zero() const {
  if (is_diagonal()) return diagonal_seq().facts().zero;
  return max_abs(matrix().matrix()) == 0.0;
}

std::string TaggedForm::describe() const {
  std::string out;
  switch (kind_) {
    case RegularKind::TraceClassDiagonal: out = "trace_class_diagonal " + seq_->describe(); break;
    case RegularKind::BoundedDiagonal: out = "bounded_diagonal " + seq_->describe(); break;
    case RegularKind::FiniteMatrix:
      out = "finite_matrix(dim " + std::to_string(matrix_->dim()) + ")";
      break;
  }
  if (singular_.has_value())
    out += " + singular(domain " + singular_->domain.name +
           (singular_->sphere_bounded ? ", sphere-bounded)" : ")");
  return out;
}

namespace {

bool regular_sup_finite(const TaggedForm& form) {
  // every tagged regular kind is bounded by construction
  return true;
}

bool computed_p1_bounded(const TaggedForm& form) {
  if (!regular_sup_finite(form)) return false;
  if (!form.singular().has_value()) return true;
  return form.singular()->sphere_bounded;
}

}  // namespace

ExtMeasure::ExtMeasure(TaggedForm form, DomainLabel domain, bool p1_bounded)
    : form_(std::move(form)), domain_(std::move(domain)), p1_bounded_(p1_bounded) {
  if (computed_p1_bounded(form_) != p1_bounded_)
    throw std::invalid_argument(
        "measure: field 'p1_bounded' is inconsistent with the tagged form (expected " +
        std::string(computed_p1_bounded(form_) ? "true" : "false") + ")");
  if (p1_bounded_ && !domain_.is_full())
    throw std::invalid_argument(
        "measure: a P1-bounded measure must carry the full-space domain (field 'domain')");
}

ExtMeasure ExtMeasure::zero() {
  return ExtMeasure(TaggedForm::diagonal(seq::SeqDescriptor::constant(0.0)), full_space(), true);
}

ExtMeasure ExtMeasure::identity_diagonal() {
  return ExtMeasure(TaggedForm::diagonal(seq::SeqDescriptor::constant(1.0)), full_space(), true);
}

ExtMeasure ExtMeasure::bounded_diagonal(seq::SeqDescriptor s) {
  return ExtMeasure(TaggedForm::diagonal(std::move(s)), full_space(), true);
}

ExtMeasure ExtMeasure::trace_class_diagonal(seq::SeqDescriptor s) {
  if (!s.facts().abs_summable)
    throw std::invalid_argument("trace_class_diagonal: the sequence must be summable");
  return ExtMeasure(TaggedForm::diagonal(std::move(s)), full_space(), true);
}

ExtMeasure ExtMeasure::pure_singular(DomainLabel singular_domain) {
  TaggedForm form = TaggedForm::diagonal(seq::SeqDescriptor::constant(0.0),
                                         DeclaredSingular{singular_domain, false});
  return ExtMeasure(std::move(form), full_space(), false);
}

ExtMeasure ExtMeasure::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("measure: expected a JSON object");
  if (!j.contains("regular")) throw std::invalid_argument("measure: missing field 'regular'");

  std::optional<DeclaredSingular> singular;
  if (j.contains("singular") && !(j.at("singular").is_string() && j.at("singular") == "none")) {
    const auto& s = j.at("singular");
    if (!s.is_object() || !s.contains("domain"))
      throw std::invalid_argument("measure: field 'singular' must be \"none\" or carry 'domain'");
    DeclaredSingular d;
    d.domain = DomainLabel{s.at("domain").get<std::string>()};
    if (s.contains("sphere_bounded")) d.sphere_bounded = s.at("sphere_bounded").get<bool>();
    singular = d;
  }

  TaggedForm form = [&]() {
    const auto& reg = j.at("regular");
    if (reg.is_object() && reg.contains("matrix")) {
      if (singular.has_value())
        throw std::invalid_argument(
            "measure: a matrix regular part cannot carry a singular tag (field 'singular')");
      return TaggedForm::finite_matrix(HermitianOp(matrix_from_json(reg.at("matrix"))));
    }
    return TaggedForm::diagonal(seq::SeqDescriptor::from_json(reg), singular);
  }();

  DomainLabel domain = full_space();
  if (j.contains("domain")) domain = DomainLabel{j.at("domain").get<std::string>()};
  const bool p1 = j.contains("p1_bounded") ? j.at("p1_bounded").get<bool>()
                                           : computed_p1_bounded(form);
  return ExtMeasure(std::move(form), std::move(domain), p1);
}

nlohmann::json ExtMeasure::to_json() const {
  nlohmann::json j;
  if (form_.is_diagonal())
    j["regular"] = form_.diagonal_seq().to_json();
  else
    j["regular"] = {{"matrix", matrix_to_json(form_.matrix().matrix())}};
  if (form_.singular().has_value()) {
    j["singular"] = {{"domain", form_.singular()->domain.name},
                     {"sphere_bounded", form_.singular()->sphere_bounded}};
  } else {
    j["singular"] = "none";
  }
  j["domain"] = domain_.name;
  j["p1_bounded"] = p1_bounded_;
  return j;
}

std::string ExtMeasure::describe() const {
  return form_.describe() + " on domain " + domain_.name +
         (p1_bounded_ ? " (P1-bounded)" : "");
}

namespace {

// meets used by the partial sum: equal labels or a full-space side
std::optional<DomainLabel> simple_meet(const DomainLabel& a, const DomainLabel& b) {
  if (a == b) return a;
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  return std::nullopt;
}

}  // namespace

OplusOutcome oplus(const ExtMeasure& a, const ExtMeasure& b) {
  if (!a.p1_bounded() && !b.p1_bounded() && !(a.domain() == b.domain()))
    return {std::nullopt,
            "neither summand is P1-bounded and the domain labels differ (" + a.domain().name +
                " vs " + b.domain().name + ")"};

  const TaggedForm& fa = a.form();
  const TaggedForm& fb = b.form();
  if (fa.is_diagonal() != fb.is_diagonal())
    throw std::invalid_argument("oplus: cannot mix diagonal and finite-matrix regular parts");

  std::optional<DeclaredSingular> singular;
  if (fa.singular().has_value() && fb.singular().has_value()) {
    const auto met = simple_meet(fa.singular()->domain, fb.singular()->domain);
    if (!met.has_value())
      throw std::invalid_argument("oplus: no declared meet of the singular domain labels " +
                                  fa.singular()->domain.name + " and " +
                                  fb.singular()->domain.name);
    singular = DeclaredSingular{*met,
                                fa.singular()->sphere_bounded && fb.singular()->sphere_bounded};
  } else if (fa.singular().has_value()) {
    singular = fa.singular();
  } else if (fb.singular().has_value()) {
    singular = fb.singular();
  }

  TaggedForm form = [&]() {
    if (fa.is_diagonal())
      return TaggedForm::diagonal(
          seq::SeqDescriptor::sum(fa.diagonal_seq(), fb.diagonal_seq()), singular);
    if (fa.matrix().dim() != fb.matrix().dim())
      throw std::invalid_argument("oplus: matrix regular parts have different dimensions");
    return TaggedForm::finite_matrix(
        HermitianOp(fa.matrix().matrix() + fb.matrix().matrix()));
  }();

  const auto domain = simple_meet(a.domain(), b.domain());
  if (!domain.has_value())
    throw std::invalid_argument("oplus: no declared meet of the domain labels");
  return {ExtMeasure(std::move(form), *domain, a.p1_bounded() && b.p1_bounded()), ""};
}

namespace {

double regular_eval(const ExtMeasure& m, const seq::IndexSet& j) {
  const TaggedForm& form = m.form();
  if (form.is_diagonal()) return seq::diagonal_measure_eval(form.diagonal_seq(), j);
  // finite matrix: only the axes within the matrix dimension matter
  const int dim = form.matrix().dim();
  std::vector<int> axes;
  for (int n = 1; n <= dim; ++n)
    if (j.contains(static_cast<std::uint64_t>(n))) axes.push_back(n - 1);
  if (axes.empty()) return 0.0;
  return compressed_trace(form.matrix(), Subspace::coordinate(dim, axes));
}

}  // namespace

double eval_ext(const ExtMeasure& m, const seq::IndexSet& j) {
  double value = regular_eval(m, j);
  if (m.form().singular().has_value() && !j.is_finite()) value = kInf;
  return value;
}

std::string sigma_verdict_name(SigmaVerdict v) {
  switch (v) {
    case SigmaVerdict::SigmaAdditive: return "sigma_additive";
    case SigmaVerdict::NotSigmaAdditive: return "not_sigma_additive";
    case SigmaVerdict::Undecidable: return "undecidable_in_this_model";
  }
  return "?";
}

nlohmann::json SigmaDecision::to_json() const {
  nlohmann::json j;
  j["verdict"] = sigma_verdict_name(verdict);
  j["trace"] = trace;
  if (violating_pattern.has_value()) j["violating_pattern"] = violating_pattern->to_json();
  return j;
}

SigmaDecision decide_sigma_additive(const ExtMeasure& m) {
  SigmaDecision d;
  const TaggedForm& form = m.form();

  if (!form.singular().has_value()) {
    d.verdict = SigmaVerdict::SigmaAdditive;
    d.trace.push_back(
        "no singular tag: the compressed form is trace-class exactly on the index sets with a "
        "finite regular sum, so the closure criterion holds on every pattern");
    return d;
  }

  if (form.regular_is_zero()) {
    d.verdict = SigmaVerdict::NotSigmaAdditive;
    d.violating_pattern = seq::IndexSet::all();
    d.trace.push_back(
        "pure singular tag: the regular part is trace-class (zero) on every pattern while the "
        "form fails to be trace-class on every infinite one; witness: all indices");
    return d;
  }

  const seq::SeqDescriptor& s = form.diagonal_seq();
  if (seq::diverges_on_every_infinite_pattern(s)) {
    d.verdict = SigmaVerdict::SigmaAdditive;
    d.trace.push_back(
        "singular tag over a regular floor that diverges on every infinite pattern: the regular "
        "closure and the full form are trace-class on exactly the finite patterns, so the "
        "closure criterion holds");
    return d;
  }

  // look for an infinite pattern with a certified finite regular sum
  const seq::IndexSet candidates[] = {seq::IndexSet::all(), seq::IndexSet::evens(),
                                      seq::IndexSet::odds()};
  for (const auto& pattern : candidates) {
    const seq::EvalDetail reg = seq::diagonal_measure_eval_detail(s, pattern);
    if (reg.exact && std::isfinite(reg.value)) {
      d.verdict = SigmaVerdict::NotSigmaAdditive;
      d.violating_pattern = pattern;
      d.trace.push_back("singular tag with a regular part summable over the infinite pattern " +
                        pattern.describe() +
                        ": the regular closure is trace-class there but the form is not");
      return d;
    }
  }

  d.verdict = SigmaVerdict::Undecidable;
  d.trace.push_back(
      "tagged combination outside the rule table: divergence of the regular part could not be "
      "certified on every infinite pattern, nor a summable witness pattern found");
  return d;
}

nlohmann::json SigmaViolationWitness::to_json() const {
  nlohmann::json j;
  j["partition"] = partition.to_json();
  j["sum_of_parts"] = std::isinf(lhs) ? nlohmann::json("inf") : nlohmann::json(lhs);
  j["measure_of_join"] = std::isinf(rhs) ? nlohmann::json("inf") : nlohmann::json(rhs);
  return j;
}

SigmaViolationWitness sigma_violation_witness(const ExtMeasure& m) {
  const SigmaDecision d = decide_sigma_additive(m);
  if (d.verdict != SigmaVerdict::NotSigmaAdditive)
    throw std::invalid_argument("sigma_violation_witness: the measure is " +
                                sigma_verdict_name(d.verdict));
  const seq::IndexSet pattern = d.violating_pattern.value_or(seq::IndexSet::all());
  SigmaViolationWitness w{pattern, 0.0, 0.0};
  // singletons carry only the regular part; the join restores the singular tag
  w.lhs = regular_eval(m, pattern);
  w.rhs = eval_ext(m, pattern);
  return w;
}

NonSubGEAReport not_sub_gea_demo() { return not_sub_gea_demo(ExtMeasure::pure_singular()); }

NonSubGEAReport not_sub_gea_demo(const ExtMeasure& other) {
  NonSubGEAReport report;
  const ExtMeasure base = ExtMeasure::identity_diagonal();
  const ExtMeasure o = ExtMeasure::zero();

  const OplusOutcome sum = oplus(base, other);
  report.sum_defined = sum.defined();

  const SigmaDecision base_d = decide_sigma_additive(base);
  const SigmaDecision other_d = decide_sigma_additive(other);
  report.base_sigma = base_d.verdict == SigmaVerdict::SigmaAdditive;
  report.other_sigma = other_d.verdict == SigmaVerdict::SigmaAdditive;

  report.detail["base"] = base.to_json();
  report.detail["other"] = other.to_json();
  report.detail["base_sigma"] = base_d.to_json();
  report.detail["other_sigma"] = other_d.to_json();

  if (!sum.defined()) {
    report.detail["oplus_failed_clause"] = sum.failed_clause;
    return report;
  }
  const SigmaDecision sum_d = decide_sigma_additive(*sum.value);
  report.sum_sigma = sum_d.verdict == SigmaVerdict::SigmaAdditive;
  report.detail["sum"] = sum.value->to_json();
  report.detail["sum_sigma"] = sum_d.to_json();

  if (other_d.verdict == SigmaVerdict::NotSigmaAdditive)
    report.sigma_witness = sigma_violation_witness(other);

  // the induced four-element partial algebra {o, base, other, base + other}
  std::vector<std::array<std::string, 3>> sums;
  for (const std::string& e : {"o", "m1", "m2", "m1+m2"}) {
    sums.push_back({"o", e, e});
    if (e != "o") sums.push_back({e, "o", e});
  }
  sums.push_back({"m1", "m2", "m1+m2"});
  sums.push_back({"m2", "m1", "m1+m2"});
  const gea::FiniteGEAModel model =
      gea::FiniteGEAModel::from_entries({"o", "m1", "m2", "m1+m2"}, "o", sums);
  report.model_axioms_pass = gea::check_axioms(model).pass();
  report.detail["model"] = model.to_json();

  std::vector<int> sigma_subset;
  sigma_subset.push_back(model.index_of("o"));
  if (report.base_sigma) sigma_subset.push_back(model.index_of("m1"));
  if (report.other_sigma) sigma_subset.push_back(model.index_of("m2"));
  if (report.sum_sigma) sigma_subset.push_back(model.index_of("m1+m2"));

  const gea::SubGEAResult sub = gea::is_sub_gea(sigma_subset, model);
  report.sub_gea_holds = sub.is_sub;
  if (sub.witness.has_value())
    for (int idx : *sub.witness) report.witness.push_back(model.id(idx));
  return report;
}

nlohmann::json NonSubGEAReport::to_json() const {
  nlohmann::json j;
  j["sum_defined"] = sum_defined;
  j["base_sigma_additive"] = base_sigma;
  j["other_sigma_additive"] = other_sigma;
  j["sum_sigma_additive"] = sum_sigma;
  j["model_axioms_pass"] = model_axioms_pass;
  j["sigma_subset_is_sub_gea"] = sub_gea_holds;
  j["violation_demonstrated"] = violation_demonstrated();
  if (!witness.empty()) j["witness"] = witness;
  if (sigma_witness.has_value()) j["sigma_violation"] = sigma_witness->to_json();
  j["detail"] = detail;
  return j;
}

FtfRecord ftf_view(const ExtMeasure& m) { return FtfRecord{m}; }

double FtfRecord::eval_basis(std::uint64_t k) const {
  if (k == 0) throw std::invalid_argument("eval_basis: basis vectors are 1-indexed");
  const TaggedForm& form = measure.form();
  if (form.is_diagonal()) return form.diagonal_seq().term(k);
  const int dim = form.matrix().dim();
  if (k > static_cast<std::uint64_t>(dim)) return 0.0;
  return form.matrix().matrix()(static_cast<int>(k - 1), static_cast<int>(k - 1)).real();
}

nlohmann::json FtfRecord::to_json() const {
  nlohmann::json j;
  j["domain"] = domain().name;
  j["bounded"] = bounded();
  j["measure"] = measure.to_json();
  return j;
}

FtfOplusOutcome ftf_oplus(const FtfRecord& f1, const FtfRecord& f2) {
  if (!f1.bounded() && !f2.bounded() && !(f1.domain() == f2.domain()))
    return {std::nullopt,
            "neither view is bounded and the domain labels differ (" + f1.domain().name + " vs " +
                f2.domain().name + ")"};
  OplusOutcome sum = oplus(f1.measure, f2.measure);
  if (!sum.defined()) return {std::nullopt, sum.failed_clause};
  return {ftf_view(*sum.value), ""};
}

bool induces_frame_function(const FtfRecord& f) {
  const SigmaDecision d = decide_sigma_additive(f.measure);
  if (d.verdict == SigmaVerdict::Undecidable)
    throw std::runtime_error("induces_frame_function: " + sigma_verdict_name(d.verdict));
  return d.verdict == SigmaVerdict::SigmaAdditive;
}

}  // namespace gleason::ext
