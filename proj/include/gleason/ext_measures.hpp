#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gleason/gea.hpp"
#include "gleason/hilbert.hpp"
#include "gleason/seq.hpp"

namespace gleason::ext {

// Opaque domain labels; "H" is the full-space label.
struct DomainLabel {
  std::string name;
  bool is_full() const { return name == "H"; }
  bool operator==(const DomainLabel&) const = default;
};

inline DomainLabel full_space() { return {"H"}; }

// Declared subset relations between labels, a finite poset with the full
// space on top. Only equality and full-space tests are needed by the partial
// sum; the poset carries the declared structure for everything else.
class DomainPoset {
 public:
  DomainPoset();
  void add(const DomainLabel& label);
  void declare_leq(const DomainLabel& lower, const DomainLabel& upper);
  bool leq(const DomainLabel& a, const DomainLabel& b) const;
  std::optional<DomainLabel> meet(const DomainLabel& a, const DomainLabel& b) const;

 private:
  int index(const std::string& name) const;
  std::vector<std::string> labels_;
  std::vector<char> leq_;  // reflexive-transitive closure
  void close();
};

// Singular tag: vanishes on every finite-dimensional basis-aligned subspace,
// not trace-class on any infinite-dimensional one.
struct DeclaredSingular {
  DomainLabel domain;
  bool sphere_bounded = false;
};

// Positive form in the computable tagged class: a regular part that is a
// trace-class diagonal, a bounded diagonal or a finite positive matrix, plus
// an optional singular tag. Singular tags combine only with diagonal
// regular parts (they live over the same canonical basis).
class TaggedForm {
 public:
  enum class RegularKind { TraceClassDiagonal, BoundedDiagonal, FiniteMatrix };

  static TaggedForm diagonal(seq::SeqDescriptor s,
                             std::optional<DeclaredSingular> singular = std::nullopt);
  static TaggedForm finite_matrix(HermitianOp op);

  RegularKind regular_kind() const { return kind_; }
  bool is_diagonal() const { return kind_ != RegularKind::FiniteMatrix; }
  const seq::SeqDescriptor& diagonal_seq() const;
  const HermitianOp& matrix() const;
  const std::optional<DeclaredSingular>& singular() const { return singular_; }
  bool regular_is_zero() const;
  std::string describe() const;

 private:
  TaggedForm(RegularKind kind, std::optional<seq::SeqDescriptor> seq,
             std::optional<HermitianOp> matrix, std::optional<DeclaredSingular> singular);
  RegularKind kind_;
  std::optional<seq::SeqDescriptor> seq_;
  std::optional<HermitianOp> matrix_;
  std::optional<DeclaredSingular> singular_;
};

// Tagged sigma-finite measure with possibly infinite values.
class ExtMeasure {
 public:
  ExtMeasure(TaggedForm form, DomainLabel domain, bool p1_bounded);

  static ExtMeasure zero();
  static ExtMeasure identity_diagonal();  // m(M) = dim M over the basis lattice
  static ExtMeasure bounded_diagonal(seq::SeqDescriptor s);
  static ExtMeasure trace_class_diagonal(seq::SeqDescriptor s);
  static ExtMeasure pure_singular(DomainLabel singular_domain = full_space());

  static ExtMeasure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const TaggedForm& form() const { return form_; }
  const DomainLabel& domain() const { return domain_; }
  bool p1_bounded() const { return p1_bounded_; }
  std::string describe() const;

 private:
  TaggedForm form_;
  DomainLabel domain_;
  bool p1_bounded_;
};

struct OplusOutcome {
  std::optional<ExtMeasure> value;
  std::string failed_clause;  // set when undefined
  bool defined() const { return value.has_value(); }
};

// Partial sum: defined iff one operand is P1-bounded or the domain labels
// coincide. Undefined is a value carrying the failed clause.
OplusOutcome oplus(const ExtMeasure& a, const ExtMeasure& b);

// Value over the basis-aligned subspace spanned by J: regular part by
// diagonal evaluation (or compressed trace for finite matrices), singular
// part contributing zero on finite J and infinity on infinite J.
double eval_ext(const ExtMeasure& m, const seq::IndexSet& j);

enum class SigmaVerdict { SigmaAdditive, NotSigmaAdditive, Undecidable };
std::string sigma_verdict_name(SigmaVerdict v);

struct SigmaDecision {
  SigmaVerdict verdict = SigmaVerdict::Undecidable;
  std::vector<std::string> trace;  // rule applied, with witness patterns by name
  std::optional<seq::IndexSet> violating_pattern;
  nlohmann::json to_json() const;
};

SigmaDecision decide_sigma_additive(const ExtMeasure& m);

struct SigmaViolationWitness {
  seq::IndexSet partition;  // split into coordinate lines sp(e_n), n in the pattern
  double lhs = 0.0;         // sum of the singleton values
  double rhs = 0.0;         // measure of the joined subspace
  nlohmann::json to_json() const;
};

// Canonical countable-additivity violation; an error when the measure is
// sigma-additive.
SigmaViolationWitness sigma_violation_witness(const ExtMeasure& m);

struct NonSubGEAReport {
  bool sum_defined = false;
  bool base_sigma = false;      // first summand
  bool other_sigma = false;     // second summand
  bool sum_sigma = false;
  bool model_axioms_pass = false;
  bool sub_gea_holds = false;   // two-out-of-three closure of the sigma subset
  std::vector<std::string> witness;  // violating triple, when any
  std::optional<SigmaViolationWitness> sigma_witness;
  nlohmann::json detail;
  bool violation_demonstrated() const { return sum_defined && !sub_gea_holds; }
  nlohmann::json to_json() const;
};

// Builds the bounded-diagonal identity measure and a companion, adds them,
// decides sigma-additivity of all three, and cross-checks the induced
// four-element model against the finite sub-algebra predicate.
NonSubGEAReport not_sub_gea_demo();
NonSubGEAReport not_sub_gea_demo(const ExtMeasure& other);

// Frame-type view of a tagged measure: f(x) = t(x, x) on the domain label,
// bounded exactly when the measure is P1-bounded.
struct FtfRecord {
  ExtMeasure measure;
  const DomainLabel& domain() const { return measure.domain(); }
  bool bounded() const { return measure.p1_bounded(); }
  double eval_basis(std::uint64_t k) const;  // value at the k-th basis vector
  nlohmann::json to_json() const;
};

FtfRecord ftf_view(const ExtMeasure& m);

struct FtfOplusOutcome {
  std::optional<FtfRecord> value;
  std::string failed_clause;
  bool defined() const { return value.has_value(); }
};

// Mirror of the measure-level partial sum: defined iff one view is bounded
// or the domain labels coincide.
FtfOplusOutcome ftf_oplus(const FtfRecord& f1, const FtfRecord& f2);

// A view induces a total frame function exactly when its measure is
// sigma-additive; throws on rule-table gaps.
bool induces_frame_function(const FtfRecord& f);

}  // namespace gleason::ext
