#pragma once

#include <cstdint>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gleason::seq {

enum class LimitBehavior { Converges, DivergesToPlus, DivergesToMinus, Oscillates };

// Declared exact summability metadata, kept consistent with the family
// algebra at construction.
struct SeriesFacts {
  bool bounded = true;
  bool nonneg = false;
  bool zero = false;  // identically zero
  bool abs_summable = false;
  bool pos_summable = false;  // sum of positive parts is finite
  bool neg_summable = false;
  std::optional<LimitBehavior> limit;  // behavior of the partial sums, when derivable
};

namespace detail {
struct Node;
}

// Symbolic real sequence a_n (1-indexed) with a total term generator and
// declared summability facts.
class SeqDescriptor {
 public:
  static SeqDescriptor power(double p);              // 1 / n^p
  static SeqDescriptor geometric(double r);          // r^n
  static SeqDescriptor alternating_power(double p);  // (-1)^n / n^p
  static SeqDescriptor constant(double c);
  static SeqDescriptor explicit_prefix(std::vector<double> values, SeqDescriptor tail);
  static SeqDescriptor scaled(double alpha, SeqDescriptor inner);
  // evens carry +pos(k) at n = 2k, odds carry -neg(k) at n = 2k - 1;
  // both operands must be entrywise nonnegative
  static SeqDescriptor signed_merge(SeqDescriptor pos, SeqDescriptor neg);
  // entrywise sum of two nonnegative sequences
  static SeqDescriptor sum(SeqDescriptor lhs, SeqDescriptor rhs);

  static SeqDescriptor from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  double term(std::uint64_t n) const;  // n >= 1
  const SeriesFacts& facts() const;
  std::string describe() const;

  const detail::Node& node() const { return *node_; }

 private:
  explicit SeqDescriptor(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
  friend std::pair<SeqDescriptor, SeqDescriptor> pos_neg_parts(const SeqDescriptor&);
};

// Descriptors for {a_n^+} and {a_n^-}: a_n = a_n^+ - a_n^-, a_n^+ a_n^- = 0,
// with metadata propagated by the family algebra.
std::pair<SeqDescriptor, SeqDescriptor> pos_neg_parts(const SeqDescriptor& s);

double prefix_sum(const SeqDescriptor& s, std::uint64_t n);

enum class SummabilityClass {
  AbsSummable,
  CondConvergent,
  DivergesToPlus,
  DivergesToMinus,
  Oscillates,
};
std::string summability_name(SummabilityClass c);

enum class ClassifyMode { Exact, Heuristic };

struct SummabilityResult {
  SummabilityClass cls;
  bool heuristic = false;  // provenance flag
};

// Exact mode reads the declared metadata and refuses compositions whose
// behavior it cannot derive; heuristic mode examines the partial sums of the
// first million terms and is always labeled as such.
SummabilityResult classify_summability(const SeqDescriptor& s, ClassifyMode mode);

enum class FrameTypeClass {
  BoundedFrameFunction,             // absolutely summable diagonal
  NotFrameType_CondConvergent,      // conditionally convergent
  FrameTypeInfiniteWeight,          // positive part diverges, negative part summable
  NotFrameType_BothDiverge,         // both parts diverge, no conditional convergence
  NotFrameType_DivergesToMinus,     // mirror of the infinite-weight case
};
std::string frame_type_name(FrameTypeClass c);

// Sign convention note attached to classifier output: a bounded diagonal
// sequence induces a frame-type function exactly when it is absolutely
// summable, or when its positive part diverges while its negative part stays
// summable (weights may reach +infinity, never -infinity). The mirrored
// condition (summable positive part, divergent negative part) does not.
extern const char* const kFrameTypeConvention;

// Requires a bounded family; classification follows the declared metadata.
FrameTypeClass classify_frame_type(const SeqDescriptor& s);
// Same dispatch driven by the million-term partial-sum oracle.
FrameTypeClass classify_frame_type_heuristic(const SeqDescriptor& s);

struct RearrangementTrace {
  std::vector<std::uint64_t> indices;  // original 1-based indices, each used once
  std::vector<double> partial_sums;
  double target = 0.0;
  std::uint64_t crossings = 0;  // strict sign changes of (sum - target)
  double final_sum = 0.0;
  double min_gap = 0.0;  // closest approach of the partial sums to a finite target
  nlohmann::json summary_json() const;
};

// Greedy rearrangement of a conditionally convergent series: append unused
// nonnegative terms while the partial sum is at or below the target,
// otherwise unused negative terms. Infinite targets use the one-sided
// milestone variant. Absolutely summable input is rejected.
RearrangementTrace rearrange_to_target(const SeqDescriptor& s, double target, std::uint64_t steps);

// Index sets over the canonical basis: finite, cofinite or arithmetic
// ({offset, offset + stride, ...}).
class IndexSet {
 public:
  enum class Kind { Finite, Cofinite, Arithmetic };

  static IndexSet finite(std::vector<std::uint64_t> members);
  static IndexSet cofinite(std::vector<std::uint64_t> excluded);
  static IndexSet arithmetic(std::uint64_t stride, std::uint64_t offset);
  static IndexSet all() { return cofinite({}); }
  static IndexSet evens() { return arithmetic(2, 2); }
  static IndexSet odds() { return arithmetic(2, 1); }

  static IndexSet from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const std::vector<std::uint64_t>& members() const { return members_; }
  const std::vector<std::uint64_t>& excluded() const { return members_; }
  std::uint64_t stride() const { return stride_; }
  std::uint64_t offset() const { return offset_; }
  bool contains(std::uint64_t n) const;
  std::string describe() const;

 private:
  IndexSet(Kind kind, std::vector<std::uint64_t> members, std::uint64_t stride,
           std::uint64_t offset);
  Kind kind_;
  std::vector<std::uint64_t> members_;  // members (Finite) or exclusions (Cofinite)
  std::uint64_t stride_ = 0;
  std::uint64_t offset_ = 0;
};

struct EvalDetail {
  double value = 0.0;  // +infinity when the restricted series diverges
  bool exact = true;   // false for the flagged numeric estimates
};

// Sum of a_n over J for an entrywise nonnegative sequence: exact for finite
// J; for infinite J the class comes from the metadata, with finite values
// computed by family tail bounds where available and flagged estimates
// elsewhere.
EvalDetail diagonal_measure_eval_detail(const SeqDescriptor& s, const IndexSet& j);
double diagonal_measure_eval(const SeqDescriptor& s, const IndexSet& j);

// True when the restriction of the (nonnegative) sequence to every infinite
// supported index set diverges; certified from the family metadata.
bool diverges_on_every_infinite_pattern(const SeqDescriptor& s);

}  // namespace gleason::seq
