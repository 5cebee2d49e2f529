#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace gleason::gea {

// Finite partial algebra (E; +, 0) given by an explicit sum table. Entries
// are directed; construction requires the table to be symmetric (both
// directions present, equal values) and every id to resolve. Violations are
// construction errors, not axiom failures.
class FiniteGEAModel {
 public:
  static FiniteGEAModel from_entries(std::vector<std::string> elements, const std::string& zero,
                                     const std::vector<std::array<std::string, 3>>& sums);
  static FiniteGEAModel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  // [0, u] slice of the integers with x + y defined iff x + y <= u.
  static FiniteGEAModel interval(int u);
  // {0, a, a', b, b', 1} with a + a' = b + b' = 1 the only nonzero sums.
  static FiniteGEAModel horizontal_sum();

  int size() const { return static_cast<int>(elements_.size()); }
  int zero() const { return zero_; }
  const std::string& id(int index) const { return elements_[index]; }
  int index_of(const std::string& id) const;

  bool defined(int x, int y) const { return table_[slot(x, y)] >= 0; }
  int sum(int x, int y) const { return table_[slot(x, y)]; }  // -1 when undefined
  std::vector<std::pair<int, int>> defined_pairs() const;     // directed

  FiniteGEAModel restricted(const std::vector<int>& subset) const;
  // Entry list with the directed entry (x, y) remapped to value z; used by
  // the mutation sweep. May throw the same construction errors as
  // from_entries.
  FiniteGEAModel with_entry(int x, int y, int z) const;

 private:
  FiniteGEAModel() = default;
  std::size_t slot(int x, int y) const { return static_cast<std::size_t>(x) * elements_.size() + y; }

  std::vector<std::string> elements_;
  int zero_ = 0;
  std::vector<int> table_;  // size * size, -1 = undefined
};

enum class Axiom {
  Commutativity,             // GEi
  AssociativityEquality,     // GEii, value half
  AssociativityDefinedness,  // GEii, definedness-transfer half
  ZeroIdentity,              // GEiii
  Cancellation,              // GEiv
  Positivity,                // GEv
};

std::string axiom_label(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::vector<int> witness;
  bool operator==(const AxiomViolation&) const = default;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;  // sorted: axiom, then witness
  bool pass() const { return violations.empty(); }
  bool pass(Axiom a) const;
  nlohmann::json to_json(const FiniteGEAModel& model) const;
};

// Exhaustive verification of the five axioms; the associativity halves are
// reported separately. The triple enumeration is partitioned across OpenMP
// workers and merged in a deterministic order.
AxiomReport check_axioms(const FiniteGEAModel& model);
// Single-threaded reference kept for testing and benchmarking.
AxiomReport check_axioms_serial(const FiniteGEAModel& model);

// Order induced by (ED): x <= y iff some z has x + z = y, with y - x = z.
class PosetView {
 public:
  PosetView(int size, int zero, std::vector<char> leq, std::vector<int> ominus);
  int size() const { return size_; }
  bool leq(int x, int y) const { return leq_[static_cast<std::size_t>(x) * size_ + y] != 0; }
  std::optional<int> ominus(int y, int x) const;  // y - x
  std::vector<std::pair<int, int>> leq_pairs() const;

 private:
  int size_;
  int zero_;
  std::vector<char> leq_;
  std::vector<int> ominus_;
};

// Throws when the difference is ill-defined, i.e. the model fails
// cancellation.
PosetView derived_order(const FiniteGEAModel& model);

struct SubGEAResult {
  bool is_sub = false;
  std::optional<std::array<int, 3>> witness;  // violating (x, y, z) with x + y = z
};

// Two-out-of-three closure: 0 must belong to the subset, and for every
// defined x + y = z with at least two of the occurrence slots (x, y, z) in
// the subset, all three must lie in it. Occurrences count with multiplicity.
SubGEAResult is_sub_gea(const std::vector<int>& subset, const FiniteGEAModel& model);

enum class Direction { Up, Down };

// Supremum (up) or infimum (down) of a monotone chain in the derived order;
// empty optional when the bound does not exist in the model. Non-monotone
// input is an error.
std::optional<int> chain_extrema(const FiniteGEAModel& model, const std::vector<int>& chain,
                                 Direction direction);

// Structured model families used by the property suites: integer intervals,
// horizontal sums of intervals, componentwise products of two intervals and
// sum-free antichains, all with at most max_elements elements.
std::vector<FiniteGEAModel> family_models(int max_elements);

struct EnumerationStats {
  std::uint64_t total = 0;
  std::uint64_t passing = 0;
};

// Exhaustive enumeration of symmetric partial tables on n elements with the
// zero row fixed to 0 + x = x. The visitor, when given, receives each table
// and its pass verdict; tables are visited in a fixed lexicographic order.
EnumerationStats enumerate_tables(
    int n, const std::function<void(const std::vector<int>&, bool)>& visit = nullptr);

struct MutationSweep {
  std::uint64_t mutations = 0;
  std::uint64_t flagged = 0;          // construction error or axiom violation
  std::uint64_t construction_errors = 0;
  std::uint64_t axiom_violations = 0;
};

// Replaces each directed table entry by every other element value and counts
// how many mutants are rejected.
MutationSweep mutation_sweep(const FiniteGEAModel& model);

}  // namespace gleason::gea
