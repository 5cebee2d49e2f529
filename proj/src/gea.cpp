#include "gleason/gea.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gleason/parallel.hpp"

namespace gleason::gea {

namespace {

std::string id_from_json(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("model: element ids must be strings (field 'sums')");
}

}  // namespace

FiniteGEAModel FiniteGEAModel::from_entries(std::vector<std::string> elements,
                                            const std::string& zero,
                                            const std::vector<std::array<std::string, 3>>& sums) {
  FiniteGEAModel m;
  m.elements_ = std::move(elements);
  if (m.elements_.empty()) throw std::invalid_argument("model: no elements");
  std::map<std::string, int> index;
  for (int i = 0; i < m.size(); ++i) {
    if (!index.emplace(m.elements_[i], i).second)
      throw std::invalid_argument("model: duplicate element id '" + m.elements_[i] + "'");
  }
  const auto resolve = [&index](const std::string& id) {
    const auto it = index.find(id);
    if (it == index.end())
      throw std::invalid_argument("model: unknown element id '" + id + "'");
    return it->second;
  };
  m.zero_ = resolve(zero);
  m.table_.assign(static_cast<std::size_t>(m.size()) * m.size(), -1);
  for (const auto& entry : sums) {
    const int x = resolve(entry[0]);
    const int y = resolve(entry[1]);
    const int z = resolve(entry[2]);
    int& cell = m.table_[m.slot(x, y)];
    if (cell >= 0 && cell != z)
      throw std::invalid_argument("model: conflicting entries for (" + entry[0] + ", " + entry[1] + ")");
    cell = z;
  }
  // the table must be symmetric as given; a one-sided entry is a defect of
  // the input, not an axiom violation
  for (int x = 0; x < m.size(); ++x)
    for (int y = 0; y < m.size(); ++y) {
      const int v = m.table_[m.slot(x, y)];
      if (v >= 0 && m.table_[m.slot(y, x)] != v)
        throw std::invalid_argument("model: sum table is not symmetric at (" + m.elements_[x] +
                                    ", " + m.elements_[y] + ")");
    }
  return m;
}

FiniteGEAModel FiniteGEAModel::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model: expected a JSON object");
  if (!j.contains("elements")) throw std::invalid_argument("model: missing field 'elements'");
  if (!j.contains("zero")) throw std::invalid_argument("model: missing field 'zero'");
  if (!j.contains("sums")) throw std::invalid_argument("model: missing field 'sums'");
  std::vector<std::string> elements;
  for (const auto& e : j.at("elements")) elements.push_back(id_from_json(e));
  std::vector<std::array<std::string, 3>> sums;
  for (const auto& s : j.at("sums")) {
    if (!s.is_array() || s.size() != 3)
      throw std::invalid_argument("model: each entry of 'sums' must be [x, y, z]");
    sums.push_back({id_from_json(s[0]), id_from_json(s[1]), id_from_json(s[2])});
  }
  return from_entries(std::move(elements), id_from_json(j.at("zero")), sums);
}

nlohmann::json FiniteGEAModel::to_json() const {
  nlohmann::json j;
  j["elements"] = elements_;
  j["zero"] = elements_[zero_];
  nlohmann::json sums = nlohmann::json::array();
  for (const auto& [x, y] : defined_pairs())
    sums.push_back({elements_[x], elements_[y], elements_[sum(x, y)]});
  j["sums"] = std::move(sums);
  return j;
}

FiniteGEAModel FiniteGEAModel::interval(int u) {
  if (u < 0) throw std::invalid_argument("interval: u must be nonnegative");
  std::vector<std::string> elements;
  for (int i = 0; i <= u; ++i) elements.push_back(std::to_string(i));
  std::vector<std::array<std::string, 3>> sums;
  for (int x = 0; x <= u; ++x)
    for (int y = 0; y <= u; ++y)
      if (x + y <= u) sums.push_back({elements[x], elements[y], elements[x + y]});
  return from_entries(std::move(elements), "0", sums);
}

FiniteGEAModel FiniteGEAModel::horizontal_sum() {
  std::vector<std::string> elements = {"0", "a", "a'", "b", "b'", "1"};
  std::vector<std::array<std::string, 3>> sums;
  for (const auto& e : elements) {
    sums.push_back({"0", e, e});
    if (e != "0") sums.push_back({e, "0", e});
  }
  sums.push_back({"a", "a'", "1"});
  sums.push_back({"a'", "a", "1"});
  sums.push_back({"b", "b'", "1"});
  sums.push_back({"b'", "b", "1"});
  return from_entries(std::move(elements), "0", sums);
}

int FiniteGEAModel::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[i] == id) return i;
  throw std::invalid_argument("model: unknown element id '" + id + "'");
}

std::vector<std::pair<int, int>> FiniteGEAModel::defined_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < size(); ++x)
    for (int y = 0; y < size(); ++y)
      if (defined(x, y)) pairs.emplace_back(x, y);
  return pairs;
}

FiniteGEAModel FiniteGEAModel::restricted(const std::vector<int>& subset) const {
  std::vector<char> in(size(), 0);
  for (int s : subset) {
    if (s < 0 || s >= size()) throw std::invalid_argument("restricted: index out of range");
    in[s] = 1;
  }
  if (!in[zero_]) throw std::invalid_argument("restricted: subset must contain zero");
  std::vector<std::string> elements;
  for (int i = 0; i < size(); ++i)
    if (in[i]) elements.push_back(elements_[i]);
  std::vector<std::array<std::string, 3>> sums;
  for (const auto& [x, y] : defined_pairs()) {
    const int z = sum(x, y);
    if (in[x] && in[y] && in[z]) sums.push_back({elements_[x], elements_[y], elements_[z]});
  }
  return from_entries(std::move(elements), elements_[zero_], sums);
}

FiniteGEAModel FiniteGEAModel::with_entry(int x, int y, int z) const {
  std::vector<std::array<std::string, 3>> sums;
  for (const auto& [a, b] : defined_pairs()) {
    const int v = (a == x && b == y) ? z : sum(a, b);
    sums.push_back({elements_[a], elements_[b], elements_[v]});
  }
  return from_entries(elements_, elements_[zero_], sums);
}

std::string axiom_label(Axiom a) {
  switch (a) {
    case Axiom::Commutativity: return "GEi";
    case Axiom::AssociativityEquality: return "GEii-eq";
    case Axiom::AssociativityDefinedness: return "GEii-def";
    case Axiom::ZeroIdentity: return "GEiii";
    case Axiom::Cancellation: return "GEiv";
    case Axiom::Positivity: return "GEv";
  }
  return "?";
}

bool AxiomReport::pass(Axiom a) const {
  return std::none_of(violations.begin(), violations.end(),
                      [a](const AxiomViolation& v) { return v.axiom == a; });
}

nlohmann::json AxiomReport::to_json(const FiniteGEAModel& model) const {
  nlohmann::json j;
  j["pass"] = pass();
  nlohmann::json axioms = nlohmann::json::array();
  for (const Axiom a :
       {Axiom::Commutativity, Axiom::AssociativityEquality, Axiom::AssociativityDefinedness,
        Axiom::ZeroIdentity, Axiom::Cancellation, Axiom::Positivity}) {
    nlohmann::json entry;
    entry["axiom"] = axiom_label(a);
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& v : violations) {
      if (v.axiom != a) continue;
      nlohmann::json w = nlohmann::json::array();
      for (int idx : v.witness) w.push_back(model.id(idx));
      witnesses.push_back(std::move(w));
    }
    entry["pass"] = witnesses.empty();
    entry["witnesses"] = std::move(witnesses);
    axioms.push_back(std::move(entry));
  }
  j["axioms"] = std::move(axioms);
  return j;
}

namespace {

void sort_violations(std::vector<AxiomViolation>& v) {
  std::sort(v.begin(), v.end(), [](const AxiomViolation& a, const AxiomViolation& b) {
    if (a.axiom != b.axiom) return static_cast<int>(a.axiom) < static_cast<int>(b.axiom);
    return a.witness < b.witness;
  });
}

// All checks rooted at a fixed first element x; the workers split on x.
void check_rooted_at(const FiniteGEAModel& m, int x, std::vector<AxiomViolation>& out) {
  const int n = m.size();
  const int zero = m.zero();

  // GEiii
  if (m.sum(x, zero) != x) out.push_back({Axiom::ZeroIdentity, {x}});

  for (int y = 0; y < n; ++y) {
    const int xy = m.sum(x, y);
    if (xy >= 0) {
      // GEi (construction keeps the table symmetric; verified anyway)
      if (m.sum(y, x) != xy) out.push_back({Axiom::Commutativity, {x, y}});
      // GEv
      if (xy == zero && (x != zero || y != zero)) out.push_back({Axiom::Positivity, {x, y}});
    }
    // GEiv: equal sums in row x
    if (xy >= 0)
      for (int z = y + 1; z < n; ++z)
        if (m.sum(x, z) == xy) out.push_back({Axiom::Cancellation, {x, y, z}});
  }

  // GEii, both halves, over ordered triples (x, y, z)
  for (int y = 0; y < n; ++y) {
    const int xy = m.sum(x, y);
    for (int z = 0; z < n; ++z) {
      const int lhs = xy >= 0 ? m.sum(xy, z) : -1;
      const int yz = m.sum(y, z);
      const int rhs = yz >= 0 ? m.sum(x, yz) : -1;
      const bool lhs_def = xy >= 0 && lhs >= 0;
      const bool rhs_def = yz >= 0 && rhs >= 0;
      if (lhs_def != rhs_def)
        out.push_back({Axiom::AssociativityDefinedness, {x, y, z}});
      else if (lhs_def && lhs != rhs)
        out.push_back({Axiom::AssociativityEquality, {x, y, z}});
    }
  }
}

}  // namespace

AxiomReport check_axioms_serial(const FiniteGEAModel& model) {
  AxiomReport report;
  for (int x = 0; x < model.size(); ++x) check_rooted_at(model, x, report.violations);
  sort_violations(report.violations);
  return report;
}

AxiomReport check_axioms(const FiniteGEAModel& model) {
  const int n = model.size();
  const int workers = par::max_workers();
  if (workers <= 1 || n < 16) return check_axioms_serial(model);

  std::vector<std::vector<AxiomViolation>> local(static_cast<std::size_t>(workers));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
  for (int x = 0; x < n; ++x) {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    check_rooted_at(model, x, local[static_cast<std::size_t>(tid)]);
  }

  AxiomReport report;
  for (auto& chunk : local)
    report.violations.insert(report.violations.end(), chunk.begin(), chunk.end());
  sort_violations(report.violations);
  return report;
}

PosetView::PosetView(int size, int zero, std::vector<char> leq, std::vector<int> ominus)
    : size_(size), zero_(zero), leq_(std::move(leq)), ominus_(std::move(ominus)) {}

std::optional<int> PosetView::ominus(int y, int x) const {
  const int v = ominus_[static_cast<std::size_t>(y) * size_ + x];
  if (v < 0) return std::nullopt;
  return v;
}

std::vector<std::pair<int, int>> PosetView::leq_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < size_; ++x)
    for (int y = 0; y < size_; ++y)
      if (leq(x, y)) pairs.emplace_back(x, y);
  return pairs;
}

PosetView derived_order(const FiniteGEAModel& model) {
  const int n = model.size();
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> ominus(static_cast<std::size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      const int y = model.sum(x, z);
      if (y < 0) continue;
      leq[static_cast<std::size_t>(x) * n + y] = 1;
      int& diff = ominus[static_cast<std::size_t>(y) * n + x];
      if (diff >= 0 && diff != z)
        throw std::invalid_argument(
            "derived_order: difference is ill-defined, the model fails cancellation");
      diff = z;
    }
  return PosetView(n, model.zero(), std::move(leq), std::move(ominus));
}

SubGEAResult is_sub_gea(const std::vector<int>& subset, const FiniteGEAModel& model) {
  std::vector<char> in(model.size(), 0);
  for (int s : subset) {
    if (s < 0 || s >= model.size()) throw std::invalid_argument("is_sub_gea: index out of range");
    in[s] = 1;
  }
  if (!in[model.zero()]) return {false, std::nullopt};
  for (int x = 0; x < model.size(); ++x)
    for (int y = x; y < model.size(); ++y) {
      const int z = model.sum(x, y);
      if (z < 0) continue;
      const int occupied = in[x] + in[y] + in[z];
      if (occupied == 2) return {false, std::array<int, 3>{x, y, z}};
    }
  return {true, std::nullopt};
}

std::optional<int> chain_extrema(const FiniteGEAModel& model, const std::vector<int>& chain,
                                 Direction direction) {
  const PosetView order = derived_order(model);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const bool ok = direction == Direction::Up ? order.leq(chain[i], chain[i + 1])
                                               : order.leq(chain[i + 1], chain[i]);
    if (!ok) throw std::invalid_argument("chain_extrema: input chain is not monotone");
  }

  const int n = model.size();
  std::vector<int> bounds;
  for (int b = 0; b < n; ++b) {
    bool is_bound = true;
    for (int c : chain) {
      const bool ok = direction == Direction::Up ? order.leq(c, b) : order.leq(b, c);
      if (!ok) {
        is_bound = false;
        break;
      }
    }
    if (is_bound) bounds.push_back(b);
  }
  // least upper bound / greatest lower bound among the bounds
  for (int candidate : bounds) {
    bool extremal = true;
    for (int other : bounds) {
      const bool ok = direction == Direction::Up ? order.leq(candidate, other)
                                                 : order.leq(other, candidate);
      if (!ok) {
        extremal = false;
        break;
      }
    }
    if (extremal) return candidate;
  }
  return std::nullopt;
}

std::vector<FiniteGEAModel> family_models(int max_elements) {
  std::vector<FiniteGEAModel> models;

  for (int u = 1; u + 1 <= max_elements; ++u) models.push_back(FiniteGEAModel::interval(u));

  // horizontal sums: {0, a_1, a_1', ..., a_p, a_p', 1}
  for (int p = 1; 2 * p + 2 <= max_elements; ++p) {
    std::vector<std::string> elements = {"0"};
    for (int k = 1; k <= p; ++k) {
      elements.push_back("a" + std::to_string(k));
      elements.push_back("a" + std::to_string(k) + "'");
    }
    elements.push_back("1");
    std::vector<std::array<std::string, 3>> sums;
    for (const auto& e : elements) {
      sums.push_back({"0", e, e});
      if (e != "0") sums.push_back({e, "0", e});
    }
    for (int k = 1; k <= p; ++k) {
      const std::string a = "a" + std::to_string(k);
      const std::string a2 = a + "'";
      sums.push_back({a, a2, "1"});
      sums.push_back({a2, a, "1"});
    }
    models.push_back(FiniteGEAModel::from_entries(std::move(elements), "0", sums));
  }

  // componentwise products of two intervals
  for (int u = 1; u <= 3; ++u)
    for (int v = u; v <= 3; ++v) {
      if ((u + 1) * (v + 1) > max_elements) continue;
      std::vector<std::string> elements;
      const auto name = [](int i, int j) {
        return std::to_string(i) + "," + std::to_string(j);
      };
      for (int i = 0; i <= u; ++i)
        for (int j = 0; j <= v; ++j) elements.push_back(name(i, j));
      std::vector<std::array<std::string, 3>> sums;
      for (int i1 = 0; i1 <= u; ++i1)
        for (int j1 = 0; j1 <= v; ++j1)
          for (int i2 = 0; i2 <= u; ++i2)
            for (int j2 = 0; j2 <= v; ++j2)
              if (i1 + i2 <= u && j1 + j2 <= v)
                sums.push_back({name(i1, j1), name(i2, j2), name(i1 + i2, j1 + j2)});
      models.push_back(FiniteGEAModel::from_entries(std::move(elements), "0,0", sums));
    }

  // sum-free antichains above zero
  for (int k = 2; k + 1 <= max_elements; ++k) {
    std::vector<std::string> elements = {"0"};
    for (int i = 1; i <= k; ++i) elements.push_back("c" + std::to_string(i));
    std::vector<std::array<std::string, 3>> sums;
    for (const auto& e : elements) {
      sums.push_back({"0", e, e});
      if (e != "0") sums.push_back({e, "0", e});
    }
    models.push_back(FiniteGEAModel::from_entries(std::move(elements), "0", sums));
  }

  return models;
}

namespace {

struct TableEnumerator {
  int n;
  std::vector<std::pair<int, int>> slots;  // unordered (x, y), x <= y, nonzero
  std::vector<int> table;                  // n * n, row-major
  std::vector<std::uint32_t> row_values;   // bitmask of values present per row
  const std::function<void(const std::vector<int>&, bool)>* visit;
  EnumerationStats stats;
  std::vector<std::uint64_t> subtree;  // (n+1)^k table completions below depth k

  explicit TableEnumerator(int n_, const std::function<void(const std::vector<int>&, bool)>* v)
      : n(n_), visit(v) {
    for (int x = 1; x < n; ++x)
      for (int y = x; y < n; ++y) slots.emplace_back(x, y);
    table.assign(static_cast<std::size_t>(n) * n, -1);
    row_values.assign(static_cast<std::size_t>(n), 0);
    for (int e = 0; e < n; ++e) {
      at(0, e) = e;
      at(e, 0) = e;
      row_values[0] |= 1u << e;
      row_values[static_cast<std::size_t>(e)] |= 1u << e;  // value of (e, 0)
    }
    subtree.assign(slots.size() + 1, 1);
    for (std::size_t k = 1; k <= slots.size(); ++k)
      subtree[k] = subtree[k - 1] * static_cast<std::uint64_t>(n + 1);
  }

  int& at(int x, int y) { return table[static_cast<std::size_t>(x) * n + y]; }
  int get(int x, int y) const { return table[static_cast<std::size_t>(x) * n + y]; }

  bool associativity_holds() const {
    // zero-rooted triples hold automatically once the zero row is fixed
    for (int x = 1; x < n; ++x)
      for (int y = 1; y < n; ++y) {
        const int xy = get(x, y);
        for (int z = 1; z < n; ++z) {
          const int lhs = xy >= 0 ? get(xy, z) : -1;
          const int yz = get(y, z);
          const int rhs = yz >= 0 ? get(x, yz) : -1;
          const bool lhs_def = xy >= 0 && lhs >= 0;
          const bool rhs_def = yz >= 0 && rhs >= 0;
          if (lhs_def != rhs_def) return false;
          if (lhs_def && lhs != rhs) return false;
        }
      }
    return true;
  }

  void recurse(std::size_t depth) {
    if (depth == slots.size()) {
      const bool ok = associativity_holds();
      stats.total += 1;
      if (ok) stats.passing += 1;
      if (visit) (*visit)(table, ok);
      return;
    }
    const auto [x, y] = slots[depth];
    const std::uint64_t below = subtree[slots.size() - depth - 1];
    for (int v = -1; v < n; ++v) {
      if (v >= 0) {
        bool rejected = false;
        // positivity: a nonzero pair may not sum to zero
        if (v == 0) rejected = true;
        // cancellation within the affected rows
        if (!rejected && (row_values[static_cast<std::size_t>(x)] & (1u << v))) rejected = true;
        if (!rejected && x != y && (row_values[static_cast<std::size_t>(y)] & (1u << v)))
          rejected = true;
        if (rejected) {
          if (visit) {
            // full visitation: descend anyway so the caller sees every table
            at(x, y) = v;
            at(y, x) = v;
            recurse_rejected(depth + 1);
            at(x, y) = -1;
            at(y, x) = -1;
          } else {
            stats.total += below;
          }
          continue;
        }
        at(x, y) = v;
        at(y, x) = v;
        row_values[static_cast<std::size_t>(x)] |= 1u << v;
        if (x != y) row_values[static_cast<std::size_t>(y)] |= 1u << v;
        recurse(depth + 1);
        row_values[static_cast<std::size_t>(x)] &= ~(1u << v);
        if (x != y) row_values[static_cast<std::size_t>(y)] &= ~(1u << v);
        at(x, y) = -1;
        at(y, x) = -1;
      } else {
        recurse(depth + 1);
      }
    }
  }

  // subtree below a slot assignment that already violates an axiom
  void recurse_rejected(std::size_t depth) {
    if (depth == slots.size()) {
      stats.total += 1;
      if (visit) (*visit)(table, false);
      return;
    }
    const auto [x, y] = slots[depth];
    for (int v = -1; v < n; ++v) {
      if (v >= 0) {
        at(x, y) = v;
        at(y, x) = v;
      }
      recurse_rejected(depth + 1);
      if (v >= 0) {
        at(x, y) = -1;
        at(y, x) = -1;
      }
    }
  }
};

}  // namespace

EnumerationStats enumerate_tables(
    int n, const std::function<void(const std::vector<int>&, bool)>& visit) {
  if (n < 1 || n > 6) throw std::invalid_argument("enumerate_tables: n must be between 1 and 6");
  TableEnumerator e(n, visit ? &visit : nullptr);
  e.recurse(0);
  return e.stats;
}

MutationSweep mutation_sweep(const FiniteGEAModel& model) {
  MutationSweep sweep;
  for (const auto& [x, y] : model.defined_pairs()) {
    const int original = model.sum(x, y);
    for (int z = 0; z < model.size(); ++z) {
      if (z == original) continue;
      sweep.mutations += 1;
      try {
        const FiniteGEAModel mutant = model.with_entry(x, y, z);
        if (!check_axioms(mutant).pass()) {
          sweep.axiom_violations += 1;
          sweep.flagged += 1;
        }
      } catch (const std::invalid_argument&) {
        sweep.construction_errors += 1;
        sweep.flagged += 1;
      }
    }
  }
  return sweep;
}

}  // namespace gleason::gea
