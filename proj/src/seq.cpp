#include "gleason/seq.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "gleason/parallel.hpp"

namespace gleason::seq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

namespace detail {

enum class Kind {
  Power,
  Geometric,
  AlternatingPower,
  Constant,
  Explicit,
  Scaled,
  SignedMerge,
  Sum,
  PositivePart,
  NegativePart,
};

struct Node {
  Kind kind;
  double p = 0.0;      // Power / AlternatingPower
  double r = 0.0;      // Geometric
  double c = 0.0;      // Constant
  double alpha = 0.0;  // Scaled
  std::vector<double> values;
  std::shared_ptr<const Node> a;  // inner / tail / lhs / pos
  std::shared_ptr<const Node> b;  // rhs / neg
  SeriesFacts facts;

  double term(std::uint64_t n) const {
    switch (kind) {
      case Kind::Power:
        return std::pow(static_cast<double>(n), -p);
      case Kind::Geometric:
        return std::pow(r, static_cast<double>(n));
      case Kind::AlternatingPower: {
        const double mag = std::pow(static_cast<double>(n), -p);
        return (n % 2 == 0) ? mag : -mag;
      }
      case Kind::Constant:
        return c;
      case Kind::Explicit:
        if (n <= values.size()) return values[n - 1];
        return a->term(n - values.size());
      case Kind::Scaled:
        return alpha * a->term(n);
      case Kind::SignedMerge:
        return (n % 2 == 0) ? a->term(n / 2) : -b->term((n + 1) / 2);
      case Kind::Sum:
        return a->term(n) + b->term(n);
      case Kind::PositivePart:
        return std::max(a->term(n), 0.0);
      case Kind::NegativePart:
        return std::max(-a->term(n), 0.0);
    }
    return 0.0;
  }

  std::string describe() const;
  nlohmann::json to_json() const;
};

std::string Node::describe() const {
  switch (kind) {
    case Kind::Power: return "power(" + std::to_string(p) + ")";
    case Kind::Geometric: return "geometric(" + std::to_string(r) + ")";
    case Kind::AlternatingPower: return "alternating_power(" + std::to_string(p) + ")";
    case Kind::Constant: return "constant(" + std::to_string(c) + ")";
    case Kind::Explicit:
      return "explicit(" + std::to_string(values.size()) + " terms, " + a->describe() + ")";
    case Kind::Scaled: return "scaled(" + std::to_string(alpha) + ", " + a->describe() + ")";
    case Kind::SignedMerge: return "signed_merge(" + a->describe() + ", " + b->describe() + ")";
    case Kind::Sum: return "sum(" + a->describe() + ", " + b->describe() + ")";
    case Kind::PositivePart: return "positive_part(" + a->describe() + ")";
    case Kind::NegativePart: return "negative_part(" + a->describe() + ")";
  }
  return "?";
}

nlohmann::json Node::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::Power: j["family"] = "power"; j["p"] = p; break;
    case Kind::Geometric: j["family"] = "geometric"; j["r"] = r; break;
    case Kind::AlternatingPower: j["family"] = "alternating_power"; j["p"] = p; break;
    case Kind::Constant: j["family"] = "constant"; j["c"] = c; break;
    case Kind::Explicit:
      j["family"] = "explicit";
      j["values"] = values;
      j["tail"] = a->to_json();
      break;
    case Kind::Scaled:
      j["family"] = "scaled";
      j["alpha"] = alpha;
      j["inner"] = a->to_json();
      break;
    case Kind::SignedMerge:
      j["family"] = "signed_merge";
      j["pos"] = a->to_json();
      j["neg"] = b->to_json();
      break;
    case Kind::Sum:
      j["family"] = "sum";
      j["lhs"] = a->to_json();
      j["rhs"] = b->to_json();
      break;
    case Kind::PositivePart: j["family"] = "positive_part"; j["inner"] = a->to_json(); break;
    case Kind::NegativePart: j["family"] = "negative_part"; j["inner"] = a->to_json(); break;
  }
  return j;
}

}  // namespace detail

using detail::Kind;
using detail::Node;

namespace {

SeriesFacts zero_facts() {
  SeriesFacts f;
  f.bounded = true;
  f.nonneg = true;
  f.zero = true;
  f.abs_summable = true;
  f.pos_summable = true;
  f.neg_summable = true;
  f.limit = LimitBehavior::Converges;
  return f;
}

std::shared_ptr<const Node> make_node(Node node) {
  return std::make_shared<const Node>(std::move(node));
}

LimitBehavior flip(LimitBehavior b) {
  if (b == LimitBehavior::DivergesToPlus) return LimitBehavior::DivergesToMinus;
  if (b == LimitBehavior::DivergesToMinus) return LimitBehavior::DivergesToPlus;
  return b;
}

}  // namespace

SeqDescriptor SeqDescriptor::power(double p) {
  Node n;
  n.kind = Kind::Power;
  n.p = p;
  n.facts.bounded = p >= 0.0;
  n.facts.nonneg = true;
  n.facts.zero = false;
  n.facts.abs_summable = p > 1.0;
  n.facts.pos_summable = p > 1.0;
  n.facts.neg_summable = true;
  n.facts.limit = p > 1.0 ? LimitBehavior::Converges : LimitBehavior::DivergesToPlus;
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::geometric(double r) {
  Node n;
  n.kind = Kind::Geometric;
  n.r = r;
  SeriesFacts& f = n.facts;
  if (r == 0.0) {
    f = zero_facts();
  } else if (std::abs(r) < 1.0) {
    f.bounded = true;
    f.nonneg = r > 0.0;
    f.abs_summable = f.pos_summable = f.neg_summable = true;
    f.limit = LimitBehavior::Converges;
  } else if (r >= 1.0) {
    f.bounded = r == 1.0;
    f.nonneg = true;
    f.abs_summable = false;
    f.pos_summable = false;
    f.neg_summable = true;
    f.limit = LimitBehavior::DivergesToPlus;
  } else {  // r <= -1
    f.bounded = r == -1.0;
    f.nonneg = false;
    f.abs_summable = false;
    f.pos_summable = false;
    f.neg_summable = false;
    f.limit = LimitBehavior::Oscillates;
  }
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::alternating_power(double p) {
  Node n;
  n.kind = Kind::AlternatingPower;
  n.p = p;
  SeriesFacts& f = n.facts;
  f.bounded = p >= 0.0;
  f.nonneg = false;
  f.abs_summable = p > 1.0;
  f.pos_summable = p > 1.0;
  f.neg_summable = p > 1.0;
  if (p > 0.0)
    f.limit = LimitBehavior::Converges;  // alternating with monotone vanishing magnitudes
  else
    f.limit = LimitBehavior::Oscillates;
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::constant(double c) {
  Node n;
  n.kind = Kind::Constant;
  n.c = c;
  SeriesFacts& f = n.facts;
  if (c == 0.0) {
    f = zero_facts();
  } else {
    f.bounded = true;
    f.nonneg = c > 0.0;
    f.abs_summable = false;
    f.pos_summable = c < 0.0;
    f.neg_summable = c > 0.0;
    f.limit = c > 0.0 ? LimitBehavior::DivergesToPlus : LimitBehavior::DivergesToMinus;
  }
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::explicit_prefix(std::vector<double> values, SeqDescriptor tail) {
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("explicit: prefix values must be finite");
  Node n;
  n.kind = Kind::Explicit;
  n.values = std::move(values);
  n.a = tail.node_;
  SeriesFacts& f = n.facts;
  f = tail.facts();  // a finite prefix shifts values, not behavior
  f.nonneg = tail.facts().nonneg &&
             std::all_of(n.values.begin(), n.values.end(), [](double v) { return v >= 0.0; });
  f.zero = tail.facts().zero &&
           std::all_of(n.values.begin(), n.values.end(), [](double v) { return v == 0.0; });
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::scaled(double alpha, SeqDescriptor inner) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("scaled: alpha must be finite");
  Node n;
  n.kind = Kind::Scaled;
  n.alpha = alpha;
  n.a = inner.node_;
  SeriesFacts& f = n.facts;
  if (alpha == 0.0) {
    f = zero_facts();
  } else {
    const SeriesFacts& g = inner.facts();
    f.bounded = g.bounded;
    f.zero = g.zero;
    f.abs_summable = g.abs_summable;
    if (alpha > 0.0) {
      f.nonneg = g.nonneg;
      f.pos_summable = g.pos_summable;
      f.neg_summable = g.neg_summable;
      f.limit = g.limit;
    } else {
      f.nonneg = g.zero;
      f.pos_summable = g.neg_summable;
      f.neg_summable = g.pos_summable;
      f.limit = g.limit.has_value() ? std::optional<LimitBehavior>(flip(*g.limit)) : std::nullopt;
    }
  }
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::signed_merge(SeqDescriptor pos, SeqDescriptor neg) {
  if (!pos.facts().nonneg || !neg.facts().nonneg)
    throw std::invalid_argument("signed_merge: both operands must be entrywise nonnegative");
  Node n;
  n.kind = Kind::SignedMerge;
  n.a = pos.node_;
  n.b = neg.node_;
  SeriesFacts& f = n.facts;
  const SeriesFacts& fp = pos.facts();
  const SeriesFacts& fn = neg.facts();
  f.bounded = fp.bounded && fn.bounded;
  f.nonneg = fn.zero;
  f.zero = fp.zero && fn.zero;
  f.abs_summable = fp.abs_summable && fn.abs_summable;
  f.pos_summable = fp.abs_summable;
  f.neg_summable = fn.abs_summable;
  if (fp.abs_summable && fn.abs_summable)
    f.limit = LimitBehavior::Converges;
  else if (!fp.abs_summable && fn.abs_summable)
    f.limit = LimitBehavior::DivergesToPlus;
  else if (fp.abs_summable && !fn.abs_summable)
    f.limit = LimitBehavior::DivergesToMinus;
  else
    f.limit = std::nullopt;  // interleaving of two divergent streams: not derivable here
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::sum(SeqDescriptor lhs, SeqDescriptor rhs) {
  if (!lhs.facts().nonneg || !rhs.facts().nonneg)
    throw std::invalid_argument("sum: operands must be entrywise nonnegative");
  Node n;
  n.kind = Kind::Sum;
  n.a = lhs.node_;
  n.b = rhs.node_;
  SeriesFacts& f = n.facts;
  f.bounded = lhs.facts().bounded && rhs.facts().bounded;
  f.nonneg = true;
  f.zero = lhs.facts().zero && rhs.facts().zero;
  f.abs_summable = lhs.facts().abs_summable && rhs.facts().abs_summable;
  f.pos_summable = f.abs_summable;
  f.neg_summable = true;
  f.limit = f.abs_summable ? LimitBehavior::Converges : LimitBehavior::DivergesToPlus;
  return SeqDescriptor(make_node(std::move(n)));
}

SeqDescriptor SeqDescriptor::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw std::invalid_argument("sequence: expected an object with field 'family'");
  const std::string family = j.at("family").get<std::string>();
  const auto need = [&j, &family](const char* field) -> const nlohmann::json& {
    if (!j.contains(field))
      throw std::invalid_argument("sequence: family '" + family + "' needs field '" +
                                  std::string(field) + "'");
    return j.at(field);
  };
  if (family == "power") return power(need("p").get<double>());
  if (family == "geometric") return geometric(need("r").get<double>());
  if (family == "alternating_power") return alternating_power(need("p").get<double>());
  if (family == "constant") return constant(need("c").get<double>());
  if (family == "explicit") {
    std::vector<double> values = need("values").get<std::vector<double>>();
    SeqDescriptor tail = j.contains("tail") ? from_json(j.at("tail")) : constant(0.0);
    return explicit_prefix(std::move(values), std::move(tail));
  }
  if (family == "scaled") return scaled(need("alpha").get<double>(), from_json(need("inner")));
  if (family == "signed_merge") return signed_merge(from_json(need("pos")), from_json(need("neg")));
  if (family == "sum") return sum(from_json(need("lhs")), from_json(need("rhs")));
  if (family == "positive_part") return pos_neg_parts(from_json(need("inner"))).first;
  if (family == "negative_part") return pos_neg_parts(from_json(need("inner"))).second;
  throw std::invalid_argument("sequence: unknown family '" + family + "'");
}

nlohmann::json SeqDescriptor::to_json() const { return node_->to_json(); }

double SeqDescriptor::term(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("term: sequences are 1-indexed");
  return node_->term(n);
}

const SeriesFacts& SeqDescriptor::facts() const { return node_->facts; }

std::string SeqDescriptor::describe() const { return node_->describe(); }

std::pair<SeqDescriptor, SeqDescriptor> pos_neg_parts(const SeqDescriptor& s) {
  const Node& n = *s.node_;
  if (s.facts().nonneg) return {s, SeqDescriptor::constant(0.0)};
  switch (n.kind) {
    case Kind::Constant:
      return {SeqDescriptor::constant(std::max(n.c, 0.0)),
              SeqDescriptor::constant(std::max(-n.c, 0.0))};
    case Kind::Scaled: {
      SeqDescriptor inner(n.a);
      auto [ip, in] = pos_neg_parts(inner);
      if (n.alpha >= 0.0)
        return {SeqDescriptor::scaled(n.alpha, ip), SeqDescriptor::scaled(n.alpha, in)};
      return {SeqDescriptor::scaled(-n.alpha, in), SeqDescriptor::scaled(-n.alpha, ip)};
    }
    case Kind::Explicit: {
      SeqDescriptor tail(n.a);
      auto [tp, tn] = pos_neg_parts(tail);
      std::vector<double> vp(n.values.size()), vn(n.values.size());
      for (std::size_t i = 0; i < n.values.size(); ++i) {
        vp[i] = std::max(n.values[i], 0.0);
        vn[i] = std::max(-n.values[i], 0.0);
      }
      return {SeqDescriptor::explicit_prefix(std::move(vp), tp),
              SeqDescriptor::explicit_prefix(std::move(vn), tn)};
    }
    case Kind::SignedMerge: {
      // the positive part zeroes the odd slots; the negative part needs the
      // magnitudes of the odd slots with flipped sign, which only the
      // projection wrapper expresses
      SeqDescriptor pos(n.a);
      auto wrapped = [&] {
        Node w;
        w.kind = Kind::NegativePart;
        w.a = s.node_;
        SeriesFacts& f = w.facts;
        f.bounded = s.facts().bounded;
        f.nonneg = true;
        f.zero = s.facts().neg_summable && n.b->facts.zero;
        f.abs_summable = s.facts().neg_summable;
        f.pos_summable = s.facts().neg_summable;
        f.neg_summable = true;
        f.limit = f.abs_summable ? LimitBehavior::Converges : LimitBehavior::DivergesToPlus;
        return SeqDescriptor(make_node(std::move(w)));
      }();
      return {SeqDescriptor::signed_merge(pos, SeqDescriptor::constant(0.0)), wrapped};
    }
    default:
      break;
  }
  // generic projection wrappers for the genuinely signed families
  const auto wrap = [&s](bool positive) {
    Node w;
    w.kind = positive ? Kind::PositivePart : Kind::NegativePart;
    w.a = s.node_;
    const SeriesFacts& g = s.facts();
    SeriesFacts& f = w.facts;
    f.bounded = g.bounded;
    f.nonneg = true;
    f.zero = false;
    const bool summable = positive ? g.pos_summable : g.neg_summable;
    f.abs_summable = summable;
    f.pos_summable = summable;
    f.neg_summable = true;
    f.limit = summable ? LimitBehavior::Converges : LimitBehavior::DivergesToPlus;
    return SeqDescriptor(make_node(std::move(w)));
  };
  return {wrap(true), wrap(false)};
}

double prefix_sum(const SeqDescriptor& s, std::uint64_t n) {
  return par::block_sum(1, n + 1, [&s](std::size_t i) { return s.term(i); });
}

std::string summability_name(SummabilityClass c) {
  switch (c) {
    case SummabilityClass::AbsSummable: return "absolutely_summable";
    case SummabilityClass::CondConvergent: return "conditionally_convergent";
    case SummabilityClass::DivergesToPlus: return "diverges_to_plus_infinity";
    case SummabilityClass::DivergesToMinus: return "diverges_to_minus_infinity";
    case SummabilityClass::Oscillates: return "oscillates";
  }
  return "?";
}

std::string frame_type_name(FrameTypeClass c) {
  switch (c) {
    case FrameTypeClass::BoundedFrameFunction: return "bounded_frame_function";
    case FrameTypeClass::NotFrameType_CondConvergent:
      return "not_frame_type_conditionally_convergent";
    case FrameTypeClass::FrameTypeInfiniteWeight: return "frame_type_infinite_weight";
    case FrameTypeClass::NotFrameType_BothDiverge: return "not_frame_type_both_parts_diverge";
    case FrameTypeClass::NotFrameType_DivergesToMinus:
      return "not_frame_type_diverges_to_minus_infinity";
  }
  return "?";
}

const char* const kFrameTypeConvention =
    "convention: a bounded diagonal sequence is frame-type exactly when it is absolutely "
    "summable or its positive part diverges while its negative part is summable; orthonormal "
    "sums may reach +infinity but never -infinity, so the mirrored condition is rejected";

namespace {

constexpr std::uint64_t kHeuristicTerms = 1'000'000;
constexpr std::uint64_t kHeuristicWindow = 10'000;
constexpr double kSettleEps = 1e-5;

struct StreamStats {
  double final_value = 0.0;
  double mid_min = kInf, mid_max = -kInf;
  double end_min = kInf, end_max = -kInf;
  bool saw_plus_inf = false, saw_minus_inf = false;

  bool settled() const {
    if (saw_plus_inf || saw_minus_inf) return false;
    return end_max - end_min <= kSettleEps;
  }
};

struct Profile {
  StreamStats total, abs, pos, neg;
};

void record_window(StreamStats& stat, double v, bool mid, bool end) {
  if (!std::isfinite(v)) return;
  if (mid) {
    stat.mid_min = std::min(stat.mid_min, v);
    stat.mid_max = std::max(stat.mid_max, v);
  }
  if (end) {
    stat.end_min = std::min(stat.end_min, v);
    stat.end_max = std::max(stat.end_max, v);
  }
  stat.final_value = v;
}

Profile stream_profile(const SeqDescriptor& s) {
  Profile prof;
  double st = 0.0, sa = 0.0, sp = 0.0, sn = 0.0;
  const std::uint64_t mid_lo = kHeuristicTerms / 2 - kHeuristicWindow;
  const std::uint64_t mid_hi = kHeuristicTerms / 2;
  const std::uint64_t end_lo = kHeuristicTerms - kHeuristicWindow;
  for (std::uint64_t n = 1; n <= kHeuristicTerms; ++n) {
    const double a = s.term(n);
    st += a;
    sa += std::abs(a);
    sp += std::max(a, 0.0);
    sn += std::max(-a, 0.0);
    if (std::isnan(st)) {
      // the running sum alternated between overflowed signs
      prof.total.saw_plus_inf = prof.total.saw_minus_inf = true;
      break;
    }
    if (st == kInf) prof.total.saw_plus_inf = true;
    if (st == -kInf) prof.total.saw_minus_inf = true;
    const bool mid = n > mid_lo && n <= mid_hi;
    const bool end = n > end_lo;
    record_window(prof.total, st, mid, end);
    record_window(prof.abs, sa, mid, end);
    record_window(prof.pos, sp, mid, end);
    record_window(prof.neg, sn, mid, end);
  }
  if (sa == kInf) prof.abs.saw_plus_inf = true;
  if (sp == kInf) prof.pos.saw_plus_inf = true;
  if (sn == kInf) prof.neg.saw_plus_inf = true;
  return prof;
}

SummabilityClass classify_profile(const Profile& prof) {
  const StreamStats& t = prof.total;
  if (t.saw_plus_inf && t.saw_minus_inf) return SummabilityClass::Oscillates;
  if (t.saw_plus_inf) return SummabilityClass::DivergesToPlus;
  if (t.saw_minus_inf) return SummabilityClass::DivergesToMinus;
  if (t.settled())
    return prof.abs.settled() ? SummabilityClass::AbsSummable : SummabilityClass::CondConvergent;
  const double margin = std::max(kSettleEps, 0.01 * std::abs(t.final_value));
  if (t.end_min > t.mid_max + margin) return SummabilityClass::DivergesToPlus;
  if (t.end_max < t.mid_min - margin) return SummabilityClass::DivergesToMinus;
  return SummabilityClass::Oscillates;
}

}  // namespace

SummabilityResult classify_summability(const SeqDescriptor& s, ClassifyMode mode) {
  if (mode == ClassifyMode::Heuristic)
    return {classify_profile(stream_profile(s)), true};

  const SeriesFacts& f = s.facts();
  if (f.abs_summable) return {SummabilityClass::AbsSummable, false};
  if (!f.limit.has_value())
    throw std::invalid_argument(
        "classify_summability: no declared metadata derives the partial-sum behavior of " +
        s.describe() + "; use the heuristic mode");
  switch (*f.limit) {
    case LimitBehavior::Converges: return {SummabilityClass::CondConvergent, false};
    case LimitBehavior::DivergesToPlus: return {SummabilityClass::DivergesToPlus, false};
    case LimitBehavior::DivergesToMinus: return {SummabilityClass::DivergesToMinus, false};
    case LimitBehavior::Oscillates: return {SummabilityClass::Oscillates, false};
  }
  return {SummabilityClass::Oscillates, false};
}

namespace {

FrameTypeClass frame_type_from(bool abs_summable, bool pos_summable, bool neg_summable,
                               std::optional<bool> converges, const std::string& what) {
  if (abs_summable) return FrameTypeClass::BoundedFrameFunction;
  if (!pos_summable && neg_summable) return FrameTypeClass::FrameTypeInfiniteWeight;
  if (pos_summable && !neg_summable) return FrameTypeClass::NotFrameType_DivergesToMinus;
  // both parts diverge: conditional convergence separates the two remaining cases
  if (!converges.has_value())
    throw std::invalid_argument(
        "classify_frame_type: cannot separate conditional convergence from oscillation for " +
        what + "; use the heuristic classifier");
  return *converges ? FrameTypeClass::NotFrameType_CondConvergent
                    : FrameTypeClass::NotFrameType_BothDiverge;
}

}  // namespace

FrameTypeClass classify_frame_type(const SeqDescriptor& s) {
  const SeriesFacts& f = s.facts();
  if (!f.bounded)
    throw std::invalid_argument("classify_frame_type: requires a bounded sequence, got " +
                                s.describe());
  std::optional<bool> converges;
  if (f.limit.has_value()) converges = (*f.limit == LimitBehavior::Converges);
  return frame_type_from(f.abs_summable, f.pos_summable, f.neg_summable, converges, s.describe());
}

FrameTypeClass classify_frame_type_heuristic(const SeqDescriptor& s) {
  if (!s.facts().bounded)
    throw std::invalid_argument("classify_frame_type: requires a bounded sequence, got " +
                                s.describe());
  const Profile prof = stream_profile(s);
  const SummabilityClass cls = classify_profile(prof);
  return frame_type_from(cls == SummabilityClass::AbsSummable, prof.pos.settled(),
                         prof.neg.settled(), cls == SummabilityClass::CondConvergent,
                         s.describe());
}

nlohmann::json RearrangementTrace::summary_json() const {
  nlohmann::json j;
  j["target"] = std::isinf(target) ? nlohmann::json(target > 0 ? "inf" : "-inf")
                                   : nlohmann::json(target);
  j["steps"] = indices.size();
  j["final_sum"] = final_sum;
  j["crossings"] = crossings;
  if (!std::isinf(target)) j["final_gap"] = std::abs(final_sum - target);
  nlohmann::json head = nlohmann::json::array();
  for (std::size_t i = 0; i < indices.size() && i < 20; ++i) head.push_back(indices[i]);
  j["first_indices"] = std::move(head);
  return j;
}

RearrangementTrace rearrange_to_target(const SeqDescriptor& s, double target,
                                       std::uint64_t steps) {
  const SummabilityClass cls = classify_summability(s, ClassifyMode::Exact).cls;
  if (cls == SummabilityClass::AbsSummable)
    throw std::invalid_argument(
        "rearrange_to_target: rearrangement cannot change the sum of an absolutely summable "
        "series");
  if (cls != SummabilityClass::CondConvergent)
    throw std::invalid_argument(
        "rearrange_to_target: requires a conditionally convergent series, got " +
        summability_name(cls));

  RearrangementTrace trace;
  trace.target = target;
  trace.indices.reserve(steps);
  trace.partial_sums.reserve(steps);

  std::uint64_t next_nonneg = 1, next_neg = 1;
  const auto take = [&s](std::uint64_t& cursor, bool want_nonneg) {
    while ((s.term(cursor) >= 0.0) != want_nonneg) ++cursor;
    return cursor++;
  };

  double sum = 0.0;
  double milestone = target > 0 ? 1.0 : -1.0;
  for (std::uint64_t step = 0; step < steps; ++step) {
    bool take_nonneg;
    if (target == kInf) {
      // nonnegative terms until the milestone is passed, then one negative
      take_nonneg = sum <= milestone;
      if (!take_nonneg) milestone += 1.0;
    } else if (target == -kInf) {
      take_nonneg = sum < milestone;
      if (take_nonneg) milestone -= 1.0;
    } else {
      take_nonneg = sum <= target;
    }
    const std::uint64_t idx = take(take_nonneg ? next_nonneg : next_neg, take_nonneg);
    const double prev = sum;
    sum += s.term(idx);
    trace.indices.push_back(idx);
    trace.partial_sums.push_back(sum);
    if (!std::isinf(target)) {
      if ((prev < target && sum > target) || (prev > target && sum < target)) ++trace.crossings;
    }
  }
  trace.final_sum = sum;
  return trace;
}

IndexSet::IndexSet(Kind kind, std::vector<std::uint64_t> members, std::uint64_t stride,
                   std::uint64_t offset)
    : kind_(kind), members_(std::move(members)), stride_(stride), offset_(offset) {
  for (std::uint64_t m : members_)
    if (m == 0) throw std::invalid_argument("index set: indices are 1-based");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

IndexSet IndexSet::finite(std::vector<std::uint64_t> members) {
  return IndexSet(Kind::Finite, std::move(members), 0, 0);
}

IndexSet IndexSet::cofinite(std::vector<std::uint64_t> excluded) {
  return IndexSet(Kind::Cofinite, std::move(excluded), 0, 0);
}

IndexSet IndexSet::arithmetic(std::uint64_t stride, std::uint64_t offset) {
  if (stride == 0 || offset == 0)
    throw std::invalid_argument("index set: arithmetic pattern needs stride >= 1, offset >= 1");
  return IndexSet(Kind::Arithmetic, {}, stride, offset);
}

IndexSet IndexSet::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("index set: expected an object with field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") {
    if (!j.contains("members")) throw std::invalid_argument("index set: missing field 'members'");
    return finite(j.at("members").get<std::vector<std::uint64_t>>());
  }
  if (kind == "cofinite") {
    std::vector<std::uint64_t> excl;
    if (j.contains("excluded")) excl = j.at("excluded").get<std::vector<std::uint64_t>>();
    return cofinite(std::move(excl));
  }
  if (kind == "arithmetic")
    return arithmetic(j.at("stride").get<std::uint64_t>(), j.at("offset").get<std::uint64_t>());
  if (kind == "all") return all();
  if (kind == "evens") return evens();
  if (kind == "odds") return odds();
  throw std::invalid_argument("index set: unknown kind '" + kind + "'");
}

nlohmann::json IndexSet::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::Finite:
      j["kind"] = "finite";
      j["members"] = members_;
      break;
    case Kind::Cofinite:
      j["kind"] = "cofinite";
      j["excluded"] = members_;
      break;
    case Kind::Arithmetic:
      j["kind"] = "arithmetic";
      j["stride"] = stride_;
      j["offset"] = offset_;
      break;
  }
  return j;
}

bool IndexSet::contains(std::uint64_t n) const {
  switch (kind_) {
    case Kind::Finite:
      return std::binary_search(members_.begin(), members_.end(), n);
    case Kind::Cofinite:
      return !std::binary_search(members_.begin(), members_.end(), n);
    case Kind::Arithmetic:
      return n >= offset_ && (n - offset_) % stride_ == 0;
  }
  return false;
}

std::string IndexSet::describe() const {
  switch (kind_) {
    case Kind::Finite: return "finite(" + std::to_string(members_.size()) + " members)";
    case Kind::Cofinite: return "cofinite(" + std::to_string(members_.size()) + " excluded)";
    case Kind::Arithmetic:
      return "arithmetic(stride " + std::to_string(stride_) + ", offset " +
             std::to_string(offset_) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// evaluation of nonnegative diagonal sums over infinite index patterns

namespace {

constexpr std::uint64_t kDirectBound = 1'000'000;

// {offset + k stride : k >= 0} minus a finite excluded set.
struct Pattern {
  std::uint64_t stride = 1;
  std::uint64_t offset = 1;
  std::vector<std::uint64_t> excluded;  // sorted, members of the progression
};

struct PatternValue {
  enum class Kind { Finite, Infinite, Estimate } kind = Kind::Finite;
  double value = 0.0;

  static PatternValue finite(double v) { return {Kind::Finite, v}; }
  static PatternValue infinite() { return {Kind::Infinite, kInf}; }
  static PatternValue estimate(double v) { return {Kind::Estimate, v}; }
};

PatternValue scale_value(double alpha, PatternValue v) {
  v.value *= alpha;
  return v;
}

PatternValue add_values(PatternValue a, PatternValue b) {
  if (a.kind == PatternValue::Kind::Infinite || b.kind == PatternValue::Kind::Infinite)
    return PatternValue::infinite();
  const bool est = a.kind == PatternValue::Kind::Estimate || b.kind == PatternValue::Kind::Estimate;
  return est ? PatternValue::estimate(a.value + b.value) : PatternValue::finite(a.value + b.value);
}

// members of pat with the requested parity, still in the original index space
std::optional<Pattern> restrict_parity(const Pattern& pat, bool even) {
  Pattern out;
  if (pat.stride % 2 == 1) {
    // consecutive members alternate parity
    const bool offset_even = pat.offset % 2 == 0;
    out.offset = (offset_even == even) ? pat.offset : pat.offset + pat.stride;
    out.stride = 2 * pat.stride;
  } else {
    if ((pat.offset % 2 == 0) != even) return std::nullopt;
    out.offset = pat.offset;
    out.stride = pat.stride;
  }
  for (std::uint64_t e : pat.excluded)
    if ((e % 2 == 0) == even && e >= out.offset && (e - out.offset) % out.stride == 0)
      out.excluded.push_back(e);
  return out;
}

// even members n -> n/2, or odd members n -> (n + 1) / 2
Pattern map_indices(const Pattern& pat, bool odd_members) {
  Pattern out;
  out.stride = pat.stride / 2;
  out.offset = odd_members ? (pat.offset + 1) / 2 : pat.offset / 2;
  for (std::uint64_t e : pat.excluded) out.excluded.push_back(odd_members ? (e + 1) / 2 : e / 2);
  if (out.stride == 0) throw std::logic_error("map_indices: degenerate stride");
  return out;
}

// Euler-Maclaurin tail of sum_{k >= k0} (o + s k)^(-p), p > 1; the truncation
// error is O((o + s k0)^(-p-3)), far below the 1e-10 target at the bound used.
double power_tail(double p, double stride, double offset, std::uint64_t k0) {
  const double x = offset + stride * static_cast<double>(k0);
  const double integral = std::pow(x, 1.0 - p) / (stride * (p - 1.0));
  const double half = std::pow(x, -p) / 2.0;
  const double deriv = p * stride * std::pow(x, -p - 1.0) / 12.0;
  return integral + half + deriv;
}

double direct_pattern_sum(const Pattern& pat, std::uint64_t bound,
                          const std::function<double(std::uint64_t)>& term) {
  if (pat.offset > bound) return 0.0;
  const std::uint64_t count = (bound - pat.offset) / pat.stride + 1;
  double sum = par::block_sum(0, count, [&](std::size_t k) {
    return term(pat.offset + pat.stride * static_cast<std::uint64_t>(k));
  });
  for (std::uint64_t e : pat.excluded)
    if (e <= bound) sum -= term(e);
  return sum;
}

PatternValue eval_pattern(const Node& node, const Pattern& pat);

PatternValue eval_power_like(double p, const Pattern& pat) {
  if (p <= 1.0) return PatternValue::infinite();
  const auto term = [p](std::uint64_t n) { return std::pow(static_cast<double>(n), -p); };
  double sum = direct_pattern_sum(pat, kDirectBound, term);
  const std::uint64_t k0 =
      pat.offset > kDirectBound ? 0 : (kDirectBound - pat.offset) / pat.stride + 1;
  sum += power_tail(p, static_cast<double>(pat.stride), static_cast<double>(pat.offset), k0);
  for (std::uint64_t e : pat.excluded)
    if (e > kDirectBound) sum -= term(e);
  return PatternValue::finite(sum);
}

PatternValue eval_geometric_like(double r, const Pattern& pat) {
  if (r == 0.0) return PatternValue::finite(0.0);
  if (r >= 1.0) return PatternValue::infinite();
  const auto term = [r](std::uint64_t n) { return std::pow(r, static_cast<double>(n)); };
  double sum = direct_pattern_sum(pat, kDirectBound, term);
  const std::uint64_t k0 =
      pat.offset > kDirectBound ? 0 : (kDirectBound - pat.offset) / pat.stride + 1;
  const double rs = std::pow(r, static_cast<double>(pat.stride));
  sum += std::pow(r, static_cast<double>(pat.offset + k0 * pat.stride)) / (1.0 - rs);
  for (std::uint64_t e : pat.excluded)
    if (e > kDirectBound) sum -= term(e);
  return PatternValue::finite(sum);
}

PatternValue eval_part_pattern(const Node& wrapper, const Pattern& pat, bool positive) {
  const Node& inner = *wrapper.a;
  if (inner.facts.nonneg)
    return positive ? eval_pattern(inner, pat) : PatternValue::finite(0.0);
  if (inner.kind == Kind::AlternatingPower) {
    // positive values sit on the evens, negative ones on the odds
    const auto sub = restrict_parity(pat, positive);
    if (!sub.has_value()) return PatternValue::finite(0.0);
    return eval_power_like(inner.p, *sub);
  }
  if (inner.kind == Kind::Geometric && inner.r < 0.0) {
    const auto sub = restrict_parity(pat, positive);
    if (!sub.has_value()) return PatternValue::finite(0.0);
    return eval_geometric_like(std::abs(inner.r), *sub);
  }
  if (inner.kind == Kind::SignedMerge) {
    // the positive slot sits on the evens, the negated slot on the odds
    const auto sub = restrict_parity(pat, positive);
    if (!sub.has_value()) return PatternValue::finite(0.0);
    const Node& slot = positive ? *inner.a : *inner.b;
    return eval_pattern(slot, map_indices(*sub, !positive));
  }
  // no family tail bound available: flagged numeric estimate
  const auto term = [&wrapper](std::uint64_t n) { return wrapper.term(n); };
  return PatternValue::estimate(direct_pattern_sum(pat, kDirectBound, term));
}

PatternValue eval_pattern(const Node& node, const Pattern& pat) {
  switch (node.kind) {
    case Kind::Constant:
      if (node.c == 0.0) return PatternValue::finite(0.0);
      return PatternValue::infinite();
    case Kind::Power:
      return eval_power_like(node.p, pat);
    case Kind::Geometric:
      return eval_geometric_like(node.r, pat);
    case Kind::Scaled:
      if (node.alpha == 0.0) return PatternValue::finite(0.0);
      return scale_value(node.alpha, eval_pattern(*node.a, pat));
    case Kind::Sum:
      return add_values(eval_pattern(*node.a, pat), eval_pattern(*node.b, pat));
    case Kind::Explicit: {
      const std::uint64_t len = node.values.size();
      double head = 0.0;
      for (std::uint64_t n = pat.offset; n <= len; n += pat.stride)
        if (!std::binary_search(pat.excluded.begin(), pat.excluded.end(), n))
          head += node.values[n - 1];
      Pattern shifted;
      shifted.stride = pat.stride;
      const std::uint64_t k0 = pat.offset > len ? 0 : (len - pat.offset) / pat.stride + 1;
      shifted.offset = pat.offset + k0 * pat.stride - len;
      for (std::uint64_t e : pat.excluded)
        if (e > len) shifted.excluded.push_back(e - len);
      return add_values(PatternValue::finite(head), eval_pattern(*node.a, shifted));
    }
    case Kind::SignedMerge: {
      // entrywise nonnegative merges carry a zero negative slot
      const auto even_sub = restrict_parity(pat, true);
      if (!even_sub.has_value()) return PatternValue::finite(0.0);
      return eval_pattern(*node.a, map_indices(*even_sub, false));
    }
    case Kind::PositivePart:
      return eval_part_pattern(node, pat, true);
    case Kind::NegativePart:
      return eval_part_pattern(node, pat, false);
    case Kind::AlternatingPower:
      break;  // signed; rejected before reaching here
  }
  const auto term = [&node](std::uint64_t n) { return node.term(n); };
  return PatternValue::estimate(direct_pattern_sum(pat, kDirectBound, term));
}

bool diverges_everywhere(const Node& n) {
  switch (n.kind) {
    case Kind::Constant: return n.c > 0.0;
    case Kind::Power: return n.p <= 1.0;
    case Kind::Geometric: return n.r >= 1.0;
    case Kind::Scaled: return n.alpha > 0.0 && diverges_everywhere(*n.a);
    case Kind::Sum: return diverges_everywhere(*n.a) || diverges_everywhere(*n.b);
    case Kind::Explicit: return diverges_everywhere(*n.a);
    default:
      return false;  // merges and part-projections vanish on some pattern
  }
}

}  // namespace

EvalDetail diagonal_measure_eval_detail(const SeqDescriptor& s, const IndexSet& j) {
  if (!s.facts().nonneg)
    throw std::invalid_argument(
        "diagonal_measure_eval: the sequence must be entrywise nonnegative (positive-measure "
        "evaluation only), got " +
        s.describe());
  if (j.kind() == IndexSet::Kind::Finite) {
    double sum = 0.0;
    for (std::uint64_t n : j.members()) sum += s.term(n);
    return {sum, true};
  }
  Pattern pat;
  if (j.kind() == IndexSet::Kind::Cofinite) {
    pat.stride = 1;
    pat.offset = 1;
    pat.excluded = j.excluded();
  } else {
    pat.stride = j.stride();
    pat.offset = j.offset();
  }
  const PatternValue v = eval_pattern(s.node(), pat);
  switch (v.kind) {
    case PatternValue::Kind::Finite: return {v.value, true};
    case PatternValue::Kind::Infinite: return {kInf, true};
    case PatternValue::Kind::Estimate: return {v.value, false};
  }
  return {v.value, false};
}

double diagonal_measure_eval(const SeqDescriptor& s, const IndexSet& j) {
  return diagonal_measure_eval_detail(s, j).value;
}

bool diverges_on_every_infinite_pattern(const SeqDescriptor& s) {
  if (!s.facts().nonneg)
    throw std::invalid_argument(
        "diverges_on_every_infinite_pattern: needs an entrywise nonnegative sequence");
  return diverges_everywhere(s.node());
}

}  // namespace gleason::seq
