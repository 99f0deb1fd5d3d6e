#pragma once

// Group-ring elements with exact coefficients, and the isolated-product
// tables and support counts built from them.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "srkit/error.hpp"
#include "srkit/group_model.hpp"
#include "srkit/star_check.hpp"

namespace srkit {

struct RationalField {
  using Value = boost::multiprecision::cpp_rational;

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value from_int(long v) const { return v; }
  bool is_zero(const Value& v) const { return v == 0; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  std::string format(const Value& v) const { return v.str(); }
  std::string name() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// Integers mod a prime p < 2^31.
struct PrimeField {
  using Value = std::uint64_t;

  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) throw PreconditionViolated("prime out of range");
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw PreconditionViolated(std::to_string(p) + " is not prime");
    }
  }

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value from_int(long v) const {
    const auto m = static_cast<long>(p);
    return static_cast<Value>(((v % m) + m) % m);
  }
  bool is_zero(Value v) const { return v == 0; }
  Value add(Value a, Value b) const { return (a + b) % p; }
  Value mul(Value a, Value b) const { return (a * b) % p; }
  Value neg(Value a) const { return a == 0 ? 0 : p - a; }
  std::string format(Value v) const { return std::to_string(v); }
  std::string name() const { return "F" + std::to_string(p); }

  std::uint64_t p;
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

/// Finite sum of coefficient * group element, keyed by the group's canonical
/// key; zero coefficients are never stored.
template <GroupModel G, class F = RationalField>
class RingElement {
public:
  using Element = typename G::Element;
  using Value = typename F::Value;

  struct Term {
    Element element;
    Value coefficient;
  };

  explicit RingElement(const G& g, F field = F{}) : g_(&g), field_(std::move(field)) {}

  static RingElement monomial(const G& g, const Element& e, const Value& c, F field = F{}) {
    RingElement r(g, std::move(field));
    r.add_term(e, c);
    return r;
  }
  static RingElement one(const G& g, F field = F{}) {
    RingElement r(g, field);
    r.add_term(g.identity(), field.one());
    return r;
  }

  const G& group() const { return *g_; }
  const F& field() const { return field_; }

  void add_term(const Element& e, const Value& c) {
    if constexpr (requires { g_->canonical(e); }) {
      insert(g_->canonical(e), c);
    } else {
      insert(e, c);
    }
  }

  RingElement operator+(const RingElement& o) const {
    check(o);
    RingElement r = *this;
    for (const auto& [k, t] : o.terms_) r.add_term(t.element, t.coefficient);
    return r;
  }
  RingElement operator-(const RingElement& o) const { return *this + o.scaled(field_.neg(field_.one())); }
  RingElement operator*(const RingElement& o) const {
    check(o);
    RingElement r(*g_, field_);
    for (const auto& [k1, x] : terms_) {
      for (const auto& [k2, y] : o.terms_) {
        r.add_term(g_->multiply(x.element, y.element), field_.mul(x.coefficient, y.coefficient));
      }
    }
    return r;
  }
  RingElement scaled(const Value& c) const {
    RingElement r(*g_, field_);
    for (const auto& [k, t] : terms_) r.add_term(t.element, field_.mul(t.coefficient, c));
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  std::vector<Element> support() const {
    std::vector<Element> out;
    for (const auto& [k, t] : terms_) out.push_back(t.element);
    return out;
  }
  Value coefficient(const Element& e) const {
    auto it = terms_.find(key_of(e));
    return it == terms_.end() ? field_.zero() : it->second.coefficient;
  }
  /// Ordered by key, so iteration is deterministic.
  const std::map<std::vector<Letter>, Term>& terms() const { return terms_; }

  std::string format() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, t] : terms_) {
      if (!s.empty()) s += " + ";
      s += field_.format(t.coefficient) + "*(" + g_->format(t.element) + ")";
    }
    return s;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j) {
      if (i->first != j->first || !(i->second.coefficient == j->second.coefficient)) return false;
    }
    return true;
  }

private:
  std::vector<Letter> key_of(const Element& e) const {
    if constexpr (requires { g_->canonical(e); }) {
      return g_->key(g_->canonical(e));
    } else {
      return g_->key(e);
    }
  }

  void insert(const Element& e, const Value& c) {
    if (field_.is_zero(c)) return;
    auto key = g_->key(e);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), Term{e, c});
      return;
    }
    it->second.coefficient = field_.add(it->second.coefficient, c);
    if (field_.is_zero(it->second.coefficient)) terms_.erase(it);
  }

  void check(const RingElement& o) const {
    if (g_ != o.g_ || !(field_ == o.field_)) throw AmbientMismatch("ring elements over different groups or fields");
  }

  const G* g_;
  F field_;
  std::map<std::vector<Letter>, Term> terms_;
};

/// eps = sum_{s,t} b_s x_t^-1 phi x_t, and eps1 = eps + 1.
template <GroupModel G, class F>
std::pair<RingElement<G, F>, RingElement<G, F>> epsilon(const G& g, std::span<const typename G::Element, 3> b_s,
                                                       std::span<const typename G::Element, 3> x_bt,
                                                       const RingElement<G, F>& phi_b) {
  RingElement<G, F> eps(g, phi_b.field());
  for (const auto& b : b_s) {
    for (const auto& x : x_bt) {
      const auto left = g.multiply(b, g.invert(x));
      for (const auto& [k, t] : phi_b.terms()) eps.add_term(g.multiply(left, g.multiply(t.element, x)), t.coefficient);
    }
  }
  auto eps1 = eps + RingElement<G, F>::one(g, phi_b.field());
  return {std::move(eps), std::move(eps1)};
}

template <class E>
struct PairTable {
  std::vector<std::pair<E, E>> pairs;
  std::vector<E> products;
  /// Indices of pairs whose product no other pair shares.
  std::vector<std::size_t> isolated;
  std::size_t threshold = 0;

  bool holds() const { return isolated.size() > threshold; }
};

template <GroupModel G>
PairTable<typename G::Element> make_pair_table(const G& g, std::vector<std::pair<typename G::Element, typename G::Element>> pairs,
                                               std::size_t threshold, bool parallel = true) {
  using E = typename G::Element;
  PairTable<E> t;
  t.pairs = std::move(pairs);
  t.threshold = threshold;
  const auto n = static_cast<std::ptrdiff_t>(t.pairs.size());
  t.products.resize(t.pairs.size());
  std::vector<std::vector<Letter>> keys(t.pairs.size());
#pragma omp parallel for if (parallel) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& [a, b] = t.pairs[static_cast<std::size_t>(i)];
    t.products[static_cast<std::size_t>(i)] = g.multiply(a, b);
    keys[static_cast<std::size_t>(i)] = g.key(t.products[static_cast<std::size_t>(i)]);
  }
  std::unordered_map<std::vector<Letter>, std::size_t, KeyHash> count;
  for (const auto& k : keys) ++count[k];
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (count[keys[i]] == 1) t.isolated.push_back(i);
  }
  return t;
}

namespace detail {

template <GroupModel G>
void require_distinct(const G& g, std::span<const typename G::Element> v, const char* what, bool nontrivial) {
  std::unordered_map<std::vector<Letter>, int, KeyHash> seen;
  for (const auto& e : v) {
    if (nontrivial && g.is_identity(e)) throw HypothesisUnverified(std::string(what) + " contains the identity");
    if (!seen.emplace(g.key(e), 0).second) throw HypothesisUnverified(std::string(what) + " are not distinct");
  }
}

}  // namespace detail

/// {f, f^-1 f' : f != f' in s}.
template <GroupModel G>
std::vector<typename G::Element> difference_set(const G& g, std::span<const typename G::Element> s) {
  return pairing_set(g, s);
}

/// V = (s1 u s2 u s3) x t with threshold n = |t|. Requires |s_i| = m, all f
/// distinct and nontrivial, t distinct, and the three difference sets mutually
/// reduced up to opt.max_len; HypothesisUnverified otherwise.
template <GroupModel G>
PairTable<typename G::Element> lemma32_table(const G& g, const std::array<std::vector<typename G::Element>, 3>& s,
                                             const std::vector<typename G::Element>& t, const SearchOptions& opt = {}) {
  using E = typename G::Element;
  const std::size_t m = s[0].size();
  if (m == 0 || s[1].size() != m || s[2].size() != m) throw HypothesisUnverified("the S_i must have the same positive size");
  if (t.empty()) throw HypothesisUnverified("T is empty");
  std::vector<E> all;
  for (const auto& si : s) all.insert(all.end(), si.begin(), si.end());
  detail::require_distinct(g, std::span<const E>(all), "the f_ij", true);
  detail::require_distinct(g, std::span<const E>(t), "the g_i", false);
  std::vector<std::vector<E>> ms;
  for (const auto& si : s) ms.push_back(difference_set(g, std::span<const E>(si)));
  const auto v = check_mutually_reduced(g, std::span<const std::vector<E>>(ms), opt);
  if (!v.holds) throw HypothesisUnverified("M_1, M_2, M_3 are not mutually reduced");
  std::vector<std::pair<E, E>> pairs;
  for (const auto& f : all) {
    for (const auto& x : t) pairs.emplace_back(f, x);
  }
  return make_pair_table(g, std::move(pairs), t.size(), opt.parallel);
}

/// V = union of X_i x S_i with products x f and threshold sum |S_i|. Requires
/// the 3n x's distinct and mutually reduced as singletons, and each S_i
/// without repeats; HypothesisUnverified otherwise.
template <GroupModel G>
PairTable<typename G::Element> lemma33_table(const G& g, const std::vector<std::vector<typename G::Element>>& s_list,
                                             const std::vector<std::array<typename G::Element, 3>>& x_list,
                                             const SearchOptions& opt = {}) {
  using E = typename G::Element;
  if (s_list.empty() || s_list.size() != x_list.size()) throw HypothesisUnverified("need one triple per set");
  std::vector<E> xs;
  for (const auto& tri : x_list) xs.insert(xs.end(), tri.begin(), tri.end());
  detail::require_distinct(g, std::span<const E>(xs), "the x_il", true);
  std::size_t m = 0;
  for (const auto& si : s_list) {
    if (si.empty()) throw HypothesisUnverified("empty S_i");
    detail::require_distinct(g, std::span<const E>(si), "the f_ip", false);
    m += si.size();
  }
  std::vector<std::vector<E>> singletons;
  for (const auto& x : xs) singletons.push_back({x});
  const auto v = check_mutually_reduced(g, std::span<const std::vector<E>>(singletons), opt);
  if (!v.holds) throw HypothesisUnverified("the x_il are not mutually reduced");
  std::vector<std::pair<E, E>> pairs;
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    for (const auto& x : x_list[i]) {
      for (const auto& f : s_list[i]) pairs.emplace_back(x, f);
    }
  }
  return make_pair_table(g, std::move(pairs), m, opt.parallel);
}

template <GroupModel G, class F>
struct SupportInstance {
  std::array<typename G::Element, 3> b_s;
  std::array<typename G::Element, 3> x_bt;
  RingElement<G, F> phi_b;
  RingElement<G, F> u_b;
};

struct SupportInstanceReport {
  std::size_t f_size = 0;  // |F_b|
  std::size_t h_size = 0;  // |H_b|
  std::size_t m_b = 0;     // |Supp(E_b)|
  std::size_t isolated = 0;
  bool m_b_exceeds_h = false;
};

struct SupportReport {
  std::vector<SupportInstanceReport> instances;
  std::size_t supp_w1 = 0;
  std::size_t supp_w2 = 0;
  std::size_t supp_w = 0;
  std::size_t sum_m = 0;
  std::size_t sum_h = 0;
  bool w1_exceeds_sum_m = false;
  bool chain_holds = false;  // |Supp(w)| >= |Supp(w1)| - |Supp(w2)| > sum m_b - sum |H_b| > 0
  bool supp_w_at_least_2 = false;

  bool holds() const { return w1_exceeds_sum_m && chain_holds && supp_w_at_least_2; }
};

/// w = sum eps1(b) u_b over the instances with u_b != 0, split as w1 + w2.
/// Verifies the hypotheses first (distinct, mutually reduced b_s; conjugated
/// difference sets of each Supp(phi_b) mutually reduced up to opt.max_len) and
/// throws HypothesisUnverified when one fails or every u_b is zero.
template <GroupModel G, class F>
SupportReport support_bound_experiment(const G& g, std::span<const SupportInstance<G, F>> instances,
                                       const SearchOptions& opt = {}) {
  using E = typename G::Element;
  std::vector<const SupportInstance<G, F>*> active;
  for (const auto& inst : instances) {
    if (!inst.u_b.is_zero()) active.push_back(&inst);
  }
  if (active.empty()) throw HypothesisUnverified("every u_b is zero, so the index set A is empty");
  const F field = active.front()->u_b.field();

  std::vector<E> all_b;
  for (const auto* inst : active) all_b.insert(all_b.end(), inst->b_s.begin(), inst->b_s.end());
  detail::require_distinct(g, std::span<const E>(all_b), "the b_s", true);
  std::vector<std::vector<E>> singletons;
  for (const auto& b : all_b) singletons.push_back({b});
  if (!check_mutually_reduced(g, std::span<const std::vector<E>>(singletons), opt).holds) {
    throw HypothesisUnverified("the b_s are not mutually reduced");
  }

  SupportReport rep;
  RingElement<G, F> w1(g, field);
  RingElement<G, F> w2(g, field);
  for (const auto* inst : active) {
    const auto fb = inst->phi_b.support();
    if (fb.empty()) throw HypothesisUnverified("phi(b) is zero");
    detail::require_distinct(g, std::span<const E>(inst->x_bt.begin(), inst->x_bt.end()), "the x_bt", false);
    std::vector<E> mb;
    for (const auto& f : fb) mb.push_back(g.invert(f));
    auto diffs = difference_set(g, std::span<const E>(fb));
    mb.insert(mb.end(), diffs.begin(), diffs.end());
    std::vector<std::vector<E>> conj;
    for (const auto& x : inst->x_bt) conj.push_back(conjugate_set(g, std::span<const E>(mb), x));
    if (!check_mutually_reduced(g, std::span<const std::vector<E>>(conj), opt).holds) {
      throw HypothesisUnverified("the conjugated M_b are not mutually reduced");
    }

    // E_b = sum_t x_t^-1 phi x_t u_b; eps(b) u_b = sum_s b_s E_b.
    RingElement<G, F> eb(g, field);
    std::vector<std::pair<E, E>> pairs;
    for (const auto& x : inst->x_bt) {
      const auto xi = g.invert(x);
      RingElement<G, F> conj_phi(g, field);
      for (const auto& [k, t] : inst->phi_b.terms()) conj_phi.add_term(g.multiply(xi, g.multiply(t.element, x)), t.coefficient);
      eb = eb + conj_phi * inst->u_b;
      for (const auto& [k1, t1] : inst->phi_b.terms()) {
        for (const auto& [k2, t2] : inst->u_b.terms()) {
          pairs.emplace_back(g.multiply(xi, g.multiply(t1.element, x)), t2.element);
        }
      }
    }
    const auto table = make_pair_table(g, std::move(pairs), inst->u_b.support_size(), opt.parallel);
    SupportInstanceReport r;
    r.f_size = fb.size();
    r.h_size = inst->u_b.support_size();
    r.m_b = eb.support_size();
    r.isolated = table.isolated.size();
    r.m_b_exceeds_h = r.m_b > r.h_size;
    rep.instances.push_back(r);
    rep.sum_m += r.m_b;
    rep.sum_h += r.h_size;

    for (const auto& b : inst->b_s) w1 = w1 + RingElement<G, F>::monomial(g, b, field.one(), field) * eb;
    w2 = w2 + inst->u_b;
  }
  const auto w = w1 + w2;
  rep.supp_w1 = w1.support_size();
  rep.supp_w2 = w2.support_size();
  rep.supp_w = w.support_size();
  rep.w1_exceeds_sum_m = rep.supp_w1 > rep.sum_m;
  const long diff = static_cast<long>(rep.supp_w1) - static_cast<long>(rep.supp_w2);
  rep.chain_holds = static_cast<long>(rep.supp_w) >= diff && diff > static_cast<long>(rep.sum_m) - static_cast<long>(rep.sum_h) &&
                    rep.sum_m > rep.sum_h;
  rep.supp_w_at_least_2 = rep.supp_w >= 2;
  return rep;
}

}  // namespace srkit
