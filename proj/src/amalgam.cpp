#include "srkit/amalgam.hpp"

#include <algorithm>
#include <cctype>

#include "srkit/error.hpp"

namespace srkit {

namespace {

Alphabet combined(const Alphabet& a, const Alphabet& b) {
  auto names = a.names();
  for (const auto& n : b.names()) {
    if (a.find(n)) throw AlphabetMismatch("generator '" + n + "' appears in both factors");
    names.push_back(n);
  }
  return Alphabet(std::move(names));
}

SubgroupAutomaton free_subgroup(const Alphabet& alpha, const std::vector<Word>& basis, char name) {
  for (const auto& w : basis) {
    if (!alpha.covers(w)) throw AlphabetMismatch(std::string("H generator outside factor ") + name);
  }
  auto h = SubgroupAutomaton::from_generators(alpha.size(), basis);
  if (!h.basis_is_free()) throw RedundantBasis(std::string("basis of H in ") + name + " is not a free basis");
  return h;
}

std::optional<Word> first_outside(const Alphabet& alpha, const SubgroupAutomaton& h, std::size_t len) {
  for (const auto& w : reduced_words_up_to(alpha.size(), len)) {
    if (!h.contains(w)) return w;
  }
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(SyllableType t) {
  switch (t) {
    case SyllableType::H: return "H";
    case SyllableType::AA: return "AA";
    case SyllableType::AB: return "AB";
    case SyllableType::BA: return "BA";
    case SyllableType::BB: return "BB";
  }
  return "?";
}

const char* to_string(Lemma45Kind k) {
  switch (k) {
    case Lemma45Kind::Sandwich: return "sandwich";
    case Lemma45Kind::Power: return "power";
    case Lemma45Kind::Neither: return "neither";
  }
  return "?";
}

const char* to_string(LargeKind k) {
  switch (k) {
    case LargeKind::A: return "A-large";
    case LargeKind::B: return "B-large";
    case LargeKind::H: return "H-large";
  }
  return "?";
}

AmalgamPresentation::AmalgamPresentation(Alphabet a, Alphabet b, std::vector<Word> h_in_a, std::vector<Word> h_in_b,
                                         std::size_t witness_search_len)
    : a_(std::move(a)), b_(std::move(b)), full_(combined(a_, b_)) {
  if (h_in_a.size() != h_in_b.size()) throw StructureMismatch("H bases in A and B have different sizes");
  ha_ = free_subgroup(a_, h_in_a, 'A');
  hb_ = free_subgroup(b_, h_in_b, 'B');
  a0_ = first_outside(a_, ha_, witness_search_len);
  b0_ = first_outside(b_, hb_, witness_search_len);
}

Word AmalgamPresentation::transfer(Factor from, Factor to, const Word& u) const {
  if (from == to) return u;
  auto expr = h(from).express(u);
  if (!expr) throw PreconditionViolated("element is not in H");
  return SubgroupAutomaton::substitute(*expr, h(to).basis());
}

AmalgamWord AmalgamPresentation::reduce(std::span<const AmalgamSyllable> raw) const {
  std::vector<AmalgamSyllable> st;
  Word prefix;  // H-element over A, only while the stack is empty
  auto settle = [&] {
    while (!st.empty() && in_h(st.back().factor, st.back().u)) {
      AmalgamSyllable x = std::move(st.back());
      st.pop_back();
      if (st.empty()) {
        prefix = transfer(x.factor, Factor::A, x.u);
      } else {
        st.back().u *= transfer(x.factor, st.back().factor, x.u);
      }
    }
  };
  for (const auto& piece : raw) {
    if (!factor_alphabet(piece.factor).covers(piece.u)) {
      throw AlphabetMismatch(std::string("word outside factor ") + factor_name(piece.factor));
    }
    if (piece.u.is_identity()) continue;
    if (st.empty()) {
      st.push_back({piece.factor, transfer(Factor::A, piece.factor, prefix) * piece.u});
      prefix = Word{};
    } else if (st.back().factor == piece.factor) {
      st.back().u *= piece.u;
    } else if (in_h(piece.factor, piece.u)) {
      st.back().u *= transfer(piece.factor, st.back().factor, piece.u);
    } else {
      st.push_back(piece);
      continue;
    }
    settle();
  }
  // Right to left: keep the coset representative, hand the H-part leftward.
  for (std::size_t i = st.size(); i-- > 1;) {
    auto& s = st[i];
    Word rep = h(s.factor).coset_representative(s.u);
    Word hp = s.u * rep.inverse();
    s.u = std::move(rep);
    st[i - 1].u *= transfer(s.factor, st[i - 1].factor, hp);
  }
  AmalgamWord out;
  out.syllables = std::move(st);
  if (out.syllables.empty()) out.h = std::move(prefix);
  return out;
}

AmalgamWord AmalgamPresentation::element(Factor f, const Word& u) const {
  const AmalgamSyllable s{f, u};
  return reduce(std::span<const AmalgamSyllable>(&s, 1));
}

std::vector<AmalgamSyllable> AmalgamPresentation::pieces(const AmalgamWord& x) const {
  if (x.syllables.empty()) {
    if (x.h.is_identity()) return {};
    return {{Factor::A, x.h}};
  }
  return x.syllables;
}

AmalgamWord AmalgamPresentation::multiply(const AmalgamWord& x, const AmalgamWord& y) const {
  auto raw = pieces(x);
  auto rest = pieces(y);
  raw.insert(raw.end(), rest.begin(), rest.end());
  return reduce(raw);
}

AmalgamWord AmalgamPresentation::inverse(const AmalgamWord& x) const {
  auto raw = pieces(x);
  std::reverse(raw.begin(), raw.end());
  for (auto& s : raw) s.u = s.u.inverse();
  return reduce(raw);
}

std::vector<AmalgamSyllable> AmalgamPresentation::parse_pieces(std::string_view text) const {
  std::vector<AmalgamSyllable> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    if (bar == std::string_view::npos) bar = text.size();
    std::string_view seg = trim(text.substr(start, bar - start));
    const std::size_t column = start + 1;
    if (seg.empty()) {
      if (bar < text.size() || !out.empty() || start > 0) throw ParseError("empty segment", 1, column);
    } else if (seg.size() >= 2 && (seg[0] == 'A' || seg[0] == 'B') && trim(seg.substr(1)).starts_with(':')) {
      const Factor f = seg[0] == 'A' ? Factor::A : Factor::B;
      std::string_view body = trim(trim(seg.substr(1)).substr(1));
      std::vector<Letter> letters;
      try {
        letters = full_.parse_letters(body);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), 1, column);
      }
      std::vector<Letter> local;
      for (Letter l : letters) {
        const int g = generator_of(l);
        const bool in_a = g < static_cast<int>(a_.size());
        if (in_a != (f == Factor::A)) {
          throw ParseError("generator '" + full_.name(g) + "' does not belong to factor " + factor_name(f), 1, column);
        }
        local.push_back(make_letter(in_a ? g : g - static_cast<int>(a_.size()), sign_of(l)));
      }
      out.push_back({f, Word::from_letters(local)});
    } else {
      const auto letters = full_.parse_letters(seg);
      for (Letter l : letters) {
        const int g = generator_of(l);
        const Factor f = g < static_cast<int>(a_.size()) ? Factor::A : Factor::B;
        const Letter local = make_letter(f == Factor::A ? g : g - static_cast<int>(a_.size()), sign_of(l));
        if (out.empty() || out.back().factor != f) out.push_back({f, Word{}});
        out.back().u *= Word::from_letters(std::span<const Letter>(&local, 1));
      }
    }
    if (bar == text.size()) break;
    start = bar + 1;
  }
  return out;
}

AmalgamWord AmalgamPresentation::parse(std::string_view text) const { return reduce(parse_pieces(text)); }

std::string AmalgamPresentation::format(const AmalgamWord& x) const {
  const auto ps = pieces(x);
  if (ps.empty()) return "1";
  std::string s;
  for (const auto& p : ps) {
    if (!s.empty()) s += " | ";
    s += factor_name(p.factor);
    s += ": ";
    s += factor_alphabet(p.factor).format(p.u);
  }
  return s;
}

std::vector<Letter> AmalgamPresentation::flatten(const AmalgamWord& x) const {
  std::vector<Letter> out;
  for (const auto& p : pieces(x)) {
    const int shift = p.factor == Factor::A ? 0 : static_cast<int>(a_.size());
    for (Letter l : p.u.letters()) out.push_back(make_letter(generator_of(l) + shift, sign_of(l)));
  }
  return out;
}

SyllableType type_of(const AmalgamWord& x) {
  if (x.syllables.empty()) return SyllableType::H;
  const bool first_a = x.syllables.front().factor == Factor::A;
  const bool last_a = x.syllables.back().factor == Factor::A;
  if (first_a) return last_a ? SyllableType::AA : SyllableType::AB;
  return last_a ? SyllableType::BA : SyllableType::BB;
}

DaggerWitness dagger_check(const AmalgamPresentation& p, std::size_t search_len) {
  const auto& ha = p.h(Factor::A);
  const auto words = reduced_words_up_to(p.factor_alphabet(Factor::A).size(), search_len);
  auto b = first_outside(p.factor_alphabet(Factor::B), p.h(Factor::B), search_len);
  if (!b) throw NotFoundAtBound("no element of B\\H up to length " + std::to_string(search_len));
  std::optional<Word> a;
  for (const auto& w : words) {
    if (w.is_identity() || ha.contains(w)) continue;
    if (ha.conjugate(w).intersect(ha).is_trivial()) {
      a = w;
      break;
    }
  }
  if (!a) throw NotFoundAtBound("no a in A\\H with a^-1 H a n H = 1 up to length " + std::to_string(search_len));
  for (const auto& w : words) {
    if (w.is_identity() || ha.contains(w)) continue;
    if ((*a * w).is_identity()) continue;
    return {*a, w, *b, !ha.contains(*a * w), !ha.contains(w * *a)};
  }
  throw NotFoundAtBound("no a_* in A\\H with a a_* != 1 up to length " + std::to_string(search_len));
}

Lemma45Result lemma45_classify(const AmalgamPresentation& p, const Word& a, const Word& b, std::size_t m,
                               const AmalgamWord& f) {
  if (f.syllables.empty() && f.h.is_identity()) throw PreconditionViolated("f must not be the identity");
  if (p.in_h(Factor::A, a)) throw PreconditionViolated("a must lie in A\\H");
  if (p.in_h(Factor::B, b)) throw PreconditionViolated("b must lie in B\\H");
  if (m <= f.length() + 1) throw PreconditionViolated("m must exceed l(f) + 1");
  const std::vector<AmalgamSyllable> xs{{Factor::A, a.inverse()}, {Factor::B, b}};
  const AmalgamWord x = p.reduce(xs);  // a^-1 b
  const AmalgamWord y = p.inverse(x);  // b^-1 a
  AmalgamWord w = f;
  for (std::size_t i = 0; i < m; ++i) w = p.multiply(x, p.multiply(w, y));
  Lemma45Result r{Lemma45Kind::Neither, w, {}, 0, 0};
  AmalgamWord v = p.multiply(y, p.multiply(w, x));
  const bool v_trivial = v.syllables.empty() && v.h.is_identity();
  if (!v_trivial && w.length() == v.length() + x.length() + y.length()) {
    r.kind = Lemma45Kind::Sandwich;
    r.v = std::move(v);
    return r;
  }
  if (w.length() > 0 && w.length() % y.length() == 0) {
    const std::size_t k = w.length() / y.length();
    AmalgamWord pw;
    for (std::size_t i = 0; i < k; ++i) pw = p.multiply(pw, y);
    if (pw == w) {
      r.kind = Lemma45Kind::Power;
      r.sign = 1;
      r.k = k;
    } else if (p.inverse(pw) == w) {
      r.kind = Lemma45Kind::Power;
      r.sign = -1;
      r.k = k;
    }
  }
  return r;
}

Theorem44Witness theorem44_witness(const AmalgamPresentation& p, std::span<const AmalgamWord> m,
                                   const DaggerWitness& d, WitnessVariant variant) {
  if (m.empty()) throw EmptySet("M is empty");
  if (variant == WitnessVariant::Direct && !d.a_astar_outside_h) {
    throw VariantMismatch("the direct form needs a a_* outside H");
  }
  if (variant == WitnessVariant::Inverted && !d.astar_a_outside_h) {
    throw VariantMismatch("the inverted form needs a_* a outside H");
  }
  std::size_t l = 0;
  for (const auto& f : m) {
    if (f.syllables.empty() && f.h.is_identity()) throw PreconditionViolated("M contains the identity");
    l = std::max(l, f.length());
  }
  // The inverted form is the direct form with a, a_* inverted.
  const Word a = variant == WitnessVariant::Direct ? d.a : d.a.inverse();
  const Word as = variant == WitnessVariant::Direct ? d.a_star : d.a_star.inverse();
  const std::vector<AmalgamSyllable> ba{{Factor::B, d.b.inverse()}, {Factor::A, a}};
  const AmalgamWord unit = p.reduce(ba);
  const std::vector<AmalgamSyllable> mid{{Factor::A, as}, {Factor::B, d.b.inverse()}, {Factor::A, as.inverse()}};
  const AmalgamWord middle = p.reduce(mid);
  Theorem44Witness out{{}, l, variant};
  for (std::size_t i = 1; i <= 3; ++i) {
    AmalgamWord pw;
    for (std::size_t k = 0; k < l + i; ++k) pw = p.multiply(pw, unit);
    out.x[i - 1] = p.multiply(pw, p.multiply(middle, pw));
  }
  return out;
}

Corollary46Generators corollary46_generators(const AmalgamPresentation& p, LargeKind kind,
                                             std::span<const Word> elements, const DaggerWitness& d) {
  if (elements.empty()) throw InsufficientElements("no elements supplied");
  std::vector<Word> seen;
  for (const auto& e : elements) {
    if (std::find(seen.begin(), seen.end(), e) != seen.end()) throw InsufficientElements("elements are not distinct");
    seen.push_back(e);
    const bool ok = kind == LargeKind::A   ? !p.in_h(Factor::A, e)
                    : kind == LargeKind::B ? !p.in_h(Factor::B, e)
                                           : (!e.is_identity() && p.in_h(Factor::A, e));
    if (!ok) throw InsufficientElements(std::string("element outside the ") + to_string(kind) + " stratum");
  }
  const AmalgamWord a = p.element(Factor::A, d.a);
  const AmalgamWord b = p.element(Factor::B, d.b);
  const AmalgamWord ab = p.multiply(a, b);
  Corollary46Generators out;
  for (const auto& e : elements) {
    if (kind == LargeKind::A) {
      const AmalgamWord aib = p.multiply(p.element(Factor::A, e), b);
      out.gens.push_back(p.multiply(aib, p.multiply(p.multiply(ab, ab), aib)));
    } else if (kind == LargeKind::B) {
      const AmalgamWord abi = p.multiply(a, p.element(Factor::B, e));
      out.gens.push_back(p.multiply(abi, p.multiply(abi, abi)));
    } else {
      const AmalgamWord hi = p.element(Factor::A, e);
      const AmalgamWord x = p.multiply(p.inverse(a), p.multiply(hi, a));
      const AmalgamWord y = p.multiply(p.inverse(b), p.multiply(x, b));
      out.gens.push_back(p.multiply(x, p.inverse(y)));
      out.pairing.emplace_back(x, y);
    }
  }
  return out;
}

std::vector<Word> stratum_elements(const AmalgamPresentation& p, LargeKind kind, std::size_t k,
                                   std::size_t search_len) {
  const Factor f = kind == LargeKind::B ? Factor::B : Factor::A;
  std::vector<Word> out;
  for (const auto& w : reduced_words_up_to(p.factor_alphabet(f).size(), search_len)) {
    if (out.size() == k) break;
    if (w.is_identity()) continue;
    const bool member = p.in_h(f, w);
    if (kind == LargeKind::H ? member : !member) out.push_back(w);
  }
  if (out.size() < k) {
    throw InsufficientElements("only " + std::to_string(out.size()) + " elements of the " + to_string(kind) +
                               " stratum up to length " + std::to_string(search_len));
  }
  return out;
}

}  // namespace srkit
