#include "srkit/hnn.hpp"

#include "srkit/error.hpp"

namespace srkit {

namespace {

Alphabet with_stable(const Alphabet& base, const std::string& stable) {
  if (base.find(stable)) throw PreconditionViolated("stable letter '" + stable + "' is also a base generator");
  auto names = base.names();
  names.push_back(stable);
  return Alphabet(std::move(names));
}

SubgroupAutomaton free_subgroup(const Alphabet& base, const std::vector<Word>& basis, const char* name) {
  for (const auto& w : basis) {
    if (!base.covers(w)) throw AlphabetMismatch(std::string(name) + " generator outside the base alphabet");
  }
  auto h = SubgroupAutomaton::from_generators(base.size(), basis);
  if (!h.basis_is_free()) throw RedundantBasis(std::string("basis of ") + name + " is not a free basis");
  return h;
}

void guard(const HnnPresentation& p, const Word& w) {
  if (w.length() > p.max_base_length()) {
    throw BudgetExceeded("base word grew beyond " + std::to_string(p.max_base_length()) + " letters");
  }
}

}  // namespace

HnnPresentation::HnnPresentation(Alphabet base, std::vector<Word> a_basis, std::vector<Word> b_basis,
                                 std::string stable, std::size_t max_base_length)
    : base_(std::move(base)),
      full_(with_stable(base_, stable)),
      max_base_length_(max_base_length) {
  if (a_basis.size() != b_basis.size()) {
    throw StructureMismatch("A and B bases have different sizes");
  }
  a_ = free_subgroup(base_, a_basis, "A");
  b_ = free_subgroup(base_, b_basis, "B");
}

Word HnnPresentation::phi(const Word& g) const {
  auto expr = a_.express(g);
  if (!expr) throw PreconditionViolated("phi applied to an element outside A");
  Word r = SubgroupAutomaton::substitute(*expr, b_.basis());
  guard(*this, r);
  return r;
}

Word HnnPresentation::phi_inverse(const Word& g) const {
  auto expr = b_.express(g);
  if (!expr) throw PreconditionViolated("phi^-1 applied to an element outside B");
  Word r = SubgroupAutomaton::substitute(*expr, a_.basis());
  guard(*this, r);
  return r;
}

HnnWord HnnPresentation::from_letters(std::span<const Letter> letters) const {
  HnnWord w;
  std::vector<Letter> current;
  auto flush = [&] {
    Word g = Word::from_letters(current);
    current.clear();
    if (w.syllables.empty()) {
      w.g0 = std::move(g);
    } else {
      w.syllables.back().g = std::move(g);
    }
  };
  for (Letter l : letters) {
    if (generator_of(l) > stable_gen()) throw UnknownGenerator("letter outside the HNN alphabet");
    if (generator_of(l) == stable_gen()) {
      flush();
      w.syllables.push_back({sign_of(l), Word{}});
    } else {
      current.push_back(l);
    }
  }
  flush();
  return w;
}

HnnWord HnnPresentation::parse(std::string_view text) const { return from_letters(full_.parse_letters(text)); }

std::vector<Letter> HnnPresentation::flatten(const HnnWord& w) const {
  std::vector<Letter> out(w.g0.letters().begin(), w.g0.letters().end());
  for (const auto& s : w.syllables) {
    out.push_back(make_letter(stable_gen(), s.eps));
    out.insert(out.end(), s.g.letters().begin(), s.g.letters().end());
  }
  return out;
}

HnnWord HnnPresentation::stable(int exponent) const {
  HnnWord w;
  for (int i = 0; i < (exponent >= 0 ? exponent : -exponent); ++i) w.syllables.push_back({exponent >= 0 ? 1 : -1, {}});
  return w;
}

HnnWord britton_reduce(const HnnPresentation& p, const HnnWord& w) {
  HnnWord out;
  out.g0 = w.g0;
  auto tail = [&]() -> Word& { return out.syllables.empty() ? out.g0 : out.syllables.back().g; };
  for (const auto& s : w.syllables) {
    if (!out.syllables.empty()) {
      const auto& top = out.syllables.back();
      if (top.eps == -1 && s.eps == 1 && p.in_a(top.g)) {
        Word c = p.phi(top.g);
        out.syllables.pop_back();
        tail() *= c * s.g;
        guard(p, tail());
        continue;
      }
      if (top.eps == 1 && s.eps == -1 && p.in_b(top.g)) {
        Word c = p.phi_inverse(top.g);
        out.syllables.pop_back();
        tail() *= c * s.g;
        guard(p, tail());
        continue;
      }
    }
    out.syllables.push_back(s);
  }
  return out;
}

bool is_reduced(const HnnPresentation& p, const HnnWord& w) {
  for (std::size_t i = 0; i + 1 < w.syllables.size(); ++i) {
    const auto& s = w.syllables[i];
    const int next = w.syllables[i + 1].eps;
    if (s.eps == -1 && next == 1 && p.in_a(s.g)) return false;
    if (s.eps == 1 && next == -1 && p.in_b(s.g)) return false;
  }
  return true;
}

HnnWord normal_form(const HnnPresentation& p, const HnnWord& w) {
  HnnWord r = britton_reduce(p, w);
  // t^-1 u = phi(u) t^-1 for u in A, and t u = phi^-1(u) t for u in B.
  for (std::size_t i = r.syllables.size(); i-- > 0;) {
    auto& s = r.syllables[i];
    const auto& sub = s.eps == -1 ? p.a() : p.b();
    Word rep = sub.coset_representative(s.g);
    Word u = s.g * rep.inverse();
    s.g = std::move(rep);
    if (u.is_identity()) continue;
    Word moved = s.eps == -1 ? p.phi(u) : p.phi_inverse(u);
    Word& left = i == 0 ? r.g0 : r.syllables[i - 1].g;
    left *= moved;
    guard(p, left);
  }
  return r;
}

bool is_identity(const HnnPresentation& p, const HnnWord& w) {
  const HnnWord r = britton_reduce(p, w);
  return r.syllables.empty() && r.g0.is_identity();
}

HnnWord concat(const HnnWord& u, const HnnWord& v) {
  HnnWord r = u;
  Word& tail = r.syllables.empty() ? r.g0 : r.syllables.back().g;
  tail *= v.g0;
  r.syllables.insert(r.syllables.end(), v.syllables.begin(), v.syllables.end());
  return r;
}

HnnWord inverse(const HnnWord& w) {
  HnnWord r;
  const std::size_t n = w.syllables.size();
  r.g0 = n == 0 ? w.g0.inverse() : w.syllables.back().g.inverse();
  for (std::size_t i = n; i-- > 0;) {
    const Word& next = i == 0 ? w.g0 : w.syllables[i - 1].g;
    r.syllables.push_back({-w.syllables[i].eps, next.inverse()});
  }
  return r;
}

std::optional<Theorem41Hypotheses> theorem41_hypotheses(const HnnPresentation& p, std::size_t search_len) {
  if (p.a().is_trivial() || p.b().is_trivial()) throw PreconditionViolated("A and B must be nontrivial");
  const auto words = reduced_words_up_to(p.base().size(), search_len);
  std::optional<Word> outside;
  for (const auto& w : words) {
    if (!p.in_a(w) && !p.in_b(w)) {
      outside = w;
      break;
    }
  }
  if (!outside) return std::nullopt;
  for (const auto& g : words) {
    if (p.a().conjugate(g).intersect(p.a()).is_trivial()) return Theorem41Hypotheses{g, 'A', *outside};
    if (p.b().conjugate(g).intersect(p.b()).is_trivial()) return Theorem41Hypotheses{g, 'B', *outside};
  }
  return std::nullopt;
}

Theorem41Witness theorem41_witness(const HnnPresentation& p, std::span<const HnnWord> m, const Word& g,
                                   const Word& h) {
  if (!p.base().covers(g) || !p.base().covers(h)) throw AlphabetMismatch("g and h must be base words");
  if (p.in_a(h) || p.in_b(h)) throw PreconditionViolated("h must lie outside A and B");
  char side = 0;
  if (!p.a().is_trivial() && p.a().conjugate(g).intersect(p.a()).is_trivial()) {
    side = 'A';
  } else if (!p.b().is_trivial() && p.b().conjugate(g).intersect(p.b()).is_trivial()) {
    side = 'B';
  } else {
    throw PreconditionViolated("g satisfies neither g^-1 A g n A = 1 nor g^-1 B g n B = 1");
  }
  long q = 1;
  for (const auto& u : m) {
    const HnnWord nf = normal_form(p, u);
    if (nf.syllables.empty() && nf.g0.is_identity()) throw PreconditionViolated("M contains the identity");
    q = std::max(q, static_cast<long>(nf.t_length()) + 1);
  }
  // Exchanging t and t^-1 swaps the roles of A and B.
  const int s = side == 'A' ? 1 : -1;
  Theorem41Witness out{{}, q, side};
  for (int i = 1; i <= 3; ++i) {
    const int qi = static_cast<int>(q) + i;
    HnnWord x = p.stable(-s * qi);
    x = concat(x, p.base_element(g));
    x = concat(x, p.stable(s));
    x = concat(x, p.base_element(h.inverse()));
    x = concat(x, p.stable(s * qi));
    out.x[static_cast<std::size_t>(i - 1)] = normal_form(p, x);
  }
  return out;
}

}  // namespace srkit
