#include "srkit/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "srkit/error.hpp"

namespace srkit {

namespace {

constexpr long kMaxExponent = 1000000;

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word Word::from_letters(std::span<const Letter> raw) {
  Word w;
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw Error("letter 0 is not a valid letter");
    push_reduced(w.letters_, l);
  }
  return w;
}

Word Word::generator(int gen, int exponent) {
  Word w;
  const Letter l = make_letter(gen, exponent >= 0 ? 1 : -1);
  w.letters_.assign(static_cast<std::size_t>(exponent >= 0 ? exponent : -exponent), l);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.resize(letters_.size());
  std::transform(letters_.rbegin(), letters_.rend(), w.letters_.begin(), [](Letter l) { return -l; });
  return w;
}

Word Word::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  // Conjugate core out so the power is linear in size.
  auto [core, conj] = cyclic_reduce(*this);
  Word p;
  p.letters_.reserve(core.length() * static_cast<std::size_t>(exponent));
  for (long i = 0; i < exponent; ++i) {
    p.letters_.insert(p.letters_.end(), core.letters_.begin(), core.letters_.end());
  }
  return p.conjugate_by(conj);
}

Word Word::conjugate_by(const Word& x) const {
  Word r = x.inverse();
  r *= *this;
  r *= x;
  return r;
}

long Word::exponent_sum(int gen) const {
  long s = 0;
  for (Letter l : letters_) {
    if (generator_of(l) == gen) s += sign_of(l);
  }
  return s;
}

int Word::max_generator() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, generator_of(l));
  return m;
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t cancel = 0;
  const std::size_t n = letters_.size();
  const std::size_t limit = std::min(n, rhs.letters_.size());
  while (cancel < limit && letters_[n - 1 - cancel] == -rhs.letters_[cancel]) ++cancel;
  letters_.resize(n - cancel);
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), rhs.letters_.end());
  return *this;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto la = a.letters();
  const auto lb = b.letters();
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i] != lb[i]) return letter_rank(la[i]) < letter_rank(lb[i]);
  }
  return false;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
    h *= 0x100000001b3ULL;
  }
  return h;
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto l = w.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  CyclicReduction r;
  r.core = Word::from_letters(l.subspan(i, j - i));
  // w = p core p^-1 with p = l[0..i); so conjugator = p^-1.
  r.conjugator = Word::from_letters(l.subspan(0, i)).inverse();
  return r;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'';
  });
}

std::vector<Word> reduced_words_up_to(std::size_t rank, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t g = 0; g < rank; ++g) {
        for (int sign : {1, -1}) {
          const Letter l = make_letter(static_cast<int>(g), sign);
          if (!out[i].is_identity() && out[i].back() == -l) continue;
          out.push_back(out[i] * Word::from_letters(std::span<const Letter>(&l, 1)));
        }
      }
    }
    begin = end;
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i])) throw Error("invalid generator name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], static_cast<int>(i)).second) {
      throw Error("duplicate generator name '" + names_[i] + "'");
    }
  }
}

std::optional<int> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::id(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw UnknownGenerator("unknown generator '" + std::string(name) + "'");
}

std::vector<Letter> Alphabet::parse_letters(std::string_view text) const {
  std::vector<Letter> out;
  std::size_t pos = 0;
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (pos < text.size()) {
    if (is_space(text[pos])) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos])) ++pos;
    std::string_view token = text.substr(start, pos - start);
    const std::size_t column = start + 1;

    if (token == "1") continue;
    std::string_view symbol = token;
    long exponent = 1;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      symbol = token.substr(0, caret);
      std::string_view exp = token.substr(caret + 1);
      if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
      if (ec != std::errc() || ptr != exp.data() + exp.size() || exp.empty() || exponent == 0 ||
          exponent > kMaxExponent || exponent < -kMaxExponent) {
        throw ParseError("bad exponent in '" + std::string(token) + "'", 1, column + caret + 1);
      }
    }
    if (!is_identifier(symbol)) {
      throw ParseError("expected a generator, got '" + std::string(token) + "'", 1, column);
    }
    auto gen = find(symbol);
    if (!gen) throw UnknownGenerator("unknown generator '" + std::string(symbol) + "' at column " + std::to_string(column));
    const Letter l = make_letter(*gen, exponent >= 0 ? 1 : -1);
    for (long k = 0; k < (exponent >= 0 ? exponent : -exponent); ++k) out.push_back(l);
  }
  return out;
}

std::string Alphabet::format(std::span<const Letter> letters) const {
  if (letters.empty()) return "1";
  std::string s;
  for (Letter l : letters) {
    if (!s.empty()) s += ' ';
    s += name(generator_of(l));
    if (l < 0) s += "^-1";
  }
  return s;
}

void FreeGroup::check(const Word& u) const {
  if (!alphabet_.covers(u)) {
    throw AlphabetMismatch("word uses generator " + std::to_string(u.max_generator()) +
                           " outside an alphabet of rank " + std::to_string(rank()));
  }
}

Word FreeGroup::reduce(std::span<const Letter> raw) const {
  for (Letter l : raw) {
    if (l == 0 || generator_of(l) >= static_cast<int>(rank())) {
      throw UnknownGenerator("letter " + std::to_string(l) + " outside the alphabet");
    }
  }
  return Word::from_letters(raw);
}

Word FreeGroup::multiply(const Word& u, const Word& v) const {
  check(u);
  check(v);
  return u * v;
}

Word FreeGroup::invert(const Word& u) const {
  check(u);
  return u.inverse();
}

Word FreeGroup::conjugate(const Word& g, const Word& x) const {
  check(g);
  check(x);
  return g.conjugate_by(x);
}

}  // namespace srkit
