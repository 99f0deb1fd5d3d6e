#pragma once

// Free-group word calculus over a finite alphabet.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace srkit {

/// A letter is a nonzero integer: generator g is +(g+1), its inverse -(g+1).
using Letter = std::int32_t;

constexpr Letter make_letter(int generator, int sign) {
  return sign > 0 ? generator + 1 : -(generator + 1);
}
constexpr int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }
constexpr int sign_of(Letter l) { return l > 0 ? 1 : -1; }

/// Position of a letter in the order a < a^-1 < b < b^-1 < ... used for shortlex.
constexpr int letter_rank(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

/// A freely reduced word. Every constructor reduces, so equality of Words is
/// equality of free-group elements.
class Word {
public:
  Word() = default;

  static Word from_letters(std::span<const Letter> raw);
  static Word generator(int gen, int exponent = 1);

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word pow(long exponent) const;
  /// x^-1 * this * x
  Word conjugate_by(const Word& x) const;
  long exponent_sum(int gen) const;
  /// Largest generator index used, or -1 for the identity.
  int max_generator() const;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) {
    lhs *= rhs;
    return lhs;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

private:
  std::vector<Letter> letters_;
};

/// Shorter words first, ties broken by letter_rank lexicographically.
bool shortlex_less(const Word& a, const Word& b);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// Returns (core, conjugator) with core cyclically reduced and
/// w == conjugator^-1 * core * conjugator.
CyclicReduction cyclic_reduce(const Word& w);

/// Named generators. Text syntax: whitespace separated letters, each an
/// identifier optionally followed by ^n (n a nonzero integer); "1" is the identity.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(int gen) const { return names_.at(static_cast<std::size_t>(gen)); }
  std::optional<int> find(std::string_view name) const;
  int id(std::string_view name) const;

  /// Letters exactly as written, not reduced.
  std::vector<Letter> parse_letters(std::string_view text) const;
  Word parse(std::string_view text) const { return Word::from_letters(parse_letters(text)); }

  std::string format(std::span<const Letter> letters) const;
  std::string format(const Word& w) const { return format(w.letters()); }

  /// True when every letter of w names a generator of this alphabet.
  bool covers(const Word& w) const { return w.max_generator() < static_cast<int>(names_.size()); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

bool is_identifier(std::string_view s);

/// Every reduced word of length <= max_len over `rank` generators, in shortlex order.
std::vector<Word> reduced_words_up_to(std::size_t rank, std::size_t max_len);

/// Free group on a declared alphabet; the Word-valued group model used by the
/// generic searches.
class FreeGroup {
public:
  using Element = Word;

  FreeGroup() = default;
  explicit FreeGroup(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t rank() const noexcept { return alphabet_.size(); }

  Word reduce(std::span<const Letter> raw) const;
  Word multiply(const Word& u, const Word& v) const;
  Word invert(const Word& u) const;
  Word conjugate(const Word& g, const Word& x) const;
  Word identity() const { return {}; }
  bool is_identity(const Word& u) const { return u.is_identity(); }
  std::size_t length(const Word& u) const { return u.length(); }
  std::size_t norm(const Word& u) const { return u.length(); }
  const Word& canonical(const Word& u) const { return u; }
  std::vector<Letter> key(const Word& u) const { return {u.letters().begin(), u.letters().end()}; }

  Word parse(std::string_view text) const { return alphabet_.parse(text); }
  std::string format(const Word& u) const { return alphabet_.format(u); }

  /// Throws AlphabetMismatch when u uses a generator outside the alphabet.
  void check(const Word& u) const;

private:
  Alphabet alphabet_;
};

}  // namespace srkit
