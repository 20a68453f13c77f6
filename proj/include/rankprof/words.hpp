#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankprof {

using Letter = std::uint8_t;

/// Ordered finite set of printable single-character symbols.
///
/// The order of the symbols is the order used for every lexicographic
/// tie-break in the library. Copies share the underlying storage.
class Alphabet {
 public:
  /// Symbols must be distinct printable characters; at least one.
  explicit Alphabet(std::string_view symbols);

  /// Sorted union of the symbols of two alphabets.
  static Alphabet merged(const Alphabet& a, const Alphabet& b);

  std::size_t size() const noexcept { return symbols_->size(); }
  char symbol(Letter index) const { return (*symbols_)[index]; }
  const std::string& symbols() const noexcept { return *symbols_; }
  std::optional<Letter> index_of(char symbol) const;
  bool contains(char symbol) const { return index_of(symbol).has_value(); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_ || *a.symbols_ == *b.symbols_;
  }

 private:
  std::shared_ptr<const std::string> symbols_;
};

/// Token used to serialize the empty word.
inline constexpr std::string_view kEpsilonToken = "@eps";

/// Finite word over an alphabet, stored as letter indices.
class Word {
 public:
  explicit Word(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  Word(Alphabet alphabet, std::vector<Letter> letters);

  /// Parses a plain symbol string; `@eps` denotes the empty word.
  static Word parse(const Alphabet& alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Factor [begin, end) as a word over the same alphabet.
  Word slice(std::size_t begin, std::size_t end) const;

  /// Plain symbol string, or `@eps` for the empty word.
  std::string str() const;

  /// Raw letter indices as bytes; usable as a hash key.
  std::string key() const { return {letters_.begin(), letters_.end()}; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_ && a.alphabet_ == b.alphabet_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// Length-then-lexicographic order (by alphabet position).
bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

/// Concatenation; throws AlphabetMismatch for different alphabets.
Word concat(const Word& u, const Word& v);

/// x repeated m times.
Word power(const Word& x, std::size_t m);

inline constexpr std::uint64_t kDefaultBallCap = std::uint64_t{1} << 22;

/// Number of words of length at most n.
std::uint64_t ball_size(std::size_t alphabet_size, std::size_t n);

/// Streams the ball Sigma^{<=n} in shortlex order. Single consumer.
class BallEnumerator {
 public:
  /// Throws HorizonTooLarge when |Sigma|^(n+1) exceeds cap.
  BallEnumerator(Alphabet alphabet, std::size_t n, std::uint64_t cap = kDefaultBallCap);

  /// Next word, or nullopt once the ball is exhausted.
  std::optional<Word> next();

 private:
  Alphabet alphabet_;
  std::size_t horizon_;
  std::vector<Letter> current_;
  bool done_ = false;
};

/// Materialized ball in shortlex order.
std::vector<Word> enumerate_ball(const Alphabet& alphabet, std::size_t n,
                                 std::uint64_t cap = kDefaultBallCap);

}  // namespace rankprof
