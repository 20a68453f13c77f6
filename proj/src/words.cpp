#include "rankprof/words.hpp"

#include <algorithm>
#include <cctype>

#include "rankprof/errors.hpp"

namespace rankprof {

Alphabet::Alphabet(std::string_view symbols)
    : symbols_(std::make_shared<const std::string>(symbols)) {
  if (symbols.empty()) throw Error("alphabet must contain at least one symbol");
  if (symbols.size() > 255) throw Error("alphabet too large");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto c = static_cast<unsigned char>(symbols[i]);
    if (!std::isprint(c) || std::isspace(c))
      throw Error(std::string("alphabet symbol is not printable: code ") + std::to_string(c));
    if (symbols.find(symbols[i], i + 1) != std::string_view::npos)
      throw Error(std::string("duplicate alphabet symbol '") + symbols[i] + "'");
  }
}

Alphabet Alphabet::merged(const Alphabet& a, const Alphabet& b) {
  std::string all = a.symbols() + b.symbols();
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return Alphabet(all);
}

std::optional<Letter> Alphabet::index_of(char symbol) const {
  auto pos = symbols_->find(symbol);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Letter>(pos);
}

Word::Word(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  for (Letter l : letters_)
    if (l >= alphabet_.size()) throw Error("letter index outside alphabet");
}

Word Word::parse(const Alphabet& alphabet, std::string_view text) {
  if (text == kEpsilonToken) return Word(alphabet);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    auto idx = alphabet.index_of(c);
    if (!idx)
      throw AlphabetMismatch(std::string("symbol '") + c + "' is not in alphabet {" +
                             alphabet.symbols() + "}");
    letters.push_back(*idx);
  }
  return Word(alphabet, std::move(letters));
}

Word Word::slice(std::size_t begin, std::size_t end) const {
  return Word(alphabet_, std::vector<Letter>(letters_.begin() + begin, letters_.begin() + end));
}

std::string Word::str() const {
  if (letters_.empty()) return std::string(kEpsilonToken);
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(alphabet_.symbol(l));
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters() < b.letters();
}

Word concat(const Word& u, const Word& v) {
  if (!(u.alphabet() == v.alphabet()))
    throw AlphabetMismatch("concat: words over different alphabets");
  std::vector<Letter> letters = u.letters();
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), std::move(letters));
}

Word power(const Word& x, std::size_t m) {
  std::vector<Letter> letters;
  letters.reserve(x.size() * m);
  for (std::size_t i = 0; i < m; ++i)
    letters.insert(letters.end(), x.letters().begin(), x.letters().end());
  return Word(x.alphabet(), std::move(letters));
}

std::uint64_t ball_size(std::size_t alphabet_size, std::size_t n) {
  if (alphabet_size == 1) return n + 1;
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (std::size_t len = 0; len <= n; ++len) {
    total += layer;
    layer *= alphabet_size;
  }
  return total;
}

namespace {

// |Sigma|^(n+1) > cap, without overflow.
bool exceeds_cap(std::size_t k, std::size_t n, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (acc > cap / k) return true;
    acc *= k;
  }
  return acc > cap;
}

}  // namespace

BallEnumerator::BallEnumerator(Alphabet alphabet, std::size_t n, std::uint64_t cap)
    : alphabet_(std::move(alphabet)), horizon_(n) {
  if (exceeds_cap(alphabet_.size(), n, cap))
    throw HorizonTooLarge("ball of radius " + std::to_string(n) + " over " +
                          std::to_string(alphabet_.size()) + " symbols exceeds cap " +
                          std::to_string(cap));
}

std::optional<Word> BallEnumerator::next() {
  if (done_) return std::nullopt;
  Word out(alphabet_, current_);
  // Advance in shortlex order: increment as a base-|Sigma| counter, growing on overflow.
  const auto top = static_cast<Letter>(alphabet_.size() - 1);
  std::size_t i = current_.size();
  while (i > 0 && current_[i - 1] == top) {
    current_[i - 1] = 0;
    --i;
  }
  if (i > 0) {
    ++current_[i - 1];
  } else if (current_.size() < horizon_) {
    current_.assign(current_.size() + 1, 0);
  } else {
    done_ = true;
  }
  return out;
}

std::vector<Word> enumerate_ball(const Alphabet& alphabet, std::size_t n, std::uint64_t cap) {
  BallEnumerator it(alphabet, n, cap);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(ball_size(alphabet.size(), n)));
  while (auto w = it.next()) out.push_back(std::move(*w));
  return out;
}

}  // namespace rankprof
