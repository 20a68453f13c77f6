#include <map>
#include <vector>

#include "rankprof/ef_types.hpp"
#include "rankprof/errors.hpp"

namespace rankprof {

namespace {

class Game {
 public:
  Game(const Word& u, const Word& v) : u_(u), v_(v) {}

  // Duplicator wins the remaining `rounds` from the current pebbling.
  bool duplicator_wins(std::size_t rounds) {
    if (!partial_isomorphism()) return false;
    if (rounds == 0) return true;
    std::vector<std::uint32_t> key(left_);
    key.push_back(0xffffffffu);
    key.insert(key.end(), right_.begin(), right_.end());
    key.push_back(static_cast<std::uint32_t>(rounds));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = spoiler_side_fails(rounds, true) && spoiler_side_fails(rounds, false);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  // Every Spoiler move on one side has a winning Duplicator answer.
  bool spoiler_side_fails(std::size_t rounds, bool spoiler_on_left) {
    const Word& spoiler_word = spoiler_on_left ? u_ : v_;
    const Word& answer_word = spoiler_on_left ? v_ : u_;
    for (std::uint32_t s = 1; s <= spoiler_word.size(); ++s) {
      bool answered = false;
      for (std::uint32_t d = 1; d <= answer_word.size() && !answered; ++d) {
        left_.push_back(spoiler_on_left ? s : d);
        right_.push_back(spoiler_on_left ? d : s);
        answered = duplicator_wins(rounds - 1);
        left_.pop_back();
        right_.pop_back();
      }
      if (!answered) return false;
    }
    return true;
  }

  bool partial_isomorphism() const {
    const std::size_t k = left_.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (u_.alphabet().symbol(u_[left_[i] - 1]) != v_.alphabet().symbol(v_[right_[i] - 1]))
        return false;
      for (std::size_t j = i + 1; j < k; ++j) {
        if ((left_[i] < left_[j]) != (right_[i] < right_[j])) return false;
        if ((left_[i] == left_[j]) != (right_[i] == right_[j])) return false;
      }
    }
    return true;
  }

  const Word& u_;
  const Word& v_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> right_;
  std::map<std::vector<std::uint32_t>, bool> memo_;
};

}  // namespace

bool equiv_by_game(const Word& u, const Word& v, std::size_t q, std::size_t max_length) {
  if (u.size() > max_length || v.size() > max_length)
    throw HorizonTooLarge("game search limited to words of length " + std::to_string(max_length));
  return Game(u, v).duplicator_wins(q);
}

}  // namespace rankprof
