#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypring {

// Letters are indices into the alphabet; a Word is a sequence of letters.
// Words compare shortlex: first by length, then lexicographically by letter
// index, so the declared letter order is the tie-breaking order everywhere.
using Letter = std::uint8_t;
using Word = std::basic_string<char>;

inline constexpr std::size_t kMaxLetters = 64;

struct unknown_letter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_spec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symmetric generator alphabet: closed under the involution l -> l^{-1}.
// The involution is a self-inverse bijection and may have fixed points
// (order-two generators).
class GeneratorAlphabet {
 public:
  GeneratorAlphabet() = default;
  GeneratorAlphabet(std::vector<std::string> names, std::vector<Letter> inverse);

  static GeneratorAlphabet symmetric_free(int rank);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter l) const { return names_.at(l); }
  Letter inverse(Letter l) const { return inverse_.at(l); }
  Letter letter(std::string_view name) const;
  bool has_letter(std::string_view name) const;

  // Inverse word: reversed with letters inverted.
  Word invert_word(const Word& w) const;

  // Accepts either compact form ("abA", single-character names only) or
  // whitespace/dot-separated names. "e", "1" and "" denote the empty word.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

  bool all_single_char() const { return all_single_char_; }

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
  bool all_single_char_ = true;
};

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Removes adjacent letter/inverse pairs until none remain.
Word free_reduce(const Word& w, const GeneratorAlphabet& alpha);

// Cyclic reduction: strips matching inverse pairs from both ends.
Word cyclic_reduce(const Word& w, const GeneratorAlphabet& alpha);

}  // namespace hypring
