#include "hypring/alphabet.hpp"

#include <algorithm>
#include <cctype>

namespace hypring {

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> names,
                                     std::vector<Letter> inverse)
    : names_(std::move(names)), inverse_(std::move(inverse)) {
  if (names_.empty() || names_.size() != inverse_.size())
    throw invalid_spec("alphabet: names and involution sizes differ");
  if (names_.size() > kMaxLetters) throw invalid_spec("alphabet: too many letters");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    Letter j = inverse_[i];
    if (j >= names_.size() || inverse_[j] != static_cast<Letter>(i))
      throw invalid_spec("alphabet: involution is not a self-inverse bijection");
    if (names_[i].empty()) throw invalid_spec("alphabet: empty letter name");
    if (names_[i].size() > 1) all_single_char_ = false;
  }
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw invalid_spec("alphabet: duplicate letter name");
}

GeneratorAlphabet GeneratorAlphabet::symmetric_free(int rank) {
  if (rank < 1 || rank > 13) throw invalid_spec("free rank out of range [1,13]");
  std::vector<std::string> names;
  std::vector<Letter> inv;
  for (int i = 0; i < rank; ++i) {
    char c = static_cast<char>('a' + i);
    names.push_back(std::string(1, c));
    names.push_back(std::string(1, static_cast<char>(std::toupper(c))));
    inv.push_back(static_cast<Letter>(2 * i + 1));
    inv.push_back(static_cast<Letter>(2 * i));
  }
  return GeneratorAlphabet(std::move(names), std::move(inv));
}

Letter GeneratorAlphabet::letter(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Letter>(i);
  throw unknown_letter("unknown letter: " + std::string(name));
}

bool GeneratorAlphabet::has_letter(std::string_view name) const {
  return std::any_of(names_.begin(), names_.end(),
                     [&](const std::string& n) { return n == name; });
}

Word GeneratorAlphabet::invert_word(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(static_cast<char>(inverse(static_cast<Letter>(*it))));
  return out;
}

Word GeneratorAlphabet::parse_word(std::string_view text) const {
  Word out;
  if (text.empty() || text == "e" || text == "1") return out;
  const bool separated =
      text.find(' ') != std::string_view::npos || text.find('.') != std::string_view::npos;
  if (separated || !all_single_char_) {
    std::string tok;
    auto flush = [&] {
      if (tok.empty()) return;
      if (tok != "e" && tok != "1") out.push_back(static_cast<char>(letter(tok)));
      tok.clear();
    };
    for (char c : text) {
      if (c == ' ' || c == '.' || c == '\t') {
        flush();
      } else {
        tok.push_back(c);
      }
    }
    flush();
    return out;
  }
  for (char c : text) out.push_back(static_cast<char>(letter(std::string_view(&c, 1))));
  return out;
}

std::string GeneratorAlphabet::format_word(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!all_single_char_ && i > 0) out.push_back(' ');
    out += name(static_cast<Letter>(w[i]));
  }
  return out;
}

Word free_reduce(const Word& w, const GeneratorAlphabet& alpha) {
  Word out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() &&
        alpha.inverse(static_cast<Letter>(out.back())) == static_cast<Letter>(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w, const GeneratorAlphabet& alpha) {
  Word r = free_reduce(w, alpha);
  std::size_t i = 0, j = r.size();
  while (j >= i + 2 &&
         alpha.inverse(static_cast<Letter>(r[i])) == static_cast<Letter>(r[j - 1])) {
    ++i;
    --j;
  }
  return r.substr(i, j - i);
}

}  // namespace hypring
