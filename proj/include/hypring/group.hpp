#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypring/alphabet.hpp"

namespace hypring {

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct precondition_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A group element in canonical form: the shortlex-minimal geodesic word.
// The empty word is the identity. Prefixes of canonical words are canonical.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(Word w) : word_(std::move(w)) {}

  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.word_ == b.word_;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  // shortlex
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return shortlex_less(a.word_, b.word_);
  }

 private:
  Word word_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const {
    return std::hash<Word>()(g.word());
  }
};

enum class GroupKind { Free, Dehn, Table };

// Finite-group backend data: mult[i][l] = index of element i times letter l,
// element 0 is the identity.
struct MultiplicationTable {
  std::vector<std::vector<std::uint32_t>> mult;
};

struct GroupConfig {
  GroupKind kind = GroupKind::Free;
  GeneratorAlphabet alphabet;
  std::vector<Word> relators;            // Dehn presentations; cyclically reduced
  std::optional<MultiplicationTable> table;
  std::size_t element_cap = 200000;      // hard cap on ball/list sizes
  std::size_t rewrite_state_cap = 200000;
};

class Group;

// All elements of word length <= radius, in BFS (= shortlex) order, with
// generator-multiplication edges. Closed under inversion.
struct BallTable {
  static constexpr std::uint32_t npos = 0xffffffffu;

  int radius = 0;
  std::vector<GroupElement> elements;
  std::unordered_map<GroupElement, std::uint32_t, GroupElementHash> index;
  // adjacency[i][l] = index of elements[i] * letter l, or npos if outside.
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<std::uint32_t> layer_start;  // layer_start[k] = first index of length k

  std::uint32_t find(const GroupElement& g) const {
    auto it = index.find(g);
    return it == index.end() ? npos : it->second;
  }
  std::size_t sphere_size(int k) const;
};

struct DehnPropertyReport {
  bool ok = true;
  std::vector<Word> offending_words;  // identity words with no >half-relator subword
};

class Group {
 public:
  explicit Group(GroupConfig cfg);

  static Group free_group(int rank);
  static Group surface_group(int genus);
  // Builtin tags: "free:K", "surface:2", "z" (= free:1).
  static Group builtin(const std::string& tag);
  static Group from_file(const std::string& path);

  const GeneratorAlphabet& alphabet() const { return cfg_.alphabet; }
  GroupKind kind() const { return cfg_.kind; }
  std::size_t element_cap() const { return cfg_.element_cap; }
  void set_element_cap(std::size_t cap) { cfg_.element_cap = cap; }
  const std::vector<Word>& relators() const { return cfg_.relators; }

  GroupElement identity() const { return GroupElement(); }

  // Canonical shortlex-geodesic form; idempotent. The argument is a sequence
  // of letter indices, not display text.
  GroupElement normalize(const Word& raw) const;
  // Parses display text ("abA", "a b a^-1 ...") and normalizes.
  GroupElement parse(std::string_view text) const {
    return normalize(cfg_.alphabet.parse_word(text));
  }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;
  GroupElement conjugate(const GroupElement& t, const GroupElement& g) const;
  int word_length(const GroupElement& a) const { return a.length(); }
  int distance(const GroupElement& g, const GroupElement& h) const;

  // Prefix of the canonical word; prefixes of geodesics are geodesic.
  GroupElement geodesic_prefix(const GroupElement& g, int i) const;
  // Element of the suffix s_{i+1}..s_n of the canonical word.
  GroupElement geodesic_suffix(const GroupElement& g, int i) const;

  BallTable ball(int radius) const;

  // Slimness estimate over all geodesic triangles with vertices in ball(r),
  // enumerated up to left translation. Clamped to >= 1. Requires r >= 2.
  int estimate_delta(int radius) const;

  // Word-problem oracle. For Dehn presentations this is Dehn's algorithm
  // (greedy >half-relator shortening); exact when the presentation has the
  // Dehn property.
  bool is_trivial_word(const Word& w) const;
  bool equal_words(const Word& a, const Word& b) const;

  // Spot check on ball(radius): every nontrivial product a*b^{-1} of distinct
  // ball elements that normalizes to the identity must be Dehn-reducible.
  DehnPropertyReport check_dehn_property(int radius) const;

  std::string describe() const;

 private:
  struct Rewrite {
    Word pattern;       // subword to replace
    Word replacement;   // inverse of the complementary half
  };

  struct Caches {
    std::mutex mu;
    std::unordered_map<Word, Word> canon;
    std::vector<Word> table_words;  // canonical word per table index
    std::unordered_map<Word, std::uint32_t> table_index;
    bool table_words_built = false;
  };

  Word canonical_word(const Word& freely_reduced) const;
  Word canonical_dehn(const Word& w) const;
  Word table_walk_word(const Word& w) const;
  void build_rewrites();
  void build_table_words() const;

  GroupConfig cfg_;
  std::vector<Rewrite> shortening_;   // pattern longer than replacement
  std::vector<Rewrite> preserving_;   // equal lengths
  mutable std::unique_ptr<Caches> caches_;
};

// Naive reference scan used to cross-check estimate_delta: iterates all
// ordered vertex triples of ball(r) directly.
int estimate_delta_naive(const Group& g, int radius);

}  // namespace hypring
