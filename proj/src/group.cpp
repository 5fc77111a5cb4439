#include "hypring/group.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hypring {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

std::size_t BallTable::sphere_size(int k) const {
  if (k < 0 || k > radius) return 0;
  std::uint32_t lo = layer_start[static_cast<std::size_t>(k)];
  std::uint32_t hi = (k + 1 <= radius) ? layer_start[static_cast<std::size_t>(k) + 1]
                                       : static_cast<std::uint32_t>(elements.size());
  return hi - lo;
}

Group::Group(GroupConfig cfg) : cfg_(std::move(cfg)), caches_(std::make_unique<Caches>()) {
  const auto& alpha = cfg_.alphabet;
  if (alpha.size() == 0) throw invalid_spec("group: empty alphabet");
  if (cfg_.kind == GroupKind::Dehn) {
    if (cfg_.relators.empty()) throw invalid_spec("dehn presentation without relators");
    for (auto& r : cfg_.relators) {
      if (r.empty()) throw invalid_spec("empty relator");
      Word cr = cyclic_reduce(r, alpha);
      if (cr.size() != r.size())
        throw invalid_spec("relator is not cyclically reduced: " + alpha.format_word(r));
    }
    build_rewrites();
  }
  if (cfg_.kind == GroupKind::Table) {
    if (!cfg_.table) throw invalid_spec("table group without table data");
    const auto& t = cfg_.table->mult;
    if (t.empty()) throw invalid_spec("empty multiplication table");
    for (const auto& row : t) {
      if (row.size() != alpha.size()) throw invalid_spec("table row arity mismatch");
      for (auto v : row)
        if (v >= t.size()) throw invalid_spec("table entry out of range");
    }
  }
}

Group Group::free_group(int rank) {
  GroupConfig cfg;
  cfg.kind = GroupKind::Free;
  cfg.alphabet = GeneratorAlphabet::symmetric_free(rank);
  return Group(std::move(cfg));
}

Group Group::surface_group(int genus) {
  if (genus < 2) throw invalid_spec("surface group requires genus >= 2");
  GroupConfig cfg;
  cfg.kind = GroupKind::Dehn;
  cfg.alphabet = GeneratorAlphabet::symmetric_free(2 * genus);
  // [a,b][c,d]... : product of commutators of consecutive generator pairs.
  Word rel;
  for (int i = 0; i < genus; ++i) {
    Letter x = static_cast<Letter>(4 * i);
    Letter y = static_cast<Letter>(4 * i + 2);
    rel.push_back(static_cast<char>(x));
    rel.push_back(static_cast<char>(y));
    rel.push_back(static_cast<char>(x + 1));
    rel.push_back(static_cast<char>(y + 1));
  }
  cfg.relators.push_back(rel);
  return Group(std::move(cfg));
}

Group Group::builtin(const std::string& tag) {
  if (tag == "z" || tag == "Z") return free_group(1);
  if (tag.rfind("free:", 0) == 0) return free_group(std::stoi(tag.substr(5)));
  if (tag.rfind("surface:", 0) == 0) return surface_group(std::stoi(tag.substr(8)));
  return from_file(tag);
}

void Group::build_rewrites() {
  const auto& alpha = cfg_.alphabet;
  std::set<Word> seen_rotations;
  std::vector<Word> rotations;
  for (const auto& rel : cfg_.relators) {
    for (const Word& base : {rel, alpha.invert_word(rel)}) {
      for (std::size_t s = 0; s < base.size(); ++s) {
        Word rot = base.substr(s) + base.substr(0, s);
        if (seen_rotations.insert(rot).second) rotations.push_back(rot);
      }
    }
  }
  std::set<std::pair<Word, Word>> dedupe;
  for (const auto& rot : rotations) {
    const std::size_t n = rot.size();
    for (std::size_t k = n / 2; k <= n; ++k) {
      if (2 * k < n) continue;
      Word pattern = rot.substr(0, k);
      Word replacement = cfg_.alphabet.invert_word(rot.substr(k));
      if (!dedupe.insert({pattern, replacement}).second) continue;
      Rewrite rw{std::move(pattern), std::move(replacement)};
      if (2 * k == n) {
        if (rw.pattern != rw.replacement) preserving_.push_back(std::move(rw));
      } else {
        shortening_.push_back(std::move(rw));
      }
    }
  }
}

Word Group::canonical_word(const Word& freely_reduced) const {
  switch (cfg_.kind) {
    case GroupKind::Free:
      return freely_reduced;
    case GroupKind::Dehn:
      return canonical_dehn(freely_reduced);
    case GroupKind::Table:
      return table_walk_word(freely_reduced);
  }
  return freely_reduced;
}

namespace {

// First applicable occurrence of any pattern; returns (rewrite index, position).
template <typename Rewrites>
std::optional<std::pair<std::size_t, std::size_t>> find_rewrite(const Word& w,
                                                                const Rewrites& rw) {
  for (std::size_t r = 0; r < rw.size(); ++r) {
    const Word& p = rw[r].pattern;
    if (p.size() > w.size()) continue;
    auto pos = w.find(p);
    if (pos != Word::npos) return std::make_pair(r, pos);
  }
  return std::nullopt;
}

Word apply_rewrite(const Word& w, const Word& pattern, const Word& replacement,
                   std::size_t pos, const GeneratorAlphabet& alpha) {
  Word out = w.substr(0, pos);
  out += replacement;
  out += w.substr(pos + pattern.size());
  return free_reduce(out, alpha);
}

}  // namespace

Word Group::canonical_dehn(const Word& input) const {
  const auto& alpha = cfg_.alphabet;
  Word w = free_reduce(input, alpha);
  {
    std::lock_guard<std::mutex> lk(caches_->mu);
    auto it = caches_->canon.find(w);
    if (it != caches_->canon.end()) return it->second;
  }
  const Word key = w;

  // Greedy descent, then closure under length-preserving half-swaps. A swap
  // can expose a cancellation or a further shortening; restart from the
  // shorter word whenever that happens.
  for (;;) {
    bool shortened = true;
    while (shortened) {
      shortened = false;
      if (auto hit = find_rewrite(w, shortening_)) {
        const auto& rw = shortening_[hit->first];
        w = apply_rewrite(w, rw.pattern, rw.replacement, hit->second, alpha);
        shortened = true;
      }
    }

    std::unordered_set<Word> closure{w};
    std::deque<Word> queue{w};
    Word best = w;
    bool restart = false;
    while (!queue.empty()) {
      Word u = std::move(queue.front());
      queue.pop_front();
      for (const auto& rw : preserving_) {
        if (rw.pattern.size() > u.size()) continue;
        for (std::size_t pos = u.find(rw.pattern); pos != Word::npos;
             pos = u.find(rw.pattern, pos + 1)) {
          Word v = apply_rewrite(u, rw.pattern, rw.replacement, pos, alpha);
          if (v.size() < u.size()) {
            w = v;
            restart = true;
            break;
          }
          if (find_rewrite(v, shortening_)) {
            w = v;
            restart = true;
            break;
          }
          if (closure.insert(v).second) {
            if (closure.size() > cfg_.rewrite_state_cap)
              throw cap_exceeded("rewrite closure exceeds state cap");
            if (shortlex_less(v, best)) best = v;
            queue.push_back(v);
          }
        }
        if (restart) break;
      }
      if (restart) break;
    }
    if (restart) continue;

    std::lock_guard<std::mutex> lk(caches_->mu);
    auto& cache = caches_->canon;
    cache.emplace(key, best);
    for (const auto& member : closure) cache.emplace(member, best);
    return best;
  }
}

void Group::build_table_words() const {
  std::lock_guard<std::mutex> lk(caches_->mu);
  if (caches_->table_words_built) return;
  const auto& t = cfg_.table->mult;
  const std::size_t n = t.size();
  std::vector<Word> words(n);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::vector<std::uint32_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    // Parents in shortlex order and letters ascending keep words canonical.
    for (auto idx : frontier) {
      for (std::size_t l = 0; l < cfg_.alphabet.size(); ++l) {
        std::uint32_t j = t[idx][l];
        if (!seen[j]) {
          seen[j] = true;
          words[j] = words[idx] + static_cast<char>(l);
          next.push_back(j);
        }
      }
    }
    std::sort(next.begin(), next.end(), [&](std::uint32_t a, std::uint32_t b) {
      return shortlex_less(words[a], words[b]);
    });
    frontier = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw invalid_spec("multiplication table is not generated by the alphabet");
    caches_->table_index.emplace(words[i], static_cast<std::uint32_t>(i));
  }
  caches_->table_words = std::move(words);
  caches_->table_words_built = true;
}

Word Group::table_walk_word(const Word& w) const {
  build_table_words();
  const auto& t = cfg_.table->mult;
  std::uint32_t idx = 0;
  for (char c : w) idx = t[idx][static_cast<std::size_t>(static_cast<Letter>(c))];
  std::lock_guard<std::mutex> lk(caches_->mu);
  return caches_->table_words[idx];
}

GroupElement Group::normalize(const Word& raw) const {
  for (char c : raw)
    if (static_cast<std::size_t>(static_cast<Letter>(c)) >= cfg_.alphabet.size())
      throw unknown_letter("letter index out of range");
  return GroupElement(canonical_word(free_reduce(raw, cfg_.alphabet)));
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  return GroupElement(canonical_word(free_reduce(a.word() + b.word(), cfg_.alphabet)));
}

GroupElement Group::invert(const GroupElement& a) const {
  return GroupElement(canonical_word(cfg_.alphabet.invert_word(a.word())));
}

GroupElement Group::conjugate(const GroupElement& t, const GroupElement& g) const {
  // t^{-1} g t
  Word w = cfg_.alphabet.invert_word(t.word()) + g.word() + t.word();
  return GroupElement(canonical_word(free_reduce(w, cfg_.alphabet)));
}

int Group::distance(const GroupElement& g, const GroupElement& h) const {
  Word w = cfg_.alphabet.invert_word(g.word()) + h.word();
  return GroupElement(canonical_word(free_reduce(w, cfg_.alphabet))).length();
}

GroupElement Group::geodesic_prefix(const GroupElement& g, int i) const {
  if (i < 0 || i > g.length())
    throw precondition_violation("geodesic_prefix: index out of range");
  return GroupElement(g.word().substr(0, static_cast<std::size_t>(i)));
}

GroupElement Group::geodesic_suffix(const GroupElement& g, int i) const {
  if (i < 0 || i > g.length())
    throw precondition_violation("geodesic_suffix: index out of range");
  return GroupElement(canonical_word(g.word().substr(static_cast<std::size_t>(i))));
}

BallTable Group::ball(int radius) const {
  if (radius < 0) throw precondition_violation("ball: negative radius");
  BallTable B;
  B.radius = radius;
  B.elements.push_back(GroupElement());
  B.index.emplace(GroupElement(), 0);
  B.layer_start = {0, 1};
  for (int L = 1; L <= radius; ++L) {
    std::set<Word> layer;
    std::uint32_t lo = B.layer_start[static_cast<std::size_t>(L) - 1];
    std::uint32_t hi = B.layer_start[static_cast<std::size_t>(L)];
    for (std::uint32_t i = lo; i < hi; ++i) {
      const Word parent = B.elements[i].word();
      for (std::size_t l = 0; l < cfg_.alphabet.size(); ++l) {
        Word cand = free_reduce(parent + static_cast<char>(l), cfg_.alphabet);
        if (static_cast<int>(cand.size()) < L) continue;  // free cancellation: known prefix
        Word canon = canonical_word(cand);
        if (static_cast<int>(canon.size()) == L) layer.insert(std::move(canon));
      }
    }
    for (auto& w : layer) {
      if (B.elements.size() >= cfg_.element_cap)
        throw cap_exceeded("ball: element cap exceeded");
      B.index.emplace(GroupElement(w), static_cast<std::uint32_t>(B.elements.size()));
      B.elements.push_back(GroupElement(w));
    }
    B.layer_start.push_back(static_cast<std::uint32_t>(B.elements.size()));
  }
  B.adjacency.assign(B.elements.size(), std::vector<std::uint32_t>(cfg_.alphabet.size(), BallTable::npos));
  for (std::size_t i = 0; i < B.elements.size(); ++i) {
    for (std::size_t l = 0; l < cfg_.alphabet.size(); ++l) {
      Word w = free_reduce(B.elements[i].word() + static_cast<char>(l), cfg_.alphabet);
      GroupElement p(canonical_word(w));
      B.adjacency[i][l] = B.find(p);
    }
  }
  return B;
}

bool Group::is_trivial_word(const Word& w0) const {
  const auto& alpha = cfg_.alphabet;
  Word w = free_reduce(w0, alpha);
  switch (cfg_.kind) {
    case GroupKind::Free:
      return w.empty();
    case GroupKind::Table:
      return table_walk_word(w).empty();
    case GroupKind::Dehn: {
      // Dehn's algorithm: replace any more-than-half piece of a relator
      // conjugate; each step strictly shortens.
      for (;;) {
        if (w.empty()) return true;
        auto hit = find_rewrite(w, shortening_);
        if (!hit) return false;
        const auto& rw = shortening_[hit->first];
        w = apply_rewrite(w, rw.pattern, rw.replacement, hit->second, alpha);
      }
    }
  }
  return w.empty();
}

bool Group::equal_words(const Word& a, const Word& b) const {
  return is_trivial_word(a + cfg_.alphabet.invert_word(b));
}

DehnPropertyReport Group::check_dehn_property(int radius) const {
  DehnPropertyReport rep;
  if (cfg_.kind != GroupKind::Dehn) return rep;
  BallTable B = ball(radius);
  // Canonical forms and the Dehn oracle must agree on equality for every pair;
  // a trivial word that Dehn reduction cannot shorten violates the property.
  for (std::size_t i = 0; i < B.elements.size(); ++i) {
    for (std::size_t j = 0; j < B.elements.size(); ++j) {
      Word w = B.elements[i].word() + cfg_.alphabet.invert_word(B.elements[j].word());
      bool canon_equal = (i == j);
      bool dehn_trivial = is_trivial_word(w);
      if (canon_equal != dehn_trivial) {
        rep.ok = false;
        rep.offending_words.push_back(free_reduce(w, cfg_.alphabet));
      }
    }
  }
  for (const auto& rel : cfg_.relators) {
    for (std::size_t i = 0; i < B.elements.size(); ++i) {
      Word w = B.elements[i].word() + rel + cfg_.alphabet.invert_word(B.elements[i].word());
      if (!is_trivial_word(w)) {
        rep.ok = false;
        rep.offending_words.push_back(free_reduce(w, cfg_.alphabet));
      }
    }
  }
  return rep;
}

namespace {

// Memoized word-metric distances between elements given by arbitrary words.
struct DistCache {
  const Group& group;
  std::unordered_map<Word, int> memo;

  int dist(const Word& u, const Word& v) {
    const auto& alpha = group.alphabet();
    Word w = free_reduce(alpha.invert_word(u) + v, alpha);
    if (w.empty()) return 0;
    Word wi = alpha.invert_word(w);
    const Word& key = shortlex_less(wi, w) ? wi : w;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int d = group.normalize(key).length();
    memo.emplace(key, d);
    return d;
  }
};

// Max over vertices of one side of the min distance to the other two sides'
// vertices; the triangle is (e, g, h) with sides along the canonical words.
// Returns max(floor_val, slimness); vertices that cannot beat floor_val are
// skipped early.
int triangle_slimness(const Group& G, const Word& wg, const Word& wh, const Word& wc,
                      DistCache& dc, int floor_val) {
  std::vector<Word> A, B, C;
  for (std::size_t i = 0; i <= wg.size(); ++i) A.emplace_back(wg.substr(0, i));
  for (std::size_t i = 0; i <= wh.size(); ++i) B.emplace_back(wh.substr(0, i));
  for (std::size_t i = 0; i <= wc.size(); ++i)
    C.emplace_back(free_reduce(wg + wc.substr(0, i), G.alphabet()));

  int slim = floor_val;
  auto scan = [&](const std::vector<Word>& side, const std::vector<Word>& o1,
                  const std::vector<Word>& o2) {
    for (const auto& p : side) {
      int dmin = kInf;
      bool capped = false;
      for (const auto& q : o1) {
        int d = dc.dist(p, q);
        if (d <= slim) {
          capped = true;
          break;
        }
        dmin = std::min(dmin, d);
      }
      if (!capped) {
        for (const auto& q : o2) {
          int d = dc.dist(p, q);
          if (d <= slim) {
            capped = true;
            break;
          }
          dmin = std::min(dmin, d);
        }
      }
      if (!capped && dmin > slim) slim = dmin;
    }
  };
  scan(A, B, C);
  scan(B, A, C);
  scan(C, A, B);
  return slim;
}

}  // namespace

int Group::estimate_delta(int radius) const {
  if (radius < 2) throw precondition_violation("estimate_delta: radius must be >= 2");
  // Geodesic triangles in a tree are tripods: every side lies in the union of
  // the other two, so the raw slimness is 0 and the clamp applies.
  if (cfg_.kind == GroupKind::Free) return 1;

  // Triangles are scanned up to left translation with the first vertex at the
  // identity: (e, y, z) over ball(radius)^2. estimate_delta_naive is the
  // literal all-triples scan used to cross-check this reduction.
  BallTable B = ball(radius);
  const std::size_t n = B.elements.size();
  DistCache dc{*this, {}};
  int best = 0;
  for (std::size_t y = 0; y < n; ++y) {
    if (B.elements[y].is_identity()) continue;
    const Word& wg = B.elements[y].word();
    GroupElement yi = invert(B.elements[y]);
    for (std::size_t z = y + 1; z < n; ++z) {
      if (z == y || B.elements[z].is_identity()) continue;
      const Word& wh = B.elements[z].word();
      GroupElement c = multiply(yi, B.elements[z]);
      const int longest =
          std::max({static_cast<int>(wg.size()), static_cast<int>(wh.size()), c.length()});
      if (longest / 2 <= best) continue;
      int s = triangle_slimness(*this, wg, wh, c.word(), dc, best);
      if (s > best) best = s;
    }
  }
  return std::max(1, best);
}

int estimate_delta_naive(const Group& G, int radius) {
  BallTable B = G.ball(radius);
  const std::size_t n = B.elements.size();
  DistCache dc{G, {}};
  int best = 0;
  for (std::size_t x = 0; x < n; ++x) {
    GroupElement xi = G.invert(B.elements[x]);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      GroupElement g = G.multiply(xi, B.elements[y]);
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        GroupElement h = G.multiply(xi, B.elements[z]);
        GroupElement c = G.multiply(G.invert(g), h);
        int s = triangle_slimness(G, g.word(), h.word(), c.word(), dc, 0);
        if (s > best) best = s;
      }
    }
  }
  return std::max(1, best);
}

std::string Group::describe() const {
  std::ostringstream os;
  switch (cfg_.kind) {
    case GroupKind::Free:
      os << "kind: free\n";
      break;
    case GroupKind::Dehn:
      os << "kind: dehn\n";
      break;
    case GroupKind::Table:
      os << "kind: table\n";
      break;
  }
  os << "letters:";
  for (std::size_t i = 0; i < cfg_.alphabet.size(); ++i) os << ' ' << cfg_.alphabet.name(static_cast<Letter>(i));
  os << "\n";
  for (const auto& r : cfg_.relators) os << "relator: " << cfg_.alphabet.format_word(r) << "\n";
  if (cfg_.table) os << "order: " << cfg_.table->mult.size() << "\n";
  os << "element-cap: " << cfg_.element_cap << "\n";
  return os.str();
}

Group Group::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_spec("cannot open group file: " + path);
  GroupConfig cfg;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> involutions;
  std::vector<std::string> relator_texts;
  std::optional<std::size_t> table_n;
  std::vector<std::uint32_t> table_entries;
  bool kind_set = false;

  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "kind") {
      std::string k;
      ls >> k;
      if (k == "free") cfg.kind = GroupKind::Free;
      else if (k == "dehn") cfg.kind = GroupKind::Dehn;
      else if (k == "table") cfg.kind = GroupKind::Table;
      else throw invalid_spec("group file: unknown kind " + k);
      kind_set = true;
    } else if (key == "letters") {
      std::string nm;
      while (ls >> nm) names.push_back(nm);
    } else if (key == "involution") {
      std::string a, b;
      if (!(ls >> a >> b)) throw invalid_spec("group file: involution needs two names");
      involutions.emplace_back(a, b);
    } else if (key == "relator") {
      std::string rest, tok;
      while (ls >> tok) rest += (rest.empty() ? "" : " ") + tok;
      relator_texts.push_back(rest);
    } else if (key == "cap-elements") {
      ls >> cfg.element_cap;
    } else if (key == "table") {
      std::size_t nn = 0;
      ls >> nn;
      table_n = nn;
    } else if (key == "row") {
      std::uint32_t v;
      while (ls >> v) table_entries.push_back(v);
    } else {
      throw invalid_spec("group file: unknown key " + key);
    }
  }
  if (!kind_set) throw invalid_spec("group file: missing kind");
  if (names.empty()) throw invalid_spec("group file: missing letters");

  std::vector<Letter> inv(names.size(), 0);
  std::vector<bool> assigned(names.size(), false);
  auto idx_of = [&](const std::string& nm) -> std::size_t {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == nm) return i;
    throw invalid_spec("group file: involution names an unknown letter " + nm);
  };
  for (auto& [a, b] : involutions) {
    std::size_t i = idx_of(a), j = idx_of(b);
    inv[i] = static_cast<Letter>(j);
    inv[j] = static_cast<Letter>(i);
    assigned[i] = assigned[j] = true;
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!assigned[i]) throw invalid_spec("group file: letter without involution: " + names[i]);
  cfg.alphabet = GeneratorAlphabet(names, inv);
  for (const auto& t : relator_texts) cfg.relators.push_back(cfg.alphabet.parse_word(t));
  if (cfg.kind == GroupKind::Table) {
    if (!table_n) throw invalid_spec("group file: table kind needs a table size");
    if (table_entries.size() != *table_n * names.size())
      throw invalid_spec("group file: table entry count mismatch");
    MultiplicationTable mt;
    mt.mult.resize(*table_n, std::vector<std::uint32_t>(names.size()));
    for (std::size_t i = 0; i < *table_n; ++i)
      for (std::size_t l = 0; l < names.size(); ++l)
        mt.mult[i][l] = table_entries[i * names.size() + l];
    cfg.table = std::move(mt);
  }
  return Group(std::move(cfg));
}

}  // namespace hypring
