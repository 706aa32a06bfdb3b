#include <arbor/group.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace arbor {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w) {
    h ^= static_cast<std::size_t>(l.code() + 1);
    h *= 1099511628211ull;
  }
  return h;
}

Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

bool is_freely_reduced(std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Word rotate(std::span<const Letter> w, std::size_t k) {
  Word out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[(i + k) % w.size()]);
  return out;
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Free: return "free";
    case Backend::Dehn: return "dehn";
    case Backend::Hnn: return "hnn";
    case Backend::Abelian: return "abelian";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Presentation

Presentation Presentation::free(std::vector<std::string> gens) {
  Presentation p;
  p.gens_ = std::move(gens);
  p.backend_ = Backend::Free;
  p.finalize();
  return p;
}

Presentation Presentation::dehn(std::vector<std::string> gens, std::vector<Word> relators) {
  Presentation p;
  p.gens_ = std::move(gens);
  p.backend_ = Backend::Dehn;
  for (auto& r : relators) {
    p.check_letters(r);
    Word red = free_reduce(r);
    // cyclic reduction
    while (red.size() >= 2 && red.front() == red.back().inverse()) {
      red.erase(red.begin());
      red.pop_back();
    }
    if (!red.empty()) p.relators_.push_back(std::move(red));
  }
  p.finalize();
  return p;
}

Presentation Presentation::abelian(std::vector<std::string> gens) {
  Presentation p;
  p.gens_ = std::move(gens);
  p.backend_ = Backend::Abelian;
  int n = p.rank();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      p.relators_.push_back(Word{{i, false}, {j, false}, {i, true}, {j, true}});
  p.finalize();
  return p;
}

Presentation Presentation::hnn(std::vector<std::string> gens, int stable, Endomorphism phi) {
  Presentation p;
  p.gens_ = std::move(gens);
  p.backend_ = Backend::Hnn;
  if (stable < 0 || stable >= p.rank())
    throw Error(ErrorCode::InvalidPresentation, "stable letter out of range");
  p.stable_ = stable;
  phi.images.resize(p.gens_.size());
  for (int g = 0; g < p.rank(); ++g) {
    if (g == stable) continue;
    auto& img = phi.images[g];
    p.check_letters(img);
    img = free_reduce(img);
    for (Letter l : img)
      if (l.gen == stable)
        throw Error(ErrorCode::InvalidPresentation, "endomorphism image uses the stable letter");
    Word rel{{stable, false}, {g, false}, {stable, true}};
    Word tail = inverse(img);
    rel.insert(rel.end(), tail.begin(), tail.end());
    p.relators_.push_back(std::move(rel));
  }
  p.phi_ = std::move(phi);
  p.finalize();
  return p;
}

void Presentation::finalize() {
  std::set<std::string> seen;
  for (auto& g : gens_) {
    if (g.empty() || g.find_first_of(" \t'#,") != std::string::npos || g == "1")
      throw Error(ErrorCode::InvalidPresentation, "bad generator name '" + g + "'");
    if (!seen.insert(g).second)
      throw Error(ErrorCode::InvalidPresentation, "duplicate generator '" + g + "'");
  }
  symmetrized_.clear();
  if (backend_ == Backend::Dehn) {
    for (const auto& r : relators_) {
      Word ri = inverse(r);
      for (std::size_t k = 0; k < r.size(); ++k) symmetrized_.push_back(rotate(r, k));
      for (std::size_t k = 0; k < ri.size(); ++k) symmetrized_.push_back(rotate(ri, k));
    }
  }
  if (backend_ == Backend::Hnn) {
    std::vector<Word> imgs;
    std::vector<int> dom;
    for (int g = 0; g < rank(); ++g) {
      if (g == *stable_) continue;
      imgs.push_back(phi_.images[g]);
      dom.push_back(g);
    }
    image_ = std::make_shared<const ImageSubgroup>(imgs, dom, rank());
  }
}

const ImageSubgroup& Presentation::image_subgroup() const {
  if (!image_) throw Error(ErrorCode::InvalidArgument, "presentation has no endomorphism");
  return *image_;
}

int Presentation::generator_index(std::string_view name) const {
  for (int i = 0; i < rank(); ++i)
    if (gens_[i] == name) return i;
  throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
}

void Presentation::check_letters(std::span<const Letter> w) const {
  for (Letter l : w)
    if (l.gen < 0 || l.gen >= rank())
      throw Error(ErrorCode::UnknownGenerator, "letter index " + std::to_string(l.gen));
}

Word Presentation::parse_word(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);
  if (trimmed.empty() || trimmed == "1") return out;
  while (i < trimmed.size()) {
    if (std::isspace(static_cast<unsigned char>(trimmed[i]))) {
      ++i;
      continue;
    }
    int best = -1;
    std::size_t best_len = 0;
    for (int g = 0; g < rank(); ++g) {
      const auto& name = gens_[g];
      if (name.size() > best_len && trimmed.substr(i, name.size()) == name) {
        best = g;
        best_len = name.size();
      }
    }
    if (best < 0)
      throw Error(ErrorCode::UnknownGenerator,
                  "cannot parse '" + std::string(trimmed.substr(i)) + "'");
    i += best_len;
    bool inv = false;
    if (i < trimmed.size() && trimmed[i] == '\'') {
      inv = true;
      ++i;
    }
    out.push_back({best, inv});
  }
  return out;
}

std::string Presentation::format(std::span<const Letter> w) const {
  if (w.empty()) return "1";
  bool compact = std::all_of(gens_.begin(), gens_.end(), [](auto& g) { return g.size() == 1; });
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) s += ' ';
    s += gens_.at(w[i].gen);
    if (w[i].inv) s += '\'';
  }
  return s;
}

Presentation parse_presentation(std::string_view text) {
  std::vector<std::string> gens;
  std::optional<std::string> backend;
  std::vector<std::string> rels;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = line.substr(first, colon - first);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    std::string value = line.substr(colon + 1);
    if (key == "gens") {
      std::istringstream vs(value);
      std::string g;
      while (vs >> g) gens.push_back(g);
    } else if (key == "backend") {
      std::istringstream vs(value);
      std::string b;
      vs >> b;
      backend = b;
    } else if (key == "rel") {
      rels.push_back(value);
    } else {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (gens.empty()) throw Error(ErrorCode::ParseError, "missing 'gens:' line");
  if (!backend) throw Error(ErrorCode::ParseError, "missing 'backend:' line");

  auto scratch = Presentation::free(gens);
  std::vector<Word> relators;
  for (auto& r : rels) relators.push_back(scratch.parse_word(r));

  if (*backend == "free") {
    if (!relators.empty())
      throw Error(ErrorCode::InvalidPresentation, "free backend takes no relators");
    return Presentation::free(gens);
  }
  if (*backend == "abelian") return Presentation::abelian(gens);
  if (*backend == "dehn") {
    if (relators.empty()) throw Error(ErrorCode::EmptyRelators, "dehn backend needs relators");
    return Presentation::dehn(gens, relators);
  }
  if (*backend == "hnn") {
    // every relator must read t x t' phi(x)'
    std::optional<int> stable;
    Endomorphism phi;
    phi.images.resize(gens.size());
    std::vector<bool> defined(gens.size(), false);
    for (auto& r : relators) {
      if (r.size() < 3 || r[0].inv || r[1].inv || !r[2].inv || r[0].gen != r[2].gen ||
          r[1].gen == r[0].gen)
        throw Error(ErrorCode::InvalidPresentation, "hnn relators must have the form t x t' w");
      if (stable && *stable != r[0].gen)
        throw Error(ErrorCode::InvalidPresentation, "inconsistent stable letter");
      stable = r[0].gen;
      if (defined[r[1].gen])
        throw Error(ErrorCode::InvalidPresentation, "generator mapped twice");
      defined[r[1].gen] = true;
      phi.images[r[1].gen] = inverse(std::span(r).subspan(3));
    }
    if (!stable) throw Error(ErrorCode::InvalidPresentation, "hnn backend needs relators");
    for (int g = 0; g < static_cast<int>(gens.size()); ++g)
      if (g != *stable && !defined[g])
        throw Error(ErrorCode::InvalidPresentation, "no relator for generator " + gens[g]);
    return Presentation::hnn(gens, *stable, phi);
  }
  throw Error(ErrorCode::ParseError, "unknown backend '" + *backend + "'");
}

Presentation load_presentation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string to_text(const Presentation& p) {
  std::string s = "gens:";
  for (auto& g : p.generators()) s += " " + g;
  s += "\nbackend: " + std::string(to_string(p.backend())) + "\n";
  if (p.backend() == Backend::Dehn || p.backend() == Backend::Hnn) {
    for (auto& r : p.relators()) {
      s += "rel:";
      for (Letter l : r) s += " " + p.format(Word{l});
      s += "\n";
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Image subgroup with weights

ImageSubgroup::ImageSubgroup(const std::vector<Word>& images, const std::vector<int>& domain_gens,
                             int rank) {
  (void)rank;
  // Rose: petal i reads images[i]; its first edge carries the domain letter.
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Word& img = images[i];
    if (img.empty()) continue;
    int prev = 0;
    for (std::size_t k = 0; k < img.size(); ++k) {
      int next = (k + 1 == img.size()) ? 0 : vertices_++;
      Word weight;
      if (k == 0) weight.push_back({domain_gens[i], false});
      Letter l = img[k];
      if (l.inv)
        edges_.push_back({next, prev, l.gen, inverse(weight)});
      else
        edges_.push_back({prev, next, l.gen, weight});
      prev = next;
    }
  }
  // Fold, carrying domain weights along.
  auto merge = [&](int keep, int drop, const Word& c) {
    Word cinv = inverse(c);
    for (auto& e : edges_) {
      bool out = e.from == drop, in = e.to == drop;
      if (out) e.weight = free_reduce(concat(cinv, e.weight));
      if (in) e.weight = free_reduce(concat(e.weight, c));
      if (out) e.from = keep;
      if (in) e.to = keep;
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges_.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < edges_.size() && !changed; ++j) {
        auto& e1 = edges_[i];
        auto& e2 = edges_[j];
        if (e1.gen != e2.gen) continue;
        if (e1.from == e2.from) {
          if (e1.to != e2.to) {
            // out-fold: c = g2^-1 g1 moves the frame of e2.to onto e1.to
            int keep = e1.to, drop = e2.to;
            Word c = free_reduce(concat(inverse(e2.weight), e1.weight));
            if (drop == 0) {
              std::swap(keep, drop);
              c = inverse(c);
            }
            merge(keep, drop, c);
          }
          edges_.erase(edges_.begin() + static_cast<long>(j));
          changed = true;
        } else if (e1.to == e2.to) {
          int keep = e1.from, drop = e2.from;
          Word c = free_reduce(concat(e2.weight, inverse(e1.weight)));
          if (drop == 0) {
            std::swap(keep, drop);
            c = inverse(c);
          }
          merge(keep, drop, c);
          edges_.erase(edges_.begin() + static_cast<long>(j));
          changed = true;
        }
      }
    }
  }
}

std::optional<Word> ImageSubgroup::preimage(std::span<const Letter> u) const {
  int v = 0;
  Word acc;
  for (Letter l : u) {
    bool found = false;
    for (const auto& e : edges_) {
      if (e.gen != l.gen) continue;
      if (!l.inv && e.from == v) {
        acc = concat(acc, e.weight);
        v = e.to;
        found = true;
        break;
      }
      if (l.inv && e.to == v) {
        acc = concat(acc, inverse(e.weight));
        v = e.from;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  if (v != 0) return std::nullopt;
  return free_reduce(acc);
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

// Longest prefix of w[pos..] matching a prefix of some symmetrized relator;
// returns (length, relator index).
std::pair<std::size_t, std::size_t> longest_match(const std::vector<Word>& sym,
                                                  std::span<const Letter> w, std::size_t pos) {
  std::size_t best = 0, best_idx = 0;
  for (std::size_t r = 0; r < sym.size(); ++r) {
    const Word& rel = sym[r];
    std::size_t k = 0;
    while (k < rel.size() && pos + k < w.size() && w[pos + k] == rel[k]) ++k;
    if (k > best) {
      best = k;
      best_idx = r;
    }
  }
  return {best, best_idx};
}

Word replace_segment(std::span<const Letter> w, std::size_t pos, std::size_t len,
                     std::span<const Letter> replacement) {
  Word out(w.begin(), w.begin() + static_cast<long>(pos));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), w.begin() + static_cast<long>(pos + len), w.end());
  return out;
}

Word dehn_pass(const std::vector<Word>& sym, Word w) {
  w = free_reduce(w);
  for (;;) {
    bool replaced = false;
    for (std::size_t pos = 0; pos < w.size() && !replaced; ++pos) {
      auto [len, idx] = longest_match(sym, w, pos);
      const Word& rel = sym[idx];
      if (len > 0 && 2 * len > rel.size()) {
        // w[pos, pos+len) = rel[0,len) equals the inverse of rel[len, n)
        Word comp = inverse(std::span(rel).subspan(len));
        w = free_reduce(replace_segment(w, pos, len, comp));
        replaced = true;
      }
    }
    if (!replaced) return w;
  }
}

// Explore equal-length rewrites by exactly-half relator swaps, reducing again
// after each swap; the shortest, then shortlex-least, word is returned.
Word dehn_canonical(const std::vector<Word>& sym, Word start) {
  constexpr std::size_t kCap = 20000;
  Word best = dehn_pass(sym, std::move(start));
  std::unordered_set<Word, WordHash> seen{best};
  std::deque<Word> queue{best};
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      for (const Word& rel : sym) {
        if (rel.size() % 2 != 0) continue;
        std::size_t half = rel.size() / 2;
        if (pos + half > w.size()) continue;
        if (!std::equal(rel.begin(), rel.begin() + static_cast<long>(half), w.begin() + static_cast<long>(pos)))
          continue;
        Word comp = inverse(std::span(rel).subspan(half));
        Word next = dehn_pass(sym, replace_segment(w, pos, half, comp));
        if (next.size() < best.size()) {
          best = next;
          seen.clear();
          queue.clear();
          seen.insert(next);
          queue.push_back(std::move(next));
          goto restart;
        }
        if (next.size() == best.size() && seen.size() < kCap && seen.insert(next).second) {
          if (shortlex_less(next, best)) best = next;
          queue.push_back(std::move(next));
        }
      }
    }
  restart:;
  }
  return best;
}

Word abelian_form(const Presentation& p, std::span<const Letter> w) {
  std::vector<long> exps(p.rank(), 0);
  for (Letter l : w) exps[l.gen] += l.sign();
  Word out;
  for (int g = 0; g < p.rank(); ++g)
    for (long k = 0; k < std::labs(exps[g]); ++k) out.push_back({g, exps[g] < 0});
  return out;
}

Word phi_power_letter(const Presentation& p, Letter l, int j) {
  Word w{l};
  const auto& imgs = p.endomorphism().images;
  for (int k = 0; k < j; ++k) {
    Word next;
    for (Letter x : w) {
      const Word& img = imgs[x.gen];
      if (x.inv) {
        Word inv = inverse(img);
        next.insert(next.end(), inv.begin(), inv.end());
      } else {
        next.insert(next.end(), img.begin(), img.end());
      }
    }
    w = free_reduce(next);
  }
  return w;
}

Word phi_word(const Presentation& p, std::span<const Letter> u) {
  Word out;
  for (Letter l : u) {
    Word img = phi_power_letter(p, l, 1);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(out);
}

Word britton_form(const Presentation& p, std::span<const Letter> w) {
  const int t = *p.stable_letter();
  long i = 0, j = 0;
  Word u;
  for (Letter l : w) {
    if (l.gen == t) {
      if (!l.inv) {
        ++j;
      } else if (j > 0) {
        --j;
      } else {
        // t^-i u t^-1 = t^-(i+1) phi(u)
        u = phi_word(p, u);
        ++i;
      }
    } else {
      Word img = phi_power_letter(p, l, static_cast<int>(j));
      u = free_reduce(concat(u, img));
    }
  }
  const auto& image = p.image_subgroup();
  while (i > 0 && j > 0) {
    auto pre = image.preimage(u);
    if (!pre) break;
    u = std::move(*pre);
    --i;
    --j;
  }
  Word out(static_cast<std::size_t>(i), Letter{t, true});
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), static_cast<std::size_t>(j), Letter{t, false});
  return out;
}

}  // namespace

Word dehn_reduce(const Presentation& p, std::span<const Letter> w) {
  p.check_letters(w);
  return dehn_pass(p.symmetrized(), Word(w.begin(), w.end()));
}

Word normal_form(const Presentation& p, std::span<const Letter> w) {
  p.check_letters(w);
  switch (p.backend()) {
    case Backend::Free: return free_reduce(w);
    case Backend::Abelian: return abelian_form(p, w);
    case Backend::Dehn: return dehn_canonical(p.symmetrized(), Word(w.begin(), w.end()));
    case Backend::Hnn: return britton_form(p, w);
  }
  throw Error(ErrorCode::BackendCannotDecide, "unsupported backend");
}

bool is_trivial(const Presentation& p, std::span<const Letter> w) {
  if (p.backend() == Backend::Dehn) return dehn_reduce(p, w).empty();
  return normal_form(p, w).empty();
}

bool equal_in_group(const Presentation& p, std::span<const Letter> u, std::span<const Letter> v) {
  return is_trivial(p, concat(inverse(u), v));
}

Word geodesic_word(const Presentation& p, std::span<const Letter> w) {
  Word nf = normal_form(p, w);
  if (p.backend() != Backend::Hnn) return nf;
  // Britton forms are not geodesic; breadth-first search below the bound.
  const std::size_t bound = nf.size();
  if (bound == 0) return nf;
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<std::pair<Word, Word>> sphere{{Word{}, Word{}}};  // (normal form, spelling)
  for (std::size_t r = 1; r < bound; ++r) {
    std::vector<std::pair<Word, Word>> next;
    for (const auto& [key, spelling] : sphere) {
      for (int g = 0; g < p.rank(); ++g) {
        for (bool inv : {false, true}) {
          Letter l{g, inv};
          Word cand = normal_form(p, concat(key, Word{l}));
          if (!seen.insert(cand).second) continue;
          Word sp = spelling;
          sp.push_back(l);
          if (cand == nf) return sp;
          next.emplace_back(std::move(cand), std::move(sp));
        }
      }
      if (seen.size() > 2'000'000)
        throw Error(ErrorCode::BudgetExceeded, "geodesic search too large");
    }
    sphere = std::move(next);
  }
  return nf;
}

int geodesic_length(const Presentation& p, std::span<const Letter> w) {
  return static_cast<int>(geodesic_word(p, w).size());
}

int max_piece_length(const Presentation& p) {
  if (p.relators().empty()) throw Error(ErrorCode::EmptyRelators, "no relators");
  const auto& sym = p.symmetrized();
  int best = 0;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    for (std::size_t j = i + 1; j < sym.size(); ++j) {
      std::size_t k = 0;
      while (k < sym[i].size() && k < sym[j].size() && sym[i][k] == sym[j][k]) ++k;
      best = std::max(best, static_cast<int>(k));
    }
  }
  return best;
}

bool check_small_cancellation(const Presentation& p, Rational lambda) {
  if (p.relators().empty()) throw Error(ErrorCode::EmptyRelators, "no relators");
  std::size_t shortest = p.relators().front().size();
  for (auto& r : p.relators()) shortest = std::min(shortest, r.size());
  return Rational(max_piece_length(p)) < lambda * static_cast<long long>(shortest);
}

Word apply_endomorphism(const Presentation& p, std::span<const Letter> w, int n) {
  if (p.backend() != Backend::Hnn)
    throw Error(ErrorCode::InvalidArgument, "presentation carries no endomorphism");
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  p.check_letters(w);
  for (Letter l : w)
    if (l.gen == *p.stable_letter())
      throw Error(ErrorCode::StableLetterInInput, "stable letter in endomorphism input");
  Word cur = free_reduce(w);
  for (int k = 0; k < n; ++k) cur = phi_word(p, cur);
  return cur;
}

namespace presets {

Presentation free_group(int rank) {
  std::vector<std::string> g;
  for (int i = 0; i < rank; ++i) g.push_back(std::string(1, static_cast<char>('a' + i)));
  return Presentation::free(g);
}

Presentation surface_group(int genus) {
  std::vector<std::string> g;
  for (int i = 0; i < 2 * genus; ++i) g.push_back(std::string(1, static_cast<char>('a' + i)));
  Word rel;
  for (int i = 0; i < genus; ++i) {
    int x = 2 * i, y = 2 * i + 1;
    rel.insert(rel.end(), {{x, false}, {y, false}, {x, true}, {y, true}});
  }
  return Presentation::dehn(g, {rel});
}

Presentation hnn_example() {
  Endomorphism phi;
  phi.images = {Word{{0, false}, {1, false}}, Word{{1, false}, {0, false}}, Word{}};
  return Presentation::hnn({"a", "b", "t"}, 2, phi);
}

Presentation z2() { return Presentation::abelian({"a", "b"}); }

}  // namespace presets

}  // namespace arbor
