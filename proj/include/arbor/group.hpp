#ifndef ARBOR_GROUP_HPP
#define ARBOR_GROUP_HPP

#include <arbor/error.hpp>

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

using Rational = boost::rational<long long>;

/// A generator or its inverse. Letters order as a < a' < b < b' < ...,
/// which is the order shortlex comparisons use.
struct Letter {
  int gen = 0;
  bool inv = false;

  constexpr Letter inverse() const { return {gen, !inv}; }
  constexpr int code() const { return 2 * gen + (inv ? 1 : 0); }
  constexpr int sign() const { return inv ? -1 : 1; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter a, Letter b) { return a.code() <=> b.code(); }
};

using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);
Word free_reduce(std::span<const Letter> w);
bool is_freely_reduced(std::span<const Letter> w);
bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b);
/// Cyclic rotation starting at position k.
Word rotate(std::span<const Letter> w, std::size_t k);

enum class Backend { Free, Dehn, Hnn, Abelian };

std::string_view to_string(Backend b);

/// Images of generators; entries for the stable letter are ignored.
struct Endomorphism {
  std::vector<Word> images;
};

class ImageSubgroup;

class Presentation {
public:
  static Presentation free(std::vector<std::string> gens);
  static Presentation dehn(std::vector<std::string> gens, std::vector<Word> relators);
  static Presentation abelian(std::vector<std::string> gens);
  static Presentation hnn(std::vector<std::string> gens, int stable, Endomorphism phi);

  const std::vector<std::string>& generators() const { return gens_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  Backend backend() const { return backend_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::optional<int> stable_letter() const { return stable_; }
  const Endomorphism& endomorphism() const { return phi_; }

  int generator_index(std::string_view name) const;
  /// Accepts "a b' c", "ab'c" (single-letter names) or "1" for the empty word.
  Word parse_word(std::string_view text) const;
  std::string format(std::span<const Letter> w) const;
  void check_letters(std::span<const Letter> w) const;

  /// Symmetrized relator set (cyclic shifts of relators and inverses).
  const std::vector<Word>& symmetrized() const { return symmetrized_; }
  const ImageSubgroup& image_subgroup() const;

private:
  Presentation() = default;
  void finalize();

  std::vector<std::string> gens_;
  std::vector<Word> relators_;
  Backend backend_ = Backend::Free;
  std::optional<int> stable_;
  Endomorphism phi_;
  std::vector<Word> symmetrized_;
  std::shared_ptr<const ImageSubgroup> image_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

/// Line-oriented text: `gens:`, `backend:`, and `rel:` keys; `#` comments.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::filesystem::path& path);
std::string to_text(const Presentation& p);

/// Subgroup phi(F) of the free base with preimage recovery; the image
/// generators are folded together with their domain words.
class ImageSubgroup {
public:
  ImageSubgroup(const std::vector<Word>& images, const std::vector<int>& domain_gens, int rank);
  std::optional<Word> preimage(std::span<const Letter> u) const;

private:
  struct Edge {
    int from;
    int to;
    int gen;
    Word weight;
  };
  std::vector<Edge> edges_;
  int vertices_ = 1;
};

Word normal_form(const Presentation& p, std::span<const Letter> w);
/// Raw Dehn algorithm: leftmost-longest replacement interleaved with free
/// reduction. Empty iff trivial under C'(1/6).
Word dehn_reduce(const Presentation& p, std::span<const Letter> w);
bool is_trivial(const Presentation& p, std::span<const Letter> w);
bool equal_in_group(const Presentation& p, std::span<const Letter> u, std::span<const Letter> v);
/// Word length in the Cayley graph.
int geodesic_length(const Presentation& p, std::span<const Letter> w);
/// Shortlex-first geodesic word for the element.
Word geodesic_word(const Presentation& p, std::span<const Letter> w);

/// Longest common prefix of two distinct symmetrized relators.
int max_piece_length(const Presentation& p);
bool check_small_cancellation(const Presentation& p, Rational lambda);

Word apply_endomorphism(const Presentation& p, std::span<const Letter> w, int n);

namespace presets {
Presentation free_group(int rank);
Presentation surface_group(int genus);
Presentation hnn_example();
Presentation z2();
}  // namespace presets

}  // namespace arbor

#endif
