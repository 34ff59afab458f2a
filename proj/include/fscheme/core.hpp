#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fscheme {

using VertexId = int;
using Color = std::uint8_t;   // 1..4
using Word = std::string;     // boundary coloring, one digit '1'..'4' per column

// Base class of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidParameter : Error {
  using Error::Error;
};
struct InvalidAttachment : Error {
  using Error::Error;
};
struct ConstructionError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct SizeGuardExceeded : Error {
  using Error::Error;
};

// Set of colors from {1,2,3,4} as a bitmask, bit c-1 for color c.
class ColorSet {
 public:
  constexpr ColorSet() = default;
  constexpr explicit ColorSet(unsigned bits) : bits_(static_cast<std::uint8_t>(bits & 0xF)) {}
  static constexpr ColorSet of(Color c) { return ColorSet(1u << (c - 1)); }
  static constexpr ColorSet all() { return ColorSet(0xF); }

  constexpr bool contains(Color c) const { return (bits_ >> (c - 1)) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned bits() const { return bits_; }
  constexpr int size() const {
    return ((bits_ >> 0) & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1) + ((bits_ >> 3) & 1);
  }
  constexpr Color min() const {
    for (Color c = 1; c <= 4; ++c)
      if (contains(c)) return c;
    return 0;
  }
  constexpr void insert(Color c) { bits_ |= static_cast<std::uint8_t>(1u << (c - 1)); }
  constexpr void erase(Color c) { bits_ &= static_cast<std::uint8_t>(~(1u << (c - 1))); }
  constexpr ColorSet operator|(ColorSet o) const { return ColorSet(bits_ | o.bits_); }
  constexpr ColorSet operator&(ColorSet o) const { return ColorSet(bits_ & o.bits_); }
  constexpr ColorSet operator-(ColorSet o) const { return ColorSet(bits_ & ~o.bits_); }
  constexpr bool operator==(const ColorSet&) const = default;

  std::vector<Color> colors() const {
    std::vector<Color> out;
    for (Color c = 1; c <= 4; ++c)
      if (contains(c)) out.push_back(c);
    return out;
  }
  // "2,4" style, ascending.
  std::string str() const {
    std::string s;
    for (Color c : colors()) {
      if (!s.empty()) s += ',';
      s += static_cast<char>('0' + c);
    }
    return s;
  }

 private:
  std::uint8_t bits_ = 0;
};

// The palette used by wheel hubs' neighbours; color 3 is reserved for hubs.
inline constexpr ColorSet kPalette = ColorSet(0b1011);

inline char color_char(Color c) { return static_cast<char>('0' + c); }
inline Color char_color(char ch) { return static_cast<Color>(ch - '0'); }

inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

// "E<n>" labels are 1-based: vertex 0 is E1.
inline std::string label(VertexId v) { return "E" + std::to_string(v + 1); }

inline std::uint64_t pow2(int e) { return e <= 0 ? 1u : (std::uint64_t{1} << e); }

// Color permutation: perm[c] is the image of c, perm[0] unused.
using Perm = std::array<Color, 5>;

inline constexpr Perm kIdentity{0, 1, 2, 3, 4};

inline std::vector<Perm> all_permutations() {
  std::vector<Perm> out;
  std::array<Color, 4> img{1, 2, 3, 4};
  do out.push_back(Perm{0, img[0], img[1], img[2], img[3]});
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Permutations fixing the base colors 1 and 2.
inline std::vector<Perm> base_fixing_permutations() { return {kIdentity, Perm{0, 1, 2, 4, 3}}; }

inline ColorSet apply(const Perm& p, ColorSet s) {
  ColorSet out;
  for (Color c : s.colors()) out.insert(p[c]);
  return out;
}

inline Word apply(const Perm& p, const Word& w) {
  Word out = w;
  for (char& ch : out) ch = color_char(p[char_color(ch)]);
  return out;
}

inline Perm inverse(const Perm& p) {
  Perm q{};
  for (Color c = 1; c <= 4; ++c) q[p[c]] = c;
  return q;
}

// Cycle notation without fixed points, "id" for the identity: "(1 4)(2 3)".
inline std::string cycle_str(const Perm& p) {
  std::string out;
  std::array<bool, 5> seen{};
  for (Color c = 1; c <= 4; ++c) {
    if (seen[c] || p[c] == c) continue;
    out += '(';
    for (Color d = c; !seen[d]; d = p[d]) {
      seen[d] = true;
      if (out.back() != '(') out += ' ';
      out += color_char(d);
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

}  // namespace fscheme
