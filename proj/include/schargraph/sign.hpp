#ifndef SCHARGRAPH_SIGN_HPP
#define SCHARGRAPH_SIGN_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schargraph {

/// Vertex sign, label parity and character all live in {+, -}.
enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<std::int8_t>(a) == static_cast<std::int8_t>(b) ? Sign::Plus : Sign::Minus;
}

constexpr Sign operator-(Sign a) { return a == Sign::Plus ? Sign::Minus : Sign::Plus; }

constexpr char to_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

inline std::string to_string(Sign s) { return std::string(1, to_char(s)); }

inline Sign parse_sign(std::string_view text) {
  if (text == "+" || text == "plus") return Sign::Plus;
  if (text == "-" || text == "minus") return Sign::Minus;
  throw std::invalid_argument("bad sign literal '" + std::string(text) + "'");
}

/// Dual orientation of a corner: arrow into the corner (sink) or out of it (source).
enum class Dir : std::uint8_t { In, Out };

constexpr Dir flip(Dir d) { return d == Dir::In ? Dir::Out : Dir::In; }

constexpr std::string_view to_string(Dir d) { return d == Dir::In ? "in" : "out"; }

inline Dir parse_dir(std::string_view text) {
  if (text == "in") return Dir::In;
  if (text == "out") return Dir::Out;
  throw std::invalid_argument("bad orientation literal '" + std::string(text) + "'");
}

/// Source corners read as +, sinks as - under the default dictionary.
constexpr Sign dir_to_sign(Dir d, bool out_is_plus = true) {
  return (d == Dir::Out) == out_is_plus ? Sign::Plus : Sign::Minus;
}

constexpr Dir sign_to_dir(Sign s, bool out_is_plus = true) {
  return (s == Sign::Plus) == out_is_plus ? Dir::Out : Dir::In;
}

}  // namespace schargraph

#endif  // SCHARGRAPH_SIGN_HPP
