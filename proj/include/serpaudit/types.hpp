#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace serpaudit {

// Base class for every error raised by the library. Callers that only need a
// message can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input, with the source name and 1-based line number baked into
// the message ("serps.tsv:12: rank out of range").
class ParseError : public Error {
 public:
  ParseError(std::string_view source, std::size_t line, std::string_view what);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A well-formed input that violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

enum class Engine { engine1, engine2 };
enum class Location { UK, US };
enum class Leaning { conservative, liberal };

inline constexpr std::array<Engine, 2> kEngines = {Engine::engine1, Engine::engine2};
inline constexpr std::array<Location, 2> kLocations = {Location::UK, Location::US};

std::string_view to_string(Engine e);
std::string_view to_string(Location l);
std::string_view to_string(Leaning l);

std::optional<Engine> parse_engine(std::string_view s);
std::optional<Location> parse_location(std::string_view s);
std::optional<Leaning> parse_leaning(std::string_view s);

Leaning opposite(Leaning l);
Engine other(Engine e);

// One (engine, location) slice of a dataset.
struct Cell {
  Engine engine = Engine::engine1;
  Location location = Location::UK;

  auto operator<=>(const Cell&) const = default;
};

// "(engine1,UK)"
std::string to_string(const Cell& c);

}  // namespace serpaudit
