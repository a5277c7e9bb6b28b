#include "serpaudit/types.hpp"

namespace serpaudit {

namespace {

std::string located(std::string_view source, std::size_t line, std::string_view what) {
  std::string msg(source);
  msg += ':';
  msg += std::to_string(line);
  msg += ": ";
  msg += what;
  return msg;
}

}  // namespace

ParseError::ParseError(std::string_view source, std::size_t line, std::string_view what)
    : Error(located(source, line, what)), line_(line) {}

std::string_view to_string(Engine e) {
  return e == Engine::engine1 ? "engine1" : "engine2";
}

std::string_view to_string(Location l) {
  return l == Location::UK ? "UK" : "US";
}

std::string_view to_string(Leaning l) {
  return l == Leaning::conservative ? "conservative" : "liberal";
}

std::optional<Engine> parse_engine(std::string_view s) {
  if (s == "engine1") return Engine::engine1;
  if (s == "engine2") return Engine::engine2;
  return std::nullopt;
}

std::optional<Location> parse_location(std::string_view s) {
  if (s == "UK") return Location::UK;
  if (s == "US") return Location::US;
  return std::nullopt;
}

std::optional<Leaning> parse_leaning(std::string_view s) {
  if (s == "conservative") return Leaning::conservative;
  if (s == "liberal") return Leaning::liberal;
  return std::nullopt;
}

Leaning opposite(Leaning l) {
  return l == Leaning::conservative ? Leaning::liberal : Leaning::conservative;
}

Engine other(Engine e) {
  return e == Engine::engine1 ? Engine::engine2 : Engine::engine1;
}

std::string to_string(const Cell& c) {
  std::string s = "(";
  s += to_string(c.engine);
  s += ',';
  s += to_string(c.location);
  s += ')';
  return s;
}

}  // namespace serpaudit
