#pragma once

#include <string>
#include <vector>

#include "codec.hpp"

namespace canht::cli {

struct Options {
  FieldSpec field;
  double eps = kDefaultEps;
};

// One subcommand with its positional words already bound, e.g.
// {"height", "canonical"} or {"intersect", "curves", "3", "5"}.
struct Request {
  std::string command;
  std::string mode;
  std::vector<std::string> args;
  // False for commands that take no JSON body.
  bool needs_input() const;
};

// Result body for one input document. Throws ParseError or DomainError.
json run(const Request& req, const Options& opt, const json& input);

}  // namespace canht::cli
