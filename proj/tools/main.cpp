#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "canht/error.hpp"
#include "commands.hpp"

using canht::DomainError;
using canht::ErrorKind;
using canht::ParseError;
using namespace canht::cli;

namespace {

enum Exit { kOk = 0, kDomain = 1, kParse = 2 };

struct Reply {
  json envelope;
  int code = kOk;
};

Reply error_reply(int code, const std::string& kind, const std::string& message) {
  json err;
  err["kind"] = kind;
  err["message"] = message;
  return {json{{"ok", false}, {"result", nullptr}, {"error", std::move(err)}}, code};
}

Reply answer(const Request& req, const Options& opt, const json& input) {
  try {
    return {json{{"ok", true}, {"result", run(req, opt, input)}, {"error", nullptr}}, kOk};
  } catch (const ParseError& e) {
    return error_reply(kParse, "ParseError", e.what());
  } catch (const json::exception& e) {
    return error_reply(kParse, "ParseError", e.what());
  } catch (const DomainError& e) {
    return error_reply(kDomain, std::string(canht::to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    return error_reply(kDomain, "InternalError", e.what());
  }
}

json read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input is not JSON: ") + e.what());
  }
}

// {"batch": [doc, ...]} runs every document; results keep input order.
Reply answer_batch(const Request& req, const Options& opt, const json& docs, unsigned jobs) {
  std::vector<Reply> out(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < docs.size();) out[i] = answer(req, opt, docs[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::min<std::size_t>(jobs, docs.size()); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  json results = json::array();
  int code = kOk;
  for (auto& r : out) {
    code = std::max(code, r.code);
    results.push_back(std::move(r.envelope));
  }
  return {json{{"ok", code == kOk}, {"result", std::move(results)}, {"error", nullptr}}, code};
}

// Splits the positional words into mode, arguments and input path.
Request bind(const std::string& command, std::vector<std::string> words, std::string& input_path) {
  Request req;
  req.command = command;
  std::size_t fixed = 1;  // mode
  if (command == "sl2-fiber") {
    if (words.size() != 1) throw ParseError("sl2-fiber takes one trace, or - for JSON on standard input");
    req.mode = "trace";
    input_path = words[0];
    return req;
  }
  if (words.empty()) throw ParseError(command + " needs a mode");
  req.mode = words[0];
  if (command == "intersect" && req.mode == "curves") fixed = 3;
  if (command == "borel" && req.mode == "pow") fixed = 2;
  if (words.size() < fixed) throw ParseError(command + " " + req.mode + " is missing arguments");
  req.args.assign(words.begin() + 1, words.begin() + static_cast<long>(fixed));
  if (words.size() > fixed + 1) throw ParseError("too many arguments");
  if (req.needs_input()) input_path = words.size() == fixed + 1 ? words[fixed] : "-";
  else if (words.size() > fixed) throw ParseError("too many arguments");
  return req;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical heights, torsion and quotient computations over number fields"};
  app.require_subcommand(1);
  Options opt;
  int cyclotomic = 0;
  std::string minpoly, format = "json";
  unsigned jobs = 1;
  app.add_option("--cyclotomic", cyclotomic, "work in Q(zeta_M)")->check(CLI::Range(1, 100000));
  app.add_option("--minpoly", minpoly, "JSON file with the defining polynomial");
  app.add_option("--eps", opt.eps, "target error for floating-point enclosures")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "worker threads for batch input")->check(CLI::Range(1u, 256u));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"height", "weil | projective | canonical | breuillard | sandwich [INPUT]"},
      {"classify", "torsion | u-torsion | jordan | fiber [INPUT]"},
      {"intersect", "curves K1 K2 | cosets [INPUT]"},
      {"sl2-fiber", "TAU, or - for a JSON element on standard input"},
      {"borel", "torsion [INPUT] | pow N [INPUT]"},
  };
  std::map<std::string, std::vector<std::string>> words;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("words", words[name], help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_reply(kParse, "ParseError", e.what()).envelope.dump() << '\n';
    return kParse;
  }

  if (cyclotomic > 0) opt.field.cyclotomic = cyclotomic;
  if (!minpoly.empty()) opt.field.minpoly_file = minpoly;

  Reply reply;
  try {
    const std::string command = app.get_subcommands().front()->get_name();
    std::string input_path;
    Request req = bind(command, words[command], input_path);
    json input;
    if (command == "sl2-fiber" && input_path != "-")
      input = input_path;
    else if (req.needs_input())
      input = read_document(input_path);
    if (input.is_object() && input.contains("batch")) {
      if (!input["batch"].is_array()) throw ParseError("\"batch\" must be an array");
      reply = answer_batch(req, opt, input["batch"], jobs);
    } else {
      reply = answer(req, opt, input);
    }
  } catch (const ParseError& e) {
    reply = error_reply(kParse, "ParseError", e.what());
  }
  std::cout << reply.envelope.dump() << '\n';
  return reply.code;
}
