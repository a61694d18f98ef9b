// coind-while: command-line driver for the While interpreters and checkers.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coind_while/coind_while.hpp"

namespace {

using namespace cwhile;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kError = 1,
  kTruncated = 2,
  kInputExhausted = 3,
  kDistinguished = 4,
  kBudgetExhausted = 5,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<Val> parse_val(std::string_view text) {
  Val v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<Val> parse_values(const std::string& text, const char* flag) {
  std::vector<Val> out;
  if (text.empty()) return out;
  for (const auto& part : split(text, ',')) {
    auto v = parse_val(part);
    if (!v) throw UsageError(std::string(flag) + ": not an integer: '" + part + "'");
    out.push_back(*v);
  }
  return out;
}

/// Interns every `name=value` pair of --init and returns the pairs.
std::vector<std::pair<Var, Val>> parse_init(const std::string& text, NameTable& names) {
  std::vector<std::pair<Var, Val>> out;
  if (text.empty()) return out;
  for (const auto& part : split(text, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--init: expected name=value, got '" + part + "'");
    std::string name = part.substr(0, eq);
    if (!is_identifier(name)) throw UsageError("--init: not a variable name: '" + name + "'");
    auto v = parse_val(std::string_view(part).substr(eq + 1));
    if (!v) throw UsageError("--init: not an integer: '" + part.substr(eq + 1) + "'");
    out.emplace_back(names.intern(name), *v);
  }
  return out;
}

State initial_state(const std::vector<std::pair<Var, Val>>& bindings) {
  State s;
  for (const auto& [x, v] : bindings) s = s.update(x, v);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParsedProgram load(const std::string& path, NameTable names) {
  std::string src = read_file(path);
  try {
    return parse(src, std::move(names));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

json state_json(const State& s, const NameTable& names) {
  json obj = json::object();
  for (const auto& [name, value] : named_bindings(s, names)) obj[name] = value;
  return obj;
}

json event_json(const Event& e, const NameTable& names) {
  return std::visit(overloaded{
                        [](const EvDelay&) { return json{{"tag", "delay"}}; },
                        [](const EvIn& x) { return json{{"tag", "in"}, {"value", x.value}}; },
                        [](const EvOut& x) { return json{{"tag", "out"}, {"value", x.value}}; },
                        [&](const EvRet& x) { return json{{"tag", "ret"}, {"state", state_json(x.state, names)}}; },
                        [](const EvTruncated&) { return json{{"tag", "truncated"}}; },
                        [](const EvInputExhausted&) { return json{{"tag", "input-exhausted"}}; },
                    },
                    e);
}

json path_json(const std::vector<Event>& path, const NameTable& names) {
  json arr = json::array();
  for (const auto& e : path) arr.push_back(event_json(e, names));
  return arr;
}

int exit_for(const Event& terminal) {
  if (std::holds_alternative<EvRet>(terminal)) return kOk;
  if (std::holds_alternative<EvTruncated>(terminal)) return kTruncated;
  return kInputExhausted;
}

/// Reads one integer per line from standard input, prompting on stderr.
struct InteractiveInput {
  std::optional<Val> next_input() {
    std::cout.flush();
    for (;;) {
      std::cerr << "? " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) return std::nullopt;
      auto b = line.find_first_not_of(" \t\r");
      auto e = line.find_last_not_of(" \t\r");
      if (b != std::string::npos) {
        if (auto v = parse_val(std::string_view(line).substr(b, e - b + 1))) return v;
      }
      std::cerr << "not an integer: '" << line << "'\n";
    }
  }
};

struct RunOptions {
  std::string file;
  std::string mode = "big";
  std::size_t fuel = 10000;
  std::string script;
  bool interactive = false;
  std::string emit = "events";
  std::string init;
  bool json = false;
};

int cmd_run(const RunOptions& opt) {
  NameTable names;
  auto init = parse_init(opt.init, names);
  ParsedProgram prog = load(opt.file, std::move(names));
  State s0 = initial_state(init);
  const bool big = opt.mode == "big";

  if (opt.emit == "states") {
    if (!is_pure(prog.stmt)) throw UsageError("--emit states needs a program without input/output");
    Trace t = big ? pure::eval(prog.stmt, s0) : pure::norm(prog.stmt, s0);
    PrefixStatus status = walk(t, opt.fuel, [&](const State& s) {
      if (opt.json) {
        std::cout << json{{"tag", "state"}, {"state", state_json(s, prog.names)}}.dump() << '\n';
      } else {
        std::cout << format_state(s, prog.names) << '\n';
      }
    });
    const char* word = status == PrefixStatus::Ended ? "ended" : "truncated";
    std::cout << (opt.json ? json{{"tag", word}}.dump() : std::string(word)) << '\n';
    return status == PrefixStatus::Ended ? kOk : kTruncated;
  }

  Res r = big ? io::eval(prog.stmt, s0) : io::norm(prog.stmt, s0);
  std::size_t delays = 0;
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  const bool summary_only = opt.emit == "summary";
  auto sink = [&](const Event& e) {
    if (std::holds_alternative<EvDelay>(e)) ++delays;
    if (std::holds_alternative<EvIn>(e)) ++inputs;
    if (std::holds_alternative<EvOut>(e)) ++outputs;
    if (summary_only) return;
    std::cout << (opt.json ? event_json(e, prog.names).dump() : format_event(e, prog.names)) << '\n';
    if (opt.interactive) std::cout.flush();
  };

  Event terminal = EvTruncated{};
  if (opt.interactive) {
    InteractiveInput source;
    terminal = drive(r, source, opt.fuel, sink);
  } else {
    InputScript source(parse_values(opt.script, "--script"));
    terminal = drive(r, source, opt.fuel, sink);
  }
  if (summary_only) {
    if (opt.json) {
      std::cout << json{{"tag", "summary"},
                        {"result", event_json(terminal, prog.names)},
                        {"delays", delays},
                        {"inputs", inputs},
                        {"outputs", outputs}}
                       .dump()
                << '\n';
    } else {
      std::cout << "result=" << format_event(terminal, prog.names) << " delays=" << delays << " inputs=" << inputs
                << " outputs=" << outputs << '\n';
    }
  }
  return exit_for(terminal);
}

struct CompareOptions {
  std::string file;
  std::size_t fuel = 10000;
  std::string script;
  std::string init;
  bool json = false;
};

int cmd_compare(const CompareOptions& opt) {
  NameTable names;
  auto init = parse_init(opt.init, names);
  ParsedProgram prog = load(opt.file, std::move(names));
  State s0 = initial_state(init);

  if (is_pure(prog.stmt)) {
    Verdict v = trace_eq(pure::eval(prog.stmt, s0), pure::norm(prog.stmt, s0), opt.fuel);
    if (auto* d = std::get_if<Distinguished>(&v)) {
      std::size_t index = d->path.size();
      if (opt.json) {
        std::cout << json{{"tag", "diverge"},
                          {"index", index},
                          {"big", format_observation(d->left, prog.names)},
                          {"small", format_observation(d->right, prog.names)}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "traces diverge at step " << index << ": big " << format_observation(d->left, prog.names)
                  << ", small " << format_observation(d->right, prog.names) << '\n';
      }
      return kDistinguished;
    }
  } else {
    std::vector<Val> script = parse_values(opt.script, "--script");
    auto big = run(io::eval(prog.stmt, s0), InputScript(script), opt.fuel);
    auto small = run(io::norm(prog.stmt, s0), InputScript(script), opt.fuel);
    std::size_t n = std::min(big.size(), small.size());
    std::size_t i = 0;
    while (i < n && big[i] == small[i]) ++i;
    if (i < n || big.size() != small.size()) {
      auto show = [&](const std::vector<Event>& log) {
        return i < log.size() ? format_event(log[i], prog.names) : std::string("end of log");
      };
      if (opt.json) {
        std::cout << json{{"tag", "diverge"}, {"index", i}, {"big", show(big)}, {"small", show(small)}}.dump()
                  << '\n';
      } else {
        std::cout << "logs diverge at event " << i << ": big " << show(big) << ", small " << show(small) << '\n';
      }
      return kDistinguished;
    }
  }
  if (opt.json) {
    std::cout << json{{"tag", "agree"}, {"fuel", opt.fuel}}.dump() << '\n';
  } else {
    std::cout << "agree up to fuel " << opt.fuel << '\n';
  }
  return kOk;
}

struct CheckOptions {
  std::string file_a;
  std::string file_b;
  std::size_t delay_budget = 16;
  std::size_t latency_budget = 16;
  std::size_t depth_budget = 100;
  std::size_t node_budget = 100000;
  std::string sample = "0,1,-1";
  std::string init;
  bool json = false;
};

int cmd_bisim(const CheckOptions& opt) {
  NameTable names;
  auto init = parse_init(opt.init, names);
  ParsedProgram a = load(opt.file_a, std::move(names));
  // Both programs share one name table so equal names denote equal variables.
  ParsedProgram b = load(opt.file_b, a.names);
  State s0 = initial_state(init);

  BisimConfig cfg;
  cfg.delay_budget = opt.delay_budget;
  cfg.depth_budget = opt.depth_budget;
  cfg.node_budget = opt.node_budget;
  cfg.input_sample = parse_values(opt.sample, "--sample");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const NameTable& nt = b.names;
  Verdict v = delay_bisim(io::eval(a.stmt, s0), io::eval(b.stmt, s0), cfg);
  return std::visit(overloaded{
                        [&](const EquivalentUpToBounds& x) {
                          if (opt.json) {
                            std::cout << json{{"tag", "equivalent"}, {"cut_branches", x.cut_branches}}.dump();
                          } else {
                            std::cout << "equivalent up to bounds (cut branches: " << x.cut_branches << ")";
                          }
                          std::cout << '\n';
                          return int{kOk};
                        },
                        [&](const Distinguished& x) {
                          if (opt.json) {
                            std::cout << json{{"tag", "distinguished"},
                                              {"path", path_json(x.path, nt)},
                                              {"left", format_observation(x.left, nt)},
                                              {"right", format_observation(x.right, nt)}}
                                             .dump();
                          } else {
                            std::cout << "distinguished after " << format_path(x.path, nt) << ": left "
                                      << format_observation(x.left, nt) << ", right "
                                      << format_observation(x.right, nt);
                          }
                          std::cout << '\n';
                          return int{kDistinguished};
                        },
                        [&](const BudgetExhausted& x) {
                          const char* which = x.budget == Budget::Delay ? "delay" : "nodes";
                          if (opt.json) {
                            std::cout << json{{"tag", "budget-exhausted"},
                                              {"budget", which},
                                              {"path", path_json(x.path, nt)}}
                                             .dump();
                          } else {
                            std::cout << "budget exhausted (" << which << ") after " << format_path(x.path, nt);
                          }
                          std::cout << '\n';
                          return int{kBudgetExhausted};
                        },
                    },
                    v);
}

int cmd_responsive(const CheckOptions& opt) {
  NameTable names;
  auto init = parse_init(opt.init, names);
  ParsedProgram prog = load(opt.file_a, std::move(names));
  State s0 = initial_state(init);
  std::vector<Val> sample = parse_values(opt.sample, "--sample");
  if (sample.empty()) throw UsageError("--sample must be nonempty");
  if (opt.latency_budget == 0 || opt.depth_budget == 0 || opt.node_budget == 0) {
    throw UsageError("budgets must be positive");
  }

  const NameTable& nt = prog.names;
  ResponsiveVerdict v =
      responsive(io::eval(prog.stmt, s0), opt.latency_budget, opt.depth_budget, sample, opt.node_budget);
  return std::visit(overloaded{
                        [&](const ResponsiveUpToBounds& x) {
                          if (opt.json) {
                            std::cout << json{{"tag", "responsive"}, {"cut_branches", x.cut_branches}}.dump();
                          } else {
                            std::cout << "responsive up to bounds (cut branches: " << x.cut_branches << ")";
                          }
                          std::cout << '\n';
                          return int{kOk};
                        },
                        [&](const LatencyExceeded& x) {
                          if (opt.json) {
                            std::cout << json{{"tag", "latency-exceeded"}, {"path", path_json(x.path, nt)}}.dump();
                          } else {
                            std::cout << "latency exceeded after " << format_path(x.path, nt);
                          }
                          std::cout << '\n';
                          return int{kDistinguished};
                        },
                        [&](const ResponsivenessBudgetExhausted& x) {
                          if (opt.json) {
                            std::cout << json{{"tag", "budget-exhausted"},
                                              {"budget", "nodes"},
                                              {"path", path_json(x.path, nt)}}
                                             .dump();
                          } else {
                            std::cout << "budget exhausted (nodes) after " << format_path(x.path, nt);
                          }
                          std::cout << '\n';
                          return int{kBudgetExhausted};
                        },
                    },
                    v);
}

int cmd_parse(const std::string& file) {
  ParsedProgram prog = load(file, {});
  std::cout << pretty(prog.stmt, prog.names) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total interpreters and bounded checkers for While with interactive I/O"};
  app.name("coind-while");
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Run a program and print its trace or event log");
  run_cmd->add_option("file", run_opt.file, "Program file")->required();
  run_cmd->add_option("--mode", run_opt.mode, "Interpreter: big or small")
      ->check(CLI::IsMember({"big", "small"}))
      ->capture_default_str();
  run_cmd->add_option("--fuel", run_opt.fuel, "Step budget")->capture_default_str();
  auto* script_opt = run_cmd->add_option("--script", run_opt.script, "Comma-separated input values");
  run_cmd->add_flag("--interactive", run_opt.interactive, "Read inputs from standard input")->excludes(script_opt);
  run_cmd->add_option("--emit", run_opt.emit, "Output: events, states or summary")
      ->check(CLI::IsMember({"events", "states", "summary"}))
      ->capture_default_str();
  run_cmd->add_option("--init", run_opt.init, "Initial bindings, e.g. x=5,y=7");
  run_cmd->add_flag("--json", run_opt.json, "One JSON object per line");

  CompareOptions cmp_opt;
  auto* cmp_cmd = app.add_subcommand("compare", "Run both interpreters and diff their output");
  cmp_cmd->add_option("file", cmp_opt.file, "Program file")->required();
  cmp_cmd->add_option("--fuel", cmp_opt.fuel, "Step budget")->capture_default_str();
  cmp_cmd->add_option("--script", cmp_opt.script, "Comma-separated input values");
  cmp_cmd->add_option("--init", cmp_opt.init, "Initial bindings, e.g. x=5,y=7");
  cmp_cmd->add_flag("--json", cmp_opt.json, "JSON report");

  CheckOptions bis_opt;
  auto* bis_cmd = app.add_subcommand("bisim", "Bounded delay-bisimilarity check of two programs");
  bis_cmd->add_option("file_a", bis_opt.file_a, "First program")->required();
  bis_cmd->add_option("file_b", bis_opt.file_b, "Second program")->required();
  bis_cmd->add_option("--delay-budget", bis_opt.delay_budget, "Delays stripped per step")->capture_default_str();
  bis_cmd->add_option("--depth-budget", bis_opt.depth_budget, "Unfolding depth")->capture_default_str();
  bis_cmd->add_option("--node-budget", bis_opt.node_budget, "Explored pairs")->capture_default_str();
  bis_cmd->add_option("--sample", bis_opt.sample, "Input values probed at each read")->capture_default_str();
  bis_cmd->add_option("--init", bis_opt.init, "Initial bindings, e.g. x=5,y=7");
  bis_cmd->add_flag("--json", bis_opt.json, "JSON report");

  CheckOptions resp_opt;
  auto* resp_cmd = app.add_subcommand("responsive", "Bounded responsiveness check");
  resp_cmd->add_option("file", resp_opt.file_a, "Program file")->required();
  resp_cmd->add_option("--latency-budget", resp_opt.latency_budget, "Delays allowed between actions")
      ->capture_default_str();
  resp_cmd->add_option("--depth-budget", resp_opt.depth_budget, "Unfolding depth")->capture_default_str();
  resp_cmd->add_option("--node-budget", resp_opt.node_budget, "Explored nodes")->capture_default_str();
  resp_cmd->add_option("--sample", resp_opt.sample, "Input values probed at each read")->capture_default_str();
  resp_cmd->add_option("--init", resp_opt.init, "Initial bindings, e.g. x=5,y=7");
  resp_cmd->add_flag("--json", resp_opt.json, "JSON report");

  std::string parse_file;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a program and pretty-print it");
  parse_cmd->add_option("file", parse_file, "Program file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*run_cmd) return cmd_run(run_opt);
    if (*cmp_cmd) return cmd_compare(cmp_opt);
    if (*bis_cmd) return cmd_bisim(bis_opt);
    if (*resp_cmd) return cmd_responsive(resp_opt);
    if (*parse_cmd) return cmd_parse(parse_file);
  } catch (const UsageError& e) {
    std::cerr << "coind-while: " << e.what() << '\n';
    return kError;
  } catch (const ContractError& e) {
    std::cerr << "coind-while: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
