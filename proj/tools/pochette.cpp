// Command-line front end: surgery reports, slope sweeps, and the group
// engines (enumeration, abelianization, simplification, cord checks).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pochette/pochette.hpp"
#include "pochette/report.hpp"

namespace {

using namespace pochette;
using report::Json;

struct InputError : Error {
  using Error::Error;
};

std::size_t env_default(const char *name, std::size_t fallback) {
  const char *value = std::getenv(name);
  if (value == nullptr || *value == '\0')
    return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used == std::string(value).size() && v > 0)
      return static_cast<std::size_t>(v);
  } catch (const std::exception &) {
  }
  throw InputError(std::string("environment variable ") + name + " must be a positive integer");
}

std::string shell_quote(const std::string &arg) {
  if (!arg.empty() && arg.find_first_of(" \t\n'\"\\$`;|&<>*?()") == std::string::npos)
    return arg;
  std::string out = "'";
  for (char c : arg)
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string invocation(int argc, char **argv) {
  std::string out = "pochette";
  for (int i = 1; i < argc; ++i)
    out += " " + shell_quote(argv[i]);
  return out;
}

/// Preset name or file path. File parse errors are prefixed with the path.
struct Source {
  std::string name;
  LoadedGroup group;
};

Source load_source(const std::string &name) {
  if (auto preset = load_preset(name))
    return {name, *preset};
  std::ifstream in(name);
  if (!in)
    throw InputError("cannot open '" + name + "' (not a preset or readable file)");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return {name, load_group_text(buffer.str())};
  } catch (const ParseError &e) {
    throw InputError(name + ": " + e.what());
  } catch (const InvalidFusionGraph &e) {
    throw InputError(name + ": " + e.what());
  }
}

Word word_option(const std::string &text, const Alphabet &alphabet, const char *what) {
  try {
    return parse_word(text, alphabet);
  } catch (const ParseError &e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Word resolve_word(const std::string &option, const std::optional<Word> &fallback,
                  const Alphabet &alphabet, const char *what) {
  if (!option.empty())
    return word_option(option, alphabet, what);
  if (fallback)
    return *fallback;
  throw InputError(std::string("--") + what + " is required for this input");
}

std::pair<Integer, Integer> parse_range(const std::string &text, const char *what) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const Integer v = std::stoll(text);
      return {v, v};
    }
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const Integer lo = std::stoll(a, &used_a), hi = std::stoll(b, &used_b);
    if (used_a != a.size() || used_b != b.size())
      throw std::invalid_argument(text);
    if (hi - lo > 10'000)
      throw InputError(std::string(what) + " range too large");
    return {lo, hi};
  } catch (const std::logic_error &) {
    throw InputError(std::string(what) + " must be 'lo:hi', got '" + text + "'");
  }
}

std::vector<Word> parse_word_list(const std::string &text, const Alphabet &alphabet) {
  std::vector<Word> out;
  if (text.empty())
    return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';'))
    if (part.find_first_not_of(" \t") != std::string::npos)
      out.push_back(word_option(part, alphabet, "subgroup"));
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pochette surgery invariants and group-theoretic certificates"};
  app.require_subcommand(1);

  std::string format = "text";
  bool timing = false;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--timing", timing, "Append wall time (makes output run-dependent)");

  std::size_t max_cosets = 0, tietze_steps = 0, max_degree = 0;
  std::string meridian_text, longitude_text, cord_text, subgroup_text;
  std::string source_name, slope_text = "1/0", p_range = "1:6", q_range = "-6:6";
  std::vector<std::string> cword_args;
  int framing = 0;
  std::size_t jobs = 1;
  std::optional<Integer> q_offset;
  std::uint64_t seed = 1;
  std::size_t fusion_n = 1, max_word_length = 4;

  try {
    max_cosets = env_default("POCHETTE_MAX_COSETS", default_max_cosets);
    tietze_steps = env_default("POCHETTE_TIETZE_STEPS", 10'000);
    max_degree = env_default("POCHETTE_MAX_DEGREE", default_max_degree);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto add_source = [&](CLI::App *cmd) {
    cmd->add_option("source", source_name,
                    "Presentation or fusion file, or a preset (spun-trefoil, "
                    "one-fusion:<word>:<sign>)")
        ->required();
  };
  const auto add_cosets = [&](CLI::App *cmd) {
    cmd->add_option("--max-cosets", max_cosets, "Coset enumeration budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const auto add_tietze = [&](CLI::App *cmd) {
    cmd->add_option("--tietze-steps", tietze_steps, "Tietze move budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const auto add_embedding = [&](CLI::App *cmd) {
    cmd->add_option("--meridian", meridian_text, "Meridian word (preset default if omitted)");
    cmd->add_option("--longitude", longitude_text, "Longitude word (preset default if omitted)");
  };

  auto *cword = app.add_subcommand("cword", "Print the surgery relator word for slope p/q");
  cword->add_option("slope", cword_args, "Either 'p q' or 'p/q'")->required()->expected(1, 2);

  auto *surger = app.add_subcommand("surger", "Invariants and S^4 verdict of one surgery");
  add_source(surger);
  add_embedding(surger);
  surger->add_option("--slope", slope_text, "Slope p/q (1/0 is infinity)")->capture_default_str();
  surger->add_option("--framing", framing, "Mod 2 framing")->check(CLI::IsMember({0, 1}));
  add_cosets(surger);
  add_tietze(surger);

  auto *sweep = app.add_subcommand("sweep", "Verdicts over a grid of slopes");
  add_source(sweep);
  add_embedding(sweep);
  sweep->add_option("--p-range", p_range, "p range lo:hi")->capture_default_str();
  sweep->add_option("--q-range", q_range, "q range lo:hi")->capture_default_str();
  sweep->add_option("--q-offset", q_offset, "Use q = p + K instead of --q-range");
  sweep->add_option("--framing", framing, "Mod 2 framing")->check(CLI::IsMember({0, 1}));
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_cosets(sweep);
  add_tietze(sweep);

  auto *enumerate_cmd = app.add_subcommand("enumerate", "Todd-Coxeter coset enumeration");
  add_source(enumerate_cmd);
  enumerate_cmd->add_option("--subgroup", subgroup_text, "Subgroup generators 'w1; w2'");
  add_cosets(enumerate_cmd);

  auto *abelianize = app.add_subcommand("abelianize", "Abelian invariants");
  add_source(abelianize);

  auto *simplify = app.add_subcommand("simplify", "Tietze simplification");
  add_source(simplify);
  add_tietze(simplify);

  auto *cordcheck = app.add_subcommand("cordcheck", "Cord triviality in <m> \\ G / <m>");
  add_source(cordcheck);
  cordcheck->add_option("--meridian", meridian_text, "Meridian word (preset default if omitted)");
  cordcheck->add_option("--cord", cord_text, "Cord class word")->required();
  add_cosets(cordcheck);
  cordcheck->add_option("--max-degree", max_degree, "Permutation quotient degree bound (<= 8)")
      ->check(CLI::Range(std::size_t{1}, max_supported_degree))
      ->capture_default_str();

  auto *random_fusion_cmd =
      app.add_subcommand("random-fusion", "Print a seeded random fusion file");
  random_fusion_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  random_fusion_cmd->add_option("--n", fusion_n, "Number of bands")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}))
      ->capture_default_str();
  random_fusion_cmd->add_option("--max-word-length", max_word_length, "Band word length bound")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string echo = invocation(argc, argv);
  const auto started = std::chrono::steady_clock::now();
  try {
    Json out;
    if (*random_fusion_cmd) {
      std::mt19937_64 rng(seed);
      std::cout << "# pochette random-fusion --seed " << seed << " --n " << fusion_n
                << " --max-word-length " << max_word_length << "\n"
                << to_string(random_fusion(rng, fusion_n, max_word_length));
      return 0;
    } else if (*cword) {
      SlopeSpec slope = SlopeSpec::make(1, 0);
      if (cword_args.size() == 1) {
        slope = parse_slope(cword_args[0]);
      } else {
        try {
          slope = SlopeSpec::make(std::stoll(cword_args[0]), std::stoll(cword_args[1]));
        } catch (const std::logic_error &) {
          throw InputError("cword expects integers p q");
        }
      }
      if (slope.p() == 0)
        throw InputError("cword is undefined for p = 0 (the relator is the longitude)");
      out = report::cword_report(slope, echo);
    } else {
      const Source src = load_source(source_name);
      const FinitePresentation &group = src.group.presentation;
      const Alphabet &alphabet = group.alphabet();

      if (*surger || *sweep) {
        const PochetteEmbeddingData data{
            group, resolve_word(meridian_text, src.group.meridian, alphabet, "meridian"),
            resolve_word(longitude_text, src.group.longitude, alphabet, "longitude")};
        const DetectionBudgets budgets{max_cosets, tietze_steps};
        if (*surger) {
          out = report::surger_report(src.name, data, parse_slope(slope_text, framing), budgets,
                                      echo);
        } else {
          const auto [p_lo, p_hi] = parse_range(p_range, "--p-range");
          std::vector<std::pair<Integer, Integer>> grid;
          if (q_offset) {
            for (Integer p = p_lo; p <= p_hi; ++p)
              grid.emplace_back(p, p + *q_offset);
          } else {
            const auto [q_lo, q_hi] = parse_range(q_range, "--q-range");
            for (Integer p = p_lo; p <= p_hi; ++p)
              for (Integer q = q_lo; q <= q_hi; ++q)
                grid.emplace_back(p, q);
          }
          out = report::sweep_report(src.name, data, report::slope_grid(grid, framing), budgets,
                                     jobs, echo);
        }
      } else if (*enumerate_cmd) {
        out = report::enumerate_report(src.name, group, parse_word_list(subgroup_text, alphabet),
                                       max_cosets, echo);
      } else if (*abelianize) {
        out = report::abelianize_report(src.name, group, echo);
      } else if (*simplify) {
        out = report::simplify_report(src.name, group, tietze_steps, echo);
      } else if (*cordcheck) {
        const Word meridian = resolve_word(meridian_text, src.group.meridian, alphabet, "meridian");
        const Word cord = word_option(cord_text, alphabet, "cord");
        out = report::cordcheck_report(src.name, group, meridian, cord,
                                       CordBudgets{max_cosets, max_degree}, echo);
      }
    }
    if (timing) {
      const auto elapsed = std::chrono::steady_clock::now() - started;
      out["wall_time_ms"] =
          std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
    }
    if (format == "json")
      std::cout << out.dump(2) << "\n";
    else
      std::cout << report::render_text(out);
    return 0;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
