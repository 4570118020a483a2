// levytype: exponent tables, path simulation, Monte Carlo check suites and
// symbol estimation from the command line.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using levytype::Json;
namespace cli = levytype::cli;

int main(int argc, char** argv) {
  CLI::App app{"Lévy and Lévy-type process toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LEVYTYPE_VERSION);

  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool plot = false;
  std::string triplet_file;
  std::string method;
  std::string suite;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON run configuration");
    sub->add_option("--seed", seed, "global seed");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--plot", plot, "also write SVG charts");
  };
  auto* exponent = app.add_subcommand("exponent", "tabulate psi on a xi grid");
  common(exponent);
  exponent->add_option("--triplet", triplet_file, "triplet JSON file");
  auto* simulate = app.add_subcommand("simulate", "sample paths");
  common(simulate);
  simulate->add_option("--method", method, "poisson|cpp|bm-levy|levy-ito|series|sde");
  auto* validate = app.add_subcommand("validate", "run a Monte Carlo check suite");
  common(validate);
  validate->add_option("--suite", suite, "cf|campbell|isometry|dynkin|martingale|ck");
  auto* symbol = app.add_subcommand("symbol", "evaluate and estimate a symbol");
  common(symbol);
  auto* indices = app.add_subcommand("indices", "growth indices at infinity");
  common(indices);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << cli::error_payload("usage", e.what()) << '\n';
    return cli::kInvalidInput;
  }

  cli::RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!config_file.empty()) {
      Json doc = levytype::read_json(config_file);
      if (!doc.is_object()) {
        throw levytype::SchemaError("config must be a JSON object");
      }
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& k = it.key();
        if (k == "seed") {
          if (!it->is_number_unsigned()) {
            throw levytype::SchemaError("seed must be an unsigned integer");
          }
          cfg.seed = it->get<std::uint64_t>();
        } else if (k == "out") {
          cfg.out = it->get<std::string>();
        } else if (k == "format") {
          cfg.format = it->get<std::string>();
        } else if (k == "plot") {
          cfg.plot = it->get<bool>();
        } else if (k != "command") {
          cfg.params[k] = *it;
        }
      }
    }
    if (seed) {
      cfg.seed = *seed;
    }
    if (out) {
      cfg.out = *out;
    }
    if (format) {
      cfg.format = *format;
    }
    cfg.plot = cfg.plot || plot;
    if (!triplet_file.empty()) {
      cfg.params["triplet"] = levytype::read_json(triplet_file);
    }
    if (!method.empty()) {
      cfg.params["method"] = method;
    }
    if (!suite.empty()) {
      cfg.params["suite"] = suite;
    }
    int code = cli::run(cfg);
    if (code == cli::kCheckFailed) {
      std::cerr << cli::error_payload("CheckFailed", "check did not pass; see report.json") << '\n';
    }
    return code;
  } catch (const levytype::PreconditionFailed& e) {
    std::cerr << cli::error_payload(e.code(), e.what()) << '\n';
    return cli::kPrecondition;
  } catch (const levytype::Error& e) {
    std::cerr << cli::error_payload(e.code(), e.what()) << '\n';
    return cli::kInvalidInput;
  } catch (const Json::exception& e) {
    std::cerr << cli::error_payload("schema", e.what()) << '\n';
    return cli::kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << cli::error_payload("error", e.what()) << '\n';
    return cli::kInvalidInput;
  }
}
