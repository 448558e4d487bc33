#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

bool read_all(const std::string& path, std::string& text) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    buf << in.rdbuf();
  }
  text = buf.str();
  return true;
}

// Writes next to the destination and renames over it.
bool write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace foliq::cli;
  CLI::App app{"Exact quantization, reduction and localization for toric quasifolds"};
  std::string command, input, output, format = "table", box;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  unsigned budget = 64;
  app.add_option("command", command, "one of: quantize, bohr-sommerfeld, reduce-stages, localize, decompose, "
                                     "check-qr0, check-shift, check-stages, check-localization, "
                                     "check-suspension, demo-coadjoint")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("input", input, "problem document (JSON), or - for stdin")->required();
  app.add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "random seed for check-localization (default 1)");
  auto* trials_opt = app.add_option("--trials", trials, "random weights for check-localization (default 200)");
  auto* box_opt = app.add_option("--box", box, "weight box for localize, as lo:hi,lo:hi,...");
  app.add_option("--refine-budget", budget, "enclosure refinement steps before Undecidable");
  app.add_option("-o,--output", output, "write the result here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Options options;
  options.format = format == "json" ? Format::Json : Format::Table;
  if (*seed_opt) options.seed = seed;
  if (*trials_opt) options.trials = trials;
  if (*box_opt) options.box = box;
  options.refine_budget = budget;

  std::string text;
  if (!read_all(input, text)) {
    std::cerr << "error: cannot read " << input << '\n';
    return 2;
  }
  const Outcome outcome = run(command, text, options);
  const std::string rendered = render(outcome.document, options.format);
  if (outcome.exit_code == 2) std::cerr << "error: " << outcome.document["error"]["message"].get<std::string>() << '\n';
  if (output.empty()) {
    std::cout << rendered;
  } else if (!write_atomically(output, rendered)) {
    std::cerr << "error: cannot write " << output << '\n';
    return 2;
  }
  return outcome.exit_code;
}
