#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wideband/cli.hpp"
#include "wideband/spec_file.hpp"

namespace {

struct ChannelArgs {
  std::string channel;
  double gain = 1.0;
  bool gain_set = false;
  std::string spec_path;
};

void add_channel_options(CLI::App* cmd, ChannelArgs& args) {
  cmd->add_option("--channel", args.channel, "Channel kind: awgn or tabulated");
  cmd->add_option("--gain", args.gain, "Channel power gain (awgn)")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { args.gain_set = true; });
  cmd->add_option("--spec", args.spec_path, "Channel spec file path");
}

wideband::ChannelModel resolve_channel(const ChannelArgs& args) {
  if (!args.spec_path.empty()) {
    if (!args.channel.empty() || args.gain_set)
      throw wideband::spec_parse_error("--spec cannot be combined with --channel/--gain");
    return wideband::load_channel_spec(args.spec_path);
  }
  if (args.channel == "awgn") return wideband::ChannelModel::awgn(args.gain);
  if (args.channel == "tabulated")
    throw wideband::spec_parse_error("tabulated channels require --spec FILE");
  if (args.channel.empty())
    throw wideband::spec_parse_error("no channel given; use --channel awgn --gain G or --spec FILE");
  throw wideband::spec_parse_error("unknown channel kind: " + args.channel);
}

wideband::cli::OutputFormat resolve_format(const std::string& name) {
  if (name == "csv") return wideband::cli::OutputFormat::csv;
  if (name == "json") return wideband::cli::OutputFormat::json;
  throw wideband::spec_parse_error("unknown output format: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-efficiency versus energy-per-bit analysis in the wideband regime"};
  app.require_subcommand(1);

  ChannelArgs analyze_ch, curve_ch, validate_ch;
  std::string format = "csv";
  std::string output_path;
  wideband::cli::RunConfig config;
  double epsilon = 0.01;

  auto* analyze = app.add_subcommand("analyze", "Shannon limit, wideband slope and derivatives");
  add_channel_options(analyze, analyze_ch);

  auto* curve = app.add_subcommand("curve", "Tabulate the true curve and all estimates");
  add_channel_options(curve, curve_ch);
  curve->add_option("--gamma-max", config.gamma_offset_max_db,
                    "Grid extent above the Shannon limit, dB");
  curve->add_option("--points", config.n_points, "Grid points above the limit point");
  curve->add_option("--epsilon", epsilon, "Slope inflation for the upper line, b/s/Hz/dB");

  auto* validate = app.add_subcommand("validate", "Check bound, sandwich, convexity and slope");
  add_channel_options(validate, validate_ch);
  validate->add_option("--gamma-max", config.gamma_offset_max_db,
                       "Grid extent above the Shannon limit, dB");
  validate->add_option("--points", config.n_points, "Grid points above the limit point");
  validate->add_option("--epsilon", epsilon, "Slope inflation for the sandwich, b/s/Hz/dB");
  validate->add_option("--tol", config.tolerance, "Bound check tolerance, b/s/Hz");
  validate->add_option("--convexity-span-db", config.convexity_span_db,
                       "Convexity probe window above the limit, dB");
  validate->add_option("--convexity-step-db", config.convexity_step_db,
                       "Convexity probe step, dB");
  validate->add_option("--slope-eps-db", config.slope_eps_db,
                       "Offset for the one-sided slope check, dB");
  validate->add_flag("--require-convexity", config.require_convexity,
                     "Gate the exit code on the convexity probe");

  for (auto* cmd : {analyze, curve, validate}) {
    cmd->add_option("--format", format, "Output format: csv or json");
    cmd->add_option("--output", output_path, "Write the table to this path instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) {
      config.command = wideband::cli::Command::analyze;
      config.channel = resolve_channel(analyze_ch);
    } else if (curve->parsed()) {
      config.command = wideband::cli::Command::curve;
      config.channel = resolve_channel(curve_ch);
    } else {
      config.command = wideband::cli::Command::validate;
      config.channel = resolve_channel(validate_ch);
    }
    if (!(epsilon >= 0.0))
      throw wideband::spec_parse_error("epsilon must be nonnegative");
    config.epsilon = epsilon;
    config.format = resolve_format(format);
    if (!output_path.empty()) config.output_path = output_path;
    return wideband::cli::run(config, std::cout, std::cerr);
  } catch (const wideband::spec_parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const wideband::invalid_channel_error& e) {
    std::cerr << "error: invalid channel: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
