// Copyright (c) 2026 The reebc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Pipeline driver: build or load a bivariate mesh, compute both Reeb graphs
// and the partitioned complement of the projected Reeb region, classify the
// cells, optionally simplify, and export JSON/DOT/SVG.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "reebc/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"reebc: isosurface-inclusion partition of two scalar fields"};
  app.require_subcommand(0, 1);

  reebc::RunConfig config;
  std::string extent_str = "3";
  std::string threshold_str;
  std::string measure = "persistence";
  std::string mode = "consider";
  std::string side = "both";

  app.add_option("--mesh", config.mesh_path, "input mesh in RCM format");
  app.add_option("--builtin", config.builtin, "built-in field pair: eq1 | eq2 | diamond-pair");
  app.add_option("--resolution", config.resolution, "grid resolution for built-ins")->check(CLI::Range(2, 4096));
  app.add_option("--extent", extent_str, "half-width of the built-in domain (default 3)");
  app.add_option("--simplify", threshold_str, "simplification threshold");
  app.add_option("--measure", measure, "importance measure: persistence | size");
  app.add_option("--mode", mode, "eliminated-contour handling: consider | ignore");
  app.add_option("--side", side, "graph to simplify: 1 | 2 | both");
  app.add_option("--output", config.output_json, "write the complement JSON here");
  app.add_option("--svg", config.svg_dir, "write one SVG per rectangle into this directory");
  app.add_option("--dot", config.dot_path, "write <base>_f1.dot and <base>_f2.dot graph exports");
  app.add_option("--oracle-check", config.oracle_check, "verify against the sampling oracle at this grid resolution");
  app.add_option("--threads", config.threads, "worker threads (default: hardware)");
  app.add_flag("--verbose", config.verbose, "timing output on stderr");

  auto* validate = app.add_subcommand("validate", "re-check the invariants of an exported JSON document");
  std::string validate_path;
  validate->add_option("file", validate_path, "JSON file to validate")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      auto diag = reebc::validate_json_file(validate_path);
      if (!diag.empty()) {
        std::cerr << "invalid: " << diag << "\n";
        return 1;
      }
      std::cout << "ok\n";
      return 0;
    }

    if (auto v = reebc::parse_number(extent_str)) {
      config.extent = *v;
    } else {
      std::cerr << "bad --extent value '" << extent_str << "'\n";
      return 2;
    }
    if (!threshold_str.empty()) {
      auto v = reebc::parse_number(threshold_str);
      if (!v || *v < 0) {
        std::cerr << "bad --simplify value '" << threshold_str << "'\n";
        return 2;
      }
      config.simplify_threshold = *v;
    }
    if (measure == "persistence") {
      config.measure = reebc::MeasureKind::PERSISTENCE;
    } else if (measure == "size") {
      config.measure = reebc::MeasureKind::SIZE;
    } else {
      std::cerr << "bad --measure '" << measure << "'\n";
      return 2;
    }
    if (mode == "consider") {
      config.mode = reebc::SimplificationMode::CONSIDER;
    } else if (mode == "ignore") {
      config.mode = reebc::SimplificationMode::IGNORE;
    } else {
      std::cerr << "bad --mode '" << mode << "'\n";
      return 2;
    }
    if (side == "both") {
      config.simplify_side = 0;
    } else if (side == "1" || side == "2") {
      config.simplify_side = side == "1" ? 1 : 2;
    } else {
      std::cerr << "bad --side '" << side << "'\n";
      return 2;
    }

    return reebc::run(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
