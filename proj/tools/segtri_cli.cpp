// Command-line front end; all computation goes through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "segtri/segtri.h"

namespace {

constexpr int kExitInvalidInput = 4;

std::string take(char* s) {
  std::string out = s ? s : "";
  segtri_string_free(s);
  return out;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int fail_invalid(const std::string& what, char* error) {
  std::cerr << "error: " << what;
  std::string msg = take(error);
  if (!msg.empty()) std::cerr << ": " << msg;
  std::cerr << "\n";
  return kExitInvalidInput;
}

int load_instance(const std::string& path, segtri_instance** inst) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInvalidInput;
  }
  char* error = nullptr;
  if (segtri_instance_parse(text.c_str(), inst, &error) != SEGTRI_OK)
    return fail_invalid("invalid instance file", error);
  return 0;
}

int emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitInvalidInput;
  }
  out << content;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact market-segmentation toolkit for third-degree price discrimination"};
  app.require_subcommand(1);

  std::string instance_path, seg_path, out_path, points_path;
  std::string format = "text", emit_kind = "csv", u_str, pi_str, demo_name;
  bool revised = false;

  auto* analyze = app.add_subcommand("analyze", "Summarize an instance");
  analyze->add_option("instance", instance_path, "Instance file")->required();
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  auto* synth = app.add_subcommand("synthesize",
                                   "Construct a direct segmentation hitting a surplus target");
  synth->add_option("instance", instance_path, "Instance file")->required();
  synth->add_option("--u", u_str, "Target consumer surplus (rational)")->required();
  synth->add_option("--pi", pi_str, "Target producer surplus (rational)")->required();
  synth->add_option("--out", out_path, "Write the segmentation here");

  auto* convert = app.add_subcommand("convert", "Convert a segmentation to direct form");
  convert->add_option("segmentation", seg_path, "Segmentation file")->required();
  convert->add_flag("--revised", revised, "Use the market-price model (always succeeds)");
  convert->add_option("--out", out_path, "Write the converted segmentation here");

  auto* tri = app.add_subcommand("triangle", "Emit the feasible surplus triangle");
  tri->add_option("instance", instance_path, "Instance file")->required();
  tri->add_option("--emit", emit_kind, "Artifact kind")->check(CLI::IsMember({"csv", "svg"}));
  tri->add_option("--points", points_path, "Overlay surplus points from this file");
  tri->add_option("--out", out_path, "Write the artifact here");

  auto* demo = app.add_subcommand("demo", "Run a bundled counterexample walkthrough");
  demo->add_option("name", demo_name, "example1 or example2")->required();

  auto* verify = app.add_subcommand("verify", "Re-check a segmentation file");
  verify->add_option("segmentation", seg_path, "Segmentation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  char* out = nullptr;
  char* error = nullptr;

  if (*analyze) {
    segtri_instance* inst = nullptr;
    if (int rc = load_instance(instance_path, &inst)) return rc;
    segtri_status st = segtri_analyze(inst, format == "json", &out, &error);
    segtri_instance_free(inst);
    if (st != SEGTRI_OK) return fail_invalid("analyze failed", error);
    std::cout << take(out);
    return 0;
  }

  if (*synth) {
    segtri_instance* inst = nullptr;
    if (int rc = load_instance(instance_path, &inst)) return rc;
    segtri_status st = segtri_synthesize(inst, u_str.c_str(), pi_str.c_str(), &out, &error);
    segtri_instance_free(inst);
    if (st == SEGTRI_INFEASIBLE) {
      std::cerr << "infeasible: " << take(error) << "\n";
      return static_cast<int>(st);
    }
    if (st != SEGTRI_OK) return fail_invalid("synthesis failed", error);
    std::cerr << "achieved: u = " << u_str << ", pi = " << pi_str << "\n";
    return emit(out_path, take(out));
  }

  if (*convert) {
    std::string text;
    if (!read_file(seg_path, text)) {
      std::cerr << "error: cannot read " << seg_path << "\n";
      return kExitInvalidInput;
    }
    segtri_status st = segtri_convert(text.c_str(), revised, &out, &error);
    if (st == SEGTRI_COLLISION) {
      std::cerr << take(out);
      return static_cast<int>(st);
    }
    if (st != SEGTRI_OK) return fail_invalid("conversion failed", error);
    return emit(out_path, take(out));
  }

  if (*tri) {
    segtri_instance* inst = nullptr;
    if (int rc = load_instance(instance_path, &inst)) return rc;
    std::string points_text;
    if (!points_path.empty() && !read_file(points_path, points_text)) {
      segtri_instance_free(inst);
      std::cerr << "error: cannot read " << points_path << "\n";
      return kExitInvalidInput;
    }
    segtri_status st = segtri_triangle_emit(inst, emit_kind.c_str(),
                                            points_text.empty() ? nullptr : points_text.c_str(),
                                            &out, &error);
    segtri_instance_free(inst);
    if (st != SEGTRI_OK) return fail_invalid("triangle emission failed", error);
    return emit(out_path, take(out));
  }

  if (*demo) {
    segtri_status st = segtri_demo(demo_name.c_str(), &out, &error);
    if (st != SEGTRI_OK) return fail_invalid("demo failed", error);
    std::cout << take(out);
    return 0;
  }

  if (*verify) {
    std::string text;
    if (!read_file(seg_path, text)) {
      std::cerr << "error: cannot read " << seg_path << "\n";
      return kExitInvalidInput;
    }
    segtri_status st = segtri_verify(text.c_str(), &out, &error);
    if (st == SEGTRI_OK || st == SEGTRI_VERIFY_FAILED) {
      std::cerr << take(out);
      return static_cast<int>(st);
    }
    return fail_invalid("verification failed to run", error);
  }

  return kExitInvalidInput;
}
