#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef RSOSCERT_CLI
#define RSOSCERT_CLI "rsoscert"
#endif

namespace process {

struct Result {
  int code = -1;
  std::string out;
};

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("rsoscert-test-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

// Runs the CLI with the given arguments (already shell-quoted), capturing stdout+stderr.
inline Result cli(const std::string& args) {
  static int counter = 0;
  const auto log = scratch_dir() / ("out" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string("'") + RSOSCERT_CLI + "' " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text(log.string());
  return r;
}

inline std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace process
