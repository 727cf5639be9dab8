#pragma once

#include <string>
#include <vector>

#include "epw_cli/io.hpp"

namespace epw::cli {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitBadInput = 2, kExitIo = 3 };

struct Check {
  std::string name;
  bool pass = false;
  json detail;
};

// Result tree of one command. Everything in it is a function of the inputs
// and seeds; thread counts and timings are deliberately left out.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json& params() { return params_; }
  json& data() { return data_; }
  void check(std::string name, bool pass, json detail = json::object());
  void note(std::string text) { notes_.push_back(std::move(text)); }

  const std::vector<Check>& checks() const { return checks_; }
  bool pass() const;
  int exit_code() const { return pass() ? kExitPass : kExitCheckFailed; }
  json to_json() const;
  std::string summary() const;

 private:
  std::string command_;
  json params_ = json::object();
  json data_ = json::object();
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

}  // namespace epw::cli
