#include "epw_cli/report.hpp"

#include <sstream>

namespace epw::cli {

void Report::check(std::string name, bool pass, json detail) {
  checks_.push_back({std::move(name), pass, std::move(detail)});
}

bool Report::pass() const {
  if (checks_.empty()) return false;
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

json Report::to_json() const {
  json j;
  j["command"] = command_;
  j["parameters"] = params_;
  j["data"] = data_;
  json cs = json::array();
  for (const auto& c : checks_) {
    json x;
    x["name"] = c.name;
    x["status"] = c.pass ? "pass" : "fail";
    x["detail"] = c.detail;
    cs.push_back(std::move(x));
  }
  j["checks"] = std::move(cs);
  j["notes"] = notes_;
  j["status"] = pass() ? "pass" : "fail";
  j["exit_code"] = exit_code();
  return j;
}

std::string Report::summary() const {
  std::ostringstream out;
  out << command_ << ": " << (pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks_) out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "\n";
  for (const auto& n : notes_) out << "  note: " << n << "\n";
  return out.str();
}

}  // namespace epw::cli
