#include "qnet/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace qnet {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Report::param(const std::string& key, const std::string& value) {
  params.emplace_back(key, value);
}

void Report::param(const std::string& key, double value) {
  params.emplace_back(key, format12(value));
}

void Report::param(const std::string& key, long value) {
  params.emplace_back(key, std::to_string(value));
}

void Report::check(const std::string& name, double value, double expected, double tol) {
  ResultRow r;
  r.name = name;
  r.value = value;
  r.paper_expected = expected;
  r.abs_error = std::abs(value - expected);
  r.verdict = *r.abs_error <= tol ? "pass" : "fail";
  results.push_back(std::move(r));
}

void Report::require(const std::string& name, bool ok) {
  ResultRow r;
  r.name = name;
  r.value = ok ? 1 : 0;
  r.verdict = ok ? "pass" : "fail";
  results.push_back(std::move(r));
}

void Report::info(const std::string& name, double value) {
  ResultRow r;
  r.name = name;
  r.value = value;
  r.verdict = "info";
  results.push_back(std::move(r));
}

bool Report::all_pass() const {
  for (const auto& r : results)
    if (r.verdict == "fail") return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    row["value"] = round12(r.value);
    if (r.paper_expected) row["paper_expected"] = round12(*r.paper_expected);
    if (r.abs_error) row["abs_error"] = round12(*r.abs_error);
    row["verdict"] = r.verdict;
    j["results"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "name,value,paper_expected,abs_error,verdict\n";
  for (const auto& r : results) {
    out << r.name << ',' << format12(r.value) << ',';
    if (r.paper_expected) out << format12(*r.paper_expected);
    out << ',';
    if (r.abs_error) out << format12(*r.abs_error);
    out << ',' << r.verdict << '\n';
  }
  return out.str();
}

}  // namespace qnet
