#pragma once

// Machine-readable run reports. Every CLI subcommand fills one of these and
// prints it as JSON (or CSV); verdicts decide the process exit code. Floats
// are pre-rounded to 12 significant digits so identical runs are
// byte-identical.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qnet {

struct ResultRow {
  std::string name;
  double value = 0.0;
  std::optional<double> paper_expected;
  std::optional<double> abs_error;
  std::string verdict;  // pass | fail | info
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;  // insertion order kept

  std::vector<ResultRow> results;

  void param(const std::string& key, const std::string& value);
  void param(const std::string& key, double value);
  void param(const std::string& key, long value);

  // compare against an expected value, verdict by absolute error
  void check(const std::string& name, double value, double expected, double tol);
  // record a boolean requirement
  void require(const std::string& name, bool ok);
  // report-only value, never fails
  void info(const std::string& name, double value);

  bool all_pass() const;  // no "fail" verdict present
  int exit_code() const { return all_pass() ? 0 : 1; }

  std::string to_json() const;
  std::string to_csv() const;
};

// shortest decimal within 12 significant digits, the fixed float format every
// report uses
double round12(double v);
std::string format12(double v);

}  // namespace qnet
