#ifndef CSTARCAT_REPORT_HPP
#define CSTARCAT_REPORT_HPP

#include <string>
#include <vector>

namespace cstarcat {

// One numeric assertion: every check restates the tolerance it was
// measured against.
struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string details;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  Check& add(std::string name, double residual, double tolerance,
             std::string details = "") {
    checks.push_back(Check{std::move(name), residual <= tolerance, residual,
                           tolerance, std::move(details)});
    return checks.back();
  }

  Check& add_flag(std::string name, bool pass, std::string details = "") {
    checks.push_back(Check{std::move(name), pass, pass ? 0.0 : 1.0, 0.5,
                           std::move(details)});
    return checks.back();
  }

  void absorb(const Report& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  double worst_residual_of(const std::string& prefix) const {
    double worst = 0.0;
    for (const auto& c : checks)
      if (c.name.rfind(prefix, 0) == 0) worst = std::max(worst, c.residual);
    return worst;
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.name);
    return out;
  }
};

}  // namespace cstarcat

#endif
