#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "finehull_app/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int threads = 2;
  std::string out;
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "Write artifacts and manifest here");
  CLI11_PARSE(app, argc, argv);

  finehull::app::AcceptanceReport report = finehull::app::reproduce_all(threads);
  for (const auto& row : report.rows) std::cout << finehull::app::summary_line(row) << "\n";
  if (!out.empty()) report.artifacts.flush(out, "acceptance", "");
  return report.all_pass() ? EXIT_SUCCESS : EXIT_FAILURE;
}
