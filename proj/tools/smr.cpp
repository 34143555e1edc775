// Command-line front end: generate, verify, search and enumerate signed magic
// rectangles SMR(m,n;k,3).
//
// Exit codes: 0 success, 1 verification failed or no array exists,
// 2 inadmissible parameters, 3 search budget exhausted, 4 I/O, parse or usage
// error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smr/smr.hpp"

namespace {

enum Exit : int { ok = 0, failed = 1, inadmissible = 2, exhausted = 3, io_error = 4 };

int exit_for(smr::ErrorCode code) {
  switch (code) {
    case smr::ErrorCode::inadmissible: return inadmissible;
    case smr::ErrorCode::search_exhausted: return exhausted;
    case smr::ErrorCode::parse:
    case smr::ErrorCode::invalid_argument: return io_error;
    case smr::ErrorCode::precondition:
    case smr::ErrorCode::construction_defect: return failed;
  }
  return failed;
}

struct Output {
  std::string format = "text";
  std::string path;

  // Writes to the file if one was given, else stdout. False on I/O failure.
  bool write(const std::string& body) const {
    if (path.empty()) {
      std::cout << body << std::flush;
      return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    out << body;
    out.close();
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      return false;
    }
    return true;
  }
};

smr::Format format_of(const Output& o) { return *smr::parse_format(o.format); }

int emit(const smr::SparseRectangle& rect, const smr::Params& p, const Output& out) {
  return out.write(smr::format_rectangle(rect, format_of(out), p)) ? ok : io_error;
}

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_sweep(int n_max, const smr::SearchBudget& budget) {
  int bad = 0;
  int out_of_budget = 0;
  const auto all = smr::enumerate_params(n_max);
  std::cout << std::left << std::setw(16) << "triple" << std::setw(9) << "result" << std::setw(12) << "ms" << std::setw(12) << "nodes"
            << "route\n";
  for (const auto& p : all) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string result, route;
    std::uint64_t nodes = 0;
    try {
      const auto g = smr::generate_detailed(p.m, p.n, p.k, budget);
      result = smr::verify_smr(g.rect, p).passed() ? "PASS" : "FAIL";
      route = g.route;
      nodes = g.nodes;
      if (result == "FAIL") ++bad;
    } catch (const smr::Error& e) {
      result = e.code() == smr::ErrorCode::search_exhausted ? "BUDGET" : "ERROR";
      route = e.what();
      (e.code() == smr::ErrorCode::search_exhausted ? out_of_budget : bad) += 1;
    }
    std::ostringstream triple;
    triple << "(" << p.m << "," << p.n << "," << p.k << ")";
    std::cout << std::setw(16) << triple.str() << std::setw(9) << result << std::setw(12) << std::fixed << std::setprecision(2)
              << millis_since(t0) << std::setw(12) << nodes << route << "\n";
  }
  std::cout << all.size() << " triples, " << bad << " failed, " << out_of_budget << " out of budget\n";
  if (bad > 0) return failed;
  return out_of_budget > 0 ? exhausted : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, verify and search signed magic rectangles SMR(m,n;k,3)"};
  app.require_subcommand(1);

  smr::SearchBudget budget;
  Output out;
  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}))->capture_default_str();
    cmd->add_option("--output", out.path, "Write to this file instead of stdout");
  };
  const auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget-nodes", budget.max_nodes, "Search node limit")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--budget-ms", budget.max_millis, "Search time limit in milliseconds")->check(CLI::PositiveNumber)->capture_default_str();
  };

  int m = 0, n = 0, k = 0;
  int sweep = 0;
  auto* gen = app.add_subcommand("generate", "Build an SMR(m,n;k,3)");
  gen->add_option("m", m, "Rows");
  gen->add_option("n", n, "Columns");
  gen->add_option("k", k, "Filled cells per row");
  gen->add_option("--sweep", sweep, "Generate and verify every admissible triple with n <= N");
  add_output(gen);
  add_budget(gen);

  std::string input;
  auto* ver = app.add_subcommand("verify", "Check a CSV or JSON file against SMR(m,n;k,3)");
  ver->add_option("input", input, "Array file")->required();
  ver->add_option("m", m, "Rows")->required();
  ver->add_option("n", n, "Columns")->required();
  ver->add_option("k", k, "Filled cells per row")->required();

  auto* srch = app.add_subcommand("search", "Backtracking search for an SMR(m,n;k,3)");
  srch->add_option("m", m, "Rows")->required();
  srch->add_option("n", n, "Columns")->required();
  srch->add_option("k", k, "Filled cells per row")->required();
  add_output(srch);
  add_budget(srch);

  int n_max = 0;
  auto* en = app.add_subcommand("enumerate", "List admissible (m,n,k) with n <= n_max");
  en->add_option("n_max", n_max, "Largest n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : io_error;
  }

  try {
    if (*gen) {
      if (sweep > 0) return run_sweep(sweep, budget);
      if (gen->count("m") + gen->count("n") + gen->count("k") != 3) {
        std::cerr << "error: generate needs m n k, or --sweep N\n";
        return io_error;
      }
      const smr::Params p = smr::Params::make(m, n, k);
      return emit(smr::generate(m, n, k, budget), p, out);
    }
    if (*ver) {
      const smr::Params p = smr::Params::make(m, n, k);
      const smr::SparseRectangle rect = smr::read_rectangle(input);
      const auto report = smr::verify_smr(rect, p);
      std::cout << "SMR" << p << ": " << report.summary() << "\n";
      return report.passed() ? ok : failed;
    }
    if (*srch) {
      // Only the definitional constraints: small shapes such as (3,2,2)
      // that lie outside the existence range can still be searched.
      const smr::Params p = smr::Params::structural(m, n, k, 3);
      const auto t0 = std::chrono::steady_clock::now();
      const auto found = smr::search_smr(p, budget);
      std::cerr << "search " << p << ": " << smr::to_string(found.status) << " after " << found.nodes << " nodes, " << std::fixed
                << std::setprecision(1) << millis_since(t0) << " ms\n";
      switch (found.status) {
        case smr::SearchStatus::found: return emit(*found.rect, p, out);
        case smr::SearchStatus::exhausted: return exhausted;
        case smr::SearchStatus::none_exists: return failed;
      }
    }
    if (*en) {
      for (const auto& p : smr::enumerate_params(n_max)) std::cout << p.m << " " << p.n << " " << p.k << "\n";
      return ok;
    }
  } catch (const smr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
  return io_error;
}
