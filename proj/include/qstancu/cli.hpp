#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qstancu/table.hpp"

namespace qstancu {

enum class RunMode { exact, floating };
enum class OutputFormat { csv, json };

/// Parsed command-line request. Scalar-valued fields stay as strings here so
/// exact mode can parse them losslessly into rationals.
struct RunConfig {
    std::string command;        // eval | moments | crosscheck | converge
    std::string q = "1/2";
    std::string alpha = "0";
    int n = 0;                  // finite operator degree; 0 = not set
    int n_max = 0;              // converge sweep bound; 0 = not set
    bool limit = false;         // use the limit operator instead of degree n
    std::string function = "e1";
    std::string grid;           // point count or comma-separated list; "" = default
    std::string x;              // single evaluation point; overrides grid
    std::string m_range;        // "a..b" or a single order
    std::string suite = "all";  // crosscheck: basis | identities | basrec | all
    RunMode mode = RunMode::floating;
    double tail_tol = 1e-10;
    OutputFormat output = OutputFormat::csv;
    std::string out_path;       // "" = stdout
};

ResultTable cmd_eval(const RunConfig& config);
ResultTable cmd_moments(const RunConfig& config);
ResultTable cmd_crosscheck(const RunConfig& config);
ResultTable cmd_converge(const RunConfig& config);

/// True when every check column the table carries passed: boolean columns
/// named "agrees" or "pass" are all true and "failures" counts are all zero.
bool table_checks_pass(const ResultTable& table);

/// Full front end: parses args (no program name), runs the subcommand, and
/// renders the result to `out` or the configured file. Returns the process
/// exit code: 0 success, 1 a requested check failed, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace qstancu
