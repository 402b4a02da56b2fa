#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wnh/cli/session.hpp"

namespace wnh {

using ResultField = std::variant<std::string, std::vector<std::string>>;

struct Outcome {
    std::string command;
    std::string status;  // verified, refuted, inconclusive, value, error
    std::map<std::string, ResultField> result;
    std::optional<std::string> residual;
    std::vector<std::string> diagnostics;
    double timing_ms = 0;
};

struct CommandOption {
    std::string name;  // without the leading dashes
    std::string help;
    bool required = true;
    bool repeatable = false;
};

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<CommandOption> options;
};

const std::vector<CommandSpec>& command_table();

struct CommandArgs {
    std::map<std::string, std::vector<std::string>> values;
    int truncate = 8;
    bool strict_nonlocal = false;
};

// Never throws; failures become status "error".
Outcome execute(const Session& s, const std::string& command, const CommandArgs& args);

std::string render_json(const Outcome& o);
std::string render_text(const Outcome& o);
// 0 verified/value, 1 refuted, 2 inconclusive, 3 error.
int exit_code(const Outcome& o);

}  // namespace wnh
