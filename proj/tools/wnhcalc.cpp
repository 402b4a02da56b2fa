#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wnh/cli/command.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wnh::PreconditionError("cannot read session file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weakly nonlocal Hamiltonian and symplectic operator calculator"};
    app.require_subcommand(1);
    std::string session_path;
    bool json = false, timing = false, strict = false;
    int truncate = 8;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--session", session_path, "session file")->required();
        sub->add_flag("--json", json, "JSON output");
        sub->add_option("--truncate", truncate, "series truncation order")->check(CLI::Range(0, 64));
        sub->add_flag("--strict-nonlocal", strict, "refuse to introduce new nonlocal symbols");
        sub->add_flag("--timing", timing, "report wall-clock time in timing_ms");
    };

    std::map<std::string, std::vector<std::string>> values;
    std::string chosen;
    for (const auto& spec : wnh::command_table()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        add_common(sub);
        for (const auto& opt : spec.options) {
            auto* o = sub->add_option("--" + opt.name, values[spec.name + "/" + opt.name], opt.help);
            // matrix literals start with '[' and must reach the session parser intact
            o->expected(1)->allow_extra_args(false);
            if (opt.required) o->required();
            if (opt.repeatable) o->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        }
        sub->callback([&chosen, name = spec.name] { chosen = name; });
    }
    CLI::App* print = app.add_subcommand("print", "Parse a session and print its canonical form");
    add_common(print);
    print->callback([&chosen] { chosen = "print"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    wnh::Outcome out;
    out.command = chosen;
    auto start = std::chrono::steady_clock::now();
    try {
        wnh::Session s = wnh::parse_session(read_file(session_path));
        if (chosen == "print") {
            std::cout << wnh::print_session(s);
            return 0;
        }
        wnh::CommandArgs a;
        a.truncate = truncate;
        a.strict_nonlocal = strict;
        for (const auto& [key, v] : values)
            if (key.rfind(chosen + "/", 0) == 0) a.values[key.substr(chosen.size() + 1)] = v;
        out = wnh::execute(s, chosen, a);
    } catch (const std::exception& e) {
        out.status = "error";
        out.diagnostics = {e.what()};
    }
    if (timing)
        out.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << (json ? wnh::render_json(out) : wnh::render_text(out));
    return wnh::exit_code(out);
}
