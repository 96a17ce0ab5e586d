#include "poisred/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string readFile(const std::string& path, bool& ok) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ok = false;
        return {};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ok = true;
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded Poisson reduction checker"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    std::uint64_t seed = 1;
    int bound = -1;
    app.add_option("--bound", bound, "cofactor degree bound (overrides the problem file)");
    app.add_option("--format", format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", seed, "seed for randomized subcommands");

    std::vector<std::string> bracketArgs;
    CLI::App* cmdBracket = app.add_subcommand("bracket", "bracket of two expressions");
    cmdBracket->add_option("file", file, "problem file")->required();
    cmdBracket->add_option("exprs", bracketArgs, "two expressions")->expected(2);

    for (const char* name : {"check-poisson", "check-coisotropic", "check-presymplectic",
                             "check-stages", "check-thm-a2", "reduce"}) {
        CLI::App* cmd = app.add_subcommand(name, "");
        cmd->add_option("file", file, "problem file")->required();
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    bool ok = true;
    std::string text = readFile(file, ok);
    if (!ok) {
        std::cerr << "input error: cannot read '" << file << "'\n";
        return 3;
    }

    poisred::RunOptions options;
    if (bound >= 0) options.bound = bound;
    options.format = format;
    options.seed = seed;

    poisred::RunResult result = poisred::run(command, text, options, bracketArgs);
    std::cout << result.output;
    return result.exitCode;
}
