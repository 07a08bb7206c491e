#include "manifest.hpp"
#include "runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Invariants of monoid schemes of finite type"};
    std::string input = "-";
    msch::cli::Options opt;
    std::size_t degree = 0;
    app.add_option("input", input, "manifest file, - for stdin");
    app.add_option("--bound", opt.bound, "search bound for bounded verdicts")->capture_default_str();
    auto* deg = app.add_option("--degree", degree, "cohomological degree for cohomology tasks");
    app.add_flag("--json", opt.json, "print the report as JSON");
    app.add_flag("--check-oracles", opt.check_oracles, "compare both cochain models on cohomology tasks");
    app.add_flag("--parallel", opt.parallel, "run tasks concurrently");
    std::string footer = "tasks:";
    for (const auto& s : msch::cli::task_signatures()) footer += " " + s;
    app.footer(footer);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*deg) opt.degree = degree;

    std::stringstream buf;
    if (input == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream f(input);
        if (!f) {
            std::cerr << "cannot read " << input << "\n";
            return 2;
        }
        buf << f.rdbuf();
    }
    msch::cli::Manifest m;
    try {
        m = msch::cli::parse(buf.str());
    } catch (const msch::cli::ParseError& e) {
        std::cerr << (input == "-" ? "<stdin>" : input) << ":" << e.what() << "\n";
        return 2;
    }
    msch::cli::Report r = msch::cli::run(m, opt);
    std::cout << (opt.json ? r.json : r.text);
    return r.exit_code;
}
