#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "k2slot/errors.hpp"
#include "k2slot/parse.hpp"
#include "k2slot/session.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw k2slot::InputError("FileNotFound", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact K2 mod m computations over F_q(t): residues, zero tests, "
                 "reciprocity, common slots, symbol algebras, and reciprocity on "
                 "surfaces"};
    app.require_subcommand(1);

    k2slot::SessionConfig cfg;
    long long seed = 0;
    app.add_flag("--json", cfg.json, "emit a JSON report instead of text");
    app.add_option("--seed", seed, "seed for randomized factorization")
        ->capture_default_str();
    app.add_option("--degree-bound", cfg.degree_bound,
                   "maximum cofactor degree for slot searches")
        ->capture_default_str();
    app.add_option("--budget", cfg.budget, "enumeration budget for searches")
        ->capture_default_str();

    std::string path, source;
    CLI::App* run = app.add_subcommand("run", "execute a session file");
    run->add_option("file", path, "session file")->required();
    run->fallthrough();
    CLI::App* eval = app.add_subcommand("eval", "execute a session given as text");
    eval->add_option("session", source, "session text")->required();
    eval->fallthrough();

    CLI11_PARSE(app, argc, argv);
    cfg.seed = static_cast<k2slot::u64>(seed);

    try {
        std::string input = run->parsed() ? read_file(path) : source;
        k2slot::ParsedSession session = k2slot::parse_session(input);
        std::cout << k2slot::run_session(session, cfg);
        return 0;
    } catch (const k2slot::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const k2slot::MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
