#pragma once

// Runs the gdqh executable and compares its output with golden files.
// A case line in cases.txt reads `name|expected_exit|arguments`; `@GOLDEN@`
// in the arguments expands to the golden directory.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace testing_support {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

struct GoldenCase {
    std::string name;
    int expected_exit = 0;
    std::string args;
};

// Keeps gtest's parameter descriptions readable.
inline void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline CliResult run_cli(const std::string& exe, const std::string& args) {
    const auto err_path = std::filesystem::temp_directory_path() /
                          ("gdqh_cli_err_" + std::to_string(::getpid()) + ".txt");
    const std::string command = "'" + exe + "' " + args + " 2>'" + err_path.string() + "'";
    CliResult r;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("cannot start " + exe);
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = read_file(err_path);
    std::filesystem::remove(err_path);
    return r;
}

inline std::vector<GoldenCase> load_cases(const std::filesystem::path& golden_dir) {
    std::ifstream in(golden_dir / "cases.txt");
    if (!in) {
        throw std::runtime_error("missing " + (golden_dir / "cases.txt").string());
    }
    std::vector<GoldenCase> cases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto a = line.find('|');
        const auto b = line.find('|', a + 1);
        if (a == std::string::npos || b == std::string::npos) {
            throw std::runtime_error("bad case line: " + line);
        }
        GoldenCase c{line.substr(0, a), std::stoi(line.substr(a + 1, b - a - 1)), line.substr(b + 1)};
        for (auto pos = c.args.find("@GOLDEN@"); pos != std::string::npos; pos = c.args.find("@GOLDEN@")) {
            c.args.replace(pos, 8, golden_dir.string());
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

/// The text frozen in <name>.golden.
inline std::string render(const CliResult& r) {
    return "[exit] " + std::to_string(r.exit_code) + "\n[stdout]\n" + r.out + "[stderr]\n" + r.err;
}

struct GoldenOutcome {
    bool ok = false;
    std::string detail;
};

/// Runs a case and compares with its golden file; with `update` the golden
/// file is rewritten instead.
inline GoldenOutcome check_golden(const std::string& exe, const std::filesystem::path& golden_dir,
                                  const GoldenCase& c, bool update) {
    const auto result = run_cli(exe, c.args);
    const auto text = render(result);
    const auto path = golden_dir / (c.name + ".golden");
    if (update) {
        std::ofstream(path, std::ios::binary) << text;
    }
    if (result.exit_code != c.expected_exit) {
        return {false, c.name + ": exit " + std::to_string(result.exit_code) + ", expected " +
                           std::to_string(c.expected_exit) + "\n" + result.err};
    }
    if (!std::filesystem::exists(path)) {
        return {false, c.name + ": golden file missing"};
    }
    if (read_file(path) != text) {
        return {false, c.name + ": output differs from " + path.string()};
    }
    return {true, c.name};
}

} // namespace testing_support
