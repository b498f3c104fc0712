#pragma once

// Spawns the bucketbook binary (path from the BUCKETBOOK_CLI environment
// variable, wired up by CTest) and captures exit code, stdout, and stderr
// separately. Good enough for golden-file and exit-code tests; not a general
// process library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace bucketbook::testsupport {

inline std::string cli_path() {
    const char* path = std::getenv("BUCKETBOOK_CLI");
    if (path == nullptr || *path == '\0') {
        throw std::runtime_error("BUCKETBOOK_CLI is not set; run through ctest");
    }
    return path;
}

inline std::string golden_dir() {
    const char* path = std::getenv("GOLDEN_DIR");
    if (path == nullptr || *path == '\0') {
        throw std::runtime_error("GOLDEN_DIR is not set; run through ctest");
    }
    return path;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Self-deleting scratch directory for snapshot files.
class TempDir {
public:
    TempDir() {
        std::string pattern =
            (std::filesystem::temp_directory_path() / "bucketbook-test-XXXXXX").string();
        std::vector<char> buffer(pattern.begin(), pattern.end());
        buffer.push_back('\0');
        if (mkdtemp(buffer.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed for " + pattern);
        }
        path_ = buffer.data();
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string shell_quote(const std::string& arg) {
    std::string quoted = "'";
    for (char c : arg) {
        if (c == '\'') {
            quoted += "'\\''";
        } else {
            quoted += c;
        }
    }
    quoted += "'";
    return quoted;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline CliResult run_cli(const std::vector<std::string>& args) {
    TempDir capture;
    std::string out_path = capture.file("stdout");
    std::string err_path = capture.file("stderr");
    std::string command = shell_quote(cli_path());
    for (const auto& arg : args) {
        command += " " + shell_quote(arg);
    }
    command += " > " + shell_quote(out_path) + " 2> " + shell_quote(err_path);
    int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

} // namespace bucketbook::testsupport
