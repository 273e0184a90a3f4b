// SPDX-License-Identifier: Apache-2.0
#pragma once

// Drives the external compiler components (frontend, middle-end, backend,
// assembler/linker) as subprocesses and builds runnable executables from any
// abstraction level. Failures come back as Diagnostic values whose text is
// meant to be fed to a model as-is.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "coopt/model.hpp"
#include "coopt/subprocess.hpp"

namespace coopt {

// Captured failure of one pipeline stage.
struct Diagnostic {
    std::string stage;
    int exit_code = 0;
    std::string message;
    bool truncated = false;
    bool timed_out = false;
};

struct Executable {
    std::string path;
    AbstractionLevel built_from_level;
    std::string build_id;
};

// Command templates use {input}, {output} and {flags} placeholders. {flags}
// expands to zero or more argv entries; the other two substitute in place.
struct ToolchainConfig {
    std::string frontend_command =
        "clang -S -emit-llvm -O3 -Xclang -disable-llvm-passes {flags} {input} -o {output}";
    std::string middleend_command =
        "clang -S -emit-llvm -x ir {flags} {input} -o {output}";
    std::string backend_command =
        "clang -S -x ir -O2 {flags} {input} -o {output}";
    std::string link_command = "clang {flags} {input} -o {output} -lm";
    std::vector<std::string> baseline_opt_flags = {"-O3"};
    std::string work_dir = "coopt-work";
    double per_invocation_timeout = 60.0;
    std::size_t diagnostic_truncate_bytes = 8192;
    std::optional<std::vector<std::string>> env_allowlist;
};

namespace detail {

inline std::vector<std::string> expand_template(const std::string& tmpl,
                                                const std::string& input,
                                                const std::string& output,
                                                const std::vector<std::string>& flags) {
    std::vector<std::string> argv;
    std::istringstream tokens(tmpl);
    std::string token;
    while (tokens >> token) {
        if (token == "{flags}") {
            argv.insert(argv.end(), flags.begin(), flags.end());
            continue;
        }
        auto substitute = [&](const std::string& key, const std::string& value) {
            std::size_t pos;
            while ((pos = token.find(key)) != std::string::npos)
                token.replace(pos, key.size(), value);
        };
        substitute("{input}", input);
        substitute("{output}", output);
        argv.push_back(token);
    }
    return argv;
}

// Lossy UTF-8 cleanup: invalid sequences and control characters (other than
// newline and tab) become '?', so diagnostics stay printable.
inline std::string sanitize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (c == '\n' || c == '\t' || (c >= 0x20 && c < 0x7f)) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        if (c >= 0xc0) {
            int len = c >= 0xf0 ? 4 : c >= 0xe0 ? 3 : 2;
            bool valid = i + static_cast<std::size_t>(len) <= raw.size();
            for (int k = 1; valid && k < len; ++k)
                valid = (static_cast<unsigned char>(raw[i + static_cast<std::size_t>(k)]) & 0xc0) == 0x80;
            if (valid) {
                out.append(raw.substr(i, static_cast<std::size_t>(len)));
                i += static_cast<std::size_t>(len);
                continue;
            }
        }
        out.push_back('?');
        ++i;
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

} // namespace detail

template <typename T>
using ToolchainResult = std::variant<T, Diagnostic>;

template <typename T>
bool is_ok(const ToolchainResult<T>& r) {
    return std::holds_alternative<T>(r);
}
template <typename T>
const T& value_of(const ToolchainResult<T>& r) {
    return std::get<T>(r);
}
template <typename T>
const Diagnostic& diagnostic_of(const ToolchainResult<T>& r) {
    return std::get<Diagnostic>(r);
}

class Toolchain {
public:
    explicit Toolchain(ToolchainConfig cfg,
                       const LevelSet& levels = LevelSet::standard())
        : cfg_(std::move(cfg)), levels_(levels) {
        std::filesystem::create_directories(cfg_.work_dir);
    }

    // Checks that every configured command resolves to an executable.
    // Returns the list of commands that do not.
    std::vector<std::string> unresolved_commands() const {
        std::vector<std::string> missing;
        for (const std::string* tmpl :
             {&cfg_.frontend_command, &cfg_.middleend_command,
              &cfg_.backend_command, &cfg_.link_command}) {
            std::istringstream tokens(*tmpl);
            std::string head;
            tokens >> head;
            if (head.empty() || find_executable(head).empty())
                missing.push_back(*tmpl);
        }
        return missing;
    }

    const ToolchainConfig& config() const { return cfg_; }
    const LevelSet& levels() const { return levels_; }

    ToolchainResult<Program> frontend(const Program& p) const {
        require_level(p, 1, "frontend");
        return run_stage("frontend", cfg_.frontend_command, p.text,
                         extension_of(1), extension_of(2), {}, levels_.at(2));
    }

    // Default pass specification is the baseline optimization level. An
    // explicit empty string runs the middle-end with no passes at all.
    ToolchainResult<Program> middle_end(
        const Program& p, std::optional<std::string> passes = std::nullopt) const {
        require_level(p, 2, "middle_end");
        std::vector<std::string> flags =
            passes ? tokenize(*passes) : cfg_.baseline_opt_flags;
        return run_stage("middle_end", cfg_.middleend_command, p.text,
                         extension_of(2), extension_of(2), flags, levels_.at(2));
    }

    ToolchainResult<Program> backend(const Program& p) const {
        require_level(p, 2, "backend");
        return run_stage("backend", cfg_.backend_command, p.text,
                         extension_of(2), extension_of(3), {}, levels_.at(3));
    }

    // Assembles and links an assembly-level program into an executable.
    ToolchainResult<Executable> link(const Program& p) const {
        require_level(p, 3, "link");
        return link_text(p.text, p.level, next_build_id());
    }

    // Builds a runnable executable from whatever level the program is at:
    // source goes through the full pipeline, IR through middle-end and
    // backend, assembly straight to the assembler/linker.
    ToolchainResult<Executable> build_executable(const Program& p) const {
        std::string build_id = next_build_id();
        if (p.level.ordinal == 3) return link_text(p.text, p.level, build_id);

        Program current = p;
        if (current.level.ordinal == 1) {
            auto lowered = frontend(current);
            if (!is_ok(lowered)) return diagnostic_of(lowered);
            current = value_of(lowered);
        }
        auto optimized = middle_end(current);
        if (!is_ok(optimized)) return diagnostic_of(optimized);
        auto assembly = backend(value_of(optimized));
        if (!is_ok(assembly)) return diagnostic_of(assembly);
        return link_text(value_of(assembly).text, p.level, build_id);
    }

    // The run's performance denominator: the original source built with the
    // baseline optimization flags. A Diagnostic marks the program as out of
    // scope for optimization.
    ToolchainResult<Executable> baseline_executable(const Program& p) const {
        require_level(p, 1, "baseline");
        return build_executable(p);
    }

private:
    static void require_level(const Program& p, int ordinal, const char* stage) {
        if (p.level.ordinal != ordinal)
            throw std::invalid_argument(std::string(stage) +
                                        ": program is at level '" + p.level.name +
                                        "' (ordinal " + std::to_string(p.level.ordinal) +
                                        "), expected ordinal " + std::to_string(ordinal));
    }

    std::string extension_of(int ordinal) const {
        const std::string& name = levels_.at(ordinal).name;
        if (name == "source") return ".c";
        if (name == "ir") return ".ll";
        if (name == "assembly") return ".s";
        return ".txt";
    }

    std::string next_build_id() const {
        static std::atomic<std::uint64_t> counter{0};
        return "b" + std::to_string(::getpid()) + "-" +
               std::to_string(counter.fetch_add(1));
    }

    static std::vector<std::string> tokenize(const std::string& text) {
        std::vector<std::string> out;
        std::istringstream stream(text);
        std::string token;
        while (stream >> token) out.push_back(token);
        return out;
    }

    Diagnostic make_diagnostic(const std::string& stage,
                               const ProcessResult& run) const {
        Diagnostic d;
        d.stage = stage;
        d.exit_code = run.exit_code;
        d.timed_out = run.timed_out;
        std::string text = run.timed_out
                               ? "stage timed out after " +
                                     std::to_string(cfg_.per_invocation_timeout) +
                                     " s"
                               : detail::sanitize_text(run.stderr_text);
        if (text.size() > cfg_.diagnostic_truncate_bytes) {
            text.resize(cfg_.diagnostic_truncate_bytes);
            text += "\n... [truncated]";
            d.truncated = true;
        }
        d.message = text;
        return d;
    }

    static bool effectively_empty(const std::string& text) {
        return text.find_first_not_of(" \t\r\n") == std::string::npos;
    }

    ToolchainResult<Program> run_stage(const std::string& stage,
                                       const std::string& command_template,
                                       const std::string& input_text,
                                       const std::string& in_ext,
                                       const std::string& out_ext,
                                       const std::vector<std::string>& flags,
                                       const AbstractionLevel& out_level) const {
        namespace fs = std::filesystem;
        if (effectively_empty(input_text))
            return Diagnostic{stage, -1, "input program text is empty", false, false};
        fs::path dir = fs::path(cfg_.work_dir) / next_build_id();
        fs::create_directories(dir);
        fs::path in_path = dir / ("in" + in_ext);
        fs::path out_path = dir / ("out" + out_ext);
        detail::write_file(in_path, input_text);

        auto argv = detail::expand_template(command_template, in_path.string(),
                                            out_path.string(), flags);
        ProcessOptions opts;
        opts.timeout_seconds = cfg_.per_invocation_timeout;
        opts.env_allowlist = cfg_.env_allowlist;
        auto run = run_process(argv, opts);

        if (!run.ok() || !fs::exists(out_path)) {
            auto d = make_diagnostic(stage, run);
            if (run.ok() && d.message.empty())
                d.message = "stage produced no output file";
            if (run.ok()) d.exit_code = -1;
            return d;
        }
        std::string out_text = detail::read_file(out_path);
        if (out_text.empty())
            return Diagnostic{stage, -1, "stage produced an empty output file",
                              false, false};
        return Program(out_level, std::move(out_text), stage);
    }

    ToolchainResult<Executable> link_text(const std::string& assembly_text,
                                          const AbstractionLevel& from_level,
                                          const std::string& build_id) const {
        namespace fs = std::filesystem;
        if (effectively_empty(assembly_text))
            return Diagnostic{"link", -1, "input program text is empty", false, false};
        fs::path dir = fs::path(cfg_.work_dir) / build_id;
        fs::create_directories(dir);
        fs::path in_path = dir / "in.s";
        fs::path exe_path = dir / "program";
        detail::write_file(in_path, assembly_text);

        auto argv = detail::expand_template(cfg_.link_command, in_path.string(),
                                            exe_path.string(), {});
        ProcessOptions opts;
        opts.timeout_seconds = cfg_.per_invocation_timeout;
        opts.env_allowlist = cfg_.env_allowlist;
        auto run = run_process(argv, opts);
        if (!run.ok() || !fs::exists(exe_path))
            return make_diagnostic("link", run);
        if (::access(exe_path.c_str(), X_OK) != 0)
            return Diagnostic{"link", -1, "linked output is not executable",
                              false, false};
        return Executable{exe_path.string(), from_level, build_id};
    }

    ToolchainConfig cfg_;
    const LevelSet& levels_;
};

} // namespace coopt
