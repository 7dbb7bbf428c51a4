#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arcstudy {

/** @brief Base class for all arcstudy failures. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/** @brief One validation violation, addressed by a JSON-pointer-style path into the study document. */
struct Diagnostic {
    std::string path;
    std::string rule;
    std::string message;
};

/** @brief Model or input-data failure (schema violation, dangling reference, bad value). */
class ModelError : public Error {
public:
    ModelError(std::string path, std::string message)
        : Error(path + ": " + message), path_(std::move(path)), message_(std::move(message)) {}

    const std::string& path() const { return path_; }
    const std::string& detail() const { return message_; }

private:
    std::string path_;
    std::string message_;
};

/** @brief Collection of validation violations found in one pass over a document. */
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics)
        : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    static std::string summarize(const std::vector<Diagnostic>& ds) {
        if (ds.empty()) return "validation failed";
        std::string s = ds.front().path + ": " + ds.front().message;
        if (ds.size() > 1) s += " (and " + std::to_string(ds.size() - 1) + " more)";
        return s;
    }

    std::vector<Diagnostic> diagnostics_;
};

/** @brief Numerical or domain failure inside a computation stage. */
class ComputeError : public Error {
public:
    ComputeError(std::string stage, std::string message)
        : Error(stage + ": " + message), stage_(std::move(stage)), message_(std::move(message)) {}

    const std::string& stage() const { return stage_; }
    const std::string& detail() const { return message_; }

private:
    std::string stage_;
    std::string message_;
};

/** @brief Filesystem or stream failure while reading inputs or writing outputs. */
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(message) {}
};

}  // namespace arcstudy
