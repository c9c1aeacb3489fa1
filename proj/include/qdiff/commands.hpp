#ifndef QDIFF_COMMANDS_HPP
#define QDIFF_COMMANDS_HPP

#include <qdiff/context.hpp>
#include <qdiff/error.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qdiff
{

struct CommandOptions {
    cplx q = 2.0;
    int order = 40;
    Mode mode = Mode::Formal;
    double tol = 1e-12;
    std::optional<std::string> svg;
    std::vector<cplx> points;
};

// newton | factor | solve | index | eval.  Throws qdiff::Error on failure.
nlohmann::json run_command(const std::string &cmd, const std::string &source, const CommandOptions &opts);

// {"error": {"kind": ..., "message": ..., [line, column | obstruction]}}
nlohmann::json error_json(const Error &e);

// Serialized with sorted keys and a trailing newline.
std::string dump(const nlohmann::json &j);

} // namespace qdiff

#endif
