#pragma once

#include "flawlens/ast.hpp"
#include "flawlens/lexer.hpp"

#include <string>
#include <vector>

namespace flawlens {

struct SourceFile {
    std::string path;
    std::string text;
};

struct SourceProgram {
    std::vector<SourceFile> files;
};

/// Recursive-descent parse of one tokenized MiniOO file. Throws ParseError.
ast::Program parse_tokens(const std::vector<Token>& tokens, const std::string& file = {});

/// Tokenizes and parses every file, concatenating class declarations in file order.
/// Throws ModelError when two files share a path.
ast::Program parse_program(const SourceProgram& program);

/// Reads the given files from disk into a SourceProgram.
SourceProgram read_sources(const std::vector<std::string>& paths);

}  // namespace flawlens
