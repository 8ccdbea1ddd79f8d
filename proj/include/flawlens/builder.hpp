#pragma once

#include "flawlens/ast.hpp"
#include "flawlens/model.hpp"

#include <string_view>

namespace flawlens {

/// Type names that never materialise as classes.
bool is_primitive_type(std::string_view name);

/// Resolves names in a parsed MiniOO program and extracts the design model.
///
/// Receivers are resolved through their declared static types, searching
/// ancestors when the member is not declared on the static type itself.
/// Referenced but undeclared type names become external classes, and
/// members reached through them become opaque members of that class.
/// Calls on values whose type is not statically known (results of calls)
/// record no relation.
///
/// The result always passes validate(); otherwise ModelError is thrown.
DesignModel build_model(const ast::Program& program);

}  // namespace flawlens
