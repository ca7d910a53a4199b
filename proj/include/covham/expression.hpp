#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covham/dual.hpp"
#include "covham/errors.hpp"

namespace covham {

namespace detail {
struct ExprNode;
}

/// Immutable arithmetic expression over a fixed list of coordinate names.
/// Supports + - * / ^, unary minus and sin, cos, exp, log, sqrt. Evaluation is
/// pure and generic over the scalar type, so dual numbers give exact
/// derivatives.
class Expression {
public:
    int dimension() const noexcept { return static_cast<int>(coords_.size()); }
    const std::vector<std::string>& coordinates() const noexcept { return coords_; }

    template <typename T>
    T eval(std::span<const T> x) const;

    /// Canonical text form; parsing it back yields a structurally equal tree.
    std::string to_string() const;

    bool structurally_equal(const Expression& other) const;

    /// True when the tree is a single numeric literal.
    bool is_constant() const;

private:
    friend Expression parse_expression(std::string_view, std::vector<std::string>);
    friend Expression make_constant_expression(double, std::vector<std::string>);

    std::shared_ptr<const detail::ExprNode> root_;
    std::vector<std::string> coords_;
};

/// Parse `text` over the given coordinate names. Throws ParseError with the
/// byte offset of the problem; unknown identifiers are reported by name.
Expression parse_expression(std::string_view text, std::vector<std::string> coordinates);

Expression make_constant_expression(double value, std::vector<std::string> coordinates);

} // namespace covham
