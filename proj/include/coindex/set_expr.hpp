#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coindex/set_indices.hpp"

namespace coindex {

/// Error raised while parsing or evaluating a set expression. position()
/// is the zero-based offset into the expression text.
class SetExprError : public std::runtime_error {
public:
    SetExprError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

/// Recursive-descent evaluator for set expressions.
///
///   expression := term ('|' term)*
///   term       := primary (('&' | '-') primary)*
///   primary    := NAME | '(' expression ')'
///   NAME       := [A-Za-z_][A-Za-z0-9_]*
///
/// '&' and '-' bind tighter than '|' and associate left to right.
class SetExprParser {
public:
    SetExprParser(std::string_view text, const std::map<std::string, Set>& env)
        : text_(text), env_(env) {}

    Set parse() {
        Set result = parse_expression();
        skip_spaces();
        if (pos_ != text_.size())
            throw SetExprError("unexpected trailing input", pos_);
        return result;
    }

private:
    Set parse_expression() {
        Set left = parse_term();
        while (peek() == '|') {
            ++pos_;
            left = set_union(left, parse_term());
        }
        return left;
    }

    Set parse_term() {
        Set left = parse_primary();
        for (char op = peek(); op == '&' || op == '-'; op = peek()) {
            ++pos_;
            const Set right = parse_primary();
            left = op == '&' ? set_intersection(left, right) : set_difference(left, right);
        }
        return left;
    }

    Set parse_primary() {
        skip_spaces();
        if (pos_ >= text_.size())
            throw SetExprError("expected a set name or '('", pos_);
        if (text_[pos_] == '(') {
            ++pos_;
            Set inner = parse_expression();
            skip_spaces();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw SetExprError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        return parse_name();
    }

    Set parse_name() {
        const std::size_t start = pos_;
        if (!is_name_start(text_[pos_]))
            throw SetExprError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        while (pos_ < text_.size() && is_name_part(text_[pos_])) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        auto it = env_.find(name);
        if (it == env_.end())
            throw SetExprError("unbound set name '" + name + "'", start);
        return it->second;
    }

    /// Next operator character, or '\0' at end. Skips leading spaces.
    char peek() {
        skip_spaces();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_spaces() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    static bool is_name_start(char c) {
        return c == '_' || std::isalpha(static_cast<unsigned char>(c));
    }
    static bool is_name_part(char c) {
        return c == '_' || std::isalnum(static_cast<unsigned char>(c));
    }

    std::string_view text_;
    const std::map<std::string, Set>& env_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates a set expression over named sets. See detail::SetExprParser
/// for the grammar. Unbound names and malformed input raise SetExprError.
inline Set eval_set_expr(std::string_view text, const std::map<std::string, Set>& env) {
    return detail::SetExprParser(text, env).parse();
}

}  // namespace coindex
