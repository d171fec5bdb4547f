#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fringe/tree.hpp"

namespace fringe {

// Text grammar:  Tree ::= "L" | "(" Tree Tree ")"
// The serialization is canonical; parse(format(t)) reproduces t exactly.

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

Tree parse_tree(std::string_view text);
std::string format_tree(const Tree& t);
void format_tree(const Tree& t, std::string& out);

}  // namespace fringe
