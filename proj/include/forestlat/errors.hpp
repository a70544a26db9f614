#ifndef FORESTLAT_ERRORS_HPP
#define FORESTLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace forestlat {

// Malformed textual input (tree or partition syntax). `position` is the
// 0-based offset of the offending character in the input string.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A configured resource bound (leaf count, lattice size) was exceeded.
class bound_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Contract violations (unknown labels, mismatched ground sets, non-covers)
// are reported as std::invalid_argument.
//
// Violations of guaranteed structural facts (a chain step that does not
// exist, level sets that disagree) are reported as std::logic_error: they
// mean either an implementation bug or a disproof.

}  // namespace forestlat

#endif
