#pragma once

#include <stdexcept>
#include <string>

namespace litcomplex {

// Bad input supplied by the user (files, flags, labels). CLI exit code 1.
class UserError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A checked invariant failed inside the toolkit. CLI exit code 2.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A feature is not defined for this document (too short, no verbs, ...).
// Extraction turns these into missing-mask bits.
class UndefinedFeature : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace litcomplex
