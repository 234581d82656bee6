#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfdgf {

// Malformed input: unknown variables, arity mismatches, parse errors.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded.
class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Resource caps shared by the decision procedures. LFDGF_CAPS overrides them
// from the environment ("closure=48,team=1024,...").
struct Caps {
    std::size_t closure = 64;          // max |Cl(psi)|, at most 64
    std::size_t team = 4096;           // max team size produced by full_F / lift
    std::size_t tau_nodes = 2'000'000; // max tree size of a tau translation
    std::size_t unravel_nodes = 400;   // max nodes in a bounded unraveling
    std::size_t types = 200'000;       // max number of enumerated types

    // Applies "key=value,..." on top of base; `origin` prefixes error messages.
    static Caps parse(const std::string& spec, Caps base, const std::string& origin);
    static Caps from_env();
};

} // namespace lfdgf
