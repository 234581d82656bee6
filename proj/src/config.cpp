#include <cstdlib>
#include <sstream>
#include <string>

#include "lfdgf/error.hpp"

namespace lfdgf {

Caps Caps::from_env() {
    const char* env = std::getenv("LFDGF_CAPS");
    return env ? parse(env, {}, "LFDGF_CAPS") : Caps{};
}

Caps Caps::parse(const std::string& spec, Caps base, const std::string& origin) {
    Caps c = base;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError(origin + ": expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError(origin + ": bad number in '" + item + "'");
        }
        if (key == "closure")
            c.closure = value;
        else if (key == "team")
            c.team = value;
        else if (key == "tau_nodes")
            c.tau_nodes = value;
        else if (key == "unravel_nodes")
            c.unravel_nodes = value;
        else if (key == "types")
            c.types = value;
        else
            throw InputError(origin + ": unknown key '" + key + "'");
    }
    if (c.closure > 64)
        throw InputError(origin + ": closure cap cannot exceed 64");
    return c;
}

} // namespace lfdgf
