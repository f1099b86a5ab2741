#pragma once

#include <string>

#include "k2slot/parse.hpp"

namespace k2slot {

// Knobs shared by every command of a session. The seed feeds polynomial
// factorization where a command calls it directly; all library internals are
// deterministic, so equal configs give byte-identical output.
struct SessionConfig {
    bool json = false;
    u64 seed = 0;
    int degree_bound = 8;
    i64 budget = 2'000'000;
};

inline constexpr int kSchemaVersion = 1;

// Executes every command and returns the full report, text or JSON per the
// config. InputError on an invalid config; MathError from the underlying
// operations passes through to the caller.
std::string run_session(const ParsedSession& s, const SessionConfig& cfg);

}  // namespace k2slot
