#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "montes/basis.hpp"
#include "montes/zpoly.hpp"

namespace montes::cli {

enum class Command { Decompose, Index, PBasis, PStem, Check, Bench };

struct JobSpec {
    Command command = Command::Decompose;
    IntPoly f;
    mpz_class p;
    bool json = false;
    bool trace = false;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool stress = false;
    std::int64_t max_iter = 0;
};

// --help or --version; the text is what should be printed.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// args excludes the program name. Throws HelpRequested, ParseError (bad
// polynomial) or InputError (bad flags, composite p, non-monic f).
JobSpec parse_input(const std::vector<std::string>& args);

// Exit code 0 when the order is certified maximal, 2 when not, 1 on error.
int run_job(const JobSpec& job, std::ostream& out, std::ostream& err);

nlohmann::ordered_json to_json(const JobSpec& job, const Analysis& a);

// parse_input + run_job with the error reporting of the executable.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace montes::cli
