#ifndef ITYPE_SERIALIZE_HPP
#define ITYPE_SERIALIZE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "itype/checker.hpp"
#include "itype/infer.hpp"
#include "itype/pseudo.hpp"

namespace itype {

// All JSON is emitted compact unless indent >= 0. Types use the textual
// rendering of the type module; ascii switches arrows and λ to ASCII.

std::string pd_to_json(const PseudoDerivation& pd, bool ascii = false, int indent = -1);
std::string derivation_to_json(const Derivation& d, Mode system, bool ascii = false, int indent = -1);
// One JSON object per event.
std::string trace_event_to_json(const TraceEvent& e, bool ascii = false);
// Outcome of infer: status, typing and, on success, psi and the checked
// derivation (which `check` accepts as is).
std::string outcome_to_json(const InferOutcome& out, bool with_trace, bool ascii = false, int indent = -1);

class JsonFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ParsedDerivation {
    Derivation derivation;
    std::optional<Mode> system;  // from a "system" field when present
};

// Accepts a derivation object, or any object with a "derivation" field
// (such as infer output). Throws JsonFormatError or ParseError.
ParsedDerivation parse_derivation_json(std::string_view text);

}  // namespace itype

#endif  // ITYPE_SERIALIZE_HPP
