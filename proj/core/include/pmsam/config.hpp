#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmsam/membrane.hpp"

namespace pmsam {

/// Configuration error: unknown key, unparsable value or violated invariant.
/// The message names the offending key.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parses a flat key=value config document plus key=value override strings
/// (applied after the file, in order). Blank lines and lines starting with
/// '#' are ignored. Recognized keys:
///   n, m, step_length, eyesight, somersault_lo, somersault_hi, d,
///   climb_number, n_max, t_max, target_value, seed
/// Missing keys keep their defaults (n=60, m=10, step_length=1e-4,
/// eyesight=1, interval [-1,1], d=30, climb_number=50, n_max=20). The
/// result is validated before it is returned.
PmsamConfig parse_config(const std::optional<std::filesystem::path>& file,
                         const std::vector<std::string>& overrides);

} // namespace pmsam
