#include "pmsam/config.hpp"

#include <charconv>
#include <fstream>

namespace pmsam {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("invalid value for '" + std::string(key) + "': '" +
                          std::string(value) + "'");
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    // strtod instead of from_chars so exponents like 1e-4 parse under every
    // libstdc++ in use.
    std::string buf(value);
    char* end = nullptr;
    double out = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw ConfigError("invalid value for '" + std::string(key) + "': '" + buf + "'");
    return out;
}

void apply(PmsamConfig& config, std::string_view key, std::string_view value) {
    if (key == "n")
        config.ma.population = parse_number<int>(key, value);
    else if (key == "m")
        config.membranes = parse_number<int>(key, value);
    else if (key == "step_length")
        config.ma.step_length = parse_double(key, value);
    else if (key == "eyesight")
        config.ma.eyesight = parse_double(key, value);
    else if (key == "somersault_lo")
        config.ma.somersault_lo = parse_double(key, value);
    else if (key == "somersault_hi")
        config.ma.somersault_hi = parse_double(key, value);
    else if (key == "d")
        config.ma.dimension = parse_number<int>(key, value);
    else if (key == "climb_number")
        config.ma.climb_number = parse_number<int>(key, value);
    else if (key == "n_max")
        config.ma.cyclic_number = parse_number<int>(key, value);
    else if (key == "t_max")
        config.t_max = parse_number<std::uint64_t>(key, value);
    else if (key == "target_value")
        config.target_value = parse_double(key, value);
    else if (key == "seed")
        config.seed = parse_number<std::uint64_t>(key, value);
    else
        throw ConfigError("unknown key '" + std::string(key) + "'");
}

void apply_line(PmsamConfig& config, std::string_view line) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("expected key=value, got '" + std::string(line) + "'");
    apply(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

} // namespace

PmsamConfig parse_config(const std::optional<std::filesystem::path>& file,
                         const std::vector<std::string>& overrides) {
    PmsamConfig config;
    if (file) {
        std::ifstream in(*file);
        if (!in) throw std::runtime_error("cannot read config file '" + file->string() + "'");
        std::string line;
        while (std::getline(in, line)) apply_line(config, line);
    }
    for (const auto& entry : overrides) apply_line(config, entry);
    config.validate();
    return config;
}

} // namespace pmsam
