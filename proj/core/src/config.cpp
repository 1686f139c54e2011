#include "d2dnc/config.hpp"

#include <fstream>
#include <sstream>

#include "d2dnc/errors.hpp"

namespace d2dnc {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
    throw Error(ErrorCode::ConfigError, "config key '" + key + "': " + why);
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) fail(key, "not an integer: '" + v + "'");
        return x;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(key, "not an integer: '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) fail(key, "not a number: '" + v + "'");
        return x;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(key, "not a number: '" + v + "'");
    }
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "players") c.players = static_cast<int>(to_int(key, value));
    else if (key == "packets") c.packets = static_cast<int>(to_int(key, value));
    else if (key == "epsilon") c.epsilon = to_double(key, value);
    else if (key == "sigma_rule") {
        if (value == "half_epsilon") c.sigma_rule = SigmaRule::HalfEpsilon;
        else if (value == "factor") c.sigma_rule = SigmaRule::Factor;
        else if (value == "fixed") c.sigma_rule = SigmaRule::Fixed;
        else fail(key, "expected half_epsilon|factor|fixed, got '" + value + "'");
    } else if (key == "sigma_factor") c.sigma_factor = to_double(key, value);
    else if (key == "sigma") c.sigma_value = to_double(key, value);
    else if (key == "connectivity") c.connectivity = to_double(key, value);
    else if (key == "side") c.side_meters = to_double(key, value);
    else if (key == "scheme") {
        const auto k = scheme_from_name(value);
        if (!k) fail(key, "unknown scheme '" + value + "'");
        c.scheme = *k;
    } else if (key == "episodes") c.episodes = static_cast<int>(to_int(key, value));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "max_rounds") c.max_rounds = static_cast<int>(to_int(key, value));
    else if (key == "threads") c.threads = static_cast<int>(to_int(key, value));
    else fail(key, "unknown key");
}

void apply_line(RunConfig& c, const std::string& raw, int line_no) {
    std::string line = strip(raw);
    if (const auto h = line.find('#'); h != std::string::npos) line = strip(line.substr(0, h));
    if (line.empty()) return;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw Error(ErrorCode::ConfigError,
                    "config line " + std::to_string(line_no) + ": expected key = value");
    apply(c, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
}

}  // namespace

void validate_config(const RunConfig& c) {
    if (c.players < 2) fail("players", "must be >= 2");
    if (c.packets < 1) fail("packets", "must be >= 1");
    if (c.epsilon < 0.0 || c.epsilon >= 1.0) fail("epsilon", "must be in [0, 1)");
    if (c.sigma() < 0.0 || c.sigma() >= 1.0) fail("sigma", "effective sigma must be in [0, 1)");
    if (c.sigma_factor < 0.0) fail("sigma_factor", "must be >= 0");
    if (c.connectivity <= 0.0 || c.connectivity > 1.0) fail("connectivity", "must be in (0, 1]");
    if (c.side_meters <= 0.0) fail("side", "must be > 0");
    if (c.episodes < 1) fail("episodes", "must be >= 1");
    if (c.max_rounds < 0) fail("max_rounds", "must be >= 0");
    if (c.threads < 0) fail("threads", "must be >= 0");
}

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& flag_overrides) {
    RunConfig c;  // declared defaults
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) apply_line(c, line, ++line_no);

    for (const auto& flag : flag_overrides) {
        const auto eq = flag.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigError, "flag override '" + flag + "': expected key=value");
        apply(c, strip(flag.substr(0, eq)), strip(flag.substr(eq + 1)));
    }

    validate_config(c);
    return c;
}

RunConfig parse_config(const std::string& file_path, const std::vector<std::string>& flag_overrides) {
    std::string text;
    if (!file_path.empty()) {
        std::ifstream in(file_path);
        if (!in) throw Error(ErrorCode::IoError, "cannot open config: " + file_path);
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    }
    return parse_config_text(text, flag_overrides);
}

}  // namespace d2dnc
