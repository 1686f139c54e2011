#include "d2dnc/fixture.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "d2dnc/errors.hpp"

namespace d2dnc {

namespace {

[[noreturn]] void bad(const std::string& why, int line_no) {
    throw Error(ErrorCode::IoError, "fixture line " + std::to_string(line_no) + ": " + why);
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<int> parse_id_list(const std::string& s, int line_no) {
    std::vector<int> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        tok = strip(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            bad("expected packet id, got '" + tok + "'", line_no);
        }
    }
    return out;
}

}  // namespace

Fixture parse_fixture(std::istream& in) {
    int n = -1, m = -1;
    std::vector<std::vector<int>> wants;
    std::vector<std::pair<int, int>> edges;
    double sigma_default = 0.0;
    double epsilon = 0.0;
    std::vector<std::tuple<int, int, double>> overrides;
    bool saw_edges = false;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (const auto h = line.find('#'); h != std::string::npos) line = strip(line.substr(0, h));
        if (line.empty()) continue;

        std::istringstream is(line);
        std::string key;
        is >> key;
        if (key == "players") {
            std::string pk;
            if (!(is >> n >> pk >> m) || pk != "packets" || n < 1 || m < 1)
                bad("expected 'players N packets M'", line_no);
            wants.assign(static_cast<std::size_t>(n), {});
        } else if (key == "wants") {
            if (n < 0) bad("'wants' before 'players'", line_no);
            std::string rest;
            std::getline(is, rest);
            const auto colon = rest.find(':');
            if (colon == std::string::npos) bad("expected 'wants u: p,...'", line_no);
            int u = 0;
            try {
                u = std::stoi(strip(rest.substr(0, colon)));
            } catch (const std::exception&) {
                bad("bad player id", line_no);
            }
            if (u < 1 || u > n) bad("player id out of range", line_no);
            wants[static_cast<std::size_t>(u - 1)] = parse_id_list(rest.substr(colon + 1), line_no);
        } else if (key == "edges:" || key == "edges") {
            if (n < 0) bad("'edges' before 'players'", line_no);
            saw_edges = true;
            std::string rest;
            std::getline(is, rest);
            if (key == "edges" && !rest.empty() && strip(rest).rfind(':', 0) == 0)
                rest = strip(rest).substr(1);
            std::size_t pos = 0;
            while ((pos = rest.find('(', pos)) != std::string::npos) {
                const auto close = rest.find(')', pos);
                if (close == std::string::npos) bad("unclosed edge tuple", line_no);
                const std::string body = rest.substr(pos + 1, close - pos - 1);
                const auto comma = body.find(',');
                if (comma == std::string::npos) bad("edge needs two ids", line_no);
                int u = 0, v = 0;
                try {
                    u = std::stoi(strip(body.substr(0, comma)));
                    v = std::stoi(strip(body.substr(comma + 1)));
                } catch (const std::exception&) {
                    bad("bad edge ids", line_no);
                }
                if (u < 1 || u > n || v < 1 || v > n) bad("edge id out of range", line_no);
                edges.emplace_back(u - 1, v - 1);
                pos = close + 1;
            }
        } else if (key == "sigma") {
            std::string a;
            is >> a;
            if (a == "default") {
                if (!(is >> sigma_default)) bad("expected 'sigma default X'", line_no);
            } else {
                int u = 0, v = 0;
                double x = 0.0;
                try {
                    u = std::stoi(a);
                } catch (const std::exception&) {
                    bad("expected 'sigma default X' or 'sigma u v X'", line_no);
                }
                if (!(is >> v >> x)) bad("expected 'sigma u v X'", line_no);
                if (u < 1 || u > n || v < 1 || v > n) bad("sigma ids out of range", line_no);
                overrides.emplace_back(u - 1, v - 1, x);
            }
        } else if (key == "epsilon") {
            if (!(is >> epsilon)) bad("expected 'epsilon X'", line_no);
        } else {
            bad("unknown directive '" + key + "'", line_no);
        }
    }

    if (n < 0) throw Error(ErrorCode::IoError, "fixture: missing 'players N packets M' header");
    if (!saw_edges) throw Error(ErrorCode::IoError, "fixture: missing 'edges:' line");

    Fixture f;
    f.state = StateMatrix(n, m);
    for (int u = 0; u < n; ++u)
        for (int p : wants[static_cast<std::size_t>(u)]) {
            if (p < 1 || p > m)
                throw Error(ErrorCode::IoError, "fixture: packet id out of range for player " +
                                                    std::to_string(u + 1));
            f.state.set_wants(u, p - 1, true);
        }
    if (!f.state.every_packet_held())
        throw Error(ErrorCode::IoError, "fixture: some packet is held by no player");

    f.topology = Topology::from_edges(n, edges);
    f.erasures = ErasureModel(n, sigma_default, epsilon);
    for (auto [u, v, x] : overrides) f.erasures.set_sigma(u, v, x);
    return f;
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open fixture: " + path);
    return parse_fixture(in);
}

std::string serialize_fixture(const Fixture& f) {
    std::ostringstream os;
    os.precision(17);  // lossless double round-trip
    const int n = f.state.players();
    const int m = f.state.packets();
    os << "players " << n << " packets " << m << "\n";
    for (int u = 0; u < n; ++u) {
        os << "wants " << (u + 1) << ":";
        bool first = true;
        f.state.wants_row(u).for_each([&](std::size_t p) {
            os << (first ? " " : ",") << (p + 1);
            first = false;
        });
        os << "\n";
    }
    os << "edges:";
    for (auto [u, v] : f.topology.edge_list()) os << " (" << (u + 1) << "," << (v + 1) << ")";
    os << "\n";

    // Emit the dominant off-diagonal sigma as the default plus explicit
    // overrides for the rest.
    std::map<double, int> freq;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) ++freq[f.erasures.sigma(u, v)];
    double def = 0.0;
    int best = -1;
    for (auto [val, cnt] : freq)
        if (cnt > best) { best = cnt; def = val; }
    os << "sigma default " << def << "\n";
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (f.erasures.sigma(u, v) != def)
                os << "sigma " << (u + 1) << " " << (v + 1) << " " << f.erasures.sigma(u, v) << "\n";
        }
    os << "epsilon " << f.erasures.epsilon() << "\n";
    return os.str();
}

void save_fixture(const Fixture& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write fixture: " + path);
    out << serialize_fixture(f);
}

}  // namespace d2dnc
