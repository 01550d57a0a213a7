#include "mayer/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace mayer {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

nlohmann::json parse_scalar(const std::string& raw, int lineno) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("toml: empty value on line " + std::to_string(lineno));
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError("toml: unterminated string on line " + std::to_string(lineno));
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    try {
        size_t used = 0;
        if (v.find_first_of(".eE") == std::string::npos) {
            const long long i = std::stoll(v, &used);
            if (used == v.size()) return i;
        }
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("toml: cannot parse value '" + v + "' on line " + std::to_string(lineno));
}

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
    nlohmann::json out = nlohmann::json::object();
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ConfigError("toml: malformed section on line " + std::to_string(lineno));
            section = trim(body.substr(1, body.size() - 2));
            continue;
        }
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("toml: expected key = value on line " + std::to_string(lineno));
        std::string key = trim(body.substr(0, eq));
        if (key.empty()) throw ConfigError("toml: empty key on line " + std::to_string(lineno));
        if (!section.empty()) key = section + "." + key;
        out[key] = parse_scalar(body.substr(eq + 1), lineno);
    }
    return out;
}

nlohmann::json parse_toml_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_toml(ss.str());
}

std::pair<std::vector<double>, std::vector<double>> load_radial_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open CSV file: " + path);
    std::vector<double> r, phi;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::istringstream row(body);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw ConfigError("csv: expected two columns on line " + std::to_string(lineno));
        try {
            const double rv = std::stod(trim(a));
            const double pv = std::stod(trim(b));
            r.push_back(rv);
            phi.push_back(pv);
        } catch (const std::exception&) {
            if (lineno == 1) continue;  // header row
            throw ConfigError("csv: bad number on line " + std::to_string(lineno));
        }
    }
    if (r.size() < 2) throw ConfigError("csv: need at least two grid rows");
    return {std::move(r), std::move(phi)};
}

namespace {

double need_number(const nlohmann::json& spec, const std::string& key) {
    if (!spec.contains(key) || !spec[key].is_number())
        throw ConfigError("potential spec: missing numeric field '" + key + "'");
    return spec[key].get<double>();
}

}  // namespace

PairPotential potential_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        throw ConfigError("potential spec: missing 'kind'");
    const std::string kind = spec["kind"].get<std::string>();
    const int dim = spec.contains("dimension") ? spec["dimension"].get<int>() : 3;
    const double beta = spec.contains("beta") ? spec["beta"].get<double>() : 1.0;
    try {
        if (kind == "hard_sphere" || kind == "hard-sphere")
            return PairPotential::hard_sphere(need_number(spec, "radius"), dim, beta);
        if (kind == "power_law" || kind == "power-law")
            return PairPotential::power_law(need_number(spec, "epsilon"),
                                            need_number(spec, "sigma"),
                                            need_number(spec, "exponent"), dim, beta);
        if (kind == "ideal") return PairPotential::ideal(dim, beta);
        if (kind == "tabulated") {
            if (spec.contains("csv"))
                return [&] {
                    auto [r, phi] = load_radial_csv(spec["csv"].get<std::string>());
                    return PairPotential::tabulated(std::move(r), std::move(phi), dim, beta);
                }();
            if (spec.contains("r") && spec.contains("phi"))
                return PairPotential::tabulated(spec["r"].get<std::vector<double>>(),
                                                spec["phi"].get<std::vector<double>>(), dim, beta);
            throw ConfigError("tabulated potential needs 'csv' or inline 'r'/'phi' arrays");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("potential spec: ") + e.what());
    }
    throw ConfigError("unknown potential kind: " + kind);
}

nlohmann::json potential_to_json(const PairPotential& p) {
    nlohmann::json j;
    j["dimension"] = p.dimension();
    j["beta"] = p.beta();
    switch (p.kind()) {
        case PotentialKind::HardSphere:
            j["kind"] = "hard_sphere";
            j["radius"] = p.radius();
            break;
        case PotentialKind::PowerLaw:
            j["kind"] = "power_law";
            j["epsilon"] = p.epsilon();
            j["sigma"] = p.sigma();
            j["exponent"] = p.exponent();
            break;
        case PotentialKind::Tabulated:
            j["kind"] = "tabulated";
            j["r"] = p.grid_r();
            j["phi"] = p.grid_phi();
            break;
        case PotentialKind::Ideal:
            j["kind"] = "ideal";
            break;
    }
    return j;
}

}  // namespace mayer
