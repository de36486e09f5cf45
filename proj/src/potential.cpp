#include "kgws/potential.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double kExpClamp = 700.0;

double side_v0(const SideParams& s) {
    if (s.q == 0.0) throw DivisionByZero("derive_v0: q = 0");
    return (s.V1 - s.xi * s.A) / s.q - (s.V2 + s.eta * s.C * s.C) / (s.q * s.q);
}

// Value of one branch at exponential argument u = alpha*(x+L) (left) or
// -alpha*(x-L) (right). For u beyond the clamp the exponential dominates and
// the branch tends to v0 + xi*B/p + eta*(D/p)^2 exactly.
double branch_value(const SideParams& s, double v0, double u) {
    if (u > kExpClamp) {
        return v0 + s.xi * s.B / s.p + s.eta * (s.D / s.p) * (s.D / s.p);
    }
    const double e = std::exp(u);
    const double den = s.q + s.p * e;
    const double ratio1 = (s.A + s.B * e) / den;
    const double ratio2 = (s.C + s.D * e) / den;
    return v0 - s.V1 / den + s.V2 / (den * den) + s.xi * ratio1 +
           s.eta * ratio2 * ratio2;
}

}  // namespace

bool PotentialParams::symmetric(double tol) const {
    auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };
    return close(left.alpha, right.alpha) && close(left.L, right.L) &&
           close(left.V1, right.V1) && close(left.V2, right.V2) &&
           close(left.A, right.A) && close(left.B, right.B) &&
           close(left.C, right.C) && close(left.D, right.D) &&
           close(left.q, right.q) && close(left.p, right.p) &&
           close(left.xi, right.xi) && close(left.eta, right.eta);
}

void validate(const SideParams& side) {
    if (side.q == 0.0) throw DomainError("potential: q must be nonzero");
    if (side.p == 0.0) throw DomainError("potential: p must be nonzero");
    if (!(side.alpha > 0.0)) throw DomainError("potential: alpha must be > 0");
    if (side.L < 0.0) throw DomainError("potential: L must be >= 0");
}

std::pair<double, double> derive_v0(PotentialParams& params) {
    params.v0_left = side_v0(params.left);
    params.v0_right = side_v0(params.right);
    return {params.v0_left, params.v0_right};
}

PotentialParams make_symmetric(const SideParams& half) {
    validate(half);
    PotentialParams p;
    p.left = half;
    p.right = half;
    derive_v0(p);
    return p;
}

double evaluate(const PotentialParams& params, double x) {
    if (x < 0.0) {
        return branch_value(params.left, params.v0_left,
                            params.left.alpha * (x + params.left.L));
    }
    if (x > 0.0) {
        return branch_value(params.right, params.v0_right,
                            params.right.alpha * (params.right.L - x));
    }
    const double vl = branch_value(params.left, params.v0_left,
                                   params.left.alpha * params.left.L);
    const double vr = branch_value(params.right, params.v0_right,
                                   params.right.alpha * params.right.L);
    return 0.5 * (vl + vr);
}

namespace {

double* side_field(SideParams& s, const std::string& key) {
    static const std::map<std::string, double SideParams::*> fields = {
        {"alpha", &SideParams::alpha}, {"L", &SideParams::L},
        {"V1", &SideParams::V1},       {"V2", &SideParams::V2},
        {"A", &SideParams::A},         {"B", &SideParams::B},
        {"C", &SideParams::C},         {"D", &SideParams::D},
        {"q", &SideParams::q},         {"p", &SideParams::p},
        {"xi", &SideParams::xi},       {"eta", &SideParams::eta},
    };
    auto it = fields.find(key);
    return it == fields.end() ? nullptr : &(s.*(it->second));
}

}  // namespace

ConfigData parse_config(std::istream& in) {
    ConfigData out;
    SideParams base;
    std::map<std::string, double> tilde_overrides;
    std::string line;
    int lineno = 0;
    bool any_key = false;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key = value", lineno);
        }
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b2 = s.find_first_not_of(" \t");
            const auto e2 = s.find_last_not_of(" \t");
            s = (b2 == std::string::npos) ? "" : s.substr(b2, e2 - b2 + 1);
        };
        trim(key);
        trim(val);

        double parsed = 0.0;
        std::size_t used = 0;
        try {
            parsed = std::stod(val, &used);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse value for '" + key + "'", lineno);
        }
        if (used != val.size()) {
            throw ConfigError("trailing junk after value for '" + key + "'",
                              lineno);
        }

        if (key == "mass") {
            out.mass = parsed;
            out.has_mass = true;
        } else if (key.rfind("tilde_", 0) == 0) {
            const std::string bare = key.substr(6);
            if (side_field(base, bare) == nullptr) {
                throw ConfigError("unknown key '" + key + "'", lineno);
            }
            tilde_overrides[bare] = parsed;
        } else if (double* f = side_field(base, key)) {
            *f = parsed;
        } else {
            throw ConfigError("unknown key '" + key + "'", lineno);
        }
        any_key = true;
    }
    if (!any_key) throw ConfigError("empty configuration", 0);

    validate(base);
    out.params.left = base;
    out.params.right = base;
    for (const auto& [k, v] : tilde_overrides) {
        *side_field(out.params.left, k) = v;
    }
    if (!tilde_overrides.empty()) {
        validate(out.params.left);
        out.asymmetric = !out.params.symmetric();
    }
    derive_v0(out.params);
    return out;
}

ConfigData load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
    return parse_config(in);
}

}  // namespace kgws
