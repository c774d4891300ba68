#include "geomtomo/measures.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace geomtomo {

std::string to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::lebesgue: return "lebesgue";
        case MeasureKind::radial_power: return "radial_power";
        case MeasureKind::cone_power: return "cone_power";
        case MeasureKind::gaussian: return "gaussian";
    }
    return "?";
}

MeasureSpec MeasureSpec::lebesgue() { return MeasureSpec{}; }

MeasureSpec MeasureSpec::radial_power(double p) {
    if (p <= 0) throw std::invalid_argument("radial_power: exponent must be positive");
    MeasureSpec m;
    m.kind = MeasureKind::radial_power;
    m.exponent = p;
    return m;
}

MeasureSpec MeasureSpec::cone_power(Vec direction, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("cone_power: alpha must be positive");
    double len = norm(direction);
    if (std::fabs(len - 1.0) > 2e-10)
        throw std::invalid_argument("cone_power: direction must be a unit vector");
    MeasureSpec m;
    m.kind = MeasureKind::cone_power;
    m.exponent = alpha;
    m.direction = std::move(direction);
    return m;
}

MeasureSpec MeasureSpec::gaussian(double sigma, double truncation) {
    if (sigma <= 0) throw std::invalid_argument("gaussian: sigma must be positive");
    if (truncation <= 0)
        throw std::invalid_argument("gaussian: truncation radius must be positive");
    MeasureSpec m;
    m.kind = MeasureKind::gaussian;
    m.sigma = sigma;
    m.truncation = truncation;
    return m;
}

double MeasureSpec::density(const Vec& x) const {
    switch (kind) {
        case MeasureKind::lebesgue: return 1.0;
        case MeasureKind::radial_power: return std::pow(norm(x), exponent);
        case MeasureKind::cone_power: {
            if (x.size() != direction.size())
                throw std::invalid_argument("cone_power density: dimension mismatch");
            double d = dot(x, direction);
            return d > 0 ? std::pow(d, exponent) : 0.0;
        }
        case MeasureKind::gaussian: {
            double r2 = dot(x, x);
            if (r2 > truncation * truncation) return 0.0;
            return std::exp(-r2 / (2 * sigma * sigma));
        }
    }
    throw std::logic_error("density: unhandled kind");
}

bool MeasureSpec::homogeneous() const {
    return kind != MeasureKind::gaussian;
}

double MeasureSpec::density_degree() const {
    switch (kind) {
        case MeasureKind::lebesgue: return 0.0;
        case MeasureKind::radial_power:
        case MeasureKind::cone_power: return exponent;
        case MeasureKind::gaussian:
            throw std::domain_error("gaussian density is not homogeneous");
    }
    throw std::logic_error("density_degree: unhandled kind");
}

bool MeasureSpec::ray_decreasing() const {
    // g(tx) >= g(x) on [0,1]: constant and gaussian qualify, positive-degree
    // homogeneous densities grow outward and do not
    return kind == MeasureKind::lebesgue || kind == MeasureKind::gaussian;
}

std::optional<double> MeasureSpec::q_exponent(int n) const {
    switch (kind) {
        case MeasureKind::lebesgue: return 1.0 / n;
        case MeasureKind::radial_power:
        case MeasureKind::cone_power: return 1.0 / (n + exponent);
        case MeasureKind::gaussian:
            if (!std::isfinite(truncation)) return std::nullopt;
            return 1.0 / (n + truncation * truncation / (sigma * sigma));
    }
    return std::nullopt;
}

double MeasureSpec::sup_density(const BodySpec& region) const {
    switch (kind) {
        case MeasureKind::lebesgue: return 1.0;
        case MeasureKind::radial_power:
            return std::pow(radii(region).circumradius, exponent);
        case MeasureKind::cone_power:
            return std::pow(std::max(0.0, support(region, direction)), exponent);
        case MeasureKind::gaussian: return 1.0;
    }
    throw std::logic_error("sup_density: unhandled kind");
}

double MeasureSpec::ball_mass(int n, double r) const {
    if (r < 0) throw std::invalid_argument("ball_mass: negative radius");
    switch (kind) {
        case MeasureKind::lebesgue: return unit_ball_volume(n) * std::pow(r, n);
        case MeasureKind::radial_power:
            return n * unit_ball_volume(n) * std::pow(r, n + exponent) / (n + exponent);
        case MeasureKind::cone_power:
            return cone_sphere_moment(n, exponent) *
                   std::pow(r, n + exponent) / (n + exponent);
        case MeasureKind::gaussian:
            return n * unit_ball_volume(n) *
                   gaussian_radial_moment(n - 1, sigma, std::min(r, truncation));
    }
    throw std::logic_error("ball_mass: unhandled kind");
}

double MeasureSpec::segment_moment(const Vec& u, double t, int m) const {
    if (t < 0) throw std::invalid_argument("segment_moment: negative length");
    switch (kind) {
        case MeasureKind::lebesgue: return std::pow(t, m + 1) / (m + 1);
        case MeasureKind::radial_power:
            return std::pow(t, m + 1 + exponent) / (m + 1 + exponent);
        case MeasureKind::cone_power: {
            double d = dot(u, direction);
            if (d <= 0) return 0.0;
            return std::pow(d, exponent) *
                   std::pow(t, m + 1 + exponent) / (m + 1 + exponent);
        }
        case MeasureKind::gaussian:
            return gaussian_radial_moment(m, sigma, std::min(t, truncation));
    }
    throw std::logic_error("segment_moment: unhandled kind");
}

std::string MeasureSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = geomtomo::to_string(kind);
    nlohmann::json params = nlohmann::json::object();
    switch (kind) {
        case MeasureKind::lebesgue: break;
        case MeasureKind::radial_power: params["exponent"] = exponent; break;
        case MeasureKind::cone_power:
            params["alpha"] = exponent;
            params["direction"] = direction;
            break;
        case MeasureKind::gaussian:
            params["sigma"] = sigma;
            if (std::isfinite(truncation)) params["truncation"] = truncation;
            break;
    }
    j["params"] = params;
    return j.dump();
}

MeasureSpec MeasureSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json& p = j.at("params");
    if (kind == "lebesgue") return lebesgue();
    if (kind == "radial_power") return radial_power(p.at("exponent").get<double>());
    if (kind == "cone_power")
        return cone_power(p.at("direction").get<Vec>(), p.at("alpha").get<double>());
    if (kind == "gaussian")
        return gaussian(p.at("sigma").get<double>(),
                        p.contains("truncation") ? p.at("truncation").get<double>()
                                                 : HUGE_VAL);
    throw std::invalid_argument("unknown measure kind '" + kind + "'");
}

}  // namespace geomtomo
