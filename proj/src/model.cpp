#include "emfwd/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "emfwd/constants.hpp"

namespace emfwd {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw std::runtime_error(std::string("scenario: unknown key '") + it.key() + "' in " +
                                     where);
    }
}

Vec3 vec3_of(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error(std::string("scenario: ") + where + " must be a 3-array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

CoilSpec coil_of(const json& j, const char* where) {
    require_keys(j, where,
                 {"r_inner", "r_outer", "height", "center", "axis", "current_density_magnitude",
                  "n_radial", "n_axial", "n_azimuthal"});
    CoilSpec c;
    c.r_inner = j.at("r_inner").get<double>();
    c.r_outer = j.at("r_outer").get<double>();
    c.height = j.at("height").get<double>();
    c.center = vec3_of(j.at("center"), "coil center");
    if (j.contains("axis")) {
        const Vec3 axis = vec3_of(j.at("axis"), "coil axis");
        if (!(axis.x == 0.0 && axis.y == 0.0 && axis.z == 1.0))
            throw std::runtime_error("scenario: coil axis is fixed to [0,0,1]");
    }
    c.current_density_magnitude = j.at("current_density_magnitude").get<double>();
    if (j.contains("n_radial")) c.n_radial = j.at("n_radial").get<int>();
    if (j.contains("n_axial")) c.n_axial = j.at("n_axial").get<int>();
    if (j.contains("n_azimuthal")) c.n_azimuthal = j.at("n_azimuthal").get<int>();
    return c;
}

json coil_json(const CoilSpec& c) {
    json j;
    j["r_inner"] = c.r_inner;
    j["r_outer"] = c.r_outer;
    j["height"] = c.height;
    j["center"] = {c.center.x, c.center.y, c.center.z};
    j["current_density_magnitude"] = c.current_density_magnitude;
    j["n_radial"] = c.n_radial;
    j["n_axial"] = c.n_axial;
    j["n_azimuthal"] = c.n_azimuthal;
    return j;
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> v;
    std::ostringstream os;
    const auto add = [&v](const std::string& msg) { v.push_back(msg); };

    if (!(s.soil.sigma_s >= 0.0)) add("soil.sigma_s must be >= 0");
    if (!(s.soil.mu_rs >= 1.0)) add("soil.mu_rs must be >= 1");

    const ObjectParams& o = s.object;
    if (!(o.alpha > 0.0)) add("object.alpha must be > 0");
    if (!(o.sigma_star > 0.0)) add("object.sigma_star must be > 0");
    if (!(o.mu_rstar >= 1.0)) add("object.mu_rstar must be >= 1");
    if (!(o.position.z < 0.0)) add("object.position[2] must be < 0 (object above ground)");
    if (o.shape == ObjectShape::Sphere && !(o.position.z + o.alpha < 0.0))
        add("object must lie strictly below the ground plane: position[2] + alpha < 0");
    if (!(o.sigma_star > s.soil.sigma_s))
        add("object.sigma_star must exceed soil.sigma_s");
    if (o.shape == ObjectShape::ExternalSignature) {
        if (!o.signature)
            add("object.shape is external_signature but no signature is attached");
        else if (o.signature->entries.size() < 2)
            add("attached MPT signature needs at least 2 entries");
    }

    const auto check_coil = [&](const CoilSpec& c, const char* name) {
        if (!(c.r_inner > 0.0 && c.r_inner < c.r_outer)) {
            os.str("");
            os << name << ": radius ordering violated, need 0 < r_inner < r_outer";
            add(os.str());
        }
        if (!(c.height > 0.0)) add(std::string(name) + ": height must be > 0");
        if (!(c.center.z - 0.5 * c.height > 0.0))
            add(std::string(name) + ": coil must sit entirely above the ground plane");
        if (c.n_radial < 1 || c.n_axial < 1 || c.n_azimuthal < 4)
            add(std::string(name) + ": quadrature resolutions too small");
    };
    check_coil(s.excite, "excite coil");
    check_coil(s.measure, "measure coil");

    if (s.frequencies.empty()) add("frequency grid is empty");
    for (size_t i = 0; i < s.frequencies.size(); ++i) {
        if (!(s.frequencies[i] > 0.0)) {
            add("frequencies must be positive");
            break;
        }
        if (i > 0 && !(s.frequencies[i] > s.frequencies[i - 1])) {
            add("frequencies must be strictly increasing");
            break;
        }
    }
    return v;
}

RegimeReport regime_diagnostics(const Scenario& s, double omega) {
    RegimeReport r;
    const double alpha = s.object.alpha;
    r.depth_D = std::abs(s.object.position.z);
    r.nu = alpha * alpha * s.object.sigma_star * kMu0 * omega;
    r.epsilon = omega * kMu0 * s.soil.sigma_s * r.depth_D * r.depth_D;
    r.mu_rs_bound_ok = s.soil.mu_rs <= 1.0 + alpha / r.depth_D;
    r.epsilon_le_nu = r.epsilon <= r.nu;
    r.skin_depth_object =
        std::sqrt(2.0 / (omega * kMu0 * s.object.mu_rstar * s.object.sigma_star));
    return r;
}

Scenario scenario_from_json(const std::string& text, const std::filesystem::path& base_dir) {
    json j = json::parse(text);
    require_keys(j, "scenario", {"soil", "object", "excite_coil", "measure_coil", "frequencies"});

    Scenario s;
    const json& soil = j.at("soil");
    require_keys(soil, "soil", {"sigma_s", "mu_rs"});
    s.soil.sigma_s = soil.at("sigma_s").get<double>();
    s.soil.mu_rs = soil.at("mu_rs").get<double>();

    const json& obj = j.at("object");
    require_keys(obj, "object",
                 {"alpha", "sigma_star", "mu_rstar", "shape", "position", "signature_path"});
    s.object.alpha = obj.at("alpha").get<double>();
    s.object.sigma_star = obj.at("sigma_star").get<double>();
    s.object.mu_rstar = obj.at("mu_rstar").get<double>();
    s.object.position = vec3_of(obj.at("position"), "object position");
    const std::string shape = obj.at("shape").get<std::string>();
    if (shape == "sphere") {
        s.object.shape = ObjectShape::Sphere;
    } else if (shape == "external_signature") {
        s.object.shape = ObjectShape::ExternalSignature;
        if (!obj.contains("signature_path"))
            throw std::runtime_error("scenario: external_signature requires signature_path");
        s.object.signature_path = obj.at("signature_path").get<std::string>();
        std::filesystem::path p = s.object.signature_path;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        s.object.signature = std::make_shared<MptSignature>(load_signature(p));
    } else {
        throw std::runtime_error("scenario: shape must be 'sphere' or 'external_signature'");
    }

    s.excite = coil_of(j.at("excite_coil"), "excite_coil");
    s.measure = coil_of(j.at("measure_coil"), "measure_coil");

    const json& freq = j.at("frequencies");
    if (!freq.is_array()) throw std::runtime_error("scenario: frequencies must be an array");
    for (const auto& f : freq) s.frequencies.push_back(f.get<double>());
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_scenario: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json(ss.str(), path.parent_path());
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["soil"] = {{"sigma_s", s.soil.sigma_s}, {"mu_rs", s.soil.mu_rs}};
    json obj;
    obj["alpha"] = s.object.alpha;
    obj["sigma_star"] = s.object.sigma_star;
    obj["mu_rstar"] = s.object.mu_rstar;
    obj["shape"] = s.object.shape == ObjectShape::Sphere ? "sphere" : "external_signature";
    obj["position"] = {s.object.position.x, s.object.position.y, s.object.position.z};
    if (s.object.shape == ObjectShape::ExternalSignature)
        obj["signature_path"] = s.object.signature_path;
    j["object"] = obj;
    j["excite_coil"] = coil_json(s.excite);
    j["measure_coil"] = coil_json(s.measure);
    j["frequencies"] = s.frequencies;
    return j.dump(2);
}

}  // namespace emfwd
