#include "canard/io.hpp"

#include "canard/errors.hpp"

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

namespace canard::io {

namespace {

json poly_to_json(const Poly2Affine& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json e{{"i", t.i}, {"j", t.j}, {"c0", to_decimal_string(t.c0)}};
        if (t.c1 != 0)
            e["c1"] = to_decimal_string(t.c1);
        terms.push_back(e);
    }
    return terms;
}

Poly2Affine poly_from_json(const json& j) {
    Poly2Affine p;
    for (const auto& e : j) {
        const BigReal c0 = e.contains("c0") ? parse_decimal(e["c0"].get<std::string>()) : BigReal(0);
        const BigReal c1 = e.contains("c1") ? parse_decimal(e["c1"].get<std::string>()) : BigReal(0);
        p.set_term(e["i"].get<int>(), e["j"].get<int>(), c0, c1);
    }
    return p;
}

} // namespace

json system_to_json(const PWSSystem& sys) {
    return json{{"name", sys.name},
                {"lambda0", to_decimal_string(sys.lambda0)},
                {"domain", {{"mu_minus", to_decimal_string(sys.mu_minus)},
                            {"mu_plus", to_decimal_string(sys.mu_plus)}}},
                {"zplus", {{"X", poly_to_json(sys.zplus.X)}, {"Y", poly_to_json(sys.zplus.Y)}}},
                {"zminus", {{"X", poly_to_json(sys.zminus.X)}, {"Y", poly_to_json(sys.zminus.Y)}}}};
}

PWSSystem system_from_json(const json& j) {
    try {
        PWSSystem sys;
        sys.name = j.value("name", "");
        sys.lambda0 = parse_decimal(j.at("lambda0").get<std::string>());
        sys.mu_minus = parse_decimal(j.at("domain").at("mu_minus").get<std::string>());
        sys.mu_plus = parse_decimal(j.at("domain").at("mu_plus").get<std::string>());
        if (!(sys.mu_minus < 0 && sys.mu_plus > 0))
            throw ConfigError("domain must satisfy mu_minus < 0 < mu_plus");
        sys.zplus.X = poly_from_json(j.at("zplus").at("X"));
        sys.zplus.Y = poly_from_json(j.at("zplus").at("Y"));
        sys.zminus.X = poly_from_json(j.at("zminus").at("X"));
        sys.zminus.Y = poly_from_json(j.at("zminus").at("Y"));
        return sys;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid system file: ") + e.what());
    }
}

PWSSystem load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open system file " + path.string());
    json j;
    in >> j;
    return system_from_json(j);
}

json regfun_to_json(const RegularizationFunction& f) {
    switch (f.kind()) {
    case RegKind::ReferenceArctan:
        return json{{"kind", "reference-arctan"}};
    case RegKind::PolynomialJet:
    case RegKind::Blended: {
        const PsiJet* jet = f.jet();
        json coeffs = json::array();
        for (const auto& c : jet->coeffs)
            coeffs.push_back(to_decimal_string(c));
        json j{{"kind", f.kind_name()},
               {"jet", {{"k", jet->k}, {"center", to_decimal_string(jet->center)}, {"coeffs", coeffs}}}};
        if (f.kind() == RegKind::Blended) {
            j["upsilon"] = to_decimal_string(*f.upsilon());
            j["base"] = regfun_to_json(*f.base());
        }
        return j;
    }
    }
    throw Error("unreachable");
}

RegularizationFunction regfun_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "reference-arctan")
            return RegularizationFunction::reference_arctan();
        PsiJet jet;
        jet.k = j.at("jet").at("k").get<int>();
        jet.center = parse_decimal(j.at("jet").at("center").get<std::string>());
        for (const auto& c : j.at("jet").at("coeffs"))
            jet.coeffs.push_back(parse_decimal(c.get<std::string>()));
        if (kind == "polynomial-jet")
            return RegularizationFunction::polynomial_jet(std::move(jet));
        if (kind == "blended")
            return RegularizationFunction::blended(regfun_from_json(j.at("base")), std::move(jet),
                                                   parse_decimal(j.at("upsilon").get<std::string>()));
        throw ConfigError("unknown regularization kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid regularization file: ") + e.what());
    }
}

RegularizationFunction load_regfun(const std::string& path_or_name) {
    if (path_or_name == "arctan" || path_or_name.empty())
        return RegularizationFunction::reference_arctan();
    std::ifstream in(path_or_name);
    if (!in)
        throw ConfigError("cannot open regularization file " + path_or_name);
    json j;
    in >> j;
    return regfun_from_json(j);
}

json synthesis_result_to_json(const SynthesisSpec& spec, const SynthesisResult& res) {
    auto arr = [](const std::vector<BigReal>& v) {
        json a = json::array();
        for (const auto& x : v)
            a.push_back(to_decimal_string(x));
        return a;
    };
    json roots = json::array();
    for (const auto& r : res.roots)
        roots.push_back(json{{"location", to_decimal_string(r.location)},
                             {"derivative", to_decimal_string(r.derivative)},
                             {"simple", r.simple}});
    return json{
        {"spec",
         {{"system", spec.sys.name},
          {"k", spec.k},
          {"delta", to_decimal_string(spec.delta)},
          {"upsilon", to_decimal_string(spec.upsilon)},
          {"order", spec.order},
          {"precision", precision()},
          {"ledger_mode", spec.mode == LedgerMode::Exact ? "exact" : "frozen-base"}}},
        {"y2c", to_decimal_string(res.construction.y2c)},
        {"phi_prime_y2c", to_decimal_string(res.construction.phip)},
        {"psi", {{"k", res.construction.psi.k},
                 {"center", to_decimal_string(res.construction.psi.center)},
                 {"coeffs", arr(res.construction.psi.coeffs)}}},
        {"C", arr(res.construction.C)},
        {"J", arr(res.construction.J)},
        {"Psi0", arr(res.construction.Psi0)},
        {"Phi1", arr(res.construction.Phi1)},
        {"roots", roots},
        {"audits",
         {{"monotonicity", {{"pass", res.monotonicity.pass}, {"detail", res.monotonicity.detail}}},
          {"root_count", {{"expected", res.expected_roots}, {"ok", res.root_count_ok}}}}},
        {"ok", res.ok},
        {"diagnostics", res.diagnostics}};
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out << content;
        if (!out.good())
            throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i)
            line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace canard::io
