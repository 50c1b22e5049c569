#include "thinsets/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace thinsets {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            fail(Errc::config_error, "unknown key '" + it.key() + "' in " + where);
}

FunctionSpec parse_function(const json& j, const std::string& where) {
    if (!j.is_object()) fail(Errc::config_error, where + " must be an object");
    check_keys(j, {"family", "c", "a"}, where);
    if (!j.contains("family")) fail(Errc::config_error, where + ": missing 'family'");
    auto fam = family_from_name(j.at("family").get<std::string>());
    if (!fam) fail(Errc::config_error, where + ": unknown family '" +
                                           j.at("family").get<std::string>() + "'");
    double c = j.value("c", 1.0);
    double a = j.value("a", 0.0);
    if (*fam == Family::pow_explog && !j.contains("a"))
        fail(Errc::config_error, where + ": pow_explog requires 'a'");
    if (*fam != Family::pow_explog && !j.contains("c"))
        fail(Errc::config_error, where + ": missing 'c'");
    return make_function(*fam, c, a);
}

}  // namespace

ThinSetSpec parse_set_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Errc::config_error, std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::config_error, "config must be a JSON object");
    check_keys(j, {"h1", "h2", "psi", "sign"}, "config");
    if (!j.contains("h1")) fail(Errc::config_error, "config: missing 'h1'");

    FunctionSpec h1 = parse_function(j.at("h1"), "h1");
    FunctionSpec h2 = j.contains("h2") ? parse_function(j.at("h2"), "h2") : h1;

    double kappa = 1.0;
    PsiMode mode = PsiMode::derivative;
    if (j.contains("psi")) {
        const json& p = j.at("psi");
        if (!p.is_object()) fail(Errc::config_error, "psi must be an object");
        check_keys(p, {"kappa", "mode"}, "psi");
        kappa = p.value("kappa", 1.0);
        std::string m = p.value("mode", "derivative");
        if (m == "derivative")
            mode = PsiMode::derivative;
        else if (m == "increment")
            mode = PsiMode::increment;
        else
            fail(Errc::config_error, "psi.mode must be 'derivative' or 'increment'");
    }

    Sign sign = Sign::plus;
    if (j.contains("sign")) {
        std::string s = j.at("sign").get<std::string>();
        if (s == "plus")
            sign = Sign::plus;
        else if (s == "minus")
            sign = Sign::minus;
        else
            fail(Errc::config_error, "sign must be 'plus' or 'minus'");
    }
    return make_thinset_spec(h1, h2, kappa, mode, sign);
}

ThinSetSpec load_set_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_set_config(ss.str());
}

}  // namespace thinsets
