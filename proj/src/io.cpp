#include "pwla/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pwla/errors.hpp"

namespace pwla::io {

namespace {

using nlohmann::json;

const std::set<std::string> kRawKeys = {"AL", "AR", "bL", "bR"};
const std::set<std::string> kCanonicalKeys = {"TL", "DL", "aL", "TR", "DR", "aR", "b"};

double number(const json& v, const std::string& key)
{
    if (!v.is_number()) {
        throw ParseError("'" + key + "' must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ParseError("'" + key + "' must be finite");
    }
    return x;
}

template <std::size_t N>
std::array<double, N> tuple(const json& obj, const std::string& key)
{
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != N) {
        throw ParseError("'" + key + "' must be an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = number(v[i], key);
    return out;
}

}  // namespace

ParameterInput parse_parameters(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("parameter file must contain a JSON object");
    }
    bool any_raw = false;
    bool any_canonical = false;
    for (const auto& [key, _] : doc.items()) {
        if (kRawKeys.count(key)) {
            any_raw = true;
        } else if (kCanonicalKeys.count(key)) {
            any_canonical = true;
        } else {
            throw ParseError("unknown key '" + key + "'");
        }
    }
    if (any_raw && any_canonical) {
        throw ParseError("raw (AL, AR, bL, bR) and canonical (TL, DL, aL, TR, DR, aR, b) keys are mutually exclusive");
    }
    const auto& required = any_canonical ? kCanonicalKeys : kRawKeys;
    for (const auto& key : required) {
        if (!doc.contains(key)) throw ParseError("missing key '" + key + "'");
    }
    if (any_canonical) {
        const CanonicalSystem canon(number(doc["aL"], "aL"), number(doc["TL"], "TL"), number(doc["DL"], "DL"),
                                    number(doc["aR"], "aR"), number(doc["TR"], "TR"), number(doc["DR"], "DR"),
                                    number(doc["b"], "b"));
        return {canon.to_params(), canon};
    }
    return {SystemParams(tuple<4>(doc, "AL"), tuple<2>(doc, "bL"), tuple<4>(doc, "AR"), tuple<2>(doc, "bR")),
            std::nullopt};
}

ParameterInput load_parameters(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open parameter file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_parameters(buf.str());
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

json to_json(const DerivedQuantities& d)
{
    json j = {{"TL", d.TL}, {"TR", d.TR}, {"DL", d.DL}, {"DR", d.DR}, {"aL", d.aL}, {"aR", d.aR},
              {"xi0", d.xi0}, {"xi_inf", d.xiInf}, {"beta", d.beta}};
    j["b"] = d.b ? json(*d.b) : json(nullptr);
    return j;
}

json to_json(const SystemParams& p)
{
    return {{"AL", p.AL()}, {"AR", p.AR()}, {"bL", p.bL()}, {"bR", p.bR()}};
}

json to_json(const classifier::Classification& c)
{
    json records = json::array();
    for (const auto& r : c.records) {
        records.push_back({{"name", r.name}, {"value", r.value}, {"scale", r.scale}, {"passed", r.passed}});
    }
    json j;
    j["verdict"] = std::string(classifier::to_string(c.verdict));
    j["failing_clause"] = c.failing_clause ? json(*c.failing_clause) : json(nullptr);
    j["tolerance"] = c.tol;
    j["derived"] = to_json(c.derived);
    j["records"] = std::move(records);
    j["sliding"] = c.sliding ? json{{"lower", c.sliding->lower}, {"upper", c.sliding->upper}} : json(nullptr);
    return j;
}

std::string to_csv(const classifier::Classification& c)
{
    std::ostringstream out;
    out << "field,value,scale,passed\n";
    out << "verdict," << classifier::to_string(c.verdict) << ",,\n";
    out << "failing_clause," << c.failing_clause.value_or("") << ",,\n";
    for (const auto& r : c.records) {
        out << r.name << ',' << format_number(r.value) << ',' << format_number(r.scale) << ','
            << (r.passed ? "true" : "false") << '\n';
    }
    if (c.sliding) {
        out << "sliding_lower," << format_number(c.sliding->lower) << ",,\n";
        out << "sliding_upper," << format_number(c.sliding->upper) << ",,\n";
    }
    return out.str();
}

}  // namespace pwla::io
