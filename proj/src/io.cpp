#include "hansen/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hansen/error.hpp"

namespace hansen::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open input file", path);
    return in;
}

Vector vector_from(const Json& node, const char* name) {
    if (!node.is_array()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be an array");
    Vector v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must hold numbers");
        v[static_cast<Eigen::Index>(i)] = node[i].get<double>();
    }
    return v;
}

Matrix matrix_from(const Json& node, const char* name) {
    if (!node.is_array() || node.empty()) {
        throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(node.size());
    const Vector first = vector_from(node[0], name);
    Matrix m(rows, first.size());
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Vector row = vector_from(node[static_cast<std::size_t>(i)], name);
        if (row.size() != first.size()) throw Error(ErrorCode::ParseError, std::string("ragged matrix in '") + name + "'");
        m.row(i) = row;
    }
    return m;
}

std::vector<double> std_vector(const Vector& v) {
    return {v.data(), v.data() + v.size()};
}

const Json& field(const Json& doc, const char* name) {
    if (!doc.contains(name)) throw Error(ErrorCode::ParseError, std::string("market JSON is missing '") + name + "'");
    return doc.at(name);
}

ScenarioPayoff make_payoff(std::vector<State> states, bool renormalize) {
    return renormalize ? ScenarioPayoff::renormalized(std::move(states)) : ScenarioPayoff(std::move(states));
}

}  // namespace

ScenarioPayoff parse_scenario_csv(std::istream& in, bool renormalize) {
    std::vector<State> states;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw Error(ErrorCode::ParseError, "expected two columns 'probability,value'",
                        "line " + std::to_string(line_no));
        }
        double p = 0.0, v = 0.0;
        const bool ok = parse_double(row.substr(0, comma), p) && parse_double(row.substr(comma + 1), v);
        if (!ok) {
            if (states.empty() && line_no == 1) continue;  // header
            throw Error(ErrorCode::ParseError, "cannot parse number", "line " + std::to_string(line_no));
        }
        states.push_back({p, v});
    }
    if (states.empty()) throw Error(ErrorCode::ParseError, "scenario file has no states");
    return make_payoff(std::move(states), renormalize);
}

ScenarioPayoff read_scenario_csv(const std::string& path, bool renormalize) {
    auto in = open(path);
    return parse_scenario_csv(in, renormalize);
}

GramMarket parse_market_json(const Json& doc, bool renormalize) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        throw Error(ErrorCode::ParseError, "market JSON needs a string field 'kind'");
    }
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "universe") {
        return gram_from_universe({vector_from(field(doc, "mu"), "mu"), matrix_from(field(doc, "sigma"), "sigma")});
    }
    if (kind == "gram") {
        return GramMarket(matrix_from(field(doc, "G"), "G"), vector_from(field(doc, "m"), "m"),
                          vector_from(field(doc, "p"), "p"));
    }
    if (kind == "scenarios") {
        const std::vector<double> probs = std_vector(vector_from(field(doc, "probabilities"), "probabilities"));
        const Json& payoffs = field(doc, "payoffs");
        if (!payoffs.is_array()) throw Error(ErrorCode::ParseError, "field 'payoffs' must be an array");
        std::vector<ScenarioPayoff> basis;
        for (const auto& row : payoffs) {
            const std::vector<double> values = std_vector(vector_from(row, "payoffs"));
            if (values.size() != probs.size()) {
                throw Error(ErrorCode::StateSpaceMismatch, "payoff row length differs from the number of states");
            }
            std::vector<State> states;
            for (std::size_t s = 0; s < values.size(); ++s) states.push_back({probs[s], values[s]});
            basis.push_back(make_payoff(std::move(states), renormalize));
        }
        return gram_from_scenarios(std::move(basis), vector_from(field(doc, "p"), "p"));
    }
    if (kind == "sequence") {
        SequenceSpaceSpec spec;
        spec.discount = field(doc, "beta").get<double>();
        spec.horizon = doc.value("horizon", 64);
        for (const auto& row : field(doc, "probabilities")) spec.date_probabilities.push_back(std_vector(vector_from(row, "probabilities")));
        for (const auto& element : field(doc, "cash_flows")) {
            std::vector<std::vector<double>> flows;
            for (const auto& date : element) flows.push_back(std_vector(vector_from(date, "cash_flows")));
            spec.cash_flows.push_back(std::move(flows));
        }
        return gram_from_sequence_space(spec, vector_from(field(doc, "p"), "p"));
    }
    throw Error(ErrorCode::ParseError, "unknown market kind", kind);
}

GramMarket read_market_json(const std::string& path, bool renormalize) {
    auto in = open(path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what(), path);
    }
    try {
        return parse_market_json(doc, renormalize);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed market JSON: ") + e.what(), path);
    }
}

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Json to_json(const SpecialPortfolios& sp) {
    Json j;
    j["w_Y"] = to_json(sp.w_Y);
    j["w_X"] = to_json(sp.w_X);
    j["w_Z"] = to_json(sp.w_Z);
    j["mu_Y"] = sp.mu_Y;
    j["omega_sq_Y"] = sp.omega_sq_Y;
    j["hr_sq_Y"] = sp.hr_sq_Y;
    j["hr_sq_X"] = sp.hr_sq_X;
    j["mu_Z"] = sp.mu_Z;
    j["sigma_sq_Z"] = sp.sigma_sq_Z;
    j["lambda_hat"] = sp.lambda_hat;
    j["max_hr_attained"] = sp.max_hr_attained;
    j["max_hr_lambda"] = sp.max_hr_lambda ? Json(*sp.max_hr_lambda) : Json(nullptr);
    j["degenerate"] = sp.degenerate;
    return j;
}

Json to_json(const FrontierCoefficients& fc) {
    Json j;
    j["mu_omega"] = {{"omega_sq_Y", fc.omega_sq_Y}, {"inv_hr_sq_X", fc.inv_hr_sq_X}, {"mu_Y", fc.mu_Y}};
    j["mu_sigma"] = {{"sigma_sq_Z", fc.sigma_sq_Z}, {"inv_sr_sq_X", fc.inv_sr_sq_X}, {"mu_Z", fc.mu_Z}};
    j["degenerate"] = fc.degenerate;
    return j;
}

Json to_json(const HansenBoundReport& hb) {
    return {{"sum", hb.sum}, {"slack", hb.slack}, {"pass", hb.pass}};
}

Json to_json(const MultiperiodStats& mp) {
    return {{"periods", mp.periods},
            {"mu_Y", mp.mu_Y},
            {"omega_sq_Y", mp.omega_sq_Y},
            {"hr_sq_Y", mp.hr_sq_Y},
            {"hr_sq_X", mp.hr_sq_X}};
}

Json to_json(const MonotoneResult& mr) {
    Json j;
    j["mhr"] = mr.mhr;
    j["msr"] = mr.msr ? Json(*mr.msr) : Json(nullptr);
    j["k_hat"] = mr.k_hat;
    j["alpha_hat"] = mr.alpha_hat;
    j["truncated"] = mr.truncated;
    return j;
}

Json to_json(const KernelDiagnostics& kd) {
    Json j;
    j["hr_sq_m"] = kd.hr_sq_m;
    j["var_over_mean_sq"] = kd.var_over_mean_sq ? Json(*kd.var_over_mean_sq) : Json(nullptr);
    j["hr_bound"] = kd.hr_bound;
    j["variance_bound"] = kd.variance_bound;
    j["pass"] = kd.pass;
    return j;
}

Json to_json(const HJBoundReport& hj) {
    Json j;
    j["hr_bound"] = hj.hr_bound;
    j["variance_bound"] = hj.variance_bound;
    Json kernels = Json::array();
    for (const auto& k : hj.kernels) kernels.push_back(to_json(k));
    j["kernels"] = std::move(kernels);
    return j;
}

Json to_json(const MonotoneHJReport& mh) {
    Json j;
    j["sup_mhr_sq_lower_bound"] = mh.sup_mhr_sq;
    j["sup_msr_sq_lower_bound"] = mh.sup_msr_sq ? Json(*mh.sup_msr_sq) : Json(nullptr);
    j["best_weights"] = to_json(mh.best_weights);
    j["hr_sq_m"] = mh.hr_sq_m;
    j["hr_bound"] = mh.hr_bound;
    j["var_over_mean_sq"] = mh.var_over_mean_sq;
    j["hr_pass"] = mh.hr_pass;
    j["variance_pass"] = mh.variance_pass;
    j["pass"] = mh.pass;
    j["directions_evaluated"] = mh.directions_evaluated;
    return j;
}

Json to_json(const SequenceMetadata& sm) {
    return {{"beta", sm.discount},
            {"horizon", sm.horizon},
            {"unit_norm", sm.unit_norm},
            {"unit_scale", 1.0 / sm.unit_norm},
            {"truncation_error", sm.truncation_error}};
}

std::string dump(const Json& doc) {
    return doc.dump(2);
}

std::string format_double(double x) {
    // nlohmann serializes doubles with the shortest round-trip form.
    return Json(x).dump();
}

void write_points_csv(std::ostream& out, const std::vector<FrontierPoint>& points) {
    out << "mu,omega,sigma\n";
    for (const auto& p : points) {
        out << format_double(p.mu) << ',' << format_double(p.omega) << ',' << format_double(p.sigma) << '\n';
    }
}

}  // namespace hansen::io
