#pragma once

// Machine-readable search results (schema version 1). Serialization uses
// shortest-roundtrip doubles and alphabetically ordered keys, so a record
// survives a parse/serialize cycle byte for byte.

#include <json.hpp>
#include <array>
#include <string>
#include <vector>

#include "quadrille/charts.hpp"
#include "quadrille/inscribe.hpp"

namespace quadrille {

struct InscriptionRecord {
    std::array<double, 4> params{};        // s1..s4
    std::array<double, 2> center_chart{};  // circle center in the curve's chart
    double radius = 0.0;
    std::array<double, 3> triple{};        // theta, phi1, phi2
    double residual = 0.0;
};

struct ResultRecord {
    int version = 1;
    std::string tool;                // name/version provenance
    std::vector<std::string> args;   // CLI arguments as given
    std::string surface;
    std::string chart;
    std::vector<InscriptionRecord> inscriptions;
    SearchStats stats;
};

inline InscriptionRecord make_inscription_record(const Inscription& ins, Chart chart) {
    InscriptionRecord rec;
    rec.params = {ins.s1, ins.s2, ins.s3, ins.s4};
    Vec3 c = model_to_chart(chart, ins.circle.center);
    rec.center_chart = {c.x, c.y};
    rec.radius = ins.circle.radius();
    rec.triple = {ins.triple.theta, ins.triple.phi1, ins.triple.phi2};
    rec.residual = ins.residual;
    return rec;
}

inline std::string to_json(const ResultRecord& rec) {
    nlohmann::json j;
    j["version"] = rec.version;
    j["tool"] = rec.tool;
    j["args"] = rec.args;
    j["surface"] = rec.surface;
    j["chart"] = rec.chart;
    auto list = nlohmann::json::array();
    for (const InscriptionRecord& r : rec.inscriptions) {
        nlohmann::json e;
        e["params"] = r.params;
        e["center_chart"] = r.center_chart;
        e["radius"] = r.radius;
        e["triple"] = r.triple;
        e["residual"] = r.residual;
        list.push_back(e);
    }
    j["inscriptions"] = list;
    j["stats"] = {{"seeds", rec.stats.seeds},
                  {"converged", rec.stats.converged},
                  {"validated", rec.stats.validated},
                  {"duplicates", rec.stats.duplicates}};
    return j.dump(2);
}

inline ResultRecord result_record_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("result record: malformed JSON: ") + e.what());
    }
    ResultRecord rec;
    try {
        rec.version = j.at("version").get<int>();
        if (rec.version != 1)
            throw std::invalid_argument("result record: unsupported schema version");
        rec.tool = j.at("tool").get<std::string>();
        rec.args = j.at("args").get<std::vector<std::string>>();
        rec.surface = j.at("surface").get<std::string>();
        rec.chart = j.at("chart").get<std::string>();
        for (const auto& e : j.at("inscriptions")) {
            InscriptionRecord r;
            r.params = e.at("params").get<std::array<double, 4>>();
            r.center_chart = e.at("center_chart").get<std::array<double, 2>>();
            r.radius = e.at("radius").get<double>();
            r.triple = e.at("triple").get<std::array<double, 3>>();
            r.residual = e.at("residual").get<double>();
            rec.inscriptions.push_back(r);
        }
        const auto& s = j.at("stats");
        rec.stats.seeds = s.at("seeds").get<int>();
        rec.stats.converged = s.at("converged").get<int>();
        rec.stats.validated = s.at("validated").get<int>();
        rec.stats.duplicates = s.at("duplicates").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("result record: bad field: ") + e.what());
    }
    return rec;
}

}  // namespace quadrille
