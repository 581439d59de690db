#include "warpdist/report_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "warpdist/engine.hpp"

namespace warpdist {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

nlohmann::ordered_json point_json(const SpacePoint& p) {
    return nlohmann::ordered_json::array({p.x, p.fiber});
}

}  // namespace

std::string report_to_json(const ConvergenceReport& report) {
    nlohmann::ordered_json j;
    j["family"] = report.family;
    j["alpha"] = report.alpha;
    j["limit"] = report.limit;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        nlohmann::ordered_json rec;
        rec["n"] = r.n;
        rec["sup_diff"] = r.sup_diff;
        rec["witness"] =
            nlohmann::ordered_json::array({point_json(r.witness.first), point_json(r.witness.second)});
        rec["c_est"] = r.c_est;
        rec["C_est"] = r.big_c_est;
        rec["offset"] = r.offset;
        rec["budget"] = r.budget;
        rec["pass"] = r.pass;
        j["records"].push_back(rec);
    }
    if (report.fitted_exponent.has_value())
        j["fitted_exponent"] = *report.fitted_exponent;
    else
        j["fitted_exponent"] = nullptr;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const ConvergenceReport& report) {
    std::string out =
        "family,alpha,n,sup_diff,witness_px,witness_pfiber,witness_qx,witness_qfiber,"
        "c_est,C_est,offset,budget,pass,fitted_exponent\n";
    const std::string exponent =
        report.fitted_exponent ? format_number(*report.fitted_exponent) : "insufficient";
    for (const auto& r : report.records) {
        out += report.family + "," + format_number(report.alpha) + "," + std::to_string(r.n) +
               "," + format_number(r.sup_diff) + "," + format_number(r.witness.first.x) + "," +
               format_number(r.witness.first.fiber) + "," + format_number(r.witness.second.x) +
               "," + format_number(r.witness.second.fiber) + "," + format_number(r.c_est) + "," +
               format_number(r.big_c_est) + "," + format_number(r.offset) + "," +
               format_number(r.budget) + "," + (r.pass ? "true" : "false") + "," + exponent +
               "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw resource_error("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw resource_error("write to '" + path + "' failed");
}

}  // namespace warpdist
