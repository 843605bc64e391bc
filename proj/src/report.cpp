#include "oscrh/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace oscrh {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char ch : s) out += (std::isalnum((unsigned char)ch) ? ch : '_');
    return out;
}

}  // namespace

void write_csv(const RunReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    out << "t,u_re,u_im,v_re,v_im,uasym_re,uasym_im,vasym_re,vasym_im,uref_re,uref_im,"
           "abs_err,jump_residual,det_dev_bulk,det_dev_full,cond_estimate,iterations,active_nodes\n";
    for (const auto& r : report.records) {
        out << num(r.t) << ',' << num(r.u_num.real()) << ',' << num(r.u_num.imag()) << ','
            << num(r.v_num.real()) << ',' << num(r.v_num.imag()) << ',' << num(r.u_asym.real())
            << ',' << num(r.u_asym.imag()) << ',' << num(r.v_asym.real()) << ','
            << num(r.v_asym.imag()) << ',' << num(r.u_reference.real()) << ','
            << num(r.u_reference.imag()) << ',' << num(r.abs_error) << ','
            << num(r.jump_residual) << ',' << num(r.det_deviation_bulk) << ','
            << num(r.det_deviation_full) << ',' << num(r.condition_estimate) << ','
            << r.iterations << ',' << r.active_nodes << '\n';
    }
}

void write_json(const RunReport& report, const std::string& path) {
    nlohmann::json doc;
    doc["command"] = report.command;
    doc["environment"] = {{"version", report.version},
                          {"grid_nodes", report.grid_nodes},
                          {"grid_L", report.grid_L},
                          {"gamma_radius", report.gamma_radius},
                          {"solver_tolerance", report.tol_solver}};
    auto& recs = doc["records"] = nlohmann::json::array();
    for (const auto& r : report.records) {
        recs.push_back({{"t", r.t},
                        {"u", {r.u_num.real(), r.u_num.imag()}},
                        {"v", {r.v_num.real(), r.v_num.imag()}},
                        {"u_asym", {r.u_asym.real(), r.u_asym.imag()}},
                        {"v_asym", {r.v_asym.real(), r.v_asym.imag()}},
                        {"u_reference", {r.u_reference.real(), r.u_reference.imag()}},
                        {"abs_error", r.abs_error},
                        {"jump_residual", r.jump_residual},
                        {"det_deviation_bulk", r.det_deviation_bulk},
                        {"det_deviation_full", r.det_deviation_full},
                        {"condition_estimate", r.condition_estimate},
                        {"iterations", r.iterations},
                        {"active_nodes", r.active_nodes}});
    }
    auto& checks = doc["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"pass", c.pass}});
    auto& dec = doc["decay"] = nlohmann::json::array();
    for (const auto& d : report.decay) {
        dec.push_back({{"name", d.name},
                       {"t", d.tgrid},
                       {"values", d.values},
                       {"fitted_slope", d.fitted_slope},
                       {"predicted_slope", d.predicted_slope},
                       {"tolerance", d.tolerance},
                       {"log_corrected", d.log_corrected},
                       {"pass", d.pass},
                       {"degenerate", d.degenerate}});
    }
    std::ofstream out(path, std::ios::binary);
    out << doc.dump(2) << '\n';
}

void write_decay_csvs(const RunReport& report, const std::string& dir) {
    for (const auto& d : report.decay) {
        std::ofstream out(std::filesystem::path(dir) / ("decay_" + sanitize(d.name) + ".csv"),
                          std::ios::binary);
        out << "t,value,prediction\n";
        for (size_t i = 0; i < d.tgrid.size(); ++i) {
            const double pred = i < d.predictions.size() ? d.predictions[i] : 0.0;
            out << num(d.tgrid[i]) << ',' << num(d.values[i]) << ',' << num(pred) << '\n';
        }
    }
}

}  // namespace oscrh
