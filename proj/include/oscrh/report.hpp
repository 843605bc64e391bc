#pragma once

#include <string>
#include <vector>

#include "oscrh/decay.hpp"
#include "oscrh/mat2.hpp"

namespace oscrh {

struct TimeRecord {
    double t = 0.0;
    Complex u_num{0.0}, v_num{0.0};
    Complex u_asym{0.0}, v_asym{0.0};
    Complex u_reference{0.0};  // direct-quadrature column for degenerate data
    bool has_asym = false;
    bool has_reference = false;
    double abs_error = 0.0;  // |u_num - u_asym|
    double jump_residual = 0.0;
    double det_deviation_bulk = 0.0;
    double det_deviation_full = 0.0;
    double condition_estimate = 0.0;
    int iterations = 0;
    int active_nodes = 0;
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool larger_is_fail = true;  // pass iff value <= threshold (or >= when false)
    bool pass = false;
};

struct RunReport {
    std::string command;
    std::vector<TimeRecord> records;
    std::vector<DecayExperiment> decay;
    std::vector<CheckResult> checks;
    // environment stamp
    std::string version = "oscrh 0.1.0";
    int grid_nodes = 0;
    double grid_L = 0.0;
    double gamma_radius = 0.0;
    double tol_solver = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        for (const auto& d : decay)
            if (!d.pass) return false;
        return true;
    }
};

void write_csv(const RunReport& report, const std::string& path);
void write_json(const RunReport& report, const std::string& path);
/// One CSV per decay experiment: t, value, prediction.
void write_decay_csvs(const RunReport& report, const std::string& dir);

}  // namespace oscrh
