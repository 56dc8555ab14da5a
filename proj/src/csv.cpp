#include "stewart/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stewart {

namespace {

const char* kAxis[6] = {"x", "y", "z", "phi", "theta", "psi"};

std::vector<std::string> make_columns() {
    std::vector<std::string> cols;
    cols.emplace_back("t");
    for (const char* a : kAxis) cols.push_back(std::string("q_true_") + a);
    for (const char* a : kAxis) cols.push_back(std::string("qd_true_") + a);
    for (const char* a : kAxis) cols.push_back(std::string("q_des_") + a);
    for (const char* a : kAxis) cols.push_back(std::string("xhat_") + a);
    for (const char* a : kAxis) cols.push_back(std::string("xhat_v") + a);
    for (int i = 1; i <= 6; ++i) cols.push_back("z_s" + std::to_string(i));
    cols.insert(cols.end(), {"z_phi", "z_theta", "z_psi", "z_wx", "z_wy", "z_wz"});
    for (const char* a : kAxis) cols.push_back(std::string("u_") + a);
    for (int i = 1; i <= 6; ++i) cols.push_back("F_" + std::to_string(i));
    cols.insert(cols.end(), {"e_l", "e_t", "e_cs"});
    return cols;
}

std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> flatten(const SimRecord& r) {
    std::vector<double> v;
    v.reserve(58);
    v.push_back(r.t);
    for (int i = 0; i < 6; ++i) v.push_back(r.xi_true(i));
    for (int i = 6; i < 12; ++i) v.push_back(r.xi_true(i));
    for (int i = 0; i < 6; ++i) v.push_back(r.xi_des(i));
    for (int i = 0; i < 12; ++i) v.push_back(r.xhat(i));
    for (int i = 0; i < 12; ++i) v.push_back(r.z(i));
    for (int i = 0; i < 6; ++i) v.push_back(r.u(i));
    for (int i = 0; i < 6; ++i) v.push_back(r.F(i));
    v.push_back(r.e_l);
    v.push_back(r.e_t);
    v.push_back(r.e_cs);
    return v;
}

}  // namespace

const std::vector<std::string> kCsvColumns = make_columns();

void write_csv(const std::vector<SimRecord>& records, std::ostream& out) {
    for (size_t i = 0; i < kCsvColumns.size(); ++i) {
        out << (i ? "," : "") << kCsvColumns[i];
    }
    out << "\n";
    for (const SimRecord& r : records) {
        const std::vector<double> row = flatten(r);
        for (size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format(row[i]);
        }
        out << "\n";
    }
}

void write_csv(const std::vector<SimRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(records, out);
}

std::vector<SimRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");

    std::vector<SimRecord> records;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;

        std::vector<double> vals;
        vals.reserve(58);
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 58) {
            throw std::runtime_error(path + ":" + std::to_string(line_no)
                                     + ": expected 58 columns");
        }

        SimRecord r;
        size_t k = 0;
        r.t = vals[k++];
        for (int i = 0; i < 12; ++i) r.xi_true(i) = vals[k++];
        for (int i = 0; i < 6; ++i) r.xi_des(i) = vals[k++];
        for (int i = 0; i < 12; ++i) r.xhat(i) = vals[k++];
        for (int i = 0; i < 12; ++i) r.z(i) = vals[k++];
        for (int i = 0; i < 6; ++i) r.u(i) = vals[k++];
        for (int i = 0; i < 6; ++i) r.F(i) = vals[k++];
        r.e_l = vals[k++];
        r.e_t = vals[k++];
        r.e_cs = vals[k++];
        records.push_back(r);
    }
    return records;
}

}  // namespace stewart
