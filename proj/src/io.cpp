#include "qdeco/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace qdeco {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const char* const kResultsHeader =
    "sweep_value,time,re_s_tr,im_s_tr,re_s_pm,im_s_pm,re_s_mp,im_s_mp,re_s_z,im_s_z,"
    "trace,p_up,p_down,abs_s_pm,abs_s_mp,entropy,entropy_raw";

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw SimError("cannot write file: " + path);
    return out;
}

}  // namespace

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out = open_out(path);
    out << kResultsHeader << '\n';
    for (const auto& r : rows) {
        out << (r.sweep_value ? csv_escape(fmt_double(*r.sweep_value)) : "") << ','
            << fmt_double(r.time) << ','  //
            << fmt_double(r.state.s_tr.real()) << ',' << fmt_double(r.state.s_tr.imag()) << ','
            << fmt_double(r.state.s_pm.real()) << ',' << fmt_double(r.state.s_pm.imag()) << ','
            << fmt_double(r.state.s_mp.real()) << ',' << fmt_double(r.state.s_mp.imag()) << ','
            << fmt_double(r.state.s_z.real()) << ',' << fmt_double(r.state.s_z.imag()) << ','
            << fmt_double(r.obs.trace.real()) << ',' << fmt_double(r.obs.p_up) << ','
            << fmt_double(r.obs.p_dn) << ',' << fmt_double(r.obs.abs_pm) << ','
            << fmt_double(r.obs.abs_mp) << ',' << fmt_double(r.obs.entropy) << ','
            << fmt_double(r.obs.entropy_raw) << '\n';
    }
}

void write_kernel_csv(const std::string& path, const KernelTable& table) {
    std::ofstream out = open_out(path);
    out << "n,t,re_k_r,im_k_r,re_k_a,im_k_a,re_k_k,im_k_k\n";
    for (std::size_t n = 0; n < table.size(); ++n) {
        out << n << ',' << fmt_double(static_cast<double>(n) * table.dt) << ','
            << fmt_double(table.k_r[n].real()) << ',' << fmt_double(table.k_r[n].imag()) << ','
            << fmt_double(table.k_a[n].real()) << ',' << fmt_double(table.k_a[n].imag()) << ','
            << fmt_double(table.k_k[n].real()) << ',' << fmt_double(table.k_k[n].imag()) << '\n';
    }
}

void write_manifest(const std::string& path, const RunConfig& cfg) {
    std::ofstream out = open_out(path);
    out << to_json(cfg).dump(2) << '\n';
}

void write_plot_script(const std::string& path, const RunConfig& cfg) {
    std::ofstream out = open_out(path);
    out << "# gnuplot script for results.csv (run from the output directory)\n"
           "set datafile separator ','\n"
           "set xlabel 'time'\n";
    if (cfg.sweep) {
        out << "set ylabel '" << cfg.sweep->parameter << "'\n"
            << "set term pngcairo size 900,700\n"
            << "set output 'trace.png'\n"
            << "set zlabel 'trace'\n"
            << "splot 'results.csv' every ::1 using 2:1:11 with points pt 7 ps 0.3 notitle\n"
            << "set output 'entropy.png'\n"
            << "set zlabel 'entropy'\n"
            << "splot 'results.csv' every ::1 using 2:1:16 with points pt 7 ps 0.3 notitle\n";
    } else {
        out << "set term pngcairo size 900,700\n"
            << "set output 'trace.png'\n"
            << "plot 'results.csv' every ::1 using 2:11 with lines title 'trace'\n"
            << "set output 'entropy.png'\n"
            << "plot 'results.csv' every ::1 using 2:16 with lines title 'entropy', \\\n"
            << "     'results.csv' every ::1 using 2:17 with lines title 'entropy (raw)'\n";
    }
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace qdeco
