#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uavdc/harness.hpp"

namespace uavdc {

namespace fs = std::filesystem;

std::vector<RunFront> fronts_of(std::span<const RunRecord> records, std::string_view algorithm) {
    std::vector<RunFront> out;
    for (const auto& r : records) {
        if (r.algorithm != algorithm) continue;
        RunFront f{r.algorithm, r.run, r.seed, {}};
        if (!r.failed) f.front = r.archive.objectives();
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::vector<ObjectiveVector> read_archive(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::vector<ObjectiveVector> front;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (j.contains("error")) return {};
        front.push_back({-j.at("f1_bps").get<double>(), j.at("f2_J").get<double>(), j.at("f3_J").get<double>()});
    }
    return front;
}

Stat stat_of(const std::vector<double>& v) {
    Stat s;
    if (v.empty()) return s;
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

double score(double a, double b, bool higher_better) {
    if (a == b) return 0.5;
    return (higher_better ? a > b : a < b) ? 1.0 : 0.0;
}

}  // namespace

std::vector<RunFront> load_fronts(const fs::path& dir, std::string_view algorithm) {
    const fs::path summary = dir / "summary.csv";
    std::ifstream in(summary);
    if (!in) throw std::runtime_error("cannot read " + summary.string());
    std::string line;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = split_csv(line);
            continue;
        }
        rows.push_back(split_csv(line));
    }
    auto col = [&](const char* name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error(summary.string() + ": missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_alg = col("algorithm"), c_run = col("run"), c_seed = col("seed"), c_status = col("status");
    std::set<std::string> present;
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw std::runtime_error(summary.string() + ": malformed row");
        present.insert(r[c_alg]);
    }
    std::string want(algorithm);
    if (want.empty()) {
        if (present.size() != 1)
            throw std::runtime_error(summary.string() + " holds " + std::to_string(present.size()) +
                                     " algorithms; name the one to compare");
        want = *present.begin();
    } else if (!present.count(want)) {
        throw std::runtime_error(summary.string() + " has no algorithm '" + want + "'");
    }
    std::vector<RunFront> out;
    for (const auto& r : rows) {
        if (r[c_alg] != want) continue;
        RunFront f;
        f.algorithm = want;
        f.run = std::stoull(r[c_run]);
        f.seed = std::stoull(r[c_seed]);
        if (r[c_status] == "ok")
            f.front = read_archive(dir / "archive" / (want + "_run" + std::to_string(f.run) + ".jsonl"));
        out.push_back(std::move(f));
    }
    return out;
}

ComparisonReport compare(std::span<const RunFront> a, std::span<const RunFront> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("compare: both sides need at least one run");
    std::map<std::size_t, const RunFront*> ma, mb;
    for (const auto& f : a)
        if (!ma.emplace(f.run, &f).second) throw std::invalid_argument("compare: duplicate run " + std::to_string(f.run));
    for (const auto& f : b)
        if (!mb.emplace(f.run, &f).second) throw std::invalid_argument("compare: duplicate run " + std::to_string(f.run));
    for (const auto& [run, f] : ma)
        if (!mb.count(run)) throw std::invalid_argument("compare: run " + std::to_string(run) + " is unpaired");
    for (const auto& [run, f] : mb)
        if (!ma.count(run)) throw std::invalid_argument("compare: run " + std::to_string(run) + " is unpaired");

    std::vector<std::vector<ObjectiveVector>> all;
    for (const auto* side : {&ma, &mb})
        for (const auto& [run, f] : *side) {
            if (f->front.empty())
                throw std::invalid_argument("compare: " + f->algorithm + " run " + std::to_string(run) +
                                            " has no archive (failed run)");
            all.push_back(f->front);
        }

    ComparisonReport rep;
    rep.name_a = a.front().algorithm;
    rep.name_b = b.front().algorithm;
    rep.ref = reference_point(all);

    std::vector<double> hv_a, hv_b, r_a, r_b, d_a, d_b, u_a, u_b;
    double hv_wins = 0.0, two = 0.0;
    std::array<double, 3> obj_wins{};
    for (const auto& [run, fa] : ma) {
        const RunFront* fb = mb.at(run);
        const BestObjectives ba = best_per_objective(fa->front), bb = best_per_objective(fb->front);
        PairedRow row;
        row.run = run;
        row.hv_a = hypervolume(fa->front, rep.ref);
        row.hv_b = hypervolume(fb->front, rep.ref);
        row.d_hv = row.hv_a - row.hv_b;
        row.d_rate = ba.max_min_rate_bps - bb.max_min_rate_bps;
        row.d_dev_e = ba.min_device_energy_j - bb.min_device_energy_j;
        row.d_uav_e = ba.min_uav_energy_j - bb.min_uav_energy_j;
        const std::array<double, 3> s{score(ba.max_min_rate_bps, bb.max_min_rate_bps, true),
                                      score(ba.min_device_energy_j, bb.min_device_energy_j, false),
                                      score(ba.min_uav_energy_j, bb.min_uav_energy_j, false)};
        row.objective_score_a = s[0] + s[1] + s[2];
        int strict = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            obj_wins[j] += s[j];
            strict += s[j] == 1.0;
        }
        if (strict >= 2) two += 1.0;
        hv_wins += score(row.hv_a, row.hv_b, true);
        hv_a.push_back(row.hv_a);
        hv_b.push_back(row.hv_b);
        r_a.push_back(ba.max_min_rate_bps);
        r_b.push_back(bb.max_min_rate_bps);
        d_a.push_back(ba.min_device_energy_j);
        d_b.push_back(bb.min_device_energy_j);
        u_a.push_back(ba.min_uav_energy_j);
        u_b.push_back(bb.min_uav_energy_j);
        rep.rows.push_back(row);
    }
    const double n = static_cast<double>(rep.rows.size());
    rep.hv_a = stat_of(hv_a);
    rep.hv_b = stat_of(hv_b);
    rep.rate_a = stat_of(r_a);
    rep.rate_b = stat_of(r_b);
    rep.dev_e_a = stat_of(d_a);
    rep.dev_e_b = stat_of(d_b);
    rep.uav_e_a = stat_of(u_a);
    rep.uav_e_b = stat_of(u_b);
    rep.hv_win_fraction_a = hv_wins / n;
    for (std::size_t j = 0; j < 3; ++j) rep.objective_win_fraction_a[j] = obj_wins[j] / n;
    rep.two_of_three_fraction_a = two / n;
    rep.a_better_mean = {rep.hv_a.mean > rep.hv_b.mean, rep.rate_a.mean > rep.rate_b.mean,
                         rep.dev_e_a.mean < rep.dev_e_b.mean, rep.uav_e_a.mean < rep.uav_e_b.mean};
    return rep;
}

std::string format_report(const ComparisonReport& rep) {
    std::ostringstream os;
    auto line = [&](const char* label, const Stat& sa, const Stat& sb, bool a_better, bool tie) {
        os << label << ": " << rep.name_a << " " << format_number(sa.mean) << " +- " << format_number(sa.stddev) << " | "
           << rep.name_b << " " << format_number(sb.mean) << " +- " << format_number(sb.stddev) << "  better mean: "
           << (tie ? "tie" : (a_better ? rep.name_a : rep.name_b)) << "\n";
    };
    os << rep.name_a << " vs " << rep.name_b << ", " << rep.rows.size() << " paired runs\n";
    os << "reference point (-f1_bps,f2_J,f3_J): " << format_number(rep.ref.point[0]) << " "
       << format_number(rep.ref.point[1]) << " " << format_number(rep.ref.point[2]) << "\n";
    line("hypervolume", rep.hv_a, rep.hv_b, rep.a_better_mean[0], rep.hv_a.mean == rep.hv_b.mean);
    line("best f1 (bps)", rep.rate_a, rep.rate_b, rep.a_better_mean[1], rep.rate_a.mean == rep.rate_b.mean);
    line("best f2 (J)", rep.dev_e_a, rep.dev_e_b, rep.a_better_mean[2], rep.dev_e_a.mean == rep.dev_e_b.mean);
    line("best f3 (J)", rep.uav_e_a, rep.uav_e_b, rep.a_better_mean[3], rep.uav_e_a.mean == rep.uav_e_b.mean);
    os << rep.name_a << " hypervolume win fraction: " << format_number(rep.hv_win_fraction_a) << "\n";
    os << rep.name_a << " per-objective win fractions (f1,f2,f3): " << format_number(rep.objective_win_fraction_a[0])
       << " " << format_number(rep.objective_win_fraction_a[1]) << " " << format_number(rep.objective_win_fraction_a[2])
       << "\n";
    os << rep.name_a << " wins >= 2 of 3 objectives in " << format_number(rep.two_of_three_fraction_a)
       << " of paired runs\n";
    return os.str();
}

void write_report_csv(const ComparisonReport& rep, const fs::path& path) {
    std::ostringstream os;
    os << "# a=" << rep.name_a << " b=" << rep.name_b << "; deltas are a - b; ties count half in win fractions\n";
    os << "run,hv_a,hv_b,d_hv,d_best_f1_bps,d_best_f2_J,d_best_f3_J,objective_score_a\n";
    for (const auto& r : rep.rows)
        os << r.run << "," << format_number(r.hv_a) << "," << format_number(r.hv_b) << "," << format_number(r.d_hv) << ","
           << format_number(r.d_rate) << "," << format_number(r.d_dev_e) << "," << format_number(r.d_uav_e) << ","
           << format_number(r.objective_score_a) << "\n";
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << os.str();
}

}  // namespace uavdc
