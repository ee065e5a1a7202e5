#include <cstdio>
#include <fstream>
#include <sstream>
#include <map>
#include <system_error>
#include <type_traits>

#include "uavdc/harness.hpp"
#include "uavdc/scenario_model.hpp"
#include "uavdc/solution_space.hpp"

namespace uavdc {

namespace fs = std::filesystem;

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
}

void prepare_dirs(const fs::path& outdir) {
    std::error_code ec;
    for (const char* sub : {"", "archive", "trace", "plot"}) {
        fs::create_directories(outdir / sub, ec);
        if (ec) throw std::runtime_error("cannot create " + (outdir / sub).string() + ": " + ec.message());
    }
    const fs::path probe = outdir / ".write_probe";
    {
        std::ofstream out(probe, std::ios::binary);
        if (!out) throw std::runtime_error("output directory " + outdir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

template <class Seq>
std::string json_numbers(const Seq& values) {
    std::string s = "[";
    bool first = true;
    for (const auto& v : values) {
        if (!first) s += ",";
        first = false;
        if constexpr (std::is_integral_v<std::decay_t<decltype(v)>>)
            s += std::to_string(v);
        else
            s += format_number(v);
    }
    return s + "]";
}

std::string json_escape(const std::string& in) {
    std::string out;
    for (char c : in) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

std::string stem(const RunRecord& rec) { return rec.algorithm + "_run" + std::to_string(rec.run); }

std::string archive_dump(const RunRecord& rec) {
    std::ostringstream os;
    if (rec.failed) {
        os << "{\"run\":" << rec.run << ",\"error\":\"" << json_escape(rec.error) << "\"}\n";
        return os.str();
    }
    for (std::size_t i = 0; i < rec.archive.size(); ++i) {
        const auto& e = rec.archive.entries[i];
        const auto& x = e.solution;
        os << "{\"run\":" << rec.run << ",\"index\":" << i << ",\"f1_bps\":" << format_number(-e.objectives.neg_min_rate)
           << ",\"f2_J\":" << format_number(e.objectives.device_energy_j)
           << ",\"f3_J\":" << format_number(e.objectives.uav_energy_j) << ",\"hover_x_m\":" << json_numbers(x.hover_x)
           << ",\"hover_y_m\":" << json_numbers(x.hover_y) << ",\"visit_seq\":" << json_numbers(x.visit_seq)
           << ",\"speeds_mps\":" << json_numbers(x.speeds) << ",\"powers_W\":" << json_numbers(x.powers) << "}\n";
    }
    return os.str();
}

std::string trace_csv(const RunRecord& rec, const HypervolumeRef& ref) {
    std::ostringstream os;
    os << "# reference point (-f1_bps,f2_J,f3_J): " << format_number(ref.point[0]) << " " << format_number(ref.point[1])
       << " " << format_number(ref.point[2]) << "\n";
    os << "iteration,hypervolume,best_f1_bps,best_f2_J,best_f3_J,archive_size\n";
    for (std::size_t t = 0; t < rec.snapshots.size(); ++t) {
        const auto& snap = rec.snapshots[t];
        const BestObjectives b = best_per_objective(snap);
        os << (t + 1) << "," << format_number(hypervolume(snap, ref)) << "," << format_number(b.max_min_rate_bps) << ","
           << format_number(b.min_device_energy_j) << "," << format_number(b.min_uav_energy_j) << "," << snap.size()
           << "\n";
    }
    return os.str();
}

}  // namespace

void export_results(std::span<const RunRecord> records, const ExperimentConfig& cfg, const Scenario& scn,
                    const fs::path& outdir) {
    if (records.empty()) throw std::invalid_argument("export_results: no records");
    prepare_dirs(outdir);

    std::vector<std::vector<ObjectiveVector>> finals, all_snaps;
    for (const auto& r : records) {
        if (r.failed) continue;
        finals.push_back(r.archive.objectives());
        for (const auto& s : r.snapshots) all_snaps.push_back(s);
    }
    for (const auto& f : finals) all_snaps.push_back(f);
    bool have_points = false;
    for (const auto& f : finals) have_points = have_points || !f.empty();
    const HypervolumeRef ref = have_points ? reference_point(finals) : HypervolumeRef{};
    const HypervolumeRef trace_ref = have_points ? reference_point(all_snaps) : HypervolumeRef{};

    std::ostringstream summary;
    summary << "# best_*: per-objective best over the final archive (f1 maximized, f2 and f3 minimized)\n";
    summary << "# hypervolume: minimization space (-f1,f2,f3), reference point " << format_number(ref.point[0]) << " "
            << format_number(ref.point[1]) << " " << format_number(ref.point[2]) << "\n";
    summary << "# trajectory_length_m: knee-point solution of the final archive\n";
    summary << "# config_hash " << config_hash(cfg) << ", placement_seed " << cfg.scenario.placement_seed << "\n";
    summary << "algorithm,run,seed,best_f1_bps,best_f2_J,best_f3_J,mean_f1_bps,mean_f2_J,mean_f3_J,hypervolume,"
               "trajectory_length_m,archive_size,status\n";

    std::ostringstream timings;
    timings << "algorithm,run,init_s,forage_s,evaluate_s,select_s,archive_s,wall_s\n";

    std::map<std::string, std::ostringstream> fronts;

    for (const auto& rec : records) {
        const std::string name = stem(rec);
        write_atomic(outdir / "archive" / (name + ".jsonl"), archive_dump(rec));
        timings << rec.algorithm << "," << rec.run << "," << format_number(rec.timings.init_s) << ","
                << format_number(rec.timings.forage_s) << "," << format_number(rec.timings.evaluate_s) << ","
                << format_number(rec.timings.select_s) << "," << format_number(rec.timings.archive_s) << ","
                << format_number(rec.wall_s) << "\n";
        auto& front = fronts[rec.algorithm];
        if (front.tellp() == 0) front << "run,index,f1_bps,f2_J,f3_J\n";

        if (rec.failed || rec.archive.empty()) {
            summary << rec.algorithm << "," << rec.run << "," << rec.seed << ",,,,,,,,,0,"
                    << (rec.failed ? "failed" : "empty") << "\n";
            continue;
        }
        const auto objs = rec.archive.objectives();
        const BestObjectives best = best_per_objective(objs);
        const BestObjectives mean = mean_objectives(objs);
        const std::size_t knee = knee_point_index(objs);
        const SolutionVector& rep = rec.archive.entries[knee].solution;
        const auto segs = path_segments(rep, scn);

        summary << rec.algorithm << "," << rec.run << "," << rec.seed << "," << format_number(best.max_min_rate_bps) << ","
                << format_number(best.min_device_energy_j) << "," << format_number(best.min_uav_energy_j) << ","
                << format_number(mean.max_min_rate_bps) << "," << format_number(mean.min_device_energy_j) << ","
                << format_number(mean.min_uav_energy_j) << "," << format_number(hypervolume(objs, ref)) << ","
                << format_number(path_length(segs)) << "," << objs.size() << ",ok\n";

        for (std::size_t i = 0; i < objs.size(); ++i)
            front << rec.run << "," << i << "," << format_number(-objs[i].neg_min_rate) << ","
                  << format_number(objs[i].device_energy_j) << "," << format_number(objs[i].uav_energy_j) << "\n";

        write_atomic(outdir / "trace" / (name + ".csv"), trace_csv(rec, trace_ref));

        std::ostringstream traj;
        traj << "vertex,kind,x_m,y_m,hover_index\n";
        const auto poly = trajectory_polyline(rep, scn);
        for (std::size_t v = 0; v < poly.size(); ++v) {
            const bool is_start = v == 0, is_end = v + 1 == poly.size();
            traj << v << "," << (is_start ? "start" : (is_end ? "end" : "hover")) << "," << format_number(poly[v].x) << ","
                 << format_number(poly[v].y) << ",";
            if (!is_start && !is_end) traj << rep.visit_seq[v - 1];
            traj << "\n";
        }
        write_atomic(outdir / "plot" / ("trajectory_" + name + ".csv"), traj.str());

        std::ostringstream seg;
        seg << "segment,from_vertex,to_vertex,length_m,speed_mps,propulsion_power_W\n";
        for (std::size_t s = 0; s < segs.size(); ++s)
            seg << s << "," << s << "," << (s + 1) << "," << format_number(segs[s].length_m) << ","
                << format_number(segs[s].speed_mps) << "," << format_number(propulsion_power(segs[s].speed_mps, scn.uav_power))
                << "\n";
        write_atomic(outdir / "plot" / ("segments_" + name + ".csv"), seg.str());

        const EvaluationDetail det = evaluate_detailed(scn, rep);
        std::ostringstream dev;
        dev << "device,x_m,y_m,data_bits,cell,power_W,rate_bps,upload_time_s,energy_J\n";
        for (std::size_t k = 0; k < scn.devices.size(); ++k) {
            const auto& d = scn.devices[k];
            dev << k << "," << format_number(d.pos.x) << "," << format_number(d.pos.y) << "," << format_number(d.data_bits)
                << "," << scn.partition.cell_of_device[k] << "," << format_number(rep.powers[k]);
            if (det.feasible)
                dev << "," << format_number(det.rate_bps[k]) << "," << format_number(det.upload_time_s[k]) << ","
                    << format_number(det.device_energy_j[k]);
            else
                dev << ",,,";
            dev << "\n";
        }
        write_atomic(outdir / "plot" / ("devices_" + name + ".csv"), dev.str());
    }

    for (auto& [alg, text] : fronts) write_atomic(outdir / "plot" / ("front_" + alg + ".csv"), text.str());
    write_atomic(outdir / "summary.csv", summary.str());
    write_atomic(outdir / "timings.csv", timings.str());
    write_atomic(outdir / "config.json", resolved_config_json(cfg) + "\n");
}

}  // namespace uavdc
