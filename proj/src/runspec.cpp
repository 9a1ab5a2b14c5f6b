#include "knotfield/runspec.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "knotfield/errors.hpp"
#include "knotfield/presets.hpp"

namespace knotfield {

std::string format_double(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

double parse_number(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ValidationError(std::string(what) + ": trailing junk in '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ValidationError(std::string(what) + ": cannot parse '" + s + "'");
    }
}

Magnitude parse_magnitude(const std::string& s, const char* what) {
    if (s == "rmax") return {1.0, true};
    if (s.rfind("rmax/", 0) == 0)
        return {1.0 / parse_number(s.substr(5), what), true};
    if (s.rfind("rmax*", 0) == 0)
        return {parse_number(s.substr(5), what), true};
    return {parse_number(s, what), false};
}

Vec3 parse_vec3(const std::string& s, const char* what) {
    const auto p = split(s, ',');
    if (p.size() != 3) throw ValidationError(std::string(what) + ": need x,y,z, got '" + s + "'");
    return {parse_number(p[0], what), parse_number(p[1], what), parse_number(p[2], what)};
}

CompositeConfiguration resolve(const std::vector<std::string>& configs,
                               const std::vector<double>& amplitudes) {
    return resolve_configuration(configs, amplitudes);
}

// R_max(0) is only computed when the ensemble actually refers to it.
double resolve_rmax_hint(const EnsembleSpec& spec, const CompositeConfiguration& cfg,
                         bool serial) {
    if (!spec.radius.times_rmax && !spec.speed.times_rmax) return 0.0;
    SearchParams sp;
    sp.policy = serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    return find_rmax(cfg, spec.t0, sp).r_max;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + path + "'");
    out << body;
    if (!out) throw NumericalError("failed writing '" + path + "'");
}

}  // namespace

EnsembleSpec parse_ensemble(const std::string& text, std::uint64_t seed, double t0) {
    const auto p = split(text, ':');
    if (p.empty()) throw ValidationError("empty ensemble spec");
    EnsembleSpec spec;
    spec.seed = seed;
    spec.t0 = t0;
    const std::string& kind = p[0];
    auto need = [&](std::size_t n) {
        if (p.size() != n + 1)
            throw ValidationError("ensemble '" + kind + "' takes " + std::to_string(n) +
                                  " arguments, got " + std::to_string(p.size() - 1));
    };
    if (kind == "sphere18") {
        need(1);
        spec.kind = EnsembleKind::Sphere18;
        spec.radius = parse_magnitude(p[1], "sphere18 radius");
        spec.count = 18;
    } else if (kind == "ball") {
        need(2);
        spec.kind = EnsembleKind::RandomBall;
        spec.radius = parse_magnitude(p[1], "ball radius");
        spec.count = int(parse_number(p[2], "ball count"));
    } else if (kind == "circle") {
        need(3);
        spec.kind = EnsembleKind::Circle;
        spec.radius = parse_magnitude(p[1], "circle radius");
        spec.count = int(parse_number(p[2], "circle count"));
        spec.direction = parse_vec3(p[3], "circle normal");
    } else if (kind == "line") {
        need(3);
        spec.kind = EnsembleKind::Line;
        spec.radius = parse_magnitude(p[1], "line spacing");
        spec.count = int(parse_number(p[2], "line count"));
        spec.direction = parse_vec3(p[3], "line direction");
    } else if (kind == "radial-line") {
        need(3);
        spec.kind = EnsembleKind::RadialLine;
        spec.speed = parse_magnitude(p[1], "radial-line speed");
        spec.count = int(parse_number(p[2], "radial-line count"));
        spec.direction = parse_vec3(p[3], "radial-line direction");
    } else if (kind == "radial-plane") {
        need(3);
        spec.kind = EnsembleKind::RadialPlane;
        spec.speed = parse_magnitude(p[1], "radial-plane speed");
        spec.count = int(parse_number(p[2], "radial-plane count"));
        spec.direction = parse_vec3(p[3], "radial-plane normal");
    } else if (kind == "radial-space") {
        need(2);
        spec.kind = EnsembleKind::RadialSpace;
        spec.speed = parse_magnitude(p[1], "radial-space speed");
        spec.count = int(parse_number(p[2], "radial-space count"));
    } else {
        throw ValidationError("unknown ensemble kind '" + kind + "'");
    }
    spec.validate();
    return spec;
}

void execute_field_sample(const FieldSampleRun& run) {
    const auto cfg = resolve(run.configs, run.amplitudes);
    const auto policy = run.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    const auto samples = field_on_grid(cfg, run.t, run.grid, policy);

    std::string body = "t,x,y,z,Ex,Ey,Ez,Bx,By,Bz,u\n";
    const std::string t_str = format_double(run.t);
    for (const auto& s : samples) {
        body += t_str;
        for (double v : {s.pos.x, s.pos.y, s.pos.z, s.field.E.x, s.field.E.y, s.field.E.z,
                         s.field.B.x, s.field.B.y, s.field.B.z, s.density}) {
            body += ',';
            body += format_double(v);
        }
        body += '\n';
    }
    write_text_file(run.out_csv, body);
}

RmaxResult execute_rmax(const RmaxRun& run) {
    const auto cfg = resolve(run.configs, run.amplitudes);
    SearchParams sp = run.search;
    sp.policy = run.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    const auto r = find_rmax(cfg, run.t, sp);
    nlohmann::json j{{"R_max", r.r_max},
                     {"E_max", r.e_max},
                     {"x_max", {r.x_max.x, r.x_max.y, r.x_max.z}}};
    if (!run.out_json.empty()) write_text_file(run.out_json, j.dump(2) + "\n");
    return r;
}

nlohmann::json trajectories_to_json(const TrajectoriesRun& run) {
    return nlohmann::json{{"command", "trajectories"},
                          {"configs", run.configs},
                          {"amplitudes", run.amplitudes},
                          {"kappa", run.kappa},
                          {"ensemble", run.ensemble},
                          {"seed", run.seed},
                          {"tspan", {run.t0, run.t1}},
                          {"rel_tol", run.rel_tol},
                          {"abs_tol", run.abs_tol},
                          {"max_step", run.max_step},
                          {"out_csv", run.out_csv},
                          {"out_manifest", run.out_manifest},
                          {"serial", run.serial}};
}

TrajectoriesRun trajectories_from_json(const nlohmann::json& j) {
    TrajectoriesRun run;
    if (j.value("command", "") != "trajectories")
        throw ValidationError("manifest command is not 'trajectories'");
    run.configs = j.at("configs").get<std::vector<std::string>>();
    run.amplitudes = j.value("amplitudes", std::vector<double>{});
    run.kappa = j.at("kappa").get<double>();
    run.kappa_set = true;
    run.ensemble = j.at("ensemble").get<std::string>();
    run.seed = j.value("seed", std::uint64_t(0));
    run.t0 = j.at("tspan").at(0).get<double>();
    run.t1 = j.at("tspan").at(1).get<double>();
    run.rel_tol = j.value("rel_tol", 1e-9);
    run.abs_tol = j.value("abs_tol", 1e-12);
    run.max_step = j.value("max_step", 0.05);
    run.out_csv = j.value("out_csv", "trajectories.csv");
    run.out_manifest = j.value("out_manifest", "trajectories_manifest.json");
    run.serial = j.value("serial", false);
    return run;
}

void execute_trajectories(const TrajectoriesRun& run) {
    if (!run.kappa_set) throw ValidationError("kappa is required");
    const auto cfg = resolve(run.configs, run.amplitudes);
    const auto policy = run.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;

    // initial conditions anchored at T=0 per the experiment conventions
    const auto spec = parse_ensemble(run.ensemble, run.seed, 0.0);
    const double rmax_hint = resolve_rmax_hint(spec, cfg, run.serial);
    const auto initial = generate_ensemble(spec, rmax_hint);

    SimulationParams params;
    params.kappa = run.kappa;
    params.t_start = run.t0;
    params.t_end = run.t1;
    params.rel_tol = run.rel_tol;
    params.abs_tol = run.abs_tol;
    params.max_step = run.max_step;

    const auto records = integrate_ensemble(initial, make_provider(cfg), params, policy);

    std::string body = "pid,T,X,Y,Z,VX,VY,VZ,gamma\n";
    for (std::size_t pid = 0; pid < records.size(); ++pid) {
        for (const auto& s : records[pid].samples) {
            const double gamma = std::sqrt(1.0 + norm2(s.U));
            const Vec3 v = s.U / gamma;
            body += std::to_string(pid);
            for (double c : {s.T, s.X.x, s.X.y, s.X.z, v.x, v.y, v.z, gamma}) {
                body += ',';
                body += format_double(c);
            }
            body += '\n';
        }
    }
    write_text_file(run.out_csv, body);

    nlohmann::json manifest = trajectories_to_json(run);
    manifest["rmax_hint"] = rmax_hint;
    nlohmann::json summaries = nlohmann::json::array();
    for (std::size_t pid = 0; pid < records.size(); ++pid) {
        const auto& r = records[pid];
        summaries.push_back({{"pid", pid},
                             {"max_speed", r.max_speed},
                             {"final_direction",
                              {r.final_direction.x, r.final_direction.y, r.final_direction.z}},
                             {"work_integral", r.work_integral},
                             {"gamma_end", r.gamma_end}});
    }
    manifest["summaries"] = summaries;
    write_text_file(run.out_manifest, manifest.dump(2) + "\n");
}

void execute_field_lines(const FieldLinesRun& run) {
    const auto cfg = resolve(run.configs, run.amplitudes);
    const auto policy = run.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    std::vector<Vec3> seeds = run.seeds;
    if (seeds.empty())
        seeds = {{0.5, 0.0, 0.0}, {-0.5, 0.0, 0.0}, {0.0, 0.5, 0.0}, {0.0, -0.5, 0.0}};

    std::vector<std::pair<LineKind, const char*>> kinds;
    if (run.kinds == "E" || run.kinds == "both") kinds.push_back({LineKind::Electric, "electric"});
    if (run.kinds == "B" || run.kinds == "both") kinds.push_back({LineKind::Magnetic, "magnetic"});
    if (kinds.empty()) throw ValidationError("field-lines kind must be E, B, or both");

    std::string body;
    for (const auto& [kind, name] : kinds) {
        const auto lines = trace_lines(cfg, run.t, seeds, kind, run.trace, policy);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            nlohmann::json rec{{"kind", name},
                               {"seed", {seeds[i].x, seeds[i].y, seeds[i].z}},
                               {"closed", lines[i].closed},
                               {"arc_length", lines[i].arc_length}};
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : lines[i].points) pts.push_back({p.x, p.y, p.z});
            rec["points"] = std::move(pts);
            body += rec.dump();
            body += '\n';
        }
    }
    write_text_file(run.out_jsonl, body);
}

}  // namespace knotfield
