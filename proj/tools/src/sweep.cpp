#include "cpfcli/sweep.hpp"

#include "cpfcli/csv.hpp"

#include <cpf/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cpf::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw ConfigError(field, "'" + text + "' is not a number");
    return v;
}

int parse_int(const std::string& field, const std::string& text) {
    const double v = parse_double(field, text);
    if (v != std::floor(v) || std::abs(v) > 2e9)
        throw ConfigError(field, "'" + text + "' is not an integer");
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_scale(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    if (t == "linear") return false;
    if (t == "log") return true;
    throw ConfigError(field, "scale must be 'linear' or 'log', got '" + text + "'");
}

// "A * B = c"
ProductConstraint parse_constraint(const std::string& text) {
    const auto star = text.find('*');
    const auto eq = text.find('=');
    if (star == std::string::npos || eq == std::string::npos || eq < star)
        throw ConfigError("constrain", "expected 'NAME * NAME = value', got '" + text + "'");
    ProductConstraint c;
    c.derived = trim(text.substr(0, star));
    c.source = trim(text.substr(star + 1, eq - star - 1));
    c.product = parse_double("constrain", text.substr(eq + 1));
    if (c.derived.empty() || c.source.empty() || c.derived == c.source)
        throw ConfigError("constrain", "needs two distinct parameter names");
    return c;
}

SweepAxis& second_axis(SweepSpec& spec) {
    if (!spec.sweep2) spec.sweep2.emplace();
    return *spec.sweep2;
}

void apply_key(SweepSpec& spec, const std::string& key, const std::string& value) {
    if (key == "application") {
        spec.application = parse_application(trim(value));
    } else if (key == "sweep") {
        spec.sweep.name = trim(value);
    } else if (key == "start") {
        spec.sweep.start = parse_double(key, value);
    } else if (key == "stop") {
        spec.sweep.stop = parse_double(key, value);
    } else if (key == "points") {
        spec.sweep.points = parse_int(key, value);
    } else if (key == "scale") {
        spec.sweep.log_scale = parse_scale(key, value);
    } else if (key == "sweep2") {
        second_axis(spec).name = trim(value);
    } else if (key == "start2") {
        second_axis(spec).start = parse_double(key, value);
    } else if (key == "stop2") {
        second_axis(spec).stop = parse_double(key, value);
    } else if (key == "points2") {
        second_axis(spec).points = parse_int(key, value);
    } else if (key == "scale2") {
        second_axis(spec).log_scale = parse_scale(key, value);
    } else if (key == "quantities") {
        spec.quantities = split_list(value);
    } else if (key == "out") {
        spec.output_path = trim(value);
    } else if (key == "constrain") {
        spec.constraint = parse_constraint(value);
    } else if (key == "note") {
        spec.notes.push_back(trim(value));
    } else if (find_param(spec.application, key)) {
        spec.fixed[key] = parse_double(key, value);
    } else {
        std::string params;
        for (const auto& d : application_params(spec.application)) {
            if (!params.empty()) params += ", ";
            params += d.name;
        }
        throw ConfigError(key, "not a control key and not a parameter of application '" +
                                   std::string(application_name(spec.application)) +
                                   "' (parameters: " + params + ")");
    }
}

} // namespace

std::vector<double> axis_values(const SweepAxis& a) {
    std::vector<double> v;
    if (a.points < 1) return v;
    v.reserve(static_cast<std::size_t>(a.points));
    if (a.points == 1) {
        v.push_back(a.start);
        return v;
    }
    if (a.log_scale) {
        const double l0 = std::log(a.start);
        const double l1 = std::log(a.stop);
        for (int i = 0; i < a.points; ++i)
            v.push_back(std::exp(l0 + (l1 - l0) * i / (a.points - 1.0)));
    } else {
        for (int i = 0; i < a.points; ++i)
            v.push_back(a.start + (a.stop - a.start) * i / (a.points - 1.0));
    }
    v.front() = a.start;
    v.back() = a.stop;
    return v;
}

SweepSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");

    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no),
                              "expected 'key = value', got '" + t + "'");
        entries.emplace_back(trim(t.substr(0, eq)), t.substr(eq + 1));
    }

    SweepSpec spec;
    spec.output_path.clear();
    // the application determines which other keys are parameters, so it
    // is resolved first regardless of where it appears in the file
    bool have_app = false;
    for (const auto& [k, v] : entries)
        if (k == "application") {
            spec.application = parse_application(trim(v));
            have_app = true;
        }
    if (!have_app) throw ConfigError("application", "missing (put 'application = ...' in the file)");
    for (const auto& [k, v] : entries) apply_key(spec, k, v);
    if (spec.output_path.empty()) spec.output_path = "sweep.csv";
    return spec;
}

void apply_override(SweepSpec& spec, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set", "expected key=value, got '" + assignment + "'");
    apply_key(spec, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

namespace {

void validate_axis(const SweepSpec& spec, const SweepAxis& a, const std::string& field) {
    if (a.name.empty()) throw ConfigError(field, "missing sweep variable name");
    const ParamDesc* d = find_param(spec.application, a.name);
    if (!d)
        throw ConfigError(field, "'" + a.name + "' is not a parameter of application '" +
                                     std::string(application_name(spec.application)) + "'");
    if (d->integral)
        throw ConfigError(field, "'" + a.name + "' is integral and cannot be swept");
    if (a.points < 1)
        throw ConfigError(field == "sweep" ? "points" : "points2",
                          "empty sweep range (points must be >= 1)");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop))
        throw ConfigError(field, "axis endpoints must be finite");
    if (a.log_scale && (a.start <= 0.0 || a.stop <= 0.0))
        throw ConfigError(field, "log axis needs positive endpoints");
    if (spec.fixed.count(a.name))
        throw ConfigError(field, "'" + a.name + "' is both fixed and swept");
}

std::set<std::string> swept_names(const SweepSpec& spec) {
    std::set<std::string> s{spec.sweep.name};
    if (spec.sweep2) s.insert(spec.sweep2->name);
    if (spec.constraint) s.insert(spec.constraint->derived);
    return s;
}

std::string point_context(const SweepSpec& spec, const ParamSet& ps) {
    std::string s = "at " + spec.sweep.name + "=" + format_double(ps.values.at(spec.sweep.name));
    if (spec.sweep2)
        s += ", " + spec.sweep2->name + "=" + format_double(ps.values.at(spec.sweep2->name));
    return s;
}

std::string axis_description(const SweepAxis& a) {
    return a.name + " from " + format_double(a.start) + " to " + format_double(a.stop) + ", " +
           std::to_string(a.points) + " points, " + (a.log_scale ? "log" : "linear");
}

} // namespace

void validate_spec(const SweepSpec& spec) {
    for (const auto& [k, v] : spec.fixed) {
        (void)v;
        if (!find_param(spec.application, k))
            throw ConfigError(k, "not a parameter of application '" +
                                     std::string(application_name(spec.application)) + "'");
    }
    validate_axis(spec, spec.sweep, "sweep");
    if (spec.sweep2) {
        validate_axis(spec, *spec.sweep2, "sweep2");
        if (spec.sweep2->name == spec.sweep.name)
            throw ConfigError("sweep2", "second axis repeats '" + spec.sweep.name + "'");
    }
    if (spec.constraint) {
        const auto& c = *spec.constraint;
        const ParamDesc* d = find_param(spec.application, c.derived);
        if (!d)
            throw ConfigError("constrain", "'" + c.derived + "' is not a parameter of application '" +
                                               std::string(application_name(spec.application)) + "'");
        if (d->integral) throw ConfigError("constrain", "'" + c.derived + "' is integral");
        if (spec.fixed.count(c.derived))
            throw ConfigError("constrain", "'" + c.derived + "' is already fixed");
        if (c.derived == spec.sweep.name || (spec.sweep2 && c.derived == spec.sweep2->name))
            throw ConfigError("constrain", "'" + c.derived + "' is already swept");
        const bool source_known = spec.fixed.count(c.source) || c.source == spec.sweep.name ||
                                  (spec.sweep2 && c.source == spec.sweep2->name);
        if (!source_known)
            throw ConfigError("constrain", "'" + c.source + "' is neither fixed nor swept");
    }
    if (spec.quantities.empty())
        throw ConfigError("quantities", "at least one quantity is required");
    if (spec.output_path.empty()) throw ConfigError("out", "output path is empty");

    const auto swept = swept_names(spec);
    const auto base = with_defaults(spec.application, spec.fixed);
    require_params_present(spec.application, base, swept);
    for (const auto& name : spec.quantities) {
        const QuantityDesc& q = find_quantity(spec.application, name);
        if (q.check)
            if (auto msg = q.check(base, swept))
                throw ConfigError("quantities", "'" + name + "': " + *msg);
    }
}

SweepSummary run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    const auto axis1 = axis_values(spec.sweep);
    const auto axis2 = spec.sweep2 ? axis_values(*spec.sweep2) : std::vector<double>{};
    const std::size_t n2 = spec.sweep2 ? axis2.size() : 1;
    const std::size_t n_points = axis1.size() * n2;

    std::vector<const QuantityDesc*> quants;
    quants.reserve(spec.quantities.size());
    for (const auto& name : spec.quantities)
        quants.push_back(&find_quantity(spec.application, name));

    const auto base = with_defaults(spec.application, spec.fixed);

    std::vector<std::vector<QuantityValue>> results(n_points);
    const std::size_t n_chunks = std::clamp<std::size_t>(n_points / 8, 1, 256);
    parallel_chunks(n_points, n_chunks, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t idx = b; idx < e; ++idx) {
            ParamSet ps;
            ps.app = spec.application;
            ps.values = base;
            ps.values[spec.sweep.name] = axis1[idx / n2];
            if (spec.sweep2) ps.values[spec.sweep2->name] = axis2[idx % n2];
            if (spec.constraint)
                ps.values[spec.constraint->derived] =
                    spec.constraint->product / ps.values.at(spec.constraint->source);
            auto& row = results[idx];
            row.reserve(quants.size());
            try {
                for (const auto* q : quants) row.push_back(q->eval(ps));
            } catch (const std::exception& ex) {
                throw std::runtime_error(point_context(spec, ps) + ": " + ex.what());
            }
        }
    });

    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + spec.output_path + "'");

    if (!spec.preset_name.empty()) out << "# preset: " << spec.preset_name << "\n";
    out << "# application: " << application_name(spec.application) << "\n";
    out << "# fixed:";
    for (const auto& [k, v] : base)
        if (!swept_names(spec).count(k)) out << ' ' << k << '=' << format_double(v);
    out << "\n";
    out << "# sweep: " << axis_description(spec.sweep) << "\n";
    if (spec.sweep2) out << "# sweep2: " << axis_description(*spec.sweep2) << "\n";
    if (spec.constraint)
        out << "# constraint: " << spec.constraint->derived << " * " << spec.constraint->source
            << " = " << format_double(spec.constraint->product) << "\n";
    for (const auto& n : spec.notes) out << "# " << n << "\n";

    out << spec.sweep.name;
    if (spec.sweep2) out << ',' << spec.sweep2->name;
    for (const auto* q : quants) {
        out << ',' << q->name;
        if (q->is_probability) out << ",log10_" << q->name;
    }
    out << "\n";

    for (std::size_t idx = 0; idx < n_points; ++idx) {
        out << format_double(axis1[idx / n2]);
        if (spec.sweep2) out << ',' << format_double(axis2[idx % n2]);
        for (std::size_t j = 0; j < quants.size(); ++j) {
            const auto& q = results[idx][j];
            if (quants[j]->is_probability)
                out << ',' << linear_cell(q) << ',' << log10_cell(q);
            else
                out << ',' << format_double(q.value);
        }
        out << "\n";
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + spec.output_path + "'");

    SweepSummary summary;
    summary.output_path = spec.output_path;
    summary.rows = n_points;
    for (std::size_t j = 0; j < quants.size(); ++j) {
        std::size_t clamped = 0;
        double max_se = 0.0;
        const QuantityValue* mc = nullptr;
        for (const auto& row : results) {
            if (row[j].clamped) ++clamped;
            if (row[j].monte_carlo) {
                mc = &row[j];
                max_se = std::max(max_se, row[j].std_error);
            }
        }
        if (clamped)
            summary.clamp_reports.push_back(quants[j]->name + " clamped at " +
                                            std::to_string(clamped) + " of " +
                                            std::to_string(n_points) + " points");
        if (mc)
            summary.mc_reports.push_back(quants[j]->name + " max std error " +
                                         format_double(max_se) + " (trials=" +
                                         std::to_string(mc->trials) + ", seed=" +
                                         std::to_string(mc->seed) + ", rng=" + mc->rng_algorithm +
                                         ")");
    }
    return summary;
}

std::string SweepSummary::one_line() const {
    std::string s = "wrote " + output_path + ": " + std::to_string(rows) + " rows";
    if (clamp_reports.empty()) {
        s += "; no clamped bounds";
    } else {
        for (const auto& r : clamp_reports) s += "; " + r;
    }
    if (mc_reports.empty()) {
        s += "; no Monte Carlo columns";
    } else {
        for (const auto& r : mc_reports) s += "; " + r;
    }
    return s;
}

} // namespace cpf::cli
