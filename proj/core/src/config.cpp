#include "fcl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fcl {

namespace {

struct Value {
    enum class Type { Number, Bool, String, NumberArray, StringArray, EmptyArray };
    Type type = Type::Number;
    double num = 0.0;
    bool is_int = false;
    bool b = false;
    std::string s;
    std::vector<double> nums;
    std::vector<std::string> strs;
    int line = 0;
};

std::string type_name(const Value& v) {
    switch (v.type) {
    case Value::Type::Number:
        return v.is_int ? "integer" : "number";
    case Value::Type::Bool:
        return "boolean";
    case Value::Type::String:
        return "string";
    case Value::Type::NumberArray:
        return "number array";
    case Value::Type::StringArray:
        return "string array";
    case Value::Type::EmptyArray:
        return "empty array";
    }
    return "?";
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Removes a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
    bool in = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in = !in;
        if (s[i] == '#' && !in) return s.substr(0, i);
    }
    return s;
}

// Splits on commas outside strings, brackets and braces.
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    bool in = false;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"' && (i == 0 || s[i - 1] != '\\')) in = !in;
        if (!in) {
            if (c == '[' || c == '{') ++depth;
            if (c == ']' || c == '}') --depth;
            if (c == ',' && depth == 0) {
                out.push_back(trim(cur));
                cur.clear();
                continue;
            }
        }
        cur += c;
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

bool parse_string(const std::string& s, std::string& out) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') return false;
    out.clear();
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        char c = s[i];
        if (c == '"') return false;
        if (c == '\\') {
            if (i + 2 >= s.size()) return false;
            char e = s[++i];
            if (e == 'n') out += '\n';
            else if (e == 't') out += '\t';
            else if (e == '"' || e == '\\') out += e;
            else return false;
        } else {
            out += c;
        }
    }
    return true;
}

bool parse_number(std::string s, double& out, bool& is_int) {
    if (s.empty()) return false;
    if (s[0] == '+') s = s.substr(1);
    if (s.empty()) return false;
    is_int = s.find_first_of(".eE") == std::string::npos;
    if (s.find_first_not_of("0123456789+-.eE") != std::string::npos) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool parse_scalar(const std::string& s, Value& v) {
    if (s == "true" || s == "false") {
        v.type = Value::Type::Bool;
        v.b = s == "true";
        return true;
    }
    if (!s.empty() && s[0] == '"') {
        v.type = Value::Type::String;
        return parse_string(s, v.s);
    }
    v.type = Value::Type::Number;
    return parse_number(s, v.num, v.is_int);
}

std::string escape(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        if (c == '\n') {
            o += "\\n";
            continue;
        }
        if (c == '\t') {
            o += "\\t";
            continue;
        }
        o += c;
    }
    return o + "\"";
}

class Parser {
public:
    std::map<std::string, Value> values;
    std::set<std::string> sections;
    std::vector<std::string> errors;

    void parse(const std::string& text) {
        std::istringstream in(text);
        std::string raw, section;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = trim(strip_comment(raw));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']' || s.size() < 3) {
                    err(line, "malformed section header '" + s + "'", "use [name] or [a.b]");
                    continue;
                }
                std::string name = trim(s.substr(1, s.size() - 2));
                if (!valid_path(name)) {
                    err(line, "invalid section name '" + name + "'", "letters, digits, _ and - only");
                    continue;
                }
                if (!sections.insert(name).second)
                    err(line, "duplicate section [" + name + "]", "merge the two blocks");
                section = name;
                continue;
            }
            auto eq = s.find('=');
            if (eq == std::string::npos) {
                err(line, "expected key = value, got '" + s + "'", "");
                continue;
            }
            std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
            if (!valid_path(key)) {
                err(line, "invalid key '" + key + "'", "letters, digits, _ and - only");
                continue;
            }
            assign(section.empty() ? key : section + "." + key, val, line);
        }
    }

private:
    void err(int line, const std::string& what, const std::string& hint) {
        std::string m = "line " + std::to_string(line) + ": " + what;
        if (!hint.empty()) m += " (hint: " + hint + ")";
        errors.push_back(m);
    }

    static bool valid_path(const std::string& p) {
        std::istringstream ss(p);
        std::string part;
        bool any = false;
        while (std::getline(ss, part, '.')) {
            if (!valid_key(trim(part))) return false;
            any = true;
        }
        return any && p.back() != '.';
    }

    void assign(const std::string& path, const std::string& val, int line) {
        if (val.empty()) {
            err(line, path + ": missing value", "write key = value");
            return;
        }
        if (val.front() == '{') {
            if (val.back() != '}') {
                err(line, path + ": unterminated inline table", "inline tables must fit on one line");
                return;
            }
            std::string body = trim(val.substr(1, val.size() - 2));
            if (body.empty()) return;
            for (const std::string& item : split_top(body)) {
                auto eq = item.find('=');
                if (eq == std::string::npos) {
                    err(line, path + ": inline table entry '" + item + "' lacks '='", "");
                    continue;
                }
                std::string k = trim(item.substr(0, eq));
                if (!valid_path(k)) {
                    err(line, path + ": invalid key '" + k + "'", "");
                    continue;
                }
                assign(path + "." + k, trim(item.substr(eq + 1)), line);
            }
            return;
        }
        Value v;
        v.line = line;
        if (val.front() == '[') {
            if (val.back() != ']') {
                err(line, path + ": unterminated array", "arrays must fit on one line");
                return;
            }
            std::string body = trim(val.substr(1, val.size() - 2));
            v.type = Value::Type::EmptyArray;
            if (!body.empty()) {
                bool strings = false, numbers = false;
                for (const std::string& item : split_top(body)) {
                    Value e;
                    if (item.empty() || !parse_scalar(item, e) || e.type == Value::Type::Bool) {
                        err(line, path + ": bad array element '" + item + "'",
                            "arrays hold numbers or strings");
                        return;
                    }
                    if (e.type == Value::Type::String) {
                        strings = true;
                        v.strs.push_back(e.s);
                    } else {
                        numbers = true;
                        v.nums.push_back(e.num);
                    }
                }
                if (strings && numbers) {
                    err(line, path + ": mixed array", "use one element type");
                    return;
                }
                v.type = strings ? Value::Type::StringArray : Value::Type::NumberArray;
            }
        } else if (!parse_scalar(val, v)) {
            err(line, path + ": cannot parse value '" + val + "'",
                "strings need double quotes; numbers like 1, 0.5, 1e-3");
            return;
        }
        auto [it, fresh] = values.emplace(path, v);
        if (!fresh)
            err(line, "duplicate key '" + path + "' (first set on line " +
                          std::to_string(it->second.line) + ")",
                "keep a single assignment");
    }
};

class Extractor {
public:
    Extractor(Parser& p, std::vector<std::string>& errors) : p_(p), errors_(errors) {}

    const Value* take(const std::string& path, bool required = false) {
        auto it = p_.values.find(path);
        if (it == p_.values.end()) {
            if (required) errors_.push_back(path + ": required key missing (hint: add it)");
            return nullptr;
        }
        used_.insert(path);
        return &it->second;
    }

    void mismatch(const std::string& path, const Value& v, const std::string& want) {
        errors_.push_back(path + " (line " + std::to_string(v.line) + "): expected " + want +
                          ", got " + type_name(v));
    }

    void range(const std::string& path, const std::string& what) {
        errors_.push_back(path + ": out of range, " + what);
    }

    void str(const std::string& path, std::string& out, const std::vector<std::string>& allowed,
             bool required = false) {
        const Value* v = take(path, required);
        if (!v) return;
        if (v->type != Value::Type::String) return mismatch(path, *v, "string");
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v->s) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : " | ") + a;
            errors_.push_back(path + " (line " + std::to_string(v->line) + "): '" + v->s +
                              "' is not one of " + list);
            return;
        }
        out = v->s;
    }

    void num(const std::string& path, double& out, bool required = false) {
        const Value* v = take(path, required);
        if (!v) return;
        if (v->type != Value::Type::Number) return mismatch(path, *v, "number");
        if (!std::isfinite(v->num)) return range(path, "value must be finite");
        out = v->num;
    }

    void opt_num(const std::string& path, std::optional<double>& out) {
        double d = 0.0;
        const Value* v = take(path);
        if (!v) return;
        if (v->type != Value::Type::Number) return mismatch(path, *v, "number");
        if (!std::isfinite(v->num)) return range(path, "value must be finite");
        d = v->num;
        out = d;
    }

    template <class Int>
    void integer(const std::string& path, Int& out, bool required = false) {
        const Value* v = take(path, required);
        if (!v) return;
        if (v->type != Value::Type::Number || !v->is_int) return mismatch(path, *v, "integer");
        if (v->num < 0 && std::is_unsigned_v<Int>) return range(path, "must be >= 0");
        out = static_cast<Int>(v->num);
    }

    void nums(const std::string& path, std::vector<double>& out) {
        const Value* v = take(path);
        if (!v) return;
        if (v->type == Value::Type::EmptyArray) {
            out.clear();
            return;
        }
        if (v->type != Value::Type::NumberArray) return mismatch(path, *v, "number array");
        for (double d : v->nums)
            if (!std::isfinite(d)) return range(path, "entries must be finite");
        out = v->nums;
    }

    void strs(const std::string& path, std::vector<std::string>& out) {
        const Value* v = take(path);
        if (!v) return;
        if (v->type == Value::Type::EmptyArray) {
            out.clear();
            return;
        }
        if (v->type != Value::Type::StringArray) return mismatch(path, *v, "string array");
        out = v->strs;
    }

    void unknown() {
        for (const auto& [k, v] : p_.values)
            if (!used_.count(k)) {
                auto dot = k.rfind('.');
                std::string block = dot == std::string::npos ? "top level" : "[" + k.substr(0, dot) + "]";
                errors_.push_back("line " + std::to_string(v.line) + ": unknown key '" + k +
                                  "' (hint: check spelling; see the README for keys allowed in " +
                                  block + ")");
            }
    }

private:
    Parser& p_;
    std::vector<std::string>& errors_;
    std::set<std::string> used_;
};

void read_initial(Extractor& x, const std::string& prefix, InitialConfig& c,
                  std::vector<std::string>& errors) {
    x.str(prefix + ".profile", c.profile, {"box", "bump", "riemann", "gaussian"});
    x.num(prefix + ".center", c.center);
    x.num(prefix + ".width", c.width);
    x.num(prefix + ".height", c.height);
    x.num(prefix + ".left", c.left);
    x.num(prefix + ".right", c.right);
    if (!(c.width > 0.0)) errors.push_back(prefix + ".width: out of range, width > 0");
}

void emit_initial(std::ostringstream& o, const std::string& header, const InitialConfig& c) {
    o << "\n[" << header << "]\n";
    o << "profile = " << escape(c.profile) << "\n";
    o << "center = " << format_double(c.center) << "\n";
    o << "width = " << format_double(c.width) << "\n";
    o << "height = " << format_double(c.height) << "\n";
    o << "left = " << format_double(c.left) << "\n";
    o << "right = " << format_double(c.right) << "\n";
}

std::string array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + "]";
}

std::string array(const std::vector<std::string>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + escape(v[i]);
    return s + "]";
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, p);
    // keep numbers recognisably non-integer where needed
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

ConfigErrors::ConfigErrors(std::vector<std::string> errors)
    : ConfigError([&] {
          std::string m = std::to_string(errors.size()) + " configuration error(s):";
          for (const auto& e : errors) m += "\n  - " + e;
          return m;
      }()),
      errors_(std::move(errors)) {}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigErrors({path.string() + ": cannot open config file (hint: check the path)"});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.parent_path());
}

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
    Parser p;
    p.parse(text);
    std::vector<std::string> errors = p.errors;
    Extractor x(p, errors);
    RunConfig c;

    x.str("schema", c.schema, {}, true);
    if (c.schema != kConfigSchema)
        errors.push_back("schema: unsupported version '" + c.schema + "' (hint: use \"" +
                         kConfigSchema + "\")");

    ModelConfig& m = c.model;
    x.str("model.flux", m.flux, {"burgers", "linear", "poly", "zero"}, true);
    x.num("model.flux_speed", m.flux_speed);
    x.nums("model.flux_coeffs", m.flux_coeffs);
    if (m.flux == "poly" && m.flux_coeffs.empty())
        errors.push_back("model.flux_coeffs: required when flux = \"poly\" (hint: [c0, c1, ...])");
    x.str("model.diffusion", m.diffusion, {"identity", "power", "piecewise", "zero"}, true);
    x.num("model.diffusion_m", m.diffusion_m);
    if (!(m.diffusion_m >= 1.0)) x.range("model.diffusion_m", "m >= 1 (A must be nondecreasing and locally Lipschitz)");
    x.nums("model.breakpoints", m.breakpoints);
    x.nums("model.slopes", m.slopes);
    if (m.diffusion == "piecewise") {
        if (m.slopes.size() != m.breakpoints.size() + 1)
            errors.push_back("model.slopes: need exactly one more slope than breakpoints");
        for (double s : m.slopes)
            if (s < 0.0) {
                x.range("model.slopes", "slopes >= 0");
                break;
            }
        for (std::size_t k = 1; k < m.breakpoints.size(); ++k)
            if (!(m.breakpoints[k] > m.breakpoints[k - 1])) {
                x.range("model.breakpoints", "breakpoints must increase strictly");
                break;
            }
    }
    MeasureConfig& mu = m.measure;
    x.str("model.measure.kind", mu.kind, {"fractional", "tempered", "bounded", "tabulated"}, true);
    x.num("model.measure.alpha", mu.alpha);
    x.num("model.measure.lambda", mu.lambda);
    x.num("model.measure.mass", mu.mass);
    x.num("model.measure.radius", mu.radius);
    x.str("model.measure.table_path", mu.table_path, {});
    x.nums("model.measure.atom_positions", mu.atom_positions);
    x.nums("model.measure.atom_weights", mu.atom_weights);
    if ((mu.kind == "fractional" || mu.kind == "tempered") && !(mu.alpha > 0.0 && mu.alpha < 2.0))
        x.range("model.measure.alpha", "alpha in (0,2) (integrability of min(z^2,1) against mu)");
    if (mu.kind == "tempered" && !(mu.lambda > 0.0)) x.range("model.measure.lambda", "lambda > 0");
    if (mu.kind == "bounded") {
        if (!(mu.mass > 0.0)) x.range("model.measure.mass", "mass > 0");
        if (!(mu.radius > 0.0)) x.range("model.measure.radius", "radius > 0");
    }
    if (mu.kind == "tabulated") {
        if (mu.table_path.empty()) {
            errors.push_back("model.measure.table_path: required for kind = \"tabulated\" (hint: CSV with z,density)");
        } else {
            std::filesystem::path tp(mu.table_path);
            if (tp.is_relative()) tp = base_dir / tp;
            if (!std::filesystem::exists(tp))
                errors.push_back("model.measure.table_path: file '" + tp.string() +
                                 "' does not exist (hint: paths are relative to the config file)");
        }
    }
    if (mu.atom_positions.size() != mu.atom_weights.size())
        errors.push_back("model.measure.atom_weights: must match atom_positions in length");
    for (std::size_t k = 0; k < mu.atom_positions.size() && k < mu.atom_weights.size(); ++k)
        if (!(mu.atom_positions[k] > 0.0) || !(mu.atom_weights[k] >= 0.0)) {
            x.range("model.measure.atom_positions", "positions > 0 and weights >= 0");
            break;
        }

    GridConfig& g = c.grid;
    x.num("grid.x0", g.x0);
    x.num("grid.length", g.length);
    x.integer("grid.cells", g.cells, true);
    x.str("grid.boundary", g.boundary, {"periodic", "zero"});
    if (!(g.length > 0.0)) x.range("grid.length", "length > 0");
    if (g.cells < 3) x.range("grid.cells", "cells >= 3");

    read_initial(x, "initial", c.initial, errors);

    OperatorConfig& o = c.op;
    x.str("operator.strategy", o.strategy, {"direct", "fft"});
    x.num("operator.split_radius", o.split_radius);
    x.num("operator.cutoff", o.cutoff);
    x.integer("operator.periodic_images", o.periodic_images);
    if (o.split_radius < 0.0) x.range("operator.split_radius", "split_radius >= 0 (0 selects h)");
    if (o.split_radius > 0.0 && g.cells > 0 && o.split_radius < 0.5 * g.length / static_cast<double>(g.cells))
        x.range("operator.split_radius", "split_radius >= h/2");
    if (o.cutoff < 0.0) x.range("operator.cutoff", "cutoff >= 0 (0 selects the default)");
    if (o.periodic_images < 1) x.range("operator.periodic_images", "periodic_images >= 1");
    if (o.strategy == "fft" && g.boundary != "periodic")
        errors.push_back("operator.strategy: fft requires grid.boundary = \"periodic\"");

    RunBlock& r = c.run;
    x.num("run.T", r.T, true);
    x.num("run.safety", r.safety);
    x.integer("run.output_every", r.output_every);
    x.str("run.output_dir", r.output_dir, {});
    x.opt_num("run.dt", r.dt);
    if (!(r.T >= 0.0)) x.range("run.T", "T >= 0");
    if (!(r.safety > 0.0 && r.safety <= 1.0)) x.range("run.safety", "safety in (0,1]");
    if (r.output_every < 1) x.range("run.output_every", "output_every >= 1");
    if (r.dt && !(*r.dt > 0.0)) x.range("run.dt", "dt > 0");

    DiagnosticsConfig& d = c.diagnostics;
    x.integer("diagnostics.xi_points", d.xi_points);
    x.strs("diagnostics.entropies", d.entropies);
    x.integer("diagnostics.kruzhkov_levels", d.kruzhkov_levels);
    x.num("diagnostics.test_center", d.test_center);
    x.num("diagnostics.test_half_width", d.test_half_width);
    x.integer("diagnostics.field_every", d.field_every);
    if (d.xi_points < 2) x.range("diagnostics.xi_points", "xi_points >= 2");
    if (d.kruzhkov_levels < 1) x.range("diagnostics.kruzhkov_levels", "kruzhkov_levels >= 1");
    if (!(d.test_half_width > 0.0)) x.range("diagnostics.test_half_width", "test_half_width > 0");
    for (const auto& e : d.entropies)
        if (e != "quadratic" && e != "kruzhkov")
            errors.push_back("diagnostics.entropies: '" + e + "' is not one of quadratic | kruzhkov");

    PairConfig& pc = c.pair;
    pc.enabled = p.sections.count("pair") || p.sections.count("pair.first") ||
                 p.sections.count("pair.second") ||
                 std::any_of(p.values.begin(), p.values.end(),
                             [](const auto& kv) { return kv.first.rfind("pair.", 0) == 0; });
    x.str("pair.mode", pc.mode, {"contraction", "comparison"});
    read_initial(x, "pair.first", pc.first, errors);
    read_initial(x, "pair.second", pc.second, errors);

    x.unknown();
    if (!errors.empty()) throw ConfigErrors(std::move(errors));
    return c;
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream o;
    o << "schema = " << escape(c.schema) << "\n";
    const ModelConfig& m = c.model;
    o << "\n[model]\n";
    o << "flux = " << escape(m.flux) << "\n";
    o << "flux_speed = " << format_double(m.flux_speed) << "\n";
    o << "flux_coeffs = " << array(m.flux_coeffs) << "\n";
    o << "diffusion = " << escape(m.diffusion) << "\n";
    o << "diffusion_m = " << format_double(m.diffusion_m) << "\n";
    o << "breakpoints = " << array(m.breakpoints) << "\n";
    o << "slopes = " << array(m.slopes) << "\n";
    const MeasureConfig& mu = m.measure;
    o << "\n[model.measure]\n";
    o << "kind = " << escape(mu.kind) << "\n";
    o << "alpha = " << format_double(mu.alpha) << "\n";
    o << "lambda = " << format_double(mu.lambda) << "\n";
    o << "mass = " << format_double(mu.mass) << "\n";
    o << "radius = " << format_double(mu.radius) << "\n";
    o << "table_path = " << escape(mu.table_path) << "\n";
    o << "atom_positions = " << array(mu.atom_positions) << "\n";
    o << "atom_weights = " << array(mu.atom_weights) << "\n";
    o << "\n[grid]\n";
    o << "x0 = " << format_double(c.grid.x0) << "\n";
    o << "length = " << format_double(c.grid.length) << "\n";
    o << "cells = " << c.grid.cells << "\n";
    o << "boundary = " << escape(c.grid.boundary) << "\n";
    emit_initial(o, "initial", c.initial);
    o << "\n[operator]\n";
    o << "strategy = " << escape(c.op.strategy) << "\n";
    o << "split_radius = " << format_double(c.op.split_radius) << "\n";
    o << "cutoff = " << format_double(c.op.cutoff) << "\n";
    o << "periodic_images = " << c.op.periodic_images << "\n";
    o << "\n[run]\n";
    o << "T = " << format_double(c.run.T) << "\n";
    o << "safety = " << format_double(c.run.safety) << "\n";
    o << "output_every = " << c.run.output_every << "\n";
    o << "output_dir = " << escape(c.run.output_dir) << "\n";
    if (c.run.dt) o << "dt = " << format_double(*c.run.dt) << "\n";
    const DiagnosticsConfig& d = c.diagnostics;
    o << "\n[diagnostics]\n";
    o << "xi_points = " << d.xi_points << "\n";
    o << "entropies = " << array(d.entropies) << "\n";
    o << "kruzhkov_levels = " << d.kruzhkov_levels << "\n";
    o << "test_center = " << format_double(d.test_center) << "\n";
    o << "test_half_width = " << format_double(d.test_half_width) << "\n";
    o << "field_every = " << d.field_every << "\n";
    if (c.pair.enabled) {
        o << "\n[pair]\n";
        o << "mode = " << escape(c.pair.mode) << "\n";
        emit_initial(o, "pair.first", c.pair.first);
        emit_initial(o, "pair.second", c.pair.second);
    }
    return o.str();
}

InitialProfile InitialConfig::to_profile() const {
    InitialProfile p;
    p.kind = profile_from_string(profile);
    p.center = center;
    p.width = width;
    p.height = height;
    p.left = left;
    p.right = right;
    return p;
}

ModelSpec RunConfig::to_model(const std::filesystem::path& base_dir) const {
    return to_model(initial, base_dir);
}

ModelSpec RunConfig::to_model(const InitialConfig& init, const std::filesystem::path& base_dir) const {
    ModelSpec s;
    const ModelConfig& m = model;
    if (m.flux == "burgers") s.flux = Flux::burgers();
    else if (m.flux == "linear") s.flux = Flux::linear(m.flux_speed);
    else if (m.flux == "poly") s.flux = Flux::polynomial(m.flux_coeffs);
    else s.flux = Flux::zero();
    if (m.diffusion == "identity") s.diffusion = Nonlinearity::identity();
    else if (m.diffusion == "power") s.diffusion = Nonlinearity::power(m.diffusion_m);
    else if (m.diffusion == "piecewise") s.diffusion = Nonlinearity::piecewise_linear(m.breakpoints, m.slopes);
    else s.diffusion = Nonlinearity::zero();
    const MeasureConfig& mu = m.measure;
    if (mu.kind == "fractional") s.measure = LevyMeasure::fractional_laplacian(mu.alpha);
    else if (mu.kind == "tempered") s.measure = LevyMeasure::tempered_stable(mu.alpha, mu.lambda);
    else if (mu.kind == "bounded") s.measure = LevyMeasure::uniform(mu.mass, mu.radius);
    else {
        std::filesystem::path tp(mu.table_path);
        if (tp.is_relative()) tp = base_dir / tp;
        s.measure = LevyMeasure::from_csv(tp);
    }
    for (std::size_t k = 0; k < mu.atom_positions.size(); ++k)
        s.measure.add_atom(mu.atom_positions[k], mu.atom_weights[k]);
    s.domain = Domain{grid.x0, grid.length, grid.cells, boundary_from_string(grid.boundary)};
    s.initial = init.to_profile();
    s.op.strategy = strategy_from_string(op.strategy);
    s.op.split_radius = op.split_radius;
    s.op.cutoff = op.cutoff;
    s.op.periodic_images = static_cast<int>(op.periodic_images);
    return s;
}

RunOptions RunConfig::run_options() const {
    RunOptions o;
    o.T = run.T;
    o.safety = run.safety;
    o.output_every = run.output_every;
    o.dt = run.dt;
    return o;
}

}  // namespace fcl
