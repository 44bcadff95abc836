#include "beadsim/config.hpp"

#include <cstdio>
#include <set>
#include <utility>
#include <vector>

#include "beadsim/path_io.hpp"

namespace beadsim {

namespace {

using njson = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config " + where + ": " + what);
}

// Typed field access over one JSON object, tracking which keys were read so
// that leftovers can be reported by name.
class ObjectReader {
  public:
    ObjectReader(const ojson& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) fail(path_.empty() ? "/" : path_, "expected an object");
    }

    bool has(const char* key) const { return obj_.contains(key); }

    double number(const char* key, double fallback) {
        const ojson* v = get(key);
        if (!v) return fallback;
        if (!v->is_number()) fail(path_ + "/" + key, "expected a number");
        return v->get<double>();
    }

    std::uint64_t uinteger(const char* key, std::uint64_t fallback) {
        const ojson* v = get(key);
        if (!v) return fallback;
        if (!v->is_number_unsigned()) fail(path_ + "/" + key, "expected an unsigned integer");
        return v->get<std::uint64_t>();
    }

    std::uint64_t uinteger_req(const char* key) {
        require(key);
        return uinteger(key, 0);
    }

    std::string str_req(const char* key) {
        require(key);
        const ojson* v = get(key);
        if (!v->is_string()) fail(path_ + "/" + key, "expected a string");
        return v->get<std::string>();
    }

    std::vector<double> number_array(const char* key, std::vector<double> fallback) {
        const ojson* v = get(key);
        if (!v) return fallback;
        if (!v->is_array()) fail(path_ + "/" + key, "expected an array of numbers");
        std::vector<double> out;
        out.reserve(v->size());
        for (const ojson& e : *v) {
            if (!e.is_number()) fail(path_ + "/" + key, "expected an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    const ojson* object(const char* key) {
        const ojson* v = get(key);
        if (v && !v->is_object()) fail(path_ + "/" + key, "expected an object");
        return v;
    }

    void require(const char* key) {
        if (!obj_.contains(key))
            fail(path_.empty() ? "/" : path_, std::string("missing required field \"") + key +
                                                 "\"");
    }

    // Rejects any field that no reader asked about, naming the first one.
    void finish() const {
        for (const auto& [key, value] : obj_.items())
            if (!seen_.count(key))
                fail(path_ + "/" + key, "unknown field (check spelling and config version)");
    }

  private:
    const ojson* get(const char* key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const ojson& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

std::size_t usize(ObjectReader& r, const char* key, std::size_t fallback) {
    return std::size_t(r.uinteger(key, fallback));
}

HullSpec read_hull(const ojson& obj, const std::string& path) {
    ObjectReader r(obj, path);
    HullSpec h;
    h.shape = r.str_req("shape");
    if (h.shape != "slit" && h.shape != "semidisk")
        fail(path + "/shape", "expected \"slit\" or \"semidisk\"");
    h.x0 = r.number("x0", 0.0);
    r.require("size");
    h.size = r.number("size", 0.0);
    if (!(h.size > 0.0)) fail(path + "/size", "expected a positive number");
    r.finish();
    return h;
}

// line:column of a byte offset, 1-based, for syntax diagnostics.
std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::shared_ptr<const Hull> make_hull(const HullSpec& spec) {
    if (spec.shape == "slit") return std::make_shared<SlitHull>(spec.x0, spec.size);
    if (spec.shape == "semidisk") return std::make_shared<SemidiskHull>(spec.x0, spec.size);
    throw ConfigError("config /hull/shape: expected \"slit\" or \"semidisk\"");
}

ojson hull_json(const HullSpec& spec) {
    return ojson{{"shape", spec.shape}, {"x0", spec.x0}, {"size", spec.size}};
}

RunConfig parse_run_config(std::string_view text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        char buf[160];
        std::snprintf(buf, sizeof buf, "config syntax error at line %zu, column %zu", line,
                      col);
        throw ConfigError(buf);
    }

    ObjectReader top(doc, "");
    RunConfig cfg;
    const std::uint64_t version = top.uinteger_req("version");
    if (version != 1)
        fail("/version", "unsupported config version " + std::to_string(version) +
                             " (this tool reads version 1)");
    cfg.version = 1;
    cfg.kind = top.str_req("kind");
    cfg.seed = top.uinteger_req("seed");

    if (cfg.kind == "exponent") {
        ExponentConfig& e = cfg.exponent;
        e.dt_ladder = top.number_array("dt_ladder", e.dt_ladder);
        e.t_grid = top.number_array("t_grid", e.t_grid);
        e.t_window = top.number("t_window", e.t_window);
        e.y_far = top.number("y_far", e.y_far);
        e.n_paths = usize(top, "n_paths", e.n_paths);
        e.max_tail_steps = usize(top, "max_tail_steps", e.max_tail_steps);
    } else if (cfg.kind == "avoid") {
        AvoidanceConfig& a = cfg.avoidance;
        a.dt_ladder = top.number_array("dt_ladder", a.dt_ladder);
        a.n_paths = usize(top, "n_paths", a.n_paths);
        a.escape_factor = top.number("escape_factor", a.escape_factor);
        top.require("hull");
        cfg.hull = read_hull(*top.object("hull"), "/hull");
    } else if (cfg.kind == "tail") {
        TailConfig& t = cfg.tail;
        t.dt = top.number("dt", t.dt);
        t.threshold = top.number("threshold", t.threshold);
        t.y_window = top.number("y_window", t.y_window);
        t.y_far = top.number("y_far", t.y_far);
        t.fit_lo = top.number("fit_lo", t.fit_lo);
        t.fit_hi = top.number("fit_hi", t.fit_hi);
        t.n_paths = usize(top, "n_paths", t.n_paths);
        t.n_grid = usize(top, "n_grid", t.n_grid);
        t.min_pooled = usize(top, "min_pooled", t.min_pooled);
        t.max_window_steps = usize(top, "max_window_steps", t.max_window_steps);
        t.max_censoring = top.number("max_censoring", t.max_censoring);
        t.probe.n_walkers_search = usize(top, "walkers_search", t.probe.n_walkers_search);
        t.probe.n_walkers_final = usize(top, "walkers_final", t.probe.n_walkers_final);
    } else if (cfg.kind == "capacity") {
        cfg.capacity_walkers = usize(top, "n_walkers", cfg.capacity_walkers);
    } else if (cfg.kind == "beads") {
        BeadsConfig& b = cfg.beads;
        b.dt = top.number("dt", b.dt);
        b.y_stop = top.number("y_stop", b.y_stop);
        b.n_paths = usize(top, "n_paths", b.n_paths);
        b.n_walkers = usize(top, "n_walkers", b.n_walkers);
        b.n_grid = usize(top, "n_grid", b.n_grid);
        b.min_pooled = usize(top, "min_pooled", b.min_pooled);
        b.fit_lo = top.number("fit_lo", b.fit_lo);
        b.fit_hi = top.number("fit_hi", b.fit_hi);
        b.max_window_steps = usize(top, "max_window_steps", b.max_window_steps);
    } else {
        fail("/kind",
             "expected one of \"exponent\", \"avoid\", \"tail\", \"capacity\", \"beads\"");
    }
    top.finish();
    return cfg;
}

std::string config_hash(std::string_view text) {
    // Canonical form: parse into the key-sorting document type and re-dump,
    // so field order and whitespace cannot change the digest.
    njson doc = njson::parse(text);
    const std::string canon = doc.dump();
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  (unsigned long long)fnv1a64(canon.data(), canon.size()));
    return buf;
}

}  // namespace beadsim
