#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qqa/errors.hpp"
#include "qqa/linrep.hpp"
#include "qqa/stats.hpp"
#include "qqa/transducer.hpp"

namespace qqa {

namespace {

using nlohmann::json;

json rational_to_json(const Rational& r) {
    if (is_integer(r) && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return format_rational(r);
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw MathError("rational_from_json: expected integer or \"p/q\" string");
}

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_to_json(x));
    return a;
}

Vec vec_from_json(const json& j) {
    Vec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write file: " + path);
    out << text;
}

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw PreconditionError("invalid JSON input");
    return j;
}

// floating-point outputs carry 12 significant digits
double sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

} // namespace

std::string to_json(const LinearRepresentation& rep) {
    rep.validate();
    json j;
    j["q"] = rep.base;
    j["d"] = rep.dim;
    j["u"] = vec_to_json(rep.u);
    j["v"] = vec_to_json(rep.v);
    json mats = json::array();
    for (const auto& m : rep.matrices) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows; ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < m.cols; ++k) row.push_back(rational_to_json(m.at(i, k)));
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    j["matrices"] = mats;
    return j.dump(2);
}

LinearRepresentation linrep_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    LinearRepresentation rep;
    try {
        rep.base = j.at("q").get<unsigned>();
        rep.dim = j.at("d").get<std::size_t>();
        rep.u = vec_from_json(j.at("u"));
        rep.v = vec_from_json(j.at("v"));
        for (const auto& mj : j.at("matrices")) {
            Mat m(rep.dim, rep.dim);
            std::size_t i = 0;
            for (const auto& rowj : mj) {
                std::size_t k = 0;
                for (const auto& e : rowj) m.at(i, k++) = rational_from_json(e);
                ++i;
            }
            rep.matrices.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("linear representation JSON: ") + e.what());
    }
    rep.validate();
    return rep;
}

LinearRepresentation load_linrep(const std::string& path) {
    return linrep_from_json(read_file(path));
}

void save_linrep(const LinearRepresentation& rep, const std::string& path) {
    write_file(path, to_json(rep) + "\n");
}

std::string to_json(const Transducer& t) {
    t.validate();
    json j;
    j["q"] = t.base;
    j["states"] = t.states;
    j["initial"] = t.initial;
    json trans = json::array();
    for (const auto& row : t.transitions) {
        json per_state = json::array();
        for (const auto& tr : row)
            per_state.push_back(json{{"next", tr.next}, {"output", rational_to_json(tr.output)}});
        trans.push_back(per_state);
    }
    j["transitions"] = trans;
    json fins = json::array();
    for (const auto& f : t.final_outputs) fins.push_back(rational_to_json(f));
    j["final_outputs"] = fins;
    return j.dump(2);
}

Transducer transducer_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    Transducer t;
    try {
        t.base = j.at("q").get<unsigned>();
        t.states = j.at("states").get<std::size_t>();
        t.initial = j.at("initial").get<std::size_t>();
        for (const auto& rowj : j.at("transitions")) {
            std::vector<Transducer::Transition> row;
            for (const auto& trj : rowj) {
                Transducer::Transition tr;
                tr.next = trj.at("next").get<std::size_t>();
                tr.output = rational_from_json(trj.at("output"));
                row.push_back(std::move(tr));
            }
            t.transitions.push_back(std::move(row));
        }
        for (const auto& f : j.at("final_outputs")) t.final_outputs.push_back(rational_from_json(f));
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("transducer JSON: ") + e.what());
    }
    t.validate();
    return t;
}

Transducer load_transducer(const std::string& path) {
    return transducer_from_json(read_file(path));
}

void save_transducer(const Transducer& t, const std::string& path) {
    write_file(path, to_json(t) + "\n");
}

std::string to_json(const ConstantsResult& c) {
    json j;
    j["method"] = c.method;
    j["mu"] = sig12(c.mu);
    j["sigma2"] = sig12(c.sigma2);
    if (c.mu_exact) j["mu_exact"] = format_rational(*c.mu_exact);
    if (c.sigma2_exact) j["sigma2_exact"] = format_rational(*c.sigma2_exact);
    j["mu_error"] = sig12(c.mu_error);
    j["sigma2_error"] = sig12(c.sigma2_error);
    j["q"] = c.q;
    j["r"] = c.r;
    if (c.truncation) j["truncation"] = c.truncation;
    if (c.samples) {
        j["samples"] = c.samples;
        j["k"] = c.scale;
        j["seed"] = c.seed;
    }
    j["flagged"] = c.flagged;
    return j.dump(2);
}

std::string to_json(const ExperimentResult& e) {
    json j;
    j["samples"] = e.samples;
    j["scale_kind"] = e.scale_kind;
    if (e.scale_kind == "power")
        j["k"] = e.k;
    else
        j["bound"] = e.bound.get_str();
    j["effective_k"] = sig12(e.effective_k);
    j["mean"] = sig12(e.mean);
    j["variance"] = sig12(e.variance);
    j["ks"] = sig12(e.ks);
    json bins = json::array();
    for (const auto& b : e.bins)
        bins.push_back(json{{"left", sig12(b.left)}, {"right", sig12(b.right)}, {"count", b.count}});
    j["histogram"] = bins;
    return j.dump(2);
}

std::string histogram_csv(const ExperimentResult& e) {
    std::ostringstream out;
    out << "bin_left,bin_right,count\n";
    out.precision(12);
    for (const auto& b : e.bins) out << b.left << "," << b.right << "," << b.count << "\n";
    return out.str();
}

} // namespace qqa
