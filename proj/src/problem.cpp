#include "flatsub/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flatsub {

using nlohmann::json;

DomainGrid::DomainGrid(const Domain& d, int dim, int points_override)
    : dim_(dim), points_(points_override > 0 ? points_override : d.grid) {
    if (static_cast<int>(d.base.size()) != dim)
        throw SpecError("domain base point length != dimension");
    if (points_ < 1) throw SpecError("grid resolution must be >= 1");
    if (!(Rational(0) < d.half_width)) throw SpecError("half_width must be > 0");
    total_ = 1;
    for (int i = 0; i < dim_; ++i) total_ *= static_cast<size_t>(points_);
    step_ = points_ > 1 ? Rational(2) * d.half_width / Rational(points_ - 1) : Rational(0);
    axes_.resize(dim_);
    for (int i = 0; i < dim_; ++i) {
        axes_[i].resize(points_);
        for (int k = 0; k < points_; ++k)
            axes_[i][k] = points_ > 1
                              ? d.base[i] - d.half_width + Rational(k) * step_
                              : d.base[i];
    }
}

namespace {

Rational parse_scalar(const json& v, ArithmeticMode mode, const std::string& where) {
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_number_float()) {
            double x = v.get<double>();
            if (mode == ArithmeticMode::rational)
                throw SpecError("float literal in rational mode at " + where +
                                " (use an integer or a \"p/q\" string)");
            return Rational::from_double_exact(x);
        }
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError("bad numeric value at " + where + ": " + e.what());
    }
    throw SpecError("expected a number or rational string at " + where);
}

Mat<Rational> parse_matrix(const json& v, int n, ArithmeticMode mode, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw SpecError(where + " must be a " + std::to_string(n) + "x" +
                        std::to_string(n) + " array of arrays");
    Mat<Rational> m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = v[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SpecError(where + " row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j)
            m(i, j) = parse_scalar(row[j], mode,
                                   where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

Polynomial parse_polynomial(const json& v, int n, ArithmeticMode mode, const std::string& where) {
    if (!v.is_object() || !v.contains("terms") || !v["terms"].is_array())
        throw SpecError(where + " must be an object with a \"terms\" array");
    Polynomial p(n);
    size_t t = 0;
    for (const json& term : v["terms"]) {
        std::string here = where + ".terms[" + std::to_string(t++) + "]";
        if (!term.is_object() || !term.contains("exps") || !term.contains("coeff"))
            throw SpecError(here + " needs \"exps\" and \"coeff\"");
        const json& exps = term["exps"];
        if (!exps.is_array() || static_cast<int>(exps.size()) != n)
            throw SpecError(here + ".exps must have length " + std::to_string(n));
        MultiIndex m(n);
        for (int i = 0; i < n; ++i) {
            if (!exps[i].is_number_integer() || exps[i].get<long long>() < 0)
                throw SpecError(here + ".exps entries must be nonnegative integers");
            m[i] = static_cast<unsigned>(exps[i].get<long long>());
        }
        p.add_term(m, parse_scalar(term["coeff"], mode, here + ".coeff"));
    }
    return p;
}

MetricMatrix make_metric(Mat<Rational> m, const std::string& where) {
    try {
        MetricMatrix mm(std::move(m));
        mm.require_nondegenerate();
        return mm;
    } catch (const std::exception& e) {
        throw SpecError(where + ": " + e.what());
    }
}

} // namespace

ProblemSpec load_problem_text(const std::string& text, ArithmeticMode mode) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SpecError(std::string("JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("problem file must be a JSON object");

    ProblemSpec spec;
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw SpecError("\"n\" must be a positive integer");
    spec.n = j["n"].get<int>();

    bool has_phi = j.contains("phi");
    bool has_psi = j.contains("psi");
    if (has_phi == has_psi)
        throw SpecError("exactly one of \"phi\", \"psi\" must be present");

    if (j.contains("l")) {
        if (!j["l"].is_number_integer() || j["l"].get<int>() < 1)
            throw SpecError("\"l\" must be a positive integer");
        spec.l = j["l"].get<int>();
    } else if (has_phi) {
        spec.l = spec.n;
    } else {
        if (!j["psi"].is_array()) throw SpecError("\"psi\" must be an array");
        spec.l = static_cast<int>(j["psi"].size());
    }
    if (has_phi && spec.l != spec.n)
        throw SpecError("potential case requires l == n");

    if (!j.contains("eta")) throw SpecError("missing \"eta\"");
    if (!j.contains("eta_convention") || !j["eta_convention"].is_string())
        throw SpecError("missing \"eta_convention\" (\"contravariant\" or \"covariant\")");
    std::string conv = j["eta_convention"].get<std::string>();
    bool contra;
    if (conv == "contravariant") contra = true;
    else if (conv == "covariant") contra = false;
    else throw SpecError("\"eta_convention\" must be \"contravariant\" or \"covariant\"");

    MetricMatrix eta_file = make_metric(parse_matrix(j["eta"], spec.n, mode, "eta"), "eta");
    if (contra) {
        spec.eta_contra = eta_file;
        spec.eta_cov = eta_file.inverse();
    } else {
        spec.eta_cov = eta_file;
        spec.eta_contra = eta_file.inverse();
    }

    if (!j.contains("mu")) throw SpecError("missing \"mu\"");
    const json& mu = j["mu"];
    if (mu.is_object() && mu.contains("scale_of_eta")) {
        if (spec.l != spec.n)
            throw SpecError("mu.scale_of_eta requires l == n");
        Rational c = parse_scalar(mu["scale_of_eta"], mode, "mu.scale_of_eta");
        if (c.is_zero()) throw SpecError("mu.scale_of_eta must be nonzero");
        spec.mu_is_eta_scale = true;
        spec.mu_scale = c;
        spec.mu_contra = spec.eta_contra.scaled(c);
        spec.mu_cov = spec.eta_cov.scaled(Rational(1) / c);
    } else {
        MetricMatrix mu_file = make_metric(parse_matrix(mu, spec.l, mode, "mu"), "mu");
        if (contra) {
            spec.mu_contra = mu_file;
            spec.mu_cov = mu_file.inverse();
        } else {
            spec.mu_cov = mu_file;
            spec.mu_contra = mu_file.inverse();
        }
    }

    if (has_phi) {
        spec.phi = parse_polynomial(j["phi"], spec.n, mode, "phi");
        spec.psi = gradient_potentials(*spec.phi);
    } else {
        const json& psi = j["psi"];
        if (!psi.is_array() || static_cast<int>(psi.size()) != spec.l)
            throw SpecError("\"psi\" must be an array of l polynomials");
        for (int a = 0; a < spec.l; ++a)
            spec.psi.push_back(
                parse_polynomial(psi[a], spec.n, mode, "psi[" + std::to_string(a) + "]"));
    }

    spec.domain.base.assign(spec.n, Rational(0));
    if (j.contains("domain")) {
        const json& d = j["domain"];
        if (!d.is_object()) throw SpecError("\"domain\" must be an object");
        if (d.contains("base")) {
            if (!d["base"].is_array() || static_cast<int>(d["base"].size()) != spec.n)
                throw SpecError("domain.base must have length n");
            for (int i = 0; i < spec.n; ++i)
                spec.domain.base[i] =
                    parse_scalar(d["base"][i], mode, "domain.base[" + std::to_string(i) + "]");
        }
        if (d.contains("half_width")) {
            spec.domain.half_width = parse_scalar(d["half_width"], mode, "domain.half_width");
            if (!(Rational(0) < spec.domain.half_width))
                throw SpecError("domain.half_width must be > 0");
        }
        if (d.contains("grid")) {
            if (!d["grid"].is_number_integer() || d["grid"].get<int>() < 1)
                throw SpecError("domain.grid must be a positive integer");
            spec.domain.grid = d["grid"].get<int>();
        }
    }

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) throw SpecError("\"tolerances\" must be an object");
        auto read_tol = [&](const char* key, double& out) {
            if (!t.contains(key)) return;
            if (!t[key].is_number() || t[key].get<double>() <= 0)
                throw SpecError(std::string("tolerances.") + key + " must be a positive number");
            out = t[key].get<double>();
        };
        read_tol("algebra", spec.tol.algebra);
        read_tol("ode", spec.tol.ode);
        read_tol("fd", spec.tol.fd);
    }

    return spec;
}

ProblemSpec load_problem_file(const std::string& path, ArithmeticMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open problem file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_problem_text(ss.str(), mode);
}

std::string file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open file for fingerprint: " + path);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

} // namespace flatsub
