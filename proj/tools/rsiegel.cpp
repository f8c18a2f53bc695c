#include "rsiegel/analytic.hpp"
#include "rsiegel/chars.hpp"
#include "rsiegel/cusps.hpp"
#include "rsiegel/errors.hpp"
#include "rsiegel/gauss.hpp"
#include "rsiegel/parallel.hpp"
#include "rsiegel/pluriharm.hpp"
#include "rsiegel/rankin.hpp"
#include "rsiegel/theta.hpp"
#include "rsiegel/verify.hpp"
#include "rsiegel/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace rsiegel;
using Json = nlohmann::ordered_json;

namespace {

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lanczos gamma and short products; pinned relative bound reported with every Gamma value.
constexpr double gamma_rel_error = 1e-13;
constexpr double eps = std::numeric_limits<double>::epsilon();

// ---- input parsing --------------------------------------------------------------------------------

template <class F>
auto schema(const std::string& what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(what + ": " + e.what());
    }
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

long long parse_int(const std::string& s)
{
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw SchemaError("bad integer '" + s + "'");
    return v;
}

double parse_double(const std::string& s)
{
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw SchemaError("bad number '" + s + "'");
    return v;
}

// "a" or "a,b" for a + b i
Complex parse_complex(const std::string& text)
{
    return schema("complex '" + text + "'", [&] {
        auto parts = split(text, ',');
        if (parts.size() == 1) return Complex(parse_double(parts[0]), 0);
        if (parts.size() == 2) return Complex(parse_double(parts[0]), parse_double(parts[1]));
        throw SchemaError("expected 're' or 're,im'");
    });
}

std::vector<int> parse_int_list(const std::string& text)
{
    return schema("integer list '" + text + "'", [&] {
        std::vector<int> out;
        for (const auto& p : split(text, ','))
            if (!p.empty()) out.push_back(static_cast<int>(parse_int(p)));
        return out;
    });
}

// rows separated by ';', entries by ','
RationalMatrix parse_matrix(const std::string& text)
{
    return schema("matrix '" + text + "'", [&] {
        auto rows = split(text, ';');
        std::vector<std::vector<Rational>> cells;
        for (const auto& r : rows) {
            cells.emplace_back();
            for (const auto& e : split(r, ',')) cells.back().push_back(parse_rational(e));
        }
        const std::size_t cols = cells.front().size();
        RationalMatrix m(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(cols));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].size() != cols) throw SchemaError("ragged matrix");
            for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells[i][j];
        }
        return m;
    });
}

IntMatrix parse_int_matrix(const std::string& text)
{
    RationalMatrix m = parse_matrix(text);
    if (!is_integral(m)) throw SchemaError("matrix '" + text + "' must be integral");
    return to_integer(m);
}

RationalMatrix json_matrix(const Json& j)
{
    if (j.is_string()) return parse_matrix(j.get<std::string>());
    return schema("matrix", [&] {
        std::string text;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) text += ";";
            for (std::size_t k = 0; k < j[i].size(); ++k) {
                if (k) text += ",";
                text += j[i][k].is_string() ? j[i][k].get<std::string>() : std::to_string(j[i][k].get<long long>());
            }
        }
        return parse_matrix(text);
    });
}

Rational json_rational(const Json& j)
{
    return schema("rational", [&] {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        return Rational(j.get<long long>());
    });
}

DirichletCharacter character(std::int64_t modulus, std::int64_t index)
{
    auto chars = schema("character", [&] { return enumerate_characters(modulus); });
    if (index < 0 || index >= static_cast<std::int64_t>(chars.size()))
        throw SchemaError("character index " + std::to_string(index) + " out of range for modulus " + std::to_string(modulus));
    return chars[static_cast<std::size_t>(index)];
}

// "F:i", the i-th character mod F in enumeration order
DirichletCharacter parse_character(const std::string& text)
{
    auto parts = split(text, ':');
    if (parts.size() != 2) throw SchemaError("character must be 'modulus:index', got '" + text + "'");
    return character(schema("character", [&] { return parse_int(parts[0]); }),
                     schema("character", [&] { return parse_int(parts[1]); }));
}

DirichletCharacter json_character(const Json& j)
{
    if (j.is_string()) return parse_character(j.get<std::string>());
    return character(schema("character", [&] { return j.at("modulus").get<std::int64_t>(); }),
                     schema("character", [&] { return j.value("index", std::int64_t{0}); }));
}

// Polynomials in x_{rc} (1 <= r, c <= n) with rational and i coefficients: + - * ^ ( ).
class PolyParser {
public:
    PolyParser(int n, std::string text) : n_(n), s_(std::move(text)) {}

    MatrixPolynomial parse()
    {
        MatrixPolynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SchemaError("polynomial '" + s_ + "': " + msg); }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return s_.substr(start, pos_ - start);
    }
    MatrixPolynomial expr()
    {
        MatrixPolynomial p = term();
        for (;;) {
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else return p;
        }
    }
    MatrixPolynomial term()
    {
        MatrixPolynomial p = unary();
        while (eat('*')) p = p * unary();
        return p;
    }
    MatrixPolynomial unary()
    {
        if (eat('-')) return unary() * GaussRational(-1);
        return power();
    }
    MatrixPolynomial power()
    {
        MatrixPolynomial p = atom();
        if (eat('^')) p = p.pow(static_cast<int>(parse_int(digits())));
        return p;
    }
    MatrixPolynomial atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (eat('(')) {
            MatrixPolynomial p = expr();
            if (!eat(')')) fail("missing ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (eat('/')) num += "/" + digits();
            return MatrixPolynomial::constant(n_, GaussRational(parse_rational(num)));
        }
        if (s_.compare(pos_, 3, "det") == 0) {
            pos_ += 3;
            return MatrixPolynomial::determinant(n_);
        }
        if (c == 'i') {
            ++pos_;
            return MatrixPolynomial::constant(n_, GaussRational(Rational(0), Rational(1)));
        }
        if (c == 'x') {
            if (pos_ + 2 >= s_.size()) fail("bad variable");
            int r = s_[pos_ + 1] - '0', k = s_[pos_ + 2] - '0';
            if (r < 1 || r > n_ || k < 1 || k > n_) fail("variable out of range");
            pos_ += 3;
            return MatrixPolynomial::variable(n_, r, k);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    int n_;
    std::string s_;
    std::size_t pos_ = 0;
};

MatrixPolynomial parse_polynomial(int n, const std::string& text)
{
    if (n < 1 || n > 4) throw SchemaError("polynomials need 1 <= n <= 4");
    return PolyParser(n, text).parse();
}

// "sym:j", "det", or a list of component expressions
VectorPolynomial json_polynomial(int n, const Json& j)
{
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.rfind("sym:", 0) == 0) {
            if (n != 2) throw SchemaError("sym:j needs n = 2");
            return sym_power_polynomial(static_cast<int>(schema("sym", [&] { return parse_int(s.substr(4)); })));
        }
        return {{parse_polynomial(n, s)}};
    }
    VectorPolynomial P;
    for (const auto& c : j) P.components.push_back(parse_polynomial(n, c.get<std::string>()));
    return P;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    return schema("json '" + path + "'", [&] { return Json::parse(in); });
}

ThetaSpec json_theta_spec(const Json& j)
{
    ThetaSpec s;
    s.n = schema("theta spec n", [&] { return j.at("n").get<int>(); });
    s.tau = json_matrix(j.at("tau"));
    s.Q = j.contains("Q") ? json_matrix(j.at("Q")) : RationalMatrix(RationalMatrix::Identity(s.n, s.n));
    s.chi = j.contains("chi") ? json_character(j.at("chi")) : DirichletCharacter();
    if (j.contains("P")) s.P = json_polynomial(s.n, j.at("P"));
    s.rho = GLWeight{s.n, j.contains("rho") ? schema("rho", [&] { return j.at("rho").get<std::vector<int>>(); })
                                          : std::vector<int>(static_cast<std::size_t>(s.n), 0)};
    if (s.tau.rows() != s.n || s.Q.rows() != s.n) throw SchemaError("tau and Q must be n x n");
    return s;
}

SatakeData json_satake(const Json& j)
{
    SatakeData d;
    schema("satake data", [&] {
        d.n = j.at("n").get<int>();
        d.k = json_rational(j.at("k"));
        d.c = j.value("c", std::int64_t{1});
        if (j.contains("psi")) d.psi = json_character(j.at("psi"));
        for (const auto& [p, list] : j.at("parameters").items()) {
            std::vector<Complex> v;
            for (const auto& z : list) v.push_back(z.is_array() ? Complex(z[0].get<double>(), z[1].get<double>()) : Complex(z.get<double>(), 0));
            d.parameters[parse_int(p)] = v;
        }
        return 0;
    });
    return d;
}

CoefficientFamily json_family(const Json& j, std::uint64_t seed)
{
    if (j.contains("theta")) {
        ThetaSpec s = json_theta_spec(j.at("theta"));
        return theta_family(s, schema("det_bound", [&] { return j.at("det_bound").get<std::int64_t>(); }));
    }
    const int n = schema("family n", [&] { return j.at("n").get<int>(); });
    GLRep rho = schema("family rho", [&] {
        const Json& r = j.at("rho");
        return GLRep{n, r.value("j", 0), r.value("k", 0)};
    });
    DirichletCharacter psi = j.contains("psi") ? json_character(j.at("psi")) : DirichletCharacter();
    const auto bound = schema("det_bound", [&] { return j.at("det_bound").get<std::int64_t>(); });
    if (j.contains("synthetic")) {
        std::uint64_t s = j.at("synthetic").value("seed", seed);
        CoefficientFamily f = synthetic_family(n, rho, psi, bound, s);
        if (j.at("synthetic").contains("support")) {
            std::vector<IntMatrix> support;
            for (const auto& R : j.at("synthetic").at("support")) support.push_back(to_integer(json_matrix(R)));
            f = restrict_support(f, support);
        }
        return f;
    }
    CoefficientFamily f{n, rho, psi, bound, {}};
    for (const auto& e : schema("family values", [&] { return j.at("values"); })) {
        RationalMatrix R = json_matrix(e.at("R"));
        if (!is_integral(R)) throw SchemaError("family R must be integral");
        Eigen::VectorXcd c(static_cast<Eigen::Index>(e.at("c").size()));
        schema("family value", [&] {
            for (std::size_t i = 0; i < e.at("c").size(); ++i) {
                const Json& z = e.at("c")[i];
                c(static_cast<Eigen::Index>(i)) = z.is_array() ? Complex(z[0].get<double>(), z[1].get<double>()) : Complex(z.get<double>(), 0);
            }
            return 0;
        });
        f.base[to_integer(R)] = c;
    }
    FamilyReport rep = validate_family(f, 8, seed);
    if (!rep.coherent) {
        const auto& v = *rep.violation;
        throw DomainError("family violates the " + v.rule + " rule at R = " + to_string(v.R) + ", u = " + to_string(v.u));
    }
    return f;
}

// ---- output -----------------------------------------------------------------------------------------

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json numeric(Complex z, double error_bound)
{
    Json j = complex_json(z);
    j["error_bound"] = error_bound;
    return j;
}

Json exact_string(const std::string& s) { return Json{{"value", s}, {"exact", true}}; }

Json matrix_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

Json rational_matrix_json(const RationalMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

Json character_json(const DirichletCharacter& c)
{
    return Json{{"modulus", c.modulus()}, {"exponents", c.exponents()}, {"order", c.order()}, {"parity", c.parity()},
                {"conductor", c.conductor()}};
}

Json cyclotomic_json(const CyclotomicNumber& z)
{
    Json j{{"value", z.to_string()}, {"order", z.order()}, {"exact", true}};
    j["numeric"] = numeric(z.to_complex(), 64 * eps * (1 + std::abs(z.to_complex())) * z.order());
    return j;
}

Json vanishing_json(const VanishingReport& v)
{
    Json j{{"n", v.n}, {"p", v.p}, {"tau", rational_matrix_json(v.tau)}, {"Q", rational_matrix_json(v.Q)},
           {"tauQ", rational_matrix_json(v.tauQ)}, {"singular_X", v.singular_X}, {"symmetric_R", v.symmetric_R},
           {"swept", v.swept}, {"nonzero", v.nonzero}, {"zero", v.zero}, {"exact", true}};
    if (v.counterexample) {
        const auto& c = *v.counterexample;
        j["counterexample"] = Json{{"chi_index", c.chi_index}, {"X", matrix_json(c.X)}, {"R", matrix_json(c.R)},
                                   {"value", c.value}, {"exact", true}, {"magnitude", c.magnitude},
                                   {"error_bound", 64 * eps * (1 + c.magnitude)}};
    }
    auto tallies = [](const std::vector<CharacterTally>& ts) {
        Json a = Json::array();
        for (const auto& t : ts)
            a.push_back(Json{{"chi_index", t.chi_index}, {"parity", t.parity}, {"cases", t.cases}, {"nonzero", t.nonzero},
                             {"max_magnitude", t.max_magnitude}, {"error_bound", 64 * eps * (1 + t.max_magnitude)}});
        return a;
    };
    j["odd"] = tallies(v.odd);
    if (!v.even_outside_scope.empty()) j["even_outside_scope"] = tallies(v.even_outside_scope);
    return j;
}

Json level_json(const LevelData& L)
{
    Json j{{"r", to_string(L.r)}, {"t", to_string(L.t)}, {"a", to_string(L.a)}, {"b", to_string(L.b)}, {"c", L.c.str()},
           {"chi_conductor", L.f}, {"epsilon_discriminant", L.epsilon.discriminant},
           {"nebentype", character_json(L.nebentype)}, {"two_divides_b_inverse", L.two_divides_b_inverse},
           {"two_divides_bc", L.two_divides_bc}, {"exact", true}};
    j["gamma_level"] = L.gamma_level ? Json(L.gamma_level->str()) : Json(nullptr);
    return j;
}

Json pole_list(const std::vector<Pole>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(Json{{"s", to_string(p.s)}, {"source", p.source}, {"order", p.order}, {"exact", true}});
    return a;
}

Json hermitian_json(const HermitianOperator& H)
{
    return Json{{"dim", H.matrix.rows()}, {"asymmetry", H.asymmetry}, {"quadrature_change", H.quadrature_change},
                {"converged", H.converged}, {"nodes", H.nodes}};
}

// ---- job plumbing ------------------------------------------------------------------------------------

struct Globals {
    int threads = 0;
    std::uint64_t seed = 1;
    std::string output;
};

void emit(const Globals& g, const std::string& command, Json input, Json result, Json tolerances)
{
    Json report{{"command", command}, {"input", std::move(input)}, {"seed", g.seed}, {"result", std::move(result)},
                {"tolerances", std::move(tolerances)}};
    std::string text = report.dump(2) + "\n";
    if (g.output.empty()) std::cout << text;
    else {
        std::ofstream out(g.output);
        if (!out) throw SchemaError("cannot write '" + g.output + "'");
        out << text;
    }
}

int error_exit(const std::string& kind, const std::string& message, int code)
{
    std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rankin-Selberg toolkit for vector-valued Siegel modular forms"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML job file");
    Globals g;
    app.add_option("--threads", g.threads, "worker threads")->envname("RSIEGEL_THREADS")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "seed for randomized routes");
    app.add_option("--output", g.output, "write the report here");

    std::function<void()> job;
    int verify_exit = 0;

    // kv-map
    {
        auto* c = app.add_subcommand("kv-map", "orthogonal weight -> GL weight, or membership test with --rho");
        auto n = std::make_shared<int>(1);
        auto lambda = std::make_shared<std::string>();
        auto rho = std::make_shared<std::string>();
        c->add_option("--n", *n, "degree")->required();
        auto* lo = c->add_option("--lambda", *lambda, "e.g. '2;+1' or '2,0;-'");
        auto* ro = c->add_option("--rho", *rho, "GL weight, e.g. '2,1,1'");
        lo->excludes(ro);
        c->callback([&, c, n, lambda, rho] {
            job = [&, c, n, lambda, rho] {
                Json input{{"n", *n}};
                Json result;
                if (!rho->empty()) {
                    input["rho"] = *rho;
                    GLWeight w{*n, parse_int_list(*rho)};
                    if (static_cast<int>(w.m.size()) != *n) throw SchemaError("rho needs n entries");
                    auto m = tau_sigma_membership(w);
                    result["member"] = m.has_value();
                    result["lambda"] = m ? Json(to_string(*m)) : Json(nullptr);
                } else {
                    if (lambda->empty()) throw SchemaError("one of --lambda, --rho is required");
                    input["lambda"] = *lambda;
                    OrthWeight w = schema("weight '" + *lambda + "'", [&] { return parse_orth_weight(*n, *lambda); });
                    result["tau"] = kv_tau(w).m;
                }
                result["exact"] = true;
                emit(g, c->get_name(), input, result, Json::object());
            };
        });
    }

    // pluriharmonic-check
    {
        auto* c = app.add_subcommand("pluriharmonic-check", "exact Delta_ij test of polynomial components");
        auto n = std::make_shared<int>(2);
        auto polys = std::make_shared<std::vector<std::string>>();
        c->add_option("--n", *n)->required();
        c->add_option("--poly", *polys, "component, e.g. '(x11 + i*x21)^3'; repeat for vectors")->required();
        c->callback([&, c, n, polys] {
            job = [&, c, n, polys] {
                VectorPolynomial P;
                for (const auto& p : *polys) P.components.push_back(parse_polynomial(*n, p));
                PluriharmonicResult r = is_pluriharmonic(P);
                Json result{{"pluriharmonic", r.pluriharmonic}, {"exact", true}};
                if (!r.pluriharmonic)
                    result["witness"] = Json{{"component", r.component}, {"i", r.i}, {"j", r.j}, {"remainder", r.remainder.to_string()}};
                WeightProfile w = weight_profile(P.components.front());
                result["weight_profile"] = Json{{"homogeneous", w.homogeneous}, {"exponents", w.exponents},
                                                {"unipotent_invariant", w.unipotent_invariant}};
                emit(g, c->get_name(), Json{{"n", *n}, {"poly", *polys}}, result, Json::object());
            };
        });
    }

    // kv-generator
    {
        auto* c = app.add_subcommand("kv-generator", "highest-weight pluriharmonic generator");
        auto n = std::make_shared<int>(2);
        auto rho = std::make_shared<std::string>();
        c->add_option("--n", *n)->required();
        c->add_option("--rho", *rho, "GL weight, e.g. '2,0,0'")->required();
        c->callback([&, c, n, rho] {
            job = [&, c, n, rho] {
                GLWeight w{*n, parse_int_list(*rho)};
                if (static_cast<int>(w.m.size()) != *n) throw SchemaError("rho needs n entries");
                MatrixPolynomial p = kv_generator(w);
                WeightProfile prof = weight_profile(p);
                Json result{{"polynomial", p.to_string()}, {"degree", p.degree()},
                            {"pluriharmonic", is_pluriharmonic(p).pluriharmonic}, {"weight", prof.exponents},
                            {"unipotent_invariant", prof.unipotent_invariant}, {"exact", true}};
                emit(g, c->get_name(), Json{{"n", *n}, {"rho", *rho}}, result, Json::object());
            };
        });
    }

    // gauss-sum
    {
        auto* c = app.add_subcommand("gauss-sum", "exact quadratic Gauss sum over M_n(Z/F)");
        auto n = std::make_shared<int>(1);
        auto F = std::make_shared<std::int64_t>(3);
        auto idx = std::make_shared<std::int64_t>(0);
        auto X = std::make_shared<std::string>(), R = std::make_shared<std::string>(), tq = std::make_shared<std::string>();
        c->add_option("--n", *n)->required();
        c->add_option("--F", *F)->required();
        c->add_option("--chi-index", *idx, "index into the characters mod F")->required();
        c->add_option("--X", *X, "n x n integer matrix, rows split by ';'")->required();
        c->add_option("--R", *R)->required();
        c->add_option("--tauQ", *tq, "tau[Q], rational entries")->required();
        c->callback([&, c, n, F, idx, X, R, tq] {
            job = [&, c, n, F, idx, X, R, tq] {
                GaussSumParams p{*n, character(*F, *idx), parse_int_matrix(*X), parse_int_matrix(*R), *F, parse_matrix(*tq)};
                CyclotomicNumber v = gauss_sum(p);
                Json result = cyclotomic_json(v);
                result["zero"] = v.is_zero();
                emit(g, c->get_name(), Json{{"n", *n}, {"F", *F}, {"chi_index", *idx}, {"X", *X}, {"R", *R}, {"tauQ", *tq}},
                     result, Json::object());
            };
        });
    }

    // vanishing-certificate
    {
        auto* c = app.add_subcommand("vanishing-certificate", "sweep of singular X and symmetric R mod p");
        auto n = std::make_shared<int>(1);
        auto p = std::make_shared<std::int64_t>(3);
        auto tau = std::make_shared<std::string>(), Q = std::make_shared<std::string>();
        auto even = std::make_shared<bool>(false);
        c->add_option("--n", *n)->required();
        c->add_option("--p", *p)->required();
        c->add_option("--tau", *tau)->required();
        c->add_option("--Q", *Q)->required();
        c->add_flag("--include-even", *even, "tally nontrivial even characters too");
        c->callback([&, c, n, p, tau, Q, even] {
            job = [&, c, n, p, tau, Q, even] {
                VanishingReport v = vanishing_certificate(*n, *p, parse_matrix(*tau), parse_matrix(*Q), *even);
                emit(g, c->get_name(), Json{{"n", *n}, {"p", *p}, {"tau", *tau}, {"Q", *Q}, {"include_even", *even}},
                     vanishing_json(v), Json::object());
            };
        });
    }

    // theta-level
    {
        auto* c = app.add_subcommand("theta-level", "level ideals and nebentypus of a theta series");
        auto spec = std::make_shared<std::string>();
        c->add_option("--spec", *spec, "theta spec JSON")->required()->check(CLI::ExistingFile);
        c->callback([&, c, spec] {
            job = [&, c, spec] {
                Json js = read_json_file(*spec);
                ThetaSpec s = json_theta_spec(js);
                emit(g, c->get_name(), js, level_json(level_data(s)), Json::object());
            };
        });
    }

    // theta-coeffs
    {
        auto* c = app.add_subcommand("theta-coeffs", "Fourier coefficients c(R) of a theta series");
        auto spec = std::make_shared<std::string>();
        auto Rs = std::make_shared<std::vector<std::string>>();
        c->add_option("--spec", *spec)->required()->check(CLI::ExistingFile);
        c->add_option("--R", *Rs, "symmetric integer matrix; repeatable")->required();
        c->callback([&, c, spec, Rs] {
            job = [&, c, spec, Rs] {
                Json js = read_json_file(*spec);
                ThetaSpec s = json_theta_spec(js);
                validate(s);
                Json out = Json::array();
                for (const auto& text : *Rs) {
                    ThetaCoefficient t = theta_coefficient(s, parse_int_matrix(text));
                    Json e{{"R", text}, {"solutions", t.solutions}};
                    if (t.mode == SqrtMode::numeric) {
                        e["mode"] = "numeric";
                        Json v = Json::array();
                        for (Eigen::Index i = 0; i < t.numeric.size(); ++i) v.push_back(numeric(t.numeric(i), t.precision));
                        e["values"] = v;
                    } else {
                        e["mode"] = t.mode == SqrtMode::scalar ? "scalar" : "diagonal_squares";
                        e["scale"] = t.scale.to_string();
                        Json v = Json::array();
                        for (const auto& z : t.exact) v.push_back(cyclotomic_json(z));
                        e["values"] = v;
                        e["exact"] = true;
                    }
                    out.push_back(e);
                }
                Json input = js;
                input["R"] = *Rs;
                emit(g, c->get_name(), input, Json{{"coefficients", out}}, Json::object());
            };
        });
    }

    // theta-cusp-report
    {
        auto* c = app.add_subcommand("theta-cusp-report", "cusp-by-cusp cuspidality certificate");
        auto spec = std::make_shared<std::string>();
        auto p = std::make_shared<std::int64_t>(3);
        c->add_option("--spec", *spec)->required()->check(CLI::ExistingFile);
        c->add_option("--p", *p)->required();
        c->callback([&, c, spec, p] {
            job = [&, c, spec, p] {
                Json js = read_json_file(*spec);
                ThetaSpec s = json_theta_spec(js);
                CuspidalityReport r = cuspidality_report(s, *p);
                Json result{{"covered", r.covered}, {"verdict", r.verdict}, {"reason", r.reason}, {"p", r.p},
                            {"kinds_certified", r.kinds_certified}, {"exact", true}};
                if (r.covered) result["level"] = level_json(r.level);
                Json cusps = Json::array();
                for (const auto& v : r.cusps)
                    cusps.push_back(Json{{"kind_vector", v.kind_vector}, {"kind", v.kind}, {"local_s", v.local_s},
                                         {"certified", v.certified}, {"method", v.method}});
                result["cusps"] = cusps;
                if (r.vanishing) result["vanishing"] = vanishing_json(*r.vanishing);
                Json input = js;
                input["p"] = *p;
                emit(g, c->get_name(), input, result, Json::object());
            };
        });
    }

    // cusp-reps
    {
        auto* c = app.add_subcommand("cusp-reps", "representatives of Q \\ Sp_n / P_{n-1} mod m");
        auto n = std::make_shared<int>(1);
        auto m = std::make_shared<std::int64_t>(3);
        c->add_option("--n", *n)->required();
        c->add_option("--m", *m, "prime or 2p")->required();
        c->callback([&, c, n, m] {
            job = [&, c, n, m] {
                Json reps = Json::array();
                for (const auto& r : crt_combine(*n, *m)) {
                    Json local = Json::array();
                    for (const auto& l : r.local)
                        local.push_back(Json{{"p", l.p}, {"kind", l.kind == CuspKind::m ? "m" : "m eta"}, {"s", matrix_json(l.s)},
                                             {"matrix", matrix_json(l.entries)}});
                    Json e{{"primes", r.primes}, {"kind_vector", r.kind_vector()}, {"local", local}};
                    if (*n == 1) e["sl2_lift"] = matrix_json(lift_sl2(
                                     [&] {
                                         // CRT of the local matrices
                                         IntMatrix a = IntMatrix::Zero(2, 2);
                                         std::int64_t mod = 1;
                                         for (const auto& l : r.local) {
                                             for (Eigen::Index k = 0; k < 4; ++k) {
                                                 std::int64_t x = a(k);
                                                 while (positive_mod(x, l.p) != l.entries(k)) x += mod;
                                                 a(k) = x;
                                             }
                                             mod *= l.p;
                                         }
                                         return a;
                                     }(),
                                     *m));
                    reps.push_back(e);
                }
                emit(g, c->get_name(), Json{{"n", *n}, {"m", *m}}, Json{{"count", reps.size()}, {"representatives", reps}, {"exact", true}},
                     Json::object());
            };
        });
    }

    // gamma-factors
    {
        auto* c = app.add_subcommand("gamma-factors", "Gamma_n, Gamma_rho and Gamma^{k,n}");
        auto n = std::make_shared<int>(1);
        auto s = std::make_shared<std::string>();
        auto rho = std::make_shared<std::string>(), h = std::make_shared<std::string>("0"), k = std::make_shared<std::string>();
        c->add_option("--n", *n)->required();
        c->add_option("--s", *s, "'re' or 're,im'")->required();
        c->add_option("--rho", *rho, "highest weight for Gamma_rho");
        c->add_option("--h", *h, "rational shift for Gamma_rho");
        c->add_option("--k", *k, "half-integral weight for Gamma^{k,n}");
        c->callback([&, c, n, s, rho, h, k] {
            job = [&, c, n, s, rho, h, k] {
                Complex z = parse_complex(*s);
                Json input{{"n", *n}, {"s", *s}};
                Json result;
                Complex sg = siegel_gamma(*n, z);
                result["siegel_gamma"] = numeric(sg, gamma_rel_error * *n * std::abs(sg));
                if (!rho->empty()) {
                    GLWeight w{*n, parse_int_list(*rho)};
                    Rational hh = schema("h", [&] { return parse_rational(*h); });
                    Complex v = gamma_rho(w, hh, z);
                    result["gamma_rho"] = numeric(v, gamma_rel_error * *n * std::abs(v));
                    input["rho"] = *rho;
                    input["h"] = *h;
                }
                if (!k->empty()) {
                    Rational kk = schema("k", [&] { return parse_rational(*k); });
                    Complex v = gamma_kn(kk, *n, z);
                    result["gamma_kn"] = numeric(v, gamma_rel_error * 4 * *n * std::abs(v));
                    result["gamma_kn_case"] = gamma_kn_case(kk, *n);
                    input["k"] = *k;
                }
                emit(g, c->get_name(), input, result, Json{{"gamma_relative_error", gamma_rel_error}});
            };
        });
    }

    // lambda-values
    {
        auto* c = app.add_subcommand("lambda-values", "Lambda_x^{m,kappa}(s, eta) as a truncated Euler product");
        auto m = std::make_shared<int>(1);
        auto kappa = std::make_shared<std::string>("1"), eta = std::make_shared<std::string>("1:0"), s = std::make_shared<std::string>();
        auto x = std::make_shared<std::int64_t>(1), pmax = std::make_shared<std::int64_t>(10000);
        c->add_option("--m", *m)->required();
        c->add_option("--kappa", *kappa)->required();
        c->add_option("--x", *x, "factors at p | x are removed");
        c->add_option("--eta", *eta, "character 'modulus:index'");
        c->add_option("--s", *s)->required();
        c->add_option("--pmax", *pmax, "largest prime in the product");
        c->callback([&, c, m, kappa, eta, s, x, pmax] {
            job = [&, c, m, kappa, eta, s, x, pmax] {
                LambdaValue v = lambda_factor(*m, schema("kappa", [&] { return parse_rational(*kappa); }), *x, parse_character(*eta),
                                              parse_complex(*s), *pmax);
                Json args = Json::array();
                for (Complex a : v.arguments) args.push_back(complex_json(a));
                emit(g, c->get_name(), Json{{"m", *m}, {"kappa", *kappa}, {"x", *x}, {"eta", *eta}, {"s", *s}, {"pmax", *pmax}},
                     Json{{"value", numeric(v.value, v.tail_bound)}, {"arguments", args}, {"squared", v.squared}},
                     Json{{"truncation", "primes <= pmax"}, {"tail_bound", v.tail_bound}});
            };
        });
    }

    // euler-factor
    {
        auto* c = app.add_subcommand("euler-factor", "coefficients of the local standard factor L_p(t)");
        auto file = std::make_shared<std::string>();
        auto p = std::make_shared<std::int64_t>(2);
        auto at_level = std::make_shared<bool>(false);
        c->add_option("--satake", *file, "Satake data JSON")->required()->check(CLI::ExistingFile);
        c->add_option("--p", *p)->required();
        c->add_flag("--at-level", *at_level, "use the factor for p | c");
        c->callback([&, c, file, p, at_level] {
            job = [&, c, file, p, at_level] {
                Json js = read_json_file(*file);
                SatakeData d = json_satake(js);
                auto coeffs = euler_factor(*p, d, *at_level);
                Json out = Json::array();
                for (Complex z : coeffs) out.push_back(numeric(z, 16 * eps * coeffs.size() * (1 + std::abs(z))));
                Json input = js;
                input["p"] = *p;
                input["at_level"] = *at_level;
                emit(g, c->get_name(), input, Json{{"degree", coeffs.size() - 1}, {"coefficients", out}}, Json::object());
            };
        });
    }

    // standard-l
    {
        auto* c = app.add_subcommand("standard-l", "truncated standard L-function");
        auto file = std::make_shared<std::string>(), chi = std::make_shared<std::string>("1:0"), s = std::make_shared<std::string>();
        auto bound = std::make_shared<std::int64_t>(100);
        c->add_option("--satake", *file)->required()->check(CLI::ExistingFile);
        c->add_option("--chi", *chi, "twist 'modulus:index'");
        c->add_option("--s", *s)->required();
        c->add_option("--prime-bound", *bound);
        c->callback([&, c, file, chi, s, bound] {
            job = [&, c, file, chi, s, bound] {
                Json js = read_json_file(*file);
                SatakeData d = json_satake(js);
                StandardLValue v = truncated_standard_L(parse_complex(*s), d, parse_character(*chi), *bound);
                Json input = js;
                input["chi"] = *chi;
                input["s"] = *s;
                input["prime_bound"] = *bound;
                const double rounding = 16 * eps * static_cast<double>(v.primes.size() + 1) * std::abs(v.value);
                emit(g, c->get_name(), input,
                     Json{{"value", numeric(v.value, rounding)}, {"primes", v.primes}, {"outside_convergence", v.outside_convergence},
                          {"convergence_abscissa", v.convergence_abscissa}},
                     Json{{"truncation", "product over the listed primes"}, {"error_bound", "floating-point rounding of the finite product"}});
            };
        });
    }

    // pole-report
    {
        auto* c = app.add_subcommand("pole-report", "predicted poles of the standard L-function");
        auto q = std::make_shared<PoleQuery>();
        auto k = std::make_shared<std::string>(), eta = std::make_shared<std::string>("1:0");
        auto nontrivial = std::make_shared<bool>(false);
        c->add_option("--n", q->n)->required();
        c->add_option("--k", *k)->required();
        c->add_option("--c", q->c);
        c->add_option("--y", q->y);
        c->add_option("--eta", *eta, "chi psi epsilon_tau as 'modulus:index'");
        c->add_flag("--psi-chi-square-nontrivial", *nontrivial);
        c->callback([&, c, q, k, eta, nontrivial] {
            job = [&, c, q, k, eta, nontrivial] {
                q->k = schema("k", [&] { return parse_rational(*k); });
                q->eta = parse_character(*eta);
                q->psi_chi_square_trivial = !*nontrivial;
                PoleReport r = pole_report(*q);
                Json poles = pole_list(r.exceptional_set);
                for (const auto& p : pole_list(r.lambda_ratio_poles)) poles.push_back(p);
                Json osc = Json::array();
                for (const auto& o : r.oscillatory)
                    osc.push_back(Json{{"p", o.p}, {"constituent", o.constituent}, {"real_part", o.real_part}, {"spacing", o.spacing},
                                       {"error_bound", 4 * eps * o.spacing}});
                emit(g, c->get_name(),
                     Json{{"n", q->n}, {"k", *k}, {"c", q->c}, {"y", q->y}, {"eta", *eta}, {"psi_chi_square_trivial", q->psi_chi_square_trivial}},
                     Json{{"case", r.case_label}, {"poles", poles}, {"exceptional_set", pole_list(r.exceptional_set)},
                          {"lambda_ratio_poles", pole_list(r.lambda_ratio_poles)}, {"oscillatory_zeros", osc}, {"simple", r.simple}},
                     Json::object());
            };
        });
    }

    // rankin-eval
    {
        auto* c = app.add_subcommand("rankin-eval", "truncated Rankin-Selberg series D(s, f, g)");
        auto f = std::make_shared<std::string>(), gg = std::make_shared<std::string>(), s = std::make_shared<std::string>();
        auto h = std::make_shared<std::string>("0");
        auto bound = std::make_shared<std::int64_t>(10);
        c->add_option("--f", *f, "family JSON")->required()->check(CLI::ExistingFile);
        c->add_option("--g", *gg, "family JSON, defaults to f")->check(CLI::ExistingFile);
        c->add_option("--s", *s)->required();
        c->add_option("--h", *h);
        c->add_option("--bound", *bound, "det R <= bound");
        c->callback([&, c, f, gg, s, h, bound] {
            job = [&, c, f, gg, s, h, bound] {
                Json jf = read_json_file(*f);
                Json jg = gg->empty() ? jf : read_json_file(*gg);
                CoefficientFamily F = json_family(jf, g.seed);
                CoefficientFamily G = gg->empty() ? F : json_family(jg, g.seed);
                RankinSeries r = rankin_series(parse_complex(*s), schema("h", [&] { return parse_rational(*h); }), F, G, *bound);
                Json partial = Json::array();
                for (const auto& [d, v] : r.partial_sums) partial.push_back(Json{{"det", d}, {"value", numeric(v, r.error_bound)}});
                Json terms = Json::array();
                for (const auto& t : r.terms)
                    terms.push_back(Json{{"R", matrix_json(t.R)}, {"det", t.det}, {"nu", to_string(t.nu)}, {"value", numeric(t.value, r.error_bound)}});
                emit(g, c->get_name(), Json{{"f", jf}, {"g", jg}, {"s", *s}, {"h", *h}, {"bound", *bound}},
                     Json{{"value", numeric(r.value, r.error_bound)}, {"det_bound", r.det_bound}, {"nonnegative_terms", r.nonnegative_terms},
                          {"operator", hermitian_json(r.base)}, {"terms", terms}, {"partial_sums", partial}},
                     Json{{"quadrature_tolerance", quadrature_tolerance}, {"family_tolerance", family_tolerance},
                          {"truncation", "reduced R with det R <= bound"}});
            };
        });
    }

    // unfold-check
    {
        auto* c = app.add_subcommand("unfold-check", "D(s, f, theta) against the unfolded sum over xi");
        auto f = std::make_shared<std::string>(), spec = std::make_shared<std::string>(), s = std::make_shared<std::string>();
        auto h = std::make_shared<std::string>("0");
        auto bound = std::make_shared<std::int64_t>(10);
        c->add_option("--family", *f)->required()->check(CLI::ExistingFile);
        c->add_option("--spec", *spec, "theta spec JSON")->required()->check(CLI::ExistingFile);
        c->add_option("--s", *s)->required();
        c->add_option("--h", *h);
        c->add_option("--bound", *bound);
        c->callback([&, c, f, spec, s, h, bound] {
            job = [&, c, f, spec, s, h, bound] {
                Json jf = read_json_file(*f), js = read_json_file(*spec);
                CoefficientFamily F = json_family(jf, g.seed);
                ThetaSpec th = json_theta_spec(js);
                UnfoldingCheck u = unfolding_check(F, th, parse_complex(*s), schema("h", [&] { return parse_rational(*h); }), *bound);
                const double err = std::max(u.quadrature_change, 1e-14) * (std::abs(u.lhs) + std::abs(u.rhs));
                emit(g, c->get_name(), Json{{"family", jf}, {"spec", js}, {"s", *s}, {"h", *h}, {"bound", *bound}},
                     Json{{"lhs", numeric(u.lhs, err)}, {"rhs", numeric(u.rhs, err)}, {"series", numeric(u.series, err)},
                          {"eigenvalue", numeric(u.eigenvalue, err)}, {"corrected_rhs", numeric(u.corrected_rhs, err)},
                          {"relative_error", u.relative_error}, {"corrected_relative_error", u.corrected_relative_error},
                          {"forms", u.forms}, {"cosets", u.cosets}, {"det_bound", u.det_bound}, {"quadrature_change", u.quadrature_change}},
                     Json{{"quadrature_tolerance", quadrature_tolerance}, {"truncation", "det R <= bound on both sides"}});
            };
        });
    }

    // maass-check
    {
        auto* c = app.add_subcommand("maass-check", "quadrature of the Maass integral against its closed forms");
        auto lambda = std::make_shared<std::string>(), s = std::make_shared<std::string>();
        c->add_option("--lambda", *lambda, "highest weight, n = len")->required();
        c->add_option("--s-plus-h", *s)->required();
        c->callback([&, c, lambda, s] {
            job = [&, c, lambda, s] {
                std::vector<int> m = parse_int_list(*lambda);
                MaassCheck r = maass_integral_check(GLWeight{static_cast<int>(m.size()), m}, parse_complex(*s));
                const double qerr = std::max(r.quadrature_change, 1e-14) * std::abs(r.quadrature);
                emit(g, c->get_name(), Json{{"lambda", *lambda}, {"s_plus_h", *s}},
                     Json{{"quadrature", numeric(r.quadrature, qerr)},
                          {"closed_form", numeric(r.closed_form, gamma_rel_error * std::abs(r.closed_form))},
                          {"corrected_form", numeric(r.corrected_form, gamma_rel_error * std::abs(r.corrected_form))},
                          {"relative_error", r.relative_error}, {"corrected_relative_error", r.corrected_relative_error}},
                     Json{{"quadrature_tolerance", quadrature_tolerance}, {"gamma_relative_error", gamma_rel_error}});
            };
        });
    }

    // verify-paper
    {
        auto* c = app.add_subcommand("verify-paper", "run the acceptance criteria");
        auto suite = std::make_shared<std::string>("all");
        auto quick = std::make_shared<bool>(false);
        c->add_option("--suite", *suite, "all, gauss, weights, pluriharm, rankin, forms, theta, cusps, analytic");
        c->add_flag("--quick", *quick, "reduced bounds");
        c->callback([&, c, suite, quick] {
            job = [&, c, suite, quick] {
                std::vector<int> ids;
                try {
                    ids = suite_criteria(*suite);
                } catch (const DomainError& e) {
                    throw SchemaError(e.what());
                }
                Json list = Json::array();
                bool all = true;
                for (int id : ids) {
                    CriterionResult r = run_criterion(id, *quick);
                    all = all && r.pass;
                    list.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
                }
                verify_exit = all ? 0 : 1;
                emit(g, c->get_name(), Json{{"suite", *suite}, {"quick", *quick}}, Json{{"pass", all}, {"criteria", list}},
                     Json{{"pinned", "per criterion, in the acceptance code"}});
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return error_exit("schema", e.what(), 2);
    }

    try {
        if (g.threads > 0) set_thread_count(g.threads);
        job();
    } catch (const SchemaError& e) {
        return error_exit("schema", e.what(), 2);
    } catch (const GuardError& e) {
        return error_exit("guard", e.what(), 4);
    } catch (const DomainError& e) {
        return error_exit("domain", e.what(), 3);
    } catch (const std::exception& e) {
        return error_exit("domain", e.what(), 3);
    }
    return verify_exit;
}
