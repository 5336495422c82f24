// stemcert: command-line front end.
//
// Exit codes: 0 success, 2 argument error, 3 verification failure.

#include "stemcert/stemcert.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace stemcert;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

struct Globals {
    bool json = false;
    std::uint64_t seed = 0;
    int samples = 0;  // 0: per-command default
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const json& j, const std::string& human) {
    if (g.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human << "\n";
}

hopf::Vec3 parse_point(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("bad coordinate '" + item + "'");
        }
    }
    if (v.size() != 3) throw UsageError("a point needs three comma-separated coordinates: " + text);
    hopf::Vec3 p{v[0], v[1], v[2]};
    if (p.norm() == 0) throw UsageError("point must be nonzero");
    return (1 / p.norm()) * p;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump() << "\n";
}

// ---------------------------------------------------------------------------

int run_adams(const Globals& g, const std::string& space, long k, const std::string& elem) {
    const auto model = kring::make_ring(kring::Space::parse(space));
    const auto x = kring::parse_element(model, elem);
    const auto y = kring::adams(k, x);
    emit(g, kring::to_json(y), kring::to_string(y));
    return kExitOk;
}

int run_einv(const Globals& g, const std::string& space, const std::vector<long>& primes) {
    const auto model = kring::make_ring(kring::Space::parse(space));
    const auto cert = einv::splitting_verdict(model, primes);
    std::ostringstream h;
    h << einv::to_string(cert.verdict) << ", e = " << cert.witness.e << "  (k = " << cert.witness.k
      << ", c = " << cert.witness.c << ", modulus = " << cert.witness.modulus << ")";
    for (const auto& w : cert.tested)
        h << "\n  k = " << w.k << ": c = " << w.c << ", k^b - k^a = " << w.modulus << ", e = " << w.e;
    h << "\n  order lower bound: " << cert.witness.e.den();
    json j = einv::to_json(cert);
    j["order_lower_bound"] = cert.witness.e.den().to_string();
    emit(g, j, h.str());
    return kExitOk;
}

int run_jorder(const Globals& g, long t, long K, long N) {
    const auto b = jorder::j_order_bound(t, K, N);
    std::string methods;
    for (auto m : b.methods) methods += (methods.empty() ? "" : ", ") + jorder::to_string(m);
    emit(g, jorder::to_json(b),
         "m(" + std::to_string(t) + ") = " + b.value.to_string() + "  [" + methods + "]" +
             (b.stable ? ", stable" : ", NOT stable"));
    return kExitOk;
}

int run_bernoulli(const Globals& g, long n) {
    const BigRational b = jorder::bernoulli(n);
    json j{{"n", n}, {"value", b.to_string()}};
    std::string human = "B_" + std::to_string(n) + " = " + b.to_string();
    if (n >= 2) {
        const BigInt vsc = jorder::von_staudt_clausen_denominator(n);
        j["von_staudt_clausen"] = vsc.to_string();
        if (vsc != b.den())
            throw VerificationFailure("denominator of B_" + std::to_string(n) + " is " + b.den().to_string() +
                                      ", von Staudt-Clausen predicts " + vsc.to_string());
        human += "  (denominator " + vsc.to_string() + " matches von Staudt-Clausen)";
    }
    emit(g, j, human);
    return kExitOk;
}

int run_feder_gitler(const Globals& g, long n, long k, long l, const std::string& bn_text) {
    const BigInt bn = bn_text.empty() ? jorder::hopf_bundle_j_order(n) : BigInt::parse(bn_text);
    const bool eq = jorder::feder_gitler_equivalent(n, k, l, bn);
    const jorder::StuntedSpace a{jorder::Family::QuaternionicP, n + k, k, 0};
    const jorder::StuntedSpace b{jorder::Family::QuaternionicP, n + l, l, 0};
    emit(g, json{{"n", n}, {"k", k}, {"l", l}, {"B", bn.to_string()}, {"equivalent", eq},
                 {"spaces", {a.name(), b.name()}}},
         a.pretty() + " and " + b.pretty() + (eq ? " are" : " are not") + " stably equivalent  (" +
             std::to_string(k) + " − " + std::to_string(l) + (eq ? " ≡ " : " ≢ ") + "0 mod " + bn.to_string() + ")");
    return kExitOk;
}

int run_thom(const Globals& g, const std::string& family, long n, long k, long suspend) {
    jorder::Family f;
    if (family == "hp")
        f = jorder::Family::QuaternionicP;
    else if (family == "cp")
        f = jorder::Family::ComplexP;
    else
        throw UsageError("family must be cp or hp");
    auto s = jorder::thom_space(f, n, k);
    s.suspension = suspend;
    const auto cells = s.cell_dimensions();
    std::string human = "T(" + std::to_string(k) + "η over " + (family == "hp" ? "HP" : "CP") + kring::detail::superscript(static_cast<int>(n)) +
                        ") = " + s.pretty() + ", cells in dimensions {";
    for (std::size_t i = 0; i < cells.size(); ++i) human += (i ? ", " : "") + std::to_string(cells[i]);
    emit(g, json{{"space", s.name()}, {"cells", cells}}, human + "}");
    return kExitOk;
}

int run_linking(const Globals& g, const std::string& p1_text, const std::string& p2_text, const std::string& file_a,
                const std::string& file_b, const std::string& export_path) {
    const int samples = g.samples ? g.samples : 512;
    double lk = 0;
    json j;
    if (!file_a.empty() || !file_b.empty()) {
        if (file_a.empty() || file_b.empty()) throw UsageError("--curve-a and --curve-b go together");
        const auto a = hopf::curve_from_json(read_json_file(file_a));
        const auto b = hopf::curve_from_json(read_json_file(file_b));
        lk = hopf::gauss_linking(a, b);
        j = {{"curve_a", file_a}, {"curve_b", file_b}};
    } else {
        std::mt19937_64 rng(g.seed);
        const hopf::Vec3 p1 = p1_text.empty() ? hopf::random_unit_vector(rng) : parse_point(p1_text);
        const hopf::Vec3 p2 = p2_text.empty() ? hopf::random_unit_vector(rng) : parse_point(p2_text);
        if ((p1 - p2).norm() < 1e-6) throw UsageError("fibers over the same point are not disjoint");
        const std::array<hopf::QuaternionCurve, 2> fibers{hopf::fiber_curve(p1, samples),
                                                          hopf::fiber_curve(p2, samples)};
        const auto pole = hopf::choose_pole(fibers, g.seed);
        const auto a = hopf::project(fibers[0], pole);
        const auto b = hopf::project(fibers[1], pole);
        lk = hopf::gauss_linking(a, b);
        j = {{"p1", {p1.x, p1.y, p1.z}}, {"p2", {p2.x, p2.y, p2.z}}, {"pole", {pole.w, pole.x, pole.y, pole.z}}};
        if (!export_path.empty()) write_json_file(export_path, {{"a", hopf::to_json(a)}, {"b", hopf::to_json(b)}});
    }
    const long rounded = std::lround(lk);
    j["samples"] = samples;
    j["linking"] = lk;
    j["rounded"] = rounded;
    std::ostringstream h;
    h.precision(6);
    h << std::fixed << "linking number " << lk << " (≈ " << rounded << ")";
    emit(g, j, h.str());
    if (std::abs(lk - static_cast<double>(rounded)) > 0.02)
        throw VerificationFailure("Gauss integral is not within 0.02 of an integer");
    return kExitOk;
}

std::vector<hopf::Rotation3> named_loop(const std::string& name, int steps, double s) {
    using hopf::LoopName;
    if (name == "gamma") return hopf::ball_loop(LoopName::Gamma, steps);
    if (name == "alpha") return hopf::ball_loop(LoopName::Alpha, steps);
    if (name == "beta") return hopf::ball_loop(LoopName::Beta, steps);
    if (name == "gamma-twice") {
        const auto g = hopf::ball_loop(LoopName::Gamma, steps);
        return hopf::concatenate(g, g);
    }
    if (name == "alpha-beta")
        return hopf::concatenate(hopf::ball_loop(LoopName::Alpha, steps), hopf::ball_loop(LoopName::Beta, steps));
    if (name == "gamma-matrix") return hopf::gamma_matrix_period(steps);
    if (name == "identity") return hopf::sample_path([](double) { return hopf::Rotation3::identity(); }, steps);
    if (name == "homotopy-alpha") return hopf::homotopy_slice(hopf::HomotopySide::Alpha, s, steps);
    if (name == "homotopy-beta") return hopf::homotopy_slice(hopf::HomotopySide::Beta, s, steps);
    throw UsageError("unknown loop: " + name);
}

std::vector<hopf::Rotation3> loop_from_file(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.is_array()) throw UsageError(path + ": expected an array of points");
    std::vector<hopf::Rotation3> out;
    for (const auto& p : j) {
        if (p.size() == 3)
            out.push_back(hopf::ball_to_rotation({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()}));
        else if (p.size() == 4)
            out.push_back(hopf::rot_from_quat(
                hopf::Quaternion{p[0].get<double>(), p[1].get<double>(), p[2].get<double>(), p[3].get<double>()}
                    .normalized()));
        else
            throw UsageError(path + ": points need 3 (ball) or 4 (quaternion) coordinates");
    }
    return out;
}

int run_lift(const Globals& g, const std::string& loop, double s, const std::string& file,
             const std::string& export_path) {
    const int steps = g.samples ? g.samples : 512;
    const auto path = file.empty() ? named_loop(loop, steps, s) : loop_from_file(file);
    const auto lift = hopf::lift_loop(path);
    const auto& end = lift.path.back();
    if (!export_path.empty()) write_json_file(export_path, hopf::to_json(std::span<const hopf::Quaternion>(lift.path)));
    emit(g,
         json{{"loop", file.empty() ? loop : file},
              {"steps", path.size() - 1},
              {"monodromy", lift.monodromy},
              {"lift_end", {end.w, end.x, end.y, end.z}}},
         (file.empty() ? loop : file) + ": monodromy " + (lift.monodromy < 0 ? "-1 (not null-homotopic in SO(3))"
                                                                             : "+1 (null-homotopic in SO(3))"));
    return kExitOk;
}

int run_report(const Globals& g, int stem) {
    const auto r = report::build_report(stem);
    const auto results = report::replay(r);
    std::ostringstream h;
    h << r.conclusion << "\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& s = r.steps[i];
        h << "  " << i + 1 << ". [" << to_string(s.status) << "] " << s.claim << "\n";
        h << "       " << (s.status == StepStatus::Computed ? "evidence: " + s.evidence.dump() : "source: " + s.reference)
          << "\n";
    }
    for (const auto& n : r.notes) h << "  note: " << n << "\n";
    bool ok = true;
    for (const auto& res : results) {
        if (!res.ok) {
            ok = false;
            h << "  REPLAY FAILED at step " << res.step + 1 << ": " << res.message << "\n";
        }
    }
    h << "  replay: " << results.size() << " computed steps " << (ok ? "re-verified" : "FAILED");
    json j = report::to_json(r);
    j["replay_ok"] = ok;
    emit(g, j, h.str());
    if (!ok) throw VerificationFailure("report replay failed");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certificates for the first three stable stems"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Emit JSON");
    app.add_option("--seed", g.seed, "Seed for randomized geometric checks");
    app.add_option("--samples", g.samples, "Sample count for curves and loops")->check(CLI::Range(16, 1 << 20));

    std::string space, elem, family, bn, p1, p2, file_a, file_b, export_path, loop = "gamma", file;
    long k = 0, t = 0, K = jorder::kDefaultGcdRange, N = 0, n = 0, l = 0, suspend = 0;
    double s = 0;
    int stem = 0;
    std::vector<long> primes = einv::default_primes();

    auto* adams = app.add_subcommand("adams", "Apply psi^k to a ring element");
    adams->add_option("--space", space, "cp<n>, hp<n>, s<2m>, s<2m>-smash-<space>")->required();
    adams->add_option("--k", k, "Adams operation index")->required();
    adams->add_option("--elem", elem, "Element, e.g. mu, 2mu + mu^2, mu*nu")->required();

    auto* ein = app.add_subcommand("einv", "Two-cell splitting verdict and e-invariant");
    ein->add_option("--space", space, "Two-cell space")->required();
    ein->add_option("--primes", primes, "Comma-separated k values")->delimiter(',');

    auto* jo = app.add_subcommand("jorder", "m(t) by three independent methods");
    jo->add_option("--t", t, "t >= 1")->required();
    jo->add_option("--K", K, "Largest k in the gcd");
    jo->add_option("--N", N, "Exponent N (default t + 10)");

    auto* bern = app.add_subcommand("bernoulli", "Exact Bernoulli number B_n");
    bern->add_option("--n", n, "Even n <= 200")->required();

    auto* fg = app.add_subcommand("feder-gitler", "Stable equivalence of HP^{n+k}/HP^{k-1} and HP^{n+l}/HP^{l-1}");
    fg->add_option("--n", n)->required();
    fg->add_option("--k", k)->required();
    fg->add_option("--l", l)->required();
    fg->add_option("--B", bn, "J-order B_n of the Hopf bundle (defaults to 24 for n = 1)");

    auto* th = app.add_subcommand("thom", "Thom space of k times the Hopf bundle over P^n");
    th->add_option("--family", family, "cp or hp")->required();
    th->add_option("--n", n)->required();
    th->add_option("--k", k)->required();
    th->add_option("--suspend", suspend, "Suspension offset N");

    auto* lk = app.add_subcommand("linking", "Gauss linking number of two Hopf fibers or two curves");
    lk->add_option("--p1", p1, "Base point x,y,z of the first fiber");
    lk->add_option("--p2", p2, "Base point x,y,z of the second fiber");
    lk->add_option("--curve-a", file_a, "JSON curve file");
    lk->add_option("--curve-b", file_b, "JSON curve file");
    lk->add_option("--export", export_path, "Write the projected fibers as JSON");

    auto* lift = app.add_subcommand("lift", "Lift a rotation loop to S^3 and report the monodromy");
    lift->add_option("--loop", loop,
                     "gamma, gamma-twice, alpha, beta, alpha-beta, gamma-matrix, identity, homotopy-alpha, homotopy-beta");
    lift->add_option("--s", s, "Homotopy parameter for homotopy-* loops")->check(CLI::Range(0.0, 1.0));
    lift->add_option("--file", file, "JSON loop: ball points [x,y,z] or quaternions [w,x,y,z]");
    lift->add_option("--export", export_path, "Write the lifted quaternion path as JSON");

    auto* rep = app.add_subcommand("report", "Derivation report for a stem");
    rep->add_option("--stem", stem, "1, 2 or 3")->required()->check(CLI::Range(1, 3));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*adams) return run_adams(g, space, k, elem);
        if (*ein) return run_einv(g, space, primes);
        if (*jo) return run_jorder(g, t, K, N);
        if (*bern) return run_bernoulli(g, n);
        if (*fg) return run_feder_gitler(g, n, k, l, bn);
        if (*th) return run_thom(g, family, n, k, suspend);
        if (*lk) return run_linking(g, p1, p2, file_a, file_b, export_path);
        if (*lift) return run_lift(g, loop, s, file, export_path);
        if (*rep) return run_report(g, stem);
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
