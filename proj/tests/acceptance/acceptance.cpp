// Shipping gate: prints one [PASS]/[FAIL] line per acceptance criterion
// and exits nonzero if any criterion fails. Criteria 1-7 drive the
// library directly; criterion 8 spawns the command-line tool and compares
// bytes against checked-in golden outputs.
//
// Usage: acceptance <cli-binary> <data-dir> <golden-dir>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "coindex/coindex.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace coindex;

namespace {

// Similarity of the built-in 128x128 test image to its noisiest copy
// (amplitude 0.5, seed 42). Recorded once and treated as a regression
// value: any drift in the image, the noise stream or the index breaks it.
constexpr double kPinnedNoisyImageIndex = 0.62993816907189948;
constexpr double kPinnedTolerance = 1e-9;

class CriterionLog {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) problems_.push_back(what);
    }
    template <typename T>
    void expect_eq(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream os;
            os << what << " (got " << got << ", want " << want << ")";
            problems_.push_back(os.str());
        }
    }
    void expect_close(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol)) {
            std::ostringstream os;
            os.precision(17);
            os << what << " (got " << got << ", want " << want << " +/- " << tol << ")";
            problems_.push_back(os.str());
        }
    }
    bool passed() const { return problems_.empty(); }
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---------------------------------------------------------------------------
// criterion 1: worked examples for the discrete indices

void worked_examples(CriterionLog& log) {
    const Set overlap_a{"s1", "s2", "s3", "s4", "s5"};
    const Set overlap_b{"s3", "s4", "s5", "s6", "s7"};
    const Set outer{"s1", "s2", "s3", "s4", "s5", "s6", "s7"};
    const Set inner{"s3", "s4", "s5"};
    log.expect_close(jaccard(overlap_a, overlap_b), 3.0 / 7.0, 1e-12,
                     "jaccard of the partially overlapping pair");
    log.expect_close(jaccard(outer, inner), 3.0 / 7.0, 1e-12,
                     "jaccard of the nested pair");
    log.expect_close(interiority(overlap_a, overlap_b), 3.0 / 5.0, 1e-12,
                     "interiority of the partially overlapping pair");
    log.expect_close(interiority(outer, inner), 1.0, 1e-12,
                     "interiority of the nested pair");

    const Multiset bag_a{{"a", 3}, {"b", 2}};
    const Multiset bag_b{{"a", 2}, {"b", 1}, {"c", 2}, {"d", 1}};
    log.expect_close(multiset_jaccard(bag_a, bag_b), 3.0 / 8.0, 1e-12,
                     "multiset jaccard of the worked bags");

    const WeightedSet wa{{"a", 2}, {"b", 5}, {"c", 1}};
    const WeightedSet wb{{"b", 5}, {"e", 1}, {"f", 1}};
    log.expect_close(weighted_jaccard(wa, wb), 0.5, 1e-12,
                     "weighted jaccard of the worked pair");

    const Multiset add_a{{"a", 3}, {"b", 1}, {"c", 3}};
    const Multiset add_b{{"a", 2}, {"c", 1}};
    log.expect_close(additive_multiset_jaccard(add_a, add_a), 1.0, 1e-12,
                     "additive index of identical bags");
    log.expect_close(additive_multiset_jaccard(add_a, add_b), 3.0 / 5.0, 1e-12,
                     "additive index of the worked bags");

    const Set chain_a{"a", "b", "c", "d", "e", "f", "g"};
    const Set chain_b{"e", "f", "g", "h", "i", "j", "k"};
    const Set chain_c{"i", "j", "k", "l", "m", "n", "o"};
    log.expect_close(chaining(chain_a, chain_b, chain_c), 6.0 / 7.0, 1e-12,
                     "chaining on the worked triple");
}

// ---------------------------------------------------------------------------
// criterion 2: orthogonal, identical and negated functions

void orthogonal_functions(CriterionLog& log) {
    const std::size_t n = 1 << 14;
    const double tau = 2.0 * std::numbers::pi;
    const MFunction f =
        discretize([](double x) { return std::cos(x); }, 0.0, tau, n);
    const MFunction g =
        discretize([](double x) { return std::sin(x); }, 0.0, tau, n);
    log.expect(std::fabs(field_jaccard(f, g)) <= 1e-6,
               "quarter-phase waves must compare to 0 within 1e-6");
    log.expect(field_jaccard(f, f) == 1.0, "self comparison must be exactly 1");
    MFunction neg = f;
    for (double& s : neg.samples) s = -s;
    log.expect(field_jaccard(f, neg) == -1.0,
               "negated comparison must be exactly -1");
}

// ---------------------------------------------------------------------------
// criterion 3: sliding-squares geometry against the rasterization oracle

void geometry(CriterionLog& log) {
    const auto t0 = std::chrono::steady_clock::now();

    // analytic boundary anchors
    for (const auto& [a, r] : std::vector<std::pair<double, double>>{
             {1.0, 0.5}, {50.0, 0.6}, {7.3, 1.0}}) {
        const double b = r * a;
        log.expect_close(overlap_areas({a, r, 0.0}).intersection, b * b,
                         1e-12 * b * b, "resting offset keeps B fully inside");
        log.expect_close(overlap_areas({a, r, (a - b) / 2.0}).intersection, b * b,
                         1e-12 * b * b, "containment boundary offset");
        log.expect_close(overlap_areas({a, r, (a + b) / 2.0}).intersection, 0.0,
                         1e-12 * a * a, "separation boundary offset");
    }

    // randomized battery against the pixel-coverage oracle
    SplitMix64 rng(511);
    for (int iter = 0; iter < 100; ++iter) {
        const double a = 0.5 + 99.5 * rng.next_unit();
        const double r = 0.05 + 0.95 * rng.next_unit();
        const double x = rng.next_unit() * 1.1 * (a + r * a) / 2.0;
        const OverlapAreas analytic = overlap_areas({a, r, x});
        const auto raster = oracle::raster_overlap(a, r, x, 2000);
        const double scale = a * a;
        std::ostringstream cfg;
        cfg.precision(17);
        cfg << "config a=" << a << " r=" << r << " x=" << x;
        log.expect(std::fabs(analytic.intersection - raster.intersection) / scale <=
                       1e-3,
                   cfg.str() + ": intersection disagrees with the raster oracle");
        log.expect(std::fabs(analytic.union_area - raster.union_area) / scale <= 1e-3,
                   cfg.str() + ": union disagrees with the raster oracle");
    }

    // every surface respects its bounds on the benchmark grid
    for (IndexKind kind :
         {IndexKind::Jaccard, IndexKind::Interiority, IndexKind::Coincidence,
          IndexKind::AdditiveJaccard, IndexKind::AdditiveCoincidence}) {
        const IndexField field = index_field(50.0, 200, 200, kind);
        bool in_bounds = true;
        for (double v : field.values) in_bounds = in_bounds && v >= 0.0 && v <= 1.0;
        log.expect(in_bounds, std::string("index surface out of [0,1]: ") +
                                  to_string(kind));
    }

    // the additive profile is affine while the overlap is partial
    const auto slices = index_slices(50.0, {30.0}, 101, IndexKind::AdditiveJaccard);
    const auto& vals = slices.front().values;
    bool affine = true;
    for (std::size_t i = 22; i + 2 < 78; ++i)
        affine = affine &&
                 std::fabs(vals[i] - 2.0 * vals[i + 1] + vals[i + 2]) <= 1e-9;
    log.expect(affine, "additive profile bends in the partial-overlap window");

    log.expect(seconds_since(t0) < 30.0, "geometry battery exceeded 30 s");
}

// ---------------------------------------------------------------------------
// criterion 4: ordering, coincidence and reduction invariants

void random_pair_invariants(CriterionLog& log) {
    SplitMix64 rng(1234);
    for (int iter = 0; iter < 1000; ++iter) {
        const auto ea = oracle::random_elements(rng, 10, 12);
        const auto eb = oracle::random_elements(rng, 10, 12);
        const Set a = oracle::to_set(ea);
        const Set b = oracle::to_set(eb);
        const double j = jaccard(a, b);
        const double i = interiority(a, b);
        const double c = coincidence(a, b);
        if (!(j <= i)) {
            log.expect(false, "jaccard exceeded interiority on pair " +
                                  std::to_string(iter));
            return;
        }
        if (std::fabs(c * c - j * i) > 1e-12) {
            log.expect(false, "coincidence^2 drifted from J*I on pair " +
                                  std::to_string(iter));
            return;
        }
        // 0/1 multisets must reduce to the set index without rounding
        Multiset ma, mb;
        for (const auto& e : a.elements()) ma.set_count(e, 1.0);
        for (const auto& e : b.elements()) mb.set_count(e, 1.0);
        if (multiset_jaccard(ma, mb) != j) {
            log.expect(false, "multiset reduction mismatch on pair " +
                                  std::to_string(iter));
            return;
        }
    }

    // integer bags embedded as zero-padded step functions reproduce the
    // multiset index exactly
    for (int iter = 0; iter < 200; ++iter) {
        const auto ba = oracle::random_bag(rng, 8, 8, true);
        const auto bb = oracle::random_bag(rng, 8, 8, true);
        const Multiset ma = oracle::to_multiset(ba);
        const Multiset mb = oracle::to_multiset(bb);
        MFunction f, g;
        f.dx = g.dx = 1.0;
        f.samples.assign(10, 0.0);
        g.samples.assign(10, 0.0);
        for (int e = 0; e < 8; ++e) {
            f.samples[1 + e] = ma.count("e" + std::to_string(e));
            g.samples[1 + e] = mb.count("e" + std::to_string(e));
        }
        const bool both_zero = ma.empty() && mb.empty();
        const double want = multiset_jaccard(ma, mb);
        if (!both_zero && field_jaccard(f, g) != want) {
            log.expect(false, "step-function embedding mismatch on bag pair " +
                                  std::to_string(iter));
            return;
        }
    }
    const MFunction fa{0.0, 1.0, {0.0, 3.0, 2.0, 0.0, 0.0, 0.0}};
    const MFunction fb{0.0, 1.0, {0.0, 2.0, 1.0, 2.0, 1.0, 0.0}};
    log.expect(field_jaccard(fa, fb) == 3.0 / 8.0,
               "worked step functions must score exactly 3/8");
}

// ---------------------------------------------------------------------------
// criterion 5: continuous fields against closed forms and the image battery

void field_battery(CriterionLog& log) {
    // unit-area triangle pulses, half-width 1, shifted by s
    const std::size_t n = 6145;
    for (double s : {0.3, 0.8, 1.5}) {
        const MFunction f = discretize(
            [](double x) { return std::max(0.0, 1.0 - std::fabs(x)); }, -2.0, 4.0, n);
        const MFunction g = discretize(
            [s](double x) { return std::max(0.0, 1.0 - std::fabs(x - s)); }, -2.0,
            4.0, n);
        const double w = (1.0 - s / 2.0) * (1.0 - s / 2.0);
        log.expect_close(field_jaccard(f, g), w / (2.0 - w), 1e-4,
                         "triangle jaccard at shift " + std::to_string(s));
        log.expect_close(field_interiority(f, g), w, 1e-4,
                         "triangle interiority at shift " + std::to_string(s));
        log.expect_close(field_coincidence(f, g), std::sqrt(w * w / (2.0 - w)), 1e-4,
                         "triangle coincidence at shift " + std::to_string(s));
    }

    // noise monotonicity and the pinned regression value
    const MField2D img = synthetic_image(128, 128);
    double prev = 2.0;
    double last = 0.0;
    for (double amplitude : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        const double j = noisy_image_experiment(img, amplitude, 42).jaccard;
        if (amplitude == 0.0)
            log.expect(j == 1.0, "zero noise must reproduce the image exactly");
        log.expect(j < prev, "similarity failed to fall at amplitude " +
                                 std::to_string(amplitude));
        prev = j;
        last = j;
    }
    log.expect_close(last, kPinnedNoisyImageIndex, kPinnedTolerance,
                     "pinned noisy-image regression value");
}

// ---------------------------------------------------------------------------
// criterion 6: correlation sweep ordering

void correlation_sweep(CriterionLog& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> rhos{0.0, 0.25, 0.5, 0.75, 0.95};
    const auto rows = gaussian_sweep(rhos, 5000, 7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        log.expect(rows[i].pearson > rows[i - 1].pearson,
                   "pearson not strictly increasing at rho " +
                       std::to_string(rows[i].rho));
        log.expect(rows[i].jaccard_correlation > rows[i - 1].jaccard_correlation,
                   "overlap correlation not strictly increasing at rho " +
                       std::to_string(rows[i].rho));
    }
    log.expect(rows.back().jaccard_correlation < rows.back().pearson,
               "overlap correlation must read below pearson at rho 0.95");
    log.expect(seconds_since(t0) < 5.0, "sweep exceeded 5 s");
}

// ---------------------------------------------------------------------------
// criterion 7: lag profile of a square pulse vs the NCC reference

void pulse_profiles(CriterionLog& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = 2561;  // [-2, 3] at dx = 1/512
    const double dx = 5.0 / 2560.0;
    auto pulse = [&](std::uint64_t noise_seed) {
        MFunction f = discretize(
            [](double x) { return (x >= 0.0 && x <= 1.0) ? 2.0 : 0.0; }, -2.0, 3.0,
            n);
        if (noise_seed != 0) {
            SplitMix64 rng(noise_seed);
            for (double& s : f.samples) s += rng.next_symmetric(0.05);
        }
        return f;
    };
    std::vector<double> lags;
    std::vector<long long> lag_steps;
    for (int k = -24; k <= 24; ++k) {
        lag_steps.push_back(k * 32);
        lags.push_back(static_cast<double>(k * 32) * dx);
    }
    const std::size_t center = 24;

    auto half_extent = [&](const std::vector<double>& values) {
        // widest |lag| whose value still reaches half of the center peak
        const double half = values[center] / 2.0;
        double extent = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] >= half)
                extent = std::max(extent, std::fabs(lags[i]));
        return extent;
    };

    for (const bool noisy : {false, true}) {
        const MFunction f = pulse(noisy ? 101 : 0);
        const MFunction g = pulse(noisy ? 202 : 0);
        const MFunction prof = mconvolution(f, g, lags);
        const std::string tag = noisy ? " (noisy)" : " (clean)";
        if (!noisy)
            log.expect(prof.samples[center] == 1.0,
                       "self profile must peak at exactly 1" + tag);
        else
            log.expect(prof.samples[center] > 0.9,
                       "noisy profile peak collapsed" + tag);
        bool peak_strict = true;
        for (std::size_t i = 0; i < prof.size(); ++i)
            if (i != center) peak_strict = peak_strict && prof.samples[i] < prof.samples[center];
        log.expect(peak_strict, "peak not strictly at lag zero" + tag);
        if (!noisy) {
            bool monotone = true;
            for (std::size_t i = center; i + 1 < prof.size(); ++i)
                monotone = monotone && prof.samples[i + 1] <= prof.samples[i] + 1e-12;
            for (std::size_t i = center; i > 0; --i)
                monotone = monotone && prof.samples[i - 1] <= prof.samples[i] + 1e-12;
            log.expect(monotone, "profile not monotone in |lag|" + tag);
        }
        const auto reference =
            oracle::ncc_profile(f.samples, g.samples, lag_steps);
        log.expect(half_extent(prof.samples) < half_extent(reference),
                   "overlap profile is not narrower than the NCC reference" + tag);
    }
    log.expect(seconds_since(t0) < 5.0, "pulse battery exceeded 5 s");
}

// ---------------------------------------------------------------------------
// criterion 8: command-line goldens, determinism and exit codes

int run_cli(const std::string& command, std::string& output) {
    output.clear();
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return -1;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void cli_goldens(CriterionLog& log, const std::string& cli, const fs::path& data,
                 const fs::path& golden) {
    auto quoted = [](const fs::path& p) { return "\"" + p.string() + "\""; };
    struct GoldenCase {
        std::string args;
        std::string file;
    };
    const std::vector<GoldenCase> cases{
        {"index --kind jaccard " + quoted(data / "overlap_a.json") + " " +
             quoted(data / "overlap_b.json"),
         "index_jaccard_overlap.txt"},
        {"chain " + quoted(data / "chain_a.json") + " " +
             quoted(data / "chain_b.json") + " " + quoted(data / "chain_c.json"),
         "chain_worked.txt"},
        {"index --kind interiority " + quoted(data / "nested_a.json") + " " +
             quoted(data / "nested_b.json"),
         "index_interiority_nested.txt"},
    };
    for (const auto& c : cases) {
        std::string out;
        const int rc = run_cli(cli + " " + c.args, out);
        log.expect_eq(rc, 0, "exit code of: " + c.args);
        const std::string want = slurp(golden / c.file);
        if (out != want)
            log.expect(false, "output of '" + c.args + "' is not byte-identical to " +
                                  c.file + " (got \"" + out + "\")");
    }

    // rerunning a seeded experiment must reproduce the file byte for byte
    const fs::path tmp1 = fs::temp_directory_path() / "coindex_accept_sweep1.csv";
    const fs::path tmp2 = fs::temp_directory_path() / "coindex_accept_sweep2.csv";
    std::string out;
    const std::string sweep_args =
        " sweep --rhos 0.2,0.6 --n 500 --seed 11 --out ";
    log.expect_eq(run_cli(cli + sweep_args + quoted(tmp1), out), 0,
                  "exit code of the first sweep run");
    log.expect_eq(run_cli(cli + sweep_args + quoted(tmp2), out), 0,
                  "exit code of the second sweep run");
    const std::string s1 = slurp(tmp1);
    log.expect(!s1.empty() && s1 == slurp(tmp2),
               "seeded sweep runs differ byte for byte");
    fs::remove(tmp1);
    fs::remove(tmp2);

    // exit codes: usage errors are 1, malformed or missing data is 2
    log.expect_eq(run_cli(cli + " index --kind nope x y", out), 1,
                  "unknown kind must be a usage error");
    log.expect_eq(run_cli(cli + " frobnicate", out), 1,
                  "unknown subcommand must be a usage error");
    log.expect_eq(run_cli(cli + " index --kind jaccard " +
                              quoted(data / "missing.json") + " " +
                              quoted(data / "overlap_b.json"),
                          out),
                  2, "unreadable input must be a data error");
    log.expect_eq(run_cli(cli + " --help", out), 0, "--help must exit cleanly");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: acceptance <cli-binary> <data-dir> <golden-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path data = argv[2];
    const fs::path golden = argv[3];

    struct Criterion {
        std::string title;
        std::function<void(CriterionLog&)> run;
    };
    const std::vector<Criterion> criteria{
        {"worked examples across the discrete index family", worked_examples},
        {"orthogonal, identical and negated function comparisons",
         orthogonal_functions},
        {"sliding-squares geometry vs the rasterization oracle", geometry},
        {"ordering, coincidence and reduction invariants on random pairs",
         random_pair_invariants},
        {"continuous fields: closed forms and the noisy-image battery",
         field_battery},
        {"correlation sweep ordering and separation", correlation_sweep},
        {"pulse lag profiles vs the cross-correlation reference", pulse_profiles},
        {"command-line goldens, determinism and exit codes",
         [&](CriterionLog& log) { cli_goldens(log, cli, data, golden); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CriterionLog log;
        criteria[i].run(log);
        const bool ok = log.passed();
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": "
                  << criteria[i].title << '\n';
        for (const auto& problem : log.problems())
            std::cout << "       - " << problem << '\n';
        if (!ok) ++failed;
    }
    if (failed != 0) {
        std::cout << failed << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
