// Command-line front end for the similarity-index library. Prints scalar
// results with six fixed decimals; bulk results go to CSV or PGM files.
// Exit codes: 0 success, 1 usage error, 2 unreadable or malformed data.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coindex/coindex.hpp"

namespace {

void print_scalar(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::cout << buf << '\n';
}

coindex::CoincidenceForm form_from(const std::string& name) {
    return name == "product" ? coindex::CoincidenceForm::Product
                             : coindex::CoincidenceForm::SqrtProduct;
}

// Pairwise `index` dispatch. The requested kind dictates which collection
// kinds the two input files must hold.
void run_index(const std::string& kind, const std::string& form,
               const std::filesystem::path& file_a,
               const std::filesystem::path& file_b, double power) {
    using coindex::Collection;
    if (kind == "matrix") {
        print_scalar(coindex::matrix_jaccard(coindex::load_matrix_csv(file_a),
                                             coindex::load_matrix_csv(file_b)));
        return;
    }
    if (kind == "weighted") {
        print_scalar(coindex::weighted_jaccard(coindex::load_weighted_set(file_a),
                                               coindex::load_weighted_set(file_b)));
        return;
    }
    if (kind == "multiset" || kind == "additive" || kind == "additive_coincidence") {
        const coindex::Multiset a = coindex::load_multiset(file_a);
        const coindex::Multiset b = coindex::load_multiset(file_b);
        if (kind == "multiset")
            print_scalar(coindex::multiset_jaccard(a, b));
        else if (kind == "additive")
            print_scalar(coindex::additive_multiset_jaccard(a, b));
        else
            print_scalar(coindex::additive_coincidence(a, b));
        return;
    }
    if (kind == "interiority" || kind == "coincidence") {
        // these two make sense for sets and multisets alike
        const Collection a = coindex::load_collection(file_a);
        const Collection b = coindex::load_collection(file_b);
        if (a.kind == Collection::Kind::Set && b.kind == Collection::Kind::Set) {
            print_scalar(kind == "interiority"
                             ? coindex::interiority(a.set, b.set)
                             : coindex::coincidence(a.set, b.set, form_from(form)));
            return;
        }
        if (a.kind == Collection::Kind::Multiset &&
            b.kind == Collection::Kind::Multiset) {
            print_scalar(kind == "interiority"
                             ? coindex::interiority(a.multiset, b.multiset)
                             : coindex::coincidence(a.multiset, b.multiset,
                                                    form_from(form)));
            return;
        }
        throw coindex::data_error(file_a, "kind \"" + kind +
                                              "\" needs two sets or two multisets");
    }
    // jaccard, distance, power
    const coindex::Set a = coindex::load_set(file_a);
    const coindex::Set b = coindex::load_set(file_b);
    if (kind == "jaccard")
        print_scalar(coindex::jaccard(a, b));
    else if (kind == "distance")
        print_scalar(coindex::jaccard_distance(a, b));
    else
        print_scalar(coindex::jaccard_power(a, b, power));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "coindex: shared-fraction, containment and coincidence indices for "
        "sets, multisets, shapes, sampled functions and experiments"};
    app.require_subcommand(1);

    const std::vector<std::string> surface_kinds{
        "jaccard", "interiority", "coincidence", "additive_jaccard",
        "additive_coincidence"};

    // --- index -------------------------------------------------------------
    auto* index_cmd =
        app.add_subcommand("index", "Pairwise index of two collection files");
    std::string index_kind;
    std::string coincidence_form = "sqrt";
    double power_exponent = 2.0;
    std::filesystem::path index_a, index_b;
    index_cmd
        ->add_option("--kind", index_kind, "Which index to compute")
        ->required()
        ->check(CLI::IsMember({"jaccard", "distance", "power", "interiority",
                               "coincidence", "multiset", "additive",
                               "additive_coincidence", "weighted", "matrix"}));
    index_cmd->add_option("--p", power_exponent,
                          "Exponent for --kind power (default 2)");
    index_cmd
        ->add_option("--form", coincidence_form,
                     "Coincidence flavour: geometric mean or plain product")
        ->check(CLI::IsMember({"sqrt", "product"}));
    index_cmd->add_option("a", index_a, "First collection (JSON, or CSV for matrix)")
        ->required();
    index_cmd->add_option("b", index_b, "Second collection")->required();
    index_cmd->callback([&] {
        run_index(index_kind, coincidence_form, index_a, index_b, power_exponent);
    });

    // --- expr ----------------------------------------------------------------
    auto* expr_cmd = app.add_subcommand(
        "expr", "Jaccard index of two set expressions over named sets");
    std::string expr_a, expr_b;
    std::filesystem::path env_path;
    expr_cmd->add_option("expr_a", expr_a, "First expression, e.g. \"(A & B) | C\"")
        ->required();
    expr_cmd->add_option("expr_b", expr_b, "Second expression")->required();
    expr_cmd->add_option("--env", env_path, "JSON object: set name -> element array")
        ->required();
    expr_cmd->callback([&] {
        const auto env = coindex::load_set_env(env_path);
        print_scalar(coindex::composite_jaccard(expr_a, expr_b, env));
    });

    // --- chain ---------------------------------------------------------------
    auto* chain_cmd = app.add_subcommand(
        "chain", "Indirect association of A and C through reference set B");
    std::filesystem::path chain_a, chain_b, chain_c;
    double tau = 0.0;
    chain_cmd->add_option("a", chain_a, "Left set (JSON)")->required();
    chain_cmd->add_option("b", chain_b, "Reference set (JSON)")->required();
    chain_cmd->add_option("c", chain_c, "Right set (JSON)")->required();
    chain_cmd->add_option("--tau", tau, "Minimum link overlap, 0 disables the gate")
        ->check(CLI::Range(0.0, 1.0));
    chain_cmd->callback([&] {
        print_scalar(coindex::chaining(coindex::load_set(chain_a),
                                       coindex::load_set(chain_b),
                                       coindex::load_set(chain_c), tau));
    });

    // --- nary ----------------------------------------------------------------
    auto* nary_cmd =
        app.add_subcommand("nary", "Joint index of three or more set files");
    std::string nary_kind;
    std::vector<std::filesystem::path> nary_files;
    nary_cmd->add_option("--kind", nary_kind, "Which joint index to compute")
        ->required()
        ->check(CLI::IsMember({"jaccard", "interiority", "coincidence"}));
    nary_cmd->add_option("sets", nary_files, "Set files (JSON)")
        ->required()
        ->expected(3, -1);
    nary_cmd->callback([&] {
        coindex::SetFamily family;
        family.reserve(nary_files.size());
        for (const auto& path : nary_files) family.push_back(coindex::load_set(path));
        if (nary_kind == "jaccard")
            print_scalar(coindex::jaccard_n(family));
        else if (nary_kind == "interiority")
            print_scalar(coindex::interiority_n(family));
        else
            print_scalar(coindex::coincidence_n(family));
    });

    // --- grid ----------------------------------------------------------------
    auto* grid_cmd = app.add_subcommand(
        "grid", "Sliding-squares index surface over (offset, ratio)");
    std::string grid_kind = "jaccard";
    double grid_side = 50.0;
    std::size_t grid_nx = 200, grid_nr = 200;
    std::filesystem::path grid_out;
    grid_cmd->add_option("--index", grid_kind, "Index surface to trace")
        ->check(CLI::IsMember(surface_kinds));
    grid_cmd->add_option("--a", grid_side, "Side of the fixed square");
    grid_cmd->add_option("--nx", grid_nx, "Offset samples");
    grid_cmd->add_option("--nr", grid_nr, "Ratio samples");
    grid_cmd->add_option("--out", grid_out, "Output CSV (x,r,value)")->required();
    grid_cmd->callback([&] {
        coindex::write_index_field_csv(
            coindex::index_field(grid_side, grid_nx, grid_nr,
                                 coindex::index_kind_from_string(grid_kind)),
            grid_out);
    });

    // --- slices ----------------------------------------------------------------
    auto* slices_cmd = app.add_subcommand(
        "slices", "Constant-ratio index profiles along the offset axis");
    std::string slices_kind = "jaccard";
    double slices_side = 50.0;
    std::vector<double> slice_sides;
    std::size_t slices_nx = 200;
    std::filesystem::path slices_out;
    slices_cmd->add_option("--index", slices_kind, "Index profile to trace")
        ->check(CLI::IsMember(surface_kinds));
    slices_cmd->add_option("--a", slices_side, "Side of the fixed square");
    slices_cmd
        ->add_option("--b", slice_sides, "Small-square sides (comma separated)")
        ->required()
        ->delimiter(',');
    slices_cmd->add_option("--nx", slices_nx, "Offset samples");
    slices_cmd->add_option("--out", slices_out, "Output CSV (b,x,value)")->required();
    slices_cmd->callback([&] {
        coindex::write_slices_csv(
            coindex::index_slices(slices_side, slice_sides, slices_nx,
                                  coindex::index_kind_from_string(slices_kind)),
            slices_out);
    });

    // --- density ---------------------------------------------------------------
    auto* density_cmd = app.add_subcommand(
        "density", "Index of two sampled functions on one support");
    std::string density_kind = "jaccard";
    std::filesystem::path density_f, density_g, scatter_out;
    density_cmd->add_option("f", density_f, "First function CSV (x,value)")
        ->required();
    density_cmd->add_option("g", density_g, "Second function CSV")->required();
    density_cmd->add_option("--kind", density_kind, "Index to compute")
        ->check(CLI::IsMember({"jaccard", "interiority", "coincidence"}));
    density_cmd->add_option("--scatter", scatter_out,
                            "Also write the joint-variation pairs (mA,mB,region)");
    density_cmd->callback([&] {
        const coindex::MFunction f = coindex::load_mfunction_csv(density_f);
        const coindex::MFunction g = coindex::load_mfunction_csv(density_g);
        if (!scatter_out.empty())
            coindex::write_scatter_csv(coindex::scatter_pairs(f, g), scatter_out);
        if (density_kind == "jaccard")
            print_scalar(coindex::field_jaccard(f, g));
        else if (density_kind == "interiority")
            print_scalar(coindex::field_interiority(f, g));
        else
            print_scalar(coindex::field_coincidence(f, g));
    });

    // --- mconv ---------------------------------------------------------------
    auto* mconv_cmd = app.add_subcommand(
        "mconv", "Similarity profile of f against lag-shifted g");
    std::filesystem::path mconv_f, mconv_g, mconv_out;
    double lag_min = 0.0, lag_max = 0.0, lag_step = 0.0;
    mconv_cmd->add_option("f", mconv_f, "First function CSV (x,value)")->required();
    mconv_cmd->add_option("g", mconv_g, "Second function CSV")->required();
    mconv_cmd->add_option("--lag-min", lag_min, "Smallest lag")->required();
    mconv_cmd->add_option("--lag-max", lag_max, "Largest lag")->required();
    mconv_cmd->add_option("--lag-step", lag_step,
                          "Lag spacing (default: the sample spacing)");
    mconv_cmd->add_option("--out", mconv_out, "Output CSV (x,value)")->required();
    mconv_cmd->callback([&] {
        const coindex::MFunction f = coindex::load_mfunction_csv(mconv_f);
        const coindex::MFunction g = coindex::load_mfunction_csv(mconv_g);
        if (lag_max < lag_min)
            throw CLI::ValidationError("mconv", "--lag-max must be >= --lag-min");
        // snap the requested range to whole sample steps
        const double dx = f.dx;
        const auto k0 = static_cast<long long>(std::llround(lag_min / dx));
        const auto k1 = static_cast<long long>(std::llround(lag_max / dx));
        long long ks = lag_step > 0.0
                           ? static_cast<long long>(std::llround(lag_step / dx))
                           : 1;
        if (ks < 1) ks = 1;
        std::vector<double> lags;
        for (long long k = k0; k <= k1; k += ks)
            lags.push_back(static_cast<double>(k) * dx);
        coindex::write_mfunction_csv(coindex::mconvolution(f, g, lags), mconv_out);
    });

    // --- image ---------------------------------------------------------------
    auto* image_cmd = app.add_subcommand(
        "image", "Similarity of an image to a noise-perturbed copy");
    std::filesystem::path image_path, noisy_out;
    bool synthetic = false;
    std::size_t synth_w = 128, synth_h = 128;
    double amplitude = 0.0;
    std::uint64_t image_seed = 1;
    image_cmd->add_option("image", image_path, "Plain PGM (P2) image");
    image_cmd->add_flag("--synthetic", synthetic,
                        "Use the built-in deterministic test image");
    image_cmd->add_option("--width", synth_w, "Synthetic image width");
    image_cmd->add_option("--height", synth_h, "Synthetic image height");
    image_cmd
        ->add_option("--amplitude", amplitude, "Uniform noise amplitude, >= 0")
        ->required()
        ->check(CLI::NonNegativeNumber);
    image_cmd->add_option("--seed", image_seed, "Noise seed");
    image_cmd->add_option("--noisy-out", noisy_out, "Write the noisy image (PGM)");
    image_cmd->callback([&] {
        if (synthetic == !image_path.empty())
            throw CLI::ValidationError(
                "image", "give either a PGM path or --synthetic, not both");
        const coindex::MField2D img = synthetic
                                          ? coindex::synthetic_image(synth_w, synth_h)
                                          : coindex::load_pgm(image_path);
        const auto result = coindex::noisy_image_experiment(img, amplitude, image_seed);
        if (!noisy_out.empty()) coindex::write_pgm(result.noisy, noisy_out);
        print_scalar(result.jaccard);
    });

    // --- sweep ---------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Pearson vs overlap correlation on correlated normal draws");
    std::vector<double> rhos;
    std::size_t sweep_n = 5000;
    std::uint64_t sweep_seed = 7;
    std::filesystem::path sweep_out;
    sweep_cmd->add_option("--rhos", rhos, "Target correlations in (-1, 1)")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(-0.999999, 0.999999));
    sweep_cmd->add_option("--n", sweep_n, "Draws per correlation")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    sweep_cmd->add_option("--seed", sweep_seed, "Master seed");
    sweep_cmd
        ->add_option("--out", sweep_out,
                     "Output CSV (rho,pearson,jaccard_correlation)")
        ->required();
    sweep_cmd->callback([&] {
        coindex::write_sweep_csv(coindex::gaussian_sweep(rhos, sweep_n, sweep_seed),
                                 sweep_out);
    });

    // --- clustersep ------------------------------------------------------------
    auto* cluster_cmd = app.add_subcommand(
        "clustersep", "Density overlap of two labelled point clouds");
    std::filesystem::path cluster_a, cluster_b;
    double bandwidth = 0.0;
    std::size_t cluster_n = 256;
    double pad = 4.0;
    cluster_cmd->add_option("a", cluster_a, "First cloud CSV (x,y)")->required();
    cluster_cmd->add_option("b", cluster_b, "Second cloud CSV (x,y)")->required();
    cluster_cmd->add_option("--bandwidth", bandwidth,
                            "Kernel bandwidth (default: rule of thumb on the pool)");
    cluster_cmd->add_option("--grid-n", cluster_n, "Grid samples per axis")
        ->check(CLI::Range(std::size_t{2}, std::size_t{8192}));
    cluster_cmd->add_option("--pad", pad, "Grid margin in bandwidths")
        ->check(CLI::NonNegativeNumber);
    cluster_cmd->callback([&] {
        const auto pts_a = coindex::load_points_csv(cluster_a);
        const auto pts_b = coindex::load_points_csv(cluster_b);
        std::vector<std::array<double, 2>> pool = pts_a;
        pool.insert(pool.end(), pts_b.begin(), pts_b.end());
        const double h = bandwidth > 0.0 ? bandwidth : coindex::silverman_bandwidth(pool);
        double x0 = pool[0][0], x1 = pool[0][0], y0 = pool[0][1], y1 = pool[0][1];
        for (const auto& p : pool) {
            x0 = std::min(x0, p[0]);
            x1 = std::max(x1, p[0]);
            y0 = std::min(y0, p[1]);
            y1 = std::max(y1, p[1]);
        }
        const coindex::GridSpec2D grid{x0 - pad * h, x1 + pad * h, cluster_n,
                                       y0 - pad * h, y1 + pad * h, cluster_n};
        print_scalar(coindex::cluster_separation(pts_a, pts_b, grid, h));
    });

    // --- corr ----------------------------------------------------------------
    auto* corr_cmd = app.add_subcommand(
        "corr", "Correlation of paired samples from a two-column CSV");
    std::string corr_kind = "jaccard";
    std::filesystem::path corr_path;
    corr_cmd->add_option("--kind", corr_kind, "pearson or jaccard")
        ->check(CLI::IsMember({"pearson", "jaccard"}));
    corr_cmd->add_option("pairs", corr_path, "Paired samples CSV (x,y)")->required();
    corr_cmd->callback([&] {
        const auto [xs, ys] = coindex::load_paired_csv(corr_path);
        print_scalar(corr_kind == "pearson" ? coindex::pearson(xs, ys)
                                            : coindex::jaccard_correlation(xs, ys));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const coindex::data_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const coindex::SetExprError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
