// lsbmark: embed, extract, attack and evaluate fragile LSB watermarks in
// 8-bit grayscale BMP images.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lsbmark/attack.hpp"
#include "lsbmark/bmp.hpp"
#include "lsbmark/metrics.hpp"
#include "lsbmark/watermark.hpp"

namespace fs = std::filesystem;
using namespace lsbmark;

namespace {

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

std::string format_double(double v, int decimals = 6) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(decimals);
    os << v;
    return os.str();
}

std::string format_psnr(const QualityScore& q) {
    return q.finite() ? format_double(q.psnr_db) : "inf";
}

// Copies of the whole payload: the smallest copy count over the plane
// regions that carry payload bytes.
std::uint64_t full_copy_count(const std::vector<RegionLayout>& regions) {
    std::uint64_t count = 0;
    bool any = false;
    for (const auto& r : regions) {
        if (r.bytes == 0) {
            continue;
        }
        count = any ? std::min(count, r.copies) : r.copies;
        any = true;
    }
    return any ? count : 0;
}

std::string effective_planes(const std::vector<RegionLayout>& regions) {
    std::string out;
    for (const auto& r : regions) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(r.plane.index());
    }
    return out;
}

int max_pixel_delta(const GrayImage& a, const GrayImage& b) {
    int max_delta = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        max_delta = std::max(max_delta, std::abs(int(a.pixels[i]) - int(b.pixels[i])));
    }
    return max_delta;
}

struct SchemeFlags {
    std::string planes = "1";
    std::string scheme = "proposed";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint64_t start = 1;
};

void add_scheme_flags(CLI::App* cmd, SchemeFlags& flags) {
    cmd->add_option("--planes", flags.planes, "bit planes: 1|2|3|4|1,2|...|auto")
        ->capture_default_str();
    cmd->add_option("--scheme", flags.scheme, "proposed|lsb|lee")->capture_default_str();
    cmd->add_option("--seed", flags.seed, "key for the lee scheme");
    cmd->add_option("--start", flags.start, "1-based linear index of the first header pixel")
        ->capture_default_str();
}

EmbedRecipe build_recipe(const SchemeFlags& flags) {
    EmbedRecipe recipe;
    recipe.scheme = parse_scheme(flags.scheme);
    if (flags.planes == "auto") {
        recipe.planes = PlaneSet::of({1});
        recipe.auto_overflow = true;
    } else {
        recipe.planes = PlaneSet::parse(flags.planes);
    }
    recipe.start = LinearIndex{flags.start};
    if (flags.seed_given) {
        recipe.seed = flags.seed;
    }
    return recipe;
}

// ---- embed ----------------------------------------------------------------

struct EmbedOpts {
    std::string in, out, text, text_file;
    SchemeFlags flags;
};

void run_embed(const EmbedOpts& o) {
    const GrayImage cover = read_bmp(o.in);
    const Payload payload = o.text_file.empty() ? Payload::from_text(o.text)
                                                : Payload::from_bytes(read_file_bytes(o.text_file));
    const EmbedRecipe recipe = build_recipe(o.flags);
    const auto regions = plan_regions(cover.pixel_count(), payload.size(), recipe);
    const GrayImage marked = embed(cover, payload, recipe);
    write_bmp(marked, o.out);

    std::uint64_t capacity = 0;
    if (recipe.scheme == Scheme::lee) {
        capacity = cover.pixel_count() / 8 - 2;
    } else {
        const std::uint64_t rlen = cover.pixel_count() - (recipe.start.value - 1);
        capacity = regions.size() * ((rlen - 16) / 8);
    }
    const QualityScore q = psnr(cover, marked);
    std::cout << "scheme=" << scheme_name(recipe.scheme) << "\n";
    std::cout << "planes=" << effective_planes(regions) << "\n";
    std::cout << "capacity=" << capacity << "\n";
    std::cout << "payload_bytes=" << payload.size() << "\n";
    std::cout << "copies=" << full_copy_count(regions) << "\n";
    std::cout << "max_delta=" << max_pixel_delta(cover, marked) << "\n";
    std::cout << "mse=" << format_double(q.mse) << "\n";
    std::cout << "psnr=" << format_psnr(q) << "\n";
}

// ---- extract ---------------------------------------------------------------

struct ExtractOpts {
    std::string in;
    SchemeFlags flags;
    std::int64_t copy = -1;
    bool vote = false;
};

void run_extract(const ExtractOpts& o) {
    const GrayImage img = read_bmp(o.in);
    const EmbedRecipe recipe = build_recipe(o.flags);
    const ExtractionReport report = extract(img, recipe);

    const std::vector<std::uint8_t>* selected = &report.consensus;
    if (o.copy >= 0) {
        if (std::uint64_t(o.copy) >= report.copies.size()) {
            throw ParamError("copy index " + std::to_string(o.copy) + " out of range: " +
                             std::to_string(report.copies.size()) + " copies");
        }
        selected = &report.copies[std::size_t(o.copy)];
    }
    std::cout << "length=" << report.length << "\n";
    std::cout << "copies=" << report.copies.size() << "\n";
    std::cout << "agreement=" << format_double(report.agreement) << "\n";
    std::cout << "text=" << std::string(selected->begin(), selected->end()) << "\n";
}

// ---- psnr ------------------------------------------------------------------

void run_psnr(const std::string& a_path, const std::string& b_path) {
    const QualityScore q = psnr(read_bmp(a_path), read_bmp(b_path));
    std::cout << "mse=" << format_double(q.mse) << "\n";
    std::cout << "psnr=" << format_psnr(q) << "\n";
}

// ---- attack ----------------------------------------------------------------

struct CropOpts {
    std::string in, out;
    std::uint32_t width = 0, height = 0, ox = 0, oy = 0;
    bool remap = false;
    std::uint32_t fill = 0;
};

void run_crop(const CropOpts& o) {
    const GrayImage img = read_bmp(o.in);
    const CropSpec spec{o.oy, o.ox, o.width, o.height};
    GrayImage out = crop(img, spec);
    if (o.remap) {
        out = remap_cropped(out, spec, img.width, img.height, std::uint8_t(o.fill));
    }
    write_bmp(out, o.out);
    std::cout << "op=crop\nox=" << o.ox << "\noy=" << o.oy << "\nwidth=" << o.width
              << "\nheight=" << o.height << "\nremap=" << (o.remap ? 1 : 0)
              << "\nfill=" << o.fill << "\n";
}

struct NoiseOpts {
    std::string in, out;
    double density = 0.01;
    std::uint64_t seed = 0;
};

void run_noise(const NoiseOpts& o) {
    const GrayImage img = read_bmp(o.in);
    const GrayImage noisy = salt_pepper(img, o.density, o.seed);
    write_bmp(noisy, o.out);
    std::size_t corrupted = 0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        corrupted += img.pixels[i] != noisy.pixels[i];
    }
    std::cout << "op=noise\ndensity=" << format_double(o.density) << "\nseed=" << o.seed
              << "\nchanged=" << corrupted << "\n";
}

struct DiffOpts {
    std::string bmp, lossy, out;
};

void run_diff(const DiffOpts& o) {
    const DifferenceArray diff = compute_difference(read_bmp(o.bmp), read_bmp(o.lossy));
    write_lsbd(diff, o.out);
    std::cout << "op=diff\nwidth=" << diff.width << "\nheight=" << diff.height << "\n";
}

struct RestoreOpts {
    std::string lossy, diff, out;
};

void run_restore(const RestoreOpts& o) {
    const GrayImage restored = restore(read_bmp(o.lossy), read_lsbd(o.diff));
    write_bmp(restored, o.out);
    std::cout << "op=restore\nwidth=" << restored.width << "\nheight=" << restored.height << "\n";
}

// ---- report ----------------------------------------------------------------

struct ReportOpts {
    std::string images_dir, text_file, out;
    std::uint64_t seed = 1;
};

struct ReportRow {
    std::string image;
    std::string scheme;
    std::string planes;
    std::uint64_t payload_bytes = 0;
    QualityScore quality;
    int max_delta = 0;
    std::uint64_t copies = 0;
};

const std::vector<std::vector<int>>& report_plane_sets() {
    // Lexicographic order, matching the row sort.
    static const std::vector<std::vector<int>> sets = {
        {1}, {1, 2}, {1, 3}, {1, 4}, {2}, {2, 3}, {2, 4}, {3}, {3, 4}, {4},
    };
    return sets;
}

std::string planes_file_tag(const PlaneSet& planes) {
    std::string tag = "p";
    for (const Plane& p : planes.planes()) {
        tag += char('0' + p.index());
    }
    return tag;
}

void run_report(const ReportOpts& o) {
    std::vector<fs::path> covers;
    for (const auto& entry : fs::directory_iterator(o.images_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".bmp") {
            covers.push_back(entry.path());
        }
    }
    if (covers.empty()) {
        throw ParamError("no .bmp images found in " + o.images_dir);
    }
    std::sort(covers.begin(), covers.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    const std::vector<std::uint8_t> text = read_file_bytes(o.text_file);
    const fs::path out_dir = fs::path(o.out).parent_path().empty()
                                 ? fs::path(".")
                                 : fs::path(o.out).parent_path();

    // Schemes in name order so rows come out sorted without a final sort.
    const Scheme schemes[] = {Scheme::lee, Scheme::plain_lsb, Scheme::proposed};

    std::vector<ReportRow> rows;
    for (const fs::path& cover_path : covers) {
        const GrayImage cover = read_bmp(cover_path);
        for (Scheme scheme : schemes) {
            const auto& plane_sets = scheme == Scheme::lee
                                         ? std::vector<std::vector<int>>{{1}}
                                         : report_plane_sets();
            for (const auto& indices : plane_sets) {
                EmbedRecipe recipe;
                recipe.scheme = scheme;
                recipe.planes = PlaneSet::of(indices);
                if (scheme == Scheme::lee) {
                    recipe.seed = o.seed;
                }
                const std::uint64_t cap =
                    capacity_bytes(cover.width, cover.height, recipe.planes);
                const std::size_t take =
                    std::size_t(std::min<std::uint64_t>({text.size(), cap, 65535}));
                const Payload payload = Payload::from_bytes(
                    std::vector<std::uint8_t>(text.begin(), text.begin() + take));

                const auto regions =
                    plan_regions(cover.pixel_count(), payload.size(), recipe);
                const GrayImage marked = embed(cover, payload, recipe);

                const fs::path marked_path =
                    out_dir / (cover_path.stem().string() + "__" +
                               std::string(scheme_name(scheme)) + "__" +
                               planes_file_tag(recipe.planes) + ".bmp");
                write_bmp(marked, marked_path);

                ReportRow row;
                row.image = cover_path.filename().string();
                row.scheme = std::string(scheme_name(scheme));
                row.planes = recipe.planes.to_string();
                row.payload_bytes = payload.size();
                row.quality = psnr(cover, marked);
                row.max_delta = max_pixel_delta(cover, marked);
                row.copies = full_copy_count(regions);
                rows.push_back(std::move(row));
            }
        }
    }

    std::ofstream csv(o.out, std::ios::trunc);
    if (!csv) {
        throw IoError("cannot open " + o.out + " for writing");
    }
    csv << "image,scheme,planes,payload_bytes,psnr_db,max_delta,copies\n";
    for (const auto& row : rows) {
        csv << row.image << "," << row.scheme << ",\"" << row.planes << "\","
            << row.payload_bytes << "," << format_psnr(row.quality) << "," << row.max_delta
            << "," << row.copies << "\n";
    }
    if (!csv) {
        throw IoError("write failure on " + o.out);
    }
    std::cout << "rows=" << rows.size() << "\n";
    std::cout << "out=" << o.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverted-bit LSB watermarking toolkit for 8-bit grayscale BMPs"};
    app.require_subcommand(1);

    auto embed_opts = std::make_shared<EmbedOpts>();
    CLI::App* embed_cmd = app.add_subcommand("embed", "embed a watermark text into a cover image");
    embed_cmd->add_option("--in", embed_opts->in, "cover BMP")->required();
    embed_cmd->add_option("--out", embed_opts->out, "watermarked BMP to write")->required();
    auto* text_opt = embed_cmd->add_option("--text", embed_opts->text, "watermark text (UTF-8)");
    auto* file_opt =
        embed_cmd->add_option("--text-file", embed_opts->text_file, "file with the watermark bytes");
    text_opt->excludes(file_opt);
    add_scheme_flags(embed_cmd, embed_opts->flags);
    embed_cmd->callback([embed_opts, embed_cmd, text_opt, file_opt] {
        if (text_opt->count() == 0 && file_opt->count() == 0) {
            throw CLI::RequiredError("--text or --text-file");
        }
        embed_opts->flags.seed_given = embed_cmd->count("--seed") != 0;
        run_embed(*embed_opts);
    });

    auto extract_opts = std::make_shared<ExtractOpts>();
    CLI::App* extract_cmd = app.add_subcommand("extract", "extract the watermark text");
    extract_cmd->add_option("--in", extract_opts->in, "watermarked BMP")->required();
    add_scheme_flags(extract_cmd, extract_opts->flags);
    auto* copy_opt = extract_cmd->add_option("--copy", extract_opts->copy,
                                             "print a specific copy instead of the consensus");
    extract_cmd->add_flag("--vote", extract_opts->vote,
                          "print the majority-vote consensus (default)");
    copy_opt->excludes("--vote");
    extract_cmd->callback([extract_opts, extract_cmd] {
        extract_opts->flags.seed_given = extract_cmd->count("--seed") != 0;
        run_extract(*extract_opts);
    });

    std::string psnr_a, psnr_b;
    CLI::App* psnr_cmd = app.add_subcommand("psnr", "PSNR/MSE between two BMPs");
    psnr_cmd->add_option("a", psnr_a, "reference BMP")->required();
    psnr_cmd->add_option("b", psnr_b, "test BMP")->required();
    psnr_cmd->callback([&psnr_a, &psnr_b] { run_psnr(psnr_a, psnr_b); });

    CLI::App* attack_cmd = app.add_subcommand("attack", "apply an attack to a watermarked image");
    attack_cmd->require_subcommand(1);

    auto crop_opts = std::make_shared<CropOpts>();
    CLI::App* crop_cmd = attack_cmd->add_subcommand("crop", "crop to a sub-rectangle");
    crop_cmd->add_option("--in", crop_opts->in)->required();
    crop_cmd->add_option("--out", crop_opts->out)->required();
    crop_cmd->add_option("--width", crop_opts->width, "cropped width")->required();
    crop_cmd->add_option("--height", crop_opts->height, "cropped height")->required();
    crop_cmd->add_option("--ox", crop_opts->ox, "column offset");
    crop_cmd->add_option("--oy", crop_opts->oy, "row offset");
    crop_cmd->add_flag("--remap", crop_opts->remap,
                       "paste the crop back at its offset on a fill canvas");
    crop_cmd->add_option("--fill", crop_opts->fill, "canvas fill value")->check(CLI::Range(0, 255));
    crop_cmd->callback([crop_opts] { run_crop(*crop_opts); });

    auto noise_opts = std::make_shared<NoiseOpts>();
    CLI::App* noise_cmd = attack_cmd->add_subcommand("noise", "salt-and-pepper noise");
    noise_cmd->add_option("--in", noise_opts->in)->required();
    noise_cmd->add_option("--out", noise_opts->out)->required();
    noise_cmd->add_option("--density", noise_opts->density, "corruption probability per pixel")
        ->required();
    noise_cmd->add_option("--seed", noise_opts->seed, "noise RNG seed")->required();
    noise_cmd->callback([noise_opts] { run_noise(*noise_opts); });

    auto diff_opts = std::make_shared<DiffOpts>();
    CLI::App* diff_cmd =
        attack_cmd->add_subcommand("diff", "difference array between BMP and lossy raster");
    diff_cmd->add_option("--bmp", diff_opts->bmp, "original watermarked BMP")->required();
    diff_cmd->add_option("--lossy", diff_opts->lossy, "decoded lossy raster as BMP")->required();
    diff_cmd->add_option("--out", diff_opts->out, ".lsbd file to write")->required();
    diff_cmd->callback([diff_opts] { run_diff(*diff_opts); });

    auto restore_opts = std::make_shared<RestoreOpts>();
    CLI::App* restore_cmd =
        attack_cmd->add_subcommand("restore", "rebuild the BMP from lossy raster plus difference");
    restore_cmd->add_option("--lossy", restore_opts->lossy)->required();
    restore_cmd->add_option("--diff", restore_opts->diff, ".lsbd file")->required();
    restore_cmd->add_option("--out", restore_opts->out)->required();
    restore_cmd->callback([restore_opts] { run_restore(*restore_opts); });

    auto report_opts = std::make_shared<ReportOpts>();
    CLI::App* report_cmd =
        app.add_subcommand("report", "PSNR comparison table over an image corpus");
    report_cmd->add_option("--images", report_opts->images_dir, "directory of cover BMPs")
        ->required();
    report_cmd->add_option("--text-file", report_opts->text_file, "watermark payload file")
        ->required();
    report_cmd->add_option("--out", report_opts->out, "CSV file to write")->required();
    report_cmd->add_option("--seed", report_opts->seed, "seed for the lee scheme")
        ->capture_default_str();
    report_cmd->callback([report_opts] { run_report(*report_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
