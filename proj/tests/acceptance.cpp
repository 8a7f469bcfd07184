// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. argv[1] must name the CLI binary (used by the report criterion).

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lsbmark/attack.hpp"
#include "lsbmark/bmp.hpp"
#include "lsbmark/metrics.hpp"
#include "lsbmark/watermark.hpp"

using namespace lsbmark;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw CheckFailed(what);
    }
}

std::string fmt(double v, int decimals = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(decimals);
    os << v;
    return os.str();
}

GrayImage random_image(std::mt19937_64& rng, std::uint32_t w, std::uint32_t h) {
    GrayImage img(w, h);
    for (auto& px : img.pixels) {
        px = std::uint8_t(rng());
    }
    return img;
}

// Cover whose bit planes 1..4 coincide pixel-wise (low nibble 0000 or 1111).
// Exactly such covers make the plane-shift law exact: the same payload then
// flips the same pixels in every plane, only the flip weight changes.
GrayImage structured_cover(std::mt19937_64& rng, std::uint32_t w, std::uint32_t h) {
    GrayImage img(w, h);
    for (auto& px : img.pixels) {
        px = std::uint8_t(16 * (rng() % 16) + ((rng() & 1) ? 15 : 0));
    }
    return img;
}

Payload random_payload(std::mt19937_64& rng, std::size_t len) {
    std::vector<std::uint8_t> bytes(len);
    for (auto& b : bytes) {
        b = std::uint8_t(rng());
    }
    return Payload::from_bytes(std::move(bytes));
}

double char_error_rate(const std::vector<std::uint8_t>& decoded,
                       const std::vector<std::uint8_t>& truth) {
    if (decoded.size() != truth.size() || truth.empty()) {
        return 1.0;
    }
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        wrong += decoded[i] != truth[i];
    }
    return double(wrong) / double(truth.size());
}

// ---- independent copy-layout oracle ----------------------------------------
// Copy i of an L-byte payload occupies nominal 1-based positions
// [17 + 8L*i, 17 + 8L*(i+1) - 1] (start = 1). The pair swap permutes
// positions within that span (it starts odd and has even length), so a copy
// survives a top-left crop exactly when its whole span lies in the kept
// rectangle.
bool oracle_copy_survives(std::uint64_t copy, std::uint64_t payload_len, std::uint32_t width,
                          std::uint32_t kept_w, std::uint32_t kept_h) {
    const std::uint64_t lo = 17 + 8 * payload_len * copy;
    const std::uint64_t hi = lo + 8 * payload_len - 1;
    for (std::uint64_t pos = lo; pos <= hi; ++pos) {
        const std::uint64_t row = (pos - 1) / width;
        const std::uint64_t col = (pos - 1) % width;
        if (row >= kept_h || col >= kept_w) {
            return false;
        }
    }
    return true;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const fs::path& dir, const std::string& args) {
    const fs::path out_file = dir / "cli_stdout.txt";
    const std::string cmd =
        "\"" + g_cli_path + "\" " + args + " > \"" + out_file.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    result.out = std::string((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
    return result;
}

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

struct TempWorkspace {
    fs::path path;
    TempWorkspace() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("lsbmark_acceptance_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempWorkspace() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// ---- criteria ---------------------------------------------------------------

// 1: randomized round-trips over every scheme and plane set.
std::string criterion_round_trip() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);

    struct Config {
        Scheme scheme;
        std::vector<int> planes;
        bool auto_overflow;
    };
    std::vector<Config> configs;
    const std::vector<std::vector<int>> sets = {
        {1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
    };
    for (const auto& s : sets) {
        configs.push_back({Scheme::proposed, s, false});
        configs.push_back({Scheme::plain_lsb, s, false});
    }
    configs.push_back({Scheme::lee, {1}, false});
    configs.push_back({Scheme::proposed, {1}, true});
    configs.push_back({Scheme::plain_lsb, {1}, true});

    for (int i = 0; i < 1000; ++i) {
        const Config& cfg = configs[std::size_t(i) % configs.size()];
        const std::uint32_t w = 5 + std::uint32_t(rng() % 60);
        const std::uint32_t h = 5 + std::uint32_t(rng() % 60);
        const GrayImage cover = random_image(rng, w, h);

        EmbedRecipe recipe;
        recipe.scheme = cfg.scheme;
        recipe.planes = PlaneSet::of(cfg.planes);
        recipe.auto_overflow = cfg.auto_overflow;
        if (cfg.scheme == Scheme::lee) {
            recipe.seed = rng();
        }
        const std::uint64_t cap =
            cfg.auto_overflow ? capacity_bytes(w, h, PlaneSet::of({1, 2}))
                              : (cfg.scheme == Scheme::lee
                                     ? capacity_bytes(w, h, PlaneSet::of({1}))
                                     : capacity_bytes(w, h, recipe.planes));
        const Payload payload = random_payload(rng, rng() % (cap + 1));

        const GrayImage marked = embed(cover, payload, recipe);
        const ExtractionReport report = extract(marked, recipe);
        require(report.consensus == payload.bytes,
                "consensus mismatch in case " + std::to_string(i));
        if (!payload.bytes.empty()) {
            require(!report.copies.empty(), "no copies in case " + std::to_string(i));
            require(report.copies[0] == payload.bytes,
                    "copy 0 mismatch in case " + std::to_string(i));
        }
        require(report.agreement == 1.0, "agreement below 1 in case " + std::to_string(i));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(seconds < 30.0, "runtime " + fmt(seconds, 1) + " s exceeds the 30 s target");
    return "1000 cases across 23 scheme/plane configurations in " + fmt(seconds, 2) + " s";
}

// 2: exhaustive bit-plane primitives.
std::string criterion_exhaustive_bits() {
    for (int v = 0; v < 256; ++v) {
        for (int p = 1; p <= 4; ++p) {
            for (int b = 0; b <= 1; ++b) {
                const std::uint8_t out = set_bit(std::uint8_t(v), Plane(p), b);
                require(get_bit(out, Plane(p)) == b, "get(set) mismatch");
                for (int q = 1; q <= 4; ++q) {
                    if (q != p) {
                        require(get_bit(out, Plane(q)) == get_bit(std::uint8_t(v), Plane(q)),
                                "set_bit leaked into another plane");
                    }
                }
            }
        }
    }
    for (std::uint64_t x = 1; x <= 10000; ++x) {
        require(shift_index(shift_index(LinearIndex{x})).value == x,
                "shift_index not an involution at " + std::to_string(x));
    }
    return "2048 set/get cases, shift involution over [1, 10000]";
}

// 3: the ~6.02 dB plane staircase.
std::string criterion_plane_shift_law() {
    std::mt19937_64 rng(77001);
    const GrayImage cover = structured_cover(rng, 512, 512);
    const Payload payload = random_payload(rng, 32766);

    double psnr_db[5] = {0, 0, 0, 0, 0};
    for (int k = 1; k <= 4; ++k) {
        EmbedRecipe recipe;
        recipe.planes = PlaneSet::of({k});
        psnr_db[k] = psnr(cover, embed(cover, payload, recipe)).psnr_db;
    }
    const double step = 20.0 * std::log10(2.0);  // 6.020600
    for (int k = 1; k <= 3; ++k) {
        const double diff = psnr_db[k] - psnr_db[k + 1];
        require(std::abs(diff - step) <= 1e-3,
                "step " + std::to_string(k) + "->" + std::to_string(k + 1) + " is " +
                    fmt(diff, 5) + " dB, want " + fmt(step, 5) + " +/- 0.001");
    }
    require(psnr_db[1] >= 48.1308, "plane-1 PSNR " + fmt(psnr_db[1]) + " below 48.1308 dB");
    return "PSNR stairs " + fmt(psnr_db[1]) + " / " + fmt(psnr_db[2]) + " / " + fmt(psnr_db[3]) +
           " / " + fmt(psnr_db[4]) + " dB";
}

// 4: the capacity table and the auto-overflow boundary.
std::string criterion_capacity_table() {
    for (int k = 1; k <= 4; ++k) {
        require(capacity_bytes(512, 512, PlaneSet::of({k})) == 32766,
                "singleton capacity mismatch");
    }
    const std::vector<std::vector<int>> pairs = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (const auto& p : pairs) {
        require(capacity_bytes(512, 512, PlaneSet::of(p)) == 65532, "pair capacity mismatch");
    }

    std::mt19937_64 rng(88);
    const GrayImage cover = random_image(rng, 512, 512);
    EmbedRecipe recipe;
    recipe.auto_overflow = true;

    const Payload at_limit = random_payload(rng, 65532);
    const GrayImage marked = embed(cover, at_limit, recipe);
    const ExtractionReport report = extract(marked, recipe);
    require(report.consensus == at_limit.bytes, "65532-byte auto embed failed to round-trip");

    bool rejected = false;
    try {
        embed(cover, random_payload(rng, 65533), recipe);
    } catch (const CapacityError&) {
        rejected = true;
    }
    require(rejected, "65533 bytes must exceed auto capacity");
    return "32766 per plane, 65532 per pair; auto accepts 65532, rejects 65533";
}

// 5: per-pixel distortion bounds.
std::string criterion_max_delta() {
    std::mt19937_64 rng(99);
    const GrayImage cover = random_image(rng, 512, 512);
    const std::vector<std::vector<int>> sets = {
        {1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
    };
    for (const auto& indices : sets) {
        for (Scheme scheme : {Scheme::proposed, Scheme::plain_lsb}) {
            EmbedRecipe recipe;
            recipe.scheme = scheme;
            recipe.planes = PlaneSet::of(indices);
            const Payload payload =
                random_payload(rng, capacity_bytes(512, 512, recipe.planes));
            const GrayImage marked = embed(cover, payload, recipe);
            int max_delta = 0;
            for (std::size_t i = 0; i < cover.pixels.size(); ++i) {
                max_delta = std::max(max_delta,
                                     std::abs(int(cover.pixels[i]) - int(marked.pixels[i])));
            }
            require(max_delta <= recipe.planes.max_delta(),
                    "planes {" + recipe.planes.to_string() + "} " +
                        std::string(scheme_name(scheme)) + ": max delta " +
                        std::to_string(max_delta) + " exceeds " +
                        std::to_string(recipe.planes.max_delta()));
        }
    }
    return "full-capacity max deltas within 1,2,4,8 / 3,5,9,6,10,12";
}

// 6: crop robustness with the copy-layout oracle.
std::string criterion_crop() {
    std::mt19937_64 rng(606);
    const GrayImage cover = random_image(rng, 512, 512);

    const auto run_case = [&](std::size_t payload_len, std::uint32_t kept_w,
                              std::uint32_t kept_h) {
        const Payload payload = random_payload(rng, payload_len);
        const GrayImage marked = embed(cover, payload, EmbedRecipe{});
        const std::uint64_t total = (512 * 512 - 16) / (8 * payload_len);

        const CropSpec spec{0, 0, kept_w, kept_h};
        const GrayImage attacked =
            remap_cropped(crop(marked, spec), spec, 512, 512, 0);
        const ExtractionReport report = extract(attacked, EmbedRecipe{});
        require(report.copies.size() == total, "copy count changed under crop");

        std::uint64_t predicted = 0;
        std::uint64_t measured = 0;
        for (std::uint64_t i = 0; i < total; ++i) {
            const bool survives = oracle_copy_survives(i, payload_len, 512, kept_w, kept_h);
            predicted += survives;
            const bool decoded = report.copies[i] == payload.bytes;
            measured += decoded;
            if (survives) {
                require(decoded, "copy " + std::to_string(i) +
                                     " inside the surviving region failed to decode");
            }
        }
        const double predicted_frac = double(predicted) / double(total);
        const double measured_frac = double(measured) / double(total);
        require(std::abs(measured_frac - predicted_frac) <= 0.05,
                "measured fraction " + fmt(measured_frac) + " not within 5% of prediction " +
                    fmt(predicted_frac));
        return std::make_pair(predicted, total);
    };

    // stated geometry: 64-byte copies each span a full 512-pixel row window,
    // so the 448-column crop leaves no copy wholly intact
    const auto stated = run_case(64, 448, 448);
    require(stated.second >= 500,
            "only " + std::to_string(stated.second) + " copies embedded, want >= 500");

    // same payload, full-width crop: whole rows survive and so do their copies
    const auto full_width = run_case(64, 512, 448);
    require(full_width.first == 447,
            "full-width crop should preserve 447 copies, oracle says " +
                std::to_string(full_width.first));

    // shorter copies fit between the cropped columns
    const auto short_copies = run_case(8, 448, 448);
    require(short_copies.first > 0, "8-byte copies should survive the 448x448 crop");

    return "64B/448x448: " + std::to_string(stated.first) + "/" + std::to_string(stated.second) +
           " survive (oracle-exact); 64B/512x448: " + std::to_string(full_width.first) +
           "; 8B/448x448: " + std::to_string(short_copies.first) + "/4095";
}

// 7: salt-and-pepper voting.
std::string criterion_noise() {
    std::mt19937_64 rng(707);
    const GrayImage cover = random_image(rng, 128, 128);
    const Payload payload = random_payload(rng, 100);
    const GrayImage marked = embed(cover, payload, EmbedRecipe{});
    const std::uint64_t copies = extract(marked, EmbedRecipe{}).copies.size();
    require(copies >= 9, "need at least 9 copies, got " + std::to_string(copies));

    int structural_failures = 0;
    double strict_consensus_sum = 0.0;
    double strict_single_sum = 0.0;
    double good_consensus_sum = 0.0;
    double good_single_sum = 0.0;
    int good_trials = 0;

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const GrayImage noisy = salt_pepper(marked, 0.01, seed);
        double consensus_cer = 1.0;
        double single_cer = 1.0;
        bool structural_ok = false;
        try {
            const ExtractionReport report = extract(noisy, EmbedRecipe{});
            if (report.length == payload.size()) {
                structural_ok = true;
                consensus_cer = char_error_rate(report.consensus, payload.bytes);
                double sum = 0.0;
                for (const auto& copy : report.copies) {
                    sum += char_error_rate(copy, payload.bytes);
                }
                single_cer = sum / double(report.copies.size());
            }
        } catch (const HeaderError&) {
            // corrupted length header; the single unprotected header is the
            // scheme's real weak point
        }
        strict_consensus_sum += consensus_cer;
        strict_single_sum += single_cer;
        if (structural_ok) {
            good_consensus_sum += consensus_cer;
            good_single_sum += single_cer;
            ++good_trials;
        } else {
            ++structural_failures;
        }
    }

    require(good_trials > 0, "every trial lost its header, cannot evaluate voting");
    const double consensus_mean = good_consensus_sum / good_trials;
    const double single_mean = good_single_sum / good_trials;
    require(consensus_mean <= single_mean,
            "consensus CER " + fmt(consensus_mean, 6) + " above single-copy mean " +
                fmt(single_mean, 6));
    require(consensus_mean < 0.01,
            "consensus CER " + fmt(consensus_mean, 6) + " not under 1%");
    require(strict_consensus_sum <= strict_single_sum,
            "strict aggregate: consensus worse than single copies");

    return std::to_string(copies) + " copies, 100 trials at density 0.01: consensus CER " +
           fmt(consensus_mean, 6) + " vs single-copy mean " + fmt(single_mean, 4) + " (" +
           std::to_string(structural_failures) + " trials lost the unprotected header)";
}

// 8: difference-array identity.
std::string criterion_difference() {
    std::mt19937_64 rng(808);
    for (int i = 0; i < 100; ++i) {
        const GrayImage cover = random_image(rng, 64, 64);
        const std::uint64_t cap = capacity_bytes(64, 64, PlaneSet::of({1}));
        const Payload payload = random_payload(rng, 1 + rng() % cap);
        const GrayImage marked = embed(cover, payload, EmbedRecipe{});

        GrayImage lossy = marked;
        for (auto& px : lossy.pixels) {
            const int v = int(px) + int(rng() % 61) - 30;
            px = std::uint8_t(std::clamp(v, 0, 255));
        }

        const GrayImage restored = restore(lossy, compute_difference(marked, lossy));
        require(restored == marked, "restore not bit-identical in pair " + std::to_string(i));
        const ExtractionReport report = extract(restored, EmbedRecipe{});
        require(report.agreement == 1.0, "agreement below 1 after restore");
        require(report.consensus == payload.bytes, "payload lost through the difference trick");
    }
    return "100 random pairs restored bit-exactly, extraction agreement 1.0";
}

// 9: the comparison harness over a small corpus, through the real CLI.
std::string criterion_report() {
    require(!g_cli_path.empty(), "CLI path missing (pass it as argv[1])");
    TempWorkspace ws;
    const fs::path corpus = ws.path / "corpus";
    fs::create_directories(corpus);

    std::mt19937_64 rng(909);
    const char* names[] = {"img_a.bmp", "img_b.bmp", "img_c.bmp", "img_d.bmp"};
    for (const char* name : names) {
        write_bmp(structured_cover(rng, 128, 128), corpus / name);
    }
    const fs::path text_path = ws.path / "payload.txt";
    {
        std::ofstream os(text_path, std::ios::binary);
        for (int i = 0; i < 5000; ++i) {
            os.put(char('!' + i % 90));
        }
    }

    const fs::path csv_path = ws.path / "report.csv";
    const CliResult result =
        run_cli(ws.path, "report --images \"" + corpus.string() + "\" --text-file \"" +
                             text_path.string() + "\" --out \"" + csv_path.string() + "\"");
    require(result.exit_code == 0, "report command failed:\n" + result.out);

    std::ifstream csv(csv_path);
    require(bool(csv), "report CSV missing");
    std::string line;
    std::getline(csv, line);
    require(line == "image,scheme,planes,payload_bytes,psnr_db,max_delta,copies",
            "unexpected CSV header: " + line);

    struct Row {
        std::string image, scheme, planes;
        double psnr_db;
    };
    std::vector<Row> rows;
    std::vector<std::string> sort_keys;
    while (std::getline(csv, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv(line);
        require(fields.size() == 7, "bad CSV row: " + line);
        rows.push_back(Row{fields[0], fields[1], fields[2], std::stod(fields[4])});
        sort_keys.push_back(fields[0] + "|" + fields[1] + "|" + fields[2]);
    }
    require(rows.size() == 84, "expected 84 rows (4 images x 21 configs), got " +
                                   std::to_string(rows.size()));
    require(std::is_sorted(sort_keys.begin(), sort_keys.end()),
            "rows not sorted by image, scheme, planes");

    const auto find_psnr = [&](const std::string& image, const std::string& scheme,
                               const std::string& planes) {
        for (const auto& row : rows) {
            if (row.image == image && row.scheme == scheme && row.planes == planes) {
                return row.psnr_db;
            }
        }
        throw CheckFailed("missing row " + image + "/" + scheme + "/" + planes);
    };

    double proposed_advantage = 0.0;
    const double step = 20.0 * std::log10(2.0);
    for (const char* name : names) {
        for (const auto& row : rows) {
            if (row.image == name && row.planes == "1") {
                require(row.psnr_db >= 48.1308, std::string(name) + "/" + row.scheme +
                                                    " plane-1 PSNR " + fmt(row.psnr_db) +
                                                    " below 48.1308");
            }
        }
        for (const char* scheme : {"proposed", "lsb"}) {
            const double p1 = find_psnr(name, scheme, "1");
            const double p2 = find_psnr(name, scheme, "2");
            const double p3 = find_psnr(name, scheme, "3");
            const double p4 = find_psnr(name, scheme, "4");
            for (double diff : {p1 - p2, p2 - p3, p3 - p4}) {
                require(std::abs(diff - step) <= 1e-3,
                        std::string(name) + "/" + scheme + ": stair " + fmt(diff, 5) +
                            " dB, want " + fmt(step, 5) + " +/- 0.001");
            }
        }
        proposed_advantage += find_psnr(name, "proposed", "1") - find_psnr(name, "lsb", "1");
    }
    proposed_advantage /= 4.0;

    // The paper reports a ~0.9 dB edge for its corpus and text; that spread
    // is data-dependent, so it is recorded here rather than asserted.
    return "84 rows, plane-1 PSNR >= 48.1308, 6.0206 dB stairs hold; measured proposed-vs-lsb "
           "delta " +
           fmt(proposed_advantage) + " dB (recorded, not asserted)";
}

// 10: BMP round-trip.
std::string criterion_bmp_round_trip() {
    TempWorkspace ws;
    std::mt19937_64 rng(1010);
    for (int i = 0; i < 50; ++i) {
        // alternate odd/even widths so the padding path is always exercised
        std::uint32_t w = 1 + std::uint32_t(rng() % 80);
        w = i % 2 == 0 ? (w | 1u) : (w + (w % 2));
        const std::uint32_t h = 1 + std::uint32_t(rng() % 40);
        GrayImage img = random_image(rng, w, h);
        const fs::path path = ws.path / ("rt_" + std::to_string(i) + ".bmp");
        write_bmp(img, path);
        require(read_bmp(path) == img, "round-trip mismatch at image " + std::to_string(i));
    }
    return "50 randomized images round-tripped bit-exactly (odd and even widths)";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_cli_path = argv[1];
    }

    struct Criterion {
        int id;
        const char* name;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "round-trip property", criterion_round_trip},
        {2, "exhaustive bit-plane check", criterion_exhaustive_bits},
        {3, "plane-shift PSNR law", criterion_plane_shift_law},
        {4, "capacity table", criterion_capacity_table},
        {5, "max-delta bounds", criterion_max_delta},
        {6, "crop robustness", criterion_crop},
        {7, "noise robustness", criterion_noise},
        {8, "difference-array identity", criterion_difference},
        {9, "baseline comparison harness", criterion_report},
        {10, "BMP round-trip", criterion_bmp_round_trip},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        try {
            const std::string detail = criterion.run();
            std::cout << "[PASS] criterion " << criterion.id << " (" << criterion.name
                      << "): " << detail << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] criterion " << criterion.id << " (" << criterion.name
                      << "): " << e.what() << "\n";
        }
    }
    if (failures == 0) {
        std::cout << "all 10 acceptance criteria passed\n";
    } else {
        std::cout << failures << " criterion(s) failed\n";
    }
    return failures == 0 ? 0 : 1;
}
