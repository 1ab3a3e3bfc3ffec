// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support/naive_dct.hpp"
#include "support/reference_scans.hpp"
#include "zz3d/zz3d.hpp"

using namespace zz3d;
namespace fs = std::filesystem;

namespace {

// Collects the first few failure notes for one criterion.
class check {
public:
    void require(bool ok, const std::string& what) {
        if (ok)
            return;
        if (failures_++ < 5)
            notes_ += "\n    " + what;
    }
    bool passed() const { return failures_ == 0; }
    std::string notes() const { return notes_; }
    void info(const std::string& s) { info_ += " (" + s + ")"; }
    std::string info_text() const { return info_; }

private:
    int failures_ = 0;
    std::string notes_, info_;
};

template <class Coord>
bool is_permutation_of_extent(const scan_order<Coord>& order) {
    std::vector<char> seen(order.size(), 0);
    for (const Coord& c : order) {
        const std::size_t i = order.position(c);
        if (i >= seen.size() || seen[i] || order[i] != c)
            return false;
        seen[i] = 1;
    }
    return order.size() == seen.size();
}

template <class Coord>
bool same(std::span<const Coord> a, const std::vector<Coord>& b) {
    return std::ranges::equal(a, b);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// 1
void scan_bijectivity(check& ck) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> sample(-1000, 1000);
    for (std::size_t r = 1; r <= 12; ++r)
        for (std::size_t c = 1; c <= 12; ++c) {
            const scan_order_2d o = rect_zigzag_order(r, c);
            ck.require(is_permutation_of_extent(o), "rect " + std::to_string(r) + "x" + std::to_string(c));
            grid2<int> g(r, c);
            for (int& x : g.data())
                x = sample(rng);
            ck.require(invert_scan(apply_scan(g, o), o) == g, "rect round trip");
            if (r == c) {
                const scan_order_2d s = square_zigzag_order(r);
                ck.require(is_permutation_of_extent(s), "square " + std::to_string(r));
                ck.require(invert_scan(apply_scan(g, s), s) == g, "square round trip");
            }
        }
    for (std::size_t n = 1; n <= 16; ++n) {
        grid3<int> g(n, n, n);
        for (int& x : g.data())
            x = sample(rng);
        for (const scan_order_3d& o : {cubic_zigzag_order(n), raster_order_3d(n), per_band_zigzag_order(n)}) {
            ck.require(is_permutation_of_extent(o), "3d order n=" + std::to_string(n));
            ck.require(invert_scan(apply_scan(g, o), o) == g, "3d round trip n=" + std::to_string(n));
        }
    }
}

// 2
void canonical_pins(check& ck) {
    auto as2 = [](std::initializer_list<std::pair<int, int>> l) {
        std::vector<coord2> v;
        for (auto [r, c] : l)
            v.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
        return v;
    };
    const auto sq4 = as2({{0, 0}, {1, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 0}, {3, 0}, {2, 1},
                          {1, 2}, {0, 3}, {1, 3}, {2, 2}, {3, 1}, {3, 2}, {2, 3}, {3, 3}});
    ck.require(same(square_zigzag_order(4).forward(), sq4), "square n=4");
    ck.require(same(rect_zigzag_order(2, 3).forward(), as2({{0, 0}, {1, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}})), "rect 2x3");
    ck.require(same(rect_zigzag_order(3, 2).forward(), as2({{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {2, 1}})), "rect 3x2");
    const std::vector<coord3> cube2{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0},
                                    {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    ck.require(same(cubic_zigzag_order(2).forward(), cube2), "cube n=2");
    // independent table-driven reference generators
    for (int n = 1; n <= 16; ++n) {
        ck.require(same(square_zigzag_order(n).forward(), oracle::reference_square_scan(n)), "square reference");
        ck.require(same(cubic_zigzag_order(n).forward(), oracle::reference_cube_scan(n)), "cube reference");
    }
}

// Number of integer triples in [0, n)^3 summing to s, by inclusion-exclusion.
std::size_t triple_count(long n, long s) {
    auto c2 = [](long m) { return m < 2 ? 0L : m * (m - 1) / 2; };
    const long binom3[] = {1, 3, 3, 1};
    long total = 0;
    for (int k = 0; k <= 3; ++k) {
        const long rest = s - k * n;
        if (rest >= 0)
            total += (k % 2 ? -1 : 1) * binom3[k] * c2(rest + 2);
    }
    return static_cast<std::size_t>(total);
}

// 3
void plane_structure(check& ck) {
    auto sums_ok = [&](const auto& order, const std::string& name) {
        for (std::size_t p = 1; p < order.size(); ++p) {
            const auto a = coord_sum(order[p - 1]), b = coord_sum(order[p]);
            if (b != a && b != a + 1) {
                ck.require(false, name + " coordinate sum jumps at " + std::to_string(p));
                return;
            }
        }
    };
    for (std::size_t r = 1; r <= 12; ++r)
        for (std::size_t c = 1; c <= 12; ++c) {
            const scan_order_2d o = rect_zigzag_order(r, c);
            sums_ok(o, "rect");
            ck.require(o[0] == coord2{0, 0} && o[o.size() - 1] == coord2{static_cast<std::uint32_t>(r - 1),
                                                                          static_cast<std::uint32_t>(c - 1)},
                       "rect endpoints");
        }
    for (std::size_t n = 1; n <= 16; ++n) {
        const scan_order_3d o = cubic_zigzag_order(n);
        sums_ok(o, "cube");
        const auto last = static_cast<std::uint32_t>(n - 1);
        ck.require(o[0] == coord3{0, 0, 0} && o[o.size() - 1] == coord3{last, last, last}, "cube endpoints");
        std::vector<std::size_t> seg(3 * n - 2, 0);
        for (const coord3& c : o)
            ++seg[coord_sum(c)];
        for (std::size_t s = 0; s < seg.size(); ++s)
            ck.require(seg[s] == triple_count(static_cast<long>(n), static_cast<long>(s)),
                       "segment n=" + std::to_string(n) + " s=" + std::to_string(s));
    }
}

// 4
void degeneration(check& ck) {
    for (std::size_t n = 1; n <= 16; ++n)
        ck.require(rect_zigzag_order(n, n) == square_zigzag_order(n), "rect(n,n) n=" + std::to_string(n));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

// 5
void transform_correctness(check& ck) {
    constexpr double tol = 1e-9;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> extent(1, 8);
    std::uniform_real_distribution<double> dist(-128.0, 128.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = extent(rng), c = extent(rng), b = extent(rng);
        cube x(r, c, b);
        for (double& v : x.data())
            v = dist(rng);

        std::vector<double> line(x.data().begin(), x.data().begin() + static_cast<std::ptrdiff_t>(r));
        const double d1 = max_abs_diff(dct1(line), oracle::naive_dct_oracle(line));
        const matrix plane(r, c, std::vector<double>(x.data().begin(), x.data().begin() + static_cast<std::ptrdiff_t>(r * c)));
        const double d2 = max_abs_diff(dct2d(plane).data(), oracle::naive_dct_oracle(plane).data());
        const cube X = dct3d(x);
        const double d3 = max_abs_diff(X.data(), oracle::naive_dct_oracle(x).data());
        worst = std::max({worst, d1, d2, d3});
        const std::string tag = " trial " + std::to_string(trial);
        ck.require(d1 <= tol && d2 <= tol && d3 <= tol, "oracle mismatch" + tag);

        ck.require(max_abs_diff(idct1(dct1(line)), line) <= tol, "dct1 round trip" + tag);
        ck.require(max_abs_diff(idct2d(dct2d(plane)).data(), plane.data()) <= tol, "dct2d round trip" + tag);
        ck.require(max_abs_diff(idct3d(X).data(), x.data()) <= tol, "dct3d round trip" + tag);

        double ex = 0.0, eX = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            ex += x.data()[i] * x.data()[i];
            eX += X.data()[i] * X.data()[i];
            sum += x.data()[i];
        }
        ck.require(std::fabs(ex - eX) <= tol * ex, "Parseval" + tag);
        ck.require(std::fabs(X(0, 0, 0) - sum / std::sqrt(static_cast<double>(x.size()))) <= tol, "DC" + tag);
    }
    ck.info("worst oracle diff " + fmt(worst));
}

std::vector<double> parse_csv_values(const std::string& csv) {
    std::vector<double> values;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        values.push_back(std::stod(line.substr(line.find(',') + 1)));
    return values;
}

// 6
void spectrum_figures(check& ck) {
    struct figure {
        std::string n, mode;
        std::size_t side;
        spectrum_mode m;
    };
    for (const figure& f : {figure{"64", "2d", 64, spectrum_mode::planar}, figure{"16", "3d", 16, spectrum_mode::volumetric}}) {
        std::ostringstream out, err;
        const auto t0 = std::chrono::steady_clock::now();
        const int code = cli::run({"spectrum", "--n", f.n, "--mode", f.mode, "--seed", "1"}, out, err);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string tag = " (" + f.mode + ")";
        ck.require(code == 0, "spectrum exit code" + tag + ": " + err.str());
        const std::vector<double> v = parse_csv_values(out.str());
        ck.require(v.size() == 4096, "value count " + std::to_string(v.size()) + tag);
        if (v.size() != 4096)
            continue;
        const volume src = spectrum_source(f.side, f.m, 1);
        double sum = 0.0;
        for (std::uint8_t x : src.data())
            sum += x;
        const double mean = sum / static_cast<double>(src.size());
        const double expected = std::sqrt(static_cast<double>(src.size())) * mean;
        ck.require(std::fabs(v[0] - expected) <= 1e-6, "DC " + fmt(v[0]) + " vs " + fmt(expected) + tag);
        double max_ac = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i)
            max_ac = std::max(max_ac, std::fabs(v[i]));
        ck.require(std::fabs(v[0]) >= max_ac, "DC not dominant" + tag);
        ck.require(secs < 5.0, "runtime " + fmt(secs) + " s" + tag);
        ck.info(f.mode + ": DC " + fmt(v[0]) + ", max |AC| " + fmt(max_ac) + ", " + fmt(secs) + " s");
    }
}

// 7
void entropy_layer(check& ck) {
    auto bits_ue = [](std::uint32_t v) {
        bit_writer w;
        w.put_ue(v);
        return w.to_string();
    };
    auto bits_se = [](std::int32_t v) {
        bit_writer w;
        w.put_se(v);
        return w.to_string();
    };
    ck.require(bits_ue(0) == "1", "ue(0)");
    ck.require(bits_ue(1) == "010", "ue(1)");
    ck.require(bits_ue(4) == "00101", "ue(4)");
    ck.require(bits_se(1) == "010", "se(1)");
    ck.require(bits_se(-1) == "011", "se(-1)");

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> count(0, 64);
    std::uniform_int_distribution<std::uint32_t> run(0, 4095);
    std::uniform_int_distribution<std::int32_t> level(-70000, 70000);
    for (int i = 0; i < 1000; ++i) {
        std::vector<encoded_block> one(1);
        const int k = count(rng);
        for (int j = 0; j < k; ++j) {
            std::int32_t l = 0;
            while (l == 0)
                l = level(rng);
            one[0].symbols.push_back({run(rng), l});
        }
        const bit_writer w = write_symbols(one);
        bit_reader r(w.bytes());
        ck.require(read_symbols(r, 1) == one, "block " + std::to_string(i) + " round trip");
    }
}

// 8
void codec_behavior(check& ck) {
    const volume v = synth_volume(synth_kind::smooth, 16, 16, 16);
    double last_psnr = std::numeric_limits<double>::infinity();
    std::size_t last_size = std::numeric_limits<std::size_t>::max();
    std::string trace;
    for (std::uint32_t q : {1u, 2u, 4u, 8u, 16u, 32u}) {
        const auto reports = compare_scan_orders(v, 8, q);
        for (const quality_report& r : reports)
            ck.require(r.psnr_db == reports[0].psnr_db, "PSNR differs across scans at q=" + std::to_string(q));
        const quality_report& zz = reports[1];
        ck.require(zz.psnr_db <= last_psnr, "PSNR increased at q=" + std::to_string(q));
        ck.require(zz.compressed_bytes <= last_size, "size increased at q=" + std::to_string(q));
        last_psnr = zz.psnr_db;
        last_size = zz.compressed_bytes;
        if (q == 8) {
            const std::size_t raster = reports[0].compressed_bytes, zig = zz.compressed_bytes;
            ck.require(zig <= raster, "zigzag3d " + std::to_string(zig) + " > raster3d " + std::to_string(raster));
            const double margin = 100.0 * (1.0 - static_cast<double>(zig) / static_cast<double>(raster));
            ck.info("q=8 zigzag3d " + std::to_string(zig) + " B, raster3d " + std::to_string(raster) +
                    " B, margin " + fmt(margin) + "%");
            trace += "| 8 | " + std::to_string(raster) + " | " + std::to_string(zig) + " | " +
                     std::to_string(reports[2].compressed_bytes) + " | " + fmt(zz.psnr_db) + " |\n";
        }
    }
    const fs::path results = ZZ3D_RESULTS_FILE;
    if (!fs::exists(results)) {
        std::ofstream out(results);
        out << "# Results\n\nSmooth 16x16x16 volume, block 8, quant step 8.\n\n"
            << "| q | raster3d bytes | zigzag3d bytes | zigzag2d_per_band bytes | PSNR dB |\n"
            << "|---|---|---|---|---|\n"
            << trace;
        ck.info("recorded in " + results.filename().string());
    }
}

// 9
void format_stability(check& ck) {
    const volume v = synth_volume(synth_kind::smooth, 16, 16, 16);
    const codec_config cfg{8, 8, scan_id::zigzag3d};
    const byte_buffer a = encode_volume(v, cfg);
    ck.require(a == encode_volume(v, cfg), "encode not deterministic");

    const fs::path golden = fs::path(ZZ3D_TEST_DATA) / "smooth16_b8_q8_zigzag3d.zzc";
    if (fs::exists(golden)) {
        ck.require(read_file(golden) == a, "stream differs from " + golden.filename().string());
    } else {
        fs::create_directories(golden.parent_path());
        write_file(golden, a);
        ck.info("captured " + golden.filename().string());
    }

    const volume rnd = synth_volume(synth_kind::uniform_random, 7, 9, 5, 9);
    for (const volume* x : {&v, &rnd}) {
        ck.require(read_vol(write_vol(*x)) == *x, "ZZV1 round trip");
        const fs::path dir = fs::temp_directory_path() / "zz3d_acceptance_pgm";
        fs::remove_all(dir);
        fs::create_directories(dir);
        ck.require(read_pgm_sequence(write_pgm_sequence(*x, dir)) == *x, "PGM round trip");
        fs::remove_all(dir);
    }
}

}  // namespace

int main() {
    struct criterion {
        const char* name;
        std::function<void(check&)> fn;
    };
    const criterion criteria[] = {
        {"scan bijectivity", scan_bijectivity},
        {"canonical order pins", canonical_pins},
        {"plane monotonicity and segment sizes", plane_structure},
        {"rect(n,n) equals square(n)", degeneration},
        {"transform correctness", transform_correctness},
        {"zigzag spectra of random blocks", spectrum_figures},
        {"entropy layer losslessness", entropy_layer},
        {"codec behavior on smooth volume", codec_behavior},
        {"format stability", format_stability},
    };
    int failed = 0;
    int index = 0;
    for (const criterion& c : criteria) {
        ++index;
        check ck;
        try {
            c.fn(ck);
        } catch (const std::exception& e) {
            ck.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (ck.passed() ? "[PASS] " : "[FAIL] ") << index << ' ' << c.name << ck.info_text() << ck.notes()
                  << '\n';
        failed += !ck.passed();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
    return failed ? 1 : 0;
}
