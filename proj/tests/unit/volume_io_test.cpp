#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "zz3d/rng.hpp"
#include "zz3d/spectrum.hpp"
#include "zz3d/volume_io.hpp"

using namespace zz3d;
namespace fs = std::filesystem;

namespace {

errc code_of(auto fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return errc::refused;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::path(::testing::TempDir()) / ("zz3d_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

byte_buffer bytes_of(std::string_view s) { return byte_buffer(s.begin(), s.end()); }

}  // namespace

TEST(Zzv1, SingleSampleLayout) {
    const byte_buffer b = write_vol(volume(1, 1, 1, 7));
    EXPECT_EQ(b, (byte_buffer{0x5A, 0x5A, 0x56, 0x31, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 7}));
    EXPECT_EQ(read_vol(b), volume(1, 1, 1, 7));
}

TEST(Zzv1, BandMajorRoundTrip) {
    const volume v = synth_volume(synth_kind::uniform_random, 3, 5, 4, 12);
    const byte_buffer b = write_vol(v);
    ASSERT_EQ(b.size(), vol_header_size + 60);
    EXPECT_EQ(b[vol_header_size + 1], v(0, 1, 0));
    EXPECT_EQ(b[vol_header_size + 5], v(1, 0, 0));
    EXPECT_EQ(b[vol_header_size + 15], v(0, 0, 1));
    EXPECT_EQ(read_vol(b), v);
}

TEST(Zzv1, Errors) {
    byte_buffer b = write_vol(volume(2, 2, 2, 1));
    b.pop_back();
    EXPECT_EQ(code_of([&] { read_vol(b); }), errc::format);
    b.push_back(1);
    b.push_back(1);
    EXPECT_EQ(code_of([&] { read_vol(b); }), errc::format);
    EXPECT_EQ(code_of([] { read_vol(byte_buffer{0x5A, 0x5A}); }), errc::format);
    EXPECT_EQ(code_of([] { read_vol(bytes_of("P5 1 1 255 x...........")); }), errc::format);
    byte_buffer zero = write_vol(volume(1, 1, 1, 0));
    zero[4] = 0;
    EXPECT_EQ(code_of([&] { read_vol(zero); }), errc::format);
}

TEST(Pgm, ParseAndEncode) {
    const auto frame = parse_pgm(bytes_of("P5\n# comment\n3 2\n255\nabcdef"));
    EXPECT_EQ(frame.rows(), 2u);
    EXPECT_EQ(frame.cols(), 3u);
    EXPECT_EQ(frame(1, 0), 'd');
    EXPECT_EQ(parse_pgm(encode_pgm(frame)), frame);
}

TEST(Pgm, Rejections) {
    EXPECT_EQ(code_of([] { parse_pgm(bytes_of("P2\n1 1\n255\n7")); }), errc::format);
    EXPECT_EQ(code_of([] { parse_pgm(bytes_of("P5\n1 1\n65535\nxx")); }), errc::format);
    EXPECT_EQ(code_of([] { parse_pgm(bytes_of("P5\n2 2\n255\nabc")); }), errc::format);
    EXPECT_EQ(code_of([] { parse_pgm(bytes_of("P5\n0 2\n255\n")); }), errc::format);
}

TEST(Pgm, SequenceRoundTrip) {
    const fs::path dir = scratch_dir("pgm_seq");
    const volume v = synth_volume(synth_kind::smooth, 6, 7, 3);
    const auto files = write_pgm_sequence(v, dir);
    ASSERT_EQ(files.size(), 3u);
    EXPECT_EQ(files[2].filename(), "frame_0002.pgm");
    EXPECT_EQ(read_pgm_sequence(files), v);
}

TEST(Pgm, MixedFrameSizesNameTheFile) {
    const fs::path dir = scratch_dir("pgm_mixed");
    write_file(dir / "a.pgm", encode_pgm(grid2<std::uint8_t>(4, 4, 1)));
    write_file(dir / "b.pgm", encode_pgm(grid2<std::uint8_t>(4, 5, 1)));
    const std::vector<fs::path> files{dir / "a.pgm", dir / "b.pgm"};
    try {
        read_pgm_sequence(files);
        FAIL() << "expected a format error";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::format);
        EXPECT_NE(e.message().find("b.pgm"), std::string::npos) << e.message();
    }
    EXPECT_EQ(code_of([&] { read_pgm_sequence(std::vector<fs::path>{dir / "missing.pgm"}); }), errc::io);
}

TEST(Synth, SmoothValues) {
    const volume v = synth_volume(synth_kind::smooth, 16, 16, 16);
    EXPECT_EQ(v(0, 0, 0), 168);
    for (std::size_t b = 0; b < 16; ++b)
        for (std::size_t r = 0; r < 16; ++r)
            for (std::size_t c = 0; c < 16; ++c) {
                const double two_pi = 2.0 * std::acos(-1.0);
                const double x = 128.0 + 60.0 * std::sin(two_pi * r / 16.0) * std::cos(two_pi * c / 16.0) +
                                 40.0 * std::cos(two_pi * b / 16.0);
                ASSERT_EQ(v(r, c, b), std::round(x));
            }
}

TEST(Synth, UniformRandomIsSeededAndCentred) {
    const volume a = synth_volume(synth_kind::uniform_random, 16, 16, 16, 5);
    EXPECT_EQ(a, synth_volume(synth_kind::uniform_random, 16, 16, 16, 5));
    EXPECT_NE(a, synth_volume(synth_kind::uniform_random, 16, 16, 16, 6));
    double sum = 0.0;
    for (std::uint8_t x : a.data())
        sum += x;
    EXPECT_NEAR(sum / static_cast<double>(a.size()), 127.5, 3.0);
    EXPECT_EQ(code_of([] { synth_volume(synth_kind::smooth, 0, 4, 4); }), errc::invalid_dimension);
}

TEST(Rng, SplitMix64ReferenceOutputs) {
    splitmix64 g(0);
    EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(g.next(), 0x06c45d188009454fULL);
    splitmix64 u(0);
    EXPECT_EQ(u.next_unit(), static_cast<double>(0xe220a8397b1dcdafULL >> 11) * 0x1.0p-53);
}

TEST(Spectrum, CsvFormat) {
    EXPECT_EQ(write_csv_spectrum({{3.5}, ""}), "index,coefficient\n0,3.5\n");
    EXPECT_EQ(write_csv_spectrum({{0.1, -2.0}, ""}), "index,coefficient\n0,0.1\n1,-2\n");
    EXPECT_EQ(code_of([] { write_csv_spectrum({}); }), errc::invalid_dimension);
}

TEST(Spectrum, DcMatchesMean) {
    for (auto mode : {spectrum_mode::planar, spectrum_mode::volumetric}) {
        const std::size_t n = 8;
        const spectrum_trace t = make_spectrum(n, mode, 3);
        const volume src = spectrum_source(n, mode, 3);
        ASSERT_EQ(t.values.size(), src.size());
        double sum = 0.0;
        for (std::uint8_t x : src.data())
            sum += x;
        EXPECT_NEAR(t.values[0], sum / std::sqrt(static_cast<double>(src.size())), 1e-6);
        EXPECT_EQ(t.values, make_spectrum(n, mode, 3).values);
    }
}
