#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <new>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "zz3d/zz3d.hpp"

namespace zz3d::cli {
namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class log_level { error = 0, info = 1, debug = 2 };

class logger {
public:
    logger(std::ostream& err) : err_(err) {
        const char* env = std::getenv("ZZ_LOG");
        const std::string_view v = env ? env : "info";
        if (v == "error")
            level_ = log_level::error;
        else if (v == "debug")
            level_ = log_level::debug;
        else if (v != "info")
            err_ << "warning: ZZ_LOG=" << v << " not recognized, using info\n";
    }

    void error(const std::string& msg) const { err_ << "error: " << msg << '\n'; }
    void info(const std::string& msg) const {
        if (level_ >= log_level::info)
            err_ << msg << '\n';
    }
    void debug(const std::string& msg) const {
        if (level_ >= log_level::debug)
            err_ << "debug: " << msg << '\n';
    }

private:
    std::ostream& err_;
    log_level level_ = log_level::info;
};

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::string_view rest = text;
    while (true) {
        const auto cut = rest.find('x');
        const std::string_view part = rest.substr(0, cut);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value == 0)
            throw usage_error("--dims expects positive integers joined by 'x', got '" + text + "'");
        dims.push_back(value);
        if (cut == std::string_view::npos)
            break;
        rest = rest.substr(cut + 1);
    }
    return dims;
}

std::string format_psnr(double db) {
    if (std::isinf(db))
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", db);
    return buf;
}

/// Runs `fn`, prefixing library errors with the stage name.
template <class Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const zz3d::error& e) {
        throw zz3d::error(e.code(), std::string(name) + ": " + e.message());
    }
}

volume load_volume(const std::vector<std::string>& inputs, const logger& log) {
    return stage("read input", [&] {
        const byte_buffer first = read_file(inputs.front());
        if (has_vol_magic(first)) {
            if (inputs.size() != 1)
                fail(errc::format, "a ZZV1 input must be the only input");
            log.debug("reading ZZV1 volume " + inputs.front());
            return read_vol(first);
        }
        std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
        log.debug("reading " + std::to_string(paths.size()) + " PGM frame(s)");
        return read_pgm_sequence(paths);
    });
}

std::string describe(const volume& v) {
    return std::to_string(v.rows()) + "x" + std::to_string(v.cols()) + "x" + std::to_string(v.bands());
}

// scan

struct scan_args {
    std::string dims;
    std::string order;
};

void cmd_scan(const scan_args& a, std::ostream& out) {
    const std::vector<std::size_t> d = parse_dims(a.dims);
    if (d.size() == 2) {
        if (a.order != "square" && a.order != "rect")
            throw usage_error("order '" + a.order + "' needs NxNxN dims");
        if (a.order == "square" && d[0] != d[1])
            throw usage_error("square order needs equal dims, use --order rect");
        const scan_order_2d order = a.order == "square" ? square_zigzag_order(d[0]) : rect_zigzag_order(d[0], d[1]);
        std::string text = "pos,row,col\n";
        for (std::size_t p = 0; p < order.size(); ++p)
            text += std::to_string(p) + ',' + std::to_string(order[p].row) + ',' + std::to_string(order[p].col) + '\n';
        out << text;
        return;
    }
    if (d.size() == 3) {
        if (a.order != "cube" && a.order != "raster")
            throw usage_error("order '" + a.order + "' is 2D only, use RxC dims");
        if (d[0] != d[1] || d[1] != d[2])
            throw usage_error("3D orders are defined for cubes only");
        const scan_order_3d order = a.order == "cube" ? cubic_zigzag_order(d[0]) : raster_order_3d(d[0]);
        std::string text = "pos,row,col,band\n";
        for (std::size_t p = 0; p < order.size(); ++p)
            text += std::to_string(p) + ',' + std::to_string(order[p].row) + ',' + std::to_string(order[p].col) +
                    ',' + std::to_string(order[p].band) + '\n';
        out << text;
        return;
    }
    throw usage_error("--dims needs 2 or 3 extents");
}

// spectrum

struct spectrum_args {
    std::size_t n = 0;
    std::string mode;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_spectrum(const spectrum_args& a, std::ostream& out, const logger& log) {
    const spectrum_mode mode = a.mode == "2d" ? spectrum_mode::planar : spectrum_mode::volumetric;
    const spectrum_trace trace = stage("transform", [&] { return make_spectrum(a.n, mode, a.seed); });
    const std::string csv = write_csv_spectrum(trace);
    if (a.out.empty() || a.out == "-") {
        out << csv;
    } else {
        stage("write output", [&] {
            write_file(a.out, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
        });
    }
    log.info("spectrum: " + trace.label + ", " + std::to_string(trace.values.size()) + " coefficients");
}

// encode / decode / compare

struct encode_args {
    std::vector<std::string> in;
    std::string out;
    std::size_t block = 8;
    std::uint32_t q = 0;
    std::string scan = "zigzag3d";
};

void cmd_encode(const encode_args& a, const logger& log) {
    const volume v = load_volume(a.in, log);
    const codec_config cfg{a.block, a.q, *parse_scan_id(a.scan)};
    const byte_buffer stream = stage("encode", [&] { return encode_volume(v, cfg); });
    stage("write output", [&] { write_file(a.out, stream); });
    char bps[32];
    std::snprintf(bps, sizeof bps, "%.4f", 8.0 * static_cast<double>(stream.size()) / static_cast<double>(v.size()));
    log.info("encode: " + describe(v) + ", " + std::to_string(stream.size()) + " bytes, " + bps +
             " bits/sample (scan=" + a.scan + " block=" + std::to_string(a.block) + " q=" + std::to_string(a.q) +
             ")");
}

struct decode_args {
    std::string in;
    std::string out;
};

void cmd_decode(const decode_args& a, const logger& log) {
    const byte_buffer stream = stage("read input", [&] { return read_file(a.in); });
    const volume v = stage("decode", [&] { return decode_volume(stream); });
    stage("write output", [&] { write_file(a.out, write_vol(v)); });
    char bps[32];
    std::snprintf(bps, sizeof bps, "%.4f", 8.0 * static_cast<double>(stream.size()) / static_cast<double>(v.size()));
    log.info("decode: " + describe(v) + ", " + std::to_string(stream.size()) + " bytes, " + bps + " bits/sample");
}

struct compare_args {
    std::vector<std::string> in;
    std::size_t block = 8;
    std::uint32_t q = 0;
};

void cmd_compare(const compare_args& a, std::ostream& out, const logger& log) {
    const volume v = load_volume(a.in, log);
    const auto reports = stage("compare", [&] { return compare_scan_orders(v, a.block, a.q); });
    std::string text = "scan,compressed_bytes,psnr_db\n";
    for (const quality_report& r : reports)
        text += std::string(to_string(r.scan)) + ',' + std::to_string(r.compressed_bytes) + ',' +
                format_psnr(r.psnr_db) + '\n';
    out << text;
}

// info

void cmd_info(const std::string& path, std::ostream& out) {
    const byte_buffer bytes = stage("read input", [&] { return read_file(path); });
    if (has_vol_magic(bytes)) {
        const vol_header h = stage("header", [&] { return parse_vol_header(bytes); });
        out << "ZZV1 rows=" << h.rows << " cols=" << h.cols << " bands=" << h.bands << '\n';
        return;
    }
    if (has_stream_magic(bytes)) {
        const stream_header h = parse_stream_header(bytes);
        out << "ZZC1 version=" << int{stream_version} << " scan=" << to_string(h.scan)
            << " block_size=" << int{h.block_size} << " quant_step=" << h.quant_step << " rows=" << h.rows
            << " cols=" << h.cols << " bands=" << h.bands << " bytes=" << bytes.size() << '\n';
        return;
    }
    fail(errc::format, path + ": unknown magic");
}

// synth

struct synth_args {
    std::string kind;
    std::string dims;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_synth(const synth_args& a, const logger& log) {
    const std::vector<std::size_t> d = parse_dims(a.dims);
    if (d.size() != 3)
        throw usage_error("synth needs RxCxB dims");
    const synth_kind kind = a.kind == "smooth" ? synth_kind::smooth : synth_kind::uniform_random;
    const volume v = synth_volume(kind, d[0], d[1], d[2], a.seed);
    stage("write output", [&] { write_file(a.out, write_vol(v)); });
    log.info("synth: " + a.kind + " " + describe(v));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const logger log(err);

    CLI::App app{"Zigzag scans, 3D DCT and a volumetric block codec", "zz3d"};
    app.require_subcommand(1);

    scan_args scan;
    auto* scan_cmd = app.add_subcommand("scan", "Print a scan order as CSV (pos,row,col[,band])");
    scan_cmd->add_option("--dims", scan.dims, "RxC or NxNxN")->required();
    scan_cmd->add_option("--order", scan.order, "square, rect, cube or raster")
        ->required()
        ->check(CLI::IsMember({"square", "rect", "cube", "raster"}));

    spectrum_args spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Zigzag-ordered DCT spectrum of a uniform random block");
    spectrum_cmd->add_option("--n", spectrum.n, "Block side")->required()->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--mode", spectrum.mode, "2d or 3d")->required()->check(CLI::IsMember({"2d", "3d"}));
    spectrum_cmd->add_option("--seed", spectrum.seed, "SplitMix64 seed")->capture_default_str();
    spectrum_cmd->add_option("--out", spectrum.out, "CSV path (default: standard output)");

    std::vector<std::string> scan_names;
    for (scan_id id : all_scan_ids)
        scan_names.emplace_back(to_string(id));

    encode_args encode;
    auto* encode_cmd = app.add_subcommand("encode", "Compress a volume to ZZC1");
    encode_cmd->add_option("--in", encode.in, "ZZV1 volume or PGM frames")->required()->expected(1, -1);
    encode_cmd->add_option("--out", encode.out, "ZZC1 output path")->required();
    encode_cmd->add_option("--block", encode.block, "Block side")
        ->capture_default_str()
        ->check(CLI::IsMember({2, 4, 8, 16}));
    encode_cmd->add_option("--q", encode.q, "Quantizer step")->required()->check(CLI::Range(1, 65535));
    encode_cmd->add_option("--scan", encode.scan, "Coefficient scan")
        ->capture_default_str()
        ->check(CLI::IsMember(scan_names));

    decode_args decode;
    auto* decode_cmd = app.add_subcommand("decode", "Decompress ZZC1 to a ZZV1 volume");
    decode_cmd->add_option("--in", decode.in, "ZZC1 input")->required();
    decode_cmd->add_option("--out", decode.out, "ZZV1 output")->required();

    compare_args compare;
    auto* compare_cmd = app.add_subcommand("compare", "Compressed size and PSNR for every scan order");
    compare_cmd->add_option("--in", compare.in, "ZZV1 volume or PGM frames")->required()->expected(1, -1);
    compare_cmd->add_option("--block", compare.block, "Block side")
        ->capture_default_str()
        ->check(CLI::IsMember({2, 4, 8, 16}));
    compare_cmd->add_option("--q", compare.q, "Quantizer step")->required()->check(CLI::Range(1, 65535));

    std::string info_in;
    auto* info_cmd = app.add_subcommand("info", "Print the header of a ZZV1 or ZZC1 file");
    info_cmd->add_option("--in", info_in, "File to inspect")->required();

    synth_args synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic synthetic volume as ZZV1");
    synth_cmd->add_option("--kind", synth.kind, "smooth or uniform_random")
        ->required()
        ->check(CLI::IsMember({"smooth", "uniform_random"}));
    synth_cmd->add_option("--dims", synth.dims, "RxCxB")->required();
    synth_cmd->add_option("--seed", synth.seed, "SplitMix64 seed (uniform_random only)")->capture_default_str();
    synth_cmd->add_option("--out", synth.out, "ZZV1 output path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        log.error(e.what());
        return usage;
    }

    try {
        if (*scan_cmd)
            cmd_scan(scan, out);
        else if (*spectrum_cmd)
            cmd_spectrum(spectrum, out, log);
        else if (*encode_cmd)
            cmd_encode(encode, log);
        else if (*decode_cmd)
            cmd_decode(decode, log);
        else if (*compare_cmd)
            cmd_compare(compare, out, log);
        else if (*info_cmd)
            cmd_info(info_in, out);
        else if (*synth_cmd)
            cmd_synth(synth, log);
    } catch (const usage_error& e) {
        log.error(e.what());
        return usage;
    } catch (const zz3d::error& e) {
        log.error(e.what());
        return data;
    } catch (const std::bad_alloc&) {
        log.error("out of memory");
        return data;
    }
    return ok;
}

}  // namespace zz3d::cli
