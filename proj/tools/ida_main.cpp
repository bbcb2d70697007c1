// ida: disperse a file into n pieces recoverable from any m, reconstruct,
// analyze generator-matrix confidentiality, and demonstrate the
// partial-leak attack on weak generators.
//
// Exit codes: 0 success / strong verdict, 1 weak verdict,
//             2 usage or precondition failure, 3 data corruption,
//             4 indeterminate verdict.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ida/confidential.hpp"
#include "ida/dispersal.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitWeak = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCorrupt = 3;
constexpr int kExitIndeterminate = 4;

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ida::DispersalError("cannot open " + path.string());
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ida::DispersalError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ida::DispersalError("write failed: " + path.string());
}

std::vector<ida::Symbol> parse_points(const std::string& text, unsigned width) {
    const ida::FieldContext& f = ida::FieldContext::get(width);
    std::vector<ida::Symbol> points;
    std::size_t p = 0;
    while (p <= text.size()) {
        std::size_t comma = text.find(',', p);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = text.substr(p, comma - p);
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos, 16);
        } catch (const std::exception&) {
            throw ida::SpecError("bad hex point \"" + tok + "\"");
        }
        if (pos != tok.size() || !f.in_range(static_cast<std::uint32_t>(v)))
            throw ida::SpecError("bad hex point \"" + tok + "\"");
        points.push_back(static_cast<ida::Symbol>(v));
        p = comma + 1;
        if (comma == text.size()) break;
    }
    return points;
}

ida::GeneratorSpec spec_from_flags(const std::string& family, unsigned width, std::size_t m,
                                   std::size_t n, const std::string& points_text) {
    std::vector<ida::Symbol> points;
    if (!points_text.empty()) points = parse_points(points_text, width);
    const ida::Family fam = ida::family_from_name(family);
    switch (fam) {
        case ida::Family::cauchy:
            return ida::make_cauchy_spec(width, m, n, std::move(points));
        case ida::Family::vandermonde:
            return ida::make_vandermonde_spec(width, m, n, std::move(points));
        case ida::Family::rs_strong:
            return ida::make_rs_strong_spec(width, m, n, std::move(points));
        case ida::Family::explicit_matrix: {
            if (points.empty())
                throw ida::SpecError("explicit family requires --points with m*n entries");
            const ida::FieldContext& f = ida::FieldContext::get(width);
            return ida::make_explicit_spec(ida::GfMatrix(f, m, n, std::move(points)));
        }
    }
    throw ida::SpecError("unknown family");
}

std::vector<ida::Piece> read_pieces(const std::vector<std::string>& paths) {
    std::vector<ida::Piece> pieces;
    pieces.reserve(paths.size());
    for (const auto& p : paths) pieces.push_back(ida::read_piece_file(p));
    return pieces;
}

int cmd_disperse(const std::string& in_path, const std::string& out_dir, std::size_t m,
                 std::size_t n, unsigned width, const std::string& family,
                 const std::string& points_text) {
    const ida::GeneratorSpec spec = spec_from_flags(family, width, m, n, points_text);
    const std::vector<std::uint8_t> data = read_file(in_path);
    const ida::SegmentBlock block = ida::split(data, m, width);
    const ida::GfMatrix g = ida::build(spec);
    const std::vector<ida::Piece> pieces = ida::encode(block, g, spec);

    fs::create_directories(out_dir);
    const std::string stem = fs::path(in_path).stem().string();
    std::uintmax_t total_file_bytes = 0;
    for (const auto& piece : pieces) {
        const fs::path out =
            fs::path(out_dir) / (stem + ".p" + std::to_string(piece.header.piece_index) + ".ida");
        ida::write_piece_file(out, piece);
        total_file_bytes += fs::file_size(out);
    }

    const std::size_t payload_symbols = pieces[0].payload.size();
    const std::size_t payload_bytes = ida::bytes_per_payload(payload_symbols, width);
    std::cout << "dispersed: " << in_path << " (" << data.size() << " bytes)\n";
    std::cout << "family: " << family_name(spec.family) << "  w: " << width << "  m: " << m
              << "  n: " << pieces.size() << "\n";
    std::cout << "piece payload: " << payload_symbols << " symbols (" << payload_bytes
              << " bytes)\n";
    std::cout << "piece files: " << pieces.size() << " x "
              << (total_file_bytes / pieces.size()) << " bytes in " << out_dir << "\n";
    if (data.empty()) {
        std::cout << "payload overhead: n/a (empty input)\n";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f",
                      static_cast<double>(payload_bytes) * static_cast<double>(pieces.size()) /
                          static_cast<double>(data.size()));
        std::cout << "payload overhead: " << buf << "\n";
    }
    return kExitOk;
}

int cmd_reconstruct(const std::string& out_path, const std::vector<std::string>& piece_paths) {
    const std::vector<ida::Piece> pieces = read_pieces(piece_paths);
    const std::vector<std::uint8_t> data = ida::reconstruct(pieces);
    write_file(out_path, data);
    std::cout << "reconstructed " << data.size() << " bytes -> " << out_path << "\n";
    return kExitOk;
}

int verdict_exit(ida::Verdict v) {
    switch (v) {
        case ida::Verdict::weak: return kExitWeak;
        case ida::Verdict::strong_certified:
        case ida::Verdict::strong_by_exhaustion: return kExitOk;
        case ida::Verdict::indeterminate: return kExitIndeterminate;
    }
    return kExitUsage;
}

int cmd_analyze(const std::string& spec_text, const std::string& matrix_path,
                const std::string& format) {
    if (spec_text.empty() == matrix_path.empty())
        throw ida::SpecError("analyze needs exactly one of --spec or --matrix");

    ida::GfMatrix g = [&] {
        if (!spec_text.empty()) return ida::build(ida::parse_spec_text(spec_text));
        const std::vector<std::uint8_t> raw = read_file(matrix_path);
        return ida::parse_matrix_text(std::string(raw.begin(), raw.end()));
    }();

    const ida::ConfidentialityReport report = ida::certify_strong(g);
    if (format == "text") {
        std::cout << ida::report_to_text(report, g);
    } else {
        std::cout << ida::report_to_json(report);
    }
    return verdict_exit(report.verdict);
}

int cmd_attack(const std::string& out_dir, const std::vector<std::string>& piece_paths) {
    const std::vector<ida::Piece> pieces = read_pieces(piece_paths);
    if (pieces.empty()) throw ida::DispersalError("no pieces given");

    const ida::PieceHeader& h0 = pieces[0].header;
    for (const auto& p : pieces) {
        if (p.header.spec_text != h0.spec_text || p.header.m != h0.m || p.header.n != h0.n ||
            p.header.original_length != h0.original_length)
            throw ida::DispersalError("piece header mismatch between eavesdropped pieces");
    }
    if (pieces.size() >= h0.m)
        throw ida::AnalysisError("have " + std::to_string(pieces.size()) + " of m=" +
                                 std::to_string(h0.m) + " pieces; use full reconstruction");

    const ida::GfMatrix g = ida::build(ida::parse_spec_text(h0.spec_text));
    std::vector<ida::IndexedPayload> eavesdropped;
    for (const auto& p : pieces) eavesdropped.emplace_back(p.header.piece_index, p.payload);

    const std::vector<ida::IndexedPayload> leaked = ida::attack(g, eavesdropped);
    if (leaked.empty()) {
        std::cout << "no segments recoverable from " << pieces.size() << " piece(s)\n";
        return kExitOk;
    }

    fs::create_directories(out_dir);
    const std::uint64_t L = h0.original_length;
    const std::uint64_t c = ida::segment_byte_length(L, h0.m);
    for (const auto& [index, symbols] : leaked) {
        const std::uint64_t begin = std::min<std::uint64_t>(index * c, L);
        const std::uint64_t end = std::min<std::uint64_t>(begin + c, L);
        std::vector<std::uint8_t> bytes = ida::symbols_to_bytes(symbols, h0.field_width);
        bytes.resize(end - begin);
        const fs::path out = fs::path(out_dir) / ("segment_" + std::to_string(index) + ".bin");
        write_file(out, bytes);
        std::cout << "segment " << index << ": file bytes [" << begin << "," << end << ") -> "
                  << out.string() << "\n";
    }
    std::cout << leaked.size() << " segment(s) recovered from " << pieces.size()
              << " piece(s), fewer than m=" << h0.m << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"information dispersal with confidentiality analysis"};
    app.require_subcommand(1);

    // disperse
    auto* disperse = app.add_subcommand("disperse", "split a file into n pieces");
    std::size_t m = 0, n = 0;
    unsigned width = 8;
    std::string family = "cauchy", points, in_path, out_dir = ".";
    disperse->add_option("--m", m, "segment count")->required();
    disperse->add_option("--n", n, "piece count")->required();
    disperse->add_option("--field", width, "field width w (4, 8 or 16)");
    disperse->add_option("--code", family, "cauchy | vandermonde | rs_strong | explicit");
    disperse->add_option("--points", points, "comma-separated hex parameters");
    disperse->add_option("--in", in_path, "input file")->required();
    disperse->add_option("--out", out_dir, "output directory");

    // reconstruct
    auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a file from >= m pieces");
    std::string rec_out;
    std::vector<std::string> rec_pieces;
    reconstruct->add_option("--out", rec_out, "output file")->required();
    reconstruct->add_option("pieces", rec_pieces, "piece files")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "confidentiality report for a generator");
    std::string spec_text, matrix_path, format = "json";
    analyze->add_option("--spec", spec_text, "generator spec family:w:m:n:points");
    analyze->add_option("--matrix", matrix_path, "matrix text file (\"w rows cols\" + hex)");
    analyze->add_option("--format", format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));

    // attack
    auto* attack = app.add_subcommand("attack", "recover leaked segments from < m pieces");
    std::string atk_out = ".";
    std::vector<std::string> atk_pieces;
    attack->add_option("--out", atk_out, "output directory for leaked segments");
    attack->add_option("pieces", atk_pieces, "eavesdropped piece files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (disperse->parsed())
            return cmd_disperse(in_path, out_dir, m, n, width, family, points);
        if (reconstruct->parsed()) return cmd_reconstruct(rec_out, rec_pieces);
        if (analyze->parsed()) return cmd_analyze(spec_text, matrix_path, format);
        if (attack->parsed()) return cmd_attack(atk_out, atk_pieces);
    } catch (const ida::CorruptPieceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
