#include "ida/dispersal.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <fstream>

#include <zlib.h>

#include "ida/subsets.hpp"

namespace ida {

namespace {

constexpr char kMagic[4] = {'I', 'D', 'A', '1'};
constexpr std::uint8_t kVersion = 1;

std::uint32_t payload_crc(std::span<const std::uint8_t> bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, bytes.empty() ? Z_NULL : bytes.data(), static_cast<uInt>(bytes.size())));
}

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() { return take(1)[0]; }
    std::uint16_t u16le() {
        const auto b = take(2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32le() {
        const auto b = take(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::uint64_t u64le() {
        const auto b = take(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::span<const std::uint8_t> take(std::size_t count) {
        if (count > bytes_.size() - pos_)
            throw DispersalError("piece file truncated");
        const auto out = bytes_.subspan(pos_, count);
        pos_ += count;
        return out;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::size_t bytes_per_payload(std::size_t symbol_count, unsigned width) {
    switch (width) {
        case 4: return (symbol_count + 1) / 2;
        case 8: return symbol_count;
        case 16: return symbol_count * 2;
    }
    throw FieldError("unsupported field width " + std::to_string(width));
}

std::vector<Symbol> bytes_to_symbols(std::span<const std::uint8_t> bytes, unsigned width) {
    std::vector<Symbol> out;
    switch (width) {
        case 4:
            out.reserve(bytes.size() * 2);
            for (std::uint8_t b : bytes) {
                out.push_back(static_cast<Symbol>(b >> 4));
                out.push_back(static_cast<Symbol>(b & 0xF));
            }
            break;
        case 8:
            out.assign(bytes.begin(), bytes.end());
            break;
        case 16:
            out.reserve((bytes.size() + 1) / 2);
            for (std::size_t i = 0; i < bytes.size(); i += 2) {
                const std::uint16_t lo = bytes[i];
                const std::uint16_t hi = i + 1 < bytes.size() ? bytes[i + 1] : 0;
                out.push_back(static_cast<Symbol>(lo | (hi << 8)));
            }
            break;
        default:
            throw FieldError("unsupported field width " + std::to_string(width));
    }
    return out;
}

std::vector<std::uint8_t> symbols_to_bytes(std::span<const Symbol> symbols, unsigned width) {
    std::vector<std::uint8_t> out;
    switch (width) {
        case 4:
            out.reserve((symbols.size() + 1) / 2);
            for (std::size_t i = 0; i < symbols.size(); i += 2) {
                const std::uint8_t hi = static_cast<std::uint8_t>(symbols[i] & 0xF);
                const std::uint8_t lo =
                    i + 1 < symbols.size() ? static_cast<std::uint8_t>(symbols[i + 1] & 0xF) : 0;
                out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
            }
            break;
        case 8:
            out.reserve(symbols.size());
            for (Symbol s : symbols) out.push_back(static_cast<std::uint8_t>(s & 0xFF));
            break;
        case 16:
            out.reserve(symbols.size() * 2);
            for (Symbol s : symbols) {
                out.push_back(static_cast<std::uint8_t>(s & 0xFF));
                out.push_back(static_cast<std::uint8_t>(s >> 8));
            }
            break;
        default:
            throw FieldError("unsupported field width " + std::to_string(width));
    }
    return out;
}

std::size_t segment_byte_length(std::uint64_t original_length, std::size_t m) {
    if (m == 0) throw DispersalError("split requires m >= 1");
    return static_cast<std::size_t>((original_length + m - 1) / m);
}

std::size_t segment_symbol_length(std::uint64_t original_length, std::size_t m, unsigned width) {
    const std::size_t c = segment_byte_length(original_length, m);
    switch (width) {
        case 4: return c * 2;
        case 8: return c;
        case 16: return (c + 1) / 2;
    }
    throw FieldError("unsupported field width " + std::to_string(width));
}

SegmentBlock split(std::span<const std::uint8_t> bytes, std::size_t m, unsigned width) {
    FieldContext::get(width);  // validates the width
    const std::size_t c = segment_byte_length(bytes.size(), m);

    SegmentBlock block;
    block.original_length = bytes.size();
    block.field_width = width;
    block.segments.reserve(m);
    std::vector<std::uint8_t> chunk(c, 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(chunk.begin(), chunk.end(), 0);
        const std::size_t begin = std::min<std::size_t>(i * c, bytes.size());
        const std::size_t end = std::min<std::size_t>(begin + c, bytes.size());
        std::copy(bytes.begin() + begin, bytes.begin() + end, chunk.begin());
        block.segments.push_back(bytes_to_symbols(chunk, width));
    }
    return block;
}

std::vector<std::uint8_t> join(const SegmentBlock& block) {
    const std::size_t m = block.segments.size();
    const std::size_t c = segment_byte_length(block.original_length, m);
    std::vector<std::uint8_t> out;
    out.reserve(m * c);
    for (const auto& seg : block.segments) {
        std::vector<std::uint8_t> bytes = symbols_to_bytes(seg, block.field_width);
        if (bytes.size() < c) throw DispersalError("segment shorter than expected");
        out.insert(out.end(), bytes.begin(), bytes.begin() + c);
    }
    out.resize(block.original_length);
    return out;
}

std::vector<Piece> encode(const SegmentBlock& block, const GfMatrix& g,
                          const GeneratorSpec& spec) {
    const FieldContext& f = g.field();
    const std::size_t m = g.rows(), n = g.cols();
    if (block.segments.size() != m)
        throw DispersalError("segment count " + std::to_string(block.segments.size()) +
                             " does not match generator rows " + std::to_string(m));
    if (block.field_width != f.width())
        throw DispersalError("segment field width does not match generator field");
    if (!(build(spec) == g))
        throw DispersalError("generator matrix does not match its spec");
    if (n > 255 || m > 255)
        throw DispersalError("piece format supports at most 255 pieces");
    require_validity(g);

    const std::size_t len = block.segments[0].size();
    for (const auto& seg : block.segments)
        if (seg.size() != len) throw DispersalError("segments have unequal lengths");

    const std::string spec_text = canonical_text(spec);
    std::vector<Piece> pieces(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Symbol> payload(len, 0);
        for (std::size_t i = 0; i < m; ++i) {
            const Symbol gij = g.at(i, j);
            if (gij == 0) continue;
            const auto& seg = block.segments[i];
            for (std::size_t t = 0; t < len; ++t)
                payload[t] = FieldContext::add(payload[t], f.mul(seg[t], gij));
        }
        Piece& piece = pieces[j];
        piece.header.field_width = f.width();
        piece.header.m = m;
        piece.header.n = n;
        piece.header.piece_index = j;
        piece.header.spec_text = spec_text;
        piece.header.original_length = block.original_length;
        piece.header.payload_crc32 = payload_crc(symbols_to_bytes(payload, f.width()));
        piece.payload = std::move(payload);
    }
    return pieces;
}

std::vector<Piece> encode(const SegmentBlock& block, const GeneratorSpec& spec) {
    return encode(block, build(spec), spec);
}

namespace {

void check_header_field(bool ok, const char* field) {
    if (!ok)
        throw DispersalError(std::string("piece header mismatch: ") + field);
}

}  // namespace

std::vector<std::uint8_t> reconstruct(const std::vector<Piece>& pieces) {
    if (pieces.empty()) throw DispersalError("insufficient pieces (have 0)");
    const PieceHeader& h0 = pieces[0].header;
    for (const Piece& p : pieces) {
        check_header_field(p.header.field_width == h0.field_width, "field_width");
        check_header_field(p.header.m == h0.m, "m");
        check_header_field(p.header.n == h0.n, "n");
        check_header_field(p.header.spec_text == h0.spec_text, "generator spec");
        check_header_field(p.header.original_length == h0.original_length, "original_length");
        check_header_field(p.payload.size() == pieces[0].payload.size(), "payload length");
    }
    const std::size_t m = h0.m;
    if (pieces.size() < m)
        throw DispersalError("insufficient pieces (have " + std::to_string(pieces.size()) +
                             ", need " + std::to_string(m) + ")");

    std::vector<std::size_t> order(pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pieces[a].header.piece_index < pieces[b].header.piece_index;
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (pieces[order[i]].header.piece_index == pieces[order[i - 1]].header.piece_index)
            throw DispersalError("duplicate piece index " +
                                 std::to_string(pieces[order[i]].header.piece_index));

    const FieldContext& f = FieldContext::get(h0.field_width);
    for (const Piece& p : pieces) {
        if (p.header.piece_index >= h0.n)
            throw DispersalError("piece index " + std::to_string(p.header.piece_index) +
                                 " out of range");
        const std::uint32_t crc = payload_crc(symbols_to_bytes(p.payload, h0.field_width));
        if (crc != p.header.payload_crc32)
            throw CorruptPieceError("piece " + std::to_string(p.header.piece_index) +
                                    ": payload checksum mismatch");
    }

    const GeneratorSpec spec = parse_spec_text(h0.spec_text);
    const GfMatrix g = build(spec);
    if (g.rows() != m || g.cols() != h0.n)
        throw DispersalError("piece header mismatch: spec dimensions");
    const std::size_t expected_len = segment_symbol_length(h0.original_length, m, h0.field_width);
    if (pieces[0].payload.size() != expected_len)
        throw DispersalError("piece header mismatch: payload length vs original_length");

    // Lexicographically first m available pieces.
    std::vector<std::size_t> col_idx(m);
    std::vector<const Piece*> used(m);
    for (std::size_t i = 0; i < m; ++i) {
        used[i] = &pieces[order[i]];
        col_idx[i] = used[i]->header.piece_index;
    }

    // S * M = F over the selected columns, so S = F * M^-1.
    const GfMatrix minv = invert(submatrix(g, first_combination(m), col_idx));
    const std::size_t len = pieces[0].payload.size();

    SegmentBlock block;
    block.original_length = h0.original_length;
    block.field_width = h0.field_width;
    block.segments.assign(m, std::vector<Symbol>(len, 0));
    for (std::size_t i = 0; i < m; ++i) {
        auto& seg = block.segments[i];
        for (std::size_t j = 0; j < m; ++j) {
            const Symbol w = minv.at(j, i);
            if (w == 0) continue;
            const auto& payload = used[j]->payload;
            for (std::size_t t = 0; t < len; ++t)
                seg[t] = FieldContext::add(seg[t], f.mul(w, payload[t]));
        }
    }
    return join(block);
}

std::vector<std::uint8_t> serialize_piece(const Piece& piece) {
    const PieceHeader& h = piece.header;
    if (h.spec_text.size() > 0xFFFF) throw DispersalError("spec text too long for piece header");
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(h.field_width));
    out.push_back(static_cast<std::uint8_t>(h.m));
    out.push_back(static_cast<std::uint8_t>(h.n));
    out.push_back(static_cast<std::uint8_t>(h.piece_index));
    put_u16le(out, static_cast<std::uint16_t>(h.spec_text.size()));
    out.insert(out.end(), h.spec_text.begin(), h.spec_text.end());
    put_u64le(out, h.original_length);
    put_u64le(out, piece.payload.size());
    const std::vector<std::uint8_t> payload_bytes = symbols_to_bytes(piece.payload, h.field_width);
    out.insert(out.end(), payload_bytes.begin(), payload_bytes.end());
    put_u32le(out, h.payload_crc32);
    return out;
}

Piece parse_piece(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    const auto magic = in.take(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        throw DispersalError("not a piece file (bad magic)");
    const std::uint8_t version = in.u8();
    if (version != kVersion)
        throw DispersalError("unsupported piece format version " + std::to_string(version));

    Piece piece;
    PieceHeader& h = piece.header;
    h.field_width = in.u8();
    if (h.field_width != 4 && h.field_width != 8 && h.field_width != 16)
        throw DispersalError("piece header: unsupported field width " +
                             std::to_string(h.field_width));
    h.m = in.u8();
    h.n = in.u8();
    h.piece_index = in.u8();
    if (h.m == 0 || h.m >= h.n) throw DispersalError("piece header: requires 1 <= m < n");
    if (h.piece_index >= h.n) throw DispersalError("piece header: piece index out of range");

    const std::uint16_t spec_len = in.u16le();
    const auto spec_bytes = in.take(spec_len);
    h.spec_text.assign(spec_bytes.begin(), spec_bytes.end());
    parse_spec_text(h.spec_text);  // must parse; build is checked at reconstruct

    h.original_length = in.u64le();
    const std::uint64_t payload_len = in.u64le();
    // Even at w=4 a symbol occupies half a byte; anything larger is a lie.
    if (payload_len > static_cast<std::uint64_t>(in.remaining()) * 2)
        throw DispersalError("piece file truncated");
    const std::size_t payload_bytes = bytes_per_payload(payload_len, h.field_width);
    const auto payload = in.take(payload_bytes);
    piece.payload = bytes_to_symbols(payload, h.field_width);
    piece.payload.resize(payload_len);

    h.payload_crc32 = in.u32le();
    if (in.remaining() != 0) throw DispersalError("piece file has trailing bytes");
    if (payload_crc(payload) != h.payload_crc32)
        throw CorruptPieceError("piece " + std::to_string(h.piece_index) +
                                ": payload checksum mismatch");
    return piece;
}

void write_piece_file(const std::filesystem::path& path, const Piece& piece) {
    const std::vector<std::uint8_t> bytes = serialize_piece(piece);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DispersalError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DispersalError("write failed: " + path.string());
}

Piece read_piece_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DispersalError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return parse_piece(bytes);
    } catch (const CorruptPieceError& e) {
        throw CorruptPieceError(path.string() + ": " + e.what());
    } catch (const DispersalError& e) {
        throw DispersalError(path.string() + ": " + e.what());
    }
}

}  // namespace ida
