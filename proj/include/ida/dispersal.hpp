#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ida/codegen.hpp"
#include "ida/matrix.hpp"

namespace ida {

// The m equal-length segments of one source file, as field symbols.
// Contiguous split: segment i holds bytes [i*c, (i+1)*c) of the source,
// c = ceil(L / m), zero-padded past end of file.
struct SegmentBlock {
    std::vector<std::vector<Symbol>> segments;
    std::uint64_t original_length = 0;  // L, bytes
    unsigned field_width = 8;
};

struct PieceHeader {
    unsigned field_width = 8;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t piece_index = 0;
    std::string spec_text;  // canonical generator spec
    std::uint64_t original_length = 0;
    std::uint32_t payload_crc32 = 0;
};

struct Piece {
    PieceHeader header;
    std::vector<Symbol> payload;
};

// Symbol packing, shared by segments and piece payloads:
//   w = 4   two symbols per byte, big nibble first
//   w = 8   one byte per symbol
//   w = 16  two bytes per symbol, little-endian
std::size_t bytes_per_payload(std::size_t symbol_count, unsigned width);
std::vector<Symbol> bytes_to_symbols(std::span<const std::uint8_t> bytes, unsigned width);
std::vector<std::uint8_t> symbols_to_bytes(std::span<const Symbol> symbols, unsigned width);

std::size_t segment_byte_length(std::uint64_t original_length, std::size_t m);
std::size_t segment_symbol_length(std::uint64_t original_length, std::size_t m, unsigned width);

// m >= 1. An empty file yields m zero-length segments.
SegmentBlock split(std::span<const std::uint8_t> bytes, std::size_t m, unsigned width);

// Inverse of split: concatenates segment bytes and truncates to L.
std::vector<std::uint8_t> join(const SegmentBlock& block);

// Encodes block through g (which must equal build(spec) and pass both
// validity conditions; an IDA must not emit recognizable pieces). The
// piece count is g.cols().
std::vector<Piece> encode(const SegmentBlock& block, const GfMatrix& g,
                          const GeneratorSpec& spec);
std::vector<Piece> encode(const SegmentBlock& block, const GeneratorSpec& spec);

// Reconstructs the original bytes from any >= m pieces with mutually
// consistent headers and distinct indices. Uses the lexicographically
// first m pieces by index.
std::vector<std::uint8_t> reconstruct(const std::vector<Piece>& pieces);

// Piece file format, bit-exact:
//   magic "IDA1" | version u8 = 1 | w u8 | m u8 | n u8 | piece_index u8 |
//   spec_len u16 LE | spec bytes | original_length u64 LE |
//   payload_len u64 LE (symbols) | payload bytes | crc32 u32 LE (payload bytes)
std::vector<std::uint8_t> serialize_piece(const Piece& piece);
Piece parse_piece(std::span<const std::uint8_t> bytes);

void write_piece_file(const std::filesystem::path& path, const Piece& piece);
Piece read_piece_file(const std::filesystem::path& path);

}  // namespace ida
