#pragma once

#include <cstdint>
#include <vector>

#include "ida/errors.hpp"

namespace ida {

// One element of GF(2^w), value < 2^w. The width lives in the enclosing
// FieldContext, not in the element.
using Symbol = std::uint16_t;

// Arithmetic context for GF(2^w), w in {4, 8, 16}.
//
// Multiplication and inversion run over log/antilog tables built once at
// construction from a fixed primitive polynomial per width:
//   w = 4  -> x^4 + x + 1              (0x13)
//   w = 8  -> x^8 + x^4 + x^3 + x + 1  (0x11B)
//   w = 16 -> x^16 + x^12 + x^3 + x + 1 (0x1100B)
//
// Contexts are immutable after construction; every operation is pure and
// safe to call from any number of threads.
class FieldContext {
public:
    // Shared per-width instance. Throws FieldError for unsupported widths.
    static const FieldContext& get(unsigned width);

    explicit FieldContext(unsigned width);

    unsigned width() const noexcept { return width_; }
    std::uint32_t order() const noexcept { return order_; }  // 2^w
    Symbol max_value() const noexcept { return static_cast<Symbol>(order_ - 1); }
    std::uint32_t primitive_poly() const noexcept { return poly_; }
    Symbol generator() const noexcept { return generator_; }

    bool in_range(std::uint32_t a) const noexcept { return a < order_; }

    // Addition is XOR; every element is its own additive inverse.
    static Symbol add(Symbol a, Symbol b) noexcept { return static_cast<Symbol>(a ^ b); }
    static Symbol sub(Symbol a, Symbol b) noexcept { return static_cast<Symbol>(a ^ b); }

    Symbol mul(Symbol a, Symbol b) const noexcept;

    // Throws FieldError("no inverse of zero") on a == 0.
    Symbol inv(Symbol a) const;

    // Repeated product. pow(a, 0) == 1 for every a, including a == 0.
    Symbol pow(Symbol a, std::uint64_t e) const noexcept;

    bool operator==(const FieldContext& other) const noexcept {
        return width_ == other.width_ && poly_ == other.poly_;
    }

private:
    unsigned width_;
    std::uint32_t order_;       // 2^w
    std::uint32_t group_;       // 2^w - 1, order of the multiplicative group
    std::uint32_t poly_;
    Symbol generator_;
    std::vector<std::uint16_t> log_;      // log_[0] is a sentinel, never read
    std::vector<Symbol> antilog_;         // indices 0 .. group_-1
};

}  // namespace ida
