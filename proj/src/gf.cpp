#include "ida/gf.hpp"

#include <cassert>
#include <string>

namespace ida {

namespace {

std::uint32_t poly_for_width(unsigned w) {
    switch (w) {
        case 4:
            return 0x13;
        case 8:
            return 0x11B;
        case 16:
            return 0x1100B;
        default:
            throw FieldError("unsupported field width " + std::to_string(w) +
                             " (supported: 4, 8, 16)");
    }
}

// Shift-and-reduce product, used only while building the tables.
Symbol slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned w) {
    std::uint32_t acc = 0;
    const std::uint32_t high = 1u << w;
    while (b != 0) {
        if (b & 1u) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a & high) a ^= poly;
    }
    return static_cast<Symbol>(acc);
}

}  // namespace

FieldContext::FieldContext(unsigned width)
    : width_(width),
      order_(1u << width),
      group_((1u << width) - 1),
      poly_(poly_for_width(width)),
      generator_(0) {
    log_.assign(order_, 0);
    antilog_.assign(order_, 0);

    // Smallest element whose powers cover the whole multiplicative group.
    // 0x13 and 0x1100B are primitive (g = 2); 0x11B is irreducible but not
    // primitive, there g = 3.
    for (std::uint32_t g = 2; g < order_; ++g) {
        std::uint32_t x = 1;
        std::uint32_t steps = 0;
        do {
            x = slow_mul(static_cast<Symbol>(x), static_cast<Symbol>(g), poly_, width_);
            ++steps;
        } while (x != 1 && steps <= group_);
        if (steps == group_) {
            generator_ = static_cast<Symbol>(g);
            break;
        }
    }
    if (generator_ == 0) throw FieldError("no generator found; polynomial is not irreducible");

    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < group_; ++i) {
        antilog_[i] = static_cast<Symbol>(x);
        log_[x] = static_cast<std::uint16_t>(i);
        x = slow_mul(static_cast<Symbol>(x), generator_, poly_, width_);
    }
    assert(x == 1);
}

const FieldContext& FieldContext::get(unsigned width) {
    switch (width) {
        case 4: {
            static const FieldContext f(4);
            return f;
        }
        case 8: {
            static const FieldContext f(8);
            return f;
        }
        case 16: {
            static const FieldContext f(16);
            return f;
        }
        default:
            throw FieldError("unsupported field width " + std::to_string(width) +
                             " (supported: 4, 8, 16)");
    }
}

Symbol FieldContext::mul(Symbol a, Symbol b) const noexcept {
    assert(in_range(a) && in_range(b));
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= group_) s -= group_;
    return antilog_[s];
}

Symbol FieldContext::inv(Symbol a) const {
    if (a == 0) throw FieldError("no inverse of zero");
    assert(in_range(a));
    const std::uint32_t l = log_[a];
    return antilog_[l == 0 ? 0 : group_ - l];
}

Symbol FieldContext::pow(Symbol a, std::uint64_t e) const noexcept {
    assert(in_range(a));
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t l = static_cast<std::uint64_t>(log_[a]) * (e % group_);
    return antilog_[l % group_];
}

}  // namespace ida
