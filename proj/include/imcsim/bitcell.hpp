#pragma once

#include <cstdint>

#include "imcsim/errors.hpp"

namespace imcsim {

// Drive level on a control or bitline wire. DontCare is legal only where the
// biasing table marks the wire X; wordlines must always be driven.
enum class Level : std::uint8_t { Low, High, DontCare };

inline constexpr bool is_driven(Level l) { return l != Level::DontCare; }

enum class ModeTag : std::uint8_t { Hold, Write, Read, Compute };

const char* to_string(Level l);
const char* to_string(ModeTag m);

// Storage nodes of one read-decoupled 10T cell. A default-constructed cell is
// in the unknown power-up state; it becomes valid through a Write cycle (or
// the explicit constructor, which models a cell that has been written).
struct CellState {
    bool q = false;
    bool qb = true;
    bool valid = false;

    CellState() = default;
    explicit CellState(bool stored_q) : q(stored_q), qb(!stored_q), valid(true) {}

    friend bool operator==(const CellState&, const CellState&) = default;
};

// One cycle's drive values. Defaults to the hold biasing with both read
// bitlines precharged.
struct SignalVector {
    Level wwl = Level::Low;
    Level rwl = Level::High;
    Level rwlb = Level::High;
    Level bl = Level::DontCare;
    Level blb = Level::DontCare;
    bool rbl_precharged = true;
    bool rblb_precharged = true;

    static SignalVector hold();
    // Write the given bit (BL carries the bit, BLB its complement, WWL high).
    static SignalVector write(bool bit);
    // Direct read: RWL=H, RWLB=L senses Q on RBL.
    static SignalVector read_direct();
    // Reversed read: RWL=L, RWLB=H senses the opposite output.
    static SignalVector read_reversed();
    // Input-to-wordline mapping for XNOR compute: input 1 drives the direct
    // biasing, input 0 the reversed one.
    static SignalVector compute(bool input_logic);
};

// Final levels on the read bitline pair after a cycle. DontCare where the
// biasing table leaves the outputs unspecified (write cycles).
struct BitlineResult {
    Level rbl = Level::DontCare;
    Level rblb = Level::DontCare;

    friend bool operator==(const BitlineResult&, const BitlineResult&) = default;
};

struct CycleResult {
    CellState state;
    BitlineResult bitlines;
    ModeTag mode;
};

// Evaluate one biasing cycle against the cell. Throws InvalidBias for any
// drive combination outside the defined memory-mode rows (both read wordlines
// low, write with equal or undriven bitlines, undriven wordlines, or a
// read/compute cycle without both bitlines precharged). Throws StateError when
// a read or hold touches a cell that was never written.
CycleResult apply_cycle(const CellState& state, const SignalVector& sig);

// A +1/-1 value carried as a logic bit: logic 1 encodes +1, logic 0 encodes -1.
struct BinBit {
    bool logic = false;

    constexpr int value() const { return logic ? +1 : -1; }
    static BinBit from_value(int v);
    static constexpr BinBit from_logic(bool b) { return BinBit{b}; }

    friend bool operator==(const BinBit&, const BinBit&) = default;
};

// encode(+1) == 1, encode(-1) == 0; decode is the inverse on {0, 1}.
// Any other argument raises DomainError.
int encode(int value);
int decode(int logic_bit);

struct XnorResult {
    bool rbl_out;   // XNOR(input, weight)
    bool rblb_out;  // XOR(input, weight)
};

// In-cell multiply: the input selects the wordline biasing, the stored weight
// selects which bitline discharges. The RBL side carries the XNOR of the two
// logic bits, i.e. the +1/-1 product under the BinBit encoding.
XnorResult xnor_compute(const CellState& weight, BinBit input);

}  // namespace imcsim
