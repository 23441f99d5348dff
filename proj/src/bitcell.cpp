#include "imcsim/bitcell.hpp"

namespace imcsim {

const char* to_string(Level l) {
    switch (l) {
        case Level::Low: return "L";
        case Level::High: return "H";
        case Level::DontCare: return "X";
    }
    return "?";
}

const char* to_string(ModeTag m) {
    switch (m) {
        case ModeTag::Hold: return "Hold";
        case ModeTag::Write: return "Write";
        case ModeTag::Read: return "Read";
        case ModeTag::Compute: return "Compute";
    }
    return "?";
}

SignalVector SignalVector::hold() {
    return SignalVector{};
}

SignalVector SignalVector::write(bool bit) {
    SignalVector sig;
    sig.wwl = Level::High;
    sig.rwl = Level::DontCare;
    sig.rwlb = Level::High;
    sig.bl = bit ? Level::High : Level::Low;
    sig.blb = bit ? Level::Low : Level::High;
    return sig;
}

SignalVector SignalVector::read_direct() {
    SignalVector sig;
    sig.rwl = Level::High;
    sig.rwlb = Level::Low;
    return sig;
}

SignalVector SignalVector::read_reversed() {
    SignalVector sig;
    sig.rwl = Level::Low;
    sig.rwlb = Level::High;
    return sig;
}

SignalVector SignalVector::compute(bool input_logic) {
    return input_logic ? read_direct() : read_reversed();
}

namespace {

CycleResult do_write(const CellState&, const SignalVector& sig) {
    if (!is_driven(sig.bl) || !is_driven(sig.blb)) {
        throw InvalidBias("write cycle requires BL and BLB to be driven");
    }
    if (sig.bl == sig.blb) {
        throw InvalidBias("write cycle with BL == BLB has no defined outcome");
    }
    CycleResult out;
    out.state = CellState(sig.bl == Level::High);
    out.bitlines = BitlineResult{};  // read bitlines are don't-care during a write
    out.mode = ModeTag::Write;
    return out;
}

CycleResult do_hold(const CellState& state, const SignalVector& sig) {
    if (!state.valid) {
        throw StateError("hold on a cell that was never written");
    }
    CycleResult out;
    out.state = state;
    // With both read wordlines high there is no discharge path; a precharged
    // bitline keeps its level, an unprecharged one floats.
    out.bitlines.rbl = sig.rbl_precharged ? Level::High : Level::DontCare;
    out.bitlines.rblb = sig.rblb_precharged ? Level::High : Level::DontCare;
    out.mode = ModeTag::Hold;
    return out;
}

CycleResult do_read(const CellState& state, const SignalVector& sig) {
    if (!sig.rbl_precharged || !sig.rblb_precharged) {
        throw InvalidBias("read/compute cycle requires both read bitlines precharged");
    }
    if (!state.valid) {
        throw StateError("read on a cell that was never written");
    }
    const bool direct = (sig.rwl == Level::High);
    // Direct biasing discharges the bitline on the side of the '0' storage
    // node; reversed biasing senses the opposite output.
    bool rbl_discharges = direct ? !state.q : state.q;
    CycleResult out;
    out.state = state;
    out.bitlines.rbl = rbl_discharges ? Level::Low : Level::High;
    out.bitlines.rblb = rbl_discharges ? Level::High : Level::Low;
    out.mode = ModeTag::Read;
    return out;
}

}  // namespace

CycleResult apply_cycle(const CellState& state, const SignalVector& sig) {
    if (!is_driven(sig.wwl)) {
        throw InvalidBias("WWL must be driven high or low");
    }
    if (sig.wwl == Level::High) {
        // RWL is don't-care while writing; RWLB must stay high so the read
        // stack cannot fight the write.
        if (sig.rwlb != Level::High) {
            throw InvalidBias("write cycle requires RWLB high");
        }
        return do_write(state, sig);
    }
    if (!is_driven(sig.rwl) || !is_driven(sig.rwlb)) {
        throw InvalidBias("read wordlines must be driven high or low");
    }
    if (sig.rwl == Level::High && sig.rwlb == Level::High) {
        return do_hold(state, sig);
    }
    if (sig.rwl == Level::Low && sig.rwlb == Level::Low) {
        throw InvalidBias("both read wordlines low is undefined");
    }
    return do_read(state, sig);
}

BinBit BinBit::from_value(int v) {
    if (v != +1 && v != -1) {
        throw DomainError("binary value must be +1 or -1");
    }
    return BinBit{v == +1};
}

int encode(int value) {
    if (value != +1 && value != -1) {
        throw DomainError("encode expects +1 or -1");
    }
    return value == +1 ? 1 : 0;
}

int decode(int logic_bit) {
    if (logic_bit != 0 && logic_bit != 1) {
        throw DomainError("decode expects logic 0 or 1");
    }
    return logic_bit == 1 ? +1 : -1;
}

XnorResult xnor_compute(const CellState& weight, BinBit input) {
    CycleResult cycle = apply_cycle(weight, SignalVector::compute(input.logic));
    return XnorResult{cycle.bitlines.rbl == Level::High,
                      cycle.bitlines.rblb == Level::High};
}

}  // namespace imcsim
