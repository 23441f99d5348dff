#include <doctest.h>

#include <vector>

#include "imcsim/bitcell.hpp"

using namespace imcsim;

TEST_SUITE("bitcell") {

TEST_CASE("xnor truth table is exhaustive and equals the signed product") {
    for (int w : {0, 1}) {
        for (int i : {0, 1}) {
            const CellState weight(w == 1);
            const BinBit input = BinBit::from_logic(i == 1);
            const XnorResult r = xnor_compute(weight, input);
            CHECK(r.rbl_out == (w == i));
            CHECK(r.rblb_out == (w != i));
            // RBL carries the +1/-1 product under the logic encoding.
            const int product = decode(w) * input.value();
            CHECK(decode(r.rbl_out ? 1 : 0) == product);
        }
    }
}

TEST_CASE("hold keeps the state and both precharged bitlines high") {
    for (bool q : {false, true}) {
        const CycleResult r = apply_cycle(CellState(q), SignalVector::hold());
        CHECK(r.mode == ModeTag::Hold);
        CHECK(r.state.q == q);
        CHECK(r.state.qb == !q);
        CHECK(r.bitlines.rbl == Level::High);
        CHECK(r.bitlines.rblb == Level::High);
    }
}

TEST_CASE("hold without precharge floats the bitlines") {
    SignalVector sig = SignalVector::hold();
    sig.rbl_precharged = false;
    const CycleResult r = apply_cycle(CellState(true), sig);
    CHECK(r.bitlines.rbl == Level::DontCare);
    CHECK(r.bitlines.rblb == Level::High);
}

TEST_CASE("write stores the bitline value regardless of the previous state") {
    for (bool before_valid : {false, true}) {
        for (bool bit : {false, true}) {
            const CellState before = before_valid ? CellState(!bit) : CellState();
            const CycleResult r = apply_cycle(before, SignalVector::write(bit));
            CHECK(r.mode == ModeTag::Write);
            CHECK(r.state.valid);
            CHECK(r.state.q == bit);
            CHECK(r.state.qb == !bit);
            // Read bitlines are unspecified during a write.
            CHECK(r.bitlines.rbl == Level::DontCare);
            CHECK(r.bitlines.rblb == Level::DontCare);
        }
    }
}

TEST_CASE("direct read discharges RBL for 0 and RBLB for 1") {
    const CycleResult r0 = apply_cycle(CellState(false), SignalVector::read_direct());
    CHECK(r0.mode == ModeTag::Read);
    CHECK(r0.bitlines.rbl == Level::Low);
    CHECK(r0.bitlines.rblb == Level::High);

    const CycleResult r1 = apply_cycle(CellState(true), SignalVector::read_direct());
    CHECK(r1.bitlines.rbl == Level::High);
    CHECK(r1.bitlines.rblb == Level::Low);
}

TEST_CASE("reversed biasing senses the opposite output") {
    for (bool q : {false, true}) {
        const CycleResult direct = apply_cycle(CellState(q), SignalVector::read_direct());
        const CycleResult reversed =
            apply_cycle(CellState(q), SignalVector::read_reversed());
        CHECK(reversed.bitlines.rbl == direct.bitlines.rblb);
        CHECK(reversed.bitlines.rblb == direct.bitlines.rbl);
    }
}

TEST_CASE("reads never disturb the stored state") {
    for (bool q : {false, true}) {
        for (const SignalVector& sig :
             {SignalVector::read_direct(), SignalVector::read_reversed()}) {
            const CycleResult r = apply_cycle(CellState(q), sig);
            CHECK(r.state == CellState(q));
        }
    }
}

TEST_CASE("write then read round-trips the bit") {
    for (bool bit : {false, true}) {
        const CycleResult w = apply_cycle(CellState(), SignalVector::write(bit));
        const CycleResult r = apply_cycle(w.state, SignalVector::read_direct());
        // RBL stays high exactly when a 1 is stored.
        CHECK((r.bitlines.rbl == Level::High) == bit);
    }
}

TEST_CASE("undefined biasings are rejected") {
    const CellState cell(true);

    SignalVector undriven_wwl;
    undriven_wwl.wwl = Level::DontCare;
    CHECK_THROWS_AS(apply_cycle(cell, undriven_wwl), InvalidBias);

    SignalVector both_low;
    both_low.rwl = Level::Low;
    both_low.rwlb = Level::Low;
    CHECK_THROWS_AS(apply_cycle(cell, both_low), InvalidBias);

    SignalVector undriven_read;
    undriven_read.rwl = Level::DontCare;
    undriven_read.rwlb = Level::Low;
    CHECK_THROWS_AS(apply_cycle(cell, undriven_read), InvalidBias);

    SignalVector write_low_rwlb = SignalVector::write(true);
    write_low_rwlb.rwlb = Level::Low;
    CHECK_THROWS_AS(apply_cycle(cell, write_low_rwlb), InvalidBias);

    SignalVector write_equal = SignalVector::write(true);
    write_equal.blb = write_equal.bl;
    CHECK_THROWS_AS(apply_cycle(cell, write_equal), InvalidBias);

    SignalVector write_undriven = SignalVector::write(true);
    write_undriven.bl = Level::DontCare;
    CHECK_THROWS_AS(apply_cycle(cell, write_undriven), InvalidBias);

    SignalVector unprecharged = SignalVector::read_direct();
    unprecharged.rblb_precharged = false;
    CHECK_THROWS_AS(apply_cycle(cell, unprecharged), InvalidBias);
}

TEST_CASE("touching a never-written cell fails") {
    CHECK_THROWS_AS(apply_cycle(CellState(), SignalVector::hold()), StateError);
    CHECK_THROWS_AS(apply_cycle(CellState(), SignalVector::read_direct()), StateError);
    CHECK_THROWS_AS(xnor_compute(CellState(), BinBit::from_logic(true)), StateError);
}

// Sweep every drive combination against an independent classifier of the
// biasing table; defined rows must evaluate, everything else must throw.
TEST_CASE("exhaustive biasing sweep matches the table") {
    const Level levels[] = {Level::Low, Level::High, Level::DontCare};
    int defined = 0;
    int rejected = 0;
    for (Level wwl : levels)
    for (Level rwl : levels)
    for (Level rwlb : levels)
    for (Level bl : levels)
    for (Level blb : levels)
    for (bool pre_rbl : {false, true})
    for (bool pre_rblb : {false, true}) {
        SignalVector sig;
        sig.wwl = wwl;
        sig.rwl = rwl;
        sig.rwlb = rwlb;
        sig.bl = bl;
        sig.blb = blb;
        sig.rbl_precharged = pre_rbl;
        sig.rblb_precharged = pre_rblb;

        const bool write_row = wwl == Level::High && rwlb == Level::High &&
                               ((bl == Level::High && blb == Level::Low) ||
                                (bl == Level::Low && blb == Level::High));
        const bool hold_row = wwl == Level::Low && rwl == Level::High &&
                              rwlb == Level::High;
        const bool read_row = wwl == Level::Low && pre_rbl && pre_rblb &&
                              ((rwl == Level::High && rwlb == Level::Low) ||
                               (rwl == Level::Low && rwlb == Level::High));

        const CellState cell(true);
        if (write_row || hold_row || read_row) {
            const CycleResult r = apply_cycle(cell, sig);
            CHECK(r.mode == (write_row   ? ModeTag::Write
                             : hold_row  ? ModeTag::Hold
                                         : ModeTag::Read));
            ++defined;
        } else {
            CHECK_THROWS_AS(apply_cycle(cell, sig), InvalidBias);
            ++rejected;
        }
    }
    CHECK(defined + rejected == 3 * 3 * 3 * 3 * 3 * 2 * 2);
    CHECK(defined > 0);
}

TEST_CASE("logic encoding of +1/-1") {
    CHECK(encode(+1) == 1);
    CHECK(encode(-1) == 0);
    CHECK(decode(1) == +1);
    CHECK(decode(0) == -1);
    for (int v : {-1, +1}) CHECK(decode(encode(v)) == v);
    CHECK_THROWS_AS(encode(0), DomainError);
    CHECK_THROWS_AS(encode(2), DomainError);
    CHECK_THROWS_AS(decode(2), DomainError);
    CHECK_THROWS_AS(decode(-1), DomainError);

    CHECK(BinBit::from_value(+1).logic);
    CHECK(!BinBit::from_value(-1).logic);
    CHECK(BinBit::from_value(+1).value() == +1);
    CHECK(BinBit::from_value(-1).value() == -1);
    CHECK_THROWS_AS(BinBit::from_value(0), DomainError);
}

}  // TEST_SUITE
