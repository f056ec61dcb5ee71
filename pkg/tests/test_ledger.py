import pytest
from hypothesis import given, settings, strategies as st

from sfwt.address import Address
from sfwt.ledger.chain import CallPayload, UnknownOperationError, UnknownSenderError
from sfwt.ledger.facade import build_chain

from conftest import ADMIN, OPERATOR, OTHER, TOKEN1_ARGS, USER, mine_tx, read


def test_clock_only_moves_forward(chain):
    assert chain.now_sec == 0
    chain.advance_clock(5)
    assert chain.now_sec == 5
    with pytest.raises(ValueError):
        chain.advance_clock(-1)


def test_blocks_land_on_interval_boundaries(chain):
    chain.advance_clock(25)
    numbers = [(b.number, b.timestamp_sec) for b in chain.blocks]
    assert numbers == [(0, 0), (1, 10), (2, 20)]
    chain.advance_clock(0)
    assert len(chain.blocks) == 3


def test_advance_zero_produces_nothing(chain):
    before = len(chain.blocks)
    chain.advance_clock(0)
    assert len(chain.blocks) == before


def test_submit_waits_for_next_boundary(chain):
    chain.advance_clock(3)
    tx = chain.submit(ADMIN, CallPayload("sfwt", "mintSfwt", TOKEN1_ARGS))
    assert chain.receipt(tx.id) is None  # pending until the block at t=10
    chain.advance_clock(7)
    receipt = chain.receipt(tx.id)
    assert receipt is not None and receipt.ok
    assert receipt.block_number == 1
    assert chain.blocks[1].timestamp_sec == 10


def test_unknown_sender_rejected_at_submission(chain):
    ghost = Address.from_hex("0x" + "cc" * 20)
    with pytest.raises(UnknownSenderError):
        chain.submit(ghost, CallPayload("sfwt", "mintSfwt", TOKEN1_ARGS))


def test_unknown_operation_rejected_at_submission(chain):
    with pytest.raises(UnknownOperationError):
        chain.submit(ADMIN, CallPayload("sfwt", "selfDestruct", {}))
    with pytest.raises(UnknownOperationError):
        chain.call_read(CallPayload("nope", "balanceOf", {}))
    with pytest.raises(UnknownOperationError):
        # a transaction op is not callable as a read
        chain.call_read(CallPayload("sfwt", "buySfwt", {}))


def test_fifo_drain_same_block(chain):
    txs = [
        chain.submit(ADMIN, CallPayload("sfwt", "mintSfwt", {**TOKEN1_ARGS, "token_id": i}))
        for i in (1, 2, 3)
    ]
    block = chain.produce_block()
    assert list(block.tx_ids) == [t.id for t in txs]
    assert {chain.receipt(t.id).block_number for t in txs} == {block.number}


def test_empty_block_permitted(chain):
    block = chain.produce_block()
    assert block.tx_ids == ()


def test_gas_floor_and_revert_isolation(chain):
    mine_tx(chain, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
    # wrong sum reverts, charges base gas only, changes nothing
    before = read(chain, "erc1155", "balanceOf", owner=USER, token_id=1)
    user_native = chain.balance_of_native(USER)
    receipt = mine_tx(chain, USER, "sfwt", "buySfwt", token_id=1, quantity=2, sum_wei=3)
    assert receipt.status == "reverted"
    assert receipt.error == "WRONG_SUM"
    assert receipt.gas_used == chain.config.gas.base_tx
    assert read(chain, "erc1155", "balanceOf", owner=USER, token_id=1) == before
    assert chain.balance_of_native(USER) == user_native


def test_reverted_tx_does_not_block_same_block_successors(chain):
    mine_tx(chain, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
    bad = chain.submit(USER, CallPayload("sfwt", "buySfwt", dict(token_id=1, quantity=1, sum_wei=999)))
    good = chain.submit(OTHER, CallPayload("sfwt", "buySfwt", dict(token_id=1, quantity=2, sum_wei=2)))
    chain.produce_block()
    assert chain.receipt(bad.id).status == "reverted"
    assert chain.receipt(good.id).ok
    # oracle: replay the two ops independently on a fresh chain
    replay = build_chain(
        operator=OPERATOR, admins=frozenset({ADMIN}), block_interval_sec=10,
        genesis={ADMIN: 10**18, USER: 10**18, OTHER: 10**18},
    )
    mine_tx(replay, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
    mine_tx(replay, OTHER, "sfwt", "buySfwt", token_id=1, quantity=2, sum_wei=2)
    assert read(replay, "erc1155", "balanceOf", owner=OTHER, token_id=1) == read(
        chain, "erc1155", "balanceOf", owner=OTHER, token_id=1
    )
    assert replay.balance_of_native(OPERATOR) == chain.balance_of_native(OPERATOR)


def test_read_isolation_from_pending_tx(chain):
    mine_tx(chain, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
    chain.submit(USER, CallPayload("sfwt", "buySfwt", dict(token_id=1, quantity=2, sum_wei=2)))
    # pending buy is invisible to reads
    assert read(chain, "erc1155", "balanceOf", owner=USER, token_id=1) == 0
    assert read(chain, "sfwt", "getExpiration", token_id=1, holder=USER) == 0
    chain.produce_block()
    assert read(chain, "erc1155", "balanceOf", owner=USER, token_id=1) == 2


def test_native_transfer_conservation(chain):
    total = chain.total_native_supply()
    assert chain.transfer_native(USER, OTHER, 0) is True
    assert chain.transfer_native(USER, OTHER, 10**18) is True
    assert chain.balance_of_native(USER) == 0
    assert chain.transfer_native(USER, OTHER, 1) is False  # empty now
    assert chain.total_native_supply() == total


def test_buy_moves_exact_sum_to_operator(chain):
    mine_tx(chain, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
    operator_before = chain.balance_of_native(OPERATOR)
    mine_tx(chain, USER, "sfwt", "buySfwt", token_id=1, quantity=2, sum_wei=2)
    assert chain.balance_of_native(OPERATOR) == operator_before + 2


_ops = st.lists(
    st.tuples(
        st.sampled_from([USER, OTHER, ADMIN]),
        st.sampled_from([USER, OTHER, ADMIN, OPERATOR]),
        st.integers(min_value=0, max_value=10**18 + 5),
    ),
    max_size=30,
)


@given(_ops)
@settings(max_examples=60, deadline=None)
def test_native_conservation_property(ops):
    chain = build_chain(
        operator=OPERATOR, admins=frozenset({ADMIN}), block_interval_sec=10,
        genesis={ADMIN: 10**18, USER: 10**18, OTHER: 10**18},
    )
    total = chain.total_native_supply()
    for frm, to, amount in ops:
        chain.transfer_native(frm, to, amount)
    assert chain.total_native_supply() == total


def test_determinism_identical_op_sequences():
    def run():
        chain = build_chain(
            operator=OPERATOR, admins=frozenset({ADMIN}), block_interval_sec=10,
            genesis={ADMIN: 10**18, USER: 10**18},
        )
        mine_tx(chain, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
        chain.advance_clock(25)
        mine_tx(chain, USER, "sfwt", "buySfwt", token_id=1, quantity=2, sum_wei=2)
        mine_tx(chain, USER, "sfwt", "buySfwt", token_id=1, quantity=1, sum_wei=999)
        chain.advance_clock(13)
        return chain.state_fingerprint()

    assert run() == run()


def test_event_log_file(tmp_path):
    log_path = tmp_path / "events.jsonl"
    chain = build_chain(
        operator=OPERATOR, admins=frozenset({ADMIN}), block_interval_sec=10,
        genesis={ADMIN: 10**18}, event_log_path=log_path,
    )
    mine_tx(chain, ADMIN, "sfwt", "mintSfwt", **TOKEN1_ARGS)
    import json

    lines = [json.loads(l) for l in log_path.read_text().splitlines()]
    assert [l["name"] for l in lines] == ["TransferSingle", "SFWT_Mint"]
    assert lines[1]["args"]["quantity"] == "10"
