import pytest

from sfwt.address import Address
from sfwt.ledger.facade import build_chain

# canonical mint fixture (token 1, "access point 1", 1 wei, 1 day, 10 GB, qty 10)
OPERATOR = Address.from_hex("0xa8126934003110d5b7eC9a275e27B6d2fFA28529")
ADMIN = Address.from_hex("0xb9f786a9e81ca99fcb3a078ebb18148a4f04bb46")
USER = Address.from_hex("0x00000000000000000000000000000000000000aa")
OTHER = Address.from_hex("0x00000000000000000000000000000000000000bb")

TOKEN1_ARGS = dict(
    owner=OPERATOR,
    token_id=1,
    ap_id="access point 1",
    price_wei=1,
    duration="1day",
    data_cap="10GB",
    quantity=10,
)

DAY = 86_400
GB = 10**9


@pytest.fixture
def chain():
    c = build_chain(
        operator=OPERATOR,
        admins=frozenset({ADMIN}),
        block_interval_sec=10,
        genesis={ADMIN: 10**18, USER: 10**18, OTHER: 10**18},
    )
    return c


def mine_tx(chain, sender, contract, op, **args):
    """Submit one transaction and produce the including block."""
    from sfwt.ledger.chain import CallPayload

    tx = chain.submit(sender, CallPayload(contract=contract, op=op, args=args))
    chain.produce_block()
    receipt = chain.receipt(tx.id)
    assert receipt is not None
    return receipt


def read(chain, contract, op, **args):
    from sfwt.ledger.chain import CallPayload

    return chain.call_read(CallPayload(contract=contract, op=op, args=args))
