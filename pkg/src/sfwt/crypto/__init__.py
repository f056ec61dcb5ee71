from .keccak import keccak256
from .signing import (
    KeyPair,
    RecoveryError,
    Signature,
    address_of,
    generate_keypair,
    keypair_from_secret,
    new_session_id,
    recover_signer,
    sign_session,
)

__all__ = [
    "KeyPair",
    "RecoveryError",
    "Signature",
    "address_of",
    "generate_keypair",
    "keccak256",
    "keypair_from_secret",
    "new_session_id",
    "recover_signer",
    "sign_session",
]
