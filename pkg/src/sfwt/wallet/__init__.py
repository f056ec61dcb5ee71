from .keystore import Keystore, KeystoreError

__all__ = ["Keystore", "KeystoreError"]
