"""Semi-fungible Wi-Fi token (SFWT) access control, desk scale.

A simulated gas-metered chain hosts the token contract; an access-point
gatekeeper enforces the challenge-response authorization protocol; wallet
clients buy tokens and authenticate; a benchmark harness measures gas and
authentication latency.
"""

__version__ = "0.1.0"
